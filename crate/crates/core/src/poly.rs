//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are kept sorted by exponent vector with no duplicates and no zero
//! coefficients, so structural equality is polynomial equality.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldScalar, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    vars: usize,
    terms: Vec<Term>,
}

impl SparsePolynomial {
    pub fn zero(vars: usize) -> Self {
        SparsePolynomial { vars, terms: Vec::new() }
    }

    pub fn constant(vars: usize, c: i64) -> Self {
        Self::monomial(vars, c, vec![0; vars]).expect("arity matches")
    }

    /// The coordinate function `x_i`.
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = 1;
        Self::monomial(vars, 1, exps).expect("arity matches")
    }

    pub fn monomial(vars: usize, coeff: i64, exps: Vec<u32>) -> Result<Self> {
        Self::from_terms(vars, [(coeff, exps)])
    }

    /// Collects terms, merging equal exponent vectors and dropping zeros.
    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Vec<u32>)>,
    {
        let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (coeff, exps) in terms {
            if exps.len() != vars {
                return Err(Error::ArityMismatch { expected: vars, found: exps.len() });
            }
            let slot = acc.entry(exps).or_insert(0);
            *slot = slot.checked_add(coeff).ok_or(Error::Overflow("adding coefficients"))?;
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(exps, coeff)| Term { coeff, exps }).collect();
        Ok(SparsePolynomial { vars, terms })
    }

    #[inline]
    pub fn vars(&self) -> usize {
        self.vars
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exps.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let it = self.terms.iter().chain(&other.terms).map(|t| (t.coeff, t.exps.clone()));
        Self::from_terms(self.vars, it)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let coeff = t.coeff.checked_mul(c).ok_or(Error::Overflow("scaling"))?;
            out.push((coeff, t.exps.clone()));
        }
        Self::from_terms(self.vars, out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let coeff = a.coeff.checked_mul(b.coeff).ok_or(Error::Overflow("multiplying"))?;
                let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
                out.push((coeff, exps));
            }
        }
        Self::from_terms(self.vars, out)
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var >= self.vars {
            return Err(Error::InvalidInput(alloc::format!(
                "variable index {var} out of range for {} variables",
                self.vars
            )));
        }
        let mut out = Vec::new();
        for t in &self.terms {
            let e = t.exps[var];
            if e == 0 {
                continue;
            }
            let coeff = t.coeff.checked_mul(i64::from(e)).ok_or(Error::Overflow("differentiating"))?;
            let mut exps = t.exps.clone();
            exps[var] -= 1;
            out.push((coeff, exps));
        }
        Self::from_terms(self.vars, out)
    }

    /// Evaluation in `F_p`.
    pub fn eval(&self, field: PrimeField, point: &[FieldScalar]) -> Result<FieldScalar> {
        self.check_point(point.len())?;
        Ok(self.eval_unchecked(field, point))
    }

    fn eval_unchecked(&self, field: PrimeField, point: &[FieldScalar]) -> FieldScalar {
        let mut acc = field.zero();
        for t in &self.terms {
            let mut m = field.from_i64(t.coeff);
            for (&x, &e) in point.iter().zip(&t.exps) {
                if e > 0 {
                    m = field.mul(m, field.pow(x, u64::from(e)));
                }
            }
            acc = field.add(acc, m);
        }
        acc
    }

    /// Evaluation over the integers; `None` on overflow of `i128`.
    pub fn eval_integer(&self, point: &[i64]) -> Result<Option<i128>> {
        self.check_point(point.len())?;
        let mut acc: i128 = 0;
        for t in &self.terms {
            let mut m = i128::from(t.coeff);
            for (&x, &e) in point.iter().zip(&t.exps) {
                for _ in 0..e {
                    let Some(v) = m.checked_mul(i128::from(x)) else { return Ok(None) };
                    m = v;
                }
            }
            let Some(v) = acc.checked_add(m) else { return Ok(None) };
            acc = v;
        }
        Ok(Some(acc))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ArityMismatch { expected: self.vars, found: other.vars });
        }
        Ok(())
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.vars {
            return Err(Error::ArityMismatch { expected: self.vars, found: len });
        }
        Ok(())
    }
}

/// A polynomial map `A^vars -> A^outputs`, the parametrization of a variety
/// on its affine cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolynomialMap {
    vars: usize,
    outputs: Vec<SparsePolynomial>,
}

impl PolynomialMap {
    pub fn new(vars: usize, outputs: Vec<SparsePolynomial>) -> Result<Self> {
        if let Some(bad) = outputs.iter().find(|p| p.vars != vars) {
            return Err(Error::ArityMismatch { expected: vars, found: bad.vars });
        }
        Ok(PolynomialMap { vars, outputs })
    }

    #[inline]
    pub fn vars(&self) -> usize {
        self.vars
    }

    #[inline]
    pub fn outputs(&self) -> &[SparsePolynomial] {
        &self.outputs
    }

    pub fn is_zero(&self) -> bool {
        self.outputs.iter().all(SparsePolynomial::is_zero)
    }

    pub fn eval(&self, field: PrimeField, point: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        if point.len() != self.vars {
            return Err(Error::ArityMismatch { expected: self.vars, found: point.len() });
        }
        Ok(self.outputs.iter().map(|p| p.eval_unchecked(field, point)).collect())
    }

    /// Symbolically differentiates every output up to `order` (at most 2).
    pub fn differentiate(&self, order: u8) -> Result<DifferentiatedMap> {
        if order > 2 {
            return Err(Error::InvalidInput(alloc::format!("derivative order {order} exceeds 2")));
        }
        let mut first = Vec::new();
        let mut second = Vec::new();
        if order >= 1 {
            for p in &self.outputs {
                let row = (0..self.vars).map(|i| p.derivative(i)).collect::<Result<Vec<_>>>()?;
                if order == 2 {
                    let mut hess = Vec::with_capacity(self.vars * (self.vars + 1) / 2);
                    for i in 0..self.vars {
                        for j in i..self.vars {
                            hess.push(row[i].derivative(j)?);
                        }
                    }
                    second.push(hess);
                }
                first.push(row);
            }
        }
        Ok(DifferentiatedMap { map: self.clone(), order, first, second })
    }
}

/// Values and partial derivatives of a map at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    /// `values[k]` is output `k`.
    pub values: Vec<FieldScalar>,
    /// `first[k][i]` is `d F_k / d x_i`; empty when order < 1.
    pub first: Vec<Vec<FieldScalar>>,
    /// `second[k][i][j]` is `d^2 F_k / d x_i d x_j`, full symmetric array;
    /// empty when order < 2.
    pub second: Vec<Vec<Vec<FieldScalar>>>,
}

/// A map with its derivative polynomials computed once.
#[derive(Debug, Clone)]
pub struct DifferentiatedMap {
    map: PolynomialMap,
    order: u8,
    first: Vec<Vec<SparsePolynomial>>,
    // upper triangle, row-major over i <= j
    second: Vec<Vec<SparsePolynomial>>,
}

impl DifferentiatedMap {
    pub fn map(&self) -> &PolynomialMap {
        &self.map
    }

    pub fn jet(&self, field: PrimeField, point: &[FieldScalar]) -> Result<Jet> {
        let values = self.map.eval(field, point)?;
        let first = self.first.iter().map(|row| row.iter().map(|p| p.eval_unchecked(field, point)).collect()).collect();
        let a = self.map.vars;
        let second = if self.order >= 2 {
            self.second
                .iter()
                .map(|tri| {
                    let mut full = vec![vec![FieldScalar::ZERO; a]; a];
                    let mut idx = 0;
                    for i in 0..a {
                        for j in i..a {
                            let v = tri[idx].eval_unchecked(field, point);
                            full[i][j] = v;
                            full[j][i] = v;
                            idx += 1;
                        }
                    }
                    full
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Jet { values, first, second })
    }
}

/// Values, first partials and second partials of `map` at `point`, as
/// requested by `order`.
pub fn eval_and_partials(map: &PolynomialMap, field: PrimeField, point: &[FieldScalar], order: u8) -> Result<Jet> {
    map.differentiate(order)?.jet(field, point)
}

//! Point-count estimate of `dim Y_x`, the variety of lines through a general
//! point `x` inside the quadrics containing the model.
//!
//! The quadrics are lifted to integers, reduced modulo small primes `q`, and
//! restricted to the tangent directions at an `F_q`-rational smooth point.
//! Counting isotropic directions in `P^{n-1}(F_q)` for several `q` and
//! fitting `log(count)` against `log(q)` gives a dimension estimate. This is
//! a heuristic and is always labeled as one.

use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::VarietyModel;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldScalar, PrimeField};
use crate::matrix::ExactMatrix;
use crate::poly::DifferentiatedMap;
use crate::probe::{quadric_space, sample_point, trial_rng, variety_dim, Op, ProbeConfig};

pub const MAX_YX_PRIME: u64 = 7;
pub const MAX_YX_PROJECTIVE_DIM: u32 = 9;
/// Basepoint draws per prime before giving up on that prime.
const BASEPOINT_ATTEMPTS: u32 = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct YxEstimate {
    pub n: u32,
    pub quadrics: usize,
    /// `(q, number of directions)` for each prime that produced a basepoint.
    pub counts: Vec<(u64, u64)>,
    pub estimate: f64,
    /// Always true: the value is a fit, not a proof.
    pub heuristic: bool,
}

/// `|P^{k-1}(F_q)|`
pub fn projective_points(q: u64, k: u32) -> u128 {
    let q = u128::from(q);
    (0..k).map(|i| q.pow(i)).sum()
}

/// A quadratic form in `n` variables over `F_q`, upper-triangular.
struct Form {
    coeffs: Vec<Vec<u64>>,
}

impl Form {
    fn eval(&self, q: u64, v: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (i, row) in self.coeffs.iter().enumerate() {
            if v[i] == 0 {
                continue;
            }
            let mut inner = 0u64;
            for (j, &c) in row.iter().enumerate().skip(i) {
                inner = (inner + c * v[j]) % q;
            }
            acc = (acc + v[i] * inner) % q;
        }
        acc
    }
}

fn reduce(c: i64, q: u64) -> u64 {
    c.rem_euclid(q as i64) as u64
}

/// Evaluates the integer quadric with the given monomial coefficients.
fn quadric_at(coeffs: &[i64], monomials: &[(usize, usize)], z: &[u64], q: u64) -> u64 {
    monomials.iter().zip(coeffs).fold(0, |acc, (&(i, j), &c)| (acc + reduce(c, q) * z[i] % q * z[j]) % q)
}

fn polar(coeffs: &[i64], monomials: &[(usize, usize)], a: &[u64], b: &[u64], q: u64) -> u64 {
    let sum: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % q).collect();
    let qa = quadric_at(coeffs, monomials, a, q);
    let qb = quadric_at(coeffs, monomials, b, q);
    (quadric_at(coeffs, monomials, &sum, q) + 2 * q - qa - qb) % q
}

/// An `F_q` point and `n` tangent directions there.
type Frame = (Vec<u64>, Vec<Vec<u64>>);

/// Tangent directions at a smooth `F_q` point: the first partials,
/// reduced to a basis of the tangent space modulo the point.
fn basepoint(d: &DifferentiatedMap, field: PrimeField, n: u32, cfg: &ProbeConfig, q: u64) -> Result<Option<Frame>> {
    let mut rng = trial_rng(cfg.seed, Op::Yx, u32::try_from(q).expect("small prime"));
    let map = d.map();
    for _ in 0..BASEPOINT_ATTEMPTS {
        let Some(p) = sample_point(map, field, &mut rng)? else { return Ok(None) };
        let jet = d.jet(field, &p)?;
        let outs = jet.values.len();
        let mut span = ExactMatrix::with_cols(field, outs);
        span.push_row(&jet.values);
        let mut dirs = Vec::new();
        for i in 0..map.vars() {
            let row: Vec<FieldScalar> = (0..outs).map(|k| jet.first[k][i]).collect();
            let before = span.rank();
            span.push_row(&row);
            if span.rank() > before {
                dirs.push(row.iter().map(|v| v.value()).collect());
            }
        }
        if dirs.len() == n as usize {
            let x = jet.values.iter().map(|v| v.value()).collect();
            return Ok(Some((x, dirs)));
        }
    }
    Ok(None)
}

fn count_isotropic(forms: &[Form], linear: &[Vec<u64>], n: usize, q: u64) -> u64 {
    let mut count = 0;
    let mut v = vec![0u64; n];
    // representatives with first nonzero coordinate 1
    for lead in 0..n {
        let tail = n - lead - 1;
        for idx in 0..q.pow(tail as u32) {
            v[..lead].iter_mut().for_each(|c| *c = 0);
            v[lead] = 1;
            let mut rest = idx;
            for c in &mut v[lead + 1..] {
                *c = rest % q;
                rest /= q;
            }
            let isotropic = forms.iter().all(|f| f.eval(q, &v) == 0)
                && linear.iter().all(|l| l.iter().zip(&v).fold(0, |acc, (a, b)| (acc + a * b) % q) == 0);
            count += u64::from(isotropic);
        }
    }
    count
}

/// Least-squares slope of `ln(count)` against `ln(q)`; with a single prime,
/// `ln(count)/ln(q)`.
pub fn log_slope(counts: &[(u64, u64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        counts.iter().filter(|(_, c)| *c > 0).map(|&(q, c)| (libm::log(q as f64), libm::log(c as f64))).collect();
    match pts.len() {
        0 => None,
        1 => Some(pts[0].1 / pts[0].0),
        k => {
            let k = k as f64;
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
            Some(sxy / sxx)
        }
    }
}

pub fn yx_dim_estimate(m: &VarietyModel, cfg: &ProbeConfig, primes: &[u64]) -> Result<YxEstimate> {
    if primes.is_empty() {
        return Err(Error::InvalidInput("at least one prime is required".into()));
    }
    for &q in primes {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
    }
    let n = variety_dim(m, cfg)?;
    let limit = projective_points(MAX_YX_PRIME, MAX_YX_PROJECTIVE_DIM + 1);
    for &q in primes {
        if q > MAX_YX_PRIME || n > MAX_YX_PROJECTIVE_DIM + 1 {
            return Err(Error::BudgetExceeded { points: projective_points(q, n), limit });
        }
    }
    let space = quadric_space(m, cfg)?;
    let quadrics = space
        .integer_basis()
        .ok_or_else(|| Error::NotApplicable("quadric basis does not lift to small integers".into()))?;
    let d = m.map()?.differentiate(1)?;
    let mut counts = Vec::new();
    for &q in primes {
        let field = PrimeField::new(q)?;
        let Some((x, dirs)) = basepoint(&d, field, n, cfg, q)? else { continue };
        let forms: Vec<Form> = quadrics
            .iter()
            .map(|c| {
                let mut coeffs = vec![vec![0u64; n as usize]; n as usize];
                for i in 0..n as usize {
                    coeffs[i][i] = quadric_at(c, &space.monomials, &dirs[i], q);
                    for j in i + 1..n as usize {
                        coeffs[i][j] = polar(c, &space.monomials, &dirs[i], &dirs[j], q);
                    }
                }
                Form { coeffs }
            })
            .collect();
        let linear: Vec<Vec<u64>> =
            quadrics.iter().map(|c| dirs.iter().map(|w| polar(c, &space.monomials, &x, w, q)).collect()).collect();
        counts.push((q, count_isotropic(&forms, &linear, n as usize, q)));
    }
    let estimate = log_slope(&counts).ok_or(Error::NoLinesDetected)?;
    Ok(YxEstimate { n, quadrics: quadrics.len(), counts, estimate, heuristic: true })
}

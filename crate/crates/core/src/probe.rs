//! Generic-point probes: ranks of Jacobian and osculating spans of a
//! parametrization at random points of a large prime field.
//!
//! Each probe runs `trials` independent draws. A per-trial generator is
//! derived from the root seed, an operation tag and the trial counter, so
//! results never depend on evaluation order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::catalog::VarietyModel;
use crate::citation::{self, Citation};
use crate::error::{Error, Result};
use crate::field::{FieldScalar, PrimeField, DEFAULT_PRIME};
use crate::matrix::ExactMatrix;
use crate::poly::{DifferentiatedMap, Jet, PolynomialMap};
use crate::ratrecon::primitive_integer_vector;

/// Draws per trial before a trial counts as vanished.
const SAMPLE_ATTEMPTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeConfig {
    pub seed: u64,
    pub trials: u32,
    pub prime: Option<u64>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { seed: 0, trials: 5, prime: None }
    }
}

impl ProbeConfig {
    pub fn with_seed(seed: u64) -> Self {
        ProbeConfig { seed, ..Self::default() }
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime.unwrap_or(DEFAULT_PRIME))
    }

    fn check(&self) -> Result<PrimeField> {
        if self.trials == 0 {
            return Err(Error::InvalidInput(String::from("trials must be at least 1")));
        }
        self.field()
    }
}

/// Operation tags mixed into the generator stream.
#[derive(Debug, Clone, Copy)]
#[repr(u64)]
pub(crate) enum Op {
    Dim = 1,
    Secant = 2,
    SecondForm = 3,
    Quadrics = 4,
    Containment = 5,
    Yx = 6,
}

pub(crate) fn trial_rng(seed: u64, op: Op, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((op as u64) << 32) | u64::from(trial));
    rng
}

/// Draws a parameter point whose image is not the zero vector.
pub fn sample_point(map: &PolynomialMap, field: PrimeField, rng: &mut ChaCha8Rng) -> Result<Option<Vec<FieldScalar>>> {
    for _ in 0..SAMPLE_ATTEMPTS {
        let p: Vec<FieldScalar> = (0..map.vars()).map(|_| field.random(rng)).collect();
        if map.eval(field, &p)?.iter().any(|v| !v.is_zero()) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn push_jet_rows(m: &mut ExactMatrix, jet: &Jet, order: u8) {
    m.push_row(&jet.values);
    let outs = jet.values.len();
    let vars = jet.first.first().map_or(0, Vec::len);
    if order >= 1 {
        for i in 0..vars {
            let row: Vec<FieldScalar> = (0..outs).map(|k| jet.first[k][i]).collect();
            m.push_row(&row);
        }
    }
    if order >= 2 {
        for i in 0..vars {
            for j in i..vars {
                let row: Vec<FieldScalar> = (0..outs).map(|k| jet.second[k][i][j]).collect();
                m.push_row(&row);
            }
        }
    }
}

/// Rank of the span of the jets of order `order` at the given points.
pub fn jet_span_rank(d: &DifferentiatedMap, field: PrimeField, points: &[&[FieldScalar]], order: u8) -> Result<usize> {
    let mut m = ExactMatrix::with_cols(field, d.map().outputs().len());
    for p in points {
        push_jet_rows(&mut m, &d.jet(field, p)?, order);
    }
    Ok(m.rank())
}

/// Rank of the stacked Jacobians at `x` then `y`.
pub fn terracini_rank(map: &PolynomialMap, field: PrimeField, x: &[FieldScalar], y: &[FieldScalar]) -> Result<usize> {
    jet_span_rank(&map.differentiate(1)?, field, &[x, y], 1)
}

/// Maximum over trials of `f(points)`, where each trial draws `k` points.
fn max_over_trials<F>(m: &VarietyModel, cfg: &ProbeConfig, op: Op, k: usize, order: u8, mut f: F) -> Result<usize>
where
    F: FnMut(&DifferentiatedMap, PrimeField, &[&[FieldScalar]]) -> Result<usize>,
{
    let field = cfg.check()?;
    let map = m.map()?;
    let d = map.differentiate(order)?;
    let mut best: Option<usize> = None;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, op, t);
        let mut pts = Vec::with_capacity(k);
        for _ in 0..k {
            match sample_point(map, field, &mut rng)? {
                Some(p) => pts.push(p),
                None => break,
            }
        }
        if pts.len() < k {
            continue;
        }
        let refs: Vec<&[FieldScalar]> = pts.iter().map(Vec::as_slice).collect();
        let r = f(&d, field, &refs)?;
        best = Some(best.map_or(r, |b| b.max(r)));
    }
    best.ok_or_else(|| Error::DegenerateModel(m.name.clone()))
}

fn projective(rank: usize) -> u32 {
    u32::try_from(rank).expect("rank fits") - 1
}

/// Projective dimension `n` of the image.
pub fn variety_dim(m: &VarietyModel, cfg: &ProbeConfig) -> Result<u32> {
    max_over_trials(m, cfg, Op::Dim, 1, 1, |d, f, p| jet_span_rank(d, f, p, 1)).map(projective)
}

/// `dim SX` via Terracini: the span of tangent cones at two points.
pub fn secant_dim(m: &VarietyModel, cfg: &ProbeConfig) -> Result<u32> {
    max_over_trials(m, cfg, Op::Secant, 2, 1, |d, f, p| jet_span_rank(d, f, p, 1)).map(projective)
}

pub fn secant_defect(m: &VarietyModel, cfg: &ProbeConfig) -> Result<i64> {
    let n = variety_dim(m, cfg)?;
    let s = secant_dim(m, cfg)?;
    Ok(2 * i64::from(n) + 1 - i64::from(s))
}

/// Dimension of the second osculating span, projectively.
pub fn osculating_dim(m: &VarietyModel, cfg: &ProbeConfig) -> Result<u32> {
    max_over_trials(m, cfg, Op::SecondForm, 1, 2, |d, f, p| jet_span_rank(d, f, p, 2)).map(projective)
}

/// `dim |II_x|`: the osculating span minus the tangent space. `-1` means the
/// second fundamental form is empty (a linear space).
pub fn second_form_dim(m: &VarietyModel, cfg: &ProbeConfig) -> Result<i64> {
    let n = variety_dim(m, cfg)?;
    Ok(i64::from(osculating_dim(m, cfg)?) - i64::from(n) - 1)
}

/// Degree-2 monomials `z_i z_j`, `i <= j`, in lexicographic order.
pub fn quadratic_monomials(coords: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(coords * (coords + 1) / 2);
    for i in 0..coords {
        for j in i..coords {
            out.push((i, j));
        }
    }
    out
}

/// Quadrics through the image, as coefficient vectors over [`quadratic_monomials`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricSpace {
    pub field: PrimeField,
    pub coords: usize,
    pub monomials: Vec<(usize, usize)>,
    /// Reduced echelon kernel basis; canonical for the space.
    pub basis: Vec<Vec<FieldScalar>>,
}

impl QuadricSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn eval(&self, q: &[FieldScalar], z: &[FieldScalar]) -> FieldScalar {
        let f = self.field;
        self.monomials.iter().zip(q).fold(f.zero(), |acc, (&(i, j), &c)| f.add(acc, f.mul(c, f.mul(z[i], z[j]))))
    }

    /// Lifts the basis to primitive integer quadrics, if every coefficient
    /// reconstructs as a small rational.
    pub fn integer_basis(&self) -> Option<Vec<Vec<i64>>> {
        self.basis.iter().map(|v| primitive_integer_vector(&self.field, v)).collect()
    }
}

fn monomial_row(field: PrimeField, monomials: &[(usize, usize)], z: &[FieldScalar]) -> Vec<FieldScalar> {
    monomials.iter().map(|&(i, j)| field.mul(z[i], z[j])).collect()
}

/// Space of quadrics vanishing on the image: the kernel of the monomial
/// evaluation matrix at twice as many image points as monomials. The
/// smallest kernel over trials is kept.
pub fn quadric_space(m: &VarietyModel, cfg: &ProbeConfig) -> Result<QuadricSpace> {
    let field = cfg.check()?;
    let map = m.map()?;
    let coords = map.outputs().len();
    let monomials = quadratic_monomials(coords);
    let samples = 2 * monomials.len();
    let mut best: Option<Vec<Vec<FieldScalar>>> = None;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, Op::Quadrics, t);
        let mut mat = ExactMatrix::with_cols(field, monomials.len());
        for _ in 0..samples {
            let Some(p) = sample_point(map, field, &mut rng)? else { break };
            mat.push_row(&monomial_row(field, &monomials, &map.eval(field, &p)?));
        }
        if mat.rows() < samples {
            continue;
        }
        let kernel = mat.kernel_basis();
        if best.as_ref().is_none_or(|b| kernel.len() < b.len()) {
            best = Some(kernel);
        }
    }
    let basis = best.ok_or_else(|| Error::DegenerateModel(m.name.clone()))?;
    Ok(QuadricSpace { field, coords, monomials, basis })
}

pub fn quadric_space_dim(m: &VarietyModel, cfg: &ProbeConfig) -> Result<u32> {
    quadric_space(m, cfg).map(|q| u32::try_from(q.dim()).expect("fits"))
}

/// Evaluates every quadric at `count` fresh image points; returns the number
/// of nonzero evaluations.
pub fn quadric_containment_failures(
    m: &VarietyModel,
    qs: &QuadricSpace,
    cfg: &ProbeConfig,
    count: usize,
) -> Result<usize> {
    let map = m.map()?;
    let mut rng = trial_rng(cfg.seed, Op::Containment, 0);
    let mut bad = 0;
    for _ in 0..count {
        let p = sample_point(map, qs.field, &mut rng)?.ok_or_else(|| Error::DegenerateModel(m.name.clone()))?;
        let z = map.eval(qs.field, &p)?;
        bad += qs.basis.iter().filter(|q| !qs.eval(q, &z).is_zero()).count();
    }
    Ok(bad)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Compared with a value recorded on the model.
    Claimed,
    /// Compared with a value the theory forces from other computed values.
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    /// The computed side failed; see the field's error.
    Unavailable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub field: &'static str,
    pub relation: Relation,
    pub basis: Basis,
    pub expected: i64,
    pub computed: Option<i64>,
    pub citation: Citation,
    pub status: Status,
}

impl Check {
    fn new(
        field: &'static str,
        relation: Relation,
        basis: Basis,
        expected: i64,
        computed: Option<i64>,
        citation: Citation,
    ) -> Self {
        let status = match computed {
            None => Status::Unavailable,
            Some(c) if relation == Relation::Equal && c == expected => Status::Match,
            Some(c) if relation == Relation::AtMost && c <= expected => Status::Match,
            Some(_) => Status::Mismatch,
        };
        Check { field, relation, basis, expected, computed, citation, status }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryReport {
    pub model: String,
    pub seed: u64,
    pub trials: u32,
    pub prime: u64,
    pub ambient: Option<u32>,
    pub n: Result<u32>,
    pub secant_dim: Result<u32>,
    pub delta: Result<i64>,
    pub second_form_dim: Result<i64>,
    pub quadrics: Result<u32>,
    pub checks: Vec<Check>,
}

impl GeometryReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Match)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status != Status::Match)
    }

    pub fn errors(&self) -> Vec<(&'static str, &Error)> {
        let mut out = Vec::new();
        for (name, e) in [
            ("n", self.n.as_ref().err()),
            ("secant_dim", self.secant_dim.as_ref().err()),
            ("delta", self.delta.as_ref().err()),
            ("second_form_dim", self.second_form_dim.as_ref().err()),
            ("quadrics", self.quadrics.as_ref().err()),
        ] {
            if let Some(e) = e {
                out.push((name, e));
            }
        }
        out
    }
}

fn ok_i64<T: Copy + Into<i64>>(r: &Result<T>) -> Option<i64> {
    r.as_ref().ok().map(|&v| v.into())
}

/// Runs every probe on `m` and compares the results with the model's claims
/// and with the relations the theory imposes. Probe failures are recorded
/// per field.
pub fn verify_model(m: &VarietyModel, cfg: &ProbeConfig) -> Result<GeometryReport> {
    let field = cfg.check()?;
    let map = m.map()?;
    let ambient = u32::try_from(map.outputs().len() - 1).ok();
    let n = variety_dim(m, cfg);
    let secant = secant_dim(m, cfg);
    let delta = match (&n, &secant) {
        (Ok(n), Ok(s)) => Ok(2 * i64::from(*n) + 1 - i64::from(*s)),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    let second = match (&n, osculating_dim(m, cfg)) {
        (Ok(n), Ok(o)) => Ok(i64::from(o) - i64::from(*n) - 1),
        (Err(e), _) => Err(e.clone()),
        (_, Err(e)) => Err(e),
    };
    let quadrics = quadric_space_dim(m, cfg);

    let mut checks = Vec::new();
    let source = m.notes.first().copied().unwrap_or(citation::COMPUTED);
    if let Some(c) = &m.claimed {
        use Basis::Claimed;
        use Relation::Equal;
        checks.push(Check::new("n", Equal, Claimed, c.n.into(), ok_i64(&n), source));
        if let Some(a) = c.ambient {
            checks.push(Check::new("N", Equal, Claimed, a.into(), ambient.map(i64::from), source));
        }
        checks.push(Check::new(
            "secant_dim",
            Equal,
            Claimed,
            c.secant_dim.into(),
            ok_i64(&secant),
            citation::TERRACINI,
        ));
        checks.push(Check::new("delta", Equal, Claimed, c.delta.into(), ok_i64(&delta), citation::SECANT_DEFECT));
    }
    if let Some(q) = m.claimed_quadrics {
        checks.push(Check::new(
            "quadrics",
            Relation::Equal,
            Basis::Claimed,
            q.into(),
            ok_i64(&quadrics),
            citation::QUADRIC_SPACE,
        ));
    }
    if let (Ok(n), Some(amb)) = (&n, ambient) {
        let (n, amb) = (i64::from(*n), i64::from(amb));
        let bound = amb.min(2 * n + 1);
        checks.push(Check::new(
            "secant_dim",
            Relation::AtMost,
            Basis::Theorem,
            bound,
            ok_i64(&secant),
            citation::SECANT_BOUND,
        ));
        if let Ok(d) = delta {
            if d >= 1 {
                checks.push(Check::new(
                    "second_form_dim",
                    Relation::Equal,
                    Basis::Theorem,
                    amb - n - 1,
                    second.as_ref().ok().copied(),
                    citation::SECOND_FORM,
                ));
                checks.push(Check::new(
                    "N",
                    Relation::AtMost,
                    Basis::Theorem,
                    n * (n + 3) / 2,
                    Some(amb),
                    citation::AMBIENT_BOUND,
                ));
            }
            if d >= 3 {
                checks.push(Check::new(
                    "delta mod 2",
                    Relation::Equal,
                    Basis::Theorem,
                    n % 2,
                    Some(d % 2),
                    citation::PARITY,
                ));
            }
        }
    }
    Ok(GeometryReport {
        model: m.name.clone(),
        seed: cfg.seed,
        trials: cfg.trials,
        prime: field.modulus(),
        ambient,
        n,
        secant_dim: secant,
        delta,
        second_form_dim: second,
        quadrics,
        checks,
    })
}

/// Arithmetic consistency between a model and the model standing for its
/// `Y_x`: `n' = (n + delta)/2 - 2`, `delta' = delta - 2`, `N' = n - 1`.
///
/// `parent` values default to the claimed ones; pass computed `(n, delta)`
/// to check those instead.
pub fn tower_link_checks(
    parent: &VarietyModel,
    child: &VarietyModel,
    computed: Option<(u32, i64)>,
) -> Result<Vec<Check>> {
    let pc = parent
        .claimed
        .as_ref()
        .ok_or_else(|| Error::NotApplicable(format!("`{}` has no claimed invariants", parent.name)))?;
    let cc = child
        .claimed
        .as_ref()
        .ok_or_else(|| Error::NotApplicable(format!("`{}` has no claimed invariants", child.name)))?;
    let (n, delta) = computed.unwrap_or((pc.n, i64::from(pc.delta)));
    let n = i64::from(n);
    let basis = if computed.is_some() { Basis::Theorem } else { Basis::Claimed };
    let mut out = Vec::new();
    if (n + delta) % 2 != 0 {
        return Err(Error::NotApplicable(format!("n + delta = {} is odd for `{}`", n + delta, parent.name)));
    }
    out.push(Check::new("yx.n", Relation::Equal, basis, (n + delta) / 2 - 2, Some(cc.n.into()), citation::YX_MODEL));
    out.push(Check::new("yx.delta", Relation::Equal, basis, delta - 2, Some(cc.delta.into()), citation::YX_MODEL));
    if let Some(a) = cc.ambient {
        out.push(Check::new("yx.N", Relation::Equal, basis, n - 1, Some(a.into()), citation::YX_MODEL));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_model, Family};

    fn cfg() -> ProbeConfig {
        ProbeConfig::with_seed(7)
    }

    #[test]
    fn segre_probes() {
        let m = build_model(Family::Segre(1, 2)).unwrap();
        assert_eq!(variety_dim(&m, &cfg()), Ok(3));
        assert_eq!(secant_defect(&m, &cfg()), Ok(2));
        assert_eq!(second_form_dim(&m, &cfg()), Ok(1));
        assert_eq!(quadric_space_dim(&m, &cfg()), Ok(3));
    }

    #[test]
    fn veronese_probes() {
        let m = build_model(Family::Veronese2(2)).unwrap();
        assert_eq!(secant_dim(&m, &cfg()), Ok(4));
        assert_eq!(second_form_dim(&m, &cfg()), Ok(2));
        assert_eq!(quadric_space_dim(&m, &cfg()), Ok(6));
    }

    #[test]
    fn quadric_hypersurface() {
        let r = verify_model(&build_model(Family::Quadric(5)).unwrap(), &cfg()).unwrap();
        assert_eq!((r.n.clone(), r.delta.clone(), r.second_form_dim.clone()), (Ok(5), Ok(5), Ok(0)));
        assert!(r.all_match(), "{:?}", r.checks);
    }

    #[test]
    fn integer_quadrics_of_segre() {
        let m = build_model(Family::Segre(1, 2)).unwrap();
        let q = quadric_space(&m, &cfg()).unwrap();
        let ints = q.integer_basis().unwrap();
        assert_eq!(ints.len(), 3);
        let z: Vec<i128> =
            m.map().unwrap().outputs().iter().map(|p| p.eval_integer(&[2, 3, 5, 7, 11]).unwrap().unwrap()).collect();
        for v in ints {
            let s: i128 = q.monomials.iter().zip(&v).map(|(&(i, j), &c)| i128::from(c) * z[i] * z[j]).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let m = build_model(Family::Segre(1, 1)).unwrap();
        let c = ProbeConfig { trials: 0, ..cfg() };
        assert!(matches!(variety_dim(&m, &c), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn degenerate_map() {
        use crate::poly::SparsePolynomial;
        let map = PolynomialMap::new(2, alloc::vec![SparsePolynomial::zero(2); 3]).unwrap();
        let m = VarietyModel {
            name: "zero".into(),
            map: Some(map),
            claimed: None,
            claimed_quadrics: None,
            yx_link: None,
            notes: Vec::new(),
        };
        assert_eq!(variety_dim(&m, &cfg()), Err(Error::DegenerateModel("zero".into())));
    }
}

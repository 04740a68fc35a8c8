//! Parametrized classical varieties and their claimed invariants.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::citation::{self, Citation};
use crate::error::{Error, Result};
use crate::invariants::{derived_invariants, LqelInvariants};
use crate::poly::{PolynomialMap, SparsePolynomial};

/// A builder family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `P^l x P^m`
    Segre(u32, u32),
    /// `nu_2(P^k)`
    Veronese2(u32),
    /// `G(1, r)` in its Pluecker embedding
    GrassmannLines(u32),
    /// smooth quadric of dimension `n` in `P^{n+1}`
    Quadric(u32),
    /// `S^10` in `P^15`
    Spinor10,
}

// builders allocate dense exponent vectors; keep families desk sized
const MAX_PARAM: u32 = 40;

impl Family {
    pub fn validate(self) -> Result<Self> {
        let bad = |what: String| Err(Error::InvalidInput(what));
        match self {
            Family::Segre(l, m) if l < 1 || m < 1 => bad(format!("segre({l},{m}) needs l, m >= 1")),
            Family::Veronese2(k) if k < 2 => bad(format!("veronese2({k}) needs k >= 2")),
            Family::GrassmannLines(r) if r < 3 => bad(format!("grassmann_lines({r}) needs r >= 3")),
            Family::Quadric(n) if n < 1 => bad(format!("quadric({n}) needs n >= 1")),
            Family::Segre(l, m) if l > MAX_PARAM || m > MAX_PARAM => bad(format!("segre({l},{m}) too large")),
            Family::Veronese2(k) | Family::GrassmannLines(k) | Family::Quadric(k) if k > MAX_PARAM => {
                bad(format!("{} too large", self.name()))
            }
            f => Ok(f),
        }
    }

    pub fn name(self) -> String {
        match self {
            Family::Segre(l, m) => format!("segre({l},{m})"),
            Family::Veronese2(k) => format!("veronese2({k})"),
            Family::GrassmannLines(r) => format!("grassmann_lines({r})"),
            Family::Quadric(n) => format!("quadric({n})"),
            Family::Spinor10 => "spinor10".to_string(),
        }
    }

    /// Parses names such as `segre(1,2)`, `quadric(5)` or `spinor10`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "spinor10" {
            return Ok(Family::Spinor10);
        }
        let err = || Error::InvalidInput(format!("unrecognized family `{text}`"));
        let (head, rest) = text.split_once('(').ok_or_else(err)?;
        let args = rest.strip_suffix(')').ok_or_else(err)?;
        let nums = args.split(',').map(|a| a.trim().parse::<u32>().map_err(|_| err())).collect::<Result<Vec<_>>>()?;
        let family = match (head.trim(), nums.as_slice()) {
            ("segre", &[l, m]) => Family::Segre(l, m),
            ("veronese2", &[k]) => Family::Veronese2(k),
            ("grassmann_lines", &[r]) => Family::GrassmannLines(r),
            ("quadric", &[n]) => Family::Quadric(n),
            _ => return Err(err()),
        };
        family.validate()
    }

    /// `(n, N, delta, h0(I_X(2)))` for the family.
    pub fn claimed(self) -> (u32, u32, u32, u32) {
        match self {
            Family::Segre(l, m) => (l + m, l * m + l + m, 2, binom(l + 1, 2) * binom(m + 1, 2)),
            Family::Veronese2(k) => {
                let ambient = binom(k + 2, 2) - 1;
                (k, ambient, 1, binom(ambient + 2, 2) - binom(k + 4, 4))
            }
            Family::GrassmannLines(r) => (2 * (r - 1), binom(r + 1, 2) - 1, 4, binom(r + 1, 4)),
            Family::Quadric(n) => (n, n + 1, n, 1),
            Family::Spinor10 => (10, 15, 6, 10),
        }
    }

    fn citation(self) -> Citation {
        match self {
            Family::Segre(..) => citation::SEGRE,
            Family::Veronese2(_) => citation::VERONESE,
            Family::GrassmannLines(_) => citation::GRASSMANN,
            Family::Quadric(_) => citation::QUADRIC_HYPERSURFACE,
            Family::Spinor10 => citation::SPINOR,
        }
    }
}

fn binom(n: u32, k: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..u64::from(k) {
        acc = acc * (u64::from(n) - i) / (i + 1);
    }
    acc as u32
}

/// A named projective variety, optionally parametrized, with the invariants
/// it is claimed to have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyModel {
    pub name: String,
    /// Map onto the affine cone in `A^{N+1}`; `None` for invariants-only entries.
    pub map: Option<PolynomialMap>,
    pub claimed: Option<LqelInvariants>,
    pub claimed_quadrics: Option<u32>,
    /// Name of the model standing for `Y_x`.
    pub yx_link: Option<String>,
    pub notes: Vec<Citation>,
}

impl VarietyModel {
    /// Source variable count.
    pub fn params(&self) -> Option<usize> {
        self.map.as_ref().map(PolynomialMap::vars)
    }

    pub fn output_count(&self) -> Option<usize> {
        self.map.as_ref().map(|m| m.outputs().len())
    }

    pub fn map(&self) -> Result<&PolynomialMap> {
        self.map.as_ref().ok_or_else(|| Error::NoParametrization(self.name.clone()))
    }

    /// Checks the structural invariants: nonzero map, `N + 1` outputs.
    pub fn validate(&self) -> Result<()> {
        if let Some(map) = &self.map {
            if map.is_zero() {
                return Err(Error::InvalidInput(format!("model `{}` has an identically zero map", self.name)));
            }
            if let Some(ambient) = self.claimed.as_ref().and_then(|c| c.ambient) {
                let outs = map.outputs().len();
                if outs != ambient as usize + 1 {
                    return Err(Error::InvalidInput(format!(
                        "model `{}` claims N = {ambient} but has {outs} output coordinates",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

fn claimed_invariants(n: u32, ambient: u32, delta: u32) -> LqelInvariants {
    derived_invariants(n, delta).expect("catalog data has delta <= n").with_ambient(ambient)
}

fn mono(vars: usize, idx: &[usize]) -> SparsePolynomial {
    let mut exps = vec![0u32; vars];
    for &i in idx {
        exps[i] += 1;
    }
    SparsePolynomial::monomial(vars, 1, exps).expect("arity matches")
}

fn segre_map(l: usize, m: usize) -> PolynomialMap {
    let vars = l + m + 2;
    let outs = (0..=l).flat_map(|i| (0..=m).map(move |j| mono(vars, &[i, l + 1 + j]))).collect();
    PolynomialMap::new(vars, outs).expect("arity matches")
}

fn veronese2_map(k: usize) -> PolynomialMap {
    let vars = k + 1;
    let outs = (0..vars).flat_map(|i| (i..vars).map(move |j| mono(vars, &[i, j]))).collect();
    PolynomialMap::new(vars, outs).expect("arity matches")
}

/// 2x2 minors `a_i b_j - a_j b_i` of a `2 x (r+1)` matrix of parameters.
fn grassmann_map(r: usize) -> PolynomialMap {
    let cols = r + 1;
    let vars = 2 * cols;
    let mut outs = Vec::new();
    for i in 0..cols {
        for j in i + 1..cols {
            let plus = mono(vars, &[i, cols + j]);
            let minus = mono(vars, &[j, cols + i]);
            outs.push(plus.sub(&minus).expect("arity matches"));
        }
    }
    PolynomialMap::new(vars, outs).expect("arity matches")
}

/// Homogenized graph chart `(t0^2 : t0 t1 : ... : t0 tn : t1^2 + ... + tn^2)`.
fn quadric_map(n: usize) -> PolynomialMap {
    let vars = n + 1;
    let mut outs: Vec<_> = (0..vars).map(|i| mono(vars, &[0, i])).collect();
    let mut sum = SparsePolynomial::zero(vars);
    for i in 1..vars {
        sum = sum.add(&mono(vars, &[i, i])).expect("arity matches");
    }
    outs.push(sum);
    PolynomialMap::new(vars, outs).expect("arity matches")
}

/// Big cell of `S^10`: `(t0^2 : t0 a_ij : pf_1(a) : ... : pf_5(a))` where `a`
/// is a 5x5 antisymmetric matrix and `pf_k` the Pfaffian of the principal
/// 4x4 submatrix omitting index `k`.
fn spinor10_map() -> PolynomialMap {
    const SIZE: usize = 5;
    let vars = 1 + SIZE * (SIZE - 1) / 2;
    let mut index = [[0usize; SIZE]; SIZE];
    let mut next = 1;
    for i in 0..SIZE {
        for j in i + 1..SIZE {
            index[i][j] = next;
            next += 1;
        }
    }
    let a = |i: usize, j: usize| mono(vars, &[index[i][j]]);
    let mut outs = vec![mono(vars, &[0, 0])];
    for i in 0..SIZE {
        for j in i + 1..SIZE {
            outs.push(mono(vars, &[0, index[i][j]]));
        }
    }
    for skip in 0..SIZE {
        let idx: Vec<usize> = (0..SIZE).filter(|&x| x != skip).collect();
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        // Pf = a_ij a_kl - a_ik a_jl + a_il a_jk
        let pf = a(i, j)
            .mul(&a(k, l))
            .and_then(|p| p.sub(&a(i, k).mul(&a(j, l))?))
            .and_then(|p| p.add(&a(i, l).mul(&a(j, k))?))
            .expect("small coefficients");
        outs.push(pf);
    }
    PolynomialMap::new(vars, outs).expect("arity matches")
}

/// Builds the standard parametrization of a family with claimed invariants.
pub fn build_model(family: Family) -> Result<VarietyModel> {
    let family = family.validate()?;
    let map = match family {
        Family::Segre(l, m) => segre_map(l as usize, m as usize),
        Family::Veronese2(k) => veronese2_map(k as usize),
        Family::GrassmannLines(r) => grassmann_map(r as usize),
        Family::Quadric(n) => quadric_map(n as usize),
        Family::Spinor10 => spinor10_map(),
    };
    let (n, ambient, delta, quadrics) = family.claimed();
    let mut notes = vec![family.citation()];
    if !matches!(family, Family::Spinor10 | Family::Quadric(_)) {
        notes.push(citation::DETERMINANTAL);
    }
    let yx_link = match family {
        Family::Spinor10 => Some(Family::GrassmannLines(4)),
        Family::GrassmannLines(r) if r >= 4 => Some(Family::Segre(1, r - 2)),
        Family::Quadric(n) if n >= 3 => Some(Family::Quadric(n - 2)),
        _ => None,
    }
    .map(Family::name);
    let model = VarietyModel {
        name: family.name(),
        map: Some(map),
        claimed: Some(claimed_invariants(n, ambient, delta)),
        claimed_quadrics: Some(quadrics),
        yx_link,
        notes,
    };
    model.validate()?;
    Ok(model)
}

/// The invariants-only E6 entry.
pub fn e6_model() -> VarietyModel {
    VarietyModel {
        name: "e6".to_string(),
        map: None,
        claimed: Some(claimed_invariants(16, 26, 8)),
        claimed_quadrics: None,
        yx_link: Some(Family::Spinor10.name()),
        notes: vec![citation::E6],
    }
}

const CATALOG_FAMILIES: &[Family] = &[
    Family::Segre(1, 2),
    Family::Segre(2, 2),
    Family::Segre(1, 3),
    Family::Veronese2(2),
    Family::GrassmannLines(4),
    Family::GrassmannLines(5),
    Family::Quadric(2),
    Family::Quadric(3),
    Family::Quadric(4),
    Family::Quadric(5),
    Family::Quadric(6),
    Family::Quadric(7),
    Family::Quadric(8),
    Family::Spinor10,
];

/// Immutable registry of catalog models.
#[derive(Debug, Clone)]
pub struct Catalog {
    models: Vec<VarietyModel>,
}

impl Catalog {
    pub fn standard() -> Self {
        let mut models: Vec<VarietyModel> =
            CATALOG_FAMILIES.iter().map(|&f| build_model(f).expect("catalog families are valid")).collect();
        models.push(e6_model());
        // links leaving the catalog are dropped
        let names: Vec<String> = models.iter().map(|m| m.name.clone()).collect();
        for m in &mut models {
            if m.yx_link.as_ref().is_some_and(|l| !names.contains(l)) {
                m.yx_link = None;
            }
        }
        Catalog { models }
    }

    pub fn entries(&self) -> &[VarietyModel] {
        &self.models
    }

    pub fn get(&self, name: &str) -> Option<&VarietyModel> {
        let name = name.trim();
        self.models.iter().find(|m| m.name == name)
    }

    /// Catalog lookup, falling back to building any valid family by name.
    pub fn resolve(&self, name: &str) -> Result<VarietyModel> {
        if let Some(m) = self.get(name) {
            return Ok(m.clone());
        }
        match Family::parse(name) {
            Ok(f) => build_model(f),
            Err(Error::InvalidInput(msg)) if msg.starts_with("unrecognized") => {
                Err(Error::InvalidInput(format!("unknown model `{}`", name.trim())))
            }
            Err(e) => Err(e),
        }
    }

    /// Catalog models and linear sections of them with invariants `(n, delta)`.
    pub fn identify(&self, n: u32, delta: u32) -> Vec<String> {
        let entries =
            self.models.iter().filter_map(|m| m.claimed.as_ref().map(|inv| (m.name.clone(), inv.n, inv.delta)));
        identify_in(entries, n, delta)
    }
}

/// [`Catalog::identify`] on the standard catalog, from claimed invariants
/// alone (no parametrization is built).
pub fn identify_standard(n: u32, delta: u32) -> Vec<String> {
    let e6 = e6_model();
    let e6_inv = e6.claimed.expect("e6 has claims");
    let entries = CATALOG_FAMILIES
        .iter()
        .map(|&f| {
            let (fn_, _, fd, _) = f.claimed();
            (f.name(), fn_, fd)
        })
        .chain([(e6.name, e6_inv.n, e6_inv.delta)]);
    identify_in(entries, n, delta)
}

/// A codimension-`c` linear section of a model of type `delta_m` has type
/// `delta_m - c`; sections are taken only while the type stays positive at
/// every step.
fn identify_in(entries: impl Iterator<Item = (String, u32, u32)>, n: u32, delta: u32) -> Vec<String> {
    let mut out = Vec::new();
    for (name, mn, md) in entries {
        if mn < n || md < delta || mn - n != md - delta {
            continue;
        }
        let c = mn - n;
        // quadric sections are quadrics; skip the redundant chains
        if c > 0 && (mn == md || md < c) {
            continue;
        }
        out.push(match c {
            0 => name,
            1 => format!("general hyperplane section of {name}"),
            c => format!("general codimension-{c} linear section of {name}"),
        });
    }
    out
}

/// All standard catalog entries.
pub fn catalog_entries() -> Vec<VarietyModel> {
    Catalog::standard().models
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn nnd(m: &VarietyModel) -> (u32, u32, u32) {
        let c = m.claimed.as_ref().unwrap();
        (c.n, c.ambient.unwrap(), c.delta)
    }

    #[test]
    fn family_examples() {
        assert_eq!(nnd(&build_model(Family::Segre(1, 2)).unwrap()), (3, 5, 2));
        assert_eq!(nnd(&build_model(Family::GrassmannLines(4)).unwrap()), (6, 9, 4));
        assert_eq!(nnd(&build_model(Family::Spinor10).unwrap()), (10, 15, 6));
        assert_eq!(nnd(&build_model(Family::Quadric(4)).unwrap()), (4, 5, 4));
    }

    #[test]
    fn out_of_range_parameters() {
        for f in [Family::Segre(0, 2), Family::Veronese2(1), Family::GrassmannLines(2), Family::Quadric(0)] {
            assert!(matches!(build_model(f), Err(Error::InvalidInput(_))), "{f:?}");
        }
        assert!(Family::parse("segre(1)").is_err());
        assert!(Family::parse("cubic(3)").is_err());
        assert!(Family::parse("segre(1,x)").is_err());
        assert_eq!(Family::parse(" quadric( 5 ) "), Ok(Family::Quadric(5)));
    }

    #[test]
    fn names_round_trip() {
        for &f in CATALOG_FAMILIES {
            assert_eq!(Family::parse(&f.name()), Ok(f));
        }
    }

    #[test]
    fn catalog_lookups() {
        let cat = Catalog::standard();
        assert_eq!(cat.get("spinor10").unwrap().yx_link.as_deref(), Some("grassmann_lines(4)"));
        assert_eq!(cat.get("grassmann_lines(4)").unwrap().yx_link.as_deref(), Some("segre(1,2)"));
        let e6 = cat.get("e6").unwrap();
        assert!(e6.map.is_none());
        assert_eq!(nnd(e6), (16, 26, 8));
        assert_eq!(e6.yx_link.as_deref(), Some("spinor10"));
        assert_eq!(nnd(cat.get("segre(2,2)").unwrap()), (4, 8, 2));
        // quadric(3) links to quadric(1), which is not in the catalog
        assert_eq!(cat.get("quadric(3)").unwrap().yx_link, None);
        assert_eq!(cat.get("quadric(6)").unwrap().yx_link.as_deref(), Some("quadric(4)"));
        assert!(cat.resolve("segre(3,4)").is_ok());
        assert!(matches!(cat.resolve("nonsense"), Err(Error::InvalidInput(m)) if m.contains("unknown model")));
    }

    #[test]
    fn tower_link_consistency() {
        let cat = Catalog::standard();
        let mut linked = 0;
        for parent in cat.entries() {
            let Some(child) = parent.yx_link.as_ref().and_then(|l| cat.get(l)) else { continue };
            let (p, c) = (parent.claimed.as_ref().unwrap(), child.claimed.as_ref().unwrap());
            assert_eq!(c.n, (p.n + p.delta) / 2 - 2, "{}", parent.name);
            assert_eq!(c.delta, p.delta - 2, "{}", parent.name);
            assert_eq!(c.ambient.unwrap(), p.n - 1, "{}", parent.name);
            assert_eq!(p.yx, Some((c.n, c.delta)));
            linked += 1;
        }
        assert!(linked >= 7);
    }

    #[test]
    fn structural_invariants() {
        for m in catalog_entries() {
            m.validate().unwrap();
            let inv = m.claimed.as_ref().unwrap();
            let ambient = inv.ambient.unwrap();
            assert!(inv.delta <= inv.n);
            assert!(inv.secant_dim <= ambient);
            if inv.delta >= 1 {
                assert!(ambient <= inv.n * (inv.n + 3) / 2);
            }
            if inv.delta >= 3 {
                assert_eq!(inv.n % 2, inv.delta % 2);
                let s = inv.line_splitting.unwrap();
                assert_eq!(s.rank(), inv.n);
                assert_eq!(s.ones + 2, (inv.n + inv.delta) / 2);
            }
        }
    }

    #[test]
    fn segre_values_are_products() {
        let f = PrimeField::default();
        let m = build_model(Family::Segre(1, 2)).unwrap();
        let pt: Vec<_> = [2, 3, 5, 7, 11].iter().map(|&v| f.from_i64(v)).collect();
        let vals = m.map().unwrap().eval(f, &pt).unwrap();
        let want: Vec<_> = [10, 14, 22, 15, 21, 33].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(vals, want);
    }

    #[test]
    fn identification_by_sections() {
        let cat = Catalog::standard();
        assert_eq!(cat.identify(6, 4), ["grassmann_lines(4)"]);
        assert_eq!(cat.identify(9, 5), ["general hyperplane section of spinor10"]);
        let two_one = cat.identify(2, 1);
        assert!(two_one.contains(&"veronese2(2)".into()));
        assert!(two_one.contains(&"general hyperplane section of segre(1,2)".into()));
        assert!(cat.identify(8, 4).contains(&"general codimension-2 linear section of spinor10".into()));
        assert!(cat.identify(12, 7).is_empty());
    }

    #[test]
    fn static_identification_matches_catalog() {
        let cat = Catalog::standard();
        for n in 1..=20 {
            for delta in 1..=n {
                assert_eq!(identify_standard(n, delta), cat.identify(n, delta), "({n}, {delta})");
            }
        }
    }
}

//! Admissibility rules and the enumerators that re-derive the classification
//! lists from their constraint systems.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::identify_standard;
use crate::citation::{self, Citation};
use crate::error::{Error, Result};
use crate::tower::divisibility_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCheck {
    pub id: &'static str,
    pub citation: Citation,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overall {
    Feasible,
    Infeasible,
    /// Feasible, and the rules pin the variety down to these cases.
    ConstrainedTo(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub n: u32,
    pub delta: u32,
    pub ambient: Option<u32>,
    pub rules: Vec<RuleCheck>,
    pub overall: Overall,
}

impl AdmissibilityVerdict {
    pub fn is_infeasible(&self) -> bool {
        self.overall == Overall::Infeasible
    }

    pub fn failures(&self) -> impl Iterator<Item = &RuleCheck> {
        self.rules.iter().filter(|r| r.outcome == Outcome::Fail)
    }
}

fn rule(id: &'static str, citation: Citation, pass: bool, detail: String) -> RuleCheck {
    RuleCheck { id, citation, outcome: if pass { Outcome::Pass } else { Outcome::Fail }, detail }
}

fn skipped(id: &'static str, citation: Citation, detail: &str) -> RuleCheck {
    RuleCheck { id, citation, outcome: Outcome::NotApplicable, detail: detail.into() }
}

/// Parity and divisibility: the two necessary conditions for `delta >= 3`.
fn parity_and_divisibility(n: u32, delta: u32) -> bool {
    delta < 3 || (n % 2 == delta % 2 && divisibility_check(u64::from(n), u64::from(delta)).is_ok_and(|w| w.passes))
}

/// Applies every applicable necessary condition to `(n, delta[, N])`.
pub fn admissibility(n: u32, delta: u32, ambient: Option<u32>) -> Result<AdmissibilityVerdict> {
    if delta < 1 || delta > n {
        return Err(Error::InvalidInput(format!("admissibility needs 1 <= delta <= n, got n = {n}, delta = {delta}")));
    }
    let mut rules = Vec::new();
    let mut identified: Option<Vec<String>> = None;

    if delta == n {
        let detail = format!("delta = n identifies a quadric hypersurface in P^{}", n + 1);
        rules.push(match ambient {
            Some(a) => rule("quadric", citation::QUADRIC_HYPERSURFACE, a == n + 1, format!("{detail}; N = {a}")),
            None => rule("quadric", citation::QUADRIC_HYPERSURFACE, true, detail),
        });
        identified = Some(alloc::vec![format!("quadric({n})")]);
    } else {
        rules.push(skipped("quadric", citation::QUADRIC_HYPERSURFACE, "delta < n"));
    }

    if n >= 2 && delta == n - 1 {
        let ok = n == 2 || n == 3;
        rules.push(rule(
            "defect-n-minus-one",
            citation::DEFECT_N_MINUS_ONE,
            ok,
            format!("delta = n - 1 = {delta}: parity excludes delta >= 3, so n must be 2 or 3"),
        ));
        if ok {
            identified = Some(identify_standard(n, delta));
        }
        if let Some(a) = ambient {
            rules.push(rule(
                "defect-n-minus-one-ambient",
                citation::DEFECT_N_MINUS_ONE,
                a <= 5,
                format!("N = {a} <= 5"),
            ));
        }
    } else {
        rules.push(skipped("defect-n-minus-one", citation::DEFECT_N_MINUS_ONE, "delta != n - 1"));
    }

    if 2 * delta > n && delta < n {
        let listed = enumerate_high_defect().iter().any(|c| (c.n, c.delta) == (n, delta));
        rules.push(rule(
            "high-defect",
            citation::HIGH_DEFECT,
            listed,
            format!(
                "n/2 < delta < n: ({n}, {delta}) {} a solution of the constraint system",
                if listed { "is" } else { "is not" }
            ),
        ));
        if listed {
            identified = Some(identify_standard(n, delta));
        }
    } else {
        rules.push(skipped("high-defect", citation::HIGH_DEFECT, "delta <= n/2 or delta = n"));
    }

    if 2 * delta == n {
        let ok = half_defect_admissible(n);
        rules.push(rule(
            "half-defect",
            citation::HALF_DEFECT,
            ok,
            format!("delta = n/2: n = {n} {} the constraint system", if ok { "solves" } else { "violates" }),
        ));
        if ok {
            identified = Some(identify_standard(n, delta));
        }
    } else {
        rules.push(skipped("half-defect", citation::HALF_DEFECT, "delta != n/2"));
    }

    if delta >= 3 {
        rules.push(rule("parity", citation::PARITY, n % 2 == delta % 2, format!("n - delta = {}", n - delta)));
        let w = divisibility_check(u64::from(n), u64::from(delta))?;
        rules.push(rule(
            "divisibility",
            citation::DIVISIBILITY,
            w.passes,
            format!("r_X = {}, n - delta = {}, remainder mod 2^r_X = {}", w.r_x, w.difference, w.remainder),
        ));
    } else {
        rules.push(skipped("parity", citation::PARITY, "delta < 3"));
        rules.push(skipped("divisibility", citation::DIVISIBILITY, "delta < 3"));
    }

    if let Some(a) = ambient {
        let bound = u64::from(n) * (u64::from(n) + 3) / 2;
        rules.push(rule(
            "ambient-bound",
            citation::AMBIENT_BOUND,
            u64::from(a) <= bound,
            format!("N = {a}, n(n+3)/2 = {bound}"),
        ));
        let secant = 2 * n + 1 - delta;
        rules.push(rule(
            "secant-in-ambient",
            citation::SECANT_DEFECT,
            a >= secant,
            format!("dim SX = {secant}, N = {a}"),
        ));
    }

    let overall = if rules.iter().any(|r| r.outcome == Outcome::Fail) {
        Overall::Infeasible
    } else {
        match identified {
            Some(cases) => Overall::ConstrainedTo(cases),
            None => Overall::Feasible,
        }
    };
    Ok(AdmissibilityVerdict { n, delta, ambient, rules, overall })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HighDefectBranch {
    /// `delta <= 2`
    SmallType,
    /// `delta = 2 r_X + 2`
    EvenType,
    /// `delta = 2 r_X + 1`
    OddType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighDefectCase {
    pub n: u32,
    pub delta: u32,
    pub branch: HighDefectBranch,
    /// `m` in `n = delta + m 2^{r_X}`; zero on the small-type branch.
    pub multiplier: u32,
    pub identification: Vec<String>,
}

fn label(mut cases: Vec<HighDefectCase>) -> Vec<HighDefectCase> {
    for c in &mut cases {
        c.identification = identify_standard(c.n, c.delta);
    }
    cases
}

/// Solutions of `n/2 < delta < n`.
///
/// For `delta <= 2` the only integer pair is `(3, 2)`. For `delta >= 3`
/// divisibility gives `n = delta + m 2^{r_X}` with `m >= 1`, and `2 delta > n`
/// becomes `delta > m 2^{r_X}`. Since `delta <= 2 r_X + 2`, solutions need
/// `2^{r_X} < 2 r_X + 2`, which fails for every `r_X >= 3`; the loop below
/// stops at the first such `r`.
pub fn enumerate_high_defect() -> Vec<HighDefectCase> {
    let mut out = Vec::new();
    for delta in 1u32..=2 {
        for n in delta + 1..2 * delta {
            out.push(HighDefectCase {
                n,
                delta,
                branch: HighDefectBranch::SmallType,
                multiplier: 0,
                identification: Vec::new(),
            });
        }
    }
    let mut r = 1u32;
    while (1u64 << r) < u64::from(2 * r + 2) {
        let step = 1u32 << r;
        for (delta, branch) in [(2 * r + 1, HighDefectBranch::OddType), (2 * r + 2, HighDefectBranch::EvenType)] {
            let mut m = 1;
            while m * step < delta {
                out.push(HighDefectCase {
                    n: delta + m * step,
                    delta,
                    branch,
                    multiplier: m,
                    identification: Vec::new(),
                });
                m += 1;
            }
        }
        r += 1;
    }
    out.sort_by_key(|c| (c.n, c.delta));
    label(out)
}

/// Brute-force scan of `n/2 < delta < n`, `delta <= delta_max`, keeping the
/// pairs that pass parity and divisibility. Agrees with
/// [`enumerate_high_defect`] for every bound of at least 6.
pub fn scan_high_defect(delta_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for delta in 1..=delta_max {
        for n in delta + 1..2 * delta {
            if parity_and_divisibility(n, delta) {
                out.push((n, delta));
            }
        }
    }
    out.sort_unstable();
    out
}

fn half_defect_admissible(n: u32) -> bool {
    n.is_multiple_of(2) && n >= 2 && parity_and_divisibility(n, n / 2)
}

/// Even `n <= n_max` for which `delta = n/2` survives parity and
/// divisibility; `n < 6` (type at most 2) is unconstrained.
pub fn enumerate_half_defect(n_max: u32) -> Vec<u32> {
    (2..=n_max).step_by(2).filter(|&n| half_defect_admissible(n)).collect()
}

/// Invariants of a general hyperplane section.
pub fn section_invariants(n: u32, delta: u32) -> Result<(u32, u32)> {
    if delta == 0 {
        return Err(Error::NotApplicable("hyperplane sections need delta >= 1".into()));
    }
    if n < 2 || delta > n {
        return Err(Error::InvalidInput(format!("section needs n >= 2 and delta <= n, got ({n}, {delta})")));
    }
    Ok((n - 1, delta - 1))
}

/// Whether a type `n/2` manifold of dimension `n` would give a `Y_x` with
/// `dim Y_x > 2(n - 1)/3`, i.e. `3n/4 - 2 > 2(n - 1)/3`, which holds iff
/// `n > 16`. Compared after multiplying both sides by 12.
pub fn hartshorne_threshold(n: u32) -> Result<bool> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::NotApplicable(format!("threshold needs even n >= 6, got {n}")));
    }
    let n = i64::from(n);
    Ok(9 * n - 24 > 8 * n - 8)
}

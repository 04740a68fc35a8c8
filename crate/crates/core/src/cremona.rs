//! Special Cremona transformations of type `(2, d)` and the `N = 2n + 1`
//! classification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::citation::{self, Citation};
use crate::classify::{admissibility, Outcome};
use crate::error::{Error, Result};
use crate::invariants::r_x;
use crate::tower::power_of_two_divides;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    DeltaZero,
    /// Necessary conditions hold; existence is not claimed.
    FanoCandidate,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CremonaRule {
    pub citation: Citation,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CremonaReport {
    pub d1: u32,
    pub d2: u32,
    pub n: u32,
    /// `(n + 2)/d - 1`; `None` when not an integer.
    pub delta: Option<i64>,
    /// `2n + 2 - delta`
    pub ambient: Option<i64>,
    /// `2 d - 1`
    pub secant_degree: u32,
    /// `((n - 1)(d + 1) + 3)/(2d)` on the Fano branch.
    pub fano_index: Option<Ratio<i64>>,
    pub branch: Branch,
    pub rules: Vec<CremonaRule>,
}

impl CremonaReport {
    pub fn triple(&self) -> Option<(i64, u32, i64)> {
        Some((self.ambient?, self.n, self.delta?))
    }
}

fn push(rules: &mut Vec<CremonaRule>, citation: Citation, pass: bool, detail: String) -> bool {
    rules.push(CremonaRule { citation, outcome: if pass { Outcome::Pass } else { Outcome::Fail }, detail });
    pass
}

/// Invariants of the center of a special `(2, d)` Cremona transformation of
/// dimension `n`, with every necessary condition applied.
pub fn type2d_invariants(d: u32, n: u32) -> Result<CremonaReport> {
    if d < 2 || n < 1 {
        return Err(Error::InvalidInput(format!("type (2,d) needs d >= 2 and n >= 1, got d = {d}, n = {n}")));
    }
    let mut rules = Vec::new();
    let mut report = CremonaReport {
        d1: 2,
        d2: d,
        n,
        delta: None,
        ambient: None,
        secant_degree: 2 * d - 1,
        fano_index: None,
        branch: Branch::Infeasible,
        rules: Vec::new(),
    };
    let integral = (n + 2).is_multiple_of(d) && n + 2 >= d;
    if !push(&mut rules, citation::CREMONA_TYPE, integral, format!("delta = (n + 2)/d - 1 = {}/{} - 1", n + 2, d)) {
        report.rules = rules;
        return Ok(report);
    }
    let delta = (n + 2) / d - 1;
    report.delta = Some(i64::from(delta));
    report.ambient = Some(2 * i64::from(n) + 2 - i64::from(delta));

    if delta == 0 {
        let c = if d % 2 == 1 { citation::CREMONA_ODD } else { citation::CREMONA_FANO };
        push(&mut rules, c, true, format!("delta = 0: n = d - 2 = {n}, N = 2d - 2 = {}", 2 * d - 2));
        report.branch = Branch::DeltaZero;
        report.rules = rules;
        return Ok(report);
    }

    let mut ok = true;
    if d >= 3 && delta == 1 {
        ok &= push(&mut rules, citation::CREMONA_DELTA_ONE, false, format!("delta = 1 with d = {d}"));
    }
    if delta == 2 {
        ok &= push(&mut rules, citation::CREMONA_DELTA_TWO, n.is_multiple_of(2), format!("n = {n}"));
    }
    if delta >= 3 {
        let even = delta.is_multiple_of(2) && n.is_multiple_of(2) && d.is_multiple_of(2);
        ok &= push(&mut rules, citation::CREMONA_EVEN, even, format!("delta = {delta}, n = {n}, d = {d}"));
        if delta.is_multiple_of(2) {
            let r = r_x(delta)?;
            let target = u64::from(d) * u64::from(2 * r + 3) - 2;
            ok &= push(
                &mut rules,
                citation::CREMONA_EVEN_BOUND,
                power_of_two_divides(u64::from(r), target),
                format!("r_X = {r}: 2^{r} | d(2r_X + 3) - 2 = {target}"),
            );
        }
    }
    let ambient = 2 * n + 2 - delta;
    let verdict = admissibility(n, delta, Some(ambient))?;
    ok &= push(
        &mut rules,
        citation::DIVISIBILITY,
        !verdict.is_infeasible(),
        match verdict.failures().next() {
            Some(f) => format!("admissibility fails: {} ({})", f.id, f.detail),
            None => format!("({n}, {delta}) in P^{ambient} passes admissibility"),
        },
    );
    if ok {
        let index = Ratio::new((i64::from(n) - 1) * (i64::from(d) + 1) + 3, 2 * i64::from(d));
        push(&mut rules, citation::CREMONA_FANO, true, format!("candidate only; Fano index {index}"));
        report.branch = Branch::FanoCandidate;
        report.fano_index = Some(index);
    }
    report.rules = rules;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type2dClassification {
    pub d: u32,
    pub n_max: u32,
    /// No Fano-branch candidate can have `n` above this.
    pub dimension_bound: u32,
    pub candidates: Vec<CremonaReport>,
    pub rejected: Vec<CremonaReport>,
}

impl Type2dClassification {
    pub fn fano_pairs(&self) -> Vec<(u32, i64)> {
        self.candidates
            .iter()
            .filter(|r| r.branch == Branch::FanoCandidate)
            .map(|r| (r.n, r.delta.unwrap_or(-1)))
            .collect()
    }
}

/// Upper bound on `n` for Fano-branch centers of type `(2, d)`.
///
/// Odd `d` has no Fano branch. For even `d`, type 2 gives `n = 3d - 2`, and
/// type `2r + 2` needs `2^r <= d(2r + 3) - 2`, which fails for all `r`
/// past the first failure since the left side grows faster.
pub fn fano_dimension_bound(d: u32) -> u32 {
    if d % 2 == 1 {
        return d.saturating_sub(2);
    }
    let d64 = u64::from(d);
    let mut bound = 3 * d64 - 2;
    let mut r = 1u32;
    while r < 63 && (1u64 << r) <= d64 * u64::from(2 * r + 3) - 2 {
        bound = bound.max(d64 * u64::from(2 * r + 3) - 2);
        r += 1;
    }
    u32::try_from(bound).unwrap_or(u32::MAX)
}

/// Scans every `1 <= n <= n_max` for centers of type `(2, d)`. The
/// `delta = 0` center `n = d - 2` is always reported when it exists.
pub fn classify_type2d(d: u32, n_max: u32) -> Result<Type2dClassification> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("type (2,d) needs d >= 2, got {d}")));
    }
    let mut candidates = Vec::new();
    let mut rejected = Vec::new();
    let zero_n = d - 2;
    if zero_n >= 1 {
        candidates.push(type2d_invariants(d, zero_n)?);
    }
    for n in 1..=n_max {
        if n == zero_n || (n + 2) % d != 0 {
            continue;
        }
        let report = type2d_invariants(d, n)?;
        match report.branch {
            Branch::Infeasible => rejected.push(report),
            _ => candidates.push(report),
        }
    }
    Ok(Type2dClassification { d, n_max, dimension_bound: fano_dimension_bound(d), candidates, rejected })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CremonaSolution {
    pub d1: u32,
    pub d2: u32,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoNPlusOne {
    pub solutions: Vec<CremonaSolution>,
    /// Integer solutions of the degree relation rejected by a later rule.
    pub rejected: Vec<(CremonaSolution, String)>,
}

/// Centers in `P^{2n+1}`: integer solutions of `2 + n = d2((2 - d1) n + 2)`.
///
/// The right side is positive only when `(d1 - 2) n < 2`, so `d1 >= 4` has no
/// solution and `d1 = 3` forces `n = 1`. For `d1 = 2` the relation gives
/// `n = 2 d2 - 2`, a center of type 1, excluded for `d2 >= 3`; `n_scan` only
/// bounds how many of those excluded members are listed.
pub fn classify_2n_plus_1(n_scan: u32) -> TwoNPlusOne {
    let mut solutions = Vec::new();
    let mut rejected = Vec::new();
    let mut d1 = 2u32;
    loop {
        let slope = i64::from(d1) - 2;
        if slope >= 2 {
            break;
        }
        for n in 1..=n_scan.max(2) {
            let denom = 2 - slope * i64::from(n);
            if denom <= 0 {
                break;
            }
            let num = 2 + i64::from(n);
            if num % denom != 0 {
                continue;
            }
            let d2 = u32::try_from(num / denom).expect("small");
            if d2 < 2 {
                continue;
            }
            let sol = CremonaSolution { d1, d2, n };
            if d1 == 2 {
                // N = 2n + 1 means delta = 1
                match type2d_invariants(d2, n) {
                    Ok(r) if r.branch != Branch::Infeasible => solutions.push(sol),
                    Ok(_) => rejected
                        .push((sol, format!("{}: type 1 center with d2 = {d2}", citation::CREMONA_DELTA_ONE.anchor))),
                    Err(e) => rejected.push((sol, format!("{e}"))),
                }
            } else {
                solutions.push(sol);
            }
        }
        d1 += 1;
    }
    TwoNPlusOne { solutions, rejected }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type2d_examples() {
        let r = type2d_invariants(2, 16).unwrap();
        assert_eq!((r.delta, r.ambient, r.secant_degree), (Some(8), Some(26), 3));
        assert_eq!(r.branch, Branch::FanoCandidate);
        let r = type2d_invariants(3, 1).unwrap();
        assert_eq!((r.delta, r.ambient, r.secant_degree, r.branch), (Some(0), Some(4), 5, Branch::DeltaZero));
        let r = type2d_invariants(5, 3).unwrap();
        assert_eq!((r.delta, r.ambient, r.secant_degree), (Some(0), Some(8), 9));
    }

    #[test]
    fn non_integral_type_is_infeasible() {
        let r = type2d_invariants(3, 2).unwrap();
        assert_eq!(r.branch, Branch::Infeasible);
        assert_eq!(r.delta, None);
        assert!(type2d_invariants(1, 2).is_err());
    }

    #[test]
    fn odd_degree_three() {
        let c = classify_type2d(3, 200).unwrap();
        assert_eq!(c.candidates.len(), 1);
        assert_eq!(c.candidates[0].triple(), Some((4, 1, 0)));
    }

    #[test]
    fn severi_candidates() {
        let c = classify_type2d(2, 20).unwrap();
        let got: Vec<_> = c.candidates.iter().map(|r| r.triple().unwrap()).collect();
        assert_eq!(got, [(5, 2, 1), (8, 4, 2), (14, 8, 4), (26, 16, 8)]);
        assert_eq!(c.dimension_bound, 20);
    }

    #[test]
    fn degree_four() {
        let c = classify_type2d(4, 40).unwrap();
        assert_eq!(c.candidates[0].triple(), Some((6, 2, 0)));
        assert_eq!(c.fano_pairs(), [(10, 2), (18, 4)]);
        let six = c.rejected.iter().find(|r| r.n == 26).unwrap();
        assert!(six.rules.iter().any(|r| r.citation == citation::CREMONA_EVEN_BOUND && r.outcome == Outcome::Fail));
        assert_eq!(c.dimension_bound, 50);
        assert_eq!(c.candidates[1].fano_index, Some(Ratio::from_integer(6)));
        assert_eq!(c.candidates[2].fano_index, Some(Ratio::from_integer(11)));
    }

    #[test]
    fn two_n_plus_one() {
        let t = classify_2n_plus_1(40);
        assert_eq!(t.solutions, [CremonaSolution { d1: 2, d2: 2, n: 2 }, CremonaSolution { d1: 3, d2: 3, n: 1 }]);
        assert!(t.rejected.iter().all(|(s, _)| s.d1 == 2 && s.d2 >= 3));
        assert_eq!(classify_2n_plus_1(400).solutions, t.solutions);
    }
}

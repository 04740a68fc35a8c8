//! The `Y_x` tower `X^1, ..., X^{r_X}` and the divisibility condition.
//!
//! Values are exact rationals. A non-integral level is a result (it
//! witnesses infeasibility of the input pair), never an error.

use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::invariants::r_x;

pub type Rational = Ratio<i128>;

/// Largest type accepted by [`tower`]; keeps `2^k` and `n` inside `i128`.
pub const MAX_TOWER_DELTA: u32 = 120;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub k: u32,
    pub dim: Rational,
    pub delta: i64,
    /// `X^k` sits in `P^ambient`.
    pub ambient: Rational,
    pub codim: Rational,
    /// `dim`, `ambient` and `codim` are all integers.
    pub integral: bool,
    /// Type dropped below 3: no further descent is defined from here.
    pub terminal: bool,
    /// The closed form agrees with one step of recursive descent from the
    /// previous level.
    pub recursive_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub n: u32,
    pub delta: u32,
    pub r_x: u32,
    pub levels: Vec<TowerLevel>,
}

impl TowerReport {
    pub fn all_integral(&self) -> bool {
        self.levels.iter().all(|l| l.integral)
    }

    pub fn last(&self) -> &TowerLevel {
        self.levels.last().expect("delta >= 3 gives at least one level")
    }
}

fn pow2(k: u32) -> i128 {
    1i128 << k
}

fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Closed-form tower for an LQEL-manifold of dimension `n` and type `delta`.
pub fn tower(n: u32, delta: u32) -> Result<TowerReport> {
    if delta < 3 {
        return Err(Error::NotApplicable(alloc::format!("tower undefined for delta = {delta} < 3")));
    }
    if delta > n {
        return Err(Error::InvalidInput(alloc::format!("delta = {delta} exceeds n = {n}")));
    }
    if delta > MAX_TOWER_DELTA {
        return Err(Error::InvalidInput(alloc::format!(
            "delta = {delta} exceeds the supported tower depth (delta <= {MAX_TOWER_DELTA})"
        )));
    }
    let r = r_x(delta)?;
    let (n_q, d_q) = (Rational::from(i128::from(n)), Rational::from(i128::from(delta)));
    let mut levels = Vec::with_capacity(r as usize);
    let mut prev_dim = n_q;
    let mut prev_delta = d_q;
    for k in 1..=r {
        let ki = i128::from(k);
        let two_k = Rational::from(pow2(k));
        let two_k1 = Rational::from(pow2(k - 1));
        let dim = (n_q + (two_k - Rational::one()) * d_q) / two_k - Rational::from(2 * ki);
        let ambient = (n_q + (two_k1 - Rational::one()) * d_q) / two_k1 - Rational::from(2 * ki) + Rational::one();
        let codim = (n_q - d_q) / two_k + Rational::one();
        let delta_k = i64::from(delta) - 2 * i64::from(k);

        let rec_dim = (prev_dim + prev_delta) / Rational::from(2) - Rational::from(2);
        let rec_delta = prev_delta - Rational::from(2);
        let rec_ambient = prev_dim - Rational::one();
        let recursive_agrees = rec_dim == dim
            && rec_delta == Rational::from(i128::from(delta_k))
            && rec_ambient == ambient
            && ambient - dim == codim;

        levels.push(TowerLevel {
            k,
            integral: is_integer(&dim) && is_integer(&ambient) && is_integer(&codim),
            terminal: delta_k < 3,
            dim,
            delta: delta_k,
            ambient,
            codim,
            recursive_agrees,
        });
        prev_dim = dim;
        prev_delta = rec_delta;
    }
    Ok(TowerReport { n, delta, r_x: r, levels })
}

/// The same tower computed only by the one-step recursion, starting at
/// `(n, delta)` with ambient `P^{n-1}` for the first level.
pub fn tower_by_recursion(n: u32, delta: u32) -> Result<Vec<(Rational, i64, Rational)>> {
    let r = r_x(delta)?;
    let mut dim = Rational::from(i128::from(n));
    let mut d = Rational::from(i128::from(delta));
    let mut out = Vec::new();
    for _ in 0..r {
        let ambient = dim - Rational::one();
        dim = (dim + d) / Rational::from(2) - Rational::from(2);
        d -= Rational::from(2);
        out.push((dim, (*d.numer() / *d.denom()) as i64, ambient));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisibilityWitness {
    pub r_x: u32,
    /// `n - delta`
    pub difference: u64,
    /// `(n - delta) mod 2^{r_X}`
    pub remainder: u64,
    pub passes: bool,
}

/// Checks `2^{r_X} | n - delta`.
pub fn divisibility_check(n: u64, delta: u64) -> Result<DivisibilityWitness> {
    if delta < 3 {
        return Err(Error::NotApplicable(alloc::format!("divisibility needs delta >= 3, got {delta}")));
    }
    if delta > n {
        return Err(Error::InvalidInput(alloc::format!("delta = {delta} exceeds n = {n}")));
    }
    let r = (delta - 1) / 2;
    let difference = n - delta;
    let remainder = if r >= 64 { difference } else { difference & ((1u64 << r) - 1) };
    let r = u32::try_from(r).unwrap_or(u32::MAX);
    Ok(DivisibilityWitness { r_x: r, difference, remainder, passes: remainder == 0 })
}

/// `true` when `2^k` divides `x` (with `0` divisible by everything).
pub fn power_of_two_divides(k: u64, x: u64) -> bool {
    x == 0 || u64::from(x.trailing_zeros()) >= k
}

pub fn rational_to_integer(r: &Rational) -> Option<i128> {
    if r.denom().is_one() {
        Some(*r.numer())
    } else if r.is_zero() {
        Some(0)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(l: &TowerLevel) -> (i128, i64, i128) {
        (rational_to_integer(&l.dim).unwrap(), l.delta, rational_to_integer(&l.ambient).unwrap())
    }

    #[test]
    fn e6_tower() {
        let t = tower(16, 8).unwrap();
        let got: Vec<_> = t.levels.iter().map(triple).collect();
        assert_eq!(got, [(10, 6, 15), (6, 4, 9), (3, 2, 5)]);
        assert!(t.all_integral());
        assert!(t.levels.iter().all(|l| l.recursive_agrees));
        assert_eq!(t.levels.iter().map(|l| l.terminal).collect::<Vec<_>>(), [false, false, true]);
    }

    #[test]
    fn spinor_and_small_towers() {
        let got: Vec<_> = tower(10, 6).unwrap().levels.iter().map(triple).collect();
        assert_eq!(got, [(6, 4, 9), (3, 2, 5)]);
        let got: Vec<_> = tower(5, 3).unwrap().levels.iter().map(triple).collect();
        assert_eq!(got, [(2, 1, 4)]);
    }

    #[test]
    fn non_integral_levels_are_results() {
        let t = tower(8, 3).unwrap();
        assert!(!t.all_integral());
        assert_eq!(t.last().codim, Rational::new(7, 2));
        assert!(!divisibility_check(8, 3).unwrap().passes);
    }

    #[test]
    fn undefined_below_three() {
        assert!(matches!(tower(5, 2), Err(Error::NotApplicable(_))));
        assert!(matches!(divisibility_check(5, 2), Err(Error::NotApplicable(_))));
        assert!(matches!(tower(3, 4), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn divisibility_examples() {
        let w = divisibility_check(16, 8).unwrap();
        assert_eq!((w.r_x, w.difference, w.remainder, w.passes), (3, 8, 0, true));
        assert!(divisibility_check(9, 5).unwrap().passes);
        let w = divisibility_check(8, 3).unwrap();
        assert_eq!((w.r_x, w.remainder, w.passes), (1, 1, false));
        // huge r: only n = delta divides
        assert!(divisibility_check(1000, 1000).unwrap().passes);
        assert!(!divisibility_check(1001, 1000).unwrap().passes);
    }

    #[test]
    fn power_of_two_helper() {
        assert!(power_of_two_divides(3, 16));
        assert!(!power_of_two_divides(5, 16));
        assert!(power_of_two_divides(100, 0));
    }
}

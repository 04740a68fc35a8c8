//! Rational reconstruction of residues modulo a large prime.

use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::field::{FieldScalar, PrimeField};

/// Finds `a/b` with `a ≡ b·x (mod p)` and `|a|, |b| <= sqrt(p/2)`, if such a
/// fraction exists, by the half extended Euclidean algorithm.
pub fn reconstruct(field: &PrimeField, x: FieldScalar) -> Option<Ratio<i128>> {
    let p = i128::from(field.modulus());
    let bound = isqrt(p / 2);
    let (mut r0, mut r1) = (p, i128::from(x.value()));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let value = Ratio::new(r1, t1);
    (field.from_i128(*value.numer()) == field.mul(field.from_i128(*value.denom()), x)).then_some(value)
}

fn isqrt(v: i128) -> i128 {
    let mut x = libm::sqrt(v as f64) as i128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lifts a vector over `F_p` to a primitive integer vector, scaled so the
/// first nonzero entry is positive.
pub fn primitive_integer_vector(field: &PrimeField, v: &[FieldScalar]) -> Option<Vec<i64>> {
    let rats: Vec<Ratio<i128>> = v.iter().map(|&x| reconstruct(field, x)).collect::<Option<_>>()?;
    let mut lcm = 1i128;
    for r in &rats {
        let d = *r.denom();
        lcm = lcm.checked_mul(d / gcd(lcm, d))?;
    }
    let ints: Vec<i128> = rats.iter().map(|r| r.numer().checked_mul(lcm / r.denom())).collect::<Option<_>>()?;
    let g = ints.iter().fold(0, |g, &x| gcd(g, x));
    if g.is_zero() {
        return None;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(1, |x| x.signum());
    ints.iter().map(|&x| i64::try_from(x / g * sign).ok()).collect()
}

//! Prime-field scalars.
//!
//! A [`PrimeField`] is a runtime modulus; [`FieldScalar`] is a reduced
//! residue. Scalars do not carry their modulus, so every operation goes
//! through the field value that produced them.

use rand_core::RngCore;

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// A residue `0 <= value < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldScalar(u64);

impl FieldScalar {
    pub const ZERO: FieldScalar = FieldScalar(0);
    pub const ONE: FieldScalar = FieldScalar(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    /// Builds a field for the modulus `p`, which must be a prime below `2^63`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn zero(self) -> FieldScalar {
        FieldScalar(0)
    }

    #[inline]
    pub fn one(self) -> FieldScalar {
        FieldScalar(1 % self.p)
    }

    #[inline]
    pub fn from_u64(self, v: u64) -> FieldScalar {
        FieldScalar(v % self.p)
    }

    #[inline]
    pub fn from_i64(self, v: i64) -> FieldScalar {
        FieldScalar(i128::from(v).rem_euclid(i128::from(self.p)) as u64)
    }

    #[inline]
    pub fn from_i128(self, v: i128) -> FieldScalar {
        FieldScalar(v.rem_euclid(i128::from(self.p)) as u64)
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn to_signed(self, a: FieldScalar) -> i128 {
        let half = self.p / 2;
        if a.0 > half {
            i128::from(a.0) - i128::from(self.p)
        } else {
            i128::from(a.0)
        }
    }

    #[inline]
    pub fn add(self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        let s = a.0 + b.0;
        FieldScalar(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        FieldScalar(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(self, a: FieldScalar) -> FieldScalar {
        FieldScalar(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(self, a: FieldScalar, b: FieldScalar) -> FieldScalar {
        FieldScalar(((u128::from(a.0) * u128::from(b.0)) % u128::from(self.p)) as u64)
    }

    pub fn pow(self, a: FieldScalar, mut e: u64) -> FieldScalar {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: FieldScalar) -> Option<FieldScalar> {
        if a.0 == 0 {
            return None;
        }
        // extended Euclid on (p, a)
        let (mut r0, mut r1) = (i128::from(self.p), i128::from(a.0));
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.from_i128(t0))
    }

    /// Uniform sample by rejection.
    pub fn random<R: RngCore + ?Sized>(self, rng: &mut R) -> FieldScalar {
        let bits = 64 - (self.p - 1).leading_zeros().min(63);
        let mask = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
        loop {
            let v = rng.next_u64() & mask;
            if v < self.p {
                return FieldScalar(v);
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

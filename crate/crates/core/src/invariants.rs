//! Invariant formulas for LQEL-manifolds of given dimension and type.

use crate::error::{Error, Result};

/// `r_X = floor((delta - 1)/2)`, the tower depth.
pub fn r_x(delta: u32) -> Result<u32> {
    if delta == 0 {
        return Err(Error::NotApplicable("r_X needs delta >= 1".into()));
    }
    Ok((delta - 1) / 2)
}

/// Splitting type of `TX` restricted to a general line of the covering family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineSplitting {
    /// multiplicity of `O(1)`; `O(2)` always appears once
    pub ones: u32,
    /// multiplicity of `O`
    pub zeros: u32,
}

impl LineSplitting {
    pub fn rank(&self) -> u32 {
        1 + self.ones + self.zeros
    }

    pub fn degree(&self) -> u32 {
        2 + self.ones
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LqelInvariants {
    pub n: u32,
    /// `N`, when known.
    pub ambient: Option<u32>,
    pub delta: u32,
    /// `2n + 1 - delta`
    pub secant_dim: u32,
    pub r_x: Option<u32>,
    /// `-K_X . C` for a general conic; needs `delta >= 1`.
    pub conic_degree: Option<u32>,
    pub conic_family_dim: Option<u32>,
    pub conics_through_point: Option<u32>,
    pub tangential_image_dim: u32,
    pub index: Option<u32>,
    pub line_splitting: Option<LineSplitting>,
    pub line_family_dim: Option<u32>,
    /// `(dim Y_x, type of Y_x)` when `delta >= 3`.
    pub yx: Option<(u32, u32)>,
}

/// Fills every invariant that the pair `(n, delta)` determines.
pub fn derived_invariants(n: u32, delta: u32) -> Result<LqelInvariants> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if delta > n {
        return Err(Error::InvalidInput(alloc::format!("delta = {delta} exceeds n = {n}")));
    }
    let conic = delta >= 1;
    let even = (n + delta).is_multiple_of(2);
    let rich = delta >= 3 && even;
    Ok(LqelInvariants {
        n,
        ambient: None,
        delta,
        secant_dim: 2 * n + 1 - delta,
        r_x: r_x(delta).ok(),
        conic_degree: conic.then_some(n + delta),
        conic_family_dim: conic.then(|| 2 * n + delta - 3),
        conics_through_point: conic.then(|| n + delta - 2),
        tangential_image_dim: n - delta,
        index: rich.then(|| (n + delta) / 2),
        line_splitting: rich.then(|| LineSplitting { ones: (n + delta) / 2 - 2, zeros: (n - delta) / 2 + 1 }),
        line_family_dim: rich.then(|| (3 * n + delta) / 2 - 3),
        yx: rich.then(|| ((n + delta) / 2 - 2, delta - 2)),
    })
}

impl LqelInvariants {
    pub fn with_ambient(mut self, ambient: u32) -> Self {
        self.ambient = Some(ambient);
        self
    }

    /// Codimension `N - n`, when `N` is known.
    pub fn codim(&self) -> Option<u32> {
        self.ambient.map(|a| a.saturating_sub(self.n))
    }
}

/// Whether two distinct components of `Y_x`, each of the expected dimension
/// `(n + delta)/2 - 2`, fit under `dim Y^l + dim Y^p <= n - 2`.
///
/// For `delta >= 3` they never do, which is why `Y_x` is irreducible there.
pub fn equidimensional_components_fit(n: u32, delta: u32) -> bool {
    let each = i64::from(n + delta) / 2 - 2;
    2 * each <= i64::from(n) - 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_x_examples() {
        assert_eq!(r_x(8), Ok(3));
        assert_eq!(r_x(3), Ok(1));
        assert_eq!(r_x(6), Ok(2));
        assert_eq!(r_x(1), Ok(0));
        assert!(r_x(0).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(derived_invariants(10, 6).unwrap().index, Some(8));
        assert_eq!(derived_invariants(16, 8).unwrap().index, Some(12));
        let segre = derived_invariants(3, 2).unwrap();
        assert_eq!(segre.conic_degree, Some(5));
        assert_eq!(segre.index, None);
        assert_eq!(segre.line_splitting, None);
    }

    #[test]
    fn odd_sum_has_no_index() {
        let inv = derived_invariants(8, 3).unwrap();
        assert_eq!(inv.index, None);
        assert_eq!(inv.yx, None);
        assert_eq!(inv.r_x, Some(1));
    }

    #[test]
    fn spinor_line_data() {
        let inv = derived_invariants(10, 6).unwrap();
        let s = inv.line_splitting.unwrap();
        assert_eq!((s.ones, s.zeros), (6, 3));
        assert_eq!(s.rank(), 10);
        assert_eq!(s.degree(), 8);
        assert_eq!(inv.line_family_dim, Some(15));
        assert_eq!(inv.yx, Some((6, 4)));
        assert_eq!(inv.conic_family_dim, Some(23));
        assert_eq!(inv.conics_through_point, Some(14));
        assert_eq!(inv.tangential_image_dim, 4);
        assert_eq!(inv.secant_dim, 15);
    }

    #[test]
    fn input_errors() {
        assert!(derived_invariants(3, 4).is_err());
        assert!(derived_invariants(0, 0).is_err());
        let zero = derived_invariants(1, 0).unwrap();
        assert_eq!(zero.conic_degree, None);
        assert_eq!(zero.r_x, None);
    }

    #[test]
    fn component_inequality() {
        // Segre: P^(l-1) + P^(m-1) fits exactly
        assert!(equidimensional_components_fit(3, 2));
        assert!(equidimensional_components_fit(4, 2));
        assert!(!equidimensional_components_fit(6, 4));
        assert!(!equidimensional_components_fit(10, 6));
        assert!(!equidimensional_components_fit(5, 3));
    }
}

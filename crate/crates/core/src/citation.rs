//! Named rules from the theory of LQEL-manifolds.
//!
//! Every rule applied by the engines is identified by a stable anchor and a
//! one-line formula. Reports carry these so a reader can see which relation
//! produced or rejected a number.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Citation {
    pub anchor: &'static str,
    pub statement: &'static str,
}

macro_rules! citations {
    ($($name:ident = $anchor:literal : $statement:literal;)*) => {
        $(pub const $name: Citation = Citation { anchor: $anchor, statement: $statement };)*

        /// Every registered citation, in declaration order.
        pub const ALL: &[Citation] = &[$($name),*];
    };
}

citations! {
    SECANT_DEFECT = "secant-defect": "delta = 2n + 1 - dim SX";
    SECANT_BOUND = "secant-bound": "n + 1 <= dim SX <= min(N, 2n + 1) for non-linear X";
    TERRACINI = "terracini": "T_p SX = <T_x X, T_y X> for general x, y and p on the line xy";
    OSCULATING_RANK = "osculating-rank": "dim |II_x| = dim T^(2)_x X - n - 1 (second osculating span)";
    QUADRIC_SPACE = "quadric-space": "h0(I_X(2)) = dim ker of the degree-2 monomial evaluation at general points of X";
    SECOND_FORM = "second-fundamental-form": "dim |II_x| = N - n - 1 when delta >= 1";
    AMBIENT_BOUND = "ambient-bound": "N <= n(n + 3)/2 when delta >= 1";
    CONIC_DEGREE = "conic-degree": "-K_X . C = n + delta for a general conic C through two general points";
    CONIC_FAMILY = "conic-family": "conics through two general points sweep a family of dimension 2n + delta - 3";
    CONICS_THROUGH_POINT = "conics-through-point": "conics through a general point form a family of dimension n + delta - 2";
    TANGENTIAL_IMAGE = "tangential-image": "dim W_x = n - delta, W_x the image of the tangential projection";
    FANO_INDEX = "fano-index": "i(X) = (n + delta)/2 when delta >= 3";
    PARITY = "parity": "n = delta (mod 2) when delta >= 3";
    LINE_SPLITTING = "line-splitting": "TX|L = O(2) + O(1)^((n+delta)/2 - 2) + O^((n-delta)/2 + 1), lines of dimension (3n+delta)/2 - 3";
    YX_MODEL = "yx-model": "delta >= 3: Y_x in P^(n-1) is QEL of dimension (n + delta)/2 - 2, type delta - 2, SY_x = P^(n-1)";
    YX_COMPONENTS = "yx-components": "distinct components of Y_x satisfy dim Y^l + dim Y^p <= n - 2";
    R_X = "r-x": "r_X = max{ r : delta >= 2r + 1 } = floor((delta - 1)/2)";
    TOWER = "tower": "dim X^k = (n + (2^k - 1) delta)/2^k - 2k, type delta - 2k, codim X^k = (n - delta)/2^k + 1";
    DIVISIBILITY = "divisibility": "2^(r_X) divides n - delta when delta >= 3";
    QUADRIC_HYPERSURFACE = "quadric-hypersurface": "delta = n iff N = n + 1 and X is a quadric hypersurface";
    HYPERPLANE_SECTION = "hyperplane-section": "a general hyperplane section of type delta >= 1 has invariants (n - 1, delta - 1)";
    DEFECT_N_MINUS_ONE = "defect-n-minus-one": "delta = n - 1 >= 1 forces delta <= 2, so n in {2, 3} and N <= 5";
    HIGH_DEFECT = "high-defect": "n/2 < delta < n with delta >= 3 forces n = delta + m 2^(r_X), m >= 1, delta > m 2^(r_X)";
    HALF_DEFECT = "half-defect": "delta = n/2 >= 3 forces 2^(r_X) | n/2, hence n = 4(r_X + 1) = m 2^(r_X + 1)";
    HARTSHORNE = "hartshorne-threshold": "3n/4 - 2 > 2(n - 1)/3 iff n > 16";
    SEGRE = "segre-defect": "P^l x P^m in P^(lm+l+m) is QEL of type 2, Y_x = P^(l-1) + P^(m-1)";
    VERONESE = "veronese-defect": "nu_2(P^k) in P^(k(k+3)/2) is QEL of type 1";
    GRASSMANN = "grassmann-defect": "G(1,r) in P^(C(r+1,2)-1) is QEL of type 4, Y_x = P^1 x P^(r-2)";
    SPINOR = "spinor-s10": "S^10 in P^15: delta = 6, index 8, cut out by 10 quadrics, Y_x = G(1,4) in P^9";
    G14_QUADRICS = "g14-quadrics": "Y_x(S^10) = G(1,4) in P^9 is cut out by codim = 5 quadrics";
    E6 = "e6-variety": "E6 in P^26: n = 16, delta = 8, index 12, Y_x = S^10, center of a (2,2) special Cremona";
    DETERMINANTAL = "determinantal-quadrics": "2x2 minors (Segre), Pluecker relations (Grassmann) and catalecticant minors (Veronese) span h0(I_X(2))";
    CREMONA_TYPE = "cremona-type-2d": "center of a special (2,d) Cremona: delta = (n + 2)/d - 1, SX hypersurface of degree 2d - 1, N = 2n + 2 - delta";
    CREMONA_EVEN = "cremona-even": "(2,d) center with delta >= 3: delta, n and d are even";
    CREMONA_DELTA_TWO = "cremona-delta-two": "(2,d) center with delta = 2: n = 3d - 2 is even";
    CREMONA_DELTA_ONE = "cremona-delta-one": "no special (2,d) Cremona with d >= 3 has a center of type delta = 1";
    CREMONA_ODD = "cremona-odd": "odd d >= 3: N = 2d - 2, n = d - 2, delta = 0";
    CREMONA_FANO = "cremona-fano": "even d >= 4: delta = 0, or a Fano center of even type with index ((n - 1)(d + 1) + 3)/(2d)";
    CREMONA_EVEN_BOUND = "cremona-even-bound": "even d, delta = 2 r_X + 2: 2^(r_X) divides d(2 r_X + 3) - 2";
    CREMONA_2N_PLUS_1 = "cremona-2n-plus-1": "N = 2n + 1 forces 2 + n = d2((2 - d1) n + 2)";
    COMPUTED = "COMPUTED": "value computed by the engine";
}

pub fn by_anchor(anchor: &str) -> Option<Citation> {
    ALL.iter().copied().find(|c| c.anchor == anchor)
}

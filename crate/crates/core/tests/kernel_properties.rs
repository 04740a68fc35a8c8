use proptest::prelude::*;
use qel_core::field::{FieldScalar, PrimeField};
use qel_core::matrix::ExactMatrix;
use qel_core::poly::{PolynomialMap, SparsePolynomial};

const SMALL: u64 = 101;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn build(field: PrimeField, rows: &[Vec<i64>]) -> ExactMatrix {
    let rows: Vec<Vec<FieldScalar>> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
    ExactMatrix::from_rows(field, &rows)
}

fn poly(vars: usize) -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec((-50i64..50, prop::collection::vec(0u32..4, vars)), 0..6)
        .prop_map(move |terms| SparsePolynomial::from_terms(vars, terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rank_of_product_is_bounded(a in matrix(4, 5), b in matrix(5, 3)) {
        let f = PrimeField::new(SMALL).unwrap();
        let (a, b) = (build(f, &a), build(f, &b));
        prop_assert!(a.mul(&b).rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn rank_equals_transpose_rank(a in matrix(5, 7)) {
        let f = PrimeField::new(SMALL).unwrap();
        let a = build(f, &a);
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn kernel_is_complementary(a in matrix(4, 7)) {
        let f = PrimeField::new(SMALL).unwrap();
        let a = build(f, &a);
        let ker = a.kernel_basis();
        prop_assert_eq!(ker.len() + a.rank(), a.cols());
        for v in &ker {
            prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let k = ExactMatrix::from_rows(f, &ker);
        prop_assert_eq!(k.rank(), ker.len());
    }

    /// Symbolic partials against the exact finite difference
    /// `p(x + e_i) - p(x - e_i)` of a polynomial of degree < 4 per variable,
    /// read off by interpolation along the line.
    #[test]
    fn derivative_matches_line_interpolation(p in poly(3), x in prop::collection::vec(0u64..1000, 3), i in 0usize..3) {
        let f = PrimeField::default();
        let pt: Vec<FieldScalar> = x.iter().map(|&v| f.from_u64(v)).collect();
        // g(t) = p(x + t e_i) has degree <= 3 in t here; recover g'(0) from
        // g(-2), g(-1), g(1), g(2)
        let at = |t: i64| {
            let mut q = pt.clone();
            q[i] = f.add(q[i], f.from_i64(t));
            p.eval(f, &q).unwrap()
        };
        let num = f.sub(
            f.mul(f.from_i64(8), f.sub(at(1), at(-1))),
            f.sub(at(2), at(-2)),
        );
        let interp = f.mul(num, f.inv(f.from_i64(12)).unwrap());
        prop_assert_eq!(p.derivative(i).unwrap().eval(f, &pt).unwrap(), interp);
    }

    #[test]
    fn modular_eval_reduces_integer_eval(p in poly(3), x in prop::collection::vec(-20i64..20, 3)) {
        let f = PrimeField::new(SMALL).unwrap();
        let pt: Vec<FieldScalar> = x.iter().map(|&v| f.from_i64(v)).collect();
        let exact = p.eval_integer(&x).unwrap().unwrap();
        prop_assert_eq!(p.eval(f, &pt).unwrap(), f.from_i128(exact));
    }

    #[test]
    fn map_jet_agrees_with_componentwise_derivatives(p in poly(2), q in poly(2), x in prop::collection::vec(0u64..1000, 2)) {
        let f = PrimeField::default();
        let pt: Vec<FieldScalar> = x.iter().map(|&v| f.from_u64(v)).collect();
        let map = PolynomialMap::new(2, vec![p.clone(), q.clone()]).unwrap();
        let jet = map.differentiate(2).unwrap().jet(f, &pt).unwrap();
        for (k, c) in [&p, &q].into_iter().enumerate() {
            for i in 0..2 {
                prop_assert_eq!(jet.first[k][i], c.derivative(i).unwrap().eval(f, &pt).unwrap());
                for j in 0..2 {
                    let dij = c.derivative(i).unwrap().derivative(j).unwrap();
                    prop_assert_eq!(jet.second[k][i][j], dij.eval(f, &pt).unwrap());
                }
            }
        }
    }
}

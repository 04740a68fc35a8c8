use proptest::prelude::*;
use qel_core::catalog::{build_model, Catalog, Family, VarietyModel};
use qel_core::probe::{
    osculating_dim, quadric_containment_failures, quadric_space, quadric_space_dim, sample_point, secant_dim,
    second_form_dim, terracini_rank, variety_dim, ProbeConfig,
};
use qel_core::yx::yx_dim_estimate;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn parametrized() -> Vec<VarietyModel> {
    Catalog::standard().entries().iter().filter(|m| m.map.is_some()).cloned().collect()
}

#[test]
fn terracini_rank_is_symmetric() {
    let field = ProbeConfig::default().field().unwrap();
    for m in parametrized() {
        let map = m.map().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let x = sample_point(map, field, &mut rng).unwrap().unwrap();
            let y = sample_point(map, field, &mut rng).unwrap().unwrap();
            assert_eq!(terracini_rank(map, field, &x, &y), terracini_rank(map, field, &y, &x), "{}", m.name);
        }
    }
}

#[test]
fn ranks_are_stable_across_seeds() {
    for m in parametrized() {
        let runs: Vec<_> = (0..5u64)
            .map(|s| {
                let cfg = ProbeConfig::with_seed(1000 + 17 * s);
                (
                    variety_dim(&m, &cfg).unwrap(),
                    secant_dim(&m, &cfg).unwrap(),
                    osculating_dim(&m, &cfg).unwrap(),
                    quadric_space_dim(&m, &cfg).unwrap(),
                )
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{}: {runs:?}", m.name);
    }
}

#[test]
fn second_form_fills_the_normal_space() {
    let cfg = ProbeConfig::with_seed(5);
    for m in parametrized() {
        let n = i64::from(variety_dim(&m, &cfg).unwrap());
        let s = i64::from(secant_dim(&m, &cfg).unwrap());
        let ambient = m.output_count().unwrap() as i64 - 1;
        if 2 * n + 1 - s >= 1 {
            assert_eq!(second_form_dim(&m, &cfg).unwrap(), ambient - n - 1, "{}", m.name);
        }
    }
}

#[test]
fn secant_dimension_bounds() {
    let cfg = ProbeConfig::with_seed(6);
    for m in parametrized() {
        let n = variety_dim(&m, &cfg).unwrap();
        let s = secant_dim(&m, &cfg).unwrap();
        let ambient = m.output_count().unwrap() as u32 - 1;
        assert!(s > n, "{}", m.name);
        assert!(s <= ambient.min(2 * n + 1), "{}", m.name);
    }
}

#[test]
fn quadrics_vanish_at_fresh_points() {
    for m in parametrized() {
        let cfg = ProbeConfig::with_seed(8);
        let qs = quadric_space(&m, &cfg).unwrap();
        let fresh = ProbeConfig::with_seed(8_000_000);
        assert_eq!(quadric_containment_failures(&m, &qs, &fresh, 50).unwrap(), 0, "{}", m.name);
    }
}

#[test]
fn yx_estimates_near_expected_dimension() {
    for (family, expected) in [(Family::Segre(1, 2), 1.0), (Family::GrassmannLines(4), 3.0), (Family::Quadric(3), 1.0)]
    {
        let m = build_model(family).unwrap();
        let e = yx_dim_estimate(&m, &ProbeConfig::with_seed(3), &[3, 5, 7]).unwrap();
        assert!(e.heuristic);
        assert!((e.estimate - expected).abs() <= 0.5, "{}: {e:?}", m.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn segre_defect_is_two(l in 1u32..4, m in 1u32..4, seed in any::<u64>()) {
        let model = build_model(Family::Segre(l, m)).unwrap();
        let cfg = ProbeConfig::with_seed(seed);
        let n = variety_dim(&model, &cfg).unwrap();
        prop_assert_eq!(n, l + m);
        prop_assert_eq!(2 * n + 1 - secant_dim(&model, &cfg).unwrap(), 2);
    }

    #[test]
    fn quadric_defect_is_full(n in 1u32..10, seed in any::<u64>()) {
        let model = build_model(Family::Quadric(n)).unwrap();
        let cfg = ProbeConfig::with_seed(seed);
        prop_assert_eq!(secant_dim(&model, &cfg).unwrap(), n + 1);
        prop_assert_eq!(quadric_space_dim(&model, &cfg).unwrap(), 1);
    }
}

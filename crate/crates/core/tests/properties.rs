use hyperhaar::family::{self, FamilySpec};
use hyperhaar::format::{parse_hypergroup, serialize_hypergroup};
use hyperhaar::haar::ApproximantConfig;
use hyperhaar::{compare_methods, FiniteHypergroup, Measure, PointFunction};
use proptest::prelude::*;

fn small_family() -> impl Strategy<Value = FamilySpec> {
    let leaf = prop_oneof![
        (1usize..9).prop_map(FamilySpec::Cyclic),
        (0.01f64..=1.0).prop_map(FamilySpec::Theta2),
        (2usize..12).prop_map(FamilySpec::CosineGrid),
    ];
    prop_oneof![
        3 => leaf.clone(),
        1 => (leaf.clone(), leaf).prop_map(|(a, b)| FamilySpec::product(a, b)),
    ]
}

fn hypergroup_with<T: Strategy>(
    f: impl Fn(usize) -> T + Clone,
) -> impl Strategy<Value = (FiniteHypergroup, T::Value)> {
    small_family().prop_flat_map(move |spec| {
        let h = spec.build().unwrap();
        let n = h.n();
        (Just(h), f(n))
    })
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, n)
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_round_trips_bit_for_bit(spec in small_family()) {
        let h = spec.build().unwrap();
        let doc = serialize_hypergroup(&h);
        let back = parse_hypergroup(&doc).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(serialize_hypergroup(&back), doc);
    }

    #[test]
    fn generated_families_validate(spec in small_family()) {
        let report = spec.build().unwrap().validate();
        prop_assert!(report.passed(), "{}\n{}", spec, report);
    }

    #[test]
    fn spec_strings_parse_back(spec in small_family()) {
        let again: FamilySpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(again.build().unwrap(), spec.build().unwrap());
    }

    #[test]
    fn convolution_preserves_probability((h, (a, b)) in hypergroup_with(|n| (weights(n), weights(n)))) {
        prop_assume!(a.iter().sum::<f64>() > 1e-3 && b.iter().sum::<f64>() > 1e-3);
        let mu = Measure::new(a);
        let mu = mu.scale(1.0 / mu.total());
        let nu = Measure::new(b);
        let nu = nu.scale(1.0 / nu.total());
        let prod = h.convolve_measures(&mu, &nu).unwrap();
        prop_assert!(prod.is_nonnegative());
        prop_assert!((prod.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn involution_reverses_products((h, (a, b)) in hypergroup_with(|n| (weights(n), weights(n)))) {
        let (mu, nu) = (Measure::new(a), Measure::new(b));
        let lhs = h.involute_measure(&h.convolve_measures(&mu, &nu).unwrap()).unwrap();
        let rhs = h
            .convolve_measures(&h.involute_measure(&nu).unwrap(), &h.involute_measure(&mu).unwrap())
            .unwrap();
        prop_assert!(close(lhs.weights(), rhs.weights(), 1e-12));
    }

    #[test]
    fn identity_is_a_unit((h, a) in hypergroup_with(weights)) {
        let mu = Measure::new(a);
        let e = h.dirac(h.identity());
        prop_assert!(close(h.convolve_measures(&e, &mu).unwrap().weights(), mu.weights(), 1e-15));
        prop_assert!(close(h.convolve_measures(&mu, &e).unwrap().weights(), mu.weights(), 1e-15));
    }

    #[test]
    fn translating_by_identity_is_trivial((h, v) in hypergroup_with(weights)) {
        let f = PointFunction::new(v);
        let moved = h.translate(h.identity(), &f).unwrap();
        prop_assert!(close(moved.values(), f.values(), 1e-15));
    }

    #[test]
    fn methods_agree_on_random_instances(spec in small_family()) {
        let h = spec.build().unwrap();
        let cfg = ApproximantConfig::standard(&h).unwrap();
        let cmp = compare_methods(&h, &cfg, 1e-10).unwrap();
        prop_assert!(cmp.agree, "{}: {:?}", spec, cmp.pairs);
    }
}

#[test]
fn two_point_haar_matches_closed_form() {
    for theta in [0.01, 0.25, 0.5, 0.75, 1.0] {
        let h = family::theta2(theta).unwrap();
        let chi = hyperhaar::jewett_haar(&h).unwrap();
        let total = chi.total();
        assert!((chi.weight(0) / total - theta / (1.0 + theta)).abs() < 1e-14);
    }
}

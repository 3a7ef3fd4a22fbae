mod common;

use dtour::constructions::{product_tournament, random_tournament, ProductSpec};
use dtour::counting::{
    asymptotic_upper_fraction, closed_form_constants, count_directed, count_directed_with, exact_upper_bound,
    half_degrees, induced_split, pair_census, pair_count_upper, product_distinct_fraction, s_of_d,
    sample_directed_fraction, sample_directed_fraction_with, total_compatible_pairs, DEFAULT_BUDGET,
};
use dtour::{Error, Exec, KSubset, Seed};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

#[test]
fn census_matches_definition() {
    for d in 2..=4 {
        for n in d + 1..=9 {
            let t = random_tournament(d, n, Seed(n as u64 * 31 + d as u64)).unwrap();
            let c = count_directed(&t).unwrap();
            assert_eq!(c.directed, BigUint::from(common::brute_census(&t)), "d={d} n={n}");
            assert_eq!(c.total, BigUint::from(common::subsets(n as u32, d + 1).len()));
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let t = random_tournament(3, 30, Seed(5)).unwrap();
    let a = count_directed_with(&t, Exec::Sequential, DEFAULT_BUDGET).unwrap();
    let b = count_directed_with(&t, Exec::Parallel, DEFAULT_BUDGET).unwrap();
    assert_eq!(a, b);
    let s = sample_directed_fraction_with(&t, 20_000, Seed(9), Exec::Sequential).unwrap();
    let p = sample_directed_fraction_with(&t, 20_000, Seed(9), Exec::Parallel).unwrap();
    assert_eq!(s, p);
}

#[test]
fn budget_is_enforced() {
    let t = random_tournament(3, 40, Seed(1)).unwrap();
    match count_directed_with(&t, Exec::Sequential, 1000) {
        Err(Error::Budget { required, budget }) => {
            assert_eq!(budget, 1000);
            assert!(required > 1000);
        }
        other => panic!("expected budget error, got {other:?}"),
    }
}

#[test]
fn sampling_tracks_exact_census() {
    for (d, n, seed) in [(2, 16, 1u64), (3, 12, 2), (3, 16, 3), (4, 14, 4)] {
        let t = random_tournament(d, n, Seed(seed)).unwrap();
        let exact = count_directed(&t).unwrap().fraction_f64();
        let est = sample_directed_fraction(&t, 50_000, Seed(seed + 100)).unwrap();
        let se = (exact * (1.0 - exact) / 50_000f64).sqrt();
        assert!((est.estimate_f64() - exact).abs() <= 4.0 * se, "d={d} n={n}: {} vs {exact}", est.estimate_f64());
    }
}

#[test]
fn sampling_product_d3_m4() {
    let t = product_tournament(&ProductSpec::new(3, 4)).unwrap();
    let exact = count_directed(&t).unwrap();
    assert_eq!(exact.fraction(), product_distinct_fraction(3, 4));
    let p = exact.fraction_f64();
    let est = sample_directed_fraction(&t, 1_000_000, Seed(42)).unwrap();
    let se = (p * (1.0 - p) / 1e6).sqrt();
    assert!((est.estimate_f64() - p).abs() <= 4.0 * se, "{} vs {p}", est.estimate_f64());
    assert!(est.standard_error() > 0.0);
}

#[test]
fn sample_is_reproducible() {
    let t = random_tournament(2, 20, Seed(3)).unwrap();
    let a = sample_directed_fraction(&t, 10_000, Seed(11)).unwrap();
    let b = sample_directed_fraction(&t, 10_000, Seed(11)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.seed, Seed(11));
}

#[test]
fn half_degrees_and_split() {
    let t = random_tournament(3, 9, Seed(8)).unwrap();
    for a in common::subsets(9, 2) {
        let ks = KSubset::new(a.clone()).unwrap();
        let h = half_degrees(&t, &ks).unwrap();
        assert_eq!(h.h_plus + h.h_minus, 9 - 2);
        let (p, q) = induced_split(&t, &ks).unwrap();
        assert_eq!(p + q, 9 - 2);
    }
}

#[test]
fn sandwich_on_small_tournaments() {
    for d in 2..=4 {
        for n in d + 1..=11 {
            let t = random_tournament(d, n, Seed(77 + n as u64)).unwrap();
            let pc = pair_census(&t, Exec::Parallel, DEFAULT_BUDGET).unwrap();
            assert_eq!(pc.pairs_over_simplices, pc.pairs_through_common);
            let total = total_compatible_pairs(&t).unwrap();
            assert_eq!(total, BigUint::from(pc.pairs_through_common));
            let x = pc.directed as u128;
            let lower = (d * (d + 1) / 2) as u128 * x + s_of_d(d) as u128 * (t.num_simplices() as u128 - x);
            assert!(lower <= pc.pairs_through_common);
            assert!(BigUint::from(pc.pairs_through_common) <= pair_count_upper(d, n));
            assert!(BigUint::from(pc.directed) <= exact_upper_bound(d, n).unwrap());
        }
    }
}

#[test]
fn bound_report_constants() {
    let r = closed_form_constants(3, 10).unwrap();
    assert_eq!(r.s_d, 2);
    assert_eq!(r.random_lower_fraction, BigRational::new(1.into(), 8.into()));
    assert_eq!(r.product_limit_fraction, BigRational::new(1.into(), 7.into()));
    assert_eq!(r.asymptotic_upper_fraction, BigRational::new(1.into(), 4.into()));
    assert_eq!(asymptotic_upper_fraction(2), BigRational::new(1.into(), 4.into()));
    assert_eq!(asymptotic_upper_fraction(4), BigRational::new(1.into(), 6.into()));
    for d in 2..=6 {
        let r = closed_form_constants(d, 3 * d).unwrap();
        assert!(r.random_lower_fraction <= r.product_limit_fraction);
        assert!(r.product_limit_fraction <= r.asymptotic_upper_fraction);
        assert!(r.exact_upper <= r.total_simplices);
    }
}

#[test]
fn exact_bound_approaches_asymptote() {
    for d in 2..=5 {
        let n = 400;
        let b = exact_upper_bound(d, n).unwrap();
        let total = dtour::binom::binomial_big(n as u64, d as u64 + 1);
        let frac = BigRational::new(b.into(), total.into()).to_f64().unwrap();
        let lim = asymptotic_upper_fraction(d).to_f64().unwrap();
        assert!((frac - lim).abs() < 0.02, "d={d}: {frac} vs {lim}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn census_never_exceeds_bound(d in 2usize..=4, extra in 1usize..10, seed in any::<u64>()) {
        let n = d + extra;
        let t = random_tournament(d, n, Seed(seed)).unwrap();
        let c = count_directed(&t).unwrap();
        prop_assert!(c.directed <= exact_upper_bound(d, n).unwrap());
        prop_assert_eq!(count_directed(&t.flipped()).unwrap(), c);
    }
}

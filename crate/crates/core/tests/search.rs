mod common;

use dtour::counting::{count_directed, exact_upper_bound};
use dtour::search::{load_checkpoint, search_max_directed, Search, SearchSpec, Strategy};
use dtour::{Exec, TournamentBuilder};
use num_bigint::BigUint;

/// Maximum census over every tournament, by brute force over all sign vectors.
fn brute_max(d: usize, n: usize) -> u64 {
    let bits = common::subsets(n as u32, d).len();
    (0..1u64 << bits)
        .map(|mask| {
            let mut b = TournamentBuilder::new(d, n).unwrap();
            for r in 0..bits as u64 {
                b.set_bit(r, mask >> r & 1 == 1);
            }
            common::brute_census(&b.seal())
        })
        .max()
        .unwrap()
}

#[test]
fn matches_brute_force_maximum() {
    for (d, n) in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5)] {
        let expected = brute_max(d, n);
        for strategy in [Strategy::Exhaustive, Strategy::BranchAndBound] {
            let o = search_max_directed(&SearchSpec::new(d, n, strategy)).unwrap();
            assert!(o.complete);
            assert_eq!(o.max_count, expected, "d={d} n={n} {strategy:?}");
        }
    }
}

#[test]
fn d2_maxima() {
    for (n, expected) in [(4, 2), (5, 5), (6, 8), (7, 14)] {
        let o = search_max_directed(&SearchSpec::new(2, n, Strategy::BranchAndBound)).unwrap();
        assert_eq!(o.max_count, expected, "n={n}");
        let w = o.witness.unwrap();
        assert_eq!(count_directed(&w).unwrap().directed, BigUint::from(expected));
    }
}

#[test]
fn d3_strategies_agree() {
    for n in [5, 6] {
        let ex = search_max_directed(&SearchSpec::new(3, n, Strategy::Exhaustive)).unwrap();
        let bb = search_max_directed(&SearchSpec::new(3, n, Strategy::BranchAndBound)).unwrap();
        assert_eq!(ex.max_count, bb.max_count);
        assert_eq!(ex.best_assignment, bb.best_assignment);
        assert!(bb.assignments_explored <= ex.assignments_explored);
        assert!(BigUint::from(ex.max_count) <= exact_upper_bound(3, n).unwrap());
        let w = bb.witness.unwrap();
        assert_eq!(count_directed(&w).unwrap().directed, BigUint::from(bb.max_count));
    }
}

#[test]
fn sequential_fallback_is_identical() {
    for strategy in [Strategy::Exhaustive, Strategy::BranchAndBound] {
        let spec = SearchSpec::new(2, 6, strategy);
        let s = Search::new(spec.clone()).unwrap().exec(Exec::Sequential).run().unwrap();
        let p = Search::new(spec).unwrap().exec(Exec::Parallel).run().unwrap();
        assert_eq!(s.max_count, p.max_count);
        assert_eq!(s.best_assignment, p.best_assignment);
        if strategy == Strategy::Exhaustive {
            assert_eq!(s.assignments_explored, p.assignments_explored);
        }
    }
}

#[test]
fn interrupted_search_resumes_to_same_answer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.hots");
    let mut spec = SearchSpec::new(3, 5, Strategy::BranchAndBound);
    spec.prefix_bits = 5;
    spec.checkpoint_interval = 1;
    let partial = Search::new(spec.clone()).unwrap().checkpoint(&path).stop_after_shards(7).run().unwrap();
    assert!(!partial.complete);
    assert_eq!(load_checkpoint(&path).unwrap().shards_done(), 7);
    let resumed = Search::resume(&path).unwrap().run().unwrap();
    let direct = search_max_directed(&spec).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.max_count, direct.max_count);
    assert_eq!(resumed.best_assignment, direct.best_assignment);
}

#[test]
fn oversized_search_is_rejected() {
    assert!(search_max_directed(&SearchSpec::new(2, 11, Strategy::Exhaustive)).is_err());
}

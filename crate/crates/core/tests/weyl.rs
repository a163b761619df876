use critlab_core::weyl::{claim_suite, reflection_length_bfs};
use critlab_core::{IntWeight, Perm, WeylElem};
use proptest::prelude::*;

#[test]
fn claims_exhaustive_on_small_groups() {
    let mut pairs = 0;
    for n in [3, 4] {
        let report = claim_suite(n).unwrap();
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(report.bruhat_pairs, (1..=n).product::<usize>().pow(2));
        pairs += report.pairs_checked();
    }
    assert!(pairs >= 744, "{pairs}");
}

#[test]
fn carter_identity_on_s5() {
    let report = claim_suite(5).unwrap();
    assert_eq!(report.elements, 120);
    assert!(report.carter && report.reflection_vs_coxeter);
}

#[test]
fn reflection_length_by_search_matches_cycles() {
    for n in 1..=5 {
        for (p, d) in reflection_length_bfs(n) {
            assert_eq!(d, n - p.cycle_count(), "{p}");
        }
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn dot_action_composes(
        u in proptest::collection::vec(perm_strategy(4), 2),
        v in proptest::collection::vec(perm_strategy(4), 2),
        lam in proptest::collection::vec(-20i64..20, 8),
    ) {
        let u = WeylElem::new(u).unwrap();
        let v = WeylElem::new(v).unwrap();
        let lam = IntWeight(vec![lam[..4].to_vec(), lam[4..].to_vec()]);
        let nested = u.dot_action(&v.dot_action(&lam).unwrap()).unwrap();
        prop_assert_eq!(nested, u.mul(&v).unwrap().dot_action(&lam).unwrap());
    }

    #[test]
    fn reflection_length_bounded_by_coxeter_length(p in perm_strategy(5)) {
        let w = WeylElem::single(p);
        let equal = w.reflection_length() == w.coxeter_length();
        prop_assert!(w.reflection_length() <= w.coxeter_length());
        prop_assert_eq!(equal, w.is_product_of_distinct_simples().unwrap());
    }
}

//! Dataset labels against brute-force subgroup oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplegrp::dataset::{enumerate_labeled, label_pair, PairFilter};
use simplegrp::{GeneratedGroup, Permutation};

/// Every element of `⟨gens⟩` by breadth-first closure over `compose`.
fn closure(gens: &[Permutation]) -> Vec<Permutation> {
    let n = gens[0].degree();
    let mut elems = vec![Permutation::identity(n).unwrap()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let x = elems[i].compose(g).unwrap();
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        i += 1;
    }
    elems
}

/// Simplicity by listing every subgroup `⟨x, y⟩` with `x, y ∈ G` and testing
/// normality. Complete for subgroups of `S_4`, all of which are 2-generated.
fn simple_by_subgroup_enumeration(gens: &[Permutation]) -> bool {
    let g = closure(gens);
    if g.len() == 1 {
        return false;
    }
    for x in &g {
        for y in &g {
            let h = closure(&[*x, *y]);
            if h.len() == 1 || h.len() == g.len() {
                continue;
            }
            let normal = g.iter().all(|s| {
                h.iter()
                    .all(|k| h.contains(&s.inverse().compose(k).unwrap().compose(s).unwrap()))
            });
            if normal {
                return false;
            }
        }
    }
    true
}

#[test]
fn every_s4_pair_agrees_with_subgroup_enumeration() {
    for e in enumerate_labeled(4, PairFilter::Distinct).unwrap() {
        let gens = e.generators().unwrap();
        assert_eq!(
            e.simple,
            simple_by_subgroup_enumeration(&gens),
            "({}, {})",
            e.r1,
            e.r2
        );
        assert_eq!(e.order, closure(&gens).len() as u64);
    }
}

#[test]
fn ten_thousand_degree_six_labels_agree_with_class_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let (r1, r2) = (rng.gen_range(0..720u64), rng.gen_range(0..720u64));
        let e = label_pair(6, r1, r2).unwrap();
        let g = GeneratedGroup::generate(&e.generators().unwrap()).unwrap();
        assert_eq!(e.simple, g.is_simple_by_classes(), "({r1}, {r2})");
        assert_eq!(e.order, g.order());
    }
}

/// An odd generator makes the even elements a subgroup of index 2, so the only
/// simple groups with one are cyclic of order 2.
#[test]
fn odd_generators_give_simple_labels_only_for_c2() {
    for e in enumerate_labeled(5, PairFilter::Distinct).unwrap() {
        let [p, q] = e.generators().unwrap();
        if p.sign() < 0 || q.sign() < 0 {
            assert!(!e.simple || e.order == 2, "({}, {})", e.r1, e.r2);
        }
    }
}

#[test]
fn full_simple_fractions() {
    let five = enumerate_labeled(5, PairFilter::Distinct).unwrap();
    let frac = five.iter().filter(|e| e.simple).count() as f64 / five.len() as f64;
    assert_eq!(format!("{frac:.4}"), "0.1758");
}

//! Homomorphism-order invariants across the circulant families: the
//! no-homomorphism independence-ratio bound, clique monotonicity, and the
//! chromatic characterisation of maps into complete graphs.

use pqcores::families::g_pr;
use pqcores::solvers::{
    clique_number, find_homomorphism, independence_number, HomSearch, SearchBudget, ValueResult,
};

fn exact(v: ValueResult) -> usize {
    match v {
        ValueResult::Exact { value, .. } => value,
        ValueResult::Indeterminate { .. } => panic!("unexpected budget exhaustion"),
    }
}

#[test]
fn no_homomorphism_bound_on_circulant_pairs() {
    let budget = SearchBudget::default();
    let mut instances = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        for r in (2..p).step_by(2).chain(std::iter::once(p - 1)) {
            if (p - 1) % r == 0 && (p == 2 || r % 2 == 0) {
                instances.push(g_pr(p, r).unwrap().0);
            }
        }
    }
    let mut found = 0;
    for g in &instances {
        for h in &instances {
            match find_homomorphism(g, h, &budget) {
                HomSearch::Found(hom) => {
                    hom.validate(g, h).unwrap();
                    // targets are vertex-transitive circulants, so the
                    // independence ratio cannot drop along a homomorphism
                    let ag = exact(independence_number(g, &budget));
                    let ah = exact(independence_number(h, &budget));
                    assert!(
                        ag * h.n() >= ah * g.n(),
                        "ratio violated: alpha {}/{} -> {}/{}",
                        ag,
                        g.n(),
                        ah,
                        h.n()
                    );
                    // cliques embed injectively
                    let wg = exact(clique_number(g, &budget));
                    let wh = exact(clique_number(h, &budget));
                    assert!(wg <= wh, "clique grew backwards: {wg} -> {wh}");
                    found += 1;
                }
                HomSearch::None => {}
                HomSearch::Indeterminate => panic!("budget exhausted on desk-scale pair"),
            }
        }
    }
    assert!(found > instances.len(), "expected plenty of homomorphic pairs");
}

#[test]
fn odd_prime_circulants_map_into_larger_complete_graphs() {
    let budget = SearchBudget::default();
    for (p, s) in [(3u64, 2u64), (5, 2), (5, 4), (7, 2), (7, 6)] {
        let (g, _, _) = g_pr(p, s).unwrap();
        for q in [7u64, 11, 13] {
            if q > p {
                let (kq, _, _) = g_pr(q, q - 1).unwrap();
                assert!(
                    matches!(find_homomorphism(&g, &kq, &budget), HomSearch::Found(_)),
                    "G({p},{s}) must colour with {q} colours"
                );
            }
        }
    }
}

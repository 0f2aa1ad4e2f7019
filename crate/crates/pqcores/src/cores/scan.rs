//! Retract scanning: enumerate candidate induced subgraphs order by order
//! and test each with a fibre-capped retraction search.
//!
//! In the vertex-transitive mode the scan leans on three facts: the core
//! order divides the graph order, every retract found at the first divisor
//! order admitting one is itself a core (hence vertex-transitive, connected
//! and regular), and all retractions onto a core of a vertex-transitive
//! graph have uniform fibres. Candidates are therefore connected regular
//! induced subgraphs, deduplicated up to the orbit equivalence of the
//! supplied generators.

use crate::families::GeneratorSet;
use crate::graph::{Bitset, Graph, Homomorphism};
use crate::perm::{canonical_subset, generate_group, point_orbit};
use crate::solvers::{find_retraction_capped, HomSearch, SearchBudget};
use std::collections::HashSet;
use std::time::Instant;

/// Largest graph the unfiltered all-subsets scan will touch.
pub(crate) const GENERIC_LIMIT: usize = 20;

const GROUP_CAP: usize = 20_000;

pub(crate) struct ScanOutcome {
    /// Found retract: the subset (ascending) and a retraction mapping host
    /// vertices to positions within the subset.
    pub retract: Option<(Vec<usize>, Homomorphism)>,
    /// True when any part of the scan ran out of budget, in which case a
    /// `None` retract is inconclusive.
    pub exhausted: bool,
}

pub(crate) fn scan_for_retract(
    g: &Graph,
    orders: &[usize],
    vt: bool,
    gens: Option<&GeneratorSet>,
    budget: &SearchBudget,
) -> ScanOutcome {
    let deadline = Instant::now() + budget.time_limit;
    let group = gens.and_then(|gs| generate_group(&gs.perms, g.n(), GROUP_CAP));
    let transitive = gens
        .map(|gs| point_orbit(&gs.perms, 0).len() == g.n())
        .unwrap_or(false);

    let mut exhausted = false;
    for &d in orders {
        if d < 1 || d >= g.n() {
            continue;
        }
        let cap = if vt && g.n() % d == 0 { Some(g.n() / d) } else { None };
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut found: Option<(Vec<usize>, Homomorphism)> = None;
        let mut visit = |subset: &[usize]| -> bool {
            if Instant::now() > deadline {
                exhausted = true;
                return false;
            }
            if vt && !is_regular_with_edges(g, subset) {
                return true;
            }
            if let Some(grp) = &group {
                let canon = canonical_subset(grp, subset);
                if !seen.insert(canon) {
                    return true;
                }
            }
            let remaining = deadline.saturating_duration_since(Instant::now());
            let sub_budget = SearchBudget::new(budget.node_limit, remaining);
            match find_retraction_capped(g, subset, cap, &sub_budget) {
                HomSearch::Found(h) => {
                    found = Some((subset.to_vec(), h));
                    false
                }
                HomSearch::None => true,
                HomSearch::Indeterminate => {
                    exhausted = true;
                    true
                }
            }
        };
        let completed = if vt {
            let roots: Vec<usize> = if transitive { vec![0] } else { (0..g.n()).collect() };
            for_each_connected_subset(g, d, &roots, &mut visit)
        } else {
            for_each_subset(g.n(), d, &mut visit)
        };
        if let Some(r) = found {
            return ScanOutcome { retract: Some(r), exhausted };
        }
        if !completed && Instant::now() > deadline {
            exhausted = true;
        }
        if exhausted {
            // cannot certify absence at this order, and later orders would
            // not be minimal anyway
            return ScanOutcome { retract: None, exhausted: true };
        }
    }
    ScanOutcome { retract: None, exhausted }
}

fn is_regular_with_edges(g: &Graph, subset: &[usize]) -> bool {
    let mut mask = Bitset::new(g.n());
    for &v in subset {
        mask.set(v);
    }
    let first = g.neighbors(subset[0]).intersection_count(&mask);
    first >= 1 && subset[1..].iter().all(|&v| g.neighbors(v).intersection_count(&mask) == first)
}

/// Enumerate every connected induced vertex set of the given size whose
/// minimum vertex is one of `roots`, each exactly once. The visitor returns
/// false to abort; the function reports whether it ran to completion.
pub(crate) fn for_each_connected_subset(
    g: &Graph,
    size: usize,
    roots: &[usize],
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if size == 0 {
        return true;
    }
    for &root in roots {
        let mut subset = vec![root];
        if size == 1 {
            if !visit(&subset) {
                return false;
            }
            continue;
        }
        let mut ext = Bitset::new(g.n());
        for u in g.neighbors(root).iter() {
            if u > root {
                ext.set(u);
            }
        }
        // closed = subset ∪ N(subset), used to keep extensions exclusive
        let mut closed = g.neighbors(root).clone();
        closed.set(root);
        if !extend_connected(g, size, root, &mut subset, ext, closed, visit) {
            return false;
        }
    }
    true
}

fn extend_connected(
    g: &Graph,
    size: usize,
    root: usize,
    subset: &mut Vec<usize>,
    ext: Bitset,
    closed: Bitset,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let mut remaining = ext.clone();
    for w in ext.iter() {
        remaining.clear(w);
        subset.push(w);
        if subset.len() == size {
            if !visit(subset) {
                subset.pop();
                return false;
            }
        } else {
            let mut next_ext = remaining.clone();
            let mut next_closed = closed.clone();
            for u in g.neighbors(w).iter() {
                if u > root && !closed.test(u) {
                    next_ext.set(u);
                }
                next_closed.set(u);
            }
            next_closed.set(w);
            if !extend_connected(g, size, root, subset, next_ext, next_closed, visit) {
                subset.pop();
                return false;
            }
        }
        subset.pop();
    }
    true
}

/// Plain combinations of the given size.
pub(crate) fn for_each_subset(
    n: usize,
    size: usize,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        acc: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if acc.len() == size {
            return visit(acc);
        }
        for v in start..n {
            if n - v < size - acc.len() {
                break;
            }
            acc.push(v);
            if !rec(n, size, v + 1, acc, visit) {
                acc.pop();
                return false;
            }
            acc.pop();
        }
        true
    }
    rec(n, size, 0, &mut Vec::new(), visit)
}

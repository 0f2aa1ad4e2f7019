//! Maximum clique by branch and bound over bitset candidate sets, with a
//! greedy-colouring upper bound at every node. All per-node scratch lives in
//! preallocated per-depth buffers. Two phases keep witnesses deterministic:
//! phase one establishes the clique number, phase two extracts the first
//! witness of that size under the canonical vertex order.

use super::{BudgetTracker, SearchBudget, ValueResult};
use crate::graph::{Bitset, Graph};

/// Exact maximum clique size with one witness clique.
pub fn clique_number(g: &Graph, budget: &SearchBudget) -> ValueResult {
    clique_number_jobs(g, budget, 1)
}

/// Root-parallel variant; the reported value and witness are identical to the
/// sequential ones (the witness is re-derived deterministically).
pub fn clique_number_jobs(g: &Graph, budget: &SearchBudget, jobs: usize) -> ValueResult {
    let n = g.n();
    if n == 0 {
        return ValueResult::Exact { value: 0, witness: vec![] };
    }
    // Static order: degree descending, index ascending; candidates are
    // explored in this order throughout.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let pos_of: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    // adjacency in the reordered index space
    let adj: Vec<Bitset> = order
        .iter()
        .map(|&v| {
            let mut b = Bitset::new(n);
            for w in g.neighbors(v).iter() {
                b.set(pos_of[w]);
            }
            b
        })
        .collect();

    let (best, exhausted, nodes) = if jobs > 1 && n >= 16 {
        parallel_max(&adj, n, budget, jobs)
    } else {
        let mut search = Search::new(&adj, budget.start());
        search.cand_mut(0).copy_from(&Bitset::full(n));
        search.expand(0, 0);
        (search.best, search.tracker.is_exhausted(), search.tracker.nodes())
    };

    if exhausted {
        // best is a valid lower bound; a whole-graph greedy colouring bounds
        // from above
        let mut scratch = Search::new(&adj, budget.start());
        let all = Bitset::full(n);
        let bound = scratch.colour_count(&all);
        let witness = extract_witness(&adj, &order, best);
        return ValueResult::Indeterminate {
            lower: best,
            upper: bound.max(best),
            witness: witness.unwrap_or_default(),
            nodes,
        };
    }

    let witness = extract_witness(&adj, &order, best).expect("witness of the exact size exists");
    ValueResult::Exact { value: best, witness }
}

/// Independence number as the clique number of the complement.
pub fn independence_number(g: &Graph, budget: &SearchBudget) -> ValueResult {
    clique_number(&g.complement(), budget)
}

/// Per-depth scratch: the candidate set entering the node and the
/// colour-sorted branching order.
struct Level {
    cand: Bitset,
    sorted: Vec<(u32, u32)>,
}

struct Search<'a> {
    adj: &'a [Bitset],
    n: usize,
    levels: Vec<Level>,
    classes: Vec<Bitset>,
    best: usize,
    tracker: BudgetTracker,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [Bitset], tracker: BudgetTracker) -> Search<'a> {
        let n = adj.len();
        let levels = (0..=n)
            .map(|_| Level { cand: Bitset::new(n), sorted: Vec::with_capacity(n) })
            .collect();
        Search { adj, n, levels, classes: Vec::new(), best: 1, tracker }
    }

    fn cand_mut(&mut self, depth: usize) -> &mut Bitset {
        &mut self.levels[depth].cand
    }

    /// Greedy colouring of `cand` in index order; fills `sorted` with
    /// (vertex, colour) ascending by colour, returns the colour count.
    fn colour_sort_into(&mut self, depth: usize) -> usize {
        let level = &mut self.levels[depth];
        level.sorted.clear();
        let mut used = 0usize;
        for v in level.cand.iter() {
            let mut c = 0;
            while c < used {
                if self.classes[c].is_disjoint(&self.adj[v]) {
                    break;
                }
                c += 1;
            }
            if c == used {
                if self.classes.len() == used {
                    self.classes.push(Bitset::new(self.n));
                }
                self.classes[used].clear_all();
                used += 1;
            }
            self.classes[c].set(v);
            level.sorted.push((v as u32, c as u32 + 1));
        }
        level.sorted.sort_unstable_by_key(|&(v, c)| (c, v));
        used
    }

    fn colour_count(&mut self, set: &Bitset) -> usize {
        self.levels[0].cand.copy_from(set);
        self.colour_sort_into(0)
    }

    /// Tomita-style expansion; the candidate set for this node must already
    /// sit in `levels[depth].cand`.
    fn expand(&mut self, depth: usize, size: usize) {
        if !self.tracker.tick() {
            return;
        }
        self.colour_sort_into(depth);
        for i in (0..self.levels[depth].sorted.len()).rev() {
            let (v, bound) = self.levels[depth].sorted[i];
            let (v, bound) = (v as usize, bound as usize);
            if size + bound <= self.best {
                return;
            }
            // next candidates: survivors at this node that are adjacent to v
            let (lo, hi) = split_levels(&mut self.levels, depth);
            hi.cand.copy_from(&lo.cand);
            hi.cand.intersect_with(&self.adj[v]);
            if hi.cand.is_empty() {
                if size + 1 > self.best {
                    self.best = size + 1;
                }
            } else {
                self.expand(depth + 1, size + 1);
            }
            self.levels[depth].cand.clear(v);
        }
    }
}

fn split_levels(levels: &mut [Level], depth: usize) -> (&mut Level, &mut Level) {
    let (a, b) = levels.split_at_mut(depth + 1);
    (&mut a[depth], &mut b[0])
}

fn parallel_max(adj: &[Bitset], n: usize, budget: &SearchBudget, jobs: usize) -> (usize, bool, u64) {
    use std::sync::atomic::{AtomicUsize, Ordering};
    let best = AtomicUsize::new(1);
    let next_root = AtomicUsize::new(0);
    let exhausted = AtomicUsize::new(0);
    let nodes = AtomicUsize::new(0);
    let deadline = std::time::Instant::now() + budget.time_limit;
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let r = next_root.fetch_add(1, Ordering::SeqCst);
                if r >= n {
                    break;
                }
                // root r: cliques containing vertex r but none before it
                let mut search = Search::new(adj, budget.start_with_deadline(deadline));
                search.best = best.load(Ordering::SeqCst);
                let cand = search.cand_mut(0);
                cand.copy_from(&adj[r]);
                for earlier in 0..r {
                    cand.clear(earlier);
                }
                if cand.is_empty() {
                    best.fetch_max(1, Ordering::SeqCst);
                } else {
                    search.expand(0, 1);
                    best.fetch_max(search.best, Ordering::SeqCst);
                }
                nodes.fetch_add(search.tracker.nodes() as usize, Ordering::SeqCst);
                if search.tracker.is_exhausted() {
                    exhausted.store(1, Ordering::SeqCst);
                    break;
                }
            });
        }
    });
    (
        best.load(Ordering::SeqCst),
        exhausted.load(Ordering::SeqCst) == 1,
        nodes.load(Ordering::SeqCst) as u64,
    )
}

/// First clique of exactly `size` in canonical order (indices ascending in
/// the reordered space, translated back to original vertex ids).
fn extract_witness(adj: &[Bitset], order: &[usize], size: usize) -> Option<Vec<usize>> {
    let mut current = Vec::new();
    let mut scratch = Search::new(adj, SearchBudget::default().start());
    if find_exact(adj, &Bitset::full(adj.len()), size, &mut current, &mut scratch) {
        let mut w: Vec<usize> = current.iter().map(|&i| order[i]).collect();
        w.sort_unstable();
        Some(w)
    } else {
        None
    }
}

fn find_exact(
    adj: &[Bitset],
    cand: &Bitset,
    size: usize,
    current: &mut Vec<usize>,
    scratch: &mut Search<'_>,
) -> bool {
    if current.len() == size {
        return true;
    }
    if current.len() + cand.count() < size {
        return false;
    }
    if current.len() + scratch.colour_count(cand) < size {
        return false;
    }
    let mut rest = cand.clone();
    for v in cand.iter() {
        current.push(v);
        let mut next = rest.clone();
        next.intersect_with(&adj[v]);
        if find_exact(adj, &next, size, current, scratch) {
            return true;
        }
        current.pop();
        rest.clear(v);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn exact(r: ValueResult) -> (usize, Vec<usize>) {
        match r {
            ValueResult::Exact { value, witness } => (value, witness),
            ValueResult::Indeterminate { .. } => panic!("expected exact result"),
        }
    }

    #[test]
    fn trivial_cases() {
        let (w, _) = exact(clique_number(&Graph::empty(5), &SearchBudget::default()));
        assert_eq!(w, 1);
        let (w, wit) = exact(clique_number(&Graph::complete(6), &SearchBudget::default()));
        assert_eq!(w, 6);
        assert_eq!(wit.len(), 6);
        let (a, _) = exact(independence_number(&Graph::complete(6), &SearchBudget::default()));
        assert_eq!(a, 1);
        let (w, _) = exact(clique_number(&Graph::empty(1), &SearchBudget::default()));
        assert_eq!(w, 1);
    }

    #[test]
    fn cycle_cliques() {
        let (w, wit) = exact(clique_number(&Graph::cycle(7), &SearchBudget::default()));
        assert_eq!(w, 2);
        assert!(Graph::cycle(7).has_edge(wit[0], wit[1]));
        let (a, wit) = exact(independence_number(&Graph::cycle(7), &SearchBudget::default()));
        assert_eq!(a, 3);
        let c7 = Graph::cycle(7);
        for i in 0..wit.len() {
            for j in 0..i {
                assert!(!c7.has_edge(wit[i], wit[j]));
            }
        }
    }

    #[test]
    fn witness_always_is_a_clique() {
        let mut state = 12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..20 {
            let n = 8 + (next() % 6) as usize;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in 0..u {
                    if next() % 2 == 0 {
                        g.add_edge(u, v);
                    }
                }
            }
            let (w, wit) = exact(clique_number(&g, &SearchBudget::default()));
            assert_eq!(wit.len(), w);
            for i in 0..wit.len() {
                for j in 0..i {
                    assert!(g.has_edge(wit[i], wit[j]));
                }
            }
            // oracle: exhaustive subset scan
            let mut best = 0usize;
            for mask in 0u32..(1 << n) {
                let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if verts.len() > best
                    && verts
                        .iter()
                        .enumerate()
                        .all(|(i, &u)| verts.iter().take(i).all(|&v| g.has_edge(u, v)))
                {
                    best = verts.len();
                }
            }
            assert_eq!(w, best.max(1));
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = Graph::cycle(9).complement();
        let seq = clique_number_jobs(&g, &SearchBudget::default(), 1);
        let par = clique_number_jobs(&g, &SearchBudget::default(), 4);
        assert_eq!(seq, par);
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let g = Graph::complete(30);
        let tiny = SearchBudget::new(5, std::time::Duration::from_secs(60));
        match clique_number(&g, &tiny) {
            ValueResult::Indeterminate { lower, upper, .. } => {
                assert!(lower <= upper);
            }
            ValueResult::Exact { .. } => panic!("5-node budget cannot finish K_30"),
        }
    }

    #[test]
    fn moderately_dense_instance_is_fast() {
        // complement of a sparse circulant on 51 vertices
        let mut g = Graph::empty(51);
        for u in 0..51usize {
            for d in [1usize, 3, 8, 17] {
                g.add_edge(u, (u + d) % 51);
            }
        }
        let dense = g.complement();
        let (w, _) = exact(clique_number(&dense, &SearchBudget::default()));
        assert!(w >= 10);
    }
}

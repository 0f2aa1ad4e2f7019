//! Exact isomorphism testing: iterated invariant refinement (degree,
//! neighbour-class multisets, distance profiles) followed by backtracking
//! over class-respecting candidate sets.

use super::{Bitset, Graph};
use std::collections::HashMap;

/// Returns a vertex bijection `g -> h` preserving adjacency both ways, or
/// `None` if the graphs are not isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    if g.n() == 0 {
        return Some(Vec::new());
    }
    let (cg, ch) = match joint_refinement(g, h) {
        Some(pair) => pair,
        None => return None,
    };

    // candidate sets per source vertex: targets in the same refined class
    let n = g.n();
    let mut candidates: Vec<Bitset> = vec![Bitset::new(n); n];
    for u in 0..n {
        for v in 0..n {
            if cg[u] == ch[v] {
                candidates[u].set(v);
            }
        }
    }

    // assign most-constrained source vertices first, preferring vertices
    // adjacent to already-assigned ones
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&u| (candidates[u].count(), usize::MAX - g.degree(u)));
    let mut ordered = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while ordered.len() < n {
        let next = order
            .iter()
            .copied()
            .filter(|&u| !placed[u])
            .min_by_key(|&u| {
                let attached = ordered.iter().filter(|&&w| g.has_edge(u, w)).count();
                (usize::MAX - attached, candidates[u].count())
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        ordered.push(next);
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = Bitset::new(n);
    if assign(g, h, &ordered, 0, &candidates, &mut mapping, &mut used) {
        debug_assert!(verify(g, h, &mapping));
        Some(mapping)
    } else {
        None
    }
}

fn assign(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    candidates: &[Bitset],
    mapping: &mut Vec<usize>,
    used: &mut Bitset,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    let cand: Vec<usize> = candidates[u].iter().filter(|&v| !used.test(v)).collect();
    'cand: for v in cand {
        // adjacency with already-assigned vertices must match both ways
        for &w in order.iter().take(depth) {
            if g.has_edge(u, w) != h.has_edge(v, mapping[w]) {
                continue 'cand;
            }
        }
        mapping[u] = v;
        used.set(v);
        if assign(g, h, order, depth + 1, candidates, mapping, used) {
            return true;
        }
        used.clear(v);
        mapping[u] = usize::MAX;
    }
    false
}

fn verify(g: &Graph, h: &Graph, mapping: &[usize]) -> bool {
    (0..g.n()).all(|u| (0..u).all(|v| g.has_edge(u, v) == h.has_edge(mapping[u], mapping[v])))
}

/// Refine vertex classes of both graphs in lockstep; classes are shared, so
/// unequal class size distributions prove non-isomorphism early.
fn joint_refinement(g: &Graph, h: &Graph) -> Option<(Vec<u64>, Vec<u64>)> {
    let mut cg = initial_invariant(g);
    let mut ch = initial_invariant(h);
    loop {
        if !same_class_sizes(&cg, &ch) {
            return None;
        }
        let (ng, nh, changed) = refine_once(g, h, &cg, &ch);
        if !changed {
            return Some((ng, nh));
        }
        cg = ng;
        ch = nh;
    }
}

fn initial_invariant(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut inv = Vec::with_capacity(n);
    for v in 0..n {
        // (degree, sorted neighbour degrees, sorted BFS distance counts)
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|w| g.degree(w)).collect();
        nd.sort_unstable();
        let mut dist = vec![usize::MAX; n];
        dist[v] = 0;
        let mut queue = vec![v];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for y in g.neighbors(x).iter() {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push(y);
                }
            }
        }
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &d in &dist {
            if d != usize::MAX {
                *counts.entry(d).or_default() += 1;
            }
        }
        let mut profile: Vec<(usize, usize)> = counts.into_iter().collect();
        profile.sort_unstable();
        inv.push(hash_tuple(&(g.degree(v), nd, profile)));
    }
    inv
}

fn refine_once(g: &Graph, h: &Graph, cg: &[u64], ch: &[u64]) -> (Vec<u64>, Vec<u64>, bool) {
    let sig = |graph: &Graph, colors: &[u64], v: usize| -> u64 {
        let mut nc: Vec<u64> = graph.neighbors(v).iter().map(|w| colors[w]).collect();
        nc.sort_unstable();
        hash_tuple(&(colors[v], nc))
    };
    let ng: Vec<u64> = (0..g.n()).map(|v| sig(g, cg, v)).collect();
    let nh: Vec<u64> = (0..h.n()).map(|v| sig(h, ch, v)).collect();
    let classes = |c: &[u64]| {
        let mut m: HashMap<u64, usize> = HashMap::new();
        for &x in c {
            *m.entry(x).or_default() += 1;
        }
        m.len()
    };
    let changed = classes(&ng) != classes(cg);
    (ng, nh, changed)
}

fn same_class_sizes(cg: &[u64], ch: &[u64]) -> bool {
    let count = |c: &[u64]| {
        let mut m: HashMap<u64, usize> = HashMap::new();
        for &x in c {
            *m.entry(x).or_default() += 1;
        }
        let mut v: Vec<(u64, usize)> = m.into_iter().collect();
        v.sort_unstable();
        v
    };
    count(cg) == count(ch)
}

fn hash_tuple<T: std::hash::Hash>(t: &T) -> u64 {
    use std::hash::Hasher;
    let mut h = std::collections::hash_map::DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn identity_isomorphism() {
        let g = Graph::cycle(7);
        let m = is_isomorphic(&g, &g).unwrap();
        for (u, v) in g.edges() {
            assert!(g.has_edge(m[u], m[v]));
        }
    }

    #[test]
    fn relabelled_cycle() {
        let c6 = Graph::cycle(6);
        let mut shuffled = Graph::empty(6);
        let perm = [3usize, 0, 4, 1, 5, 2];
        for (u, v) in c6.edges() {
            shuffled.add_edge(perm[u], perm[v]);
        }
        assert!(is_isomorphic(&c6, &shuffled).is_some());
    }

    #[test]
    fn non_isomorphic_same_degrees() {
        // C_6 vs 2K_3: both 2-regular on 6 vertices
        let c6 = Graph::cycle(6);
        let mut two_k3 = Graph::empty(6);
        for base in [0usize, 3] {
            two_k3.add_edge(base, base + 1);
            two_k3.add_edge(base + 1, base + 2);
            two_k3.add_edge(base, base + 2);
        }
        assert!(is_isomorphic(&c6, &two_k3).is_none());
    }

    #[test]
    fn randomized_relabelling_roundtrip() {
        let mut state = 0xfeedbeefu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in [5usize, 8, 10] {
            for _ in 0..10 {
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in 0..u {
                        if next() % 3 == 0 {
                            g.add_edge(u, v);
                        }
                    }
                }
                // random permutation by sorting random keys
                let mut perm: Vec<usize> = (0..n).collect();
                perm.sort_by_key(|_| next());
                let mut h = Graph::empty(n);
                for (u, v) in g.edges() {
                    h.add_edge(perm[u], perm[v]);
                }
                let m = is_isomorphic(&g, &h).expect("relabelled graph must be isomorphic");
                for u in 0..n {
                    for v in 0..u {
                        assert_eq!(g.has_edge(u, v), h.has_edge(m[u], m[v]));
                    }
                }
                // symmetry of the predicate
                assert!(is_isomorphic(&h, &g).is_some());
            }
        }
    }
}

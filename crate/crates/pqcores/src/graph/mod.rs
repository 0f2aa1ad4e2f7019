//! Core graph representation: a symmetric adjacency bit-matrix plus
//! structured vertex labels, with the product constructions and structural
//! predicates the solvers and family constructors rely on.

mod io;
mod iso;

pub use io::{from_json, to_dot, to_json};
pub use iso::is_isomorphic;

use crate::error::{Error, Result};
use std::fmt;

/// Fixed-capacity bitset over vertex indices, one u64 word per 64 vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    n: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(n: usize) -> Self {
        Bitset { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut b = Bitset::new(n);
        for v in 0..n {
            b.set(v);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn test(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn subtract(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_count(&self, other: &Bitset) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_disjoint(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Lowest set bit, if any.
    pub fn first(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((wi << 6) + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> BitsetIter<'_> {
        BitsetIter { words: &self.words, word_index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn clear_all(&mut self) {
        self.words.fill(0);
    }

    pub fn copy_from(&mut self, other: &Bitset) {
        self.words.copy_from_slice(&other.words);
    }
}

pub struct BitsetIter<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for BitsetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some((self.word_index << 6) + bit);
            }
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
    }
}

/// Structured vertex tag. Products pair the factor labels; the remaining
/// variants cover the base families (residues, primed residues, projective
/// line points, design points/blocks).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Int(u64),
    /// `i'` in the primed copy of `Z_q`.
    Prime(u64),
    /// The point at infinity of `PG(1, 2^a)`.
    Inf,
    /// A finite-field element as its polynomial bitmask.
    Field(u64),
    Point(String),
    Block(String),
    Pair(Box<Label>, Box<Label>),
    /// Opaque label from an imported file.
    Raw(String),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Prime(i) => write!(f, "{i}'"),
            Label::Inf => write!(f, "inf"),
            Label::Field(x) => write!(f, "f{x}"),
            Label::Point(s) => write!(f, "p{s}"),
            Label::Block(s) => write!(f, "b{s}"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Raw(s) => write!(f, "{s}"),
        }
    }
}

/// Finite simple undirected graph: symmetric bit-matrix with zero diagonal
/// and pairwise distinct vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
    labels: Vec<Label>,
}

impl Graph {
    /// Edgeless graph with integer labels.
    pub fn empty(n: usize) -> Graph {
        Graph::with_labels((0..n as u64).map(Label::Int).collect())
    }

    pub fn with_labels(labels: Vec<Label>) -> Graph {
        let n = labels.len();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            assert!(seen.insert(l.clone()), "vertex labels must be pairwise distinct: {l}");
        }
        Graph { n, adj: vec![Bitset::new(n); n], labels }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in 0..u {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        self.adj[u].set(v);
        self.adj[v].set(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn index_of_label(&self, l: &Label) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].test(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Sorted degree multiset.
    pub fn valency_profile(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Common valency if the graph is regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::with_labels(self.labels.clone());
        for u in 0..self.n {
            for v in 0..u {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced on `verts` (kept in the given order).
    pub fn induced_subgraph(&self, verts: &[usize]) -> Graph {
        let labels = verts.iter().map(|&v| self.labels[v].clone()).collect();
        let mut g = Graph::with_labels(labels);
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().take(i) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = Bitset::new(self.n);
        let mut queue = vec![0usize];
        seen.set(0);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for w in self.adj[v].iter() {
                if !seen.test(w) {
                    seen.set(w);
                    queue.push(w);
                }
            }
        }
        seen.count() == self.n
    }

    /// Two-coloring witness, or an odd closed walk when none exists.
    pub fn bipartition(&self) -> Bipartiteness {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = vec![start];
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                for w in self.adj[v].iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        parent[w] = v;
                        queue.push(w);
                    } else if color[w] == color[v] {
                        // walk both endpoints up to the root; the union of the
                        // two tree paths plus edge (v,w) contains an odd cycle
                        let mut cyc = vec![w];
                        let mut x = v;
                        while x != usize::MAX {
                            cyc.push(x);
                            x = parent[x];
                        }
                        let mut x = parent[w];
                        while x != usize::MAX {
                            cyc.insert(0, x);
                            x = parent[x];
                        }
                        return Bipartiteness::OddWalk(cyc);
                    }
                }
            }
        }
        Bipartiteness::Bipartite(color)
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartiteness::Bipartite(_))
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for start in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[start] = 0;
            let mut queue = vec![start];
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                for w in self.adj[v].iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Categorical product: (u,x) ~ (v,y) iff u~v and x~y.
    pub fn categorical_product(&self, other: &Graph) -> Graph {
        let mut g = product_shell(self, other);
        let m = other.n;
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    for x in 0..m {
                        for y in other.adj[x].iter() {
                            g.add_edge(u * m + x, v * m + y);
                        }
                    }
                }
            }
        }
        g
    }

    /// Lexicographic product: (u,x) ~ (v,y) iff u~v, or u=v and x~y.
    pub fn lexicographic_product(&self, other: &Graph) -> Graph {
        let mut g = product_shell(self, other);
        let m = other.n;
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    for x in 0..m {
                        for y in 0..m {
                            g.add_edge(u * m + x, v * m + y);
                        }
                    }
                }
            }
            for x in 0..m {
                for y in other.adj[x].iter() {
                    if y > x {
                        g.add_edge(u * m + x, u * m + y);
                    }
                }
            }
        }
        g
    }

    /// Lexicographic product minus the edges {(u,x),(v,x)} with u~v.
    pub fn deleted_lexicographic_product(&self, other: &Graph) -> Graph {
        let mut g = self.lexicographic_product(other);
        let m = other.n;
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    for x in 0..m {
                        g.adj[u * m + x].clear(v * m + x);
                        g.adj[v * m + x].clear(u * m + x);
                    }
                }
            }
        }
        g
    }

    /// Checks the representation invariants; construction keeps them by
    /// design, so this is used in tests and after imports.
    pub fn check_invariants(&self) -> Result<()> {
        for u in 0..self.n {
            if self.adj[u].test(u) {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            for v in self.adj[u].iter() {
                if !self.adj[v].test(u) {
                    return Err(Error::InvalidParameter(format!("asymmetric edge ({u},{v})")));
                }
            }
        }
        Ok(())
    }
}

fn product_shell(a: &Graph, b: &Graph) -> Graph {
    let mut labels = Vec::with_capacity(a.n * b.n);
    for u in 0..a.n {
        for x in 0..b.n {
            labels.push(Label::pair(a.labels[u].clone(), b.labels[x].clone()));
        }
    }
    Graph::with_labels(labels)
}

#[derive(Debug, Clone)]
pub enum Bipartiteness {
    /// Per-vertex 2-coloring.
    Bipartite(Vec<u8>),
    /// A closed walk containing an odd cycle (witness of non-bipartiteness).
    OddWalk(Vec<usize>),
}

/// A total vertex map between two graphs, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: &Graph, target: &Graph, map: Vec<usize>) -> Result<Homomorphism> {
        let h = Homomorphism { map };
        h.validate(source, target)?;
        Ok(h)
    }

    /// Every source edge must map to a target edge (so endpoints stay
    /// distinct).
    pub fn validate(&self, source: &Graph, target: &Graph) -> Result<()> {
        if self.map.len() != source.n() {
            return Err(Error::InvalidParameter(format!(
                "map covers {} vertices, source has {}",
                self.map.len(),
                source.n()
            )));
        }
        if let Some(&bad) = self.map.iter().find(|&&x| x >= target.n()) {
            return Err(Error::InvalidParameter(format!(
                "map value {bad} outside target vertex range"
            )));
        }
        for (u, v) in source.edges() {
            if !target.has_edge(self.map[u], self.map[v]) {
                return Err(Error::InvalidHomomorphism { u, v, iu: self.map[u], iv: self.map[v] });
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    /// Fibres indexed by target vertex.
    pub fn fibres(&self, target_n: usize) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); target_n];
        for (v, &img) in self.map.iter().enumerate() {
            f[img].push(v);
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    #[test]
    fn k2_times_k2_is_two_disjoint_edges() {
        let k2 = Graph::complete(2);
        let p = k2.categorical_product(&k2);
        assert_eq!(p.n(), 4);
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.valency_profile(), vec![1, 1, 1, 1]);
        assert!(!p.is_connected());
    }

    #[test]
    fn lex_product_of_k2_and_empty_is_complete_bipartite() {
        let k2 = Graph::complete(2);
        for q in [3usize, 5] {
            let g = k2.lexicographic_product(&Graph::empty(q));
            assert_eq!(g.n(), 2 * q);
            assert_eq!(g.edge_count(), q * q);
            assert!(g.is_bipartite());
            assert_eq!(g.regular_valency(), Some(q));
        }
    }

    #[test]
    fn lex_product_identity_fiber() {
        let c5 = Graph::cycle(5);
        let g = c5.lexicographic_product(&Graph::empty(1));
        assert!(is_isomorphic(&c5, &g).is_some());
    }

    #[test]
    fn deleted_lex_small_case() {
        // K_2[K̄_2] minus the matching leaves exactly 2K_2
        let k2 = Graph::complete(2);
        let g = k2.deleted_lexicographic_product(&Graph::empty(2));
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.has_edge(0, 2) && !g.has_edge(1, 3));
        assert!(g.has_edge(0, 3) && g.has_edge(1, 2));
    }

    #[test]
    fn deleted_lex_equals_categorical_with_complete_fiber() {
        let c5 = Graph::cycle(5);
        for d in [2usize, 3, 4] {
            let lhs = c5.deleted_lexicographic_product(&Graph::empty(d));
            let rhs = c5.categorical_product(&Graph::complete(d));
            assert_eq!(lhs, rhs);
            assert_eq!(lhs.regular_valency(), Some(2 * (d - 1)));
        }
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let g = Graph::complete(6).complement();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(Graph::empty(4).complement(), Graph::complete(4));
    }

    #[test]
    fn induced_subgraph_full_set_is_identity() {
        let g = Graph::cycle(7);
        let all: Vec<usize> = (0..7).collect();
        assert_eq!(g.induced_subgraph(&all), g);
        let sub = g.induced_subgraph(&[0, 1, 2]);
        assert_eq!(sub.edge_count(), 2);
    }

    #[test]
    fn bipartition_witnesses() {
        match path(6).bipartition() {
            Bipartiteness::Bipartite(c) => {
                for (u, v) in path(6).edges() {
                    assert_ne!(c[u], c[v]);
                }
            }
            Bipartiteness::OddWalk(_) => panic!("path is bipartite"),
        }
        match Graph::cycle(5).bipartition() {
            Bipartiteness::Bipartite(_) => panic!("odd cycle is not bipartite"),
            Bipartiteness::OddWalk(w) => assert!(!w.is_empty()),
        }
    }

    #[test]
    fn girth_values() {
        assert_eq!(Graph::cycle(5).girth(), Some(5));
        assert_eq!(Graph::complete(4).girth(), Some(3));
        assert_eq!(path(5).girth(), None);
    }

    #[test]
    fn homomorphism_validation() {
        let c5 = Graph::cycle(5);
        let k3 = Graph::complete(3);
        let h = Homomorphism::new(&c5, &k3, vec![0, 1, 0, 1, 2]).unwrap();
        assert_eq!(h.fibres(3)[0], vec![0, 2]);
        assert!(Homomorphism::new(&c5, &k3, vec![0, 1, 0, 1, 0]).is_err());
    }

    #[test]
    fn projections_of_categorical_product_are_homomorphisms() {
        let g = Graph::cycle(5);
        let h = Graph::complete(3);
        let p = g.categorical_product(&h);
        let proj1: Vec<usize> = (0..p.n()).map(|v| v / h.n()).collect();
        let proj2: Vec<usize> = (0..p.n()).map(|v| v % h.n()).collect();
        assert!(Homomorphism::new(&p, &g, proj1).is_ok());
        assert!(Homomorphism::new(&p, &h, proj2).is_ok());
    }

    proptest! {
        #[test]
        fn product_edge_counts(seed in 0u64..500) {
            // |E(G×H)| = 2 |E(G)| |E(H)| on random 6-vertex factors
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut next = || {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                s
            };
            let mut g = Graph::empty(6);
            let mut h = Graph::empty(6);
            for u in 0..6usize {
                for v in 0..u {
                    if next() % 2 == 0 {
                        g.add_edge(u, v);
                    }
                    if next() % 2 == 0 {
                        h.add_edge(u, v);
                    }
                }
            }
            let p = g.categorical_product(&h);
            prop_assert_eq!(p.edge_count(), 2 * g.edge_count() * h.edge_count());
            p.check_invariants().unwrap();
            let lex = g.lexicographic_product(&h);
            lex.check_invariants().unwrap();
            prop_assert_eq!(
                lex.edge_count(),
                g.edge_count() * 36 + 6 * h.edge_count()
            );
            let del = g.deleted_lexicographic_product(&h);
            del.check_invariants().unwrap();
            prop_assert_eq!(del.edge_count(), lex.edge_count() - g.edge_count() * 6);
        }
    }
}

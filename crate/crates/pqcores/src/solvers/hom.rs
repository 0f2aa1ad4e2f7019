//! Backtracking CSP over vertex maps: plain homomorphisms, retractions
//! (target fixed pointwise), injective/induced embeddings, and homomorphisms
//! whose image differences are constrained per arc class. Chromatic number
//! sits on top as iterated k-colourability.
//!
//! Domains are flat bit-rows over the target vertex set; every assignment
//! snapshots the domain block into a per-depth stack, so propagation is pure
//! word arithmetic with no per-node allocation.

use super::{clique::clique_number, BudgetTracker, SearchBudget, ValueResult};
use crate::algebra::{element_order, lcm, pow_mod, subgroup};
use crate::error::{Error, Result};
use crate::graph::{Graph, Homomorphism};
use std::collections::HashMap;

/// Search outcome: a validated witness, a proof of non-existence (search
/// space exhausted), or an explicit budget overrun.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomSearch {
    Found(Homomorphism),
    None,
    Indeterminate,
}

impl HomSearch {
    pub fn found(&self) -> Option<&Homomorphism> {
        match self {
            HomSearch::Found(h) => Some(h),
            _ => None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, HomSearch::None)
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, HomSearch::Indeterminate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintMode {
    /// Forward map between the two circulant factors; arcs are classed by
    /// the discrete log of their difference, images must land in the
    /// corresponding subgroup coset.
    Eta,
    /// Backward map; arcs are classed by which coset contains their
    /// difference, images must realise the matching power of the generator.
    Zeta,
}

/// Arc-class constraint for homomorphisms between circulants on `Z_n`. The
/// class function must cover every arc of the source; each class carries a
/// nonempty set of allowed image differences in the target.
#[derive(Debug, Clone)]
pub struct HomConstraint {
    pub mode: ConstraintMode,
    class_of_diff: HashMap<u64, usize>,
    allowed: Vec<Vec<u64>>,
    source_modulus: u64,
    target_modulus: u64,
}

impl HomConstraint {
    /// Constraint for maps G(p,s) -> G(q,u): an arc with difference `a^l`
    /// must map to a difference in `t^l H(q,r)`.
    pub fn eta(p: u64, q: u64, r: u64, s: u64, t: u64) -> Result<HomConstraint> {
        let hps = subgroup(p, s)?;
        let a = hps.smallest_generator();
        let hqr = subgroup(q, r)?;
        let mut class_of_diff = HashMap::new();
        let mut allowed = Vec::new();
        for l in 0..s {
            let diff = pow_mod(a, l, p);
            class_of_diff.insert(diff, l as usize);
            allowed.push(hqr.coset(pow_mod(t, l, q)));
        }
        Ok(HomConstraint {
            mode: ConstraintMode::Eta,
            class_of_diff,
            allowed,
            source_modulus: p,
            target_modulus: q,
        })
    }

    /// Constraint for maps G(q,u) -> G(p,s): an arc with difference in
    /// `t^l H(q,r)` must map to a difference in `a^l ⟨a^k⟩`, where `k` is the
    /// index of H(q,r) in H(q,u). The allowed sets are singletons exactly
    /// when k equals the order of `a`.
    pub fn zeta(p: u64, q: u64, r: u64, s: u64, t: u64) -> Result<HomConstraint> {
        let hps = subgroup(p, s)?;
        let a = hps.smallest_generator();
        let hqr = subgroup(q, r)?;
        let u = lcm(r, element_order(t, q)?);
        let k = u / r;
        let mut class_of_diff = HashMap::new();
        let mut allowed = Vec::new();
        for l in 0..k {
            for d in hqr.coset(pow_mod(t, l, q)) {
                class_of_diff.insert(d, l as usize);
            }
            // a^l ⟨a^k⟩
            let mut vals = Vec::new();
            let mut x = pow_mod(a, l, p);
            let step = pow_mod(a, k, p);
            loop {
                vals.push(x);
                x = x * step % p;
                if x == vals[0] {
                    break;
                }
            }
            vals.sort_unstable();
            vals.dedup();
            allowed.push(vals);
        }
        debug_assert_eq!(class_of_diff.len() as u64, u);
        Ok(HomConstraint {
            mode: ConstraintMode::Zeta,
            class_of_diff,
            allowed,
            source_modulus: q,
            target_modulus: p,
        })
    }

    /// Every arc of `source` (as an index difference mod the source modulus)
    /// must carry a class, and every allowed set must be nonempty.
    pub fn covers(&self, source: &Graph) -> Result<()> {
        for (u, v) in source.edges() {
            for (x, y) in [(u as u64, v as u64), (v as u64, u as u64)] {
                let diff = (y + self.source_modulus - x) % self.source_modulus;
                if !self.class_of_diff.contains_key(&diff) {
                    return Err(Error::InvalidParameter(format!(
                        "arc difference {diff} has no constraint class"
                    )));
                }
            }
        }
        if self.allowed.iter().any(|a| a.is_empty()) {
            return Err(Error::InvalidParameter("empty allowed-difference set".into()));
        }
        Ok(())
    }

    fn class_of(&self, from: usize, to: usize) -> usize {
        let m = self.source_modulus;
        let diff = (to as u64 + m - from as u64 % m) % m;
        self.class_of_diff[&diff]
    }
}

struct Engine<'a> {
    source: &'a Graph,
    target: &'a Graph,
    injective: bool,
    induced: bool,
    fibre_cap: Option<usize>,
    constraint: Option<&'a HomConstraint>,
}

/// Flat bit-row helpers over `w` words per row.
#[inline]
fn row(words: &[u64], w: usize, i: usize) -> &[u64] {
    &words[i * w..(i + 1) * w]
}

#[inline]
fn row_mut(words: &mut [u64], w: usize, i: usize) -> &mut [u64] {
    &mut words[i * w..(i + 1) * w]
}

struct State {
    ns: usize,
    nt: usize,
    w: usize,
    domains: Vec<u64>,
    saved: Vec<u64>,
    assignment: Vec<usize>,
    counts: Vec<usize>,
    attached: Vec<usize>,
    assigned: usize,
    target_adj: Vec<u64>,
    target_nonadj: Vec<u64>,
    /// head_masks[class * nt + v]: allowed images for the head of an arc of
    /// that class whose tail maps to v (per word block).
    head_masks: Vec<u64>,
    tail_masks: Vec<u64>,
}

impl State {
    fn new(engine: &Engine<'_>) -> State {
        let ns = engine.source.n();
        let nt = engine.target.n();
        let w = nt.div_ceil(64).max(1);
        let mut target_adj = vec![0u64; nt * w];
        let mut target_nonadj = vec![0u64; nt * w];
        let full_mask = |i: usize| -> u64 {
            let bits = nt - i * 64;
            if bits >= 64 {
                u64::MAX
            } else if bits == 0 {
                0
            } else {
                (1u64 << bits) - 1
            }
        };
        for v in 0..nt {
            let adj_row = row_mut(&mut target_adj, w, v);
            for (i, word) in engine.target.neighbors(v).words().iter().enumerate() {
                adj_row[i] = *word;
            }
            for i in 0..w {
                target_nonadj[v * w + i] = !target_adj[v * w + i] & full_mask(i);
            }
            // non-adjacent and distinct
            target_nonadj[v * w + (v >> 6)] &= !(1u64 << (v & 63));
        }
        let (head_masks, tail_masks) = match engine.constraint {
            None => (Vec::new(), Vec::new()),
            Some(c) => {
                let classes = c.allowed.len();
                let mut head = vec![0u64; classes * nt * w];
                let mut tail = vec![0u64; classes * nt * w];
                let m = c.target_modulus;
                for class in 0..classes {
                    for v in 0..nt {
                        for &d in &c.allowed[class] {
                            let plus = ((v as u64 + d) % m) as usize;
                            let minus = ((v as u64 + m - d % m) % m) as usize;
                            head[(class * nt + v) * w + (plus >> 6)] |= 1u64 << (plus & 63);
                            tail[(class * nt + v) * w + (minus >> 6)] |= 1u64 << (minus & 63);
                        }
                    }
                }
                (head, tail)
            }
        };
        let mut domains = vec![0u64; ns * w];
        for u in 0..ns {
            for i in 0..w {
                domains[u * w + i] = full_mask(i);
            }
            if engine.injective {
                // embeddings need enough room around the image
                for v in 0..nt {
                    if engine.target.degree(v) < engine.source.degree(u) {
                        domains[u * w + (v >> 6)] &= !(1u64 << (v & 63));
                    }
                }
            }
        }
        State {
            ns,
            nt,
            w,
            domains,
            saved: vec![0u64; (ns + 1) * ns * w],
            assignment: vec![usize::MAX; ns],
            counts: vec![0; nt],
            attached: vec![0; ns],
            assigned: 0,
            target_adj,
            target_nonadj,
            head_masks,
            tail_masks,
        }
    }
}

impl Engine<'_> {
    fn solve(&self, fixed: &[(usize, usize)], budget: &SearchBudget) -> HomSearch {
        let ns = self.source.n();
        if ns == 0 {
            return HomSearch::Found(Homomorphism { map: vec![] });
        }
        if self.target.n() == 0 {
            return HomSearch::None;
        }
        let mut state = State::new(self);
        let mut tracker = budget.start();
        for &(u, v) in fixed {
            if state.domains[u * state.w + (v >> 6)] >> (v & 63) & 1 == 0 {
                return HomSearch::None;
            }
            if !self.assign(&mut state, u, v) {
                return HomSearch::None;
            }
        }
        match self.search(&mut state, &mut tracker) {
            Some(true) => {
                let hom = Homomorphism { map: state.assignment.clone() };
                debug_assert!(hom.validate(self.source, self.target).is_ok());
                HomSearch::Found(hom)
            }
            Some(false) => HomSearch::None,
            None => HomSearch::Indeterminate,
        }
    }

    fn search(&self, state: &mut State, tracker: &mut BudgetTracker) -> Option<bool> {
        if state.assigned == state.ns {
            return Some(true);
        }
        if !tracker.tick() {
            return None;
        }
        let u = self.pick_variable(state);
        let depth = state.assigned;
        let w = state.w;
        let block = state.ns * w;
        let slot = depth * block;
        // iterate the current domain of u from a snapshot
        let dom_snapshot: Vec<u64> = row(&state.domains, w, u).to_vec();
        for (wi, &word) in dom_snapshot.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let v = (wi << 6) + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                state.saved[slot..slot + block].copy_from_slice(&state.domains);
                if self.assign(state, u, v) {
                    match self.search(state, tracker) {
                        Some(true) => return Some(true),
                        Some(false) => {}
                        None => return None,
                    }
                }
                self.unassign(state, u, v);
                state.domains.copy_from_slice(&state.saved[slot..slot + block]);
            }
        }
        Some(false)
    }

    /// Descending degree, then most assigned neighbours, then least index.
    fn pick_variable(&self, state: &State) -> usize {
        let mut best = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for u in 0..state.ns {
            if state.assignment[u] != usize::MAX {
                continue;
            }
            let key = (self.source.degree(u), state.attached[u]);
            if best == usize::MAX || key > best_key {
                best = u;
                best_key = key;
            }
        }
        best
    }

    /// Assign u -> v and propagate into the unassigned domains. Returns
    /// false when a domain wipes out (the caller restores from the
    /// snapshot).
    fn assign(&self, state: &mut State, u: usize, v: usize) -> bool {
        state.assignment[u] = v;
        state.counts[v] += 1;
        state.assigned += 1;
        for nb in self.source.neighbors(u).iter() {
            state.attached[nb] += 1;
        }
        let w = state.w;
        let cap_hit = self.fibre_cap.map_or(false, |cap| state.counts[v] >= cap);
        let clear_v = self.injective || cap_hit;
        let vw = v >> 6;
        let vbit = 1u64 << (v & 63);
        for x in 0..state.ns {
            if x == u || state.assignment[x] != usize::MAX {
                continue;
            }
            let edge = self.source.has_edge(u, x);
            let mut nonzero = 0u64;
            if edge {
                let adj_base = v * w;
                if let Some(c) = self.constraint {
                    let c_head = c.class_of(u, x);
                    let c_tail = c.class_of(x, u);
                    let head_base = (c_head * state.nt + v) * w;
                    let tail_base = (c_tail * state.nt + v) * w;
                    for i in 0..w {
                        let masked = state.domains[x * w + i]
                            & state.target_adj[adj_base + i]
                            & state.head_masks[head_base + i]
                            & state.tail_masks[tail_base + i];
                        state.domains[x * w + i] = masked;
                        nonzero |= masked;
                    }
                } else {
                    for i in 0..w {
                        let masked = state.domains[x * w + i] & state.target_adj[adj_base + i];
                        state.domains[x * w + i] = masked;
                        nonzero |= masked;
                    }
                }
                if clear_v {
                    state.domains[x * w + vw] &= !vbit;
                    nonzero = (0..w).fold(0, |acc, i| acc | state.domains[x * w + i]);
                }
            } else if self.induced {
                // non-adjacent sources need non-adjacent, distinct images
                let base = v * w;
                for i in 0..w {
                    let masked = state.domains[x * w + i] & state.target_nonadj[base + i];
                    state.domains[x * w + i] = masked;
                    nonzero |= masked;
                }
            } else if clear_v {
                state.domains[x * w + vw] &= !vbit;
                nonzero = (0..w).fold(0, |acc, i| acc | state.domains[x * w + i]);
            } else {
                continue;
            }
            if nonzero == 0 {
                return false;
            }
        }
        true
    }

    fn unassign(&self, state: &mut State, u: usize, v: usize) {
        state.assignment[u] = usize::MAX;
        state.counts[v] -= 1;
        state.assigned -= 1;
        for nb in self.source.neighbors(u).iter() {
            state.attached[nb] -= 1;
        }
    }
}

/// Plain homomorphism existence.
pub fn find_homomorphism(source: &Graph, target: &Graph, budget: &SearchBudget) -> HomSearch {
    Engine { source, target, injective: false, induced: false, fibre_cap: None, constraint: None }
        .solve(&[], budget)
}

/// Homomorphism satisfying an arc-class difference constraint.
pub fn find_constrained_homomorphism(
    source: &Graph,
    target: &Graph,
    constraint: &HomConstraint,
    budget: &SearchBudget,
) -> Result<HomSearch> {
    constraint.covers(source)?;
    Ok(Engine {
        source,
        target,
        injective: false,
        induced: false,
        fibre_cap: None,
        constraint: Some(constraint),
    }
    .solve(&[], budget))
}

/// Retraction of `g` onto the subgraph induced by `subset`: a homomorphism
/// into that subgraph fixing it pointwise. The returned map uses subset
/// positions as target indices.
pub fn find_retraction(g: &Graph, subset: &[usize], budget: &SearchBudget) -> HomSearch {
    find_retraction_capped(g, subset, None, budget)
}

/// Retraction search with an optional uniform fibre cap (each target vertex
/// may absorb at most `cap` source vertices).
pub fn find_retraction_capped(
    g: &Graph,
    subset: &[usize],
    cap: Option<usize>,
    budget: &SearchBudget,
) -> HomSearch {
    let target = g.induced_subgraph(subset);
    let fixed: Vec<(usize, usize)> = subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Engine {
        source: g,
        target: &target,
        injective: false,
        induced: false,
        fibre_cap: cap,
        constraint: None,
    }
    .solve(&fixed, budget)
}

/// Injective embedding of `pattern` into `host`; with `induced` the image
/// must induce an exact copy.
pub fn find_embedding(
    pattern: &Graph,
    host: &Graph,
    induced: bool,
    budget: &SearchBudget,
) -> HomSearch {
    Engine { source: pattern, target: host, injective: true, induced, fibre_cap: None, constraint: None }
        .solve(&[], budget)
}

/// Chromatic number by k-colourability (homomorphism into K_k), iterating k
/// upward from the clique lower bound. A maximum clique found along the way
/// is pre-coloured, which is sound: any proper colouring assigns it distinct
/// colours, so colours can be renamed to match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringResult {
    Exact { value: usize, coloring: Vec<usize> },
    Indeterminate { lower: usize, upper: usize, coloring: Vec<usize> },
}

impl ColoringResult {
    pub fn exact_value(&self) -> Option<usize> {
        match self {
            ColoringResult::Exact { value, .. } => Some(*value),
            ColoringResult::Indeterminate { .. } => None,
        }
    }

    pub fn coloring(&self) -> &[usize] {
        match self {
            ColoringResult::Exact { coloring, .. } => coloring,
            ColoringResult::Indeterminate { coloring, .. } => coloring,
        }
    }
}

pub fn chromatic_number(g: &Graph, budget: &SearchBudget) -> ColoringResult {
    let n = g.n();
    if n == 0 {
        return ColoringResult::Exact { value: 0, coloring: vec![] };
    }
    if g.edge_count() == 0 {
        return ColoringResult::Exact { value: 1, coloring: vec![0; n] };
    }
    if let crate::graph::Bipartiteness::Bipartite(c) = g.bipartition() {
        return ColoringResult::Exact {
            value: 2,
            coloring: c.into_iter().map(|x| x as usize).collect(),
        };
    }

    let (mut lower, clique) = match clique_number(g, budget) {
        ValueResult::Exact { value, witness } => (value, witness),
        ValueResult::Indeterminate { lower, witness, .. } => (lower.max(3), witness),
    };
    lower = lower.max(3); // non-bipartite
    let greedy = greedy_coloring(g);
    let upper = greedy.iter().max().unwrap() + 1;

    let mut k = lower;
    while k <= upper {
        if k == upper {
            return ColoringResult::Exact { value: upper, coloring: greedy };
        }
        let kk = Graph::complete(k);
        let fixed: Vec<(usize, usize)> =
            clique.iter().take(k).enumerate().map(|(c, &v)| (v, c)).collect();
        let engine = Engine {
            source: g,
            target: &kk,
            injective: false,
            induced: false,
            fibre_cap: None,
            constraint: None,
        };
        match engine.solve(&fixed, budget) {
            HomSearch::Found(h) => return ColoringResult::Exact { value: k, coloring: h.map },
            HomSearch::None => k += 1,
            HomSearch::Indeterminate => {
                return ColoringResult::Indeterminate { lower: k, upper, coloring: greedy }
            }
        }
    }
    unreachable!("greedy colouring bounds the loop")
}

/// Greedy colouring in descending-degree order; used only as an upper bound.
fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut color = vec![usize::MAX; g.n()];
    for v in order {
        let mut used: Vec<bool> = vec![false; g.n()];
        for w in g.neighbors(v).iter() {
            if color[w] != usize::MAX {
                used[color[w]] = true;
            }
        }
        color[v] = used.iter().position(|&u| !u).unwrap();
    }
    color
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn bipartite_iff_hom_to_k2() {
        let k2 = Graph::complete(2);
        assert!(find_homomorphism(&Graph::cycle(6), &k2, &SearchBudget::default())
            .found()
            .is_some());
        assert!(find_homomorphism(&Graph::cycle(5), &k2, &SearchBudget::default()).is_none());
    }

    #[test]
    fn odd_cycles_do_not_map_to_longer_odd_cycles() {
        let c5 = Graph::cycle(5);
        let c7 = Graph::cycle(7);
        assert!(find_homomorphism(&c5, &c7, &SearchBudget::default()).is_none());
        assert!(find_homomorphism(&c7, &c5, &SearchBudget::default()).found().is_some());
    }

    #[test]
    fn triangle_into_k5() {
        let r =
            find_homomorphism(&Graph::complete(3), &Graph::complete(5), &SearchBudget::default());
        let h = r.found().expect("triangle embeds in K_5");
        h.validate(&Graph::complete(3), &Graph::complete(5)).unwrap();
    }

    #[test]
    fn retraction_cases() {
        // identity retraction
        let c5 = Graph::cycle(5);
        let all: Vec<usize> = (0..5).collect();
        assert!(find_retraction(&c5, &all, &SearchBudget::default()).found().is_some());
        // odd cycles have no proper retracts
        for k in 2..5 {
            let subset: Vec<usize> = (0..k).collect();
            assert!(find_retraction(&c5, &subset, &SearchBudget::default()).is_none());
        }
        // complete bipartite onto one edge
        let kqq = Graph::complete(2).lexicographic_product(&Graph::empty(3));
        let edge = vec![0, 3];
        assert!(kqq.has_edge(0, 3));
        let r = find_retraction(&kqq, &edge, &SearchBudget::default());
        let h = r.found().expect("bipartite graph retracts onto an edge");
        assert_eq!(h.map[0], 0);
        assert_eq!(h.map[3], 1);
    }

    #[test]
    fn capped_retraction_respects_fibre_sizes() {
        // K_3[K̄_4]: retraction onto a triangle with fibres of size 4
        let g = Graph::complete(3).lexicographic_product(&Graph::empty(4));
        let triangle = vec![0, 4, 8];
        let r = find_retraction_capped(&g, &triangle, Some(4), &SearchBudget::default());
        let h = r.found().expect("retraction exists");
        for t in 0..3 {
            assert_eq!(h.map.iter().filter(|&&x| x == t).count(), 4);
        }
    }

    #[test]
    fn chromatic_basics() {
        assert_eq!(
            chromatic_number(&Graph::cycle(11), &SearchBudget::default()).exact_value(),
            Some(3)
        );
        assert_eq!(
            chromatic_number(&Graph::cycle(6), &SearchBudget::default()).exact_value(),
            Some(2)
        );
        assert_eq!(
            chromatic_number(&Graph::complete(5), &SearchBudget::default()).exact_value(),
            Some(5)
        );
        assert_eq!(
            chromatic_number(&Graph::empty(4), &SearchBudget::default()).exact_value(),
            Some(1)
        );
        // wheel over C_5 needs four colours
        let mut w5 = Graph::empty(6);
        for (u, v) in Graph::cycle(5).edges() {
            w5.add_edge(u, v);
        }
        for v in 0..5 {
            w5.add_edge(5, v);
        }
        assert_eq!(chromatic_number(&w5, &SearchBudget::default()).exact_value(), Some(4));
    }

    #[test]
    fn coloring_consistent_with_hom_to_complete() {
        let mut state = 99u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..15 {
            let n = 5 + (next() % 4) as usize;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in 0..u {
                    if next() % 2 == 0 {
                        g.add_edge(u, v);
                    }
                }
            }
            let chi = chromatic_number(&g, &SearchBudget::default()).exact_value().unwrap();
            if chi > 1 {
                let smaller = Graph::complete(chi - 1);
                assert!(find_homomorphism(&g, &smaller, &SearchBudget::default()).is_none());
            }
            let exact = Graph::complete(chi);
            assert!(find_homomorphism(&g, &exact, &SearchBudget::default()).found().is_some());
        }
    }

    #[test]
    fn embedding_induced_vs_subgraph() {
        // C_4 is a subgraph of K_4 but not an induced one
        let c4 = Graph::cycle(4);
        let k4 = Graph::complete(4);
        assert!(find_embedding(&c4, &k4, false, &SearchBudget::default()).found().is_some());
        assert!(find_embedding(&c4, &k4, true, &SearchBudget::default()).is_none());
        // triangle is induced in K_4
        assert!(find_embedding(&Graph::complete(3), &k4, true, &SearchBudget::default())
            .found()
            .is_some());
        // embeddings found are injective and induced
        let c5 = Graph::cycle(5);
        let host = Graph::cycle(5).lexicographic_product(&Graph::empty(2));
        if let HomSearch::Found(h) = find_embedding(&c5, &host, true, &SearchBudget::default()) {
            let mut img = h.map.clone();
            img.sort_unstable();
            img.dedup();
            assert_eq!(img.len(), 5);
            for u in 0..5 {
                for v in 0..u {
                    assert_eq!(c5.has_edge(u, v), host.has_edge(h.map[u], h.map[v]));
                }
            }
        } else {
            panic!("C_5 embeds in its doubled version");
        }
    }

    #[test]
    fn infeasible_constraint_class_gives_none() {
        // C_5 into K_7 where every forward arc must step by exactly +1 mod 7:
        // five such steps cannot close a cycle, so no map exists
        let c5 = Graph::cycle(5);
        let k7 = Graph::complete(7);
        let constraint = HomConstraint::eta(5, 7, 1, 2, 6).unwrap();
        let r = find_constrained_homomorphism(&c5, &k7, &constraint, &SearchBudget::default())
            .unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn constrained_hom_degenerates_when_twist_is_inside() {
        // t in H(q,r) makes every allowed set the subgroup itself, so the
        // constrained search agrees with the plain one
        let (gp, _, _) = crate::families::g_pr(3, 2).unwrap();
        let (gq, _, _) = crate::families::g_pr(5, 2).unwrap();
        let constraint = HomConstraint::eta(3, 5, 2, 2, 1).unwrap();
        let constrained =
            find_constrained_homomorphism(&gp, &gq, &constraint, &SearchBudget::default())
                .unwrap();
        let plain = find_homomorphism(&gp, &gq, &SearchBudget::default());
        assert_eq!(constrained.is_none(), plain.is_none());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = Graph::cycle(9).complement();
        let tiny = SearchBudget::new(2, std::time::Duration::from_secs(60));
        let r = find_homomorphism(&g, &Graph::cycle(9), &tiny);
        assert!(r.is_indeterminate() || r.is_none());
    }
}

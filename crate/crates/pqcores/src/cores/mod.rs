//! Core (minimal retract) computation along three routes: exhaustive
//! retract search with divisor/fibre pruning, the classification decision
//! tables for the order-pq families, and homomorphism-equivalence
//! certificates for instances beyond the brute-force cutoff — plus the
//! cross-validator that compares the routes.

mod certificate;
mod classify;
mod replay;
mod scan;
mod validate;

pub use certificate::core_certificate;
pub use classify::{classify_core, PredictedCore, Prediction, TraceEntry};
pub use replay::{replay_ms_proof, BoundCheck, CheckOutcome, MsProofReplay};
pub use validate::{
    cross_validate, eliminate_prime_order_cores, verdict_to_json, Agreement, Verdict,
};

pub(crate) use scan::for_each_subset;

use crate::error::{Error, Result};
use crate::families::GeneratorSet;
use crate::graph::{Bipartiteness, Graph, Homomorphism};
use crate::solvers::SearchBudget;
use std::fmt;

/// Symbolic name of a core.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoreTag {
    /// K_n.
    Complete(u64),
    /// The circulant G(n,d).
    Circulant { n: u64, d: u64 },
    /// The graph is its own core.
    SelfCore,
    /// An induced core with no recognised symbolic form (generic inputs).
    Subgraph { order: u64 },
}

impl fmt::Display for CoreTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreTag::Complete(n) => write!(f, "K_{n}"),
            CoreTag::Circulant { n, d } => write!(f, "G({n},{d})"),
            CoreTag::SelfCore => write!(f, "SELF"),
            CoreTag::Subgraph { order } => write!(f, "core-of-order-{order}"),
        }
    }
}

impl CoreTag {
    /// Materialise the tagged graph; `host` resolves the SELF tag.
    pub fn realize(&self, host: &Graph) -> Result<Graph> {
        match self {
            CoreTag::Complete(n) => Ok(Graph::complete(*n as usize)),
            CoreTag::Circulant { n, d } => Ok(crate::families::g_pr(*n, *d)?.0),
            CoreTag::SelfCore => Ok(host.clone()),
            CoreTag::Subgraph { .. } => {
                Err(Error::Unsupported("no canonical graph for an unrecognised core".into()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreMethod {
    Brute,
    Classified,
    Certificate,
}

impl fmt::Display for CoreMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreMethod::Brute => write!(f, "brute"),
            CoreMethod::Classified => write!(f, "classified"),
            CoreMethod::Certificate => write!(f, "certificate"),
        }
    }
}

/// A computed core: the induced subgraph, a retraction onto it (as a map of
/// the host graph into itself), and how it was obtained.
#[derive(Debug, Clone)]
pub struct CoreResult {
    /// Host-graph vertex ids of the core, sorted ascending.
    pub core_vertices: Vec<usize>,
    pub core: Graph,
    /// Host -> host map with image inside `core_vertices`, identity on them.
    pub retraction: Homomorphism,
    pub method: CoreMethod,
    pub tag: CoreTag,
}

impl CoreResult {
    fn assemble(
        host: &Graph,
        mut core_vertices: Vec<usize>,
        retraction_map: Vec<usize>,
        method: CoreMethod,
        tag: Option<CoreTag>,
    ) -> Result<CoreResult> {
        core_vertices.sort_unstable();
        let core = host.induced_subgraph(&core_vertices);
        let retraction = Homomorphism::new(host, host, retraction_map)?;
        let result = CoreResult {
            tag: tag.unwrap_or_else(|| identify_core(&core, host.n())),
            core_vertices,
            core,
            retraction,
            method,
        };
        result.validate(host)?;
        Ok(result)
    }

    /// Checks the retraction fixes the core pointwise and lands inside it.
    pub fn validate(&self, host: &Graph) -> Result<()> {
        self.retraction.validate(host, host)?;
        for &v in &self.core_vertices {
            if self.retraction.map[v] != v {
                return Err(Error::InvalidParameter(format!(
                    "retraction moves core vertex {v}"
                )));
            }
        }
        if let Some(&bad) = self
            .retraction
            .map
            .iter()
            .find(|&&img| self.core_vertices.binary_search(&img).is_err())
        {
            return Err(Error::InvalidParameter(format!(
                "retraction image {bad} lies outside the core"
            )));
        }
        Ok(())
    }

    /// Fibre sizes indexed by core vertex (host ids).
    pub fn fibre_sizes(&self) -> Vec<usize> {
        self.core_vertices
            .iter()
            .map(|&c| self.retraction.map.iter().filter(|&&img| img == c).count())
            .collect()
    }
}

/// Attach a symbolic name to a computed core: complete, circulant of prime
/// order (the symmetric candidates there are determined by valency), self,
/// or unrecognised.
fn identify_core(core: &Graph, host_n: usize) -> CoreTag {
    let k = core.n();
    if k == host_n {
        return CoreTag::SelfCore;
    }
    if core.edge_count() == k * (k - 1) / 2 {
        return CoreTag::Complete(k as u64);
    }
    if crate::algebra::is_prime(k as u64) {
        if let Some(val) = core.regular_valency() {
            if val >= 1 && (k - 1) % val == 0 {
                if let Ok((g, _, _)) = crate::families::g_pr(k as u64, val as u64) {
                    if crate::graph::is_isomorphic(core, &g).is_some() {
                        return CoreTag::Circulant { n: k as u64, d: val as u64 };
                    }
                }
            }
        }
    }
    CoreTag::Subgraph { order: k as u64 }
}

/// Exhaustive core computation. Bipartite graphs with an edge collapse to
/// K_2 immediately. Otherwise candidate retract orders run ascending — the
/// divisors of |V| when `vt` asserts vertex-transitivity, every order below
/// |V| otherwise — and induced candidate subgraphs are scanned up to the
/// orbit equivalence induced by `gens`. The first order admitting a retract
/// yields the core; if none does, the graph is its own core. Budget
/// exhaustion is an error, never a SELF verdict.
pub fn core_bruteforce(
    g: &Graph,
    vt: bool,
    gens: Option<&GeneratorSet>,
    budget: &SearchBudget,
) -> Result<CoreResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph has no core".into()));
    }
    if g.edge_count() == 0 {
        let map = vec![0usize; n];
        return CoreResult::assemble(g, vec![0], map, CoreMethod::Brute, Some(CoreTag::Complete(1)));
    }
    if let Bipartiteness::Bipartite(coloring) = g.bipartition() {
        let (u, v) = g.edges()[0];
        let map: Vec<usize> =
            (0..n).map(|w| if coloring[w] == coloring[u] { u } else { v }).collect();
        return CoreResult::assemble(
            g,
            vec![u, v],
            map,
            CoreMethod::Brute,
            Some(CoreTag::Complete(2)),
        );
    }

    let orders: Vec<usize> = if vt {
        (3..n).filter(|d| n % d == 0).collect()
    } else {
        if n > scan::GENERIC_LIMIT {
            return Err(Error::Unsupported(format!(
                "exhaustive retract scan without a vertex-transitivity assertion is limited to {} vertices, got {n}",
                scan::GENERIC_LIMIT
            )));
        }
        (3..n).collect()
    };

    let outcome = scan::scan_for_retract(g, &orders, vt, gens, budget);
    if let Some((subset, hom)) = outcome.retract {
        // hom maps host vertices to positions within `subset`
        let map: Vec<usize> = hom.map.iter().map(|&i| subset[i]).collect();
        return CoreResult::assemble(g, subset, map, CoreMethod::Brute, None);
    }
    if outcome.exhausted {
        return Err(Error::BudgetExhausted(
            "retract scan did not finish; core undetermined".into(),
        ));
    }
    let identity: Vec<usize> = (0..n).collect();
    CoreResult::assemble(g, identity.clone(), identity, CoreMethod::Brute, Some(CoreTag::SelfCore))
}

/// True iff the graph has no proper retract. With `divisors_hint` the caller
/// asserts vertex-transitivity and the scan is restricted to those orders.
pub fn is_core(
    g: &Graph,
    divisors_hint: Option<&[u64]>,
    gens: Option<&GeneratorSet>,
    budget: &SearchBudget,
) -> Result<bool> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    if g.edge_count() == 0 {
        return Ok(n == 1);
    }
    if g.is_bipartite() {
        return Ok(n == 2);
    }
    let (orders, vt): (Vec<usize>, bool) = match divisors_hint {
        Some(hint) => {
            (hint.iter().map(|&d| d as usize).filter(|&d| d >= 3 && d < n).collect(), true)
        }
        None => {
            if n > scan::GENERIC_LIMIT {
                return Err(Error::Unsupported(format!(
                    "is_core without a divisor hint is limited to {} vertices, got {n}",
                    scan::GENERIC_LIMIT
                )));
            }
            ((3..n).collect(), false)
        }
    };
    let outcome = scan::scan_for_retract(g, &orders, vt, gens, budget);
    if outcome.retract.is_some() {
        return Ok(false);
    }
    if outcome.exhausted {
        return Err(Error::BudgetExhausted("retract scan did not finish".into()));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::solvers::SearchBudget;

    #[test]
    fn bipartite_graphs_collapse_to_k2() {
        for (q, r) in [(5u64, 1u64), (5, 2), (7, 3), (11, 5), (13, 12)] {
            let (g, _, _) = families::g_2q_r(q, r).unwrap();
            let core = core_bruteforce(&g, true, None, &SearchBudget::default()).unwrap();
            assert_eq!(core.tag, CoreTag::Complete(2));
            assert_eq!(core.core.n(), 2);
            let sizes = core.fibre_sizes();
            assert_eq!(sizes.iter().sum::<usize>(), g.n());
        }
    }

    #[test]
    fn odd_cycles_are_cores() {
        let c5 = Graph::cycle(5);
        let core = core_bruteforce(&c5, true, None, &SearchBudget::default()).unwrap();
        assert_eq!(core.tag, CoreTag::SelfCore);
        assert!(is_core(&c5, Some(&[1, 5]), None, &SearchBudget::default()).unwrap());
        assert!(is_core(&Graph::complete(6), None, None, &SearchBudget::default()).unwrap());
    }

    #[test]
    fn complete_multipartite_core_is_complete() {
        // K_3[K̄_4] has core K_3
        let g = Graph::complete(3).lexicographic_product(&Graph::empty(4));
        let core = core_bruteforce(&g, true, None, &SearchBudget::default()).unwrap();
        assert_eq!(core.tag, CoreTag::Complete(3));
        let sizes = core.fibre_sizes();
        assert!(sizes.iter().all(|&s| s == 4));
    }

    #[test]
    fn vertex_transitive_core_order_divides() {
        let (g, _, gens) = families::g_pq_rsu(3, 5, 2, 2, 1).unwrap();
        let core = core_bruteforce(&g, true, Some(&gens), &SearchBudget::default()).unwrap();
        assert_eq!(g.n() % core.core.n(), 0);
        let sizes = core.fibre_sizes();
        assert!(sizes.windows(2).all(|w| w[0] == w[1]), "fibres must be uniform");
    }

    #[test]
    fn generic_small_graph_cores() {
        // a path retracts onto an edge
        let mut p4 = Graph::empty(4);
        p4.add_edge(0, 1);
        p4.add_edge(1, 2);
        p4.add_edge(2, 3);
        let core = core_bruteforce(&p4, false, None, &SearchBudget::default()).unwrap();
        assert_eq!(core.tag, CoreTag::Complete(2));
        // triangle with a pendant vertex retracts onto the triangle
        let mut g = Graph::empty(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g.add_edge(2, 3);
        let core = core_bruteforce(&g, false, None, &SearchBudget::default()).unwrap();
        assert_eq!(core.tag, CoreTag::Complete(3));
        assert!(!is_core(&g, None, None, &SearchBudget::default()).unwrap());
    }

    #[test]
    fn core_idempotence() {
        let (g, _, gens) = families::g_pq_rsu(3, 5, 1, 2, 4).unwrap();
        let core = core_bruteforce(&g, true, Some(&gens), &SearchBudget::default()).unwrap();
        let again = core_bruteforce(&core.core, false, None, &SearchBudget::default()).unwrap();
        assert_eq!(again.tag, CoreTag::SelfCore);
        assert!(crate::graph::is_isomorphic(&core.core, &again.core).is_some());
    }

    #[test]
    fn budget_exhaustion_is_an_error_not_self() {
        let (g, _, gens) = families::ms_graph(2, 3, &[], &[0]).unwrap();
        let tiny = SearchBudget::new(1, std::time::Duration::from_millis(1));
        match core_bruteforce(&g, true, Some(&gens), &tiny) {
            Err(Error::BudgetExhausted(_)) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }
}

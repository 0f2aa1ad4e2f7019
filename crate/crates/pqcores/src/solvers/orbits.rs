//! Transitivity witnesses under a generated permutation group: BFS closure of
//! one vertex orbit and one arc orbit.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{arc_orbit, is_permutation, point_orbit, Perm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitivityReport {
    pub vertex_transitive: bool,
    pub arc_transitive: bool,
}

/// Validates every generator as an automorphism (naming the offender on
/// failure), then closes one vertex orbit and one arc orbit under the
/// generated group.
pub fn orbit_transitivity_check(g: &Graph, gens: &[Perm]) -> Result<TransitivityReport> {
    for (index, p) in gens.iter().enumerate() {
        if !is_permutation(p, g.n()) {
            return Err(Error::InvalidParameter(format!(
                "generator {index} is not a permutation of the vertex set"
            )));
        }
        for (u, v) in g.edges() {
            if !g.has_edge(p[u], p[v]) {
                return Err(Error::NotAutomorphism { index, u, v });
            }
        }
    }
    if g.n() == 0 {
        return Ok(TransitivityReport { vertex_transitive: true, arc_transitive: true });
    }
    let vertex_transitive = point_orbit(gens, 0).len() == g.n();
    let edges = g.edges();
    let arc_transitive = match edges.first() {
        None => true,
        Some(&(u, v)) => arc_orbit(gens, (u, v)).len() == 2 * edges.len(),
    };
    Ok(TransitivityReport { vertex_transitive, arc_transitive })
}

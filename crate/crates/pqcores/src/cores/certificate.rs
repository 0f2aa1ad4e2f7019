//! Certificate validation of a claimed core C: exhibit an induced copy of C
//! in G, a homomorphism G -> C, and C being a core for free (complete, or
//! vertex-transitive of prime order). The two homomorphisms make G and C
//! homomorphically equivalent, so the core of G is the core of C, which is
//! C itself.

use super::{CoreMethod, CoreResult, CoreTag};
use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::inverse;
use crate::solvers::{find_embedding, find_homomorphism, HomSearch, SearchBudget};

/// Validate `claimed` as the core of `g` and assemble the retraction. The
/// claim must be a complete graph or a circulant of prime order.
pub fn core_certificate(g: &Graph, claimed: &CoreTag, budget: &SearchBudget) -> Result<CoreResult> {
    let core_graph = match claimed {
        CoreTag::Complete(k) => {
            if *k < 1 {
                return Err(Error::InvalidParameter("empty claimed core".into()));
            }
            Graph::complete(*k as usize)
        }
        CoreTag::Circulant { n, d } => {
            if !is_prime(*n) {
                return Err(Error::CertificateRejected {
                    leg: "claim-shape",
                    reason: format!("circulant claim G({n},{d}) needs prime order"),
                });
            }
            crate::families::g_pr(*n, *d)?.0
        }
        CoreTag::SelfCore | CoreTag::Subgraph { .. } => {
            return Err(Error::CertificateRejected {
                leg: "claim-shape",
                reason: "certificates cover complete or prime-order circulant claims only".into(),
            });
        }
    };

    // leg (i): an induced copy of the claimed core inside g
    let embedding = match find_embedding(&core_graph, g, true, budget) {
        HomSearch::Found(h) => h,
        HomSearch::None => {
            return Err(Error::CertificateRejected {
                leg: "induced-copy",
                reason: format!("no induced copy of {claimed} found"),
            })
        }
        HomSearch::Indeterminate => {
            return Err(Error::BudgetExhausted("induced-copy search".into()))
        }
    };

    // leg (ii): a homomorphism g -> claimed core
    let hom = match find_homomorphism(g, &core_graph, budget) {
        HomSearch::Found(h) => h,
        HomSearch::None => {
            return Err(Error::CertificateRejected {
                leg: "homomorphism",
                reason: format!("no homomorphism onto {claimed}"),
            })
        }
        HomSearch::Indeterminate => {
            return Err(Error::BudgetExhausted("homomorphism search".into()))
        }
    };

    // leg (iii) holds by the claim shape: complete graphs and
    // vertex-transitive graphs of prime order are cores.

    // The composite ψ∘φ restricted to the copy is an endomorphism of a core,
    // hence an automorphism σ; follow with σ^{-1} to fix the copy pointwise.
    let copy = &embedding.map; // core vertex i ↦ host vertex copy[i]
    let sigma: Vec<usize> = (0..core_graph.n()).map(|i| hom.map[copy[i]]).collect();
    let mut check = sigma.clone();
    check.sort_unstable();
    check.dedup();
    if check.len() != core_graph.n() {
        return Err(Error::CertificateRejected {
            leg: "retraction-assembly",
            reason: "claimed core admits a non-surjective endomorphism, so it is not a core".into(),
        });
    }
    let sigma_inv = inverse(&sigma);
    let retraction_map: Vec<usize> =
        (0..g.n()).map(|v| copy[sigma_inv[hom.map[v]]]).collect();

    CoreResult::assemble(
        g,
        copy.clone(),
        retraction_map,
        CoreMethod::Certificate,
        Some(claimed.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn doubled_circulant_certificate() {
        let (g, _, _) = families::g_2_q_r(5, 2).unwrap();
        let claim = CoreTag::Circulant { n: 5, d: 2 };
        let res = core_certificate(&g, &claim, &SearchBudget::default()).unwrap();
        assert_eq!(res.tag, claim);
        assert_eq!(res.core.n(), 5);
        res.validate(&g).unwrap();
    }

    #[test]
    fn complete_core_certificate() {
        // K_3[K̄_5] has core K_3
        let (g, _) = families::lex_family(3, 2, 5, false).unwrap();
        let res = core_certificate(&g, &CoreTag::Complete(3), &SearchBudget::default()).unwrap();
        assert_eq!(res.core.n(), 3);
        assert!(res.fibre_sizes().iter().all(|&s| s == 5));
    }

    #[test]
    fn wrong_claims_are_rejected_with_the_failing_leg() {
        // bipartite graph: no triangle, so a K_3 claim dies at the copy leg
        let (g, _, _) = families::g_2q_r(5, 2).unwrap();
        match core_certificate(&g, &CoreTag::Complete(3), &SearchBudget::default()) {
            Err(Error::CertificateRejected { leg: "induced-copy", .. }) => {}
            other => panic!("expected induced-copy rejection, got {other:?}"),
        }
        // C_5 contains an edge (= K_2 copy) but admits no 2-colouring
        match core_certificate(&Graph::cycle(5), &CoreTag::Complete(2), &SearchBudget::default()) {
            Err(Error::CertificateRejected { leg: "homomorphism", .. }) => {}
            other => panic!("expected homomorphism rejection, got {other:?}"),
        }
        // SELF claims are outside the certificate's scope
        assert!(matches!(
            core_certificate(&Graph::cycle(5), &CoreTag::SelfCore, &SearchBudget::default()),
            Err(Error::CertificateRejected { leg: "claim-shape", .. })
        ));
    }
}

//! Cross-validation of the classification against an independent
//! computation: brute force up to the cutoff, homomorphism-equivalence
//! certificates above it, proof replay for the large MS self-core verdicts,
//! and invariant-based elimination of prime-order core candidates for the
//! remaining large self-core claims.

use super::{
    classify::classify_with_graph, core_bruteforce, core_certificate, replay_ms_proof, CoreResult,
    CoreTag, PredictedCore, Prediction,
};
use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::{is_isomorphic, Graph};
use crate::solvers::{
    chromatic_number, clique_number, find_homomorphism, ColoringResult, HomSearch, SearchBudget,
    ValueResult,
};

/// Brute-force ground truth is used up to this order; beyond it the
/// validation switches to certificates and bound replay.
pub const BRUTE_CUTOFF: usize = 35;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
    Unresolved,
}

impl std::fmt::Display for Agreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Agreement::Agree => write!(f, "AGREE"),
            Agreement::Disagree => write!(f, "DISAGREE"),
            Agreement::Unresolved => write!(f, "UNRESOLVED"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub spec: FamilySpec,
    pub predicted: Prediction,
    pub computed: Option<CoreResult>,
    pub agreement: Agreement,
    pub notes: Vec<String>,
}

/// Run the classifier and an independent validation, and compare up to
/// isomorphism.
pub fn cross_validate(spec: &FamilySpec, budget: &SearchBudget) -> Result<Verdict> {
    let (predicted, constructed) = classify_with_graph(spec, budget)?;
    let g = &constructed.graph;
    let mut notes = Vec::new();

    let tag = match &predicted.tag {
        PredictedCore::Unresolved => {
            notes.push("classification unresolved within budget".into());
            return Ok(Verdict {
                spec: spec.clone(),
                predicted,
                computed: None,
                agreement: Agreement::Unresolved,
                notes,
            });
        }
        PredictedCore::Tag(t) => t.clone(),
    };

    if g.n() <= BRUTE_CUTOFF {
        return match core_bruteforce(g, true, constructed.gens.as_ref(), budget) {
            Ok(computed) => {
                let agreement = compare_to_prediction(g, &tag, &computed, &mut notes)?;
                Ok(Verdict { spec: spec.clone(), predicted, computed: Some(computed), agreement, notes })
            }
            Err(Error::BudgetExhausted(msg)) => {
                notes.push(format!("brute force over budget: {msg}"));
                Ok(Verdict {
                    spec: spec.clone(),
                    predicted,
                    computed: None,
                    agreement: Agreement::Unresolved,
                    notes,
                })
            }
            Err(e) => Err(e),
        };
    }

    match &tag {
        CoreTag::Complete(_) | CoreTag::Circulant { .. } => {
            match core_certificate(g, &tag, budget) {
                Ok(computed) => {
                    notes.push("certificate validated".into());
                    Ok(Verdict {
                        spec: spec.clone(),
                        predicted,
                        computed: Some(computed),
                        agreement: Agreement::Agree,
                        notes,
                    })
                }
                Err(Error::CertificateRejected { leg, reason }) => {
                    notes.push(format!("certificate rejected at {leg}: {reason}"));
                    Ok(Verdict {
                        spec: spec.clone(),
                        predicted,
                        computed: None,
                        agreement: Agreement::Disagree,
                        notes,
                    })
                }
                Err(Error::BudgetExhausted(msg)) => {
                    notes.push(format!("certificate over budget: {msg}"));
                    Ok(Verdict {
                        spec: spec.clone(),
                        predicted,
                        computed: None,
                        agreement: Agreement::Unresolved,
                        notes,
                    })
                }
                Err(e) => Err(e),
            }
        }
        CoreTag::SelfCore => {
            if matches!(spec, FamilySpec::Ms { .. }) {
                let replay = replay_ms_proof(spec, budget)?;
                notes.push(format!("proof replay case {}", replay.case));
                for c in &replay.checks {
                    notes.push(format!("{}: {} [{:?}]", c.name, c.detail, c.outcome));
                }
                let agreement = match replay.forced {
                    Some(CoreTag::SelfCore) => Agreement::Agree,
                    Some(other) => {
                        notes.push(format!("replay forces {other}, classifier said SELF"));
                        Agreement::Disagree
                    }
                    None => Agreement::Unresolved,
                };
                Ok(Verdict { spec: spec.clone(), predicted, computed: None, agreement, notes })
            } else {
                let elim = eliminate_prime_order_cores(g, constructed.gens.is_some(), budget)?;
                notes.extend(elim.notes);
                let agreement = if elim.eliminated_all {
                    Agreement::Agree
                } else if let Some(found) = elim.equivalent_candidate {
                    notes.push(format!("elimination found the core {found}, classifier said SELF"));
                    Agreement::Disagree
                } else {
                    Agreement::Unresolved
                };
                Ok(Verdict { spec: spec.clone(), predicted, computed: None, agreement, notes })
            }
        }
        CoreTag::Subgraph { .. } => {
            notes.push("unrecognised predicted core cannot be validated".into());
            Ok(Verdict {
                spec: spec.clone(),
                predicted,
                computed: None,
                agreement: Agreement::Unresolved,
                notes,
            })
        }
    }
}

/// Compare a computed core against a predicted tag, up to isomorphism.
pub(crate) fn compare_to_prediction(
    g: &Graph,
    tag: &CoreTag,
    computed: &CoreResult,
    notes: &mut Vec<String>,
) -> Result<Agreement> {
    let expected = match tag.realize(g) {
        Ok(e) => e,
        Err(_) => {
            notes.push("predicted tag has no canonical graph".into());
            return Ok(Agreement::Unresolved);
        }
    };
    if expected.n() != computed.core.n() {
        notes.push(format!(
            "predicted core order {} differs from computed {}",
            expected.n(),
            computed.core.n()
        ));
        return Ok(Agreement::Disagree);
    }
    if is_isomorphic(&computed.core, &expected).is_some() {
        Ok(Agreement::Agree)
    } else {
        notes.push(format!(
            "computed core of order {} is not isomorphic to predicted {tag}",
            computed.core.n()
        ));
        Ok(Agreement::Disagree)
    }
}

#[derive(Debug, Clone)]
pub struct EliminationReport {
    pub eliminated_all: bool,
    /// A candidate proven homomorphically equivalent to the graph — the
    /// actual core, contradicting a SELF claim.
    pub equivalent_candidate: Option<CoreTag>,
    pub notes: Vec<String>,
}

/// For a connected non-bipartite vertex-transitive graph, rule out every
/// proper core order. The core of such a graph is connected, its order
/// divides |V|, and when that order is a prime n the core is a symmetric
/// graph of prime order, i.e. one of the circulants G(n,d) with d an even
/// divisor of n-1. Candidates are first screened by invariants (valency
/// divisibility when arc-transitivity is witnessed, clique number, a
/// colouring comparison, the independence ratio); a survivor is settled by
/// the two-way homomorphism test, which either eliminates it or proves it
/// homomorphically equivalent to the graph, i.e. proves it is the core.
pub fn eliminate_prime_order_cores(
    g: &Graph,
    symmetric: bool,
    budget: &SearchBudget,
) -> Result<EliminationReport> {
    let n = g.n() as u64;
    let mut notes = Vec::new();
    let inconclusive = |notes: Vec<String>| EliminationReport {
        eliminated_all: false,
        equivalent_candidate: None,
        notes,
    };
    let divisors: Vec<u64> = (2..n).filter(|d| n % d == 0).collect();
    if divisors.iter().any(|&d| !is_prime(d)) {
        notes.push("a proper divisor is composite; elimination only covers prime orders".into());
        return Ok(inconclusive(notes));
    }
    let omega_g = match clique_number(g, budget) {
        ValueResult::Exact { value, .. } => value as u64,
        ValueResult::Indeterminate { .. } => {
            notes.push("clique number over budget".into());
            return Ok(inconclusive(notes));
        }
    };
    notes.push(format!("omega = {omega_g}"));
    let val_g = g.regular_valency().map(|v| v as u64);
    let mut alpha_g: Option<u64> = None;

    let mut eliminated_all = true;
    for d in divisors {
        for e in (2..d).step_by(2).filter(|e| (d - 1) % e == 0).chain(std::iter::once(d - 1)) {
            if e % 2 != 0 {
                continue;
            }
            let (cand, _, _) = crate::families::g_pr(d, e)?;
            let name = format!("G({d},{e})");
            if symmetric {
                if let Some(v) = val_g {
                    if v % e != 0 {
                        notes.push(format!("{name}: valency {e} does not divide {v}"));
                        continue;
                    }
                }
            }
            let omega_c = match clique_number(&cand, budget) {
                ValueResult::Exact { value, .. } => value as u64,
                ValueResult::Indeterminate { .. } => {
                    notes.push(format!("{name}: clique number over budget"));
                    eliminated_all = false;
                    continue;
                }
            };
            if omega_c != omega_g {
                notes.push(format!("{name}: omega {omega_c} != {omega_g}"));
                continue;
            }
            // colouring comparison: a colouring of g strictly below the
            // candidate's chromatic number rules the candidate out
            let chi_c = match chromatic_number(&cand, budget) {
                ColoringResult::Exact { value, .. } => value as u64,
                ColoringResult::Indeterminate { .. } => {
                    notes.push(format!("{name}: chromatic number over budget"));
                    eliminated_all = false;
                    continue;
                }
            };
            if chi_c >= 2 {
                match find_homomorphism(g, &Graph::complete(chi_c as usize - 1), budget) {
                    HomSearch::Found(_) => {
                        notes.push(format!(
                            "{name}: graph is {}-colourable, candidate needs {chi_c}",
                            chi_c - 1
                        ));
                        continue;
                    }
                    HomSearch::Indeterminate => {
                        notes.push(format!("{name}: colouring search over budget"));
                        eliminated_all = false;
                        continue;
                    }
                    HomSearch::None => {}
                }
            }
            // independence ratio: alpha scales with the fibre size
            if alpha_g.is_none() {
                alpha_g = match clique_number(&g.complement(), budget) {
                    ValueResult::Exact { value, .. } => Some(value as u64),
                    ValueResult::Indeterminate { .. } => None,
                };
            }
            if let Some(ag) = alpha_g {
                let alpha_c = match clique_number(&cand.complement(), budget) {
                    ValueResult::Exact { value, .. } => value as u64,
                    ValueResult::Indeterminate { .. } => {
                        notes.push(format!("{name}: candidate independence over budget"));
                        eliminated_all = false;
                        continue;
                    }
                };
                if alpha_c * (n / d) != ag {
                    notes.push(format!("{name}: independence ratio {alpha_c}*{} != {ag}", n / d));
                    continue;
                }
            }
            // decisive leg: the candidate is the core iff maps exist both
            // ways (it is a core itself, being vertex-transitive of prime
            // order)
            match find_homomorphism(&cand, g, budget) {
                HomSearch::None => {
                    notes.push(format!("{name}: no homomorphism into the graph"));
                    continue;
                }
                HomSearch::Indeterminate => {
                    notes.push(format!("{name}: inward homomorphism over budget"));
                    eliminated_all = false;
                    continue;
                }
                HomSearch::Found(_) => {}
            }
            match find_homomorphism(g, &cand, budget) {
                HomSearch::None => {
                    notes.push(format!("{name}: no homomorphism onto the candidate"));
                    continue;
                }
                HomSearch::Indeterminate => {
                    notes.push(format!("{name}: outward homomorphism over budget"));
                    eliminated_all = false;
                }
                HomSearch::Found(_) => {
                    notes.push(format!("{name}: homomorphically equivalent — this is the core"));
                    return Ok(EliminationReport {
                        eliminated_all: false,
                        equivalent_candidate: Some(if e == d - 1 {
                            CoreTag::Complete(d)
                        } else {
                            CoreTag::Circulant { n: d, d: e }
                        }),
                        notes,
                    });
                }
            }
        }
    }
    Ok(EliminationReport { eliminated_all, equivalent_candidate: None, notes })
}

/// JSON encoding of a verdict: spec, prediction with its trace, the computed
/// side, and the agreement flag.
pub fn verdict_to_json(v: &Verdict) -> serde_json::Value {
    use serde_json::json;
    let trace: Vec<serde_json::Value> = v
        .predicted
        .trace
        .iter()
        .map(|t| json!({ "condition": t.condition, "value": t.value, "source": t.source }))
        .collect();
    let computed = v.computed.as_ref().map(|c| {
        json!({
            "tag": c.tag.to_string(),
            "method": c.method.to_string(),
            "order": c.core.n(),
            "vertices": c.core_vertices,
        })
    });
    json!({
        "spec": v.spec.to_string(),
        "predicted": v.predicted.tag.to_string(),
        "trace": trace,
        "computed": computed,
        "agreement": v.agreement.to_string(),
        "notes": v.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::parse_spec;

    fn validate(s: &str) -> Verdict {
        cross_validate(&parse_spec(s).unwrap(), &SearchBudget::default()).unwrap()
    }

    #[test]
    fn small_families_agree() {
        for s in [
            "g2qr:5,2",
            "g2_q_r:5,2",
            "g3qr:5,2",
            "gpqrsu:3,5,1,2,4",
            "gpqrsu:3,5,4,2,1",
            "ms:2,3,,0",
            "ms:2,3,,1,2",
            "lex:gpr:3,2,q=5",
            "inc:h11",
        ] {
            let v = validate(s);
            assert_eq!(v.agreement, Agreement::Agree, "{s}: {:?}", v.notes);
        }
    }

    #[test]
    fn injected_wrong_claim_disagrees() {
        // negative control: compare a correct brute-force core against a
        // deliberately wrong prediction
        let spec = parse_spec("ms:2,3,,1,2").unwrap();
        let constructed = crate::families::construct(&spec).unwrap();
        let computed = core_bruteforce(
            &constructed.graph,
            true,
            constructed.gens.as_ref(),
            &SearchBudget::default(),
        )
        .unwrap();
        let mut notes = Vec::new();
        let wrong = CoreTag::Complete(3);
        let agreement =
            compare_to_prediction(&constructed.graph, &wrong, &computed, &mut notes).unwrap();
        assert_eq!(agreement, Agreement::Disagree);
        assert!(!notes.is_empty());
    }

    #[test]
    fn verdict_serialization_shape() {
        let v = validate("g2qr:5,2");
        let json = verdict_to_json(&v);
        assert_eq!(json["agreement"], "AGREE");
        assert_eq!(json["predicted"], "K_2");
        assert!(json["trace"].as_array().is_some());
        assert!(json["computed"]["order"].as_u64().unwrap() == 2);
    }

    #[test]
    fn elimination_on_small_self_core() {
        // the order-15 singleton MS graph is a core; every prime-order
        // candidate dies on an invariant mismatch
        let constructed = crate::families::construct(&parse_spec("ms:2,3,,0").unwrap()).unwrap();
        let report =
            eliminate_prime_order_cores(&constructed.graph, true, &SearchBudget::default())
                .unwrap();
        assert!(report.eliminated_all, "{:?}", report.notes);
    }
}

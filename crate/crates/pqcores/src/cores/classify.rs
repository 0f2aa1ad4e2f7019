//! The classification engine: predicts the core of every catalogued family
//! instance by replaying the decision rules the classification rests on,
//! recording each decisive condition (and the solver witnesses behind it)
//! in a trace. Solver-dependent conditions that run out of budget propagate
//! as an unresolved prediction, never as a guess.

use super::CoreTag;
use crate::algebra::{choose_t, subgroup};
use crate::error::{Error, Result};
use crate::families::{construct, FamilySpec};
use crate::solvers::{
    chromatic_number, clique_number, find_constrained_homomorphism, find_homomorphism,
    ColoringResult, HomConstraint, HomSearch, SearchBudget, ValueResult,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredictedCore {
    Tag(CoreTag),
    /// A needed solver call was indeterminate.
    Unresolved,
}

impl std::fmt::Display for PredictedCore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PredictedCore::Tag(t) => write!(f, "{t}"),
            PredictedCore::Unresolved => write!(f, "UNRESOLVED"),
        }
    }
}

/// One decisive condition: what was asked, what came out, which rule used it.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub condition: String,
    pub value: String,
    pub source: String,
}

#[derive(Debug, Clone)]
pub struct Prediction {
    pub tag: PredictedCore,
    pub trace: Vec<TraceEntry>,
}

impl Prediction {
    fn resolved(tag: CoreTag, trace: Vec<TraceEntry>) -> Prediction {
        Prediction { tag: PredictedCore::Tag(tag), trace }
    }

    fn unresolved(mut trace: Vec<TraceEntry>, what: &str) -> Prediction {
        trace.push(TraceEntry {
            condition: what.to_string(),
            value: "INDETERMINATE".into(),
            source: "budget".into(),
        });
        Prediction { tag: PredictedCore::Unresolved, trace }
    }
}

fn entry(condition: impl Into<String>, value: impl ToString, source: &str) -> TraceEntry {
    TraceEntry { condition: condition.into(), value: value.to_string(), source: source.into() }
}

/// Core tag of the circulant G(n,d), collapsing the complete case.
fn circulant_tag(n: u64, d: u64) -> CoreTag {
    if d == n - 1 {
        CoreTag::Complete(n)
    } else {
        CoreTag::Circulant { n, d }
    }
}

/// Predict the core of a classified family instance.
pub fn classify_core(spec: &FamilySpec, budget: &SearchBudget) -> Result<Prediction> {
    match spec {
        FamilySpec::Gpr { p, r } => {
            // vertex-transitive of prime order, hence a core
            let trace = vec![entry("order", format!("{p} (prime)"), "prime-order-core")];
            let _ = r;
            Ok(Prediction::resolved(CoreTag::SelfCore, trace))
        }
        FamilySpec::G2q { q, r } => {
            let trace = vec![entry(
                "bipartite with an edge",
                format!("true (G(2*{q},{r}))"),
                "bipartite-core",
            )];
            Ok(Prediction::resolved(CoreTag::Complete(2), trace))
        }
        FamilySpec::Inc { .. } => {
            let trace =
                vec![entry("bipartite with an edge", "true (design graph)", "bipartite-core")];
            Ok(Prediction::resolved(CoreTag::Complete(2), trace))
        }
        FamilySpec::G2Qr { q, r } => {
            let trace = vec![entry(
                "shape",
                format!("G(2,{q},{r}) is G({q},{r}) blown up by empty 2-fibres"),
                "lex-base-collapse",
            )];
            Ok(Prediction::resolved(circulant_tag(*q, *r), trace))
        }
        FamilySpec::G3q { q, r } => {
            let u = if r % 2 == 0 { *r } else { 2 * r };
            let ts = choose_t(3, *q, *r, 2)?;
            let (t, tu) = *ts
                .iter()
                .find(|&&(_, tu)| tu == u)
                .ok_or_else(|| Error::InvalidParameter("no twist with the expected u".into()))?;
            let mut trace = vec![entry(
                "tri-layer reduction",
                format!("G(3*{q},{r}) equals the twisted product with s=2, u={u}, t={t}"),
                "tri-layer-to-twisted",
            )];
            let inner = classify_core(
                &FamilySpec::Gpqrsu { p: 3, q: *q, r: *r, s: 2, t, u: tu },
                budget,
            )?;
            trace.extend(inner.trace);
            Ok(Prediction { tag: inner.tag, trace })
        }
        FamilySpec::Lex { p, r, fiber, deleted: false } => {
            if *fiber == 1 {
                return Err(Error::Unsupported("identity fiber is not classified".into()));
            }
            let trace = vec![entry(
                "shape",
                format!("G({p},{r})[empty_{fiber}] collapses onto its base"),
                "lex-base-collapse",
            )];
            Ok(Prediction::resolved(circulant_tag(*p, *r), trace))
        }
        FamilySpec::Lex { p, r, fiber, deleted: true } => classify_deleted_lex(*p, *r, *fiber, budget),
        FamilySpec::Gpqrsu { p, q, r, s, t, u } => classify_twisted(*p, *q, *r, *s, *t, *u, budget),
        FamilySpec::Ms { a, m, s, u } => classify_ms(*a, *m, s, u),
    }
}

/// Deleted lexicographic products. With the base on the smaller prime the
/// core is the base. With the base on the larger prime the branch is decided
/// by the chromatic and clique numbers of the base circulant: the graph
/// equals base × K_fiber, so a fiber-colouring of the base collapses it one
/// way, a fiber-clique the other way, and otherwise the graph is a core.
fn classify_deleted_lex(b: u64, r: u64, fiber: u64, budget: &SearchBudget) -> Result<Prediction> {
    let mut trace = Vec::new();
    if b < fiber {
        trace.push(entry(
            "base order vs fiber",
            format!("{b} < {fiber}: complete fiber factor absorbs the base"),
            "deleted-lex-small-base",
        ));
        return Ok(Prediction::resolved(circulant_tag(b, r), trace));
    }
    let (base, _, _) = crate::families::g_pr(b, r)?;
    let p = fiber;
    let chi = chromatic_number(&base, budget);
    let chi_val = match &chi {
        ColoringResult::Exact { value, .. } => *value as u64,
        ColoringResult::Indeterminate { .. } => {
            return Ok(Prediction::unresolved(trace, &format!("chi(G({b},{r}))")))
        }
    };
    trace.push(entry(format!("chi(G({b},{r}))"), chi_val, "deleted-lex-branch"));
    if chi_val <= p {
        trace.push(entry("branch", format!("chi <= {p}: base survives"), "deleted-lex-chi"));
        return Ok(Prediction::resolved(circulant_tag(b, r), trace));
    }
    let omega = clique_number(&base, budget);
    let omega_val = match &omega {
        ValueResult::Exact { value, .. } => *value as u64,
        ValueResult::Indeterminate { .. } => {
            return Ok(Prediction::unresolved(trace, &format!("omega(G({b},{r}))")))
        }
    };
    trace.push(entry(format!("omega(G({b},{r}))"), omega_val, "deleted-lex-branch"));
    if omega_val >= p {
        trace.push(entry("branch", format!("omega >= {p}: complete core"), "deleted-lex-omega"));
        return Ok(Prediction::resolved(CoreTag::Complete(p), trace));
    }
    trace.push(entry(
        "branch",
        format!("chi > {p} > omega: the graph is a core"),
        "deleted-lex-self",
    ));
    Ok(Prediction::resolved(CoreTag::SelfCore, trace))
}

/// Twisted products G(pq; r,s,u). With the twist inside H(q,r) the graph is
/// the categorical product of its two circulant factors and plain
/// homomorphisms decide the core; otherwise the homomorphisms must respect
/// the arc classes.
fn classify_twisted(
    p: u64,
    q: u64,
    r: u64,
    s: u64,
    t: u64,
    u: u64,
    budget: &SearchBudget,
) -> Result<Prediction> {
    let mut trace = Vec::new();
    let hqr = subgroup(q, r)?;
    let twist_inside = hqr.contains(t);
    trace.push(entry(
        format!("t in H({q},{r})"),
        format!("{twist_inside} (t={t}, u={u})"),
        "twist-membership",
    ));
    let (gp, _, _) = crate::families::g_pr(p, s)?;
    let (gq, _, _) = crate::families::g_pr(q, u)?;

    if twist_inside {
        // homomorphisms map cliques injectively, so a map can only exist
        // toward the factor with the larger clique number; the filter skips
        // impossible directions, a passing direction is still searched
        let wp = clique_number(&gp, budget);
        let wq = clique_number(&gq, budget);
        let (wp_val, wq_val) = match (&wp, &wq) {
            (ValueResult::Exact { value: a, .. }, ValueResult::Exact { value: b, .. }) => (*a, *b),
            _ => return Ok(Prediction::unresolved(trace, "clique prefilter")),
        };
        trace.push(entry(
            format!("omega(G({p},{s})) vs omega(G({q},{u}))"),
            format!("{wp_val} vs {wq_val}"),
            "clique-prefilter",
        ));
        if wp_val > wq_val {
            trace.push(entry(
                format!("G({p},{s}) -> G({q},{u})"),
                "impossible (clique prefilter)",
                "product-forward",
            ));
        } else {
            match find_homomorphism(&gp, &gq, budget) {
                HomSearch::Found(_) => {
                    trace.push(entry(
                        format!("G({p},{s}) -> G({q},{u})"),
                        "found",
                        "product-forward",
                    ));
                    return Ok(Prediction::resolved(circulant_tag(p, s), trace));
                }
                HomSearch::None => {
                    trace.push(entry(
                        format!("G({p},{s}) -> G({q},{u})"),
                        "none",
                        "product-forward",
                    ));
                }
                HomSearch::Indeterminate => {
                    return Ok(Prediction::unresolved(trace, "forward homomorphism"))
                }
            }
        }
        if wq_val > wp_val {
            trace.push(entry(
                format!("G({q},{u}) -> G({p},{s})"),
                "impossible (clique prefilter)",
                "product-backward",
            ));
        } else {
            match find_homomorphism(&gq, &gp, budget) {
                HomSearch::Found(_) => {
                    trace.push(entry(
                        format!("G({q},{u}) -> G({p},{s})"),
                        "found",
                        "product-backward",
                    ));
                    return Ok(Prediction::resolved(circulant_tag(q, u), trace));
                }
                HomSearch::None => {
                    trace.push(entry(
                        format!("G({q},{u}) -> G({p},{s})"),
                        "none",
                        "product-backward",
                    ));
                }
                HomSearch::Indeterminate => {
                    return Ok(Prediction::unresolved(trace, "backward homomorphism"))
                }
            }
        }
        trace.push(entry("branch", "no homomorphism either way", "product-self"));
        return Ok(Prediction::resolved(CoreTag::SelfCore, trace));
    }

    // twist outside H(q,r): class-constrained maps
    let eta = HomConstraint::eta(p, q, r, s, t)?;
    match find_constrained_homomorphism(&gp, &gq, &eta, budget)? {
        HomSearch::Found(_) => {
            trace.push(entry(
                format!("class-constrained G({p},{s}) -> G({q},{u})"),
                "found",
                "twisted-forward",
            ));
            return Ok(Prediction::resolved(circulant_tag(p, s), trace));
        }
        HomSearch::None => {
            trace.push(entry(
                format!("class-constrained G({p},{s}) -> G({q},{u})"),
                "none",
                "twisted-forward",
            ));
        }
        HomSearch::Indeterminate => {
            return Ok(Prediction::unresolved(trace, "constrained forward map"))
        }
    }
    let zeta = HomConstraint::zeta(p, q, r, s, t)?;
    match find_constrained_homomorphism(&gq, &gp, &zeta, budget)? {
        HomSearch::Found(_) => {
            trace.push(entry(
                format!("class-constrained G({q},{u}) -> G({p},{s})"),
                "found",
                "twisted-backward",
            ));
            return Ok(Prediction::resolved(circulant_tag(q, u), trace));
        }
        HomSearch::None => {
            trace.push(entry(
                format!("class-constrained G({q},{u}) -> G({p},{s})"),
                "none",
                "twisted-backward",
            ));
        }
        HomSearch::Indeterminate => {
            return Ok(Prediction::unresolved(trace, "constrained backward map"))
        }
    }
    trace.push(entry("branch", "neither constrained map exists", "twisted-self"));
    Ok(Prediction::resolved(CoreTag::SelfCore, trace))
}

/// The Fermat primes that can divide 2^a - 1 for a <= 32, with the exponent
/// l such that F_l = 2^(2^l) + 1.
fn fermat_exponent(p: u64) -> Option<u32> {
    [(3u64, 0u32), (5, 1), (17, 2), (257, 3), (65537, 4)]
        .iter()
        .find(|&&(f, _)| f == p)
        .map(|&(_, l)| l)
}

/// Symmetric MS graphs: the case split runs on the order, on whether the
/// block prime p is a Fermat prime, and on the shape of U.
fn classify_ms(a: u32, m: u64, s: &[u64], u: &[u64]) -> Result<Prediction> {
    if !s.is_empty() {
        return Err(Error::Unsupported(
            "MS graphs with nonempty S are outside the symmetric classification".into(),
        ));
    }
    if !a.is_power_of_two() || a < 2 {
        return Err(Error::Unsupported(format!("a = {a} is not 2^s with s >= 1")));
    }
    let p = m;
    let q = (1u64 << a) + 1;
    if !crate::algebra::is_prime(q) || !crate::algebra::is_prime(p) {
        return Err(Error::Unsupported(format!("order {p}*{q} is not a product of two primes")));
    }
    let s_exp = a.trailing_zeros(); // a = 2^s_exp
    let mut u_sorted: Vec<u64> = u.iter().map(|&x| x % m).collect();
    u_sorted.sort_unstable();
    u_sorted.dedup();
    let singleton = u_sorted.len() == 1;
    let mut trace = vec![entry(
        "parameters",
        format!("a={a}, p={p}, q={q}, |U|={}", u_sorted.len()),
        "ms-case-split",
    )];

    if p * q == 15 {
        if singleton {
            trace.push(entry("case", "order 15, singleton U: the graph is a core", "ms-15"));
            return Ok(Prediction::resolved(CoreTag::SelfCore, trace));
        }
        trace.push(entry("case", "order 15, U = {1,2}: complete core K_5", "ms-15"));
        return Ok(Prediction::resolved(CoreTag::Complete(5), trace));
    }

    match fermat_exponent(p) {
        None => {
            trace.push(entry(
                "case",
                format!("p={p} is not a Fermat prime: the graph is a core"),
                "ms-nonfermat",
            ));
            Ok(Prediction::resolved(CoreTag::SelfCore, trace))
        }
        Some(l) if l < s_exp - 1 => {
            trace.push(entry(
                "case",
                format!("p={p} = F_{l} with l < {}: the graph is a core", s_exp - 1),
                "ms-small-fermat",
            ));
            Ok(Prediction::resolved(CoreTag::SelfCore, trace))
        }
        Some(l) => {
            debug_assert_eq!(l, s_exp - 1);
            if singleton {
                trace.push(entry(
                    "case",
                    format!("p={p} = F_{l} with l = s-1 and singleton U: complete core K_{p}"),
                    "ms-large-fermat-singleton",
                ));
                Ok(Prediction::resolved(CoreTag::Complete(p), trace))
            } else {
                trace.push(entry(
                    "case",
                    format!("p={p} = F_{l} with l = s-1 and orbit U: the graph is a core"),
                    "ms-large-fermat-orbit",
                ));
                Ok(Prediction::resolved(CoreTag::SelfCore, trace))
            }
        }
    }
}

/// Convenience: classify a spec and also construct its graph.
pub(crate) fn classify_with_graph(
    spec: &FamilySpec,
    budget: &SearchBudget,
) -> Result<(Prediction, crate::families::Constructed)> {
    let constructed = construct(spec)?;
    let prediction = classify_core(spec, budget)?;
    Ok((prediction, constructed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag_of(spec: &str) -> CoreTag {
        let spec = crate::families::parse_spec(spec).unwrap();
        match classify_core(&spec, &SearchBudget::default()).unwrap().tag {
            PredictedCore::Tag(t) => t,
            PredictedCore::Unresolved => panic!("unexpected unresolved"),
        }
    }

    #[test]
    fn bipartite_families() {
        assert_eq!(tag_of("g2qr:11,5"), CoreTag::Complete(2));
        assert_eq!(tag_of("inc:h11"), CoreTag::Complete(2));
        assert_eq!(tag_of("noninc:pg,3,2"), CoreTag::Complete(2));
    }

    #[test]
    fn doubled_and_lex_families() {
        assert_eq!(tag_of("g2_q_r:5,2"), CoreTag::Circulant { n: 5, d: 2 });
        assert_eq!(tag_of("g2_q_r:5,4"), CoreTag::Complete(5));
        assert_eq!(tag_of("lex:gpr:3,2,q=5"), CoreTag::Complete(3));
        assert_eq!(tag_of("lex:gpr:11,2,q=3"), CoreTag::Circulant { n: 11, d: 2 });
    }

    #[test]
    fn deleted_lex_branches() {
        // small base: core is the base circulant
        assert_eq!(tag_of("dellex:gpr:5,2,q=7"), CoreTag::Circulant { n: 5, d: 2 });
        // chi(C_11) = 3 <= 5
        assert_eq!(tag_of("dellex:gpr:11,2,q=5"), CoreTag::Circulant { n: 11, d: 2 });
        // omega(K_7) = 7 >= 5
        assert_eq!(tag_of("dellex:gpr:7,6,q=5"), CoreTag::Complete(5));
    }

    #[test]
    fn ms_cases() {
        assert_eq!(tag_of("ms:2,3,,0"), CoreTag::SelfCore);
        assert_eq!(tag_of("ms:2,3,,1,2"), CoreTag::Complete(5));
        assert_eq!(tag_of("ms:4,5,,0"), CoreTag::Complete(5));
        assert_eq!(tag_of("ms:4,5,,1,4"), CoreTag::SelfCore);
        assert_eq!(tag_of("ms:4,3,,0"), CoreTag::SelfCore);
        assert_eq!(tag_of("ms:4,3,,1,2"), CoreTag::SelfCore);
    }

    #[test]
    fn twisted_product_examples() {
        // order 15, r=2, s=2, t=1: K_3-free 4-regular factors C_5-like
        // G(3,2) -> G(5,2) does not exist (triangle into a 5-cycle)
        assert_eq!(tag_of("gpqrsu:3,5,2,2,1"), CoreTag::Circulant { n: 5, d: 2 });
        // r=4: both factors complete, K_3 -> K_5
        assert_eq!(tag_of("gpqrsu:3,5,4,2,1"), CoreTag::Complete(3));
        // r=1, t=4 (twist outside): the cycle C_15 is a core
        assert_eq!(tag_of("gpqrsu:3,5,1,2,4"), CoreTag::SelfCore);
    }

    #[test]
    fn trace_records_conditions() {
        let spec = crate::families::parse_spec("dellex:gpr:11,2,q=5").unwrap();
        let pred = classify_core(&spec, &SearchBudget::default()).unwrap();
        assert!(pred.trace.iter().any(|e| e.condition.contains("chi")));
    }

    #[test]
    fn ms_with_nonempty_s_is_outside_classification() {
        let spec = crate::families::parse_spec("ms:4,5,1+4,0").unwrap();
        assert!(classify_core(&spec, &SearchBudget::default()).is_err());
    }
}

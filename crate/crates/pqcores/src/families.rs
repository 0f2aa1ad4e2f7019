//! Constructors for the graph families of order `pq`: circulants driven by
//! multiplicative subgroups, their bipartite doubles, lexicographic and
//! deleted lexicographic products, design incidence graphs, and
//! Marušič–Scapellato graphs over `GF(2^a)`. Each symmetric family also
//! returns automorphism generators sufficient to witness arc-transitivity.

use crate::algebra::{
    self, element_order, h11_design, is_prime, lcm, make_field, pg_design, pow_mod,
    subgroup, DesignKind, FieldGF2a, ProjectiveDesign,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::perm::Perm;

/// Automorphism generators attached to a constructed family instance.
#[derive(Debug, Clone, Default)]
pub struct GeneratorSet {
    pub perms: Vec<Perm>,
}

impl GeneratorSet {
    /// Every generator must preserve adjacency; reports the first offender.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (index, p) in self.perms.iter().enumerate() {
            if !crate::perm::is_permutation(p, g.n()) {
                return Err(Error::InvalidParameter(format!(
                    "generator {index} is not a permutation"
                )));
            }
            for (u, v) in g.edges() {
                if !g.has_edge(p[u], p[v]) {
                    return Err(Error::NotAutomorphism { index, u, v });
                }
            }
        }
        Ok(())
    }
}

/// Tagged parameterization of one graph family; the unit the classifier
/// consumes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Circulant G(p,r) on Z_p with connection set H(p,r).
    Gpr { p: u64, r: u64 },
    /// Bipartite double G(2q,r) on two copies of Z_q.
    G2q { q: u64, r: u64 },
    /// G(2,q,r), the doubled circulant isomorphic to G(q,r)[K̄_2].
    G2Qr { q: u64, r: u64 },
    /// G(3q,r) on Z_3 × Z_q.
    G3q { q: u64, r: u64 },
    /// G(pq; r,s,u) on Z_p × Z_q; `t` is the twist element, `u = lcm(r, o(t))`.
    Gpqrsu { p: u64, q: u64, r: u64, s: u64, t: u64, u: u64 },
    /// Marušič–Scapellato graph Γ(a,m,S,U) on PG(1,2^a) × Z_m.
    Ms { a: u32, m: u64, s: Vec<u64>, u: Vec<u64> },
    /// Incidence (or non-incidence) graph of a symmetric design.
    Inc { design: DesignKind, non: bool },
    /// Lexicographic product base[K̄_fiber], optionally with the base-aligned
    /// edges deleted. The base is the circulant G(p,r).
    Lex { p: u64, r: u64, fiber: u64, deleted: bool },
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Gpr { .. } => "GPR",
            FamilySpec::G2q { .. } => "G2QR",
            FamilySpec::G2Qr { .. } => "G2qR",
            FamilySpec::G3q { .. } => "G3QR",
            FamilySpec::Gpqrsu { .. } => "GPQRSU",
            FamilySpec::Ms { .. } => "MS",
            FamilySpec::Inc { non: false, .. } => "INC",
            FamilySpec::Inc { non: true, .. } => "NONINC",
            FamilySpec::Lex { deleted: false, .. } => "LEX",
            FamilySpec::Lex { deleted: true, .. } => "DELLEX",
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            FamilySpec::Gpr { p, .. } => *p,
            FamilySpec::G2q { q, .. } | FamilySpec::G2Qr { q, .. } => 2 * q,
            FamilySpec::G3q { q, .. } => 3 * q,
            FamilySpec::Gpqrsu { p, q, .. } => p * q,
            FamilySpec::Ms { a, m, .. } => ((1u64 << a) + 1) * m,
            FamilySpec::Inc { design: DesignKind::Pg { d, r }, .. } => {
                2 * ((r.pow(*d) - 1) / (r - 1))
            }
            FamilySpec::Inc { design: DesignKind::H11, .. } => 22,
            FamilySpec::Lex { p, fiber, .. } => p * fiber,
        }
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilySpec::Gpr { p, r } => write!(f, "gpr:{p},{r}"),
            FamilySpec::G2q { q, r } => write!(f, "g2qr:{q},{r}"),
            FamilySpec::G2Qr { q, r } => write!(f, "g2_q_r:{q},{r}"),
            FamilySpec::G3q { q, r } => write!(f, "g3qr:{q},{r}"),
            FamilySpec::Gpqrsu { p, q, r, s, t, .. } => write!(f, "gpqrsu:{p},{q},{r},{s},{t}"),
            FamilySpec::Ms { a, m, s, u } => {
                let s_str: Vec<String> = s.iter().map(u64::to_string).collect();
                let u_str: Vec<String> = u.iter().map(u64::to_string).collect();
                write!(f, "ms:{a},{m},{},{}", s_str.join("+"), u_str.join(","))
            }
            FamilySpec::Inc { design, non } => {
                let head = if *non { "noninc" } else { "inc" };
                match design {
                    DesignKind::Pg { d, r } => write!(f, "{head}:pg,{d},{r}"),
                    DesignKind::H11 => write!(f, "{head}:h11"),
                }
            }
            FamilySpec::Lex { p, r, fiber, deleted } => {
                let head = if *deleted { "dellex" } else { "lex" };
                write!(f, "{head}:gpr:{p},{r},q={fiber}")
            }
        }
    }
}

/// A constructed family instance: the graph, its spec, and automorphism
/// generators where the family defines them.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub graph: Graph,
    pub spec: FamilySpec,
    pub gens: Option<GeneratorSet>,
}

fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

fn require_divisor(r: u64, of: u64) -> Result<()> {
    if r >= 1 && of % r == 0 {
        Ok(())
    } else {
        Err(Error::NotDivisor { divisor: r, of })
    }
}

/// Circulant G(p,r): vertex set Z_p, x ~ y iff y - x ∈ H(p,r). The
/// connection set must be symmetric, so p = 2 or r even.
pub fn g_pr(p: u64, r: u64) -> Result<(Graph, FamilySpec, GeneratorSet)> {
    require_prime(p)?;
    require_divisor(r, p - 1)?;
    let h = subgroup(p, r)?;
    if p != 2 && !h.is_symmetric() {
        return Err(Error::InvalidParameter(format!(
            "H({p},{r}) is not symmetric (r must be even for odd p)"
        )));
    }
    let mut g = Graph::empty(p as usize);
    for x in 0..p {
        for &d in &h.elements {
            g.add_edge(x as usize, ((x + d) % p) as usize);
        }
    }
    let translate: Perm = (0..p).map(|x| ((x + 1) % p) as usize).collect();
    let mut perms = vec![translate];
    let a = h.smallest_generator();
    if a != 1 {
        perms.push((0..p).map(|x| (x * a % p) as usize).collect());
    }
    Ok((g, FamilySpec::Gpr { p, r }, GeneratorSet { perms }))
}

/// G(2q,r): two copies A, A' of Z_q with x ~ y' iff y - x ∈ H(q,r).
/// Vertices 0..q are A (labels i), q..2q are A' (labels i').
pub fn g_2q_r(q: u64, r: u64) -> Result<(Graph, FamilySpec, GeneratorSet)> {
    require_prime(q)?;
    if q == 2 {
        return Err(Error::InvalidParameter("G(2q,r) needs an odd prime q".into()));
    }
    require_divisor(r, q - 1)?;
    let h = subgroup(q, r)?;
    let n = (2 * q) as usize;
    let labels: Vec<Label> =
        (0..q).map(Label::Int).chain((0..q).map(Label::Prime)).collect();
    let mut g = Graph::with_labels(labels);
    for x in 0..q {
        for &d in &h.elements {
            let y = (x + d) % q;
            g.add_edge(x as usize, (q + y) as usize);
        }
    }
    let gens = double_cover_generators(q, h.smallest_generator());
    debug_assert_eq!(g.n(), n);
    Ok((g, FamilySpec::G2q { q, r }, gens))
}

/// G(2,q,r): same vertex set as G(2q,r); for y - x ∈ H(q,r) all four pairs
/// {x,y}, {x',y}, {x,y'}, {x',y'} are edges. Requires r even.
pub fn g_2_q_r(q: u64, r: u64) -> Result<(Graph, FamilySpec, GeneratorSet)> {
    require_prime(q)?;
    if q == 2 {
        return Err(Error::InvalidParameter("G(2,q,r) needs an odd prime q".into()));
    }
    require_divisor(r, q - 1)?;
    if r % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "G(2,q,r) requires an even divisor r, got {r}"
        )));
    }
    let h = subgroup(q, r)?;
    let labels: Vec<Label> =
        (0..q).map(Label::Int).chain((0..q).map(Label::Prime)).collect();
    let mut g = Graph::with_labels(labels);
    for x in 0..q {
        for &d in &h.elements {
            let y = (x + d) % q;
            let (xu, xp) = (x as usize, (q + x) as usize);
            let (yu, yp) = (y as usize, (q + y) as usize);
            g.add_edge(xu, yu);
            g.add_edge(xp, yu);
            g.add_edge(xu, yp);
            g.add_edge(xp, yp);
        }
    }
    let mut gens = double_cover_generators(q, h.smallest_generator());
    // swapping one fibre {0, 0'} alone is an automorphism here (adjacency
    // ignores the primed coordinate), and it completes arc-transitivity
    let mut swap0: Perm = (0..2 * q as usize).collect();
    swap0[0] = q as usize;
    swap0[q as usize] = 0;
    gens.perms.push(swap0);
    Ok((g, FamilySpec::G2Qr { q, r }, gens))
}

/// τ (shift), ρ (swap-and-negate) and the multiplier by a generator of
/// H(q,r); these act on A ∪ A' and preserve both doubled families.
fn double_cover_generators(q: u64, a: u64) -> GeneratorSet {
    let n = (2 * q) as usize;
    let unprimed = |i: u64| i as usize;
    let primed = |i: u64| (q + i) as usize;
    let mut tau: Perm = vec![0; n];
    let mut rho: Perm = vec![0; n];
    let mut mul: Perm = vec![0; n];
    for i in 0..q {
        tau[unprimed(i)] = unprimed((i + 1) % q);
        tau[primed(i)] = primed((i + 1) % q);
        rho[unprimed(i)] = primed((q - i) % q);
        rho[primed(i)] = unprimed((q - i) % q);
        mul[unprimed(i)] = unprimed(i * a % q);
        mul[primed(i)] = primed(i * a % q);
    }
    let mut perms = vec![tau, rho];
    if a != 1 {
        perms.push(mul);
    }
    GeneratorSet { perms }
}

/// G(3q,r): vertex set Z_3 × Z_q (row-major), edges {(i,x),(i+1,y)} with
/// y - x ∈ H(q,r).
pub fn g_3q_r(q: u64, r: u64) -> Result<(Graph, FamilySpec, GeneratorSet)> {
    require_prime(q)?;
    if q < 5 {
        return Err(Error::InvalidParameter(format!("G(3q,r) requires q >= 5, got {q}")));
    }
    require_divisor(r, q - 1)?;
    let h = subgroup(q, r)?;
    let idx = |i: u64, x: u64| (i * q + x) as usize;
    let labels: Vec<Label> = (0..3)
        .flat_map(|i| (0..q).map(move |x| Label::pair(Label::Int(i), Label::Int(x))))
        .collect();
    let mut g = Graph::with_labels(labels);
    for i in 0..3 {
        for x in 0..q {
            for &d in &h.elements {
                g.add_edge(idx(i, x), idx((i + 1) % 3, (x + d) % q));
            }
        }
    }
    let n = (3 * q) as usize;
    let mut shift_x: Perm = vec![0; n];
    let mut shift_i: Perm = vec![0; n];
    let mut mul: Perm = vec![0; n];
    let mut rev: Perm = vec![0; n];
    let c = h.smallest_generator();
    for i in 0..3 {
        for x in 0..q {
            shift_x[idx(i, x)] = idx(i, (x + 1) % q);
            shift_i[idx(i, x)] = idx((i + 1) % 3, x);
            mul[idx(i, x)] = idx(i, x * c % q);
            rev[idx(i, x)] = idx((3 - i) % 3, (q - x) % q);
        }
    }
    let mut perms = vec![shift_x, shift_i, rev];
    if c != 1 {
        perms.push(mul);
    }
    Ok((g, FamilySpec::G3q { q, r }, GeneratorSet { perms }))
}

/// G(pq; r,s,u): vertex set Z_p × Z_q (row-major); (i,x) ~ (j,y) iff for some
/// l, j - i = a^l and y - x ∈ t^l H(q,r), where H(p,s) = ⟨a⟩ with a the
/// smallest generator. `u = lcm(r, o(t))` is recorded in the spec.
pub fn g_pq_rsu(p: u64, q: u64, r: u64, s: u64, t: u64) -> Result<(Graph, FamilySpec, GeneratorSet)> {
    require_prime(p)?;
    require_prime(q)?;
    if p < 3 || p >= q {
        return Err(Error::InvalidParameter(format!(
            "G(pq;r,s,u) requires primes 3 <= p < q, got p={p}, q={q}"
        )));
    }
    if s % 2 != 0 {
        return Err(Error::InvalidParameter(format!("s must be even, got {s}")));
    }
    require_divisor(s, p - 1)?;
    require_divisor(r, q - 1)?;
    let hqr = subgroup(q, r)?;
    let t = t % q;
    if !hqr.negated().contains(&pow_mod(t, s / 2, q)) {
        return Err(Error::InvalidParameter(format!(
            "t={t} fails t^(s/2) ∈ -H({q},{r})"
        )));
    }
    let u = lcm(r, element_order(t, q)?);
    let a = subgroup(p, s)?.smallest_generator();

    let idx = |i: u64, x: u64| (i * q + x) as usize;
    let labels: Vec<Label> = (0..p)
        .flat_map(|i| (0..q).map(move |x| Label::pair(Label::Int(i), Label::Int(x))))
        .collect();
    let mut g = Graph::with_labels(labels);
    for l in 0..s {
        let step_p = pow_mod(a, l, p);
        let coset = hqr.coset(pow_mod(t, l, q));
        for i in 0..p {
            for x in 0..q {
                for &d in &coset {
                    g.add_edge(idx(i, x), idx((i + step_p) % p, (x + d) % q));
                }
            }
        }
    }

    let n = (p * q) as usize;
    let mut tp: Perm = vec![0; n];
    let mut tq: Perm = vec![0; n];
    let mut mu: Perm = vec![0; n];
    let mut nu: Perm = vec![0; n];
    let c = hqr.smallest_generator();
    for i in 0..p {
        for x in 0..q {
            tp[idx(i, x)] = idx((i + 1) % p, x);
            tq[idx(i, x)] = idx(i, (x + 1) % q);
            mu[idx(i, x)] = idx(i * a % p, x * t % q);
            nu[idx(i, x)] = idx(i, x * c % q);
        }
    }
    let mut perms = vec![tp, tq, mu];
    if c != 1 {
        perms.push(nu);
    }
    Ok((g, FamilySpec::Gpqrsu { p, q, r, s, t, u }, GeneratorSet { perms }))
}

/// Marušič–Scapellato graph Γ(a,m,S,U) on PG(1,2^a) × Z_m. Block order:
/// B_∞ first, then B_{w^0}, ..., B_{w^(2^a-2)}, then B_0; residues ascending
/// within each block.
pub fn ms_graph(a: u32, m: u64, s: &[u64], u: &[u64]) -> Result<(Graph, FamilySpec, GeneratorSet)> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("MS graphs require a > 1, got {a}")));
    }
    let field = make_field(a)?;
    let group = field.group_order();
    if m < 2 || group % m != 0 {
        return Err(Error::NotDivisor { divisor: m, of: group });
    }
    let mut s_set: Vec<u64> = s.iter().map(|&x| x % m).collect();
    s_set.sort_unstable();
    s_set.dedup();
    if s_set.contains(&0) {
        return Err(Error::InvalidParameter("S must avoid 0 (subset of Z_m^*)".into()));
    }
    let neg_s: std::collections::BTreeSet<u64> = s_set.iter().map(|&x| (m - x) % m).collect();
    if neg_s.iter().copied().collect::<Vec<_>>() != s_set {
        return Err(Error::InvalidParameter("S must be symmetric (S = -S)".into()));
    }
    let mut u_set: Vec<u64> = u.iter().map(|&x| x % m).collect();
    u_set.sort_unstable();
    u_set.dedup();

    let ms = MsIndexer { field: &field, m };
    let labels = ms.labels();
    let mut g = Graph::with_labels(labels);

    // neighbourhood of (∞, r)
    for r in 0..m {
        let v = ms.inf(r);
        for &sv in &s_set {
            g.add_edge(v, ms.inf((r + sv) % m));
        }
        for x in 0..field.size() {
            for &uv in &u_set {
                g.add_edge(v, ms.fin(x, (r + uv) % m));
            }
        }
    }
    // cross-block edges among finite vertices: (x,r) ~ (x + w^i, -r + u + 2i)
    for x in 0..field.size() {
        for r in 0..m {
            let v = ms.fin(x, r);
            for &sv in &s_set {
                g.add_edge(v, ms.fin(x, (r + sv) % m));
            }
            for i in 0..group {
                let y = field.add(x, field.pow_w(i));
                for &uv in &u_set {
                    let rr = ((uv as i128 + 2 * i as i128 - r as i128).rem_euclid(m as i128)) as u64;
                    g.add_edge(v, ms.fin(y, rr));
                }
            }
        }
    }

    let gens = ms_generators(&ms, &field, m, &s_set, &u_set);
    let spec = FamilySpec::Ms { a, m, s: s_set, u: u_set };
    let set = GeneratorSet { perms: gens };
    set.validate(&g)?;
    Ok((g, spec, set))
}

struct MsIndexer<'a> {
    field: &'a FieldGF2a,
    m: u64,
}

impl MsIndexer<'_> {
    fn inf(&self, r: u64) -> usize {
        r as usize
    }

    /// Finite vertex (x, r); block position follows the w-power order.
    fn fin(&self, x: u64, r: u64) -> usize {
        let block = if x == 0 {
            self.field.size() // last block
        } else {
            1 + self.field.log_of(x)
        };
        (block * self.m + r) as usize
    }

    fn labels(&self) -> Vec<Label> {
        let mut labels = Vec::new();
        for r in 0..self.m {
            labels.push(Label::pair(Label::Inf, Label::Int(r)));
        }
        for i in 0..self.field.group_order() {
            let x = self.field.pow_w(i);
            for r in 0..self.m {
                labels.push(Label::pair(Label::Field(x), Label::Int(r)));
            }
        }
        for r in 0..self.m {
            labels.push(Label::pair(Label::Field(0), Label::Int(r)));
        }
        labels
    }
}

/// Generators: λ_b over a GF(2)-basis, the block rotation ρ, the inversion σ
/// (swapping B_∞ and B_0), and a Frobenius twist when it preserves S and U.
fn ms_generators(
    ms: &MsIndexer<'_>,
    field: &FieldGF2a,
    m: u64,
    s_set: &[u64],
    u_set: &[u64],
) -> Vec<Perm> {
    let n = ((field.size() + 1) * m) as usize;
    let mut perms = Vec::new();
    // λ_b: (x, r) -> (x + b, r), fixing B_∞ pointwise
    for bit in 0..field.a {
        let b = 1u64 << bit;
        let mut p: Perm = vec![0; n];
        for r in 0..m {
            p[ms.inf(r)] = ms.inf(r);
        }
        for x in 0..field.size() {
            for r in 0..m {
                p[ms.fin(x, r)] = ms.fin(field.add(x, b), r);
            }
        }
        perms.push(p);
    }
    // ρ: rotate residues, multiply nonzero field part by w
    let mut rho: Perm = vec![0; n];
    for r in 0..m {
        rho[ms.inf(r)] = ms.inf((r + 1) % m);
        rho[ms.fin(0, r)] = ms.fin(0, (r + 1) % m);
    }
    for x in 1..field.size() {
        for r in 0..m {
            rho[ms.fin(x, r)] = ms.fin(field.mul(x, field.w), (r + 1) % m);
        }
    }
    perms.push(rho);
    // σ: (∞,r) <-> (0,-r), (w^i, r) -> (w^-i, r - 2i)
    let mut sigma: Perm = vec![0; n];
    for r in 0..m {
        sigma[ms.inf(r)] = ms.fin(0, (m - r) % m);
        sigma[ms.fin(0, r)] = ms.inf((m - r) % m);
    }
    for x in 1..field.size() {
        let i = field.log_of(x);
        for r in 0..m {
            let rr = ((r as i128 - 2 * i as i128).rem_euclid(m as i128)) as u64;
            sigma[ms.fin(x, r)] = ms.fin(field.inv(x), rr);
        }
    }
    perms.push(sigma);
    // Frobenius twist π_e: (x,r) -> (x^(2^e), 2^e r) for the least e with
    // 2^e S = S and 2^e U = U
    for e in 1..=field.a {
        let mult = pow_mod(2, e as u64, m);
        let maps_to_self = |set: &[u64]| {
            let mut image: Vec<u64> = set.iter().map(|&x| x * mult % m).collect();
            image.sort_unstable();
            image == set
        };
        if maps_to_self(s_set) && maps_to_self(u_set) {
            let mut pi: Perm = vec![0; n];
            for r in 0..m {
                pi[ms.inf(r)] = ms.inf(r * mult % m);
                pi[ms.fin(0, r)] = ms.fin(0, r * mult % m);
            }
            for x in 1..field.size() {
                let mut img = x;
                for _ in 0..e {
                    img = field.mul(img, img);
                }
                for r in 0..m {
                    pi[ms.fin(x, r)] = ms.fin(img, r * mult % m);
                }
            }
            perms.push(pi);
            break;
        }
    }
    perms
}

/// Parameter sets of the symmetric MS graphs of order pq for `q = 2^a + 1`
/// prime, `a = 2^s`, and a prime `p | 2^a - 1`: the canonical singleton
/// `U = {0}`, all orbit sets `U_{e,i} = {i·2^(ej)}` with `1 < d/e < p-1`
/// (`d` the order of 2 mod p), and for p = 3 the boundary set {1,2}.
pub fn symmetric_ms_enumerate(a: u32, p: u64) -> Result<Vec<FamilySpec>> {
    if !a.is_power_of_two() || a < 2 {
        return Err(Error::InvalidParameter(format!("a must be 2^s with s >= 1, got {a}")));
    }
    let q = (1u64 << a) + 1;
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    require_prime(p)?;
    let group = (1u64 << a) - 1;
    if group % p != 0 {
        return Err(Error::NotDivisor { divisor: p, of: group });
    }
    let d = element_order(2, p)?;
    let mut u_sets: Vec<Vec<u64>> = vec![vec![0]];
    let push_unique = |set: Vec<u64>, u_sets: &mut Vec<Vec<u64>>| {
        if !u_sets.contains(&set) {
            u_sets.push(set);
        }
    };
    for e in 1..=d {
        if d % e != 0 || algebra::gcd(d, a as u64) % e != 0 {
            continue;
        }
        let len = d / e;
        let in_range = (1 < len && len < p - 1) || (p == 3 && len == 2);
        if !in_range {
            continue;
        }
        let step = pow_mod(2, e, p);
        for i in 1..p {
            let mut set = Vec::with_capacity(len as usize);
            let mut x = i;
            for _ in 0..len {
                set.push(x);
                x = x * step % p;
            }
            set.sort_unstable();
            set.dedup();
            push_unique(set, &mut u_sets);
        }
    }
    u_sets.sort_by_key(|s| (s.len(), s.clone()));
    Ok(u_sets
        .into_iter()
        .map(|u| FamilySpec::Ms { a, m: p, s: vec![], u })
        .collect())
}

/// Bipartite incidence graph of a design: points then blocks, adjacency by
/// membership.
pub fn incidence_graph(design: &ProjectiveDesign) -> Graph {
    design_graph(design, true)
}

/// Bipartite non-incidence graph: point adjacent to the blocks it misses.
pub fn nonincidence_graph(design: &ProjectiveDesign) -> Graph {
    design_graph(design, false)
}

fn design_graph(design: &ProjectiveDesign, incident: bool) -> Graph {
    let v = design.points.len();
    let labels: Vec<Label> = design
        .points
        .iter()
        .map(|p| Label::Point(p.clone()))
        .chain(design.points.iter().map(|p| Label::Block(p.clone())))
        .collect();
    let mut g = Graph::with_labels(labels);
    for (bi, block) in design.blocks.iter().enumerate() {
        for pt in 0..v {
            if block.contains(&pt) == incident {
                g.add_edge(pt, v + bi);
            }
        }
    }
    g
}

/// Lexicographic family base[K̄_fiber] (deleted variant removes the edges
/// aligned with the base). The base is G(p,r); K_n enters as G(n, n-1).
pub fn lex_family(
    base_p: u64,
    base_r: u64,
    fiber: u64,
    deleted: bool,
) -> Result<(Graph, FamilySpec)> {
    let (base, _, _) = g_pr(base_p, base_r)?;
    if fiber == 1 && !deleted {
        let g = base.lexicographic_product(&Graph::empty(1));
        return Ok((g, FamilySpec::Lex { p: base_p, r: base_r, fiber, deleted }));
    }
    if !is_prime(fiber) || fiber == base_p {
        return Err(Error::InvalidParameter(format!(
            "fiber must be a prime distinct from the base order, got {fiber}"
        )));
    }
    if fiber == 2 {
        return Err(Error::InvalidParameter(
            "fiber 2 over a circulant base is the doubled family G(2,q,r)".into(),
        ));
    }
    if deleted && (base_p.min(fiber) < 5) {
        return Err(Error::InvalidParameter(
            "deleted lexicographic products need both primes >= 5".into(),
        ));
    }
    let fiber_graph = Graph::empty(fiber as usize);
    let g = if deleted {
        base.deleted_lexicographic_product(&fiber_graph)
    } else {
        base.lexicographic_product(&fiber_graph)
    };
    Ok((g, FamilySpec::Lex { p: base_p, r: base_r, fiber, deleted }))
}

/// Construct the graph (and generators, where defined) for any spec.
pub fn construct(spec: &FamilySpec) -> Result<Constructed> {
    match spec {
        FamilySpec::Gpr { p, r } => {
            let (graph, spec, gens) = g_pr(*p, *r)?;
            Ok(Constructed { graph, spec, gens: Some(gens) })
        }
        FamilySpec::G2q { q, r } => {
            let (graph, spec, gens) = g_2q_r(*q, *r)?;
            Ok(Constructed { graph, spec, gens: Some(gens) })
        }
        FamilySpec::G2Qr { q, r } => {
            let (graph, spec, gens) = g_2_q_r(*q, *r)?;
            Ok(Constructed { graph, spec, gens: Some(gens) })
        }
        FamilySpec::G3q { q, r } => {
            let (graph, spec, gens) = g_3q_r(*q, *r)?;
            Ok(Constructed { graph, spec, gens: Some(gens) })
        }
        FamilySpec::Gpqrsu { p, q, r, s, t, .. } => {
            let (graph, spec, gens) = g_pq_rsu(*p, *q, *r, *s, *t)?;
            Ok(Constructed { graph, spec, gens: Some(gens) })
        }
        FamilySpec::Ms { a, m, s, u } => {
            let (graph, spec, gens) = ms_graph(*a, *m, s, u)?;
            Ok(Constructed { graph, spec, gens: Some(gens) })
        }
        FamilySpec::Inc { design, non } => {
            let d = match design {
                DesignKind::Pg { d, r } => pg_design(*d, *r)?,
                DesignKind::H11 => h11_design(),
            };
            let graph = if *non { nonincidence_graph(&d) } else { incidence_graph(&d) };
            Ok(Constructed { graph, spec: spec.clone(), gens: None })
        }
        FamilySpec::Lex { p, r, fiber, deleted } => {
            let (graph, spec) = lex_family(*p, *r, *fiber, *deleted)?;
            Ok(Constructed { graph, spec, gens: None })
        }
    }
}

/// Parse a CLI family identifier, e.g. `gpr:7,2`, `ms:2,3,,1,2`,
/// `lex:gpr:3,2,q=5`, `inc:h11`.
pub fn parse_spec(input: &str) -> Result<FamilySpec> {
    let (head, rest) = input
        .split_once(':')
        .ok_or_else(|| Error::Parse { pos: 0, msg: "missing ':' after family tag".into() })?;
    let body_pos = head.len() + 1;
    let nums = |s: &str, expect: usize| -> Result<Vec<u64>> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != expect {
            return Err(Error::Parse {
                pos: body_pos,
                msg: format!("expected {expect} comma-separated integers, got {}", parts.len()),
            });
        }
        parts
            .iter()
            .map(|p| {
                p.parse::<u64>().map_err(|_| Error::Parse {
                    pos: body_pos,
                    msg: format!("invalid integer '{p}'"),
                })
            })
            .collect()
    };
    match head {
        "gpr" => {
            let v = nums(rest, 2)?;
            Ok(FamilySpec::Gpr { p: v[0], r: v[1] })
        }
        "g2qr" => {
            let v = nums(rest, 2)?;
            Ok(FamilySpec::G2q { q: v[0], r: v[1] })
        }
        "g2_q_r" => {
            let v = nums(rest, 2)?;
            Ok(FamilySpec::G2Qr { q: v[0], r: v[1] })
        }
        "g3qr" => {
            let v = nums(rest, 2)?;
            Ok(FamilySpec::G3q { q: v[0], r: v[1] })
        }
        "gpqrsu" => {
            let v = nums(rest, 5)?;
            let (p, q, r, s, t) = (v[0], v[1], v[2], v[3], v[4]);
            let u = lcm(r, element_order(t, q)?);
            Ok(FamilySpec::Gpqrsu { p, q, r, s, t, u })
        }
        "ms" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() < 4 {
                return Err(Error::Parse {
                    pos: body_pos,
                    msg: "ms spec needs a,m,S,U (S may be empty)".into(),
                });
            }
            let a: u32 = parts[0].parse().map_err(|_| Error::Parse {
                pos: body_pos,
                msg: format!("invalid integer '{}'", parts[0]),
            })?;
            let m: u64 = parts[1].parse().map_err(|_| Error::Parse {
                pos: body_pos,
                msg: format!("invalid integer '{}'", parts[1]),
            })?;
            let s: Vec<u64> = if parts[2].is_empty() {
                vec![]
            } else {
                parts[2]
                    .split('+')
                    .map(|x| {
                        x.parse::<u64>().map_err(|_| Error::Parse {
                            pos: body_pos,
                            msg: format!("invalid S element '{x}'"),
                        })
                    })
                    .collect::<Result<_>>()?
            };
            let u: Vec<u64> = parts[3..]
                .iter()
                .map(|x| {
                    x.parse::<u64>().map_err(|_| Error::Parse {
                        pos: body_pos,
                        msg: format!("invalid U element '{x}'"),
                    })
                })
                .collect::<Result<_>>()?;
            Ok(FamilySpec::Ms { a, m, s, u })
        }
        "inc" | "noninc" => {
            let non = head == "noninc";
            if rest == "h11" {
                return Ok(FamilySpec::Inc { design: DesignKind::H11, non });
            }
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 3 && parts[0] == "pg" {
                let d: u32 = parts[1].parse().map_err(|_| Error::Parse {
                    pos: body_pos,
                    msg: format!("invalid integer '{}'", parts[1]),
                })?;
                let r: u64 = parts[2].parse().map_err(|_| Error::Parse {
                    pos: body_pos,
                    msg: format!("invalid integer '{}'", parts[2]),
                })?;
                return Ok(FamilySpec::Inc { design: DesignKind::Pg { d, r }, non });
            }
            Err(Error::Parse { pos: body_pos, msg: "expected 'pg,d,r' or 'h11'".into() })
        }
        "lex" | "dellex" => {
            let deleted = head == "dellex";
            let marker = rest.rfind(",q=").ok_or_else(|| Error::Parse {
                pos: body_pos,
                msg: "lex spec needs ',q=<fiber>'".into(),
            })?;
            let base_str = &rest[..marker];
            let fiber: u64 = rest[marker + 3..].parse().map_err(|_| Error::Parse {
                pos: body_pos + marker + 3,
                msg: format!("invalid fiber '{}'", &rest[marker + 3..]),
            })?;
            let (p, r) = if let Some(k) = base_str.strip_prefix('k') {
                let n: u64 = k.parse().map_err(|_| Error::Parse {
                    pos: body_pos,
                    msg: format!("invalid complete-graph base '{base_str}'"),
                })?;
                (n, n - 1)
            } else if let FamilySpec::Gpr { p, r } = parse_spec(base_str)? {
                (p, r)
            } else {
                return Err(Error::Parse {
                    pos: body_pos,
                    msg: "lex base must be gpr:p,r or k<n>".into(),
                });
            };
            Ok(FamilySpec::Lex { p, r, fiber, deleted })
        }
        other => Err(Error::Parse { pos: 0, msg: format!("unknown family tag '{other}'") }),
    }
}

/// Every classified spec of the given order: circulant families, products,
/// MS graphs and design graphs. Used by the exhaustive cross-validation runs.
pub fn enumerate_specs(order: u64) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    // order 2q: bipartite doubles, doubled circulants, design graphs
    if order % 2 == 0 {
        let q = order / 2;
        if is_prime(q) && q > 2 {
            for r in 1..q {
                if (q - 1) % r == 0 {
                    out.push(FamilySpec::G2q { q, r });
                    if r % 2 == 0 {
                        out.push(FamilySpec::G2Qr { q, r });
                    }
                }
            }
            if q == 11 {
                out.push(FamilySpec::Inc { design: DesignKind::H11, non: false });
                out.push(FamilySpec::Inc { design: DesignKind::H11, non: true });
            }
            for (d, r) in [(2u32, 2u64), (3, 2), (5, 2), (3, 3), (3, 5)] {
                if r.pow(d - 1) < order && (r.pow(d) - 1) / (r - 1) == q {
                    out.push(FamilySpec::Inc { design: DesignKind::Pg { d, r }, non: false });
                    out.push(FamilySpec::Inc { design: DesignKind::Pg { d, r }, non: true });
                }
            }
        }
    }
    // odd orders pq
    for p in 3..order {
        if order % p != 0 || !is_prime(p) {
            continue;
        }
        let q = order / p;
        if !is_prime(q) || q <= p {
            continue;
        }
        if p == 3 && q >= 5 {
            for r in 1..q {
                if (q - 1) % r == 0 {
                    out.push(FamilySpec::G3q { q, r });
                }
            }
        }
        // twisted products over all (r, s, t)
        for s in (2..p).step_by(2).chain(std::iter::once(p - 1)) {
            if (p - 1) % s != 0 || s % 2 != 0 {
                continue;
            }
            for r in 1..q {
                if (q - 1) % r != 0 {
                    continue;
                }
                if let Ok(ts) = algebra::choose_t(p, q, r, s) {
                    for (t, u) in ts {
                        out.push(FamilySpec::Gpqrsu { p, q, r, s, t, u });
                    }
                }
            }
        }
        // products: base one prime, fiber the other
        for (b, f) in [(p, q), (q, p)] {
            for r in 1..b {
                if (b - 1) % r != 0 || (b != 2 && r % 2 != 0) {
                    continue;
                }
                if f != 2 {
                    out.push(FamilySpec::Lex { p: b, r, fiber: f, deleted: false });
                    if b.min(f) >= 5 {
                        out.push(FamilySpec::Lex { p: b, r, fiber: f, deleted: true });
                    }
                }
            }
        }
        // MS graphs
        if q >= 5 && (q - 1).is_power_of_two() {
            let a = (q - 1).trailing_zeros();
            if a.is_power_of_two() && a >= 2 {
                if let Ok(specs) = symmetric_ms_enumerate(a, p) {
                    out.extend(specs);
                }
            }
        }
    }
    out.sort_by_key(|s| format!("{s}"));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::orbit_transitivity_check;

    #[test]
    fn gpr_complete_and_cycle() {
        let (kp, _, _) = g_pr(7, 6).unwrap();
        assert_eq!(kp, Graph::complete(7));
        let (c5, _, _) = g_pr(5, 2).unwrap();
        assert!(c5.has_edge(0, 1) && c5.has_edge(0, 4));
        assert_eq!(c5.regular_valency(), Some(2));
        assert!(crate::graph::is_isomorphic(&c5, &Graph::cycle(5)).is_some());
    }

    #[test]
    fn gpr_valency_matches_r() {
        for (p, r) in [(5u64, 2u64), (5, 4), (7, 2), (7, 6), (11, 2), (11, 10), (13, 4), (2, 1)] {
            let (g, _, gens) = g_pr(p, r).unwrap();
            assert_eq!(g.regular_valency(), Some(r as usize));
            let rep = orbit_transitivity_check(&g, &gens.perms).unwrap();
            assert!(rep.vertex_transitive && rep.arc_transitive, "G({p},{r})");
        }
        assert!(g_pr(7, 3).is_err(), "odd connection set is not symmetric");
        assert!(g_pr(9, 2).is_err());
    }

    #[test]
    fn g2q_bipartite_and_valency() {
        for (q, r) in [(5u64, 2u64), (5, 4), (7, 3), (11, 5), (13, 6)] {
            let (g, _, gens) = g_2q_r(q, r).unwrap();
            assert_eq!(g.n() as u64, 2 * q);
            assert!(g.is_bipartite());
            assert_eq!(g.regular_valency(), Some(r as usize));
            let rep = orbit_transitivity_check(&g, &gens.perms).unwrap();
            assert!(rep.vertex_transitive && rep.arc_transitive, "G(2*{q},{r})");
        }
        // r = 1 gives a perfect matching
        let (g, _, _) = g_2q_r(5, 1).unwrap();
        assert_eq!(g.regular_valency(), Some(1));
    }

    #[test]
    fn g2qr_doubled_is_lex_with_k2bar() {
        for (q, r) in [(5u64, 2u64), (5, 4), (7, 2), (11, 10)] {
            let (g, _, gens) = g_2_q_r(q, r).unwrap();
            assert_eq!(g.regular_valency(), Some(2 * r as usize));
            let (base, _, _) = g_pr(q, r).unwrap();
            let lex = base.lexicographic_product(&Graph::empty(2));
            assert!(crate::graph::is_isomorphic(&g, &lex).is_some(), "G(2,{q},{r})");
            let rep = orbit_transitivity_check(&g, &gens.perms).unwrap();
            assert!(rep.vertex_transitive && rep.arc_transitive);
        }
        assert!(g_2_q_r(7, 3).is_err(), "odd r rejected");
    }

    #[test]
    fn g3q_valency_and_brute_equality() {
        for (q, r) in [(5u64, 1u64), (5, 2), (5, 4), (7, 3), (7, 6)] {
            let (g, _, gens) = g_3q_r(q, r).unwrap();
            assert_eq!(g.n() as u64, 3 * q);
            assert_eq!(g.regular_valency(), Some(2 * r as usize));
            let rep = orbit_transitivity_check(&g, &gens.perms).unwrap();
            assert!(rep.vertex_transitive && rep.arc_transitive, "G(3*{q},{r})");
            // same graph as the twisted product with p = 3, s = 2
            let u = if r % 2 == 0 { r } else { 2 * r };
            let ts = algebra::choose_t(3, q, r, 2).unwrap();
            let (t, tu) = ts[0];
            assert_eq!(tu, u);
            let (tw, _, _) = g_pq_rsu(3, q, r, 2, t).unwrap();
            assert_eq!(g, tw, "G(3q,{r}) equals G(3q;{r},2,{u})");
        }
        // q = 5, r = 1 is a single long cycle
        let (g, _, _) = g_3q_r(5, 1).unwrap();
        assert!(g.is_connected());
    }

    #[test]
    fn gpqrsu_examples() {
        // order 15, valency sr = 2
        let (g, spec, gens) = g_pq_rsu(3, 5, 1, 2, 4).unwrap();
        assert_eq!(g.n(), 15);
        assert_eq!(g.regular_valency(), Some(2));
        match spec {
            FamilySpec::Gpqrsu { u, .. } => assert_eq!(u, 2),
            _ => unreachable!(),
        }
        let rep = orbit_transitivity_check(&g, &gens.perms).unwrap();
        assert!(rep.vertex_transitive && rep.arc_transitive);
        // invalid t rejected
        assert!(g_pq_rsu(3, 5, 1, 2, 2).is_err());
    }

    #[test]
    fn gpqrsu_spanning_subgraph_of_categorical_product() {
        for (p, q, r, s) in [(3u64, 5u64, 2u64, 2u64), (3, 7, 3, 2), (5, 7, 2, 2), (5, 7, 6, 4)] {
            for (t, u) in algebra::choose_t(p, q, r, s).unwrap() {
                let (g, _, _) = g_pq_rsu(p, q, r, s, t).unwrap();
                assert_eq!(g.regular_valency(), Some((s * r) as usize));
                let (gp, _, _) = g_pr(p, s).unwrap();
                let (gq, _, _) = g_pr(q, u).unwrap();
                let prod = gp.categorical_product(&gq);
                // same vertex order, so direct edge containment applies
                for (x, y) in g.edges() {
                    assert!(prod.has_edge(x, y), "edge outside the product");
                }
                let equal = g.edge_count() == prod.edge_count();
                let h = subgroup(q, r).unwrap();
                assert_eq!(equal, h.contains(t), "product equality iff t in H(q,r)");
            }
        }
    }

    #[test]
    fn gpqrsu_iso_independent_of_t_with_same_u() {
        // all t with the same u give isomorphic graphs
        for (p, q, r, s) in [(3u64, 5u64, 2u64, 2u64), (3, 5, 4, 2), (5, 7, 6, 2)] {
            let ts = algebra::choose_t(p, q, r, s).unwrap();
            for window in ts.windows(2) {
                let ((t1, u1), (t2, u2)) = (window[0], window[1]);
                if u1 != u2 {
                    continue;
                }
                let (g1, _, _) = g_pq_rsu(p, q, r, s, t1).unwrap();
                let (g2, _, _) = g_pq_rsu(p, q, r, s, t2).unwrap();
                assert!(
                    crate::graph::is_isomorphic(&g1, &g2).is_some(),
                    "t={t1} vs t={t2} at ({p},{q},{r},{s})"
                );
            }
        }
    }

    #[test]
    fn gpqrsu_distinct_parameters_not_isomorphic() {
        // (r,s,u) distinguishes the family members at order 15 and 35
        let (g1, _, _) = g_pq_rsu(3, 5, 1, 2, 4).unwrap(); // u = 2, val 2
        let (g2, _, _) = g_pq_rsu(3, 5, 2, 2, 1).unwrap(); // u = 2, val 4
        assert!(crate::graph::is_isomorphic(&g1, &g2).is_none());
        let (g3, _, _) = g_pq_rsu(5, 7, 2, 2, 1).unwrap();
        let (g4, _, _) = g_pq_rsu(5, 7, 1, 2, 6).unwrap();
        assert!(crate::graph::is_isomorphic(&g3, &g4).is_none());
    }

    #[test]
    fn ms_graph_small() {
        let (g, _, gens) = ms_graph(2, 3, &[], &[0]).unwrap();
        assert_eq!(g.n(), 15);
        assert_eq!(g.regular_valency(), Some(4));
        let rep = orbit_transitivity_check(&g, &gens.perms).unwrap();
        assert!(rep.vertex_transitive && rep.arc_transitive);

        let (g2, _, gens2) = ms_graph(2, 3, &[], &[1, 2]).unwrap();
        assert_eq!(g2.regular_valency(), Some(8));
        let rep2 = orbit_transitivity_check(&g2, &gens2.perms).unwrap();
        assert!(rep2.vertex_transitive && rep2.arc_transitive);
    }

    #[test]
    fn ms_valency_formula() {
        for (a, m, s, u) in [
            (2u32, 3u64, vec![], vec![0u64]),
            (2, 3, vec![1, 2], vec![0]),
            (3, 7, vec![], vec![0, 1]),
            (4, 5, vec![], vec![1, 4]),
            (4, 3, vec![], vec![1, 2]),
        ] {
            let (g, _, _) = ms_graph(a, m, &s, &u).unwrap();
            let expected = s.len() + (1usize << a) * u.len();
            assert_eq!(g.regular_valency(), Some(expected), "val of MS({a},{m},{s:?},{u:?})");
        }
    }

    #[test]
    fn ms_neighbourhoods_match_definition() {
        let a = 3u32;
        let m = 7u64;
        let u_set = [1u64, 2];
        let s_set = [3u64, 4];
        let field = make_field(a).unwrap();
        let (g, _, _) = ms_graph(a, m, &s_set, &u_set).unwrap();
        let ms = MsIndexer { field: &field, m };
        // neighbourhood of (∞, r)
        for r in 0..m {
            let mut expected: Vec<usize> = s_set.iter().map(|&s| ms.inf((r + s) % m)).collect();
            for x in 0..field.size() {
                for &u in &u_set {
                    expected.push(ms.fin(x, (r + u) % m));
                }
            }
            expected.sort_unstable();
            expected.dedup();
            let actual: Vec<usize> = g.neighbors(ms.inf(r)).iter().collect();
            assert_eq!(actual, expected);
        }
        // neighbourhood of (x, r)
        for x in 0..field.size() {
            for r in 0..m {
                let mut expected: Vec<usize> =
                    s_set.iter().map(|&s| ms.fin(x, (r + s) % m)).collect();
                for &u in &u_set {
                    expected.push(ms.inf((r + m - u % m) % m));
                }
                for i in 0..field.group_order() {
                    let y = field.add(x, field.pow_w(i));
                    for &u in &u_set {
                        let rr =
                            ((u as i128 + 2 * i as i128 - r as i128).rem_euclid(m as i128)) as u64;
                        expected.push(ms.fin(y, rr));
                    }
                }
                expected.sort_unstable();
                expected.dedup();
                let actual: Vec<usize> = g.neighbors(ms.fin(x, r)).iter().collect();
                assert_eq!(actual, expected, "neighbourhood of ({x},{r})");
            }
        }
    }

    #[test]
    fn ms_blocks_are_independent_when_s_empty() {
        let (g, _, _) = ms_graph(4, 5, &[], &[0]).unwrap();
        for block in 0..17usize {
            for r1 in 0..5usize {
                for r2 in 0..r1 {
                    assert!(!g.has_edge(block * 5 + r1, block * 5 + r2));
                }
            }
        }
    }

    #[test]
    fn ms_rejects_bad_parameters() {
        assert!(ms_graph(2, 4, &[], &[0]).is_err(), "m must divide 2^a - 1");
        assert!(ms_graph(1, 1, &[], &[0]).is_err());
        assert!(ms_graph(4, 5, &[1], &[0]).is_err(), "S must be symmetric");
        assert!(ms_graph(4, 5, &[0], &[0]).is_err(), "S avoids 0");
    }

    #[test]
    fn ms_complement_parameter_identity() {
        // complement of Γ(a,m,S,U) is Γ(a,m,Z_m^* \ S, Z_m \ U)
        let (g, _, _) = ms_graph(2, 3, &[], &[0]).unwrap();
        let (h, _, _) = ms_graph(2, 3, &[1, 2], &[1, 2]).unwrap();
        assert_eq!(g.complement(), h);
    }

    #[test]
    fn symmetric_enumeration_smallest_cases() {
        let specs = symmetric_ms_enumerate(2, 3).unwrap();
        let us: Vec<Vec<u64>> = specs
            .iter()
            .map(|s| match s {
                FamilySpec::Ms { u, .. } => u.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(us, vec![vec![0], vec![1, 2]]);

        // a=4, p=5: d = ord_5(2) = 4, e = 2 gives the two 2-element orbits
        let specs = symmetric_ms_enumerate(4, 5).unwrap();
        let us: Vec<Vec<u64>> = specs
            .iter()
            .map(|s| match s {
                FamilySpec::Ms { u, .. } => u.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(us, vec![vec![0], vec![1, 4], vec![2, 3]]);
        for spec in &specs {
            if let FamilySpec::Ms { u, .. } = spec {
                if u.len() > 1 {
                    assert!(1 < u.len() as u64 && (u.len() as u64) < 4);
                    let (g, _, _) = ms_graph(4, 5, &[], u).unwrap();
                    assert_eq!(g.regular_valency(), Some(16 * u.len()));
                }
            }
        }
        assert!(symmetric_ms_enumerate(3, 7).is_err(), "a must be a power of two");
        assert!(symmetric_ms_enumerate(4, 7).is_err(), "p must divide 2^a - 1");
    }

    #[test]
    fn incidence_graphs_basic() {
        let heawood = incidence_graph(&pg_design(3, 2).unwrap());
        assert_eq!(heawood.n(), 14);
        assert_eq!(heawood.regular_valency(), Some(3));
        assert_eq!(heawood.girth(), Some(6));
        assert!(heawood.is_bipartite());
        let non = nonincidence_graph(&pg_design(3, 2).unwrap());
        assert_eq!(non.regular_valency(), Some(4));
        assert!(non.is_bipartite());
        // complement within the bipartition
        for p in 0..7usize {
            for b in 7..14usize {
                assert_eq!(heawood.has_edge(p, b), !non.has_edge(p, b));
            }
        }
    }

    #[test]
    fn h11_incidence_is_g22_5() {
        let x = incidence_graph(&h11_design());
        let (g, _, _) = g_2q_r(11, 5).unwrap();
        assert!(crate::graph::is_isomorphic(&x, &g).is_some());
    }

    #[test]
    fn lex_family_validation() {
        assert!(lex_family(3, 2, 5, false).is_ok());
        assert!(lex_family(2, 1, 5, false).is_ok(), "K_2 base");
        assert!(lex_family(11, 2, 5, true).is_ok());
        assert!(lex_family(3, 2, 5, true).is_err(), "deleted needs both primes >= 5");
        assert!(lex_family(3, 2, 6, false).is_err(), "fiber must be prime");
        assert!(lex_family(3, 2, 3, false).is_err(), "fiber equal to base order");
        assert!(lex_family(5, 2, 2, false).is_err(), "fiber 2 is the doubled family");
        // degenerate identity fiber
        let (g, _) = lex_family(5, 2, 1, false).unwrap();
        assert_eq!(g.n(), 5);
    }

    #[test]
    fn lex_family_k3_is_tripartite() {
        let (g, _) = lex_family(3, 2, 5, false).unwrap();
        let k3 = Graph::complete(3);
        let expected = k3.lexicographic_product(&Graph::empty(5));
        assert!(crate::graph::is_isomorphic(&g, &expected).is_some());
        assert_eq!(g.regular_valency(), Some(10));
    }

    #[test]
    fn deleted_lex_equals_product_with_complete_graph() {
        let (g, _) = lex_family(11, 2, 5, true).unwrap();
        let (c11, _, _) = g_pr(11, 2).unwrap();
        let product = c11.categorical_product(&Graph::complete(5));
        assert_eq!(g, product);
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "gpr:7,2",
            "g2qr:11,5",
            "g2_q_r:5,2",
            "g3qr:5,1",
            "gpqrsu:3,5,1,2,4",
            "ms:2,3,,0",
            "ms:2,3,,1,2",
            "ms:4,5,1+4,0",
            "inc:h11",
            "noninc:pg,3,2",
            "lex:gpr:3,2,q=5",
            "dellex:gpr:11,2,q=5",
        ] {
            let spec = parse_spec(s).unwrap();
            assert_eq!(format!("{spec}"), s, "display must invert parse");
            }
        // k-base sugar normalizes to gpr form
        let spec = parse_spec("lex:k3,q=5").unwrap();
        assert_eq!(format!("{spec}"), "lex:gpr:3,2,q=5");
        assert!(parse_spec("nope:1").is_err());
        assert!(parse_spec("gpr:7").is_err());
        assert!(parse_spec("ms:2,3").is_err());
    }

    #[test]
    fn enumerate_orders() {
        let specs15 = enumerate_specs(15);
        assert!(specs15.iter().any(|s| matches!(s, FamilySpec::Ms { .. })));
        assert!(specs15.iter().any(|s| matches!(s, FamilySpec::G3q { .. })));
        assert!(specs15.iter().any(|s| matches!(s, FamilySpec::Gpqrsu { .. })));
        assert!(specs15.iter().all(|s| s.order() == 15));
        for spec in &specs15 {
            construct(spec).unwrap();
        }
        let specs22 = enumerate_specs(22);
        assert!(specs22.iter().any(|s| matches!(s, FamilySpec::Inc { .. })));
        assert!(specs22.iter().all(|s| s.order() == 22));
        // no deleted products below 5x7
        assert!(enumerate_specs(15).iter().all(|s| !matches!(
            s,
            FamilySpec::Lex { deleted: true, .. }
        )));
        assert!(enumerate_specs(35)
            .iter()
            .any(|s| matches!(s, FamilySpec::Lex { deleted: true, .. })));
    }
}

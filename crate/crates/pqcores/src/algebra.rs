//! Number-theoretic and finite-field substrate: multiplicative subgroups of
//! `Z_n^*`, element orders, `GF(2^a)` log/exp arithmetic, Fermat numbers and
//! projective-geometry incidence.

use crate::error::{Error, Result};

/// Trial-division primality; all moduli in scope are far below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Modular exponentiation.
pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `x` in `Z_n^*` for prime `n`.
pub fn element_order(x: u64, n: u64) -> Result<u64> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let x = x % n;
    if x == 0 {
        return Err(Error::InvalidParameter(format!(
            "element_order requires gcd(x, n) = 1; got x ≡ 0 mod {n}"
        )));
    }
    // Order divides n-1; peel prime factors off the exponent.
    let mut order = n - 1;
    for f in prime_factors(n - 1) {
        while order % f == 0 && pow_mod(x, order / f, n) == 1 {
            order /= f;
        }
    }
    Ok(order)
}

/// Smallest primitive root of `Z_p^*`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = prime_factors(p - 1);
    'next: for g in 2..p {
        for f in &factors {
            if pow_mod(g, (p - 1) / f, p) == 1 {
                continue 'next;
            }
        }
        return Ok(g);
    }
    unreachable!("cyclic group Z_p^* always has a generator")
}

/// The unique order-`r` subgroup of `Z_n^*` for prime `n`, with a generator of
/// order exactly `r`. Elements are stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupH {
    pub modulus: u64,
    pub order: u64,
    pub elements: Vec<u64>,
    pub generator: u64,
}

impl SubgroupH {
    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }

    /// Least element of multiplicative order exactly `self.order`.
    pub fn smallest_generator(&self) -> u64 {
        self.elements
            .iter()
            .copied()
            .find(|&x| element_order(x, self.modulus).unwrap() == self.order)
            .expect("a cyclic group contains a generator")
    }

    /// The coset `c·H` as a sorted vector.
    pub fn coset(&self, c: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .elements
            .iter()
            .map(|&h| c % self.modulus * h % self.modulus)
            .collect();
        v.sort_unstable();
        v
    }

    /// `-H`, the coset of -1.
    pub fn negated(&self) -> Vec<u64> {
        self.coset(self.modulus - 1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.negated() == self.elements
    }
}

/// The unique subgroup of `Z_n^*` of order `r`, generated by `g^((n-1)/r)` for
/// the smallest primitive root `g`.
pub fn subgroup(n: u64, r: u64) -> Result<SubgroupH> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if r == 0 || (n - 1) % r != 0 {
        return Err(Error::NotDivisor { divisor: r, of: n - 1 });
    }
    let g = primitive_root(n)?;
    let generator = pow_mod(g, (n - 1) / r, n);
    let mut elements = Vec::with_capacity(r as usize);
    let mut x = 1u64;
    for _ in 0..r {
        elements.push(x);
        x = x * generator % n;
    }
    debug_assert_eq!(x, 1, "generator must have order exactly r");
    elements.sort_unstable();
    elements.dedup();
    debug_assert_eq!(elements.len() as u64, r);
    Ok(SubgroupH { modulus: n, order: r, elements, generator })
}

/// Fermat number `F_t = 2^(2^t) + 1`. Guarded so the value fits in 64 bits.
pub fn fermat(t: u32) -> Result<u64> {
    if t > 5 {
        return Err(Error::FermatOverflow(t));
    }
    Ok((1u64 << (1u32 << t)) + 1)
}

/// Fixed moduli for reproducible `GF(2^a)` tables. Entries are polynomial
/// bitmasks (bit i = coefficient of x^i).
fn gf2_modulus(a: u32) -> u64 {
    match a {
        2 => 0b111,              // x^2 + x + 1
        3 => 0b1011,             // x^3 + x + 1
        4 => 0b1_0011,           // x^4 + x + 1
        8 => 0b1_0001_1101,      // x^8 + x^4 + x^3 + x^2 + 1
        _ => least_irreducible(a),
    }
}

/// Lexicographically least irreducible polynomial of degree `a` over GF(2),
/// as the least bitmask with leading bit 2^a that has no factor of degree
/// 1..=a/2.
fn least_irreducible(a: u32) -> u64 {
    let lead = 1u64 << a;
    'cand: for tail in 1..lead {
        let poly = lead | tail;
        // A polynomial with zero constant term is divisible by x.
        if poly & 1 == 0 {
            continue;
        }
        for d in 1..=(a / 2) {
            for div in (1u64 << d)..(1u64 << (d + 1)) {
                if poly_rem(poly, div) == 0 {
                    continue 'cand;
                }
            }
        }
        return poly;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_rem(mut n: u64, d: u64) -> u64 {
    let dd = 63 - d.leading_zeros();
    while n != 0 {
        let nd = 63 - n.leading_zeros();
        if nd < dd {
            break;
        }
        n ^= d << (nd - dd);
    }
    n
}

/// Complete arithmetic tables for `GF(2^a)` with a designated primitive
/// element `w`. Field elements are polynomial bitmasks in `0..2^a`; addition
/// is XOR, multiplication goes through the log/exp tables.
#[derive(Debug, Clone)]
pub struct FieldGF2a {
    pub a: u32,
    pub modulus: u64,
    pub w: u64,
    /// exp[i] = w^i for i in 0..2^a-1.
    pub exp: Vec<u64>,
    /// log[x] = discrete log base w of x, for x in 1..2^a (log[0] unused).
    pub log: Vec<u64>,
}

impl FieldGF2a {
    pub fn size(&self) -> u64 {
        1u64 << self.a
    }

    /// Multiplicative group order `2^a - 1`.
    pub fn group_order(&self) -> u64 {
        self.size() - 1
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        x ^ y
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if x == 0 || y == 0 {
            0
        } else {
            self.exp[((self.log[x as usize] + self.log[y as usize]) % self.group_order()) as usize]
        }
    }

    pub fn inv(&self, x: u64) -> u64 {
        assert!(x != 0, "zero has no inverse");
        self.exp[((self.group_order() - self.log[x as usize]) % self.group_order()) as usize]
    }

    pub fn pow_w(&self, i: u64) -> u64 {
        self.exp[(i % self.group_order()) as usize]
    }

    pub fn log_of(&self, x: u64) -> u64 {
        assert!(x != 0, "discrete log of zero");
        self.log[x as usize]
    }

    /// The subfield `GF(2^d)` (requires `d | a`) as a sorted element list:
    /// `{0} ∪ ⟨w^((2^a-1)/(2^d-1))⟩`.
    pub fn subfield(&self, d: u32) -> Result<Vec<u64>> {
        if d == 0 || self.a % d != 0 {
            return Err(Error::NotDivisor { divisor: d as u64, of: self.a as u64 });
        }
        let sub_order = (1u64 << d) - 1;
        let step = self.group_order() / sub_order;
        let mut elems = vec![0u64];
        let mut i = 0u64;
        for _ in 0..sub_order {
            elems.push(self.exp[i as usize]);
            i = (i + step) % self.group_order();
        }
        elems.sort_unstable();
        elems.dedup();
        debug_assert_eq!(elems.len() as u64, sub_order + 1);
        Ok(elems)
    }
}

/// Build the `GF(2^a)` tables over the fixed modulus list; `w` is the least
/// polynomial-value primitive element.
pub fn make_field(a: u32) -> Result<FieldGF2a> {
    if a == 0 || a > 16 {
        return Err(Error::FieldExponent(a));
    }
    let modulus = if a == 1 { 0b10 } else { gf2_modulus(a) };
    let size = 1u64 << a;
    let group = size - 1;

    let mul_raw = |x: u64, y: u64| -> u64 {
        let mut acc = 0u64;
        let mut x = x;
        let mut y = y;
        while y > 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            x <<= 1;
            if x & size != 0 {
                x ^= modulus;
            }
            y >>= 1;
        }
        acc
    };

    let order_of = |x: u64| -> u64 {
        let mut k = 1u64;
        let mut acc = x;
        while acc != 1 {
            acc = mul_raw(acc, x);
            k += 1;
        }
        k
    };

    let mut w = 0;
    for cand in 1..size {
        if order_of(cand) == group {
            w = cand;
            break;
        }
    }
    assert!(w != 0, "GF(2^a)* is cyclic, a primitive element exists");

    let mut exp = vec![0u64; group as usize];
    let mut log = vec![0u64; size as usize];
    let mut x = 1u64;
    for i in 0..group {
        exp[i as usize] = x;
        log[x as usize] = i;
        x = mul_raw(x, w);
    }
    debug_assert_eq!(x, 1);
    Ok(FieldGF2a { a, modulus, w, exp, log })
}

/// All `t ∈ Z_q^*` with `t^(s/2) ∈ -H(q,r)`, each paired with
/// `u = lcm(r, o(t))`; sorted by `(u, t)`. An empty result is valid.
pub fn choose_t(p: u64, q: u64, r: u64, s: u64) -> Result<Vec<(u64, u64)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p == q {
        return Err(Error::InvalidParameter("p and q must be distinct primes".into()));
    }
    if s % 2 != 0 {
        return Err(Error::InvalidParameter(format!("s must be even, got {s}")));
    }
    if (p - 1) % s != 0 {
        return Err(Error::NotDivisor { divisor: s, of: p - 1 });
    }
    let h = subgroup(q, r)?;
    let neg_h = h.negated();
    let mut out = Vec::new();
    for t in 1..q {
        let ts = pow_mod(t, s / 2, q);
        if neg_h.binary_search(&ts).is_ok() {
            let u = lcm(r, element_order(t, q)?);
            out.push((t, u));
        }
    }
    out.sort_unstable_by_key(|&(t, u)| (u, t));
    Ok(out)
}

/// Point/block incidence structure of a symmetric design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveDesign {
    pub kind: DesignKind,
    /// Point identifiers, used for vertex labels.
    pub points: Vec<String>,
    /// Blocks as sorted lists of point indices.
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesignKind {
    /// Points and hyperplanes of PG(d-1, r).
    Pg { d: u32, r: u64 },
    /// The 2-(11,5,2) biplane on Z_11.
    H11,
}

impl ProjectiveDesign {
    pub fn replication_number(&self, point: usize) -> usize {
        self.blocks.iter().filter(|b| b.contains(&point)).count()
    }

    pub fn pair_count(&self, p1: usize, p2: usize) -> usize {
        self.blocks.iter().filter(|b| b.contains(&p1) && b.contains(&p2)).count()
    }
}

/// Points and hyperplanes of `PG(d-1, r)` for prime `r`. Points are the
/// normalized representatives (first nonzero coordinate 1) of 1-dimensional
/// subspaces of `GF(r)^d`, listed in lexicographic order; block `i` is the set
/// of points orthogonal to point vector `i`.
pub fn pg_design(d: u32, r: u64) -> Result<ProjectiveDesign> {
    if !is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    if d < 2 {
        return Err(Error::InvalidParameter(format!("pg_design requires d >= 2, got {d}")));
    }
    let dim = d as usize;
    let mut reps: Vec<Vec<u64>> = Vec::new();
    // Normalized representatives: leading coordinate (first nonzero) is 1, so
    // enumerate vectors whose first nonzero entry is 1, in lex order.
    let mut v = vec![0u64; dim];
    loop {
        // increment base-r odometer
        let mut i = dim;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < r {
                break;
            }
            v[i] = 0;
            if i == 0 {
                // wrapped around: done
                let points: Vec<String> = reps.iter().map(|p| vec_label(p)).collect();
                let blocks = pg_blocks(&reps, r);
                return Ok(ProjectiveDesign { kind: DesignKind::Pg { d, r }, points, blocks });
            }
        }
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            reps.push(v.clone());
        }
    }
}

fn vec_label(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

fn pg_blocks(reps: &[Vec<u64>], r: u64) -> Vec<Vec<usize>> {
    reps.iter()
        .map(|h| {
            reps.iter()
                .enumerate()
                .filter(|(_, x)| {
                    x.iter().zip(h.iter()).map(|(a, b)| a * b % r).sum::<u64>() % r == 0
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// The 2-(11,5,2) design: points `Z_11`, blocks `R+i` for the nonzero
/// quadratic residues `R = {1,3,4,5,9}`.
pub fn h11_design() -> ProjectiveDesign {
    const R: [u64; 5] = [1, 3, 4, 5, 9];
    let points: Vec<String> = (0..11).map(|i| i.to_string()).collect();
    let blocks: Vec<Vec<usize>> = (0..11u64)
        .map(|i| {
            let mut b: Vec<usize> = R.iter().map(|&x| ((x + i) % 11) as usize).collect();
            b.sort_unstable();
            b
        })
        .collect();
    ProjectiveDesign { kind: DesignKind::H11, points, blocks }
}

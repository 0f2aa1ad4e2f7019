//! Vertex permutations and closure of the group they generate.

use std::collections::HashSet;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `a` after `b`: (compose(a,b))(x) = a(b(x)).
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_permutation(p: &Perm, n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// BFS closure of the group generated by `gens`, capped at `limit` elements.
/// Returns `None` if the cap is hit.
pub fn generate_group(gens: &[Perm], n: usize, limit: usize) -> Option<Vec<Perm>> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue: Vec<Perm> = vec![identity(n)];
    seen.insert(identity(n));
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for g in gens {
            let next = compose(g, &cur);
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push(next);
            }
        }
    }
    Some(queue)
}

/// Orbit of a point under the generated group.
pub fn point_orbit(gens: &[Perm], start: usize) -> Vec<usize> {
    let mut in_orbit = vec![false; gens.first().map_or(start + 1, |g| g.len())];
    if in_orbit.len() <= start {
        in_orbit.resize(start + 1, false);
    }
    let mut queue = vec![start];
    in_orbit[start] = true;
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for g in gens {
            let w = g[v];
            if !in_orbit[w] {
                in_orbit[w] = true;
                queue.push(w);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// Orbit of an ordered pair under the generated group.
pub fn arc_orbit(gens: &[Perm], start: (usize, usize)) -> HashSet<(usize, usize)> {
    let mut seen = HashSet::new();
    seen.insert(start);
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let (u, v) = queue[head];
        head += 1;
        for g in gens {
            let next = (g[u], g[v]);
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    seen
}

/// Canonical representative of a vertex subset under a fully enumerated
/// group: the lexicographically least image.
pub fn canonical_subset(group: &[Perm], subset: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for g in group {
        let mut img: Vec<usize> = subset.iter().map(|&v| g[v]).collect();
        img.sort_unstable();
        if best.as_ref().map_or(true, |b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_else(|| subset.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let a = vec![1, 2, 0];
        let b = vec![0, 2, 1];
        assert_eq!(compose(&a, &b), vec![1, 0, 2]);
        assert_eq!(compose(&a, &inverse(&a)), identity(3));
    }

    #[test]
    fn cyclic_group_closure() {
        let rot: Perm = vec![1, 2, 3, 4, 0];
        let g = generate_group(&[rot.clone()], 5, 100).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(point_orbit(&[rot], 0), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn group_cap() {
        let rot: Perm = vec![1, 2, 3, 4, 0];
        let swap: Perm = vec![1, 0, 2, 3, 4];
        assert!(generate_group(&[rot, swap], 5, 10).is_none()); // S_5 has 120 elements
    }
}

//! Concrete digraph and graph families, and the permutation-model random digraph.
//!
//! Random objects are driven by `ChaCha8Rng::seed_from_u64(seed)`; a random
//! permutation is an explicit Fisher-Yates shuffle `for i in (1..n).rev()`
//! swapping `i` with a uniform `j` in `0..=i` (drawn as a `u64`).

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::{is_prime, legendre};
use crate::digraph::{Digraph, UGraph};
use crate::error::{Error, Result};

/// Complete k-regular m-periodic digraph on `Z/m x [k]`.
pub fn complete_digraph(k: usize, m: usize) -> Result<Digraph> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidInput("k and m must be positive".into()));
    }
    let idx = |x: usize, y: usize| x * k + y;
    let mut edges = Vec::with_capacity(m * k * k);
    for x in 0..m {
        for y in 0..k {
            for z in 0..k {
                edges.push((idx(x, y), idx((x + 1) % m, z), 1));
            }
        }
    }
    Digraph::from_edge_list(k * m, &edges)
}

/// Paley digraph on F_p, `a -> b` iff `b - a` is a nonzero square. Loop-free.
pub fn paley_digraph(p: u64) -> Result<Digraph> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p, "not prime".into()));
    }
    if p % 4 != 3 {
        return Err(Error::BadPrime(p, "must be 3 mod 4".into()));
    }
    let squares: Vec<u64> = (1..p).filter(|&x| legendre(x, p) == 1).collect();
    let n = p as usize;
    let mut edges = Vec::with_capacity(n * squares.len());
    for a in 0..p {
        for &s in &squares {
            edges.push((a as usize, ((a + s) % p) as usize, 1));
        }
    }
    Digraph::from_edge_list(n, &edges)
}

/// Vectors of F_p^len with first nonzero coordinate 1, in lexicographic order.
fn normalized_vectors(p: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..len {
        let free = len - lead - 1;
        for idx in 0..p.pow(free as u32) {
            let mut v = vec![0u64; len];
            v[lead] = 1;
            let mut x = idx;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = x % p;
                x /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Point-hyperplane incidence digraph of P^d(F_p): vertices are the lines
/// (first) and the hyperplanes (second) of F_p^{d+1}, with edges in both
/// directions between incident pairs. Hyperplanes are stored as their
/// normalized dual vectors.
pub fn projective_incidence(p: u64, d: usize) -> Result<Digraph> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p, "not prime".into()));
    }
    if d < 2 {
        return Err(Error::InvalidInput("d must be at least 2".into()));
    }
    let pts = normalized_vectors(p, d + 1);
    let np = pts.len();
    let mut edges = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        for (j, h) in pts.iter().enumerate() {
            let dot = x.iter().zip(h).map(|(a, b)| a * b).sum::<u64>() % p;
            if dot == 0 {
                edges.push((i, np + j, 1));
                edges.push((np + j, i, 1));
            }
        }
    }
    Digraph::from_edge_list(2 * np, &edges)
}

/// De Bruijn digraph DB(k, s). Vertex `v` is the word `a_1..a_s` read as a
/// base-k number with `a_1` most significant.
pub fn de_bruijn(k: usize, s: usize) -> Result<Digraph> {
    if k < 2 || s < 1 {
        return Err(Error::InvalidInput("need k >= 2 and s >= 1".into()));
    }
    let n = k
        .checked_pow(s as u32)
        .filter(|&n| n <= 1 << 24)
        .ok_or(Error::Overflow)?;
    let mut edges = Vec::with_capacity(n * k);
    for v in 0..n {
        for t in 0..k {
            edges.push((v, (v * k) % n + t, 1));
        }
    }
    Digraph::from_edge_list(n, &edges)
}

/// Non-backtracking line digraph of a simple (k+1)-regular graph, with the
/// label `(v, w)` of each vertex. Vertices are directed edges in
/// lexicographic order.
pub fn line_digraph(g: &UGraph) -> Result<(Digraph, Vec<(usize, usize)>)> {
    if let Some((u, v)) = g.is_simple() {
        return Err(Error::HasLoopOrMultiEdge(u, v));
    }
    if g.k() < 2 {
        return Err(Error::NotRegular(format!(
            "line digraph needs degree at least 2, got {}",
            g.k()
        )));
    }
    let mut labels = Vec::new();
    for v in 0..g.n() {
        for (w, _) in g.neighbors(v) {
            labels.push((v, w));
        }
    }
    let index: HashMap<(usize, usize), usize> =
        labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut edges = Vec::new();
    for (i, &(v, w)) in labels.iter().enumerate() {
        for (u, _) in g.neighbors(w) {
            if u != v {
                edges.push((i, index[&(w, u)], 1));
            }
        }
    }
    Ok((Digraph::from_edge_list(labels.len(), &edges)?, labels))
}

/// Uniform random permutation of `0..n` by Fisher-Yates.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i as u64) as usize;
        p.swap(i, j);
    }
    p
}

/// Sum of `k` independent uniform permutation matrices.
pub fn random_regular_digraph(n: usize, k: usize, seed: u64) -> Result<Digraph> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("n and k must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * k);
    for _ in 0..k {
        let perm = random_permutation(n, &mut rng);
        edges.extend(perm.iter().enumerate().map(|(u, &v)| (u, v, 1)));
    }
    Digraph::from_edge_list(n, &edges)
}

/// Uniform simple d-regular graph on `n` vertices from the pairing model,
/// rejecting pairings with loops or repeated edges.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> Result<UGraph> {
    if n * d % 2 == 1 || d >= n || d == 0 {
        return Err(Error::InvalidInput(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..100_000 {
        let mut points: Vec<usize> = (0..n * d).map(|i| i / d).collect();
        let perm = random_permutation(points.len(), &mut rng);
        points = perm.iter().map(|&i| points[i]).collect();
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v, 1));
        }
        return UGraph::from_edges(n, &edges);
    }
    Err(Error::NoConvergence("pairing model rejected every sample".into()))
}

pub fn complete_graph(r: usize) -> Result<UGraph> {
    let edges: Vec<_> = (0..r)
        .flat_map(|u| (u + 1..r).map(move |v| (u, v, 1)))
        .collect();
    UGraph::from_edges(r, &edges)
}

pub fn cycle_graph(n: usize) -> Result<UGraph> {
    if n < 3 {
        return Err(Error::InvalidInput("cycle needs at least 3 vertices".into()));
    }
    let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n, 1)).collect();
    UGraph::from_edges(n, &edges)
}

pub fn petersen() -> UGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, 1));
        edges.push((i, i + 5, 1));
        edges.push((5 + i, 5 + (i + 2) % 5, 1));
    }
    UGraph::from_edges(10, &edges).expect("Petersen graph is 3-regular")
}

/// K_{r,r}.
pub fn complete_bipartite(r: usize) -> Result<UGraph> {
    let edges: Vec<_> = (0..r)
        .flat_map(|u| (0..r).map(move |v| (u, r + v, 1)))
        .collect();
    UGraph::from_edges(2 * r, &edges)
}

/// Prism C_n x K_2 (3-regular).
pub fn prism(n: usize) -> Result<UGraph> {
    if n < 3 {
        return Err(Error::InvalidInput("prism needs n >= 3".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n, 1));
        edges.push((n + i, n + (i + 1) % n, 1));
        edges.push((i, n + i, 1));
    }
    UGraph::from_edges(2 * n, &edges)
}

pub fn hypercube(d: usize) -> Result<UGraph> {
    if d == 0 || d > 16 {
        return Err(Error::InvalidInput("hypercube dimension must be in 1..=16".into()));
    }
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .map(|(u, v)| (u, v, 1))
        .collect();
    UGraph::from_edges(n, &edges)
}

fn parse_args(name: &str, args: &str, count: usize) -> Result<Vec<u64>> {
    let vals: Vec<u64> = args
        .split(',')
        .map(|a| a.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::UnknownName(name.to_string()))?;
    if vals.len() != count {
        return Err(Error::UnknownName(name.to_string()));
    }
    Ok(vals)
}

/// Named test graphs: `complete(r)`, `cycle(n)`, `petersen`,
/// `complete_bipartite(r)`, `prism(n)`, `hypercube(d)` and
/// `random_regular(n,d,seed)`.
pub fn builtin_graph(name: &str) -> Result<UGraph> {
    let name = name.trim();
    if name == "petersen" {
        return Ok(petersen());
    }
    let unknown = || Error::UnknownName(name.to_string());
    let (head, rest) = name.split_once('(').ok_or_else(unknown)?;
    let args = rest.strip_suffix(')').ok_or_else(unknown)?;
    match head {
        "complete" => complete_graph(parse_args(name, args, 1)?[0] as usize),
        "cycle" => cycle_graph(parse_args(name, args, 1)?[0] as usize),
        "complete_bipartite" => complete_bipartite(parse_args(name, args, 1)?[0] as usize),
        "prism" => prism(parse_args(name, args, 1)?[0] as usize),
        "hypercube" => hypercube(parse_args(name, args, 1)?[0] as usize),
        "random_regular" => {
            let a = parse_args(name, args, 3)?;
            random_regular_graph(a[0] as usize, a[1] as usize, a[2])
        }
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_digraph_shapes() {
        let d = complete_digraph(1, 1).unwrap();
        assert_eq!((d.n(), d.k(), d.multiplicity(0, 0)), (1, 1, 1));
        let d = complete_digraph(2, 3).unwrap();
        assert_eq!((d.n(), d.k(), d.period().unwrap().m), (6, 2, 3));
        let d = complete_digraph(3, 1).unwrap();
        assert_eq!(d.n(), 3);
        assert!((0..3).all(|u| (0..3).all(|v| d.multiplicity(u, v) == 1)));
    }

    #[test]
    fn paley_examples() {
        let d = paley_digraph(3).unwrap();
        assert_eq!(d.edges().map(|(u, v, _)| (u, v)).collect::<Vec<_>>(), [(0, 1), (1, 2), (2, 0)]);
        let d = paley_digraph(7).unwrap();
        assert_eq!(d.k(), 3);
        assert_eq!(d.out_edges(0).map(|(v, _)| v).collect::<Vec<_>>(), [1, 2, 4]);
        assert_eq!(paley_digraph(11).unwrap().k(), 5);
        assert!(matches!(paley_digraph(13), Err(Error::BadPrime(13, _))));
        assert!(matches!(paley_digraph(15), Err(Error::BadPrime(15, _))));
        assert_eq!(d.trace(), 0);
    }

    #[test]
    fn incidence_sizes() {
        for (p, d, n, k) in [(2, 2, 14, 3), (3, 2, 26, 4), (2, 3, 30, 7)] {
            let g = projective_incidence(p, d).unwrap();
            assert_eq!((g.n(), g.k()), (n, k), "p={p} d={d}");
            assert_eq!(g.reverse(), g);
        }
    }

    #[test]
    fn de_bruijn_examples() {
        let d = de_bruijn(2, 1).unwrap();
        assert!((0..2).all(|u| (0..2).all(|v| d.multiplicity(u, v) == 1)));
        let d = de_bruijn(2, 3).unwrap();
        assert_eq!((d.n(), d.k(), d.period().unwrap().m), (8, 2, 1));
        let d = de_bruijn(3, 2).unwrap();
        assert_eq!((d.n(), d.k()), (9, 3));
        // 5 = (1,2) -> (2,t)
        assert_eq!(de_bruijn(3, 2).unwrap().out_edges(5).map(|e| e.0).collect::<Vec<_>>(), [6, 7, 8]);
    }

    #[test]
    fn line_digraph_examples() {
        let (d, labels) = line_digraph(&complete_graph(4).unwrap()).unwrap();
        assert_eq!((d.n(), d.k()), (12, 2));
        assert_eq!(labels[0], (0, 1));
        let (d, _) = line_digraph(&petersen()).unwrap();
        assert_eq!((d.n(), d.k()), (30, 2));
        let (d, _) = line_digraph(&complete_bipartite(3).unwrap()).unwrap();
        assert_eq!((d.n(), d.k(), d.period().unwrap().m), (18, 2, 2));
        let tripled: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6, 3)).collect();
        let g = UGraph::from_edges(6, &tripled).unwrap();
        assert!(matches!(line_digraph(&g), Err(Error::HasLoopOrMultiEdge(..))));
    }

    #[test]
    fn random_digraphs_are_reproducible() {
        let a = random_regular_digraph(5, 2, 42).unwrap();
        let b = random_regular_digraph(5, 2, 42).unwrap();
        assert_eq!(a, b);
        let d = random_regular_digraph(100, 4, 7).unwrap();
        assert_eq!(d.k(), 4);
        assert_ne!(d, random_regular_digraph(100, 4, 8).unwrap());
        assert_eq!(random_regular_digraph(9, 1, 3).unwrap().k(), 1);
    }

    #[test]
    fn builtins() {
        let k4 = builtin_graph("complete(4)").unwrap();
        assert_eq!((k4.n(), k4.k()), (4, 3));
        let c10 = builtin_graph("cycle(10)").unwrap();
        assert_eq!((c10.n(), c10.k()), (10, 2));
        let p = builtin_graph("petersen").unwrap();
        assert_eq!((p.n(), p.k(), p.diameter()), (10, 3, Some(2)));
        assert_eq!(builtin_graph("hypercube(3)").unwrap().k(), 3);
        let r = builtin_graph("random_regular(20,3,1)").unwrap();
        assert!(r.is_simple().is_none());
        assert_eq!(r.k(), 3);
        assert!(matches!(builtin_graph("dodecahedron"), Err(Error::UnknownName(_))));
        assert!(matches!(builtin_graph("cycle(x)"), Err(Error::UnknownName(_))));
    }
}

//! Finite regular multidigraphs and undirected multigraphs.
//!
//! Vertices are the integers `0..n`. Adjacency is stored as a compressed
//! sparse row structure with one entry per distinct ordered pair `(u, v)`
//! carrying its multiplicity. Loops and parallel edges are allowed and
//! count toward degrees.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// Largest `n` for which a dense adjacency matrix is materialized.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    mults: Vec<u64>,
}

impl Csr {
    fn from_map(n: usize, map: &BTreeMap<(usize, usize), u64>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::with_capacity(map.len());
        let mut mults = Vec::with_capacity(map.len());
        for (&(u, v), &m) in map {
            if m == 0 {
                continue;
            }
            offsets[u + 1] += 1;
            targets.push(v);
            mults.push(m);
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Csr {
            n,
            offsets,
            targets,
            mults,
        }
    }

    fn row(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let r = self.offsets[u]..self.offsets[u + 1];
        self.targets[r.clone()]
            .iter()
            .copied()
            .zip(self.mults[r].iter().copied())
    }

    fn get(&self, u: usize, v: usize) -> u64 {
        let r = self.offsets[u]..self.offsets[u + 1];
        match self.targets[r.clone()].binary_search(&v) {
            Ok(i) => self.mults[r.start + i],
            Err(_) => 0,
        }
    }

    fn out_degrees(&self) -> Vec<u64> {
        (0..self.n).map(|u| self.row(u).map(|(_, m)| m).sum()).collect()
    }

    fn in_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n];
        for (&v, &m) in self.targets.iter().zip(&self.mults) {
            d[v] += m;
        }
        d
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n).flat_map(move |u| self.row(u).map(move |(v, m)| (u, v, m)))
    }
}

fn collect_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<BTreeMap<(usize, usize), u64>> {
    if n == 0 {
        return Err(Error::InvalidInput("vertex count must be positive".into()));
    }
    let mut map = BTreeMap::new();
    for &(u, v, m) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) out of range for n = {n}"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) has zero multiplicity"
            )));
        }
        let e = map.entry((u, v)).or_insert(0u64);
        *e = e.checked_add(m).ok_or(Error::Overflow)?;
    }
    Ok(map)
}

/// A finite k-regular multidigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adj: Csr,
    k: u64,
}

impl Digraph {
    /// Builds a digraph from `(u, v, multiplicity)` triples, summing repeated
    /// pairs, and checks that every in- and out-degree is the same.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let map = collect_edges(n, edges)?;
        Self::from_map(n, &map)
    }

    fn from_map(n: usize, map: &BTreeMap<(usize, usize), u64>) -> Result<Self> {
        let adj = Csr::from_map(n, map);
        let out = adj.out_degrees();
        let inn = adj.in_degrees();
        let k = out[0];
        if k == 0 {
            return Err(Error::NonRegular("vertex 0 has out-degree 0".into()));
        }
        if let Some(u) = (0..n).find(|&u| out[u] != k) {
            return Err(Error::NonRegular(format!(
                "out-degree of {u} is {}, expected {k}",
                out[u]
            )));
        }
        if let Some(u) = (0..n).find(|&u| inn[u] != k) {
            return Err(Error::NonRegular(format!(
                "in-degree of {u} is {}, expected {k}",
                inn[u]
            )));
        }
        Ok(Digraph { adj, k })
    }

    pub fn n(&self) -> usize {
        self.adj.n
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    /// Out-neighbours of `u` with multiplicities, sorted by target.
    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.adj.row(u)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.adj.get(u, v)
    }

    /// All distinct edges `(u, v, mult)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.adj.entries()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.targets.len()
    }

    /// Sum of loop multiplicities, i.e. the trace of the adjacency matrix.
    pub fn trace(&self) -> u64 {
        (0..self.n()).map(|u| self.multiplicity(u, u)).sum()
    }

    /// The transposed digraph (all edges reversed).
    pub fn reverse(&self) -> Digraph {
        let map: BTreeMap<_, _> = self.edges().map(|(u, v, m)| ((v, u), m)).collect();
        Digraph {
            adj: Csr::from_map(self.n(), &map),
            k: self.k,
        }
    }

    /// `y = A x` where `(A x)(u) = sum over u -> v of mult * x(v)`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (u, yu) in y.iter_mut().enumerate() {
            *yu = self.adj.row(u).map(|(v, m)| m as f64 * x[v]).sum();
        }
    }

    /// `y = A^T x`, i.e. mass at `u` pushed forward along out-edges.
    pub fn apply_transpose(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (u, &xu) in x.iter().enumerate() {
            if xu != 0.0 {
                for (v, m) in self.adj.row(u) {
                    y[v] += m as f64 * xu;
                }
            }
        }
    }

    /// Dense row-major adjacency matrix.
    pub fn dense(&self) -> Result<Vec<f64>> {
        let n = self.n();
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: DENSE_LIMIT,
            });
        }
        let mut a = vec![0.0; n * n];
        for (u, v, m) in self.edges() {
            a[u * n + v] = m as f64;
        }
        Ok(a)
    }

    /// True iff every ordered pair of vertices is joined by a directed path.
    pub fn strongly_connected(&self) -> bool {
        let n = self.n();
        let forward = reach_count(n, 0, |u, f: &mut dyn FnMut(usize)| {
            self.adj.row(u).for_each(|(v, _)| f(v))
        });
        if forward != n {
            return false;
        }
        let rev = self.reverse();
        reach_count(n, 0, |u, f: &mut dyn FnMut(usize)| {
            rev.adj.row(u).for_each(|(v, _)| f(v))
        }) == n
    }

    /// Period and cyclic class assignment.
    pub fn period(&self) -> Result<PeriodData> {
        if !self.strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        let n = self.n();
        let mut level = vec![usize::MAX; n];
        level[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for (v, _) in self.adj.row(u) {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut m = 0usize;
        for (u, v, _) in self.edges() {
            let defect = (level[u] + 1).abs_diff(level[v]);
            m = gcd(m, defect);
        }
        // A strongly connected digraph always has a closed walk, so m > 0.
        let classes = level.iter().map(|&l| l % m).collect();
        Ok(PeriodData { m, classes })
    }

    /// Symmetrization `A + A^T`, a 2k-regular undirected multigraph.
    pub fn symmetrize(&self) -> UGraph {
        let mut map = BTreeMap::new();
        for (u, v, m) in self.edges() {
            *map.entry((u, v)).or_insert(0) += m;
            *map.entry((v, u)).or_insert(0) += m;
        }
        UGraph {
            adj: Csr::from_map(self.n(), &map),
            k: 2 * self.k,
        }
    }

    /// The digraph whose edges are the paths of length `ell`; adjacency `A^ell`.
    pub fn power(&self, ell: usize) -> Result<Digraph> {
        if ell == 0 {
            return Err(Error::InvalidInput("power must be at least 1".into()));
        }
        let n = self.n();
        let mut rows: Vec<BTreeMap<usize, u64>> = (0..n)
            .map(|u| self.adj.row(u).collect())
            .collect();
        for _ in 1..ell {
            let mut next = Vec::with_capacity(n);
            for row in &rows {
                let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
                for (&w, &c) in row {
                    for (v, m) in self.adj.row(w) {
                        let e = acc.entry(v).or_insert(0);
                        let add = c.checked_mul(m).ok_or(Error::Overflow)?;
                        *e = e.checked_add(add).ok_or(Error::Overflow)?;
                    }
                }
                next.push(acc);
            }
            rows = next;
        }
        let k = self.k.checked_pow(ell as u32).ok_or(Error::Overflow)?;
        let map: BTreeMap<_, _> = rows
            .into_iter()
            .enumerate()
            .flat_map(|(u, r)| r.into_iter().map(move |(v, m)| ((u, v), m)))
            .collect();
        Ok(Digraph {
            adj: Csr::from_map(n, &map),
            k,
        })
    }

    /// Vertex sets of the strongly connected components (Kosaraju).
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![(s, self.adj.offsets[s])];
            while let Some(top) = stack.last_mut() {
                let (u, pos) = *top;
                if pos < self.adj.offsets[u + 1] {
                    top.1 = pos + 1;
                    let v = self.adj.targets[pos];
                    if !seen[v] {
                        seen[v] = true;
                        stack.push((v, self.adj.offsets[v]));
                    }
                } else {
                    order.push(u);
                    stack.pop();
                }
            }
        }
        let rev = self.reverse();
        let mut comp = vec![usize::MAX; n];
        let mut comps = Vec::new();
        for &s in order.iter().rev() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for (v, _) in rev.adj.row(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    /// Induced sub-digraph on `vertices` (which must be closed under out-edges).
    pub fn induced(&self, vertices: &[usize]) -> Result<Digraph> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (v, m) in self.out_edges(u) {
                if index[v] != usize::MAX {
                    edges.push((i, index[v], m));
                }
            }
        }
        Digraph::from_edge_list(vertices.len(), &edges)
    }
}

fn reach_count(n: usize, start: usize, mut succ: impl FnMut(usize, &mut dyn FnMut(usize))) -> usize {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        succ(u, &mut |v| {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        });
    }
    count
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Period `m` of a strongly connected digraph with its cyclic classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodData {
    pub m: usize,
    /// `classes[v]` in `0..m`; every edge `u -> v` has `classes[v] = classes[u] + 1 mod m`.
    pub classes: Vec<usize>,
}

impl PeriodData {
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.m];
        for &c in &self.classes {
            s[c] += 1;
        }
        s
    }
}

/// A finite regular undirected multigraph, stored as a symmetric adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UGraph {
    adj: Csr,
    k: u64,
}

impl UGraph {
    /// Builds a graph from undirected edges `{u, v}` with multiplicities.
    /// A loop `{u, u}` of multiplicity `m` contributes `m` to the diagonal.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let half = collect_edges(n, edges)?;
        let mut map = BTreeMap::new();
        for (&(u, v), &m) in &half {
            *map.entry((u, v)).or_insert(0u64) += m;
            if u != v {
                *map.entry((v, u)).or_insert(0u64) += m;
            }
        }
        Self::from_symmetric_map(n, &map)
    }

    fn from_symmetric_map(n: usize, map: &BTreeMap<(usize, usize), u64>) -> Result<Self> {
        let adj = Csr::from_map(n, map);
        let deg = adj.out_degrees();
        let k = deg[0];
        if let Some(u) = (0..n).find(|&u| deg[u] != k) {
            return Err(Error::NotRegular(format!(
                "degree of {u} is {}, expected {k}",
                deg[u]
            )));
        }
        Ok(UGraph { adj, k })
    }

    pub fn n(&self) -> usize {
        self.adj.n
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.adj.row(u)
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.adj.get(u, v)
    }

    /// Number of undirected edges, counting multiplicity.
    pub fn edge_count(&self) -> usize {
        let total: u64 = self.adj.entries().map(|(_, _, m)| m).sum();
        let loops: u64 = (0..self.n()).map(|u| self.multiplicity(u, u)).sum();
        ((total + loops) / 2) as usize
    }

    pub fn is_simple(&self) -> Option<(usize, usize)> {
        self.adj
            .entries()
            .find(|&(u, v, m)| u == v || m > 1)
            .map(|(u, v, _)| (u, v))
    }

    pub fn connected(&self) -> bool {
        reach_count(self.n(), 0, |u, f: &mut dyn FnMut(usize)| {
            self.adj.row(u).for_each(|(v, _)| f(v))
        }) == self.n()
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut color = vec![usize::MAX; n];
        for s in 0..n {
            if color[s] != usize::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for (v, _) in self.adj.row(u) {
                    if color[v] == usize::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn diameter(&self) -> Option<usize> {
        if !self.connected() {
            return None;
        }
        let n = self.n();
        let mut best = 0;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for (v, _) in self.adj.row(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        best = best.max(dist[v]);
                        queue.push_back(v);
                    }
                }
            }
        }
        Some(best)
    }

    pub fn dense(&self) -> Vec<f64> {
        let n = self.n();
        let mut a = vec![0.0; n * n];
        for (u, v, m) in self.adj.entries() {
            a[u * n + v] = m as f64;
        }
        a
    }

    /// The symmetric adjacency viewed as a digraph (each edge in both directions).
    pub fn as_digraph(&self) -> Digraph {
        Digraph {
            adj: self.adj.clone(),
            k: self.k,
        }
    }
}

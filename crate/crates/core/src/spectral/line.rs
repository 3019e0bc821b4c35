use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify_spectrum_with, SpectralOptions};
use crate::constructions::line_digraph;
use crate::digraph::UGraph;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, symmetric_eigenvalues, Mat};

/// A 1- or 2-dimensional invariant subspace of a line digraph adjacency,
/// built from an eigenpair `(lambda, f)` of the underlying graph.
#[derive(Debug, Clone)]
pub struct Block {
    pub lambda: f64,
    /// Orthonormal basis vectors (one or two).
    pub basis: Vec<Vec<f64>>,
    /// Action matrix `B^T A B`, row-major, `dim x dim`.
    pub action: Vec<f64>,
    /// `||A B - B C||_F`.
    pub residual: f64,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients `(c1, c0)` of the monic characteristic polynomial
    /// `mu^2 + c1 mu + c0` of a 2-block.
    pub fn char_poly(&self) -> Option<(f64, f64)> {
        if self.dim() != 2 {
            return None;
        }
        let c = &self.action;
        Some((-(c[0] + c[3]), c[0] * c[3] - c[1] * c[2]))
    }

    /// Distance of the action's characteristic polynomial from
    /// `mu^2 - lambda mu + k`; for 1-blocks, `|mu^2 - lambda mu + k|` at the
    /// block's eigenvalue.
    pub fn char_poly_error(&self, k: usize) -> f64 {
        match self.char_poly() {
            Some((c1, c0)) => (c1 + self.lambda).abs().max((c0 - k as f64).abs()),
            None => {
                let mu = self.action[0];
                (mu * mu - self.lambda * mu + k as f64).abs()
            }
        }
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        match self.char_poly() {
            Some((c1, c0)) => quadratic_roots(c1, c0).to_vec(),
            None => vec![Complex64::new(self.action[0], 0.0)],
        }
    }
}

/// Roots of `mu^2 + b mu + c`.
fn quadratic_roots(b: f64, c: f64) -> [Complex64; 2] {
    let disc = Complex64::new(b * b - 4.0 * c, 0.0).sqrt();
    [(-b + disc) / 2.0, (-b - disc) / 2.0]
}

/// Explicit block decomposition certifying that a line digraph adjacency is
/// 2-normal on the span of the blocks.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Regularity of the line digraph (degree of the graph minus one).
    pub k: usize,
    pub n: usize,
    pub blocks: Vec<Block>,
    /// Largest block residual.
    pub residual: f64,
    /// Largest `|<b, b'>|` between basis vectors of different blocks.
    pub orthogonality: f64,
    /// Dimension of the complement of the blocks.
    pub tail_dim: usize,
    /// Multiplicities of +1 and -1 on the complement, from its trace.
    pub tail_plus: usize,
    pub tail_minus: usize,
    /// `||(A^2 - I) x|| / ||x||` for a random `x` in the complement.
    pub tail_residual: f64,
}

impl BlockDecomposition {
    pub fn covered_dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn max_char_poly_error(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.char_poly_error(self.k))
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of all blocks followed by the measured `+1`/`-1` tail.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = self.blocks.iter().flat_map(|b| b.eigenvalues()).collect();
        v.extend(std::iter::repeat_n(Complex64::new(1.0, 0.0), self.tail_plus));
        v.extend(std::iter::repeat_n(Complex64::new(-1.0, 0.0), self.tail_minus));
        v
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Builds the invariant subspaces `span{f(w), f(v)}` over the directed edges
/// `(v, w)` for every eigenpair of the graph. Fails with `ResidualTooLarge`
/// if some block residual exceeds `1e-8 k`.
pub fn line_digraph_blocks(g: &UGraph) -> Result<BlockDecomposition> {
    let (d, labels) = line_digraph(g)?;
    let k = d.k();
    let n = d.n();
    let (vals, vecs) = symmetric_eigen(&Mat::from_row_major(g.n(), g.n(), g.dense()));
    let mut blocks = Vec::with_capacity(g.n());
    let mut tmp = vec![0.0; n];
    for (c, &lambda) in vals.iter().enumerate() {
        let f: Vec<f64> = (0..g.n()).map(|i| vecs.get(i, c)).collect();
        let g1: Vec<f64> = labels.iter().map(|&(_, w)| f[w]).collect();
        let mut g2: Vec<f64> = labels.iter().map(|&(v, _)| f[v]).collect();
        let n1 = norm(&g1);
        let b1: Vec<f64> = g1.iter().map(|x| x / n1).collect();
        let scale = norm(&g2);
        let p = dot(&g2, &b1);
        g2.iter_mut().zip(&b1).for_each(|(x, y)| *x -= p * y);
        let mut basis = vec![b1];
        let n2 = norm(&g2);
        if n2 > 1e-8 * scale {
            basis.push(g2.iter().map(|x| x / n2).collect());
        }
        let dim = basis.len();
        let images: Vec<Vec<f64>> = basis
            .iter()
            .map(|b| {
                d.apply(b, &mut tmp);
                tmp.clone()
            })
            .collect();
        let mut action = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                action[i * dim + j] = dot(&basis[i], &images[j]);
            }
        }
        let mut res2 = 0.0;
        for j in 0..dim {
            for r in 0..n {
                let bc: f64 = (0..dim).map(|i| basis[i][r] * action[i * dim + j]).sum();
                res2 += (images[j][r] - bc).powi(2);
            }
        }
        blocks.push(Block {
            lambda,
            basis,
            action,
            residual: res2.sqrt(),
        });
    }
    let residual = blocks.iter().map(|b| b.residual).fold(0.0, f64::max);
    let mut orthogonality = 0.0f64;
    for (i, bi) in blocks.iter().enumerate() {
        for bj in &blocks[i + 1..] {
            for x in &bi.basis {
                for y in &bj.basis {
                    orthogonality = orthogonality.max(dot(x, y).abs());
                }
            }
        }
    }
    let covered: usize = blocks.iter().map(Block::dim).sum();
    let tail_dim = n - covered;
    // The line digraph has no loops, so the complement carries trace -sum tr(C).
    let block_trace: f64 = blocks
        .iter()
        .map(|b| (0..b.dim()).map(|i| b.action[i * b.dim() + i]).sum::<f64>())
        .sum();
    let tail_trace = (d.trace() as f64 - block_trace).round() as i64;
    let tail_plus = ((tail_dim as i64 + tail_trace) / 2).max(0) as usize;
    let tail_minus = tail_dim - tail_plus.min(tail_dim);

    let tail_residual = if tail_dim == 0 {
        0.0
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for b in blocks.iter().flat_map(|b| b.basis.iter()) {
                let c = dot(&x, b);
                x.iter_mut().zip(b).for_each(|(v, w)| *v -= c * w);
            }
        }
        let mut y = vec![0.0; n];
        let mut z = vec![0.0; n];
        d.apply(&x, &mut y);
        d.apply(&y, &mut z);
        let diff: Vec<f64> = z.iter().zip(&x).map(|(a, b)| a - b).collect();
        norm(&diff) / norm(&x)
    };

    let limit = 1e-8 * k as f64;
    if residual > limit {
        return Err(Error::ResidualTooLarge(residual, limit));
    }
    Ok(BlockDecomposition {
        k,
        n,
        blocks,
        residual,
        orthogonality,
        tail_dim,
        tail_plus,
        tail_minus,
        tail_residual,
    })
}

/// Line digraph spectrum predicted from the graph spectrum: both roots of
/// `mu^2 - lambda mu + k` per graph eigenvalue, and `+1`, `-1` each
/// `|E| - |V|` times.
pub fn ihara_predicted_spectrum(g: &UGraph) -> Vec<Complex64> {
    let k = g.k() as f64 - 1.0;
    let vals = symmetric_eigenvalues(&Mat::from_row_major(g.n(), g.n(), g.dense()));
    let mut out: Vec<Complex64> = vals
        .iter()
        .flat_map(|&l| quadratic_roots(-l, k))
        .collect();
    let excess = g.edge_count() - g.n();
    out.extend(std::iter::repeat_n(Complex64::new(1.0, 0.0), excess));
    out.extend(std::iter::repeat_n(Complex64::new(-1.0, 0.0), excess));
    out
}

/// Ramanujan verdict for an undirected regular graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphVerdict {
    pub ramanujan: bool,
    pub bipartite: bool,
    /// Largest nontrivial eigenvalue modulus.
    pub max_nontrivial: f64,
    /// `2 sqrt(k - 1)`.
    pub bound: f64,
}

impl GraphVerdict {
    pub fn margin(&self) -> f64 {
        self.max_nontrivial - self.bound
    }
}

/// Nontrivial eigenvalues (all but `k`, and `-k` when bipartite) against
/// `2 sqrt(k-1)`.
pub fn ramanujan_graph_test(g: &UGraph, opts: &SpectralOptions) -> Result<GraphVerdict> {
    if !g.connected() {
        return Err(Error::Disconnected);
    }
    let mut vals = symmetric_eigenvalues(&Mat::from_row_major(g.n(), g.n(), g.dense()));
    let bipartite = g.bipartition().is_some();
    vals.pop();
    if bipartite && !vals.is_empty() {
        vals.remove(0);
    }
    let max_nontrivial = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let bound = 2.0 * (g.k() as f64 - 1.0).sqrt();
    Ok(GraphVerdict {
        ramanujan: max_nontrivial <= bound * (1.0 + opts.tolerance) + opts.tolerance,
        bipartite,
        max_nontrivial,
        bound,
    })
}

/// Checks that G is Ramanujan iff its line digraph is, returning the common
/// verdict.
pub fn equivalence_check_line(g: &UGraph, opts: &SpectralOptions) -> Result<bool> {
    let gv = ramanujan_graph_test(g, opts)?;
    let (d, _) = line_digraph(g)?;
    let dv = classify_spectrum_with(&d, opts)?;
    if gv.ramanujan != dv.ramanujan {
        return Err(Error::VerdictMismatch(format!(
            "graph verdict {} (margin {:e}) but line digraph verdict {} (margin {:e})",
            gv.ramanujan,
            gv.margin(),
            dv.ramanujan,
            dv.margin()
        )));
    }
    Ok(gv.ramanujan)
}

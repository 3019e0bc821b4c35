//! Arnoldi iteration for the largest-modulus eigenvalues of a real operator.
//!
//! The factorization first grows without restarting (up to `max_dim`
//! vectors), checking Ritz residuals at geometrically spaced sizes. If the
//! Krylov space becomes invariant the eigenvalues of the Hessenberg matrix
//! are exact eigenvalues of the operator; this is what happens for operators
//! with a low-degree minimal polynomial such as Cayley digraph adjacencies.
//! Otherwise the iteration continues with implicit restarts on `ncv` vectors,
//! filtering with the unwanted Ritz values as shifts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hessenberg_eigenvalues, Mat};
use crate::error::{Error, Result};

pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

#[derive(Debug, Clone)]
pub struct ArnoldiOptions {
    /// Number of wanted eigenvalues (largest modulus).
    pub nev: usize,
    /// Restart subspace size; `None` means `max(40, 4 * nev)`.
    pub ncv: Option<usize>,
    /// Largest unrestarted Krylov dimension tried before restarting.
    pub max_dim: usize,
    /// Relative residual tolerance; residuals are compared to `tol * op_norm`.
    pub tol: f64,
    /// A bound on the operator norm (e.g. the 1-norm `k` of an adjacency).
    pub op_norm: f64,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for ArnoldiOptions {
    fn default() -> Self {
        ArnoldiOptions {
            nev: 6,
            ncv: None,
            max_dim: 1000,
            tol: 1e-9,
            op_norm: 1.0,
            max_restarts: 300,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ArnoldiResult {
    /// Wanted Ritz values, by decreasing modulus.
    pub values: Vec<Complex64>,
    /// Residual norm estimate `||A x - theta x||` for each value (unit `x`);
    /// for an invariant subspace, the backward error `beta` instead.
    pub residuals: Vec<f64>,
    /// Whether an invariant subspace was reached.
    pub invariant: bool,
    pub krylov_dim: usize,
    pub matvecs: usize,
    pub restarts: usize,
}

struct Factorization {
    /// Orthonormal basis vectors; `v.len() == j + 1` once `j` steps are done
    /// (the last one is the normalized residual direction).
    v: Vec<Vec<f64>>,
    /// Hessenberg entries, `h[c]` holds column `c` (length `c + 2`).
    h: Vec<Vec<f64>>,
    matvecs: usize,
}

impl Factorization {
    fn steps(&self) -> usize {
        self.h.len()
    }

    fn beta(&self) -> f64 {
        self.h.last().map_or(0.0, |c| *c.last().unwrap())
    }

    fn hessenberg(&self, j: usize) -> Mat {
        let mut m = Mat::zeros(j, j);
        for c in 0..j {
            for r in 0..(c + 2).min(j) {
                m.set(r, c, self.h[c][r]);
            }
        }
        m
    }

    /// One Arnoldi step with two passes of classical Gram-Schmidt.
    /// Returns the new subdiagonal entry.
    fn extend(&mut self, op: &dyn LinearOperator, w: &mut [f64]) -> f64 {
        let j = self.h.len();
        op.apply(&self.v[j], w);
        self.matvecs += 1;
        let mut coeffs = vec![0.0; j + 1];
        for _ in 0..2 {
            for (i, vi) in self.v.iter().enumerate() {
                let c: f64 = vi.iter().zip(w.iter()).map(|(a, b)| a * b).sum();
                coeffs[i] += c;
                for (x, y) in w.iter_mut().zip(vi) {
                    *x -= c * y;
                }
            }
        }
        let beta = norm(w);
        coeffs.push(beta);
        self.h.push(coeffs);
        let next = if beta > 0.0 {
            w.iter().map(|x| x / beta).collect()
        } else {
            vec![0.0; w.len()]
        };
        self.v.push(next);
        beta
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum::<f64>().sqrt()
}

struct Ritz {
    value: Complex64,
    residual: f64,
}

/// Ritz pairs of the `j`-step factorization for the `want` largest moduli.
fn ritz(fac: &Factorization, j: usize, want: usize) -> Result<(Vec<Complex64>, Vec<Ritz>)> {
    ritz_impl(fac, j, want, false)
}

fn ritz_impl(
    fac: &Factorization,
    j: usize,
    want: usize,
    invariant: bool,
) -> Result<(Vec<Complex64>, Vec<Ritz>)> {
    let h = fac.hessenberg(j);
    let hnorm = h.frobenius().max(f64::MIN_POSITIVE);
    let mut theta = hessenberg_eigenvalues(&h)?;
    if invariant {
        merge_defective_clusters(&mut theta, hnorm);
    }
    theta.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).unwrap());
    let beta = fac.h[j - 1][j];
    let pairs = theta
        .iter()
        .take(want)
        .map(|&t| {
            if invariant {
                // A V = V H + beta v e^T exactly: the values are eigenvalues
                // of a perturbation of A of norm beta.
                return Ritz {
                    value: t,
                    residual: beta.abs(),
                };
            }
            let y = inverse_iteration(&h, t, hnorm);
            let r = hess_residual(&h, t, &y);
            Ritz {
                value: t,
                residual: r + beta.abs() * y[j - 1].norm(),
            }
        })
        .collect();
    Ok((theta, pairs))
}

/// Replaces clusters that look like a perturbed Jordan block by their mean.
///
/// A Jordan block of size s perturbed by eps splits into s values spread
/// about eps^(1/s) around the true eigenvalue, evenly in angle; their mean is
/// accurate to about eps. A cluster qualifies if its members are equidistant
/// from the mean within a factor 2 and their second moment about the mean
/// nearly cancels (pairs must additionally be within 1e-6 of each other).
fn merge_defective_clusters(theta: &mut [Complex64], scale: f64) {
    let radius = 1e-2 * scale;
    let n = theta.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while l[r] != r {
            r = l[r];
        }
        l[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (theta[i] - theta[j]).norm() <= radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut label, i);
        groups.entry(r).or_default().push(i);
    }
    for members in groups.values().filter(|m| m.len() >= 2) {
        let s = members.len() as f64;
        let mean: Complex64 = members.iter().map(|&i| theta[i]).sum::<Complex64>() / s;
        let devs: Vec<Complex64> = members.iter().map(|&i| theta[i] - mean).collect();
        let dmax = devs.iter().map(|d| d.norm()).fold(0.0, f64::max);
        let dmin = devs.iter().map(|d| d.norm()).fold(f64::INFINITY, f64::min);
        let qualifies = if members.len() == 2 {
            dmax <= 1e-6 * scale
        } else {
            let second: Complex64 = devs.iter().map(|d| d * d).sum();
            let total: f64 = devs.iter().map(|d| d.norm_sqr()).sum();
            dmax <= 2.0 * dmin && second.norm() <= 0.1 * total
        };
        if qualifies {
            // Real matrices: keep real means real.
            let mean = if mean.im.abs() <= 1e-14 * scale {
                Complex64::new(mean.re, 0.0)
            } else {
                mean
            };
            for &i in members {
                theta[i] = mean;
            }
        }
    }
}

/// Unit eigenvector estimate of Hessenberg `h` for eigenvalue `theta`.
fn inverse_iteration(h: &Mat, theta: Complex64, hnorm: f64) -> Vec<Complex64> {
    let n = h.rows;
    let shift = theta + Complex64::new(hnorm * 1e-13, hnorm * 1e-13);
    let mut y = vec![Complex64::new(1.0, 0.0); n];
    for _ in 0..3 {
        y = hessenberg_solve(h, shift, &y);
        let nrm = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !nrm.is_finite() || nrm == 0.0 {
            return vec![Complex64::new(0.0, 0.0); n];
        }
        y.iter_mut().for_each(|z| *z /= nrm);
    }
    y
}

fn hess_residual(h: &Mat, theta: Complex64, y: &[Complex64]) -> f64 {
    let n = h.rows;
    (0..n)
        .map(|r| {
            let mut s = -theta * y[r];
            for c in r.saturating_sub(1)..n {
                s += h.get(r, c) * y[c];
            }
            s.norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// Solves `(h - shift I) x = b` for upper Hessenberg `h`, partial pivoting
/// between adjacent rows. Exact zero pivots are replaced by a tiny value.
fn hessenberg_solve(h: &Mat, shift: Complex64, b: &[Complex64]) -> Vec<Complex64> {
    let n = h.rows;
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut z = Complex64::new(if c + 1 >= r { h.get(r, c) } else { 0.0 }, 0.0);
                    if r == c {
                        z -= shift;
                    }
                    z
                })
                .collect()
        })
        .collect();
    let mut x = b.to_vec();
    let tiny = 1e-300;
    for c in 0..n {
        if c + 1 < n && a[c + 1][c].norm() > a[c][c].norm() {
            a.swap(c, c + 1);
            x.swap(c, c + 1);
        }
        if a[c][c].norm() < tiny {
            a[c][c] = Complex64::new(tiny, 0.0);
        }
        if c + 1 < n {
            let f = a[c + 1][c] / a[c][c];
            if f.norm() != 0.0 {
                for k in c..n {
                    let t = a[c][k];
                    a[c + 1][k] -= f * t;
                }
                let t = x[c];
                x[c + 1] -= f * t;
            }
        }
    }
    for r in (0..n).rev() {
        let mut s = x[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    x
}

fn finish(
    fac: &Factorization,
    pairs: Vec<Ritz>,
    invariant: bool,
    krylov_dim: usize,
    restarts: usize,
) -> ArnoldiResult {
    ArnoldiResult {
        values: pairs.iter().map(|p| p.value).collect(),
        residuals: pairs.iter().map(|p| p.residual).collect(),
        invariant,
        krylov_dim,
        matvecs: fac.matvecs,
        restarts,
    }
}

/// Computes the `nev` eigenvalues of largest modulus of `op`, started from a
/// seeded random vector (optionally passed through `project`).
pub fn arnoldi_eigs(
    op: &dyn LinearOperator,
    project: &dyn Fn(&mut [f64]),
    opts: &ArnoldiOptions,
) -> Result<ArnoldiResult> {
    let n = op.dim();
    let nev = opts.nev.max(1).min(n);
    let ncv = opts.ncv.unwrap_or((4 * nev).max(40)).min(n).max(nev + 1).min(n);
    let max_dim = opts.max_dim.max(ncv).min(n);
    let target = opts.tol * opts.op_norm;
    let breakdown = 1e-10 * opts.op_norm;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    project(&mut start);
    let s = norm(&start);
    if s == 0.0 {
        return Err(Error::InvalidInput("start vector vanished after projection".into()));
    }
    start.iter_mut().for_each(|x| *x /= s);

    let mut fac = Factorization {
        v: vec![start],
        h: Vec::new(),
        matvecs: 0,
    };
    let mut w = vec![0.0; n];

    // Growth phase.
    let mut next_check = ncv.min(max_dim);
    loop {
        let beta = fac.extend(op, &mut w);
        let j = fac.steps();
        if beta <= breakdown {
            let (_, pairs) = ritz_impl(&fac, j, nev, true)?;
            return Ok(finish(&fac, pairs, true, j, 0));
        }
        if j == next_check || j == max_dim {
            let (_, pairs) = ritz(&fac, j, nev)?;
            if pairs.iter().all(|p| p.residual <= target) {
                return Ok(finish(&fac, pairs, false, j, 0));
            }
            if j >= max_dim {
                break;
            }
            next_check = (j + j / 2).min(max_dim);
        }
    }

    // Restart phase: compress to ncv first, then cycle.
    let mut restarts = 0;
    let mut cur = fac.steps();
    while restarts < opts.max_restarts {
        let (theta, _) = ritz(&fac, cur, nev)?;
        let mut keep = (nev + (ncv - nev) / 2).max(nev).min(ncv - 1);
        // Do not split a conjugate pair between kept and discarded.
        if keep < theta.len() && theta[keep].im != 0.0 && (theta[keep] - theta[keep - 1].conj()).norm() < 1e-12 * opts.op_norm {
            keep += 1;
        }
        let shifts = &theta[keep.min(theta.len())..];
        apply_shifts(&mut fac, cur, keep, shifts);
        restarts += 1;
        let mut invariant = false;
        while fac.steps() < ncv {
            let beta = fac.extend(op, &mut w);
            if beta <= breakdown {
                invariant = true;
                break;
            }
        }
        cur = fac.steps();
        let (_, pairs) = ritz_impl(&fac, cur, nev, invariant)?;
        if invariant || pairs.iter().all(|p| p.residual <= target) {
            return Ok(finish(&fac, pairs, invariant, cur, restarts));
        }
    }
    let (_, pairs) = ritz(&fac, cur, nev)?;
    let worst = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
    Err(Error::NoConvergence(format!(
        "Arnoldi: {restarts} restarts, worst residual {worst:.3e} > {target:.3e}"
    )))
}

/// Implicitly shifted QR on the `m`-step factorization, keeping `keep` columns.
fn apply_shifts(fac: &mut Factorization, m: usize, keep: usize, shifts: &[Complex64]) {
    let mut h = fac.hessenberg(m);
    let mut q = Mat::identity(m);
    let mut i = 0;
    while i < shifts.len() {
        let mu = shifts[i];
        let pair = mu.im.abs() > 0.0
            && i + 1 < shifts.len()
            && (shifts[i + 1] - mu.conj()).norm() <= 1e-10 * mu.norm().max(1.0);
        // Shift polynomial p(H) = H - mu or (H - mu)(H - conj mu).
        let mut p = h.clone();
        for d in 0..m {
            p.data[d * m + d] -= mu.re;
        }
        if pair {
            let mut p2 = h.matmul(&h);
            for x in 0..m * m {
                p2.data[x] -= 2.0 * mu.re * h.data[x];
            }
            for d in 0..m {
                p2.data[d * m + d] += mu.norm_sqr();
            }
            p = p2;
            i += 2;
        } else {
            i += 1;
        }
        let qi = householder_q(&p);
        h = qi.transpose().matmul(&h).matmul(&qi);
        // Restore exact Hessenberg structure.
        for r in 0..m {
            for c in 0..r.saturating_sub(1) {
                h.data[r * m + c] = 0.0;
            }
        }
        q = q.matmul(&qi);
    }
    let beta = fac.beta();
    let n = fac.v[0].len();
    // New basis V Q[:, ..keep] and residual.
    let mut v_new: Vec<Vec<f64>> = vec![vec![0.0; n]; keep];
    for (c, out) in v_new.iter_mut().enumerate() {
        for r in 0..m {
            let coef = q.get(r, c);
            if coef != 0.0 {
                for (o, x) in out.iter_mut().zip(&fac.v[r]) {
                    *o += coef * x;
                }
            }
        }
    }
    let mut f = vec![0.0; n];
    if keep < m {
        let hk = h.get(keep, keep - 1);
        for r in 0..m {
            let coef = q.get(r, keep) * hk;
            if coef != 0.0 {
                for (o, x) in f.iter_mut().zip(&fac.v[r]) {
                    *o += coef * x;
                }
            }
        }
    }
    let sigma = q.get(m - 1, keep - 1);
    for (o, x) in f.iter_mut().zip(&fac.v[m]) {
        *o += beta * sigma * x;
    }
    let fnorm = norm(&f);
    let mut cols = Vec::with_capacity(keep);
    for c in 0..keep {
        let mut col: Vec<f64> = (0..(c + 2).min(keep + 1)).map(|r| if r < keep { h.get(r, c) } else { 0.0 }).collect();
        if c + 1 == keep {
            col.resize(keep + 1, 0.0);
            col[keep] = fnorm;
        }
        cols.push(col);
    }
    let next = if fnorm > 0.0 {
        f.iter().map(|x| x / fnorm).collect()
    } else {
        vec![0.0; n]
    };
    v_new.push(next);
    fac.v = v_new;
    fac.h = cols;
}

/// Orthogonal factor of a QR decomposition of a small dense matrix.
fn householder_q(a: &Mat) -> Mat {
    let m = a.rows;
    let mut r = a.clone();
    let mut q = Mat::identity(m);
    for k in 0..m.saturating_sub(1) {
        let sigma: f64 = (k..m).map(|i| r.get(i, k).powi(2)).sum();
        if sigma == 0.0 {
            continue;
        }
        let alpha = -r.get(k, k).signum() * sigma.sqrt();
        let mut v: Vec<f64> = (k..m).map(|i| r.get(i, k)).collect();
        v[0] -= alpha;
        let vn: f64 = v.iter().map(|x| x * x).sum();
        if vn == 0.0 {
            continue;
        }
        let beta = 2.0 / vn;
        for c in 0..m {
            let dot: f64 = (k..m).map(|i| v[i - k] * r.get(i, c)).sum();
            for i in k..m {
                r.data[i * m + c] -= beta * dot * v[i - k];
            }
        }
        for row in 0..m {
            let dot: f64 = (k..m).map(|i| q.get(row, i) * v[i - k]).sum();
            for i in k..m {
                q.data[row * m + i] -= beta * dot * v[i - k];
            }
        }
    }
    q
}

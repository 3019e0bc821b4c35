use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{trivial_spectrum, TrivialSpectrum};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::{arnoldi_eigs, spectral_norm, symmetric_eigenvalues, ArnoldiOptions, LinearOperator, Mat};

/// Dense restricted power norms are used up to this size.
pub const DENSE_POWER_LIMIT: usize = 600;

#[derive(Debug, Clone)]
pub struct SparseOptions {
    /// Number of nontrivial eigenvalues wanted.
    pub top: usize,
    /// Residual tolerance relative to `||A||_1 = k`. A Ritz value with
    /// residual r is an exact eigenvalue of a perturbation of A of norm r.
    pub tolerance: f64,
    pub seed: u64,
    /// Largest Krylov dimension before restarting.
    pub max_dim: usize,
}

impl Default for SparseOptions {
    fn default() -> Self {
        SparseOptions {
            top: 6,
            tolerance: 1e-7,
            seed: 0,
            max_dim: 1000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rho0Estimate {
    pub rho0: f64,
    /// Top nontrivial eigenvalues, by decreasing modulus.
    pub values: Vec<Complex64>,
    pub residuals: Vec<f64>,
    /// Whether the Krylov space became invariant (values exact up to rounding).
    pub invariant: bool,
    pub krylov_dim: usize,
    pub matvecs: usize,
}

/// `x -> P0 A P0 x`.
struct Deflated<'a> {
    d: &'a Digraph,
    triv: &'a TrivialSpectrum,
}

impl LinearOperator for Deflated<'_> {
    fn dim(&self) -> usize {
        self.d.n()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let mut px = x.to_vec();
        self.triv.project(&mut px);
        self.d.apply(&px, y);
        self.triv.project(y);
    }
}

/// Largest-modulus eigenvalues of A on the complement of the trivial
/// eigenvectors, by Arnoldi iteration.
pub fn rho0_sparse(d: &Digraph, opts: &SparseOptions) -> Result<Rho0Estimate> {
    let triv = trivial_spectrum(d)?;
    if d.n() == triv.m() {
        // Pure cycle structure: the complement is zero-dimensional.
        return Ok(Rho0Estimate {
            rho0: 0.0,
            values: Vec::new(),
            residuals: Vec::new(),
            invariant: true,
            krylov_dim: 0,
            matvecs: 0,
        });
    }
    let op = Deflated { d, triv: &triv };
    let aopts = ArnoldiOptions {
        nev: opts.top.max(1),
        max_dim: opts.max_dim,
        tol: opts.tolerance,
        op_norm: d.k() as f64,
        seed: opts.seed,
        ..Default::default()
    };
    let res = arnoldi_eigs(&op, &|x: &mut [f64]| triv.project(x), &aopts)?;
    let target = opts.tolerance * d.k() as f64;
    if let Some(r) = res.residuals.iter().copied().find(|&r| !(r <= target)) {
        return Err(Error::NoConvergence(format!(
            "Arnoldi residual {r:e} above {target:e}"
        )));
    }
    Ok(Rho0Estimate {
        rho0: res.values.iter().map(|z| z.norm()).fold(0.0, f64::max),
        values: res.values,
        residuals: res.residuals,
        invariant: res.invariant,
        krylov_dim: res.krylov_dim,
        matvecs: res.matvecs,
    })
}

/// Dense `A P0` (which equals `P0 A P0` since A commutes with P0).
fn deflated_dense(d: &Digraph, triv: &TrivialSpectrum) -> Result<Mat> {
    let n = d.n();
    let mut m = Mat::from_row_major(n, n, d.dense()?);
    let mut row = vec![0.0; n];
    for i in 0..n {
        row.copy_from_slice(m.row(i));
        triv.project(&mut row);
        for (j, &v) in row.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// `||A^ell restricted to L0||` for `ell = 1..=lmax`.
pub fn restricted_power_norms(d: &Digraph, lmax: usize) -> Result<Vec<f64>> {
    let triv = trivial_spectrum(d)?;
    if d.n() <= DENSE_POWER_LIMIT {
        let b = deflated_dense(d, &triv)?;
        let mut p = b.clone();
        let mut out = Vec::with_capacity(lmax);
        for ell in 1..=lmax {
            if ell > 1 {
                p = p.matmul(&b);
            }
            out.push(spectral_norm(&p));
        }
        Ok(out)
    } else {
        (1..=lmax).map(|ell| power_iteration_norm(d, &triv, ell)).collect()
    }
}

pub fn restricted_power_norm(d: &Digraph, ell: usize) -> Result<f64> {
    if ell == 0 {
        return Err(Error::InvalidInput("ell must be at least 1".into()));
    }
    if d.n() <= DENSE_POWER_LIMIT {
        Ok(*restricted_power_norms(d, ell)?.last().unwrap())
    } else {
        power_iteration_norm(d, &trivial_spectrum(d)?, ell)
    }
}

/// Power iteration on `B^T B`, `B = P0 A^ell P0`, to relative tolerance 1e-8.
fn power_iteration_norm(d: &Digraph, triv: &TrivialSpectrum, ell: usize) -> Result<f64> {
    let n = d.n();
    let mut rng = ChaCha8Rng::seed_from_u64(ell as u64);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    triv.project(&mut x);
    let mut y = vec![0.0; n];
    let mut prev = 0.0;
    for _ in 0..20_000 {
        let nx = norm(&x);
        if nx == 0.0 {
            return Ok(0.0);
        }
        x.iter_mut().for_each(|v| *v /= nx);
        for _ in 0..ell {
            d.apply(&x, &mut y);
            std::mem::swap(&mut x, &mut y);
        }
        triv.project(&mut x);
        let sigma = norm(&x);
        for _ in 0..ell {
            d.apply_transpose(&x, &mut y);
            std::mem::swap(&mut x, &mut y);
        }
        triv.project(&mut x);
        if sigma == 0.0 || (sigma - prev).abs() <= 1e-8 * sigma {
            return Ok(sigma);
        }
        prev = sigma;
    }
    Err(Error::NoConvergence(format!(
        "power iteration for ell = {ell} did not settle"
    )))
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Singular values of A, in decreasing order.
pub fn singular_values_dense(d: &Digraph) -> Result<Vec<f64>> {
    let n = d.n();
    let a = Mat::from_row_major(n, n, d.dense()?);
    let mut s: Vec<f64> = symmetric_eigenvalues(&a.gram())
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(s)
}

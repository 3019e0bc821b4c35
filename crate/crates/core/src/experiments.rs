//! Seeded experiments: spectra of random regular digraphs from the
//! permutation model, and Gelfand estimates of `rho0`.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::constructions::random_regular_digraph;
use crate::digraph::{Digraph, DENSE_LIMIT};
use crate::error::{Error, Result};
use crate::spectral::{classify_spectrum, restricted_power_norms, rho0_sparse, SparseOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlonSample {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub connected: bool,
    /// Absent for excluded (not strongly connected) samples.
    pub rho0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlonSummary {
    pub n: usize,
    pub connected: usize,
    pub excluded: usize,
    pub mean: f64,
    pub max: f64,
    /// Fraction of connected samples with `rho0 <= sqrt(k) + epsilon`.
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlonExperiment {
    pub k: usize,
    pub n_list: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub epsilon: f64,
    /// Ordered by `(n, trial)`.
    pub samples: Vec<AlonSample>,
    pub summaries: Vec<AlonSummary>,
}

impl AlonExperiment {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,n,trial,seed,connected,rho0\n");
        for x in &self.samples {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.k,
                x.n,
                x.trial,
                x.seed,
                x.connected,
                x.rho0.map(|r| r.to_string()).unwrap_or_default()
            ));
        }
        s
    }

    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "k": self.k,
            "n_list": self.n_list,
            "trials": self.trials,
            "seed": self.seed,
            "epsilon": self.epsilon,
            "threshold": (self.k as f64).sqrt() + self.epsilon,
            "summaries": self.summaries,
        })
    }

    /// Fraction over all connected samples.
    pub fn overall_fraction(&self) -> f64 {
        let rho: Vec<f64> = self.samples.iter().filter_map(|s| s.rho0).collect();
        let t = (self.k as f64).sqrt() + self.epsilon;
        rho.iter().filter(|&&r| r <= t).count() as f64 / rho.len().max(1) as f64
    }
}

/// `rho0` by dense eigenvalues up to the dense limit, Arnoldi beyond it.
pub fn measure_rho0(d: &Digraph) -> Result<f64> {
    if d.n() <= DENSE_LIMIT {
        Ok(classify_spectrum(d)?.rho0)
    } else {
        Ok(rho0_sparse(d, &SparseOptions::default())?.rho0)
    }
}

fn run_sample(n: usize, k: usize, trial: usize, seed: u64) -> Result<AlonSample> {
    let seed = seed.wrapping_add(trial as u64);
    let d = random_regular_digraph(n, k, seed)?;
    let connected = d.strongly_connected();
    let rho0 = if connected { Some(measure_rho0(&d)?) } else { None };
    Ok(AlonSample {
        n,
        trial,
        seed,
        connected,
        rho0,
    })
}

/// Samples `trials` permutation-model digraphs for each n; trial `i` uses
/// seed `seed + i`. Samples that are not strongly connected are counted and
/// excluded from the statistics.
pub fn alon_experiment(k: usize, n_list: &[usize], trials: usize, epsilon: f64, seed: u64) -> Result<AlonExperiment> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n < k) {
        return Err(Error::InvalidInput(format!("n = {n} is below k = {k}")));
    }
    let jobs: Vec<(usize, usize)> = n_list
        .iter()
        .flat_map(|&n| (0..trials).map(move |t| (n, t)))
        .collect();
    #[cfg(feature = "parallel")]
    let samples: Result<Vec<AlonSample>> = jobs.par_iter().map(|&(n, t)| run_sample(n, k, t, seed)).collect();
    #[cfg(not(feature = "parallel"))]
    let samples: Result<Vec<AlonSample>> = jobs.iter().map(|&(n, t)| run_sample(n, k, t, seed)).collect();
    let samples = samples?;
    let threshold = (k as f64).sqrt() + epsilon;
    let summaries = n_list
        .iter()
        .map(|&n| {
            let rho: Vec<f64> = samples.iter().filter(|s| s.n == n).filter_map(|s| s.rho0).collect();
            let total = samples.iter().filter(|s| s.n == n).count();
            let c = rho.len();
            AlonSummary {
                n,
                connected: c,
                excluded: total - c,
                mean: if c == 0 { f64::NAN } else { rho.iter().sum::<f64>() / c as f64 },
                max: rho.iter().copied().fold(f64::NAN, f64::max),
                fraction: if c == 0 {
                    0.0
                } else {
                    rho.iter().filter(|&&r| r <= threshold).count() as f64 / c as f64
                },
            }
        })
        .collect();
    Ok(AlonExperiment {
        k,
        n_list: n_list.to_vec(),
        trials,
        seed,
        epsilon,
        samples,
        summaries,
    })
}

/// `||A^ell on L0||^(1/ell)` for `ell = 1..=lmax`; each term bounds `rho0`
/// from above and the sequence tends to it.
pub fn gelfand_estimate(d: &Digraph, lmax: usize) -> Result<Vec<f64>> {
    if lmax == 0 {
        return Err(Error::InvalidInput("lmax must be at least 1".into()));
    }
    Ok(restricted_power_norms(d, lmax)?
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.powf(1.0 / (i + 1) as f64))
        .collect())
}

/// Exact `tr(((A^T)^ell A^ell)^t)`, the number of closed walks made of t
/// alternating blocks of ell forward then ell backward steps. Uses one
/// column at a time with checked integer arithmetic.
pub fn alternating_word_trace(d: &Digraph, ell: usize, t: usize) -> Result<u128> {
    let n = d.n();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DENSE_LIMIT,
        });
    }
    let rev = d.reverse();
    let apply = |g: &Digraph, x: &[u128]| -> Result<Vec<u128>> {
        let mut y = vec![0u128; n];
        for (u, yu) in y.iter_mut().enumerate() {
            for (v, m) in g.out_edges(u) {
                let add = x[v].checked_mul(m as u128).ok_or(Error::Overflow)?;
                *yu = yu.checked_add(add).ok_or(Error::Overflow)?;
            }
        }
        Ok(y)
    };
    let mut total: u128 = 0;
    for i in 0..n {
        let mut x = vec![0u128; n];
        x[i] = 1;
        for _ in 0..t {
            for _ in 0..ell {
                x = apply(d, &x)?;
            }
            for _ in 0..ell {
                x = apply(&rev, &x)?;
            }
        }
        total = total.checked_add(x[i]).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

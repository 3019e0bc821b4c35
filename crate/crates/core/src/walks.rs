//! Simple random walks: distribution evolution, cutoff profiles, spheres,
//! diameter and a Chernoff sampling experiment.
//!
//! A walk at `u` moves along a uniformly chosen out-edge slot, so mass is
//! pushed forward by `A^T / k`.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::spectral::restricted_power_norms;

/// Largest vertex count accepted by the walk operations.
pub const WALK_LIMIT: usize = 100_000;
/// Largest vertex count for all-pairs BFS.
pub const DIAMETER_LIMIT: usize = 20_000;
/// Hard cap on the number of sphere steps.
const SPHERE_STEP_CAP: usize = 100_000;

fn check_size(d: &Digraph) -> Result<()> {
    if d.n() > WALK_LIMIT {
        return Err(Error::TooLarge {
            n: d.n(),
            limit: WALK_LIMIT,
        });
    }
    Ok(())
}

fn check_start(d: &Digraph, v0: usize) -> Result<()> {
    if v0 >= d.n() {
        return Err(Error::InvalidInput(format!(
            "start vertex {v0} out of range for n = {}",
            d.n()
        )));
    }
    Ok(())
}

/// One step `p -> (A^T / k) p`.
fn step(d: &Digraph, p: &[f64], out: &mut [f64]) {
    d.apply_transpose(p, out);
    let k = d.k() as f64;
    out.iter_mut().for_each(|v| *v /= k);
}

/// `p_ell`, the law of the walk after `ell` steps from `v0`.
pub fn walk_distribution(d: &Digraph, v0: usize, ell: usize) -> Result<Vec<f64>> {
    check_size(d)?;
    check_start(d, v0)?;
    let mut p = vec![0.0; d.n()];
    p[v0] = 1.0;
    let mut q = vec![0.0; d.n()];
    for _ in 0..ell {
        step(d, &p, &mut q);
        std::mem::swap(&mut p, &mut q);
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkStep {
    pub ell: usize,
    /// `||p_ell - u||_1 / 2` with `u` uniform.
    pub tv: f64,
    pub l2: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkProfile {
    pub start: usize,
    pub n: usize,
    pub k: usize,
    pub steps: Vec<WalkStep>,
}

impl WalkProfile {
    /// First step with `tv < 1/e`.
    pub fn cutoff_step(&self) -> Option<usize> {
        self.first_below(std::f64::consts::E.recip())
    }

    pub fn first_below(&self, level: f64) -> Option<usize> {
        self.steps.iter().find(|s| s.tv < level).map(|s| s.ell)
    }

    pub fn log_k_n(&self) -> f64 {
        (self.n as f64).ln() / (self.k as f64).ln()
    }

    /// `log_k n + (2r - 1) log_k log n`, the covering time for r-normal digraphs.
    pub fn ell0(&self, r: usize) -> f64 {
        let lk = (self.k as f64).ln();
        self.log_k_n() + (2 * r - 1) as f64 * (self.n as f64).ln().ln() / lk
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("ell,tv,l2,support\n");
        for st in &self.steps {
            s.push_str(&format!("{},{},{},{}\n", st.ell, st.tv, st.l2, st.support));
        }
        s
    }

    pub fn summary_json(&self, r: usize) -> serde_json::Value {
        json!({
            "start": self.start,
            "n": self.n,
            "k": self.k,
            "ell_max": self.steps.last().map(|s| s.ell),
            "cutoff_step": self.cutoff_step(),
            "log_k_n": self.log_k_n(),
            "r": r,
            "ell0": self.ell0(r),
        })
    }
}

/// Distances of `p_ell` from uniform for `ell = 0..=lmax`.
pub fn cutoff_profile(d: &Digraph, v0: usize, lmax: usize) -> Result<WalkProfile> {
    check_size(d)?;
    check_start(d, v0)?;
    let m = d.period()?.m;
    if m > 1 {
        return Err(Error::Periodic(m));
    }
    let n = d.n();
    let u = 1.0 / n as f64;
    let mut p = vec![0.0; n];
    p[v0] = 1.0;
    let mut q = vec![0.0; n];
    let mut steps = Vec::with_capacity(lmax + 1);
    for ell in 0..=lmax {
        if ell > 0 {
            step(d, &p, &mut q);
            std::mem::swap(&mut p, &mut q);
        }
        let (mut l1, mut l2, mut support) = (0.0, 0.0, 0);
        for &x in &p {
            l1 += (x - u).abs();
            l2 += (x - u) * (x - u);
            support += usize::from(x > 0.0);
        }
        steps.push(WalkStep {
            ell,
            tv: 0.5 * l1,
            l2: l2.sqrt(),
            support,
        });
    }
    Ok(WalkProfile {
        start: v0,
        n,
        k: d.k(),
        steps,
    })
}

/// `(sqrt(n) / 2) k^-ell ||A^ell on L0||` for `ell = 1..=lmax`, an upper bound
/// on the total variation distance after `ell` steps from any start.
pub fn tv_bound_curve(d: &Digraph, lmax: usize) -> Result<Vec<f64>> {
    let norms = restricted_power_norms(d, lmax)?;
    let half_root_n = 0.5 * (d.n() as f64).sqrt();
    let k = d.k() as f64;
    Ok(norms
        .iter()
        .enumerate()
        .map(|(i, v)| half_root_n * v / k.powi(i as i32 + 1))
        .collect())
}

/// `|S_ell(v0)|` for `ell = 0, 1, ...`, where `S_ell` is the set of endpoints of
/// length-ell paths from `v0`, stopping before the first repeated set.
pub fn sphere_sizes(d: &Digraph, v0: usize) -> Result<Vec<usize>> {
    check_size(d)?;
    check_start(d, v0)?;
    let n = d.n();
    let words = n.div_ceil(64);
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut current = vec![v0];
    let mut sizes = Vec::new();
    let mut mark = vec![false; n];
    for ell in 0..SPHERE_STEP_CAP {
        let mut bits = vec![0u64; words];
        for &v in &current {
            bits[v / 64] |= 1 << (v % 64);
        }
        if seen.insert(bits, ell).is_some() {
            return Ok(sizes);
        }
        sizes.push(current.len());
        let mut next = Vec::new();
        for &u in &current {
            for (v, _) in d.out_edges(u) {
                if !mark[v] {
                    mark[v] = true;
                    next.push(v);
                }
            }
        }
        next.iter().for_each(|&v| mark[v] = false);
        current = next;
    }
    Err(Error::NoConvergence(format!(
        "sphere sequence did not repeat within {SPHERE_STEP_CAP} steps"
    )))
}

fn eccentricity(d: &Digraph, s: usize) -> Option<usize> {
    let n = d.n();
    let mut dist = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut reached = 1;
    let mut far = 0;
    while let Some(u) = queue.pop_front() {
        for (v, _) in d.out_edges(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                far = dist[v];
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    (reached == n).then_some(far)
}

/// Largest directed distance, by BFS from every vertex.
pub fn diameter(d: &Digraph) -> Result<usize> {
    if d.n() > DIAMETER_LIMIT {
        return Err(Error::TooLarge {
            n: d.n(),
            limit: DIAMETER_LIMIT,
        });
    }
    #[cfg(feature = "parallel")]
    let ecc: Vec<Option<usize>> = (0..d.n()).into_par_iter().map(|s| eccentricity(d, s)).collect();
    #[cfg(not(feature = "parallel"))]
    let ecc: Vec<Option<usize>> = (0..d.n()).map(|s| eccentricity(d, s)).collect();
    ecc.into_iter()
        .try_fold(0, |acc, e| e.map(|e| acc.max(e)))
        .ok_or(Error::NotStronglyConnected)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChernoffResult {
    pub ell: usize,
    pub gamma: f64,
    pub trials: usize,
    pub seed: u64,
    /// Trials whose sample mean exceeded gamma.
    pub hits: usize,
    pub frequency: f64,
    /// Binomial standard error `sqrt(f (1 - f) / trials)`.
    pub stderr: f64,
    /// `-ln(frequency) / ell`, absent when no trial hit.
    pub exponent: Option<f64>,
}

/// Runs `trials` walks of length `ell` from uniform starts and counts those
/// with `(1/ell) sum f(v_i) > gamma`, where `v_0 .. v_{ell-1}` are the visited
/// vertices. Trial `i` uses `ChaCha8Rng::seed_from_u64(seed + i)`: one draw
/// for the start, then one draw in `0..k` per step picking an out-edge slot.
pub fn chernoff_experiment(
    d: &Digraph,
    f: &[f64],
    ell: usize,
    trials: usize,
    gamma: f64,
    seed: u64,
) -> Result<ChernoffResult> {
    let n = d.n();
    if f.len() != n {
        return Err(Error::InvalidInput(format!(
            "f has {} values, expected {n}",
            f.len()
        )));
    }
    if f.iter().any(|v| !(v.abs() <= 1.0)) {
        return Err(Error::InvalidInput("f must take values in [-1, 1]".into()));
    }
    let total: f64 = f.iter().sum();
    if total.abs() > 1e-9 * n as f64 {
        return Err(Error::InvalidInput(format!("f must sum to zero, sum is {total}")));
    }
    if ell == 0 || trials == 0 {
        return Err(Error::InvalidInput("ell and trials must be positive".into()));
    }
    let k = d.k();
    // slots[u * k + j] is the target of the j-th out-edge slot of u.
    let mut slots = Vec::with_capacity(n * k);
    for u in 0..n {
        for (v, m) in d.out_edges(u) {
            slots.extend(std::iter::repeat_n(v, m as usize));
        }
    }
    let trial = |i: usize| -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let mut v = rng.random_range(0..n);
        let mut sum = 0.0;
        for _ in 0..ell {
            sum += f[v];
            v = slots[v * k + rng.random_range(0..k)];
        }
        sum / ell as f64 > gamma
    };
    #[cfg(feature = "parallel")]
    let hits = (0..trials).into_par_iter().filter(|&i| trial(i)).count();
    #[cfg(not(feature = "parallel"))]
    let hits = (0..trials).filter(|&i| trial(i)).count();
    let frequency = hits as f64 / trials as f64;
    Ok(ChernoffResult {
        ell,
        gamma,
        trials,
        seed,
        hits,
        frequency,
        stderr: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
        exponent: (hits > 0).then(|| -frequency.ln() / ell as f64),
    })
}

/// `1_S - |S|/n` for a vertex set S, a centered function with values in [-1, 1].
pub fn centered_indicator(n: usize, set: &[usize]) -> Vec<f64> {
    let mut f = vec![0.0; n];
    for &v in set {
        f[v] = 1.0;
    }
    let mean = f.iter().sum::<f64>() / n as f64;
    f.iter_mut().for_each(|v| *v -= mean);
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn cycle(n: usize) -> Digraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
        Digraph::from_edge_list(n, &e).unwrap()
    }

    #[test]
    fn distribution_examples() {
        let c = cycle(3);
        assert_eq!(walk_distribution(&c, 1, 0).unwrap(), vec![0.0, 1.0, 0.0]);
        assert_eq!(walk_distribution(&c, 0, 5).unwrap(), vec![0.0, 0.0, 1.0]);
        let d = complete_digraph(3, 1).unwrap();
        for v in walk_distribution(&d, 0, 1).unwrap() {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
        assert!(walk_distribution(&c, 3, 1).is_err());
    }

    #[test]
    fn de_bruijn_mixes_exactly() {
        let d = de_bruijn(2, 3).unwrap();
        let p = cutoff_profile(&d, 0, 5).unwrap();
        assert_eq!(p.steps[3].tv, 0.0);
        assert_eq!(p.steps[3].support, 8);
        assert_eq!(sphere_sizes(&d, 0).unwrap()[3], 8);
        assert_eq!(p.cutoff_step(), Some(3));
    }

    #[test]
    fn periodic_rejected() {
        assert_eq!(cutoff_profile(&cycle(4), 0, 3), Err(Error::Periodic(4)));
    }

    #[test]
    fn cycle_spheres_and_diameter() {
        let c = cycle(6);
        assert_eq!(sphere_sizes(&c, 2).unwrap(), vec![1; 6]);
        assert_eq!(diameter(&c).unwrap(), 5);
        assert_eq!(diameter(&de_bruijn(2, 3).unwrap()).unwrap(), 3);
    }

    #[test]
    fn chernoff_trivial_cases() {
        let c = cycle(6);
        let r = chernoff_experiment(&c, &[0.0; 6], 6, 50, 0.1, 1).unwrap();
        assert_eq!(r.hits, 0);
        assert_eq!(r.exponent, None);
        let alt: Vec<f64> = (0..6).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let r = chernoff_experiment(&c, &alt, 6, 50, 1e-9, 1).unwrap();
        assert_eq!(r.frequency, 0.0);
        assert!(chernoff_experiment(&c, &[1.0; 6], 6, 5, 0.1, 1).is_err());
    }

    #[test]
    fn chernoff_is_reproducible() {
        let (d, _) = line_digraph(&petersen()).unwrap();
        let f = centered_indicator(d.n(), &(0..10).collect::<Vec<_>>());
        let a = chernoff_experiment(&d, &f, 20, 500, 0.1, 9).unwrap();
        let b = chernoff_experiment(&d, &f, 20, 500, 0.1, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.hits > 0);
    }
}

//! Spectra of regular digraphs: dense eigenvalues, closed-form trivial
//! spectrum, classification against Ramanujan thresholds, and regions.

mod line;
mod power;

pub use line::{
    equivalence_check_line, ihara_predicted_spectrum, line_digraph_blocks, ramanujan_graph_test,
    Block, BlockDecomposition, GraphVerdict,
};
pub use power::{
    restricted_power_norm, restricted_power_norms, rho0_sparse, singular_values_dense,
    Rho0Estimate, SparseOptions, DENSE_POWER_LIMIT,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::digraph::{Digraph, PeriodData};
use crate::error::{Error, Result};
use crate::linalg::{self, exact_zero_multiplicity, sort_by_modulus_phase, Mat};

/// Version tag written into serialized reports.
pub const REPORT_VERSION: u32 = 1;

/// Zero snapping is attempted only up to this size (exact rank is cubic).
const ZERO_SNAP_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    /// Slack in the Ramanujan test `rho0 <= sqrt(k) (1 + tol) + tol`.
    pub tolerance: f64,
    /// Relative distance (in units of k) allowed when pairing computed
    /// eigenvalues with the predicted trivial ones.
    pub match_tolerance: f64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tolerance: 1e-8,
            match_tolerance: 1e-6,
        }
    }
}

impl SpectralOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        SpectralOptions {
            tolerance,
            ..Default::default()
        }
    }

    pub fn ramanujan_threshold(&self, k: usize) -> f64 {
        (k as f64).sqrt() * (1.0 + self.tolerance) + self.tolerance
    }
}

/// All eigenvalues of the adjacency matrix, with multiplicity.
///
/// For `n <= 512` the eigenvalues nearest zero are replaced by exact zeros
/// according to the algebraic multiplicity of 0, computed exactly. Nilpotent
/// Jordan blocks of size s otherwise only resolve zero to about eps^(1/s).
pub fn eigenvalues_dense(d: &Digraph) -> Result<Vec<Complex64>> {
    let n = d.n();
    let a = Mat::from_row_major(n, n, d.dense()?);
    let mut ev = linalg::eigenvalues(&a)?;
    let k = d.k() as f64;
    if n <= ZERO_SNAP_LIMIT && ev.iter().any(|z| z.norm() < 0.05 * k) {
        let ints: Vec<u64> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .map(|(u, v)| d.multiplicity(u, v))
            .collect();
        let z = exact_zero_multiplicity(&ints, n);
        if z > 0 {
            let threshold = 2.0 * k * (64.0 * n as f64 * f64::EPSILON).powf(1.0 / z as f64);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| ev[i].norm().partial_cmp(&ev[j].norm()).unwrap());
            if order[..z].iter().all(|&i| ev[i].norm() <= threshold) {
                for &i in &order[..z] {
                    ev[i] = Complex64::new(0.0, 0.0);
                }
            }
        }
    }
    Ok(ev)
}

/// Closed-form trivial spectrum of a strongly connected k-regular digraph.
#[derive(Debug, Clone)]
pub struct TrivialSpectrum {
    pub k: usize,
    pub period: PeriodData,
    /// `values[t] = k e^{2 pi i t / m}`.
    pub values: Vec<Complex64>,
}

impl TrivialSpectrum {
    pub fn m(&self) -> usize {
        self.period.m
    }

    /// Unit eigenvector `f_t(v) = e^{2 pi i t class(v) / m} / sqrt(n)`.
    pub fn eigenvector(&self, t: usize) -> Vec<Complex64> {
        let m = self.period.m as f64;
        let scale = 1.0 / (self.period.classes.len() as f64).sqrt();
        self.period
            .classes
            .iter()
            .map(|&c| Complex64::from_polar(scale, 2.0 * PI * (t * c) as f64 / m))
            .collect()
    }

    /// Orthogonal projection onto the complement of the trivial eigenvectors:
    /// removes the mean on each periodic class.
    pub fn project(&self, x: &mut [f64]) {
        let m = self.period.m;
        let mut sums = vec![0.0; m];
        let mut counts = vec![0usize; m];
        for (&c, &xv) in self.period.classes.iter().zip(x.iter()) {
            sums[c] += xv;
            counts[c] += 1;
        }
        for (c, s) in sums.iter_mut().enumerate() {
            *s /= counts[c] as f64;
        }
        for (&c, xv) in self.period.classes.iter().zip(x.iter_mut()) {
            *xv -= sums[c];
        }
    }
}

pub fn trivial_spectrum(d: &Digraph) -> Result<TrivialSpectrum> {
    let period = d.period()?;
    let k = d.k();
    let values = (0..period.m)
        .map(|t| Complex64::from_polar(k as f64, 2.0 * PI * t as f64 / period.m as f64))
        .collect();
    Ok(TrivialSpectrum { k, period, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Arnoldi,
}

/// Eigenvalues split into trivial and nontrivial parts, with the Ramanujan verdict.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub method: Method,
    pub tolerance: f64,
    /// Sorted by decreasing modulus, then phase. For the Arnoldi method this
    /// holds the trivial values and the computed top nontrivial values only.
    pub eigenvalues: Vec<Complex64>,
    /// Positions in `eigenvalues` of the trivial eigenvalues.
    pub trivial_indices: Vec<usize>,
    pub rho0: f64,
    pub ramanujan: bool,
}

impl SpectrumReport {
    fn assemble(
        n: usize,
        k: usize,
        m: usize,
        method: Method,
        opts: &SpectralOptions,
        trivial: Vec<Complex64>,
        nontrivial: Vec<Complex64>,
    ) -> Self {
        let rho0 = nontrivial.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut all: Vec<(Complex64, bool)> = trivial
            .into_iter()
            .map(|z| (z, true))
            .chain(nontrivial.into_iter().map(|z| (z, false)))
            .collect();
        let mut keys: Vec<Complex64> = all.iter().map(|p| p.0).collect();
        sort_by_modulus_phase(&mut keys);
        // Reorder `all` to follow the sorted keys, keeping trivial flags.
        let mut sorted = Vec::with_capacity(all.len());
        for key in keys {
            let pos = all.iter().position(|p| p.0 == key).unwrap();
            sorted.push(all.swap_remove(pos));
        }
        let trivial_indices = sorted
            .iter()
            .enumerate()
            .filter(|(_, p)| p.1)
            .map(|(i, _)| i)
            .collect();
        SpectrumReport {
            n,
            k,
            m,
            method,
            tolerance: opts.tolerance,
            eigenvalues: sorted.into_iter().map(|p| p.0).collect(),
            trivial_indices,
            rho0,
            ramanujan: rho0 <= opts.ramanujan_threshold(k),
        }
    }

    /// Signed margin `rho0 - sqrt(k)`.
    pub fn margin(&self) -> f64 {
        self.rho0 - (self.k as f64).sqrt()
    }

    pub fn trivial(&self) -> Vec<Complex64> {
        self.trivial_indices.iter().map(|&i| self.eigenvalues[i]).collect()
    }

    pub fn nontrivial(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.trivial_indices.contains(i))
            .map(|(_, &z)| z)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "version": REPORT_VERSION,
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "method": self.method,
            "tolerance": self.tolerance,
            "eigenvalues": self.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "trivial_indices": self.trivial_indices,
            "rho0": self.rho0,
            "ramanujan": self.ramanujan,
            "margin": self.margin(),
        })
    }

    /// Plot data: `re,im,is_trivial` per eigenvalue.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,is_trivial\n");
        for (i, z) in self.eigenvalues.iter().enumerate() {
            s.push_str(&format!(
                "{},{},{}\n",
                z.re,
                z.im,
                self.trivial_indices.contains(&i)
            ));
        }
        s
    }
}

/// Removes, for each predicted trivial value, the nearest computed eigenvalue.
fn split_trivial(
    mut ev: Vec<Complex64>,
    trivial: &[Complex64],
    k: usize,
    opts: &SpectralOptions,
) -> Result<Vec<Complex64>> {
    for &t in trivial {
        let (pos, dist) = ev
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - t).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .ok_or_else(|| Error::TrivialMatchFailure(format!("{t}")))?;
        if dist > opts.match_tolerance * k as f64 {
            return Err(Error::TrivialMatchFailure(format!(
                "{:.6}{:+.6}i (nearest at distance {dist:e})",
                t.re, t.im
            )));
        }
        ev.swap_remove(pos);
    }
    Ok(ev)
}

pub fn classify_spectrum(d: &Digraph) -> Result<SpectrumReport> {
    classify_spectrum_with(d, &SpectralOptions::default())
}

pub fn classify_spectrum_with(d: &Digraph, opts: &SpectralOptions) -> Result<SpectrumReport> {
    let triv = trivial_spectrum(d)?;
    let ev = eigenvalues_dense(d)?;
    let nontrivial = split_trivial(ev, &triv.values, d.k(), opts)?;
    Ok(SpectrumReport::assemble(
        d.n(),
        d.k(),
        triv.m(),
        Method::Dense,
        opts,
        triv.values,
        nontrivial,
    ))
}

/// Sparse classification: trivial values in closed form plus the `top`
/// largest nontrivial eigenvalues from Arnoldi on the deflated operator.
pub fn classify_spectrum_sparse(
    d: &Digraph,
    opts: &SpectralOptions,
    sparse: &SparseOptions,
) -> Result<SpectrumReport> {
    let triv = trivial_spectrum(d)?;
    let est = rho0_sparse(d, sparse)?;
    Ok(SpectrumReport::assemble(
        d.n(),
        d.k(),
        triv.m(),
        Method::Arnoldi,
        opts,
        triv.values,
        est.values,
    ))
}

/// Target regions for nontrivial spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Closed disk `|z| <= r`.
    Disk(f64),
    /// `{+1, -1}` together with the circle `|z| = r` (line digraphs of trees).
    Annulus(f64),
    /// Union of the circles `|z| = r1` and `|z| = r2`.
    TwoCircles(f64, f64),
}

impl Region {
    pub fn distance(&self, z: Complex64) -> f64 {
        let r = z.norm();
        match *self {
            Region::Disk(rad) => (r - rad).max(0.0),
            Region::Annulus(rad) => (r - rad)
                .abs()
                .min((z - 1.0).norm())
                .min((z + 1.0).norm()),
            Region::TwoCircles(a, b) => (r - a).abs().min((r - b).abs()),
        }
    }
}

/// True iff every nontrivial eigenvalue lies within `tol` of the region.
pub fn spectrum_in_region(report: &SpectrumReport, region: Region, tol: f64) -> bool {
    report
        .nontrivial()
        .iter()
        .all(|&z| region.distance(z) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn cycle_spectrum() {
        let d = Digraph::from_edge_list(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let r = classify_spectrum(&d).unwrap();
        assert_eq!(r.m, 3);
        assert_eq!(r.trivial_indices.len(), 3);
        assert!(r.nontrivial().is_empty());
        assert_eq!(r.rho0, 0.0);
    }

    #[test]
    fn trivial_vectors_are_eigenvectors() {
        let d = complete_digraph(2, 3).unwrap();
        let t = trivial_spectrum(&d).unwrap();
        for s in 0..3 {
            let f = t.eigenvector(s);
            // (A f)(u) = sum_v mult f(v)
            for u in 0..d.n() {
                let af: Complex64 = d.out_edges(u).map(|(v, m)| f[v] * m as f64).sum();
                assert!((af - t.values[s] * f[u]).norm() < 1e-12);
            }
            let nrm: f64 = f.iter().map(|z| z.norm_sqr()).sum();
            assert!(close(nrm, 1.0, 1e-12));
        }
        let t = trivial_spectrum(&paley_digraph(7).unwrap()).unwrap();
        assert_eq!(t.m(), 1);
        assert!(t.eigenvector(0).iter().all(|z| close(z.re, 1.0 / 7f64.sqrt(), 1e-15)));
    }

    #[test]
    fn projector_is_orthogonal() {
        let d = complete_digraph(2, 3).unwrap();
        let t = trivial_spectrum(&d).unwrap();
        let mut x: Vec<f64> = (0..6).map(|i| (i * i) as f64).collect();
        t.project(&mut x);
        for s in 0..3 {
            let f = t.eigenvector(s);
            let ip: Complex64 = f.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
            assert!(ip.norm() < 1e-12);
        }
    }

    #[test]
    fn de_bruijn_zero_snapping() {
        let r = classify_spectrum(&de_bruijn(2, 3).unwrap()).unwrap();
        assert_eq!(r.rho0, 0.0);
        let ev = eigenvalues_dense(&de_bruijn(2, 5).unwrap()).unwrap();
        assert_eq!(ev.iter().filter(|z| z.norm() == 0.0).count(), 31);
    }

    #[test]
    fn regions() {
        let z = Complex64::new(0.0, 2f64.sqrt());
        assert_eq!(Region::Disk(2.0).distance(z), 0.0);
        assert!(Region::Annulus(2f64.sqrt()).distance(z) < 1e-15);
        assert_eq!(Region::Annulus(2f64.sqrt()).distance(Complex64::new(-1.0, 0.0)), 0.0);
        assert!(close(Region::TwoCircles(1.0, 3.0).distance(Complex64::new(2.5, 0.0)), 0.5, 1e-15));
    }

    #[test]
    fn report_serialization() {
        let r = classify_spectrum(&paley_digraph(7).unwrap()).unwrap();
        let j = r.to_json();
        assert_eq!(j["version"], 1);
        assert_eq!(j["method"], "dense");
        assert_eq!(j["eigenvalues"].as_array().unwrap().len(), 7);
        assert_eq!(j["trivial_indices"][0], 0);
        let csv = r.to_csv();
        assert!(csv.starts_with("re,im,is_trivial\n3,0,true\n"));
        assert_eq!(csv.lines().count(), 8);
    }
}

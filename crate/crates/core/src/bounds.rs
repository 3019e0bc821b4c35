//! Closed-form bounds for regular graphs and almost-normal digraphs, and
//! checkers that compare them with measured quantities.

use num_complex::Complex64;
use serde::Serialize;

use crate::digraph::{Digraph, UGraph};
use crate::error::Result;
use crate::linalg::{multiset_distance, symmetric_eigenvalues, Mat};
use crate::spectral::{eigenvalues_dense, restricted_power_norms, trivial_spectrum};

/// Slack used by [`BoundCheck`], relative to `max(1, |bound|)`.
pub const CHECK_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub inputs: String,
    pub bound: f64,
    pub measured: Option<f64>,
    pub satisfied: bool,
}

impl BoundCheck {
    fn slack(bound: f64) -> f64 {
        CHECK_SLACK * bound.abs().max(1.0)
    }

    /// Check of `measured <= bound`.
    pub fn at_most(name: &str, inputs: String, bound: f64, measured: f64) -> Self {
        BoundCheck {
            name: name.into(),
            inputs,
            bound,
            measured: Some(measured),
            satisfied: measured <= bound + Self::slack(bound),
        }
    }

    /// Check of `measured >= bound`.
    pub fn at_least(name: &str, inputs: String, bound: f64, measured: f64) -> Self {
        BoundCheck {
            name: name.into(),
            inputs,
            bound,
            measured: Some(measured),
            satisfied: measured >= bound - Self::slack(bound),
        }
    }
}

/// CSV `name,inputs,bound,measured,satisfied`. Inputs are quoted.
pub fn checks_to_csv(checks: &[BoundCheck]) -> String {
    let mut s = String::from("name,inputs,bound,measured,satisfied\n");
    for c in checks {
        s.push_str(&format!(
            "{},\"{}\",{},{},{}\n",
            c.name,
            c.inputs.replace('"', "'"),
            c.bound,
            c.measured.map(|m| m.to_string()).unwrap_or_default(),
            c.satisfied
        ));
    }
    s
}

pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Moore bound `1 + k sum_{j=1}^{diam} (k-1)^{j-1}` on the order of a graph
/// of degree k and diameter diam. Saturates at `u128::MAX`.
pub fn moore_bound(k: u64, diam: u32) -> u128 {
    let mut total: u128 = 1;
    let mut layer = k as u128;
    for _ in 0..diam {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k.saturating_sub(1) as u128);
    }
    total
}

/// `2 sqrt(k - 1) cos(2 pi / diam)`, a lower bound on the second eigenvalue
/// of a k-regular graph of diameter `diam >= 2`.
pub fn quant_alon_boppana(k: u64, diam: u32) -> f64 {
    2.0 * (k as f64 - 1.0).sqrt() * (2.0 * std::f64::consts::PI / diam as f64).cos()
}

/// `2 m (2 k^m - 1)^10.4`, the largest order of a normal k-regular
/// m-periodic Ramanujan digraph.
pub fn normal_size_bound(k: u64, m: u32) -> f64 {
    2.0 * m as f64 * (2.0 * (k as f64).powi(m as i32) - 1.0).powf(10.4)
}

/// `C(ell + r - 1, r - 1) k^{r-1} lambda^{ell-r+1}`, bounding
/// `||A^ell on L0||` for an r-normal digraph with `rho0 = lambda`.
pub fn power_bound_rhs(k: f64, lambda: f64, r: u64, ell: u64) -> f64 {
    binomial(ell + r - 1, r - 1) * k.powi(r as i32 - 1) * lambda.powi(ell as i32 - r as i32 + 1)
}

/// `sum_t C(r-1, t) C(ell, t) k^t lambda^{ell-t}`, the first row sum of the
/// ell-th power of the majorant matrix.
pub fn majorant_row_sum(r: u64, lambda: f64, k: f64, ell: u64) -> f64 {
    (0..r.min(ell + 1))
        .map(|t| binomial(r - 1, t) * binomial(ell, t) * k.powi(t as i32) * lambda.powi((ell - t) as i32))
        .sum()
}

/// The r x r upper triangular matrix with lambda on the diagonal and k above.
pub fn majorant_matrix(r: usize, lambda: f64, k: f64) -> Mat {
    let mut m = Mat::zeros(r, r);
    for i in 0..r {
        m.set(i, i, lambda);
        for j in i + 1..r {
            m.set(i, j, k);
        }
    }
    m
}

fn mat_power(m: &Mat, ell: usize) -> Mat {
    (0..ell).fold(Mat::identity(m.rows), |p, _| p.matmul(m))
}

/// First row sum of `M^ell`, by explicit multiplication.
pub fn majorant_row_sum_literal(r: usize, lambda: f64, k: f64, ell: usize) -> f64 {
    mat_power(&majorant_matrix(r, lambda, k), ell).row(0).iter().sum()
}

/// `||M^ell + (M^ell)^T||_1 / (2 k^ell)`, by explicit multiplication.
pub fn symmetrized_majorant_literal(r: usize, lambda: f64, k: f64, ell: usize) -> f64 {
    let p = mat_power(&majorant_matrix(r, lambda, k), ell);
    let s = p.transpose();
    let norm1 = (0..r)
        .map(|j| (0..r).map(|i| (p.get(i, j) + s.get(i, j)).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    norm1 / (2.0 * k.powi(ell as i32))
}

/// Bounds on `rho(G_ell) / deg(G_ell)` for the symmetrized powers
/// `G_ell = A^ell + (A^ell)^T` of an aperiodic r-normal digraph: the closed
/// form at `ell = r - 1` and the majorant value at `ell = r`.
pub fn symmetrized_power_bound(k: f64, lambda: f64, r: u64) -> (f64, f64) {
    let l = r - 1;
    let sum: f64 = (0..=l)
        .map(|t| binomial(l, t).powi(2) * k.powi(t as i32) * lambda.powi((l - t) as i32))
        .sum();
    let at_rm1 = (lambda.powi(l as i32) + sum) / (2.0 * k.powi(l as i32));
    let at_r = symmetrized_majorant_literal(r as usize, lambda, k, r as usize);
    (at_rm1, at_r)
}

/// `round(sqrt(ln(n/2)))`, the asymptotic choice of ell.
pub fn default_alon_boppana_ell(n: f64) -> u64 {
    (n / 2.0).ln().max(0.0).sqrt().round().max(1.0) as u64
}

/// Lower bound on `rho0` of an r-normal aperiodic k-regular digraph on n
/// vertices from the inequality chain
/// `lambda^{2(ell-r+1)} >= 2 sqrt(k^{2 ell} - 1) / (C(ell+r-1, r-1)^2 k^{2r-2})
///  * (1 - 2 pi^2 / log^2_{k^{2 ell} - 1}(n/2))`.
/// Returns 0 when `ell < r` or the bracket is not positive.
pub fn digraph_alon_boppana_lower(n: f64, k: f64, r: u64, ell: u64) -> f64 {
    if ell < r || n <= 2.0 || k < 2.0 {
        return 0.0;
    }
    let lk = k.ln();
    // ln(k^{2 ell} - 1) without overflow.
    let ln_big = 2.0 * ell as f64 * lk + (-(-2.0 * ell as f64 * lk).exp()).ln_1p();
    let log_ratio = (n / 2.0).ln() / ln_big;
    let bracket = 1.0 - 2.0 * std::f64::consts::PI.powi(2) / log_ratio.powi(2);
    if !(bracket > 0.0) {
        return 0.0;
    }
    let c = binomial(ell + r - 1, r - 1);
    let ln_rhs = 2f64.ln() + 0.5 * ln_big - 2.0 * c.ln() - (2 * r - 2) as f64 * lk + bracket.ln();
    (ln_rhs / (2 * (ell - r + 1)) as f64).exp()
}

/// The largest [`digraph_alon_boppana_lower`] over `ell` in `r..=r + 200`.
pub fn digraph_alon_boppana_best(n: f64, k: f64, r: u64) -> (u64, f64) {
    (r..=r + 200)
        .map(|ell| (ell, digraph_alon_boppana_lower(n, k, r, ell)))
        .fold((r, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// Exact normality test `A A^T = A^T A`.
pub fn is_normal(d: &Digraph) -> Result<bool> {
    let n = d.n();
    let a = Mat::from_row_major(n, n, d.dense()?);
    let at = a.transpose();
    Ok(a.matmul(&at) == at.matmul(&a))
}

fn graph_spectrum(g: &UGraph) -> Vec<f64> {
    symmetric_eigenvalues(&Mat::from_row_major(g.n(), g.n(), g.dense()))
}

/// Moore bound against the order of `g`; `None` when `k < 3` or `g` is
/// disconnected.
pub fn moore_check(name: &str, g: &UGraph) -> Option<BoundCheck> {
    let diam = g.diameter()?;
    if g.k() < 3 || diam == 0 {
        return None;
    }
    let bound = moore_bound(g.k() as u64, diam as u32);
    Some(BoundCheck::at_most(
        "moore",
        format!("{name}: k={} diam={diam}", g.k()),
        bound as f64,
        g.n() as f64,
    ))
}

/// Second eigenvalue against the diameter bound; `None` unless `diam >= 2`.
pub fn quant_alon_boppana_check(name: &str, g: &UGraph) -> Option<BoundCheck> {
    let diam = g.diameter()?;
    if diam < 2 || g.k() < 2 {
        return None;
    }
    let vals = graph_spectrum(g);
    let lambda2 = vals[vals.len() - 2];
    Some(BoundCheck::at_least(
        "quant_alon_boppana",
        format!("{name}: k={} diam={diam}", g.k()),
        quant_alon_boppana(g.k() as u64, diam as u32),
        lambda2,
    ))
}

/// Order against the normal-digraph size bound; `None` if `d` is not normal.
pub fn normal_size_check(name: &str, d: &Digraph) -> Result<Option<BoundCheck>> {
    if !is_normal(d)? {
        return Ok(None);
    }
    let m = d.period()?.m;
    Ok(Some(BoundCheck::at_most(
        "normal_size",
        format!("{name}: k={} m={m}", d.k()),
        normal_size_bound(d.k() as u64, m as u32),
        d.n() as f64,
    )))
}

/// `||A^ell on L0|| <= power_bound_rhs(k, rho0, r, ell)` for `ell = 1..=lmax`.
pub fn power_bound_checks(name: &str, d: &Digraph, r: u64, rho0: f64, lmax: usize) -> Result<Vec<BoundCheck>> {
    let k = d.k() as f64;
    Ok(restricted_power_norms(d, lmax)?
        .into_iter()
        .enumerate()
        .map(|(i, norm)| {
            let ell = i as u64 + 1;
            BoundCheck::at_most(
                "power_bound",
                format!("{name}: k={k} r={r} rho0={rho0:.9} ell={ell}"),
                power_bound_rhs(k, rho0, r, ell),
                norm,
            )
        })
        .collect())
}

/// Largest nontrivial eigenvalue modulus of `A^ell + (A^ell)^T` divided by
/// `2 k^ell`, for an aperiodic digraph.
pub fn symmetrized_power_ratio(d: &Digraph, ell: usize) -> Result<f64> {
    let n = d.n();
    let a = Mat::from_row_major(n, n, d.dense()?);
    let p = mat_power(&a, ell);
    let pt = p.transpose();
    let mut s = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s.set(i, j, p.get(i, j) + pt.get(i, j));
        }
    }
    let mut vals = symmetric_eigenvalues(&s);
    // The constant vector carries the top eigenvalue 2 k^ell.
    vals.pop();
    let deg = 2.0 * (d.k() as f64).powi(ell as i32);
    Ok(vals.iter().map(|v| v.abs()).fold(0.0, f64::max) / deg)
}

/// Symmetrization checks for a digraph with certified r.
///
/// For `r = 1` the eigenvalues of `A + A^T` are compared with
/// `{lambda + conj(lambda)}`. For `r >= 2` and aperiodic `d`, the measured
/// ratios at `ell = r - 1` and `ell = r` are compared with
/// [`symmetrized_power_bound`]. Periodic digraphs with `r >= 2` give no rows.
pub fn symmetrized_checks(name: &str, d: &Digraph, r: u64, rho0: f64) -> Result<Vec<BoundCheck>> {
    let k = d.k() as f64;
    if r == 1 {
        let n = d.n();
        let sym: Vec<Complex64> = {
            let a = Mat::from_row_major(n, n, d.dense()?);
            let at = a.transpose();
            let mut s = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    s.set(i, j, a.get(i, j) + at.get(i, j));
                }
            }
            symmetric_eigenvalues(&s).into_iter().map(|v| v.into()).collect()
        };
        let want: Vec<Complex64> = eigenvalues_dense(d)?
            .into_iter()
            .map(|z| (2.0 * z.re).into())
            .collect();
        return Ok(vec![BoundCheck::at_most(
            "symmetrized_spectrum",
            format!("{name}: k={k} r=1"),
            1e-6,
            multiset_distance(&sym, &want),
        )]);
    }
    if trivial_spectrum(d)?.m() > 1 {
        return Ok(Vec::new());
    }
    let (b1, b2) = symmetrized_power_bound(k, rho0, r);
    Ok(vec![
        BoundCheck::at_most(
            "symmetrized_power",
            format!("{name}: k={k} r={r} ell={}", r - 1),
            b1,
            symmetrized_power_ratio(d, r as usize - 1)?,
        ),
        BoundCheck::at_most(
            "symmetrized_power",
            format!("{name}: k={k} r={r} ell={r}"),
            b2,
            symmetrized_power_ratio(d, r as usize)?,
        ),
    ])
}

/// Measured `rho0` against the best digraph Alon-Boppana lower bound.
pub fn digraph_alon_boppana_check(name: &str, d: &Digraph, r: u64, rho0: f64) -> BoundCheck {
    let (ell, bound) = digraph_alon_boppana_best(d.n() as f64, d.k() as f64, r);
    BoundCheck::at_least(
        "digraph_alon_boppana",
        format!("{name}: n={} k={} r={r} ell={ell}", d.n(), d.k()),
        bound,
        rho0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    #[test]
    fn moore_examples() {
        assert_eq!(moore_bound(4, 2), 17);
        assert_eq!(moore_bound(3, 1), 4);
        assert_eq!(moore_bound(3, 2), 10);
        let c = moore_check("petersen", &petersen()).unwrap();
        assert!(c.satisfied && c.bound == 10.0);
    }

    #[test]
    fn quant_alon_boppana_examples() {
        let c = quant_alon_boppana_check("c10", &cycle_graph(10).unwrap()).unwrap();
        assert!((c.bound - 2.0 * (0.4 * std::f64::consts::PI).cos()).abs() < 1e-12);
        assert!((c.measured.unwrap() - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-9);
        assert!(c.satisfied);
        assert!((quant_alon_boppana(3, 2) + 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(quant_alon_boppana_check("k4", &complete_graph(4).unwrap()).is_none());
    }

    #[test]
    fn normal_size_examples() {
        assert_eq!(normal_size_bound(3, 1), 2.0 * 5f64.powf(10.4));
        let c = normal_size_check("fano", &projective_incidence(2, 2).unwrap()).unwrap().unwrap();
        assert_eq!(c.bound, 4.0 * 17f64.powf(10.4));
        assert!(c.satisfied);
        assert!(normal_size_check("db", &de_bruijn(2, 3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn majorant_grid() {
        for k in [2.0f64, 3.0, 4.0] {
            let lambda = k.sqrt();
            for r in 1..=6u64 {
                for ell in 1..=12u64 {
                    let rs = majorant_row_sum(r, lambda, k, ell);
                    let lit = majorant_row_sum_literal(r as usize, lambda, k, ell as usize);
                    assert!((rs - lit).abs() <= 1e-9 * lit, "{k} {r} {ell}");
                    assert!(rs <= power_bound_rhs(k, lambda, r, ell) * (1.0 + 1e-12));
                }
            }
        }
        assert_eq!(power_bound_rhs(2.0, 2f64.sqrt(), 2, 1), 4.0);
        assert!((power_bound_rhs(3.0, 1.5, 1, 4) - 1.5f64.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn symmetrized_closed_form_matches_majorant() {
        for r in 1..=5u64 {
            let (b, _) = symmetrized_power_bound(3.0, 1.7, r);
            let lit = symmetrized_majorant_literal(r as usize, 1.7, 3.0, r as usize - 1);
            assert!((b - lit).abs() < 1e-12, "{r}");
        }
        let (b1, b2) = symmetrized_power_bound(2.0, 0.0, 2);
        assert_eq!(b1, 0.5);
        assert_eq!(b2, 0.0);
    }

    #[test]
    fn symmetrized_checks_pass() {
        let p = paley_digraph(7).unwrap();
        let c = symmetrized_checks("paley7", &p, 1, 2f64.sqrt()).unwrap();
        assert!(c[0].satisfied, "{c:?}");
        let (d, _) = line_digraph(&complete_graph(4).unwrap()).unwrap();
        for c in symmetrized_checks("lk4", &d, 2, 2f64.sqrt()).unwrap() {
            assert!(c.satisfied, "{c:?}");
        }
    }

    #[test]
    fn alon_boppana_digraph_lower() {
        assert_eq!(digraph_alon_boppana_lower(10.0, 4.0, 1, 1), 0.0);
        assert_eq!(digraph_alon_boppana_lower(1e6, 4.0, 2, 1), 0.0);
        let vals: Vec<f64> = [1e3, 1e6, 1e9]
            .iter()
            .map(|&n| digraph_alon_boppana_best(n, 4.0, 1).1)
            .collect();
        assert!(vals[0] < vals[1] && vals[1] < vals[2], "{vals:?}");
        assert!(vals[2] >= 1.8);
        assert_eq!(default_alon_boppana_ell(1e9), 4);
    }
}

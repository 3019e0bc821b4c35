//! Symmetric eigenproblem: Householder tridiagonalization and implicit QL.

use super::Mat;

/// Eigenvalues of a symmetric matrix in ascending order.
pub fn symmetric_eigenvalues(m: &Mat) -> Vec<f64> {
    let (mut d, mut e, _) = tridiagonalize(m, false);
    ql_implicit(&mut d, &mut e, None);
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (as columns of the
/// returned matrix) of a symmetric matrix.
pub fn symmetric_eigen(m: &Mat) -> (Vec<f64>, Mat) {
    let n = m.rows;
    let (mut d, mut e, q) = tridiagonalize(m, true);
    let mut z = q.unwrap();
    ql_implicit(&mut d, &mut e, Some(&mut z));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let vals = order.iter().map(|&i| d[i]).collect();
    let mut vecs = Mat::zeros(n, n);
    for (c, &src) in order.iter().enumerate() {
        for r in 0..n {
            vecs.set(r, c, z.get(r, src));
        }
    }
    (vals, vecs)
}

/// Returns diagonal `d`, off-diagonal `e` (with `e[i]` coupling `i` and
/// `i + 1`, `e[n-1] = 0`) and optionally the accumulated orthogonal `Q`
/// with `m = Q T Q^T`.
fn tridiagonalize(m: &Mat, want_q: bool) -> (Vec<f64>, Vec<f64>, Option<Mat>) {
    let n = m.rows;
    let mut a = m.clone();
    let mut q = want_q.then(|| Mat::identity(n));
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let sigma: f64 = (k + 1..n).map(|i| a.get(i, k).powi(2)).sum();
        if sigma == 0.0 {
            continue;
        }
        let x0 = a.get(k + 1, k);
        let alpha = -x0.signum() * sigma.sqrt();
        for i in 0..len {
            v[i] = a.get(k + 1 + i, k);
        }
        v[0] -= alpha;
        let vnorm2: f64 = v[..len].iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // Trailing block S = a[k+1.., k+1..] <- H S H with H = I - beta v v^T.
        let off = k + 1;
        for i in 0..len {
            let row = &a.data[(off + i) * n + off..(off + i) * n + n];
            p[i] = beta * row.iter().zip(&v[..len]).map(|(x, y)| x * y).sum::<f64>();
        }
        let kk = 0.5 * beta * p[..len].iter().zip(&v[..len]).map(|(x, y)| x * y).sum::<f64>();
        for i in 0..len {
            p[i] -= kk * v[i];
        }
        for i in 0..len {
            let (vi, pi) = (v[i], p[i]);
            let row = &mut a.data[(off + i) * n + off..(off + i) * n + n];
            for j in 0..len {
                row[j] -= vi * p[j] + pi * v[j];
            }
        }
        a.set(off, k, alpha);
        a.set(k, off, alpha);
        for i in off + 1..n {
            a.set(i, k, 0.0);
            a.set(k, i, 0.0);
        }
        if let Some(q) = q.as_mut() {
            // Q <- Q H
            for r in 0..n {
                let row = &mut q.data[r * n + off..(r + 1) * n];
                let dot: f64 = row.iter().zip(&v[..len]).map(|(x, y)| x * y).sum();
                let f = beta * dot;
                for (x, y) in row.iter_mut().zip(&v[..len]) {
                    *x -= f * y;
                }
            }
        }
    }
    let d = (0..n).map(|i| a.get(i, i)).collect();
    let mut e = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        e[i] = a.get(i + 1, i);
    }
    (d, e, q)
}

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
/// Rotations are accumulated into the columns of `z` when given.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Mat>) {
    let n = d.len();
    if n == 0 {
        return;
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 60, "symmetric QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let cols = z.cols;
                    for k in 0..z.rows {
                        let f = z.data[k * cols + i + 1];
                        let zi = z.data[k * cols + i];
                        z.data[k * cols + i + 1] = s * zi + c * f;
                        z.data[k * cols + i] = c * zi - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

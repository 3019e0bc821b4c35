//! Eigenvalues of dense nonsymmetric real matrices: balancing, Householder
//! reduction to upper Hessenberg form, then Francis double-shift QR.

use num_complex::Complex64;

use super::Mat;
use crate::error::{Error, Result};

const RADIX: f64 = 2.0;
const MAX_ITS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of a square matrix, with multiplicity.
pub fn eigenvalues(m: &Mat) -> Result<Vec<Complex64>> {
    assert_eq!(m.rows, m.cols, "square matrix required");
    let mut a = m.clone();
    balance(&mut a);
    to_hessenberg(&mut a);
    hessenberg_eigenvalues(&a)
}

/// Scales rows and columns by powers of two to equalize their norms.
fn balance(a: &mut Mat) {
    let n = a.rows;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += a.get(j, i).abs();
                    r += a.get(i, j).abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a.data[i * n + j] *= g;
                }
                for j in 0..n {
                    a.data[j * n + i] *= f;
                }
            }
        }
    }
}

/// In-place orthogonal similarity reduction to upper Hessenberg form.
fn to_hessenberg(a: &mut Mat) {
    let n = a.rows;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let scale: f64 = (k + 1..n).map(|i| a.get(i, k).abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut sigma = 0.0;
        for i in 0..len {
            v[i] = a.get(k + 1 + i, k) / scale;
            sigma += v[i] * v[i];
        }
        let alpha = -v[0].signum() * sigma.sqrt();
        if alpha == 0.0 {
            continue;
        }
        v[0] -= alpha;
        let vnorm2: f64 = v[..len].iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // Left: rows k+1.., columns k..
        for x in w[k..n].iter_mut() {
            *x = 0.0;
        }
        for i in 0..len {
            let row = &a.data[(k + 1 + i) * n..(k + 2 + i) * n];
            let vi = v[i];
            for j in k..n {
                w[j] += vi * row[j];
            }
        }
        for i in 0..len {
            let f = beta * v[i];
            let row = &mut a.data[(k + 1 + i) * n..(k + 2 + i) * n];
            for j in k..n {
                row[j] -= f * w[j];
            }
        }
        // Right: all rows, columns k+1..
        for r in 0..n {
            let row = &mut a.data[r * n + k + 1..(r + 1) * n];
            let dot: f64 = row.iter().zip(&v[..len]).map(|(x, y)| x * y).sum();
            let f = beta * dot;
            for (x, y) in row.iter_mut().zip(&v[..len]) {
                *x -= f * y;
            }
        }
        a.set(k + 1, k, alpha * scale);
        for i in k + 2..n {
            a.set(i, k, 0.0);
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix (entries below the first
/// subdiagonal are ignored).
pub fn hessenberg_eigenvalues(h: &Mat) -> Result<Vec<Complex64>> {
    let n = h.rows;
    // One-based working copy keeps the classical index arithmetic readable.
    let ld = n + 1;
    let mut a = vec![0.0; ld * ld];
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            a[(i + 1) * ld + j + 1] = h.get(i, j);
        }
    }
    macro_rules! a {
        ($i:expr, $j:expr) => {
            a[($i) * ld + ($j)]
        };
    }
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];

    let mut anorm = 0.0;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a!(i, j).abs();
        }
    }
    let mut nn = n;
    let mut t = 0.0;
    let mut its = 0usize;
    while nn >= 1 {
        // Look for a single small subdiagonal element.
        let mut l = nn;
        while l >= 2 {
            let mut s = a!(l - 1, l - 1).abs() + a!(l, l).abs();
            if s == 0.0 {
                s = anorm;
            }
            if a!(l, l - 1).abs() + s == s {
                a!(l, l - 1) = 0.0;
                break;
            }
            l -= 1;
        }
        let mut x = a!(nn, nn);
        if l == nn {
            wr[nn] = x + t;
            wi[nn] = 0.0;
            nn -= 1;
            its = 0;
            continue;
        }
        let mut y = a!(nn - 1, nn - 1);
        let mut w = a!(nn, nn - 1) * a!(nn - 1, nn);
        if l == nn - 1 {
            let p = 0.5 * (y - x);
            let q = p * p + w;
            let mut z = q.abs().sqrt();
            x += t;
            if q >= 0.0 {
                z = p + z.copysign(p);
                wr[nn - 1] = x + z;
                wr[nn] = x + z;
                if z != 0.0 {
                    wr[nn] = x - w / z;
                }
                wi[nn - 1] = 0.0;
                wi[nn] = 0.0;
            } else {
                wr[nn - 1] = x + p;
                wr[nn] = x + p;
                wi[nn - 1] = -z;
                wi[nn] = z;
            }
            nn -= 2;
            its = 0;
            continue;
        }
        if its == MAX_ITS_PER_EIGENVALUE {
            return Err(Error::NoConvergence(format!(
                "Hessenberg QR stalled with {nn} eigenvalues remaining"
            )));
        }
        if its > 0 && its % 10 == 0 {
            // Exceptional shift.
            t += x;
            for i in 1..=nn {
                a!(i, i) -= x;
            }
            let s = a!(nn, nn - 1).abs() + a!(nn - 1, nn - 2).abs();
            x = 0.75 * s;
            y = x;
            w = -0.4375 * s * s;
        }
        its += 1;
        // Form the shift and look for two consecutive small subdiagonals.
        let (mut p, mut q, mut r, mut z);
        let mut m = nn - 2;
        loop {
            z = a!(m, m);
            r = x - z;
            let s = y - z;
            p = (r * s - w) / a!(m + 1, m) + a!(m, m + 1);
            q = a!(m + 1, m + 1) - z - r - s;
            r = a!(m + 2, m + 1);
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = a!(m, m - 1).abs() * (q.abs() + r.abs());
            let v = p.abs() * (a!(m - 1, m - 1).abs() + z.abs() + a!(m + 1, m + 1).abs());
            if u + v == v {
                break;
            }
            m -= 1;
        }
        for i in m + 2..=nn {
            a!(i, i - 2) = 0.0;
            if i != m + 2 {
                a!(i, i - 3) = 0.0;
            }
        }
        // Double-shift QR sweep on rows/columns l..nn.
        let mut k = m;
        while k + 1 <= nn {
            if k != m {
                p = a!(k, k - 1);
                q = a!(k + 1, k - 1);
                r = 0.0;
                if k != nn - 1 {
                    r = a!(k + 2, k - 1);
                }
                x = p.abs() + q.abs() + r.abs();
                if x != 0.0 {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if s != 0.0 {
                if k == m {
                    if l != m {
                        a!(k, k - 1) = -a!(k, k - 1);
                    }
                } else {
                    a!(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pp = a!(k, j) + q * a!(k + 1, j);
                    if k != nn - 1 {
                        pp += r * a!(k + 2, j);
                        a!(k + 2, j) -= pp * z;
                    }
                    a!(k + 1, j) -= pp * y;
                    a!(k, j) -= pp * x;
                }
                let mmin = nn.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * a!(i, k) + y * a!(i, k + 1);
                    if k != nn - 1 {
                        pp += z * a!(i, k + 2);
                        a!(i, k + 2) -= pp * r;
                    }
                    a!(i, k + 1) -= pp * q;
                    a!(i, k) -= pp;
                }
            }
            k += 1;
        }
    }
    Ok((1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        v
    }

    #[test]
    fn triangular_and_rotation() {
        let m = Mat::from_row_major(3, 3, vec![1.0, 2.0, 3.0, 0.0, 4.0, 5.0, 0.0, 0.0, 6.0]);
        let ev = sorted(eigenvalues(&m).unwrap());
        for (e, want) in ev.iter().zip([1.0, 4.0, 6.0]) {
            assert!((e - Complex64::new(want, 0.0)).norm() < 1e-12);
        }
        let rot = Mat::from_row_major(2, 2, vec![0.0, -1.0, 1.0, 0.0]);
        let ev = sorted(eigenvalues(&rot).unwrap());
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let c = [24.0, -50.0, 35.0, -10.0];
        let mut m = Mat::zeros(4, 4);
        for i in 1..4 {
            m.set(i, i - 1, 1.0);
        }
        for i in 0..4 {
            m.set(i, 3, -c[i]);
        }
        let ev = sorted(eigenvalues(&m).unwrap());
        for (e, want) in ev.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((e - Complex64::new(want, 0.0)).norm() < 1e-9, "{e}");
        }
    }

    #[test]
    fn random_matrix_trace_matches() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 17, 60] {
            let data: Vec<f64> = (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let m = Mat::from_row_major(n, n, data);
            let ev = eigenvalues(&m).unwrap();
            let tr: f64 = (0..n).map(|i| m.get(i, i)).sum();
            let s: Complex64 = ev.iter().sum();
            assert!((s.re - tr).abs() < 1e-9 && s.im.abs() < 1e-9);
            let tr2: f64 = m.matmul(&m).data.iter().step_by(n + 1).sum();
            let s2: Complex64 = ev.iter().map(|z| z * z).sum();
            assert!((s2.re - tr2).abs() < 1e-8 * (n as f64));
        }
    }
}

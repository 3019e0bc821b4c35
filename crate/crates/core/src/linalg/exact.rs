//! Exact integer computations used to pin down quantities that floating
//! point eigensolvers only resolve to `eps^(1/s)` for Jordan blocks of size s.

const PRIMES: [u64; 2] = [(1 << 61) - 1, 4_611_686_018_427_387_847];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn rank_mod(mut m: Vec<u64>, n: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..n {
                m.swap(piv * n + j, rank * n + j);
            }
        }
        let inv = powmod(m[rank * n + col], p - 2, p);
        for r in rank + 1..n {
            let f = mulmod(m[r * n + col], inv, p);
            if f == 0 {
                continue;
            }
            for j in col..n {
                let sub = mulmod(f, m[rank * n + j], p);
                m[r * n + j] = (m[r * n + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn matmul_mod(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut c = vec![0u64; n * n];
    for i in 0..n {
        for l in 0..n {
            let x = a[i * n + l];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let y = b[l * n + j];
                if y != 0 {
                    c[i * n + j] = (c[i * n + j] + mulmod(x, y, p)) % p;
                }
            }
        }
    }
    c
}

/// Algebraic multiplicity of the eigenvalue 0 of a nonnegative integer
/// matrix (row-major), i.e. the nullity of `A^n`. Ranks are computed modulo
/// two large primes and the larger is kept; a prime dividing every maximal
/// nonzero minor would be needed for this to undercount the rational rank.
pub fn exact_zero_multiplicity(a: &[u64], n: usize) -> usize {
    PRIMES
        .iter()
        .map(|&p| {
            let base: Vec<u64> = a.iter().map(|&x| x % p).collect();
            let mut power = base.clone();
            let mut nullity = n - rank_mod(power.clone(), n, p);
            loop {
                if nullity == 0 || nullity == n {
                    return nullity;
                }
                power = matmul_mod(&power, &base, n, p);
                let next = n - rank_mod(power.clone(), n, p);
                if next == nullity {
                    return nullity;
                }
                nullity = next;
            }
        })
        .min()
        .unwrap()
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
/// Returns `None` if an intermediate value overflows `i128`.
pub fn integer_determinant(a: &[i64], n: usize) -> Option<i128> {
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let Some(piv) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                m.swap(piv * n + j, k * n + j);
            }
            sign = -sign;
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(m[i * n + k].checked_mul(m[k * n + j])?)?;
                m[i * n + j] = v / prev;
            }
            m[i * n + k] = 0;
        }
        prev = pivot;
    }
    if n == 0 {
        return Some(1);
    }
    Some(sign * m[(n - 1) * n + n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_shift() {
        // Single Jordan block of size 4 plus a 1x1 block with eigenvalue 2.
        let n = 5;
        let mut a = vec![0u64; n * n];
        for i in 0..3 {
            a[i * n + i + 1] = 1;
        }
        a[4 * n + 4] = 2;
        assert_eq!(exact_zero_multiplicity(&a, n), 4);
        let id: Vec<u64> = (0..9).map(|i| (i % 4 == 0) as u64).collect();
        assert_eq!(exact_zero_multiplicity(&id, 3), 0);
    }

    #[test]
    fn determinants() {
        assert_eq!(integer_determinant(&[2, 1, 1, 3], 2), Some(5));
        assert_eq!(integer_determinant(&[0, 1, 1, 0], 2), Some(-1));
        assert_eq!(integer_determinant(&[1, 2, 2, 4], 2), Some(0));
        assert_eq!(integer_determinant(&[0, 0, 0, 0], 2), Some(0));
        assert_eq!(
            integer_determinant(&[2, 0, 1, 1, 3, 2, 1, 1, 1], 3),
            Some(2 * (3 - 2) - 0 + (1 - 3))
        );
    }
}

//! Finite fields F_q, q = p^e, as polynomial residues modulo an irreducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 4;

/// An element of F_{p^e}: coefficients `c[0] + c[1] x + ...`, unused slots zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub [u32; MAX_DEGREE]);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem([0; MAX_DEGREE]);

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

/// Field description: characteristic, degree and the monic modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: usize,
    /// Ascending coefficients of the monic degree-`e` modulus (length `e + 1`).
    pub modulus: Vec<u64>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, vec![0, 1])
    }

    /// F_4 = F_2[x]/(x^2 + x + 1).
    pub fn f4() -> Self {
        Self::new(2, vec![1, 1, 1]).expect("x^2+x+1 is irreducible over F_2")
    }

    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadPrime(p, "not prime".into()));
        }
        if p > u32::MAX as u64 {
            return Err(Error::BadPrime(p, "characteristic too large".into()));
        }
        let e = modulus.len().saturating_sub(1);
        if e == 0 || e > MAX_DEGREE {
            return Err(Error::InvalidInput(format!(
                "extension degree must be in 1..={MAX_DEGREE}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) || modulus[e] != 1 {
            return Err(Error::InvalidInput(
                "modulus must be monic with coefficients below p".into(),
            ));
        }
        let spec = FieldSpec { p, e, modulus };
        if !spec.modulus_irreducible() {
            return Err(Error::InvalidInput(format!(
                "modulus {:?} is reducible over F_{p}",
                spec.modulus
            )));
        }
        Ok(spec)
    }

    /// Field order q = p^e.
    pub fn order(&self) -> u64 {
        self.p.pow(self.e as u32)
    }

    /// Trial division by every monic polynomial of degree 1..=e/2.
    fn modulus_irreducible(&self) -> bool {
        let p = self.p;
        for d in 1..=self.e / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut div = Vec::with_capacity(d + 1);
                let mut x = idx;
                for _ in 0..d {
                    div.push(x % p);
                    x /= p;
                }
                div.push(1);
                if poly_rem(&self.modulus, &div, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn from_u64(&self, a: u64) -> FieldElem {
        let mut c = [0u32; MAX_DEGREE];
        c[0] = (a % self.p) as u32;
        FieldElem(c)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.e {
            return Err(Error::InvalidInput(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.e
            )));
        }
        let mut c = [0u32; MAX_DEGREE];
        for (slot, &x) in c.iter_mut().zip(coeffs) {
            *slot = (x % self.p) as u32;
        }
        Ok(FieldElem(c))
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u32;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.e {
            c[i] = (a.0[i] + b.0[i]) % p;
        }
        FieldElem(c)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.p as u32;
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..self.e {
            c[i] = (p - a.0[i]) % p;
        }
        FieldElem(c)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        let e = self.e;
        if e == 1 {
            let v = (a.0[0] as u64 * b.0[0] as u64) % p;
            return self.from_u64(v);
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + a.0[i] as u64 * b.0[j] as u64) % p;
            }
        }
        // Reduce by the monic modulus: x^e = -sum modulus[i] x^i.
        for d in (e..2 * e - 1).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..e {
                let sub = top * self.modulus[i] % p;
                prod[d - e + i] = (prod[d - e + i] + p - sub) % p;
            }
        }
        let mut c = [0u32; MAX_DEGREE];
        for i in 0..e {
            c[i] = prod[i] as u32;
        }
        FieldElem(c)
    }

    pub fn pow(&self, mut a: FieldElem, mut exp: u64) -> FieldElem {
        let mut r = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            exp >>= 1;
        }
        r
    }

    /// Multiplicative inverse (a^(q-2)); `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        if self.e == 1 {
            return Some(self.from_u64(inv_mod(a.0[0] as u64, self.p)));
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// All q field elements in a fixed order (base-p digits of the index).
    pub fn elements(&self) -> Vec<FieldElem> {
        (0..self.order())
            .map(|mut idx| {
                let mut c = [0u32; MAX_DEGREE];
                for slot in c.iter_mut().take(self.e) {
                    *slot = (idx % self.p) as u32;
                    idx /= self.p;
                }
                FieldElem(c)
            })
            .collect()
    }
}

/// Inverse modulo a prime by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p);
    while r.len() > dd {
        let top = *r.last().unwrap() * lead_inv % p;
        let shift = r.len() - 1 - dd;
        for (i, &c) in den.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - top * c % p) % p;
        }
        r.pop();
    }
    r
}

/// Legendre symbol of `a` modulo an odd prime `p`: 0, 1 or -1.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let mut r = 1u64;
    let (mut b, mut e) = (a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(1, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(2, 31), 1);
        assert_eq!(legendre(0, 31), 0);
        // Square tables by brute force.
        for p in [3u64, 7, 11, 31] {
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                assert_eq!(legendre(a, p) == 1, squares.contains(&a), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn inverse_by_euclid() {
        assert_eq!(inv_mod(28, 31), 10);
        assert_eq!(28 * 10 % 31, 1);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::new(2, vec![1, 0, 1]).is_err()); // (x+1)^2
        assert!(FieldSpec::new(3, vec![1, 0, 1]).is_ok()); // x^2+1 over F_3
        assert!(FieldSpec::new(2, vec![1, 1, 0, 1]).is_ok()); // x^3+x+1
    }

    #[test]
    fn f4_multiplication_table() {
        let f = FieldSpec::f4();
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let x1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x1);
        assert_eq!(f.mul(x, x1), f.one());
        assert_eq!(f.inv(x), Some(x1));
    }

    fn specs() -> Vec<FieldSpec> {
        vec![
            FieldSpec::prime(31).unwrap(),
            FieldSpec::prime(7).unwrap(),
            FieldSpec::f4(),
            FieldSpec::new(3, vec![2, 2, 1]).unwrap(),
            FieldSpec::new(2, vec![1, 1, 0, 1]).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn field_axioms(idx in 0usize..5, a in 0u64..1_000_000, b in 0u64..1_000_000, c in 0u64..1_000_000) {
            let f = &specs()[idx];
            let q = f.order();
            let el = f.elements();
            let (a, b, c) = (el[(a % q) as usize], el[(b % q) as usize], el[(c % q) as usize]);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }
}

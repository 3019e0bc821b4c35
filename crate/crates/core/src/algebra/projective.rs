use super::field::{FieldElem, FieldSpec};
use crate::error::{Error, Result};

/// Invertible d x d matrix over a finite field, scaled so that its first
/// nonzero entry in row-major order is 1. Two matrices represent the same
/// element of PGL_d iff their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    pub d: usize,
    pub entries: Vec<FieldElem>,
}

pub fn determinant(f: &FieldSpec, d: usize, entries: &[FieldElem]) -> FieldElem {
    let mut m = entries.to_vec();
    let mut det = f.one();
    for c in 0..d {
        let Some(piv) = (c..d).find(|&r| !m[r * d + c].is_zero()) else {
            return FieldElem::ZERO;
        };
        if piv != c {
            for j in 0..d {
                m.swap(piv * d + j, c * d + j);
            }
            det = f.neg(det);
        }
        let pv = m[c * d + c];
        det = f.mul(det, pv);
        let inv = f.inv(pv).unwrap();
        for r in c + 1..d {
            let factor = f.mul(m[r * d + c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..d {
                let t = f.mul(factor, m[c * d + j]);
                m[r * d + j] = f.sub(m[r * d + j], t);
            }
        }
    }
    det
}

impl ProjMatrix {
    /// Canonical projective form of an invertible matrix.
    pub fn canonical(f: &FieldSpec, d: usize, entries: &[FieldElem]) -> Result<Self> {
        if entries.len() != d * d {
            return Err(Error::InvalidInput(format!(
                "expected {} entries, got {}",
                d * d,
                entries.len()
            )));
        }
        if determinant(f, d, entries).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::normalize(f, d, entries.to_vec()))
    }

    fn normalize(f: &FieldSpec, d: usize, mut entries: Vec<FieldElem>) -> Self {
        let lead = *entries.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
        let inv = f.inv(lead).unwrap();
        for x in entries.iter_mut() {
            *x = f.mul(*x, inv);
        }
        ProjMatrix { d, entries }
    }

    pub fn identity(f: &FieldSpec, d: usize) -> Self {
        let mut e = vec![FieldElem::ZERO; d * d];
        for i in 0..d {
            e[i * d + i] = f.one();
        }
        ProjMatrix { d, entries: e }
    }

    /// Canonical form of the product `self * other`.
    pub fn mul(&self, f: &FieldSpec, other: &ProjMatrix) -> ProjMatrix {
        let d = self.d;
        let mut out = vec![FieldElem::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = FieldElem::ZERO;
                for l in 0..d {
                    s = f.add(s, f.mul(self.entries[i * d + l], other.entries[l * d + j]));
                }
                out[i * d + j] = s;
            }
        }
        Self::normalize(f, d, out)
    }

    /// Fixed-width byte serialization used as a hash key.
    pub fn key(&self, f: &FieldSpec) -> Vec<u8> {
        let mut k = Vec::with_capacity(self.entries.len() * f.e * 4);
        for x in &self.entries {
            for c in &x.0[..f.e] {
                k.extend_from_slice(&c.to_le_bytes());
            }
        }
        k
    }

    pub fn scale(&self, f: &FieldSpec, lambda: FieldElem) -> Vec<FieldElem> {
        self.entries.iter().map(|&x| f.mul(x, lambda)).collect()
    }
}

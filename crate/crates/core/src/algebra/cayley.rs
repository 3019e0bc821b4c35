use std::collections::{HashMap, VecDeque};

use super::field::FieldSpec;
use super::projective::ProjMatrix;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Default cap on the number of group elements enumerated.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A Cayley digraph of the group generated by a set of projective matrices,
/// with edges `g -> g * s`.
#[derive(Debug, Clone)]
pub struct CayleyDigraph {
    pub field: FieldSpec,
    pub d: usize,
    pub generators: Vec<ProjMatrix>,
    pub digraph: Digraph,
    /// `elements[v]` is the group element labelling vertex `v`; vertex 0 is
    /// the identity and the order is breadth-first from it.
    pub elements: Vec<ProjMatrix>,
    index: HashMap<Vec<u8>, usize>,
}

impl CayleyDigraph {
    pub fn build(field: &FieldSpec, d: usize, generators: &[ProjMatrix], cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("empty generator set".into()));
        }
        if generators.iter().any(|g| g.d != d) {
            return Err(Error::InvalidInput("generator dimension mismatch".into()));
        }
        let id = ProjMatrix::identity(field, d);
        let mut index = HashMap::new();
        index.insert(id.key(field), 0usize);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        let mut edges = Vec::new();
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = elements[g].mul(field, s);
                let key = h.key(field);
                let target = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = elements.len();
                        if t >= cap {
                            return Err(Error::ClosureBudgetExceeded(cap));
                        }
                        index.insert(key, t);
                        elements.push(h);
                        queue.push_back(t);
                        t
                    }
                };
                edges.push((g, target, 1));
            }
        }
        let digraph = Digraph::from_edge_list(elements.len(), &edges)?;
        Ok(CayleyDigraph {
            field: field.clone(),
            d,
            generators: generators.to_vec(),
            digraph,
            elements,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn vertex_of(&self, g: &ProjMatrix) -> Option<usize> {
        self.index.get(&g.key(&self.field)).copied()
    }

    /// The vertex permutation `g -> h * g` induced by left multiplication.
    pub fn left_translation(&self, h: usize) -> Vec<usize> {
        let hm = &self.elements[h];
        self.elements
            .iter()
            .map(|g| {
                self.vertex_of(&hm.mul(&self.field, g))
                    .expect("group is closed under multiplication")
            })
            .collect()
    }
}

/// Order of |PGL_d(F_q)| = q^{d(d-1)/2} prod_{i=2}^{d} (q^i - 1).
pub fn pgl_order(q: u64, d: u32) -> u64 {
    let mut o = q.pow(d * (d - 1) / 2);
    for i in 2..=d {
        o *= q.pow(i) - 1;
    }
    o
}

/// Order of PSL_d(F_q) = |PGL_d(F_q)| / gcd(d, q - 1).
pub fn psl_order(q: u64, d: u32) -> u64 {
    pgl_order(q, d) / crate::digraph::gcd(d as usize, (q - 1) as usize) as u64
}

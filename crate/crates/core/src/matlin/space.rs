use std::sync::Arc;

use crate::gf::{Code, FieldSpec};
use crate::matlin::{Matrix, Vector};

/// Largest ambient space the enumeration-based algorithms accept.
pub const SPACE_CAP: u32 = 6561;

/// The coordinate space GF(q)^n with a fixed enumeration: `v` has index `sum v_i q^i`.
///
/// Index 0 is the zero vector. The smallest index on a line `<v>` is the representative whose
/// last nonzero coordinate equals 1, which is what [`Space::normalize`] returns.
#[derive(Clone, Debug)]
pub struct Space {
    field: Arc<FieldSpec>,
    n: usize,
    size: u32,
}

impl Space {
    pub fn new(field: &Arc<FieldSpec>, n: usize) -> Self {
        let size = (field.q() as u64).saturating_pow(n as u32).min(u32::MAX as u64) as u32;
        Space {
            field: field.clone(),
            n,
            size,
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `|V| = q^n`.
    pub fn size(&self) -> u32 {
        self.size
    }

    #[inline]
    pub fn encode(&self, v: &[Code]) -> u32 {
        let q = self.field.q();
        v.iter().rev().fold(0u32, |acc, &c| acc * q + c as u32)
    }

    #[inline]
    pub fn decode_into(&self, mut idx: u32, out: &mut [Code]) {
        let q = self.field.q();
        for o in out.iter_mut() {
            *o = (idx % q) as Code;
            idx /= q;
        }
    }

    pub fn decode(&self, idx: u32) -> Vec<Code> {
        let mut v = vec![0; self.n];
        self.decode_into(idx, &mut v);
        v
    }

    pub fn vector(&self, idx: u32) -> Vector {
        Vector::from_codes(&self.field, self.decode(idx))
    }

    pub fn index(&self, v: &Vector) -> u32 {
        self.encode(v.entries())
    }

    /// Index of `g * v`.
    #[inline]
    pub fn act(&self, g: &Matrix, idx: u32, buf: &mut [Code], out: &mut [Code]) -> u32 {
        self.decode_into(idx, buf);
        g.apply_codes(buf, out);
        self.encode(out)
    }

    /// Scales `v` in place so its last nonzero coordinate is 1.
    #[inline]
    pub fn normalize_codes(&self, v: &mut [Code]) {
        if let Some(&last) = v.iter().rev().find(|&&c| c != 0) {
            if last != 1 {
                let inv = self.field.inv(last).expect("nonzero");
                for c in v.iter_mut() {
                    *c = self.field.mul(*c, inv);
                }
            }
        }
    }

    pub fn normalize(&self, idx: u32) -> u32 {
        let mut v = self.decode(idx);
        self.normalize_codes(&mut v);
        self.encode(&v)
    }

    pub fn is_line_rep(&self, idx: u32) -> bool {
        idx != 0 && self.normalize(idx) == idx
    }

    /// Nonzero vectors in enumeration order.
    pub fn nonzero(&self) -> impl Iterator<Item = u32> {
        1..self.size
    }

    /// One representative per line, in enumeration order.
    pub fn line_reps(&self) -> Vec<u32> {
        let mut v = vec![0; self.n];
        (1..self.size)
            .filter(|&i| {
                self.decode_into(i, &mut v);
                v.iter().rev().find(|&&c| c != 0) == Some(&1)
            })
            .collect()
    }

    /// Permutation of all indices induced by `g`.
    pub fn permutation(&self, g: &Matrix) -> Vec<u32> {
        let mut buf = vec![0; self.n];
        let mut out = vec![0; self.n];
        (0..self.size).map(|i| self.act(g, i, &mut buf, &mut out)).collect()
    }
}

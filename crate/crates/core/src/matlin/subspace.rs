use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::gf::{Code, FieldSpec};
use crate::matlin::{Matrix, Vector};

/// A subspace of GF(q)^n held by its reduced row echelon basis, so equal subspaces have equal
/// data.
#[derive(Clone)]
pub struct Subspace {
    field: Arc<FieldSpec>,
    n: usize,
    rows: Vec<Vec<Code>>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && *self.field == *other.field
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.rows)
    }
}

impl Subspace {
    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> Self {
        Subspace {
            field: field.clone(),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: &Arc<FieldSpec>, n: usize) -> Self {
        let mut s = Subspace::zero(field, n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            s.insert(&e);
        }
        s
    }

    pub fn span<'a>(field: &Arc<FieldSpec>, n: usize, vectors: impl IntoIterator<Item = &'a [Code]>) -> Self {
        let mut s = Subspace::zero(field, n);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn span_vectors(field: &Arc<FieldSpec>, n: usize, vectors: &[Vector]) -> Self {
        Subspace::span(field, n, vectors.iter().map(|v| v.entries()))
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Code>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of a member `v` in the echelon basis.
    pub fn coordinates(&self, v: &[Code]) -> Vec<Code> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    /// The member with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[Code]) -> Vec<Code> {
        let f = &self.field;
        let mut v = vec![0 as Code; self.n];
        for (&c, row) in coords.iter().zip(&self.rows) {
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    pub fn is_whole(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Canonical representative of the coset `v + U`: `v` with every pivot coordinate cleared.
    pub fn reduce(&self, v: &[Code]) -> Vec<Code> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &r) in w.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nc, r));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Code]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn contains_vector(&self, v: &Vector) -> bool {
        self.contains(v.entries())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Code]) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(w[p]).expect("nonzero pivot");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &r) in row.iter_mut().zip(&w) {
                    if r != 0 {
                        *x = f.add(*x, f.mul(nc, r));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn image(&self, g: &Matrix) -> Subspace {
        let mut out = vec![0; self.n];
        let mut s = Subspace::zero(&self.field, self.n);
        for r in &self.rows {
            g.apply_codes(r, &mut out);
            s.insert(&out);
        }
        s
    }

    pub fn is_invariant(&self, g: &Matrix) -> bool {
        let mut out = vec![0; self.n];
        self.rows.iter().all(|r| {
            g.apply_codes(r, &mut out);
            self.contains(&out)
        })
    }

    /// All `q^dim` elements.
    pub fn elements(&self) -> Vec<Vec<Code>> {
        let f = &self.field;
        let q = f.q();
        let d = self.rows.len();
        let total = (q as usize).pow(d as u32);
        let mut out = Vec::with_capacity(total);
        let mut coeffs = vec![0 as Code; d];
        for _ in 0..total {
            let mut v = vec![0 as Code; self.n];
            for (&c, row) in coeffs.iter().zip(&self.rows) {
                if c != 0 {
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(c, r));
                    }
                }
            }
            out.push(v);
            for c in coeffs.iter_mut() {
                *c += 1;
                if (*c as u32) < q {
                    break;
                }
                *c = 0;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn canonical_form_is_order_independent() {
        let f = make_field(5, 1).unwrap();
        let a = Subspace::span(&f, 3, [&[1u16, 2, 0][..], &[0, 1, 4][..]]);
        let b = Subspace::span(&f, 3, [&[1u16, 3, 4][..], &[2, 4, 0][..]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[3, 2, 4]));
        assert!(!a.contains(&[0, 0, 1]));
    }

    #[test]
    fn coset_representatives_agree() {
        let f = make_field(3, 1).unwrap();
        let u = Subspace::span(&f, 3, [&[1u16, 1, 0][..]]);
        assert_eq!(u.reduce(&[2, 0, 1]), u.reduce(&[0, 1, 1]));
        assert_ne!(u.reduce(&[2, 0, 1]), u.reduce(&[0, 0, 1]));
        assert_eq!(u.elements().len(), 3);
    }
}

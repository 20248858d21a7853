use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Code, FieldSpec};

/// A vector over GF(q), stored as element codes.
#[derive(Clone)]
pub struct Vector {
    field: Arc<FieldSpec>,
    entries: Vec<Code>,
}

impl Vector {
    pub fn new(field: &Arc<FieldSpec>, entries: Vec<Code>) -> Result<Self> {
        if entries.iter().any(|&c| c as u32 >= field.q()) {
            return Err(Error::format("vector", "entry code out of range"));
        }
        Ok(Vector {
            field: field.clone(),
            entries,
        })
    }

    pub(crate) fn from_codes(field: &Arc<FieldSpec>, entries: Vec<Code>) -> Self {
        Vector {
            field: field.clone(),
            entries,
        }
    }

    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> Self {
        Vector::from_codes(field, vec![0; n])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(field: &Arc<FieldSpec>, n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Vector::from_codes(field, v)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Code] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let f = &self.field;
        Vector::from_codes(
            f,
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect(),
        )
    }

    pub fn scale(&self, c: Code) -> Vector {
        let f = &self.field;
        Vector::from_codes(f, self.entries.iter().map(|&a| f.mul(c, a)).collect())
    }

    /// Kronecker product `self (x) other`, index `i * other.len() + j`.
    pub fn kron(&self, other: &Vector) -> Vector {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &a in &self.entries {
            for &b in &other.entries {
                out.push(f.mul(a, b));
            }
        }
        Vector::from_codes(f, out)
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        Vector::from_codes(&self.field, e)
    }
}

impl PartialEq for Vector {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.entries == other.entries
    }
}

impl Eq for Vector {}

impl Hash for Vector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// A dense row-major matrix over GF(q).
#[derive(Clone)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<Code>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && *self.field == *other.field
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Code]> = self.data.chunks(self.cols.max(1)).collect();
        write!(f, "{:?}", rows)
    }
}

impl Matrix {
    pub fn new(field: &Arc<FieldSpec>, rows: usize, cols: usize, data: Vec<Code>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|&c| c as u32 >= field.q()) {
            return Err(Error::format("matrix", "entry code out of range"));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Arc<FieldSpec>, rows: &[Vec<Code>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dims("ragged rows"));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub(crate) fn from_raw(field: &Arc<FieldSpec>, rows: usize, cols: usize, data: Vec<Code>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Self {
        Matrix::scalar(field, n, 1)
    }

    pub fn scalar(field: &Arc<FieldSpec>, n: usize, c: Code) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = c;
        }
        Matrix::from_raw(field, n, n, data)
    }

    pub fn diagonal(field: &Arc<FieldSpec>, diag: &[Code]) -> Self {
        let n = diag.len();
        let mut data = vec![0; n * n];
        for (i, &c) in diag.iter().enumerate() {
            data[i * n + i] = c;
        }
        Matrix::from_raw(field, n, n, data)
    }

    /// Permutation matrix sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(field: &Arc<FieldSpec>, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut data = vec![0; n * n];
        for (i, &j) in perm.iter().enumerate() {
            data[j * n + i] = 1;
        }
        Matrix::from_raw(field, n, n, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Arc<FieldSpec>, cols: &[Vec<Code>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut data = vec![0; r * c];
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                data[i * c + j] = x;
            }
        }
        Matrix::from_raw(field, r, c, data)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Code] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Code {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Code) {
        self.data[i * self.cols + j] = c;
    }

    pub fn row(&self, i: usize) -> &[Code] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Code> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_with(1)
    }

    pub fn is_scalar(&self) -> bool {
        self.is_square() && self.rows > 0 && self.data[0] != 0 && self.is_scalar_with(self.data[0])
    }

    fn is_scalar_with(&self, c: Code) -> bool {
        let n = self.cols;
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(idx, &x)| if idx / n == idx % n { x == c } else { x == 0 })
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let (r, m, c) = (self.rows, self.cols, other.cols);
        let mut data = vec![0 as Code; r * c];
        for i in 0..r {
            let row = &self.data[i * m..(i + 1) * m];
            let out = &mut data[i * c..(i + 1) * c];
            for (l, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let orow = &other.data[l * c..(l + 1) * c];
                for (o, &b) in out.iter_mut().zip(orow) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Matrix::from_raw(f, r, c, data)
    }

    /// `self * v` for a column vector given by its codes.
    #[inline]
    pub(crate) fn apply_codes(&self, v: &[Code], out: &mut [Code]) {
        let f = &self.field;
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc = 0;
            for (&a, &b) in row.iter().zip(v) {
                if a != 0 && b != 0 {
                    acc = f.add(acc, f.mul(a, b));
                }
            }
            *o = acc;
        }
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if **v.field() != *self.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: v.field().q(),
            });
        }
        if v.len() != self.cols {
            return Err(Error::dims(format!("{}x{} applied to length {}", self.rows, self.cols, v.len())));
        }
        let mut out = vec![0; self.rows];
        self.apply_codes(v.entries(), &mut out);
        Ok(Vector::from_codes(&self.field, out))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix::from_raw(&self.field, self.cols, self.rows, data)
    }

    pub fn scale(&self, c: Code) -> Matrix {
        let f = &self.field;
        Matrix::from_raw(f, self.rows, self.cols, self.data.iter().map(|&a| f.mul(c, a)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dims("matrix sum"));
        }
        let f = &self.field;
        Ok(Matrix::from_raw(
            f,
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        ))
    }

    /// Gaussian elimination to (det, inverse). Inverse is `None` when singular.
    fn eliminate(&self) -> (Code, Option<Matrix>) {
        let f = &self.field;
        let n = self.rows;
        let w = 2 * n;
        let mut a = vec![0 as Code; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(self.row(i));
            a[i * w + n + i] = 1;
        }
        let mut det: Code = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * w + col] != 0) else {
                return (0, None);
            };
            if piv != col {
                for j in 0..w {
                    a.swap(piv * w + j, col * w + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * w + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero pivot");
            for j in 0..w {
                a[col * w + j] = f.mul(a[col * w + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * w + col];
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in 0..w {
                    let x = a[col * w + j];
                    if x != 0 {
                        a[r * w + j] = f.add(a[r * w + j], f.mul(nf, x));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(n * n);
        for i in 0..n {
            inv.extend_from_slice(&a[i * w + n..(i + 1) * w]);
        }
        (det, Some(Matrix::from_raw(f, n, n, inv)))
    }

    pub fn det(&self) -> Result<Code> {
        if !self.is_square() {
            return Err(Error::dims("determinant of a non-square matrix"));
        }
        Ok(self.eliminate().0)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dims("inverse of a non-square matrix"));
        }
        self.eliminate().1.ok_or(Error::NotInvertible)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.eliminate().1.is_some()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self) -> u64 {
        let id = Matrix::identity(&self.field, self.rows);
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = x.mul_unchecked(self);
            k += 1;
        }
        k
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        let ai = self.inverse()?;
        let bi = other.inverse()?;
        Ok(ai.mul_unchecked(&bi).mul_unchecked(self).mul_unchecked(other))
    }

    /// `self * g * self^-1`.
    pub fn conjugate(&self, g: &Matrix) -> Result<Matrix> {
        Ok(self.mul(g)?.mul_unchecked(&self.inverse()?))
    }

    /// Kronecker product; `(A (x) B)(u (x) v) = Au (x) Bv`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = vec![0; r * c];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        Ok(Matrix::from_raw(f, r, c, data))
    }

    /// Block-diagonal `A (+) B`.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if !self.is_square() || !other.is_square() {
            return Err(Error::dims("direct sum of non-square matrices"));
        }
        let n = self.rows + other.rows;
        let mut data = vec![0; n * n];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                data[(self.rows + i) * n + self.cols + j] = other.get(i, j);
            }
        }
        Ok(Matrix::from_raw(&self.field, n, n, data))
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(blocks: &[Matrix]) -> Result<Matrix> {
        let mut it = blocks.iter();
        let first = it.next().ok_or_else(|| Error::dims("no blocks"))?.clone();
        it.try_fold(first, |acc, b| acc.direct_sum(b))
    }
}

/// Operations exposed through [`mat_ops`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Inv,
    Det,
    ApplyToVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatOpOutput {
    Matrix(Matrix),
    Scalar(Code),
    Vector(Vector),
}

/// Dispatcher over the basic matrix operations. `rhs` is the second matrix for `Mul` and the
/// vector for `ApplyToVector`.
pub fn mat_ops(a: &Matrix, rhs: Option<&Matrix>, v: Option<&Vector>, op: MatOp) -> Result<MatOpOutput> {
    match op {
        MatOp::Mul => {
            let b = rhs.ok_or_else(|| Error::dims("missing right operand"))?;
            a.mul(b).map(MatOpOutput::Matrix)
        }
        MatOp::Inv => a.inverse().map(MatOpOutput::Matrix),
        MatOp::Det => a.det().map(MatOpOutput::Scalar),
        MatOp::ApplyToVector => {
            let v = v.ok_or_else(|| Error::dims("missing vector"))?;
            a.apply(v).map(MatOpOutput::Vector)
        }
    }
}

/// `A (x) B` for square inputs.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.kron(b)
}

pub fn direct_sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.direct_sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn m(q: u32, rows: &[&[Code]]) -> Matrix {
        let f = crate::gf::field_of_order(q).unwrap();
        Matrix::from_rows(&f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_applies_trivially() {
        let f = make_field(5, 1).unwrap();
        let v = Vector::new(&f, vec![3, 4]).unwrap();
        assert_eq!(Matrix::identity(&f, 2).apply(&v).unwrap(), v);
    }

    #[test]
    fn inverse_gf3() {
        let a = m(3, &[&[1, 1], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(3, &[&[1, 2], &[0, 1]]));
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn det_swap_gf5() {
        assert_eq!(m(5, &[&[0, 1], &[1, 0]]).det().unwrap(), 4);
    }

    #[test]
    fn singular_and_mismatch() {
        assert_eq!(m(3, &[&[1, 2], &[2, 1]]).inverse(), Err(Error::NotInvertible));
        let a = m(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        let b = m(5, &[&[1]]);
        assert!(matches!(m(3, &[&[1]]).mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn kron_with_identities() {
        let f = make_field(5, 1).unwrap();
        let a = m(5, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.kron(&Matrix::identity(&f, 1)).unwrap(), a);
        let b = m(5, &[&[2, 1], &[0, 3]]);
        let i2b = Matrix::identity(&f, 2).kron(&b).unwrap();
        assert_eq!(i2b, b.direct_sum(&b).unwrap());
    }

    #[test]
    fn direct_sum_of_identities() {
        let f = make_field(7, 1).unwrap();
        let s = Matrix::identity(&f, 2).direct_sum(&Matrix::identity(&f, 3)).unwrap();
        assert_eq!(s, Matrix::identity(&f, 5));
        let a = m(7, &[&[2, 1], &[1, 1]]);
        let b = m(7, &[&[3]]);
        let u = Vector::new(&f, vec![1, 5]).unwrap();
        let img = a.direct_sum(&b).unwrap().apply(&u.concat(&Vector::zero(&f, 1))).unwrap();
        assert_eq!(img, a.apply(&u).unwrap().concat(&Vector::zero(&f, 1)));
    }

    #[test]
    fn mat_ops_dispatch() {
        let a = m(3, &[&[1, 1], &[0, 1]]);
        assert_eq!(mat_ops(&a, None, None, MatOp::Det).unwrap(), MatOpOutput::Scalar(1));
        let singular = m(3, &[&[0, 0], &[0, 0]]);
        assert_eq!(mat_ops(&singular, None, None, MatOp::Inv), Err(Error::NotInvertible));
    }

    #[test]
    fn permutation_matrix_moves_units() {
        let f = make_field(3, 1).unwrap();
        let p = Matrix::permutation(&f, &[1, 2, 0]);
        assert_eq!(p.apply(&Vector::unit(&f, 3, 0)).unwrap(), Vector::unit(&f, 3, 1));
        assert_eq!(p.order(), 3);
    }
}

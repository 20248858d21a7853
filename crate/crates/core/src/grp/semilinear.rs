use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Code, FieldExtension};
use crate::grp::action::FnAction;
use crate::grp::MatrixGroup;
use crate::matlin::Matrix;

/// `v -> A * v^sigma` on `T^l`, with `sigma: t -> t^(q^auto)` and `q` the order of the base
/// field. Products compose as maps: `(A, s)(B, t) = (A * s(B), s t)`.
#[derive(Clone)]
pub struct SemilinearElement {
    ext: Arc<FieldExtension>,
    matrix: Matrix,
    auto: u32,
}

impl fmt::Debug for SemilinearElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, frob^{})", self.matrix, self.auto)
    }
}

impl PartialEq for SemilinearElement {
    fn eq(&self, other: &Self) -> bool {
        self.auto == other.auto && self.matrix == other.matrix
    }
}

impl Eq for SemilinearElement {}

/// Entrywise relative Frobenius.
fn twist(ext: &FieldExtension, m: &Matrix, e: u32) -> Matrix {
    let data = m.data().iter().map(|&t| ext.relative_frobenius(t, e)).collect();
    Matrix::from_raw(ext.top(), m.rows(), m.cols(), data)
}

impl SemilinearElement {
    pub fn new(ext: &Arc<FieldExtension>, matrix: Matrix, auto: u32) -> Result<Self> {
        if **matrix.field() != **ext.top() {
            return Err(Error::FieldMismatch {
                left: matrix.field().q(),
                right: ext.top().q(),
            });
        }
        if auto >= ext.degree() {
            return Err(Error::BadPower {
                power: auto,
                degree: ext.degree(),
            });
        }
        if !matrix.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(SemilinearElement {
            ext: ext.clone(),
            matrix,
            auto,
        })
    }

    pub fn identity(ext: &Arc<FieldExtension>, l: usize) -> Self {
        SemilinearElement {
            ext: ext.clone(),
            matrix: Matrix::identity(ext.top(), l),
            auto: 0,
        }
    }

    /// Multiplication by the scalar `t`.
    pub fn scalar(ext: &Arc<FieldExtension>, l: usize, t: Code) -> Self {
        SemilinearElement {
            ext: ext.clone(),
            matrix: Matrix::scalar(ext.top(), l, t),
            auto: 0,
        }
    }

    /// The field automorphism `v -> v^(q^e)` applied coordinatewise.
    pub fn frobenius(ext: &Arc<FieldExtension>, l: usize, e: u32) -> Self {
        SemilinearElement {
            ext: ext.clone(),
            matrix: Matrix::identity(ext.top(), l),
            auto: e % ext.degree(),
        }
    }

    pub fn extension(&self) -> &Arc<FieldExtension> {
        &self.ext
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn auto(&self) -> u32 {
        self.auto
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_linear(&self) -> bool {
        self.auto == 0
    }

    pub fn compose(&self, other: &SemilinearElement) -> SemilinearElement {
        let b = twist(&self.ext, &other.matrix, self.auto);
        SemilinearElement {
            ext: self.ext.clone(),
            matrix: self.matrix.mul_unchecked(&b),
            auto: (self.auto + other.auto) % self.ext.degree(),
        }
    }

    pub fn inverse(&self) -> SemilinearElement {
        let f = self.ext.degree();
        let back = (f - self.auto) % f;
        let inv = self.matrix.inverse().expect("invertible by construction");
        SemilinearElement {
            ext: self.ext.clone(),
            matrix: twist(&self.ext, &inv, back),
            auto: back,
        }
    }

    pub fn apply(&self, v: &[Code]) -> Vec<Code> {
        let w: Vec<Code> = v.iter().map(|&t| self.ext.relative_frobenius(t, self.auto)).collect();
        let mut out = vec![0; w.len()];
        self.matrix.apply_codes(&w, &mut out);
        out
    }

    /// The base-field-linear map on `F^(l f)`. Coordinate `i f + j` of a blown-down vector is
    /// the `j`-th power-basis coordinate of entry `i`.
    pub fn blowdown(&self) -> Matrix {
        let ext = &self.ext;
        let f = ext.degree() as usize;
        let l = self.dim();
        let mut cols = Vec::with_capacity(l * f);
        for i in 0..l {
            for &b in ext.basis() {
                let mut v = vec![0; l];
                v[i] = b;
                cols.push(blow_vector(ext, &self.apply(&v)));
            }
        }
        Matrix::from_columns(ext.base(), &cols)
    }
}

/// `T^l -> F^(l f)`.
pub fn blow_vector(ext: &FieldExtension, v: &[Code]) -> Vec<Code> {
    v.iter().flat_map(|&t| ext.coordinates(t).to_vec()).collect()
}

/// `F^(l f) -> T^l`.
pub fn shrink_vector(ext: &FieldExtension, v: &[Code]) -> Vec<Code> {
    v.chunks(ext.degree() as usize).map(|c| ext.from_coordinates(c)).collect()
}

/// The exponent `e` with `m (t v) = t^(q^e) m(v)`, if `m` is semilinear in that sense.
pub fn galois_power(ext: &Arc<FieldExtension>, l: usize, m: &Matrix) -> Option<u32> {
    let beta = ext.top().generator();
    let mb = SemilinearElement::scalar(ext, l, beta).blowdown();
    let lhs = m.mul_unchecked(&mb);
    (0..ext.degree()).find(|&e| {
        let image = SemilinearElement::scalar(ext, l, ext.relative_frobenius(beta, e)).blowdown();
        image.mul_unchecked(m) == lhs
    })
}

/// Recovers `(A, sigma)` from its blow-down.
pub fn blow_up(ext: &Arc<FieldExtension>, l: usize, m: &Matrix) -> Result<SemilinearElement> {
    let f = ext.degree() as usize;
    if m.rows() != l * f || m.cols() != l * f || **m.field() != **ext.base() {
        return Err(Error::dims("matrix is not a blow-down for this extension"));
    }
    let e = galois_power(ext, l, m).ok_or_else(|| Error::Precondition("matrix is not semilinear".into()))?;
    let cols: Vec<Vec<Code>> = (0..l).map(|i| shrink_vector(ext, &m.column(i * f))).collect();
    let a = Matrix::from_columns(ext.top(), &cols);
    let s = SemilinearElement::new(ext, a, e)?;
    if s.blowdown() != *m {
        return Err(Error::Precondition("matrix is not semilinear".into()));
    }
    Ok(s)
}

/// A group of semilinear maps of `T^l`, with `T` an extension of degree `f` of `F`.
#[derive(Clone, Debug)]
pub struct SemilinearGroup {
    ext: Arc<FieldExtension>,
    l: usize,
    gens: Vec<SemilinearElement>,
}

impl SemilinearGroup {
    pub fn new(ext: &Arc<FieldExtension>, l: usize, gens: Vec<SemilinearElement>) -> Result<Self> {
        if gens.iter().any(|g| g.dim() != l) {
            return Err(Error::dims("semilinear generator of the wrong dimension"));
        }
        Ok(SemilinearGroup {
            ext: ext.clone(),
            l,
            gens,
        })
    }

    pub fn extension(&self) -> &Arc<FieldExtension> {
        &self.ext
    }

    pub fn dim(&self) -> usize {
        self.l
    }

    pub fn degree(&self) -> u32 {
        self.ext.degree()
    }

    pub fn generators(&self) -> &[SemilinearElement] {
        &self.gens
    }

    pub fn blowdown(&self) -> Result<MatrixGroup> {
        let n = self.l * self.ext.degree() as usize;
        MatrixGroup::new(self.ext.base(), n, self.gens.iter().map(SemilinearElement::blowdown).collect())
    }

    /// `H = G ∩ GL(l, T)`, blown down: the kernel of the Galois part.
    pub fn linear_part(&self) -> Result<MatrixGroup> {
        let g = self.blowdown()?;
        let f = self.ext.degree();
        let (ext, l) = (self.ext.clone(), self.l);
        let action = FnAction::new(move |m: &Matrix, e: &u32| {
            (e + galois_power(&ext, l, m).expect("semilinear")) % f
        });
        g.stabilizer_in(&action, 0u32)
    }

    /// `H` as a group of `l x l` matrices over `T`.
    pub fn linear_part_over_top(&self) -> Result<MatrixGroup> {
        let h = self.linear_part()?;
        let gens = h
            .generators()
            .iter()
            .map(|m| blow_up(&self.ext, self.l, m).map(|s| s.matrix))
            .collect::<Result<Vec<_>>>()?;
        MatrixGroup::new(self.ext.top(), self.l, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn singer_and_frobenius_blow_down() {
        let f3 = make_field(3, 1).unwrap();
        let ext = Arc::new(FieldExtension::new(&f3, 2).unwrap());
        let beta = ext.top().generator();
        let singer = SemilinearElement::scalar(&ext, 1, beta);
        let g = SemilinearGroup::new(&ext, 1, vec![singer.clone()]).unwrap();
        assert_eq!(g.blowdown().unwrap().order().unwrap(), 8);
        let frob = SemilinearElement::frobenius(&ext, 1, 1);
        let gamma = SemilinearGroup::new(&ext, 1, vec![singer, frob]).unwrap();
        assert_eq!(gamma.blowdown().unwrap().order().unwrap(), 16);
        assert_eq!(gamma.linear_part().unwrap().order().unwrap(), 8);
        assert!(SemilinearElement::identity(&ext, 2).blowdown().is_identity());
    }

    #[test]
    fn composition_matches_blow_down() {
        let f2 = make_field(2, 1).unwrap();
        let ext = Arc::new(FieldExtension::new(&f2, 3).unwrap());
        let t = ext.top().clone();
        let a = SemilinearElement::new(&ext, Matrix::from_rows(&t, &[vec![2, 1], vec![0, 5]]).unwrap(), 1).unwrap();
        let b = SemilinearElement::new(&ext, Matrix::from_rows(&t, &[vec![3, 0], vec![6, 1]]).unwrap(), 2).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.blowdown(), a.blowdown().mul(&b.blowdown()).unwrap());
        assert!(a.compose(&a.inverse()).blowdown().is_identity());
        assert_eq!(blow_up(&ext, 2, &ab.blowdown()).unwrap(), ab);
        assert_eq!(galois_power(&ext, 2, &b.blowdown()), Some(2));
    }
}

use serde::{Deserialize, Serialize};

use crate::basesize::{b_star_exact, certify, BaseCertificate, BaseKind};
use crate::construct::special::{special_basis_report, BasisFamily};
use crate::error::{Error, Result};
use crate::gf::Code;
use crate::grp::MatrixGroup;
use crate::matlin::{Matrix, Vector};

/// `G1 wr S2` acting on `V1 (x) V1`, with scalars: generated by `g (x) 1`, `1 (x) g`, the
/// factor swap and `w I`.
pub fn central_tensor_wreath(g1: &MatrixGroup) -> Result<MatrixGroup> {
    let (f, m) = (g1.field(), g1.dim());
    let id = Matrix::identity(f, m);
    let mut gens = Vec::new();
    for g in g1.generators() {
        gens.push(g.kron(&id)?);
        gens.push(id.kron(g)?);
    }
    let swap: Vec<usize> = (0..m * m).map(|k| (k % m) * m + k / m).collect();
    gens.push(Matrix::permutation(f, &swap));
    MatrixGroup::new(f, m * m, gens)?.with_scalars()
}

/// `G1 (x) G2` on `V1 (x) V2`, with scalars.
pub fn tensor_product_group(g1: &MatrixGroup, g2: &MatrixGroup) -> Result<MatrixGroup> {
    if **g1.field() != **g2.field() {
        return Err(Error::FieldMismatch {
            left: g1.field().q(),
            right: g2.field().q(),
        });
    }
    let f = g1.field();
    let (i1, i2) = (Matrix::identity(f, g1.dim()), Matrix::identity(f, g2.dim()));
    let mut gens: Vec<Matrix> = g1.generators().iter().map(|g| g.kron(&i2)).collect::<Result<_>>()?;
    for h in g2.generators() {
        gens.push(i1.kron(h)?);
    }
    MatrixGroup::new(f, g1.dim() * g2.dim(), gens)?.with_scalars()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorCase {
    /// `q >= 5`: `x (x) x, y (x) (y + a x)`.
    Pair,
    /// `q = 3`: `x (x) x, y (x) y, x (x) y`.
    Triple,
}

#[derive(Clone, Debug)]
pub struct TensorBase {
    pub case: TensorCase,
    pub basis: [Vector; 2],
    pub alpha: Option<Code>,
    pub certificate: BaseCertificate,
}

/// Base of the central tensor wreath of a group `G1 <= GL(2, q)`. For the pair case `alpha`
/// defaults to the least element that works.
pub fn tensor_base(g1: &MatrixGroup, case: TensorCase, alpha: Option<Code>) -> Result<TensorBase> {
    let f = g1.field();
    let q = f.q();
    if g1.dim() != 2 {
        return Err(Error::Precondition("tensor bases need a two-dimensional factor".into()));
    }
    let w = central_tensor_wreath(g1)?;
    match case {
        TensorCase::Triple => {
            if q != 3 {
                return Err(Error::Precondition("the triple case needs q = 3".into()));
            }
            let (x, y) = (Vector::unit(f, 2, 0), Vector::unit(f, 2, 1));
            let tuple = vec![x.kron(&x), y.kron(&y), x.kron(&y)];
            let certificate = certify(&w, tuple, BaseKind::Plain)?;
            if !certificate.verified {
                return Err(Error::RedFlag("tensor triple is not a base".into()));
            }
            Ok(TensorBase {
                case,
                basis: [x, y],
                alpha: None,
                certificate,
            })
        }
        TensorCase::Pair => {
            if q < 5 {
                return Err(Error::Precondition("the pair case needs q >= 5".into()));
            }
            if matches!(alpha, Some(0 | 1)) {
                return Err(Error::Precondition("alpha must avoid 0 and 1".into()));
            }
            let report = special_basis_report(g1, BasisFamily::Plane)?;
            let [x, y]: [Vector; 2] = report
                .witness
                .try_into()
                .map_err(|_| Error::Hypothesis("factor group has no special basis".into()))?;
            let candidates: Vec<Code> = match alpha {
                Some(a) => vec![a],
                None => (2..q as Code).collect(),
            };
            for a in candidates {
                let tuple = vec![x.kron(&x), y.kron(&y.add(&x.scale(a)))];
                let certificate = certify(&w, tuple, BaseKind::Plain)?;
                if certificate.verified {
                    return Ok(TensorBase {
                        case,
                        basis: [x, y],
                        alpha: Some(a),
                        certificate,
                    });
                }
            }
            Err(Error::RedFlag("no alpha gives a base of the tensor wreath".into()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorBound {
    pub left: usize,
    pub right: usize,
    pub product: usize,
    pub holds: bool,
}

/// Compares `b*(G1 (x) G2)` with `max(b*(G1), b*(G2))`.
pub fn tensor_product_bound(g1: &MatrixGroup, g2: &MatrixGroup) -> Result<TensorBound> {
    let left = b_star_exact(&g1.with_scalars()?)?.0;
    let right = b_star_exact(&g2.with_scalars()?)?.0;
    let product = b_star_exact(&tensor_product_group(g1, g2)?)?.0;
    Ok(TensorBound {
        left,
        right,
        product,
        holds: product <= left.max(right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn diagonal_pair_over_gf5() {
        let f = make_field(5, 1).unwrap();
        let g1 = MatrixGroup::new(&f, 2, vec![Matrix::diagonal(&f, &[2, 1]), Matrix::diagonal(&f, &[1, 2])]).unwrap();
        let r = tensor_base(&g1, TensorCase::Pair, None).unwrap();
        assert_eq!(r.alpha, Some(2));
        let e1 = Vector::unit(&f, 2, 0);
        let e2 = Vector::unit(&f, 2, 1);
        assert_eq!(r.certificate.vectors, vec![e1.kron(&e1), e2.kron(&e2.add(&e1.scale(2)))]);
        assert!(matches!(tensor_base(&g1, TensorCase::Pair, Some(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn gl23_triple() {
        let f = make_field(3, 1).unwrap();
        let a = Matrix::from_rows(&f, &[vec![2, 0], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![2, 1], vec![2, 0]]).unwrap();
        let g1 = MatrixGroup::new(&f, 2, vec![a, b]).unwrap();
        let w = central_tensor_wreath(&g1).unwrap();
        assert_eq!(w.order().unwrap(), 48 * 48 / 2 * 2);
        assert!(tensor_base(&g1, TensorCase::Triple, None).unwrap().certificate.verified);
    }
}

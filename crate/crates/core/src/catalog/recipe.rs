use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::construct::{central_tensor_wreath, tensor_product_group};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, Code, FieldExtension, FieldSpec};
use crate::grp::{MatrixGroup, SemilinearElement, SemilinearGroup};
use crate::matlin::{Matrix, SPACE_CAP};

/// How a catalog group is generated. Every recipe is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "kebab-case")]
pub enum Recipe {
    /// `GL(n, q)`.
    General { q: u32, n: usize },
    /// `SL(2, p)`.
    Special { q: u32 },
    Scalars { q: u32, n: usize },
    /// All invertible diagonal matrices.
    Diagonal { q: u32, n: usize },
    /// Multiplication by a primitive element of `GF(q^n)`, written over `GF(q)`.
    Singer { q: u32, n: usize },
    /// The Singer cycle together with the Frobenius, `GammaL(1, q^n)`.
    SingerNormalizer { q: u32, n: usize },
    /// `H wr S_k` on `k` coordinate blocks.
    MonomialWreath { base: Box<Recipe>, k: usize },
    /// `H wr S_2` on `V (x) V`, with scalars.
    TensorWreath { base: Box<Recipe> },
    /// `H1 (x) H2` with scalars.
    TensorProduct { left: Box<Recipe>, right: Box<Recipe> },
    /// Normalizer of the qutrit Pauli group in `GL(3, q)`, `q = 1 mod 3`.
    CliffordQutrit { q: u32 },
    /// A copy of `SL(2, 5)` inside `SL(2, q)`, optionally with scalars.
    BinaryIcosahedral { q: u32, scalars: bool },
    /// Diagonal (or monomial) matrices over `GF(q^f)` with the Frobenius, as maps of
    /// `GF(q^f)^l`.
    Semilinear { q: u32, f: u32, l: usize, monomial: bool },
}

/// A built group: the matrices over the base field, and the semilinear description when
/// there is one.
#[derive(Clone, Debug)]
pub struct Built {
    pub group: MatrixGroup,
    pub semilinear: Option<SemilinearGroup>,
}

fn linear(group: MatrixGroup) -> Built {
    Built { group, semilinear: None }
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn check_space(field: &FieldSpec, n: usize) -> Result<()> {
    let size = (field.q() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > SPACE_CAP as u64 {
        return Err(Error::CapExceeded(format!("|V| = {}^{n} exceeds {SPACE_CAP}", field.q())));
    }
    Ok(())
}

pub fn general_linear(f: &Arc<FieldSpec>, n: usize) -> Result<MatrixGroup> {
    let w = f.generator();
    if n == 1 {
        return MatrixGroup::new(f, 1, vec![Matrix::scalar(f, 1, w)]);
    }
    let mut d = vec![1; n];
    d[0] = w;
    let m1 = f.neg(1);
    let mut b = vec![0; n * n];
    b[n - 1] = 1;
    b[0] = m1;
    for i in 1..n {
        b[i * n + i - 1] = m1;
    }
    let mut gens = vec![Matrix::diagonal(f, &d), Matrix::new(f, n, n, b)?];
    if f.q() == 2 {
        let mut t = Matrix::identity(f, n).data().to_vec();
        t[1] = 1;
        gens[0] = Matrix::new(f, n, n, t)?;
    }
    MatrixGroup::new(f, n, gens)
}

pub fn special_linear_2(f: &Arc<FieldSpec>) -> Result<MatrixGroup> {
    if f.k() != 1 {
        return Err(Error::Precondition("SL(2, q) recipe is for prime q".into()));
    }
    let m1 = f.neg(1);
    let t = Matrix::from_rows(f, &[vec![1, 1], vec![0, 1]])?;
    let s = Matrix::from_rows(f, &[vec![0, m1], vec![1, 0]])?;
    MatrixGroup::new(f, 2, vec![t, s])
}

pub fn diagonal_group(f: &Arc<FieldSpec>, n: usize) -> Result<MatrixGroup> {
    let gens = (0..n)
        .map(|i| {
            let mut d = vec![1; n];
            d[i] = f.generator();
            Matrix::diagonal(f, &d)
        })
        .collect();
    MatrixGroup::new(f, n, gens)
}

fn singer(f: &Arc<FieldSpec>, n: usize, frobenius: bool) -> Result<MatrixGroup> {
    let ext = Arc::new(FieldExtension::new(f, n as u32)?);
    let mut gens = vec![SemilinearElement::scalar(&ext, 1, ext.top().generator())];
    if frobenius && n > 1 {
        gens.push(SemilinearElement::frobenius(&ext, 1, 1));
    }
    SemilinearGroup::new(&ext, 1, gens)?.blowdown()
}

pub fn monomial_wreath(h: &MatrixGroup, k: usize) -> Result<MatrixGroup> {
    let (f, m) = (h.field(), h.dim());
    let n = m * k;
    check_space(f, n)?;
    let id = Matrix::identity(f, m);
    let mut gens = Vec::new();
    for g in h.generators() {
        let mut blocks = vec![id.clone(); k];
        blocks[0] = g.clone();
        gens.push(Matrix::block_diagonal(&blocks)?);
    }
    let spread = |p: &[usize]| -> Vec<usize> { (0..n).map(|c| p[c / m] * m + c % m).collect() };
    if k > 1 {
        let mut swap: Vec<usize> = (0..k).collect();
        swap.swap(0, 1);
        gens.push(Matrix::permutation(f, &spread(&swap)));
    }
    if k > 2 {
        gens.push(Matrix::permutation(f, &spread(&cycle(k))));
    }
    MatrixGroup::new(f, n, gens)
}

pub fn clifford_qutrit(f: &Arc<FieldSpec>) -> Result<MatrixGroup> {
    let q = f.q();
    if q % 3 != 1 {
        return Err(Error::Precondition("qutrit Clifford group needs q = 1 mod 3".into()));
    }
    let w = f.exp(((q - 1) / 3) as u64);
    let w2 = f.mul(w, w);
    let x = Matrix::permutation(f, &cycle(3));
    let z = Matrix::diagonal(f, &[1, w, w2]);
    let s = Matrix::diagonal(f, &[1, 1, w]);
    let fourier: Vec<Code> = (0..3u64).flat_map(|i| (0..3u64).map(move |j| (i, j))).map(|(i, j)| f.pow(w, i * j)).collect();
    let gens = vec![x, z, s, Matrix::new(f, 3, 3, fourier)?];
    MatrixGroup::new(f, 3, gens)?.with_scalars()
}

/// First pair `a = [[0, -1], [1, 0]]`, `b` of trace 1 in index order, generating a group of
/// order 120 with `ab` of order 10.
pub fn binary_icosahedral(f: &Arc<FieldSpec>) -> Result<MatrixGroup> {
    let m1 = f.neg(1);
    let a = Matrix::from_rows(f, &[vec![0, m1], vec![1, 0]])?;
    for x in f.elements() {
        let w = f.sub(1, x);
        for y in f.elements().filter(|&y| y != 0) {
            let yi = f.inv(y).expect("nonzero");
            // x w - y z = 1
            let z = f.mul(f.sub(f.mul(x, w), 1), yi);
            let b = Matrix::from_rows(f, &[vec![x, y], vec![z, w]])?;
            if a.mul_unchecked(&b).order() != 10 {
                continue;
            }
            let g = MatrixGroup::new(f, 2, vec![a.clone(), b])?;
            if g.order()? == 120 {
                return Ok(g);
            }
        }
    }
    Err(Error::Precondition(format!("no copy of SL(2, 5) found in SL(2, {})", f.q())))
}

fn semilinear(q: u32, f_deg: u32, l: usize, monomial: bool) -> Result<Built> {
    let base = field_of_order(q)?;
    let ext = Arc::new(FieldExtension::new(&base, f_deg)?);
    check_space(&base, l * f_deg as usize)?;
    let top = ext.top().clone();
    let mut gens = Vec::new();
    for i in 0..l {
        let mut d = vec![1; l];
        d[i] = top.generator();
        gens.push(SemilinearElement::new(&ext, Matrix::diagonal(&top, &d), 0)?);
    }
    if monomial && l > 1 {
        let mut swap: Vec<usize> = (0..l).collect();
        swap.swap(0, 1);
        gens.push(SemilinearElement::new(&ext, Matrix::permutation(&top, &swap), 0)?);
        if l > 2 {
            gens.push(SemilinearElement::new(&ext, Matrix::permutation(&top, &cycle(l)), 0)?);
        }
    }
    gens.push(SemilinearElement::frobenius(&ext, l, 1));
    let s = SemilinearGroup::new(&ext, l, gens)?;
    Ok(Built {
        group: s.blowdown()?,
        semilinear: Some(s),
    })
}

impl Recipe {
    pub fn build(&self) -> Result<Built> {
        let field = |q: u32, n: usize| -> Result<Arc<FieldSpec>> {
            let f = field_of_order(q)?;
            check_space(&f, n)?;
            Ok(f)
        };
        Ok(match self {
            Recipe::General { q, n } => linear(general_linear(&field(*q, *n)?, *n)?),
            Recipe::Special { q } => linear(special_linear_2(&field(*q, 2)?)?),
            Recipe::Scalars { q, n } => linear(MatrixGroup::scalars(&field(*q, *n)?, *n)),
            Recipe::Diagonal { q, n } => linear(diagonal_group(&field(*q, *n)?, *n)?),
            Recipe::Singer { q, n } => linear(singer(&field(*q, *n)?, *n, false)?),
            Recipe::SingerNormalizer { q, n } => linear(singer(&field(*q, *n)?, *n, true)?),
            Recipe::MonomialWreath { base, k } => linear(monomial_wreath(&base.build()?.group, *k)?),
            Recipe::TensorWreath { base } => {
                let h = base.build()?.group;
                check_space(h.field(), h.dim() * h.dim())?;
                linear(central_tensor_wreath(&h)?)
            }
            Recipe::TensorProduct { left, right } => {
                let (a, b) = (left.build()?.group, right.build()?.group);
                check_space(a.field(), a.dim() * b.dim())?;
                linear(tensor_product_group(&a, &b)?)
            }
            Recipe::CliffordQutrit { q } => linear(clifford_qutrit(&field(*q, 3)?)?),
            Recipe::BinaryIcosahedral { q, scalars } => {
                let g = binary_icosahedral(&field(*q, 2)?)?;
                linear(if *scalars { g.with_scalars()? } else { g })
            }
            Recipe::Semilinear { q, f, l, monomial } => semilinear(*q, *f, *l, *monomial)?,
        })
    }

    /// Short human-readable name.
    pub fn describe(&self) -> String {
        match self {
            Recipe::General { q, n } => format!("GL({n},{q})"),
            Recipe::Special { q } => format!("SL(2,{q})"),
            Recipe::Scalars { q, n } => format!("Z({n},{q})"),
            Recipe::Diagonal { q, n } => format!("D({n},{q})"),
            Recipe::Singer { q, n } => format!("Singer({n},{q})"),
            Recipe::SingerNormalizer { q, n } => format!("GammaL(1,{q}^{n})"),
            Recipe::MonomialWreath { base, k } => format!("{} wr S{k}", base.describe()),
            Recipe::TensorWreath { base } => format!("{} wr_c S2", base.describe()),
            Recipe::TensorProduct { left, right } => format!("{} (x) {}", left.describe(), right.describe()),
            Recipe::CliffordQutrit { q } => format!("Clifford3({q})"),
            Recipe::BinaryIcosahedral { q, scalars: true } => format!("SL(2,5)Z over GF({q})"),
            Recipe::BinaryIcosahedral { q, scalars: false } => format!("SL(2,5) over GF({q})"),
            Recipe::Semilinear { q, f, l, monomial } => {
                let kind = if *monomial { "monomial" } else { "diagonal" };
                format!("{kind} GammaL({l},{q}^{f})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(r: Recipe) -> u64 {
        r.build().unwrap().group.order().unwrap()
    }

    #[test]
    fn classical_orders() {
        assert_eq!(order(Recipe::General { q: 3, n: 2 }), 48);
        assert_eq!(order(Recipe::General { q: 2, n: 3 }), 168);
        assert_eq!(order(Recipe::General { q: 4, n: 2 }), 180);
        assert_eq!(order(Recipe::General { q: 5, n: 2 }), 480);
        assert_eq!(order(Recipe::Special { q: 3 }), 24);
        assert_eq!(order(Recipe::Scalars { q: 7, n: 2 }), 6);
        assert_eq!(order(Recipe::Diagonal { q: 9, n: 2 }), 64);
    }

    #[test]
    fn singer_and_wreath_orders() {
        assert_eq!(order(Recipe::SingerNormalizer { q: 3, n: 2 }), 16);
        assert_eq!(order(Recipe::SingerNormalizer { q: 4, n: 3 }), 189);
        assert_eq!(order(Recipe::Singer { q: 5, n: 2 }), 24);
        let d5 = Box::new(Recipe::Diagonal { q: 5, n: 2 });
        assert_eq!(order(Recipe::MonomialWreath { base: d5.clone(), k: 2 }), 512);
        let c2s3 = Box::new(Recipe::MonomialWreath {
            base: Box::new(Recipe::Scalars { q: 3, n: 1 }),
            k: 3,
        });
        assert_eq!(order(*c2s3.clone()), 48);
        assert_eq!(order(Recipe::MonomialWreath { base: c2s3, k: 2 }), 4608);
        assert_eq!(order(Recipe::TensorWreath { base: d5 }), 128);
    }

    #[test]
    fn exotic_orders() {
        assert_eq!(order(Recipe::CliffordQutrit { q: 4 }), 648);
        for q in [9, 11, 49] {
            let g = Recipe::BinaryIcosahedral { q, scalars: false }.build().unwrap().group;
            assert_eq!(g.order().unwrap(), 120);
            assert!(crate::grp::is_perfect(&g).unwrap());
        }
        let s = Recipe::Semilinear { q: 3, f: 2, l: 2, monomial: false }.build().unwrap();
        assert_eq!(s.group.order().unwrap(), 128);
        assert!(s.semilinear.is_some());
    }

    #[test]
    fn caps() {
        let e = Recipe::General { q: 3, n: 9 }.build().unwrap_err();
        assert!(matches!(e, Error::CapExceeded(_)));
    }
}

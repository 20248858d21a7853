use std::collections::BTreeSet;

use crate::basesize::{certify, verify_base, BaseCertificate, BaseKind};
use crate::construct::constants::semilinear_count_bound;
use crate::construct::special::{find_special_base, special_condition_holds, SpecialCase};
use crate::error::{Error, Result};
use crate::gf::{gcd, Code, FieldExtension};
use crate::grp::{blow_up, blow_vector, OnCosets, SemilinearGroup};
use crate::matlin::{Subspace, Vector};

#[derive(Clone, Debug)]
pub struct GammaSearch {
    pub u1: Vec<Code>,
    pub u2: Vec<Code>,
    pub case: SpecialCase,
    pub gamma: Code,
    /// Nonidentity elements fixing `u1` and the coset `u2 + T u1`.
    pub scanned: usize,
    /// `|union of K_g|`.
    pub excluded: usize,
    pub bound: u64,
    /// `(u1, u2 + gamma u1)`, blown down to the base field.
    pub certificate: BaseCertificate,
}

fn t_span(ext: &FieldExtension, l: usize, u: &[Code]) -> Subspace {
    let top = ext.top();
    let vs: Vec<Vec<Code>> = ext
        .basis()
        .iter()
        .map(|&b| blow_vector(ext, &u.iter().map(|&c| top.mul(b, c)).collect::<Vec<_>>()))
        .collect();
    Subspace::span(ext.base(), l * ext.degree() as usize, vs.iter().map(Vec::as_slice))
}

/// `u2 + gamma u1` is chosen so that no nonidentity element fixes both it and `u1`. For each
/// element `g` fixing `u1` and moving `u2` to `u2 + delta u1` the bad values are
/// `K_g = {a : a - a^sigma = delta}`, which is empty or a coset of the fixed field of `sigma`.
pub fn semilinear_gamma_search(g: &SemilinearGroup, u1: &[Code], u2: &[Code]) -> Result<GammaSearch> {
    let ext = g.extension();
    let (top, l, f) = (ext.top(), g.dim(), ext.degree());
    let q = ext.base().q() as u64;
    if top.q() < 8 || top.k() == 1 {
        return Err(Error::Precondition("the top field must be non-prime of order at least 8".into()));
    }
    if u1.len() != l || u2.len() != l {
        return Err(Error::dims("base vectors of the wrong length"));
    }
    let h = g.linear_part_over_top()?;
    let pair = [Vector::new(top, u1.to_vec())?, Vector::new(top, u2.to_vec())?];
    if !verify_base(&h, &pair, BaseKind::Plain)? {
        return Err(Error::Precondition("u1, u2 is not a base of the linear part".into()));
    }
    let case = [SpecialCase::LineInclusion, SpecialCase::Transvection]
        .into_iter()
        .find(|&c| special_condition_holds(&h, c, &pair).unwrap_or(false))
        .ok_or_else(|| Error::Precondition("special base condition not satisfied by u1, u2".into()))?;

    let big = g.blowdown()?;
    let line = t_span(ext, l, u1);
    let b1 = Vector::new(ext.base(), blow_vector(ext, u1))?;
    let coset = line.reduce(&blow_vector(ext, u2));
    let stab = big.stabilizer(&b1)?.stabilizer_in(&OnCosets(&line), coset)?;
    let pivot = u1.iter().position(|&c| c != 0).expect("base vectors are nonzero");
    let pivot_inv = top.inv(u1[pivot]).expect("nonzero");

    let mut excluded: BTreeSet<Code> = BTreeSet::new();
    let mut scanned = 0;
    for m in stab.elements()? {
        if m.is_identity() {
            continue;
        }
        scanned += 1;
        let s = blow_up(ext, l, &m)?;
        let image = s.apply(u2);
        let delta = top.mul(top.sub(image[pivot], u2[pivot]), pivot_inv);
        let e = s.auto();
        if e == 0 {
            if delta != 1 || !s.compose(&s).matrix().is_identity() {
                return Err(Error::RedFlag("linear element fixing u1 is not a transvection of u2".into()));
            }
            continue;
        }
        let k: Vec<Code> = top
            .elements()
            .filter(|&a| top.sub(a, ext.relative_frobenius(a, e)) == delta)
            .collect();
        let fixed = q.pow(gcd(e, f));
        if !k.is_empty() {
            let a0 = k[0];
            let coset_ok = k.len() as u64 == fixed
                && k.iter().all(|&a| {
                    let d = top.sub(a, a0);
                    ext.relative_frobenius(d, e) == d
                });
            if !coset_ok {
                return Err(Error::RedFlag("bad set is not a coset of the fixed subfield".into()));
            }
        }
        excluded.extend(k);
    }
    let bound = semilinear_count_bound(q, f);
    if excluded.len() as u64 > bound || bound >= top.q() as u64 {
        return Err(Error::RedFlag(format!(
            "{} excluded values against the count bound {bound}",
            excluded.len()
        )));
    }
    let gamma = top
        .elements()
        .find(|a| !excluded.contains(a))
        .ok_or_else(|| Error::RedFlag("every field element is excluded".into()))?;
    let shifted: Vec<Code> = u1.iter().zip(u2).map(|(&a, &b)| top.add(b, top.mul(gamma, a))).collect();
    let tuple = vec![b1, Vector::new(ext.base(), blow_vector(ext, &shifted))?];
    let certificate = certify(&big, tuple, BaseKind::Plain)?;
    if !certificate.verified {
        return Err(Error::RedFlag("shifted pair is not a base".into()));
    }
    Ok(GammaSearch {
        u1: u1.to_vec(),
        u2: u2.to_vec(),
        case,
        gamma,
        scanned,
        excluded: excluded.len(),
        bound,
        certificate,
    })
}

/// Picks `u1, u2` as a special base of the linear part and runs the search.
pub fn semilinear_base(g: &SemilinearGroup) -> Result<GammaSearch> {
    let h = g.linear_part_over_top()?;
    let special = find_special_base(&h)?
        .ok_or_else(|| Error::Hypothesis("linear part has no special base of length two".into()))?;
    if special.vectors.len() != 2 {
        return Err(Error::Precondition("the top field must have order at least 5".into()));
    }
    semilinear_gamma_search(g, special.vectors[0].entries(), special.vectors[1].entries())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf::make_field;
    use crate::grp::SemilinearElement;
    use crate::matlin::Matrix;

    #[test]
    fn diagonal_with_frobenius_over_gf9() {
        let f3 = make_field(3, 1).unwrap();
        let ext = Arc::new(FieldExtension::new(&f3, 2).unwrap());
        let t = ext.top().clone();
        let w = t.generator();
        let gens = vec![
            SemilinearElement::new(&ext, Matrix::diagonal(&t, &[w, 1]), 0).unwrap(),
            SemilinearElement::new(&ext, Matrix::diagonal(&t, &[1, w]), 0).unwrap(),
            SemilinearElement::frobenius(&ext, 2, 1),
        ];
        let g = SemilinearGroup::new(&ext, 2, gens).unwrap();
        assert_eq!(g.blowdown().unwrap().order().unwrap(), 128);
        let r = semilinear_base(&g).unwrap();
        assert!(r.certificate.verified);
        assert!(r.excluded as u64 <= r.bound && r.bound == 6);
        assert!(r.gamma < 9);
    }
}

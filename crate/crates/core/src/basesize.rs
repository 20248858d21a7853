//! Exact minimal base and strong base sizes by iterative deepening over orbit
//! representatives.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Code, FieldSpec};
use crate::grp::{MatrixGroup, OnLines};
use crate::matlin::{Matrix, Space, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    Plain,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCertificate {
    pub kind: BaseKind,
    pub vectors: Vec<Vector>,
    pub verified: bool,
    pub group: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    kind: BaseKind,
    vectors: Vec<Vec<Code>>,
    group: String,
    verified: bool,
}

impl BaseCertificate {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn named(mut self, group: impl Into<String>) -> Self {
        self.group = group.into();
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateRepr {
            kind: self.kind,
            vectors: self.vectors.iter().map(|v| v.entries().to_vec()).collect(),
            group: self.group.clone(),
            verified: self.verified,
        })
        .expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value, field: &Arc<FieldSpec>) -> Result<Self> {
        let r: CertificateRepr =
            serde_json::from_value(value.clone()).map_err(|e| Error::format("certificate", e.to_string()))?;
        let vectors = r
            .vectors
            .into_iter()
            .map(|v| Vector::new(field, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(BaseCertificate {
            kind: r.kind,
            vectors,
            verified: r.verified,
            group: r.group,
        })
    }
}

/// Short stable fingerprint of a generating set.
pub fn group_fingerprint(g: &MatrixGroup) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    };
    eat(g.field().p() as u64);
    eat(g.field().k() as u64);
    eat(g.dim() as u64);
    for m in g.generators() {
        for &c in m.data() {
            eat(c as u64);
        }
    }
    format!("fnv:{h:016x}")
}

fn check_vectors(g: &MatrixGroup, tuple: &[Vector]) -> Result<()> {
    for v in tuple {
        if v.len() != g.dim() {
            return Err(Error::dims("base vector of the wrong length"));
        }
        if **v.field() != **g.field() {
            return Err(Error::FieldMismatch {
                left: v.field().q(),
                right: g.field().q(),
            });
        }
    }
    Ok(())
}

/// The group fixing every line `<v>` of the tuple.
pub fn line_stabilizer_of_tuple(g: &MatrixGroup, tuple: &[Vector]) -> Result<MatrixGroup> {
    let mut h = g.clone();
    for v in tuple {
        if v.is_zero() {
            continue;
        }
        let line = Subspace::span_vectors(g.field(), g.dim(), std::slice::from_ref(v));
        h = h.line_stabilizer(&line)?;
        if h.is_scalar_group() {
            break;
        }
    }
    Ok(h)
}

/// Whether `tuple` is a base (`Plain`) or a strong base (`Strong`) of `g`.
pub fn verify_base(g: &MatrixGroup, tuple: &[Vector], kind: BaseKind) -> Result<bool> {
    check_vectors(g, tuple)?;
    match kind {
        BaseKind::Plain => {
            let mut h = g.clone();
            for v in tuple {
                if h.is_trivial() {
                    break;
                }
                h = h.stabilizer(v)?;
            }
            Ok(h.order()? == 1)
        }
        BaseKind::Strong => Ok(line_stabilizer_of_tuple(g, tuple)?.is_scalar_group()),
    }
}

/// Builds a certificate for `tuple` and verifies it.
pub fn certify(g: &MatrixGroup, tuple: Vec<Vector>, kind: BaseKind) -> Result<BaseCertificate> {
    let verified = verify_base(g, &tuple, kind)?;
    Ok(BaseCertificate {
        kind,
        vectors: tuple,
        verified,
        group: group_fingerprint(g),
    })
}

fn fits(order: u64, orbit: usize, depth: usize) -> bool {
    let mut cap: u128 = 1;
    for _ in 0..depth {
        cap = cap.saturating_mul(orbit as u128);
        if cap >= order as u128 {
            return true;
        }
    }
    cap >= order as u128
}

struct PlainSearch<'a> {
    space: &'a Space,
}

impl PlainSearch<'_> {
    fn dfs(&self, h: &MatrixGroup, depth: usize, prefix: &mut Vec<u32>) -> Result<bool> {
        let order = h.order()?;
        if order == 1 {
            return Ok(true);
        }
        if depth == 0 {
            return Ok(false);
        }
        let orbits = h.orbits();
        let longest = orbits.iter().map(Vec::len).max().unwrap_or(1);
        if !fits(order, longest, depth) {
            return Ok(false);
        }
        if depth == 1 {
            if let Some(o) = orbits.iter().find(|o| o.len() as u64 == order) {
                prefix.push(o[0]);
                return Ok(true);
            }
            return Ok(false);
        }
        for o in orbits.iter().filter(|o| o.len() > 1) {
            let stab = h.stabilizer_in(&crate::grp::OnVectors(self.space), o[0])?;
            prefix.push(o[0]);
            if self.dfs(&stab, depth - 1, prefix)? {
                return Ok(true);
            }
            prefix.pop();
        }
        Ok(false)
    }
}

struct StrongSearch<'a> {
    space: &'a Space,
}

impl StrongSearch<'_> {
    fn dfs(&self, h: &MatrixGroup, depth: usize, prefix: &mut Vec<u32>) -> Result<bool> {
        if h.is_scalar_group() {
            return Ok(true);
        }
        if depth == 0 {
            return Ok(false);
        }
        let order = h.order()? / h.scalar_subgroup_order()?;
        let orbits = h.line_orbits();
        let longest = orbits.iter().map(Vec::len).max().unwrap_or(1);
        if !fits(order, longest, depth) {
            return Ok(false);
        }
        if depth == 1 {
            if let Some(o) = orbits.iter().find(|o| o.len() as u64 == order) {
                prefix.push(o[0]);
                return Ok(true);
            }
            return Ok(false);
        }
        for o in orbits.iter().filter(|o| o.len() > 1) {
            let stab = h.stabilizer_in(&OnLines(self.space), o[0])?;
            prefix.push(o[0]);
            if self.dfs(&stab, depth - 1, prefix)? {
                return Ok(true);
            }
            prefix.pop();
        }
        Ok(false)
    }
}

fn finish(g: &MatrixGroup, space: &Space, idx: Vec<u32>, kind: BaseKind) -> Result<(usize, BaseCertificate)> {
    let tuple: Vec<Vector> = idx.iter().map(|&i| space.vector(i)).collect();
    let cert = certify(g, tuple, kind)?;
    if !cert.verified {
        return Err(Error::RedFlag("search produced a tuple that does not verify".into()));
    }
    Ok((idx.len(), cert))
}

/// `b(G)` with the lexicographically least minimal base (by vector index).
pub fn b_exact(g: &MatrixGroup) -> Result<(usize, BaseCertificate)> {
    let space = g.space();
    g.order()?;
    let search = PlainSearch { space: &space };
    for depth in 0..=g.dim() {
        let mut prefix = Vec::new();
        if search.dfs(g, depth, &mut prefix)? {
            return finish(g, &space, prefix, BaseKind::Plain);
        }
    }
    Err(Error::RedFlag("no base among tuples of length at most the dimension".into()))
}

/// `b*(G)` with the lexicographically least minimal strong base of normalized line
/// representatives.
pub fn b_star_exact(g: &MatrixGroup) -> Result<(usize, BaseCertificate)> {
    let space = g.space();
    g.order()?;
    let search = StrongSearch { space: &space };
    for depth in 0..=g.dim() + 1 {
        let mut prefix = Vec::new();
        if search.dfs(g, depth, &mut prefix)? {
            return finish(g, &space, prefix, BaseKind::Strong);
        }
    }
    Err(Error::RedFlag("no strong base of length at most dimension plus one".into()))
}

/// A vector whose orbit has length `|N|`, the least such by index.
pub fn has_regular_orbit(n: &MatrixGroup) -> Result<Option<Vector>> {
    let order = n.order()?;
    let space = n.space();
    Ok(n
        .orbits()
        .into_iter()
        .find(|o| o.len() as u64 == order)
        .map(|o| space.vector(o[0])))
}

/// `|{w in delta : h w = w}|`.
pub fn fixed_point_count(h: &Matrix, delta: &[Vector]) -> usize {
    let mut out = vec![0; h.rows()];
    delta
        .iter()
        .filter(|w| {
            h.apply_codes(w.entries(), &mut out);
            out == w.entries()
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn gl23() -> MatrixGroup {
        let f = make_field(3, 1).unwrap();
        let a = Matrix::from_rows(&f, &[vec![2, 0], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![2, 1], vec![2, 0]]).unwrap();
        MatrixGroup::new(&f, 2, vec![a, b]).unwrap()
    }

    #[test]
    fn gl23_bases() {
        let g = gl23();
        let f = g.field().clone();
        let e1 = Vector::unit(&f, 2, 0);
        let e2 = Vector::unit(&f, 2, 1);
        assert!(verify_base(&g, &[e1.clone(), e2], BaseKind::Plain).unwrap());
        assert!(!verify_base(&g, &[e1.clone()], BaseKind::Plain).unwrap());
        let (b, cert) = b_exact(&g).unwrap();
        assert_eq!(b, 2);
        assert!(cert.verified);
        assert_eq!(b_star_exact(&g).unwrap().0, 3);
        assert!(has_regular_orbit(&g).unwrap().is_none());
        let t = Matrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(fixed_point_count(&t, &g.orbit(&e1)), 2);
    }

    #[test]
    fn scalar_and_trivial() {
        let f5 = make_field(5, 1).unwrap();
        let z = MatrixGroup::scalars(&f5, 2);
        assert_eq!(b_exact(&z).unwrap().0, 1);
        assert_eq!(b_star_exact(&z).unwrap().0, 0);
        assert!(verify_base(&z, &[], BaseKind::Strong).unwrap());
        assert_eq!(b_exact(&MatrixGroup::trivial(&f5, 2)).unwrap().0, 0);
        let minus = Matrix::scalar(&f5, 2, 4);
        let orbit = z.orbit(&Vector::unit(&f5, 2, 0));
        assert_eq!(fixed_point_count(&minus, &orbit), 0);
        assert_eq!(fixed_point_count(&Matrix::identity(&f5, 2), &orbit), 4);
    }

    #[test]
    fn certificate_round_trip() {
        let g = gl23();
        let (_, cert) = b_exact(&g).unwrap();
        let back = BaseCertificate::from_json(&cert.to_json(), g.field()).unwrap();
        assert_eq!(back, cert);
    }
}

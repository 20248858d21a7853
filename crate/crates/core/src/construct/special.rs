use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::basesize::{certify, verify_base, BaseCertificate, BaseKind};
use crate::construct::constants::t_of_q;
use crate::error::{Error, Result};
use crate::gf::Code;
use crate::grp::{is_p_solvable, MatrixGroup, OnLines};
use crate::matlin::{Space, Subspace, Vector};

/// The shapes of special bases. Serialized with their customary short labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialCase {
    /// Two vectors; the normalizer of `<x>` inside that of `<x, y>` also normalizes `<y>`.
    #[serde(rename = "1a")]
    LineInclusion,
    /// Two vectors in characteristic 2; the nonidentity elements fixing `x` and `<x, y>`
    /// send `y` to `y + x`.
    #[serde(rename = "1b")]
    Transvection,
    /// Three vectors; fixing `<x>`, `<y>` and `<x, y, z>` forces fixing `<z>`.
    #[serde(rename = "2a")]
    TripleInclusion,
    /// Three vectors; `<y, z>` is invariant under the normalizer of `<x, y, z>`, and `x` lies
    /// outside it.
    #[serde(rename = "2b")]
    InvariantPlane,
}

impl SpecialCase {
    pub fn label(self) -> &'static str {
        match self {
            SpecialCase::LineInclusion => "1a",
            SpecialCase::Transvection => "1b",
            SpecialCase::TripleInclusion => "2a",
            SpecialCase::InvariantPlane => "2b",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            SpecialCase::LineInclusion | SpecialCase::Transvection => 2,
            _ => 3,
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        [
            SpecialCase::LineInclusion,
            SpecialCase::Transvection,
            SpecialCase::TripleInclusion,
            SpecialCase::InvariantPlane,
        ]
        .into_iter()
        .find(|c| c.label() == s)
    }
}

/// Which ambient shape a basis scan is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisFamily {
    /// `n = 2`, `q >= 5`.
    #[serde(rename = "dim2")]
    Plane,
    /// `n = 3`, `q` in `{3, 4}`.
    #[serde(rename = "dim3")]
    Solid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialBasisReport {
    pub which: Option<SpecialCase>,
    pub witness: Vec<Vector>,
    /// Hypotheses the input group fails; empty for a conforming input.
    pub hypothesis_failures: Vec<String>,
    /// Set when a conforming input has no special basis at all.
    pub red_flag: bool,
}

/// A base of length `t(q)` of one of the special shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialBase {
    pub case: SpecialCase,
    pub vectors: Vec<Vector>,
}

fn span(g: &MatrixGroup, vs: &[&[Code]]) -> Subspace {
    Subspace::span(g.field(), g.dim(), vs.iter().copied())
}

fn add(g: &MatrixGroup, a: &[Code], b: &[Code]) -> Vec<Code> {
    a.iter().zip(b).map(|(&x, &y)| g.field().add(x, y)).collect()
}

fn sends_y_to_y_plus_x(k: &MatrixGroup, x: &[Code], y: &[Code]) -> Result<bool> {
    let target = add(k, x, y);
    let mut out = vec![0; y.len()];
    for h in k.elements()? {
        if h.is_identity() {
            continue;
        }
        h.apply_codes(y, &mut out);
        if out != target {
            return Ok(false);
        }
    }
    Ok(true)
}

fn hypothesis_failures(g: &MatrixGroup) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let q = g.field().q();
    if g.scalar_subgroup_order()? != (q - 1) as u64 {
        out.push("group does not contain the scalars".to_string());
    }
    if !is_p_solvable(g, g.field().p())? {
        out.push("group is not p-solvable".to_string());
    }
    Ok(out)
}

/// Scans ordered bases of `V` in index order for the first one of a special shape.
pub fn special_basis_report(g: &MatrixGroup, family: BasisFamily) -> Result<SpecialBasisReport> {
    let q = g.field().q();
    match family {
        BasisFamily::Plane if g.dim() != 2 || q < 5 => {
            return Err(Error::Precondition("plane scan needs n = 2 and q >= 5".into()))
        }
        BasisFamily::Solid if g.dim() != 3 || !(q == 3 || q == 4) => {
            return Err(Error::Precondition("solid scan needs n = 3 and q in {3, 4}".into()))
        }
        _ => {}
    }
    let failures = hypothesis_failures(g)?;
    let found = match family {
        BasisFamily::Plane => scan_plane(g)?,
        BasisFamily::Solid => scan_solid(g)?,
    };
    let (which, witness) = match found {
        Some((c, w)) => (Some(c), w),
        None => (None, Vec::new()),
    };
    Ok(SpecialBasisReport {
        red_flag: which.is_none() && failures.is_empty(),
        which,
        witness,
        hypothesis_failures: failures,
    })
}

fn scan_plane(g: &MatrixGroup) -> Result<Option<(SpecialCase, Vec<Vector>)>> {
    let space = g.space();
    let lines = space.line_reps();
    let mut normalizers = HashMap::new();
    for &x in &lines {
        let nx = g.stabilizer_in(&OnLines(&space), x)?;
        for &y in &lines {
            if y == x {
                continue;
            }
            if nx.normalizes(&span(g, &[&space.decode(y)])) {
                return Ok(Some((SpecialCase::LineInclusion, vec![space.vector(x), space.vector(y)])));
            }
        }
        normalizers.insert(x, nx);
    }
    if g.field().p() != 2 {
        return Ok(None);
    }
    let q = g.field().q() as u64;
    for &x in &lines {
        let nx = &normalizers[&x];
        if nx.order()? != 2 * (q - 1) {
            continue;
        }
        let Some(inv) = nx
            .elements()?
            .into_iter()
            .find(|h| !h.is_identity() && h.mul_unchecked(h).is_identity())
        else {
            continue;
        };
        let xv = space.decode(x);
        let mut out = vec![0; 2];
        inv.apply_codes(&xv, &mut out);
        if out != xv {
            continue;
        }
        let line = span(g, &[&xv]);
        for y in space.nonzero() {
            let yv = space.decode(y);
            if line.contains(&yv) {
                continue;
            }
            inv.apply_codes(&yv, &mut out);
            if out == add(g, &xv, &yv) {
                return Ok(Some((SpecialCase::Transvection, vec![space.vector(x), space.vector(y)])));
            }
        }
    }
    Ok(None)
}

fn scan_solid(g: &MatrixGroup) -> Result<Option<(SpecialCase, Vec<Vector>)>> {
    let space = g.space();
    let lines = space.line_reps();
    for &x in &lines {
        let nx = g.stabilizer_in(&OnLines(&space), x)?;
        let xv = space.decode(x);
        for &y in &lines {
            if y == x {
                continue;
            }
            let yv = space.decode(y);
            let plane = span(g, &[&xv, &yv]);
            let nxy = nx.stabilizer_in(&OnLines(&space), y)?;
            for &z in &lines {
                let zv = space.decode(z);
                if plane.contains(&zv) {
                    continue;
                }
                if nxy.normalizes(&span(g, &[&zv])) {
                    let w = vec![space.vector(x), space.vector(y), space.vector(z)];
                    return Ok(Some((SpecialCase::TripleInclusion, w)));
                }
            }
        }
    }
    for &x in &lines {
        let xv = space.decode(x);
        for &y in &lines {
            for &z in &lines {
                let yz = span(g, &[&space.decode(y), &space.decode(z)]);
                if yz.dim() == 2 && !yz.contains(&xv) && g.normalizes(&yz) {
                    let w = vec![space.vector(x), space.vector(y), space.vector(z)];
                    return Ok(Some((SpecialCase::InvariantPlane, w)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `vectors` has the given special shape for `g` (the base property is not checked).
pub fn special_condition_holds(g: &MatrixGroup, case: SpecialCase, vectors: &[Vector]) -> Result<bool> {
    if vectors.len() != case.arity() {
        return Err(Error::Precondition(format!(
            "case {} takes {} vectors",
            case.label(),
            case.arity()
        )));
    }
    let v: Vec<&[Code]> = vectors.iter().map(|v| v.entries()).collect();
    Ok(match case {
        SpecialCase::LineInclusion => {
            let k = g
                .line_stabilizer(&span(g, &[v[0]]))?
                .setwise_stabilizer(&span(g, &[v[0], v[1]]))?;
            k.normalizes(&span(g, &[v[1]]))
        }
        SpecialCase::Transvection => {
            if g.field().p() != 2 {
                return Ok(false);
            }
            let k = g
                .stabilizer(&vectors[0])?
                .setwise_stabilizer(&span(g, &[v[0], v[1]]))?;
            sends_y_to_y_plus_x(&k, v[0], v[1])?
        }
        SpecialCase::TripleInclusion => {
            let k = g
                .line_stabilizer(&span(g, &[v[0]]))?
                .line_stabilizer(&span(g, &[v[1]]))?
                .setwise_stabilizer(&span(g, &[v[0], v[1], v[2]]))?;
            k.normalizes(&span(g, &[v[2]]))
        }
        SpecialCase::InvariantPlane => {
            let yz = span(g, &[v[1], v[2]]);
            !yz.contains(v[0]) && g.setwise_stabilizer(&span(g, &[v[0], v[1], v[2]]))?.normalizes(&yz)
        }
    })
}

/// Whether `witness` is an ordered basis with the shape reported by [`special_basis_report`].
pub fn basis_condition_holds(g: &MatrixGroup, case: SpecialCase, witness: &[Vector]) -> Result<bool> {
    if witness.len() != g.dim() || witness.len() != case.arity() {
        return Ok(false);
    }
    let v: Vec<&[Code]> = witness.iter().map(|v| v.entries()).collect();
    if span(g, &v).dim() != g.dim() {
        return Ok(false);
    }
    Ok(match case {
        SpecialCase::LineInclusion => g.line_stabilizer(&span(g, &[v[0]]))?.normalizes(&span(g, &[v[1]])),
        SpecialCase::Transvection => {
            let q = g.field().q() as u64;
            let nx = g.line_stabilizer(&span(g, &[v[0]]))?;
            if g.field().p() != 2 || nx.order()? != 2 * (q - 1) {
                return Ok(false);
            }
            let target = add(g, v[0], v[1]);
            let mut out = vec![0; 2];
            nx.elements()?.iter().any(|h| {
                if h.is_identity() || !h.mul_unchecked(h).is_identity() {
                    return false;
                }
                h.apply_codes(v[0], &mut out);
                let fixes_x = out == v[0];
                h.apply_codes(v[1], &mut out);
                fixes_x && out == target
            })
        }
        SpecialCase::TripleInclusion => g
            .line_stabilizer(&span(g, &[v[0]]))?
            .line_stabilizer(&span(g, &[v[1]]))?
            .normalizes(&span(g, &[v[2]])),
        SpecialCase::InvariantPlane => g.normalizes(&span(g, &[v[1], v[2]])),
    })
}

fn regular_points(h: &MatrixGroup) -> Result<Vec<bool>> {
    let order = h.order()?;
    let space = h.space();
    let mut out = vec![false; space.size() as usize];
    for o in h.orbits() {
        if o.len() as u64 == order {
            for p in o {
                out[p as usize] = true;
            }
        }
    }
    Ok(out)
}

/// Searches for a base of length `t(q)` of one of the special shapes. Candidates are orbit
/// representatives under the normalizers of the lines already chosen, so the scan is
/// deterministic and loses nothing. Tuples spanning `min(t(q), n)` dimensions whose strong
/// images are nonzero are preferred; degenerate ones are only returned when nothing else
/// exists. Returns `None` when no such base exists, which for conforming inputs means
/// `b(G) > t(q)`.
pub fn find_special_base(g: &MatrixGroup) -> Result<Option<SpecialBase>> {
    let q = g.field().q();
    if q == 2 {
        return Err(Error::Precondition("special bases need q > 2".into()));
    }
    let t = t_of_q(q)?;
    let space = g.space();
    for tidy in [true, false] {
        for xo in g.line_orbits() {
            let x = xo[0];
            let nx = g.stabilizer_in(&OnLines(&space), x)?;
            let cx = nx.stabilizer_of_index(x)?;
            let found = if t == 2 {
                search_pair(g, &space, x, &nx, &cx, tidy)?
            } else {
                search_triple(g, &space, x, &nx, &cx, tidy)?
            };
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

fn strong_images(case: SpecialCase, vectors: &[Vector]) -> Vec<Vector> {
    let (x, y) = (&vectors[0], &vectors[1]);
    match case {
        SpecialCase::LineInclusion | SpecialCase::Transvection => vec![x.clone(), x.add(y)],
        SpecialCase::TripleInclusion => vec![x.clone(), y.clone(), x.add(y).add(&vectors[2])],
        SpecialCase::InvariantPlane => vec![x.clone(), y.add(x), vectors[2].add(x)],
    }
}

fn is_tidy(g: &MatrixGroup, case: SpecialCase, vectors: &[Vector]) -> bool {
    let dim = Subspace::span_vectors(g.field(), g.dim(), vectors).dim();
    dim == vectors.len().min(g.dim()) && strong_images(case, vectors).iter().all(|v| !v.is_zero())
}

fn search_pair(
    g: &MatrixGroup,
    space: &Space,
    x: u32,
    nx: &MatrixGroup,
    cx: &MatrixGroup,
    tidy: bool,
) -> Result<Option<SpecialBase>> {
    let xv = space.decode(x);
    let keep = |case, vectors: &[Vector]| !tidy || is_tidy(g, case, vectors);
    let regular = regular_points(cx)?;
    for yo in nx.line_orbits() {
        let y = yo[0];
        if !regular[y as usize] {
            continue;
        }
        let yv = space.decode(y);
        if !keep(SpecialCase::LineInclusion, &[space.vector(x), space.vector(y)]) {
            continue;
        }
        let k = nx.setwise_stabilizer(&span(g, &[&xv, &yv]))?;
        if k.normalizes(&span(g, &[&yv])) {
            return Ok(Some(SpecialBase {
                case: SpecialCase::LineInclusion,
                vectors: vec![space.vector(x), space.vector(y)],
            }));
        }
    }
    if g.field().p() != 2 {
        return Ok(None);
    }
    let order = cx.order()?;
    for yo in cx.orbits() {
        if yo.len() as u64 != order {
            continue;
        }
        let y = yo[0];
        let yv = space.decode(y);
        if !keep(SpecialCase::Transvection, &[space.vector(x), space.vector(y)]) {
            continue;
        }
        let k = cx.setwise_stabilizer(&span(g, &[&xv, &yv]))?;
        if sends_y_to_y_plus_x(&k, &xv, &yv)? {
            return Ok(Some(SpecialBase {
                case: SpecialCase::Transvection,
                vectors: vec![space.vector(x), space.vector(y)],
            }));
        }
    }
    Ok(None)
}

fn search_triple(
    g: &MatrixGroup,
    space: &Space,
    x: u32,
    nx: &MatrixGroup,
    cx: &MatrixGroup,
    tidy: bool,
) -> Result<Option<SpecialBase>> {
    let xv = space.decode(x);
    let keep = |case, vectors: &[Vector]| !tidy || is_tidy(g, case, vectors);
    for yo in nx.line_orbits() {
        let y = yo[0];
        let yv = space.decode(y);
        let cxy = cx.stabilizer_of_index(y)?;
        let regular = regular_points(&cxy)?;
        if !regular.iter().any(|&r| r) {
            continue;
        }
        let nxy = nx.stabilizer_in(&OnLines(space), y)?;
        for zo in nxy.line_orbits() {
            let z = zo[0];
            if !regular[z as usize] {
                continue;
            }
            let zv = space.decode(z);
            let w = span(g, &[&xv, &yv, &zv]);
            let vectors = vec![space.vector(x), space.vector(y), space.vector(z)];
            if keep(SpecialCase::TripleInclusion, &vectors) && nxy.setwise_stabilizer(&w)?.normalizes(&span(g, &[&zv])) {
                return Ok(Some(SpecialBase {
                    case: SpecialCase::TripleInclusion,
                    vectors,
                }));
            }
            let yz = span(g, &[&yv, &zv]);
            if keep(SpecialCase::InvariantPlane, &vectors) && !yz.contains(&xv) && g.setwise_stabilizer(&w)?.normalizes(&yz) {
                return Ok(Some(SpecialBase {
                    case: SpecialCase::InvariantPlane,
                    vectors,
                }));
            }
        }
    }
    Ok(None)
}

/// Turns a special base into a strong base: `(x, x+y)` for the two-vector shapes,
/// `(x, y, x+y+z)` for the triple inclusion and `(x, y+x, z+x)` for the invariant plane.
pub fn strong_from_base(g: &MatrixGroup, vectors: &[Vector], case: SpecialCase) -> Result<BaseCertificate> {
    if vectors.len() != case.arity() {
        return Err(Error::Precondition(format!(
            "case {} takes {} vectors",
            case.label(),
            case.arity()
        )));
    }
    if !verify_base(g, vectors, BaseKind::Plain)? {
        return Err(Error::Precondition("input tuple is not a base".into()));
    }
    if !special_condition_holds(g, case, vectors)? {
        return Err(Error::Precondition(format!("special base condition {} not satisfied", case.label())));
    }
    let cert = certify(g, strong_images(case, vectors), BaseKind::Strong)?;
    if !cert.verified {
        return Err(Error::RedFlag(format!(
            "strong base from case {} does not verify",
            case.label()
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::matlin::Matrix;

    fn diag5() -> MatrixGroup {
        let f = make_field(5, 1).unwrap();
        let a = Matrix::diagonal(&f, &[2, 1]);
        let b = Matrix::diagonal(&f, &[1, 2]);
        MatrixGroup::new(&f, 2, vec![a, b]).unwrap()
    }

    fn gl(p: u32) -> MatrixGroup {
        let f = make_field(p, 1).unwrap();
        let m = (p - 1) as Code;
        let g = f.generator();
        let a = Matrix::from_rows(&f, &[vec![g, 0], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![m, 1], vec![m, 0]]).unwrap();
        MatrixGroup::new(&f, 2, vec![a, b]).unwrap()
    }

    #[test]
    fn diagonal_group_line_inclusion() {
        let g = diag5();
        let r = special_basis_report(&g, BasisFamily::Plane).unwrap();
        assert_eq!(r.which, Some(SpecialCase::LineInclusion));
        assert!(r.hypothesis_failures.is_empty());
        assert!(basis_condition_holds(&g, SpecialCase::LineInclusion, &r.witness).unwrap());
        let sb = find_special_base(&g).unwrap().unwrap();
        assert_eq!(sb.case, SpecialCase::LineInclusion);
        let cert = strong_from_base(&g, &sb.vectors, sb.case).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.len(), 2);
    }

    #[test]
    fn gl23_triple() {
        let g = gl(3);
        assert_eq!(g.order().unwrap(), 48);
        let sb = find_special_base(&g).unwrap().unwrap();
        assert_eq!(sb.vectors.len(), 3);
        assert!(strong_from_base(&g, &sb.vectors, sb.case).unwrap().verified);
    }

    #[test]
    fn gl25_has_none() {
        let g = gl(5);
        assert_eq!(g.order().unwrap(), 480);
        assert!(find_special_base(&g).unwrap().is_none());
        let r = special_basis_report(&g, BasisFamily::Plane).unwrap();
        assert_eq!(r.which, None);
        assert!(!r.red_flag);
        assert_eq!(r.hypothesis_failures, vec!["group is not p-solvable".to_string()]);
    }

    #[test]
    fn wrong_condition_is_rejected() {
        let g = gl(5);
        let f = g.field().clone();
        let e = [Vector::unit(&f, 2, 0), Vector::unit(&f, 2, 1)];
        let err = strong_from_base(&g, &e, SpecialCase::LineInclusion).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert_eq!(serde_json::to_string(&SpecialCase::Transvection).unwrap(), "\"1b\"");
    }
}

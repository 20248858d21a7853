use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basesize::{b_exact, certify, BaseCertificate, BaseKind};
use crate::construct::special::{find_special_base, special_condition_holds, strong_from_base, SpecialCase};
use crate::error::{Error, Result};
use crate::gf::{Code, FieldSpec};
use crate::grp::{MatrixGroup, OnSubspaces};
use crate::matlin::{Matrix, Subspace, Vector};

fn check_decomposition(g: &MatrixGroup, summands: &[Subspace]) -> Result<()> {
    let mut total = Subspace::zero(g.field(), g.dim());
    let mut dims = 0;
    for u in summands {
        if u.ambient_dim() != g.dim() {
            return Err(Error::dims("summand lives in another space"));
        }
        if !g.normalizes(u) {
            return Err(Error::Precondition("summand is not invariant".into()));
        }
        total = total.sum(u);
        dims += u.dim();
    }
    if dims != g.dim() || !total.is_whole() {
        return Err(Error::Precondition("summands do not form a direct sum decomposition".into()));
    }
    Ok(())
}

/// Adds the `j`-th vectors of the summand tuples, padding short tuples with zero.
pub fn combine_tuples(field: &Arc<FieldSpec>, n: usize, tuples: &[Vec<Vector>]) -> Vec<Vector> {
    let len = tuples.iter().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .map(|j| {
            tuples
                .iter()
                .filter_map(|t| t.get(j))
                .fold(Vector::zero(field, n), |acc, v| acc.add(v))
        })
        .collect()
}

/// Least bases of the groups induced on each summand, written in the ambient coordinates.
pub fn summand_bases(g: &MatrixGroup, summands: &[Subspace]) -> Result<Vec<Vec<Vector>>> {
    check_decomposition(g, summands)?;
    summands
        .iter()
        .map(|u| {
            let (_, cert) = b_exact(&g.restrict(u)?)?;
            cert.vectors
                .iter()
                .map(|v| Vector::new(g.field(), u.combine(v.entries())))
                .collect()
        })
        .collect()
}

/// `x_j = sum_i x_{i,j}` over the summand tuples, certified as a plain base of `g`. A tuple
/// that does not kill the induced group on its summand shows up as `verified == false`.
pub fn direct_sum_base(g: &MatrixGroup, summands: &[Subspace], tuples: &[Vec<Vector>]) -> Result<BaseCertificate> {
    check_decomposition(g, summands)?;
    if tuples.len() != summands.len() {
        return Err(Error::dims("one tuple per summand"));
    }
    for (u, t) in summands.iter().zip(tuples) {
        if t.iter().any(|v| v.len() != g.dim() || !u.contains_vector(v)) {
            return Err(Error::Precondition("tuple vector outside its summand".into()));
        }
    }
    certify(g, combine_tuples(g.field(), g.dim(), tuples), BaseKind::Plain)
}

/// Vectors in `F^k` whose stabilizer under coordinate permutation is trivial, alone or
/// jointly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinguishing {
    pub a: Vec<Code>,
    pub b: Option<Vec<Code>>,
    /// Entries were drawn from the even codes only (one of each pair `c`, `c + 1`).
    pub restricted: bool,
}

/// All elements of the permutation group generated by `gens` on `0..k`.
pub fn permutation_closure(gens: &[Vec<usize>], k: usize) -> Result<Vec<Vec<usize>>> {
    for g in gens {
        let mut seen = vec![false; k];
        if g.len() != k || g.iter().any(|&i| i >= k || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Precondition("not a permutation of the blocks".into()));
        }
    }
    let id: Vec<usize> = (0..k).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut j = 0;
    while j < out.len() {
        for g in gens {
            let x: Vec<usize> = out[j].iter().map(|&i| g[i]).collect();
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
        j += 1;
    }
    Ok(out)
}

fn fixes(p: &[usize], a: &[Code]) -> bool {
    (0..a.len()).all(|i| a[p[i]] == a[i])
}

fn words(alphabet: &[Code], k: usize) -> impl Iterator<Item = Vec<Code>> + '_ {
    let total = (alphabet.len() as u64).pow(k as u32);
    (0..total).map(move |mut x| {
        let mut w = vec![0; k];
        for slot in w.iter_mut().rev() {
            *slot = alphabet[(x % alphabet.len() as u64) as usize];
            x /= alphabet.len() as u64;
        }
        w
    })
}

/// Lexicographically first `a` (first coordinate most significant) with trivial stabilizer
/// in the permutation group; for `q` in `{3, 4}` a pair `a, b` with trivial joint
/// stabilizer. For even `q >= 8` entries are restricted to the even codes.
pub fn distinguishing_vectors(gens: &[Vec<usize>], k: usize, field: &Arc<FieldSpec>) -> Result<Distinguishing> {
    let q = field.q();
    if q < 3 {
        return Err(Error::Precondition("distinguishing vectors need q >= 3".into()));
    }
    let movers: Vec<Vec<usize>> = permutation_closure(gens, k)?
        .into_iter()
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .collect();
    let restricted = q % 2 == 0 && q >= 8;
    let alphabet: Vec<Code> = (0..q as Code).filter(|c| !restricted || c % 2 == 0).collect();
    let single = words(&alphabet, k).find(|a| movers.iter().all(|p| !fixes(p, a)));
    if q >= 5 {
        return single
            .map(|a| Distinguishing { a, b: None, restricted })
            .ok_or_else(|| Error::RedFlag("no vector with trivial stabilizer".into()));
    }
    if let Some(a) = single {
        return Ok(Distinguishing {
            a,
            b: Some(vec![0; k]),
            restricted,
        });
    }
    for a in words(&alphabet, k) {
        let left: Vec<&Vec<usize>> = movers.iter().filter(|p| fixes(p, &a)).collect();
        if let Some(b) = words(&alphabet, k).find(|b| left.iter().all(|p| !fixes(p, b))) {
            return Ok(Distinguishing { a, b: Some(b), restricted });
        }
    }
    Err(Error::RedFlag("no pair with trivial joint stabilizer".into()))
}

/// `V = V_1 + ... + V_k` with `V_i` spanned by the `i`-th run of `m` coordinates.
pub fn coordinate_blocks(field: &Arc<FieldSpec>, n: usize, m: usize) -> Result<Vec<Subspace>> {
    if m == 0 || n % m != 0 {
        return Err(Error::dims("block size must divide the dimension"));
    }
    Ok((0..n / m)
        .map(|i| {
            let units: Vec<Vector> = (i * m..(i + 1) * m).map(|c| Vector::unit(field, n, c)).collect();
            Subspace::span_vectors(field, n, &units)
        })
        .collect())
}

/// How each generator permutes the blocks.
pub fn block_permutations(g: &MatrixGroup, blocks: &[Subspace]) -> Result<Vec<Vec<usize>>> {
    g.generators()
        .iter()
        .map(|s| {
            blocks
                .iter()
                .map(|b| {
                    let img = b.image(s);
                    blocks
                        .iter()
                        .position(|c| *c == img)
                        .ok_or_else(|| Error::Precondition("generator does not permute the blocks".into()))
                })
                .collect()
        })
        .collect()
}

/// `g_1 = 1, g_2, ..., g_k` with `g_i V_1 = V_i`.
pub fn block_transversal(g: &MatrixGroup, blocks: &[Subspace]) -> Result<Vec<Matrix>> {
    let (pts, reps) = g.transversal_in(&OnSubspaces, blocks[0].clone());
    if pts.len() != blocks.len() {
        return Err(Error::Precondition("blocks are not permuted transitively".into()));
    }
    blocks
        .iter()
        .map(|b| {
            let t = pts
                .iter()
                .position(|p| p == b)
                .ok_or_else(|| Error::Precondition("orbit of the first block leaves the block system".into()))?;
            Ok(reps[t].clone())
        })
        .collect()
}

/// The group induced on `V_1` by its normalizer.
pub fn block_group(g: &MatrixGroup, first: &Subspace) -> Result<MatrixGroup> {
    g.setwise_stabilizer(first)?.restrict(first)
}

/// Spreads a block base over all blocks: `x = sum x_i`, `y = sum (y_i + a_i x_i)` for
/// two-vector cases; for three vectors `z = sum (z_i + b_i x_i + a_i y_i)` (triple inclusion)
/// or `y = sum (y_i + a_i x_i)`, `z = sum (z_i + b_i x_i)` (invariant plane).
pub fn assemble_imprimitive(
    first: &Subspace,
    reps: &[Matrix],
    block_base: &[Vector],
    case: SpecialCase,
    dv: &Distinguishing,
) -> Result<Vec<Vector>> {
    let field = first.field();
    let n = first.ambient_dim();
    if block_base.len() != case.arity() || reps.len() != dv.a.len() {
        return Err(Error::dims("block data of inconsistent sizes"));
    }
    let spread: Vec<Vec<Vector>> = block_base
        .iter()
        .map(|v| {
            let e = Vector::new(field, first.combine(v.entries()))?;
            reps.iter().map(|r| r.apply(&e)).collect()
        })
        .collect::<Result<_>>()?;
    let b = || {
        dv.b
            .as_ref()
            .ok_or_else(|| Error::Precondition("three-vector cases need a distinguishing pair".into()))
    };
    let sum = |terms: &dyn Fn(usize) -> Vector| (0..reps.len()).fold(Vector::zero(field, n), |acc, i| acc.add(&terms(i)));
    let (xs, ys) = (&spread[0], &spread[1]);
    let x = sum(&|i| xs[i].clone());
    Ok(match case {
        SpecialCase::LineInclusion | SpecialCase::Transvection => {
            vec![x, sum(&|i| ys[i].add(&xs[i].scale(dv.a[i])))]
        }
        SpecialCase::TripleInclusion => {
            let bb = b()?;
            let zs = &spread[2];
            let y = sum(&|i| ys[i].clone());
            let z = sum(&|i| zs[i].add(&xs[i].scale(bb[i])).add(&ys[i].scale(dv.a[i])));
            vec![x, y, z]
        }
        SpecialCase::InvariantPlane => {
            let bb = b()?;
            let zs = &spread[2];
            let y = sum(&|i| ys[i].add(&xs[i].scale(dv.a[i])));
            let z = sum(&|i| zs[i].add(&xs[i].scale(bb[i])));
            vec![x, y, z]
        }
    })
}

#[derive(Clone, Debug)]
pub struct ImprimitiveBase {
    pub block_case: SpecialCase,
    pub block_base: Vec<Vector>,
    pub distinguishing: Distinguishing,
    pub certificate: BaseCertificate,
    /// A strong base, when the assembled tuple again has the special shape.
    pub strong: Option<BaseCertificate>,
}

/// Base of a group permuting the coordinate blocks of size `m` transitively, assembled
/// from a special base of the block group and distinguishing vectors for the block action.
pub fn imprimitive_base(g: &MatrixGroup, m: usize) -> Result<ImprimitiveBase> {
    let blocks = coordinate_blocks(g.field(), g.dim(), m)?;
    let perms = block_permutations(g, &blocks)?;
    let reps = block_transversal(g, &blocks)?;
    let h1 = block_group(g, &blocks[0])?;
    let special = find_special_base(&h1)?
        .ok_or_else(|| Error::Hypothesis("block group has no special base of length t(q)".into()))?;
    let dv = distinguishing_vectors(&perms, blocks.len(), g.field())?;
    let vectors = assemble_imprimitive(&blocks[0], &reps, &special.vectors, special.case, &dv)?;
    let certificate = certify(g, vectors, BaseKind::Plain)?;
    if !certificate.verified {
        return Err(Error::RedFlag("assembled block base does not verify".into()));
    }
    let strong = if special_condition_holds(g, special.case, &certificate.vectors)? {
        Some(strong_from_base(g, &certificate.vectors, special.case)?)
    } else {
        None
    };
    Ok(ImprimitiveBase {
        block_case: special.case,
        block_base: special.vectors,
        distinguishing: dv,
        certificate,
        strong,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn distinguishing_examples() {
        let f5 = make_field(5, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let s2 = vec![vec![1, 0]];
        let s3 = vec![vec![1, 0, 2], vec![1, 2, 0]];
        assert_eq!(distinguishing_vectors(&s2, 2, &f5).unwrap().a, vec![0, 1]);
        assert_eq!(distinguishing_vectors(&s3, 3, &f5).unwrap().a, vec![0, 1, 2]);
        let d = distinguishing_vectors(&s3, 3, &f3).unwrap();
        assert_eq!((d.a, d.b), (vec![0, 1, 2], Some(vec![0, 0, 0])));
        let s4 = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        let d = distinguishing_vectors(&s4, 4, &f3).unwrap();
        assert!(d.b.unwrap() != vec![0; 4]);
        let f8 = make_field(2, 3).unwrap();
        let d = distinguishing_vectors(&s3, 3, &f8).unwrap();
        assert!(d.restricted && d.a.iter().all(|c| c % 2 == 0));
        assert!(distinguishing_vectors(&s2, 2, &make_field(2, 1).unwrap()).is_err());
    }

    #[test]
    fn two_copies_of_the_diagonal_group() {
        let f = make_field(5, 1).unwrap();
        let gens = vec![Matrix::diagonal(&f, &[2, 1, 2, 1]), Matrix::diagonal(&f, &[1, 2, 1, 2])];
        let g = MatrixGroup::new(&f, 4, gens).unwrap();
        let blocks = coordinate_blocks(&f, 4, 2).unwrap();
        let tuples = summand_bases(&g, &blocks).unwrap();
        assert!(direct_sum_base(&g, &blocks, &tuples).unwrap().verified);
        let full = MatrixGroup::new(
            &f,
            4,
            (0..4)
                .map(|i| {
                    let mut d = vec![1; 4];
                    d[i] = 2;
                    Matrix::diagonal(&f, &d)
                })
                .collect(),
        )
        .unwrap();
        let short = vec![tuples[0].clone(), vec![]];
        assert!(direct_sum_base(&g, &blocks, &short).unwrap().verified);
        assert!(!direct_sum_base(&full, &blocks, &short).unwrap().verified);
        let lone = coordinate_blocks(&f, 4, 4).unwrap();
        let t = summand_bases(&g, &lone).unwrap();
        assert_eq!(direct_sum_base(&g, &lone, &t).unwrap().vectors, t[0]);
    }

    #[test]
    fn monomial_wreath_in_dimension_four() {
        let f = make_field(5, 1).unwrap();
        let swap = Matrix::permutation(&f, &[2, 3, 0, 1]);
        let gens = vec![
            Matrix::diagonal(&f, &[2, 1, 1, 1]),
            Matrix::diagonal(&f, &[1, 2, 1, 1]),
            swap,
        ];
        let g = MatrixGroup::new(&f, 4, gens).unwrap();
        assert_eq!(g.order().unwrap(), 512);
        let r = imprimitive_base(&g, 2).unwrap();
        assert!(r.certificate.verified);
        assert_eq!(r.certificate.len(), 2);
    }
}

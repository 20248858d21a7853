//! Submodule machinery by spinning: the smallest invariant subspace through a vector, and
//! irreducibility and complete reducibility decided from the spins of all lines.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Code, FieldSpec};
use crate::matlin::{Matrix, Space, Subspace, Vector};

fn spin_codes(field: &Arc<FieldSpec>, n: usize, v: &[Code], gens: &[Matrix]) -> Subspace {
    let mut s = Subspace::zero(field, n);
    s.insert(v);
    let mut queue = vec![v.to_vec()];
    let mut out = vec![0; n];
    while let Some(w) = queue.pop() {
        for g in gens {
            g.apply_codes(&w, &mut out);
            if s.insert(&out) {
                queue.push(out.clone());
            }
        }
        if s.is_whole() {
            break;
        }
    }
    s
}

/// Smallest subspace containing `v` and invariant under every generator.
pub fn spin(v: &Vector, gens: &[Matrix]) -> Result<Subspace> {
    if v.is_zero() {
        return Err(Error::ZeroSpin);
    }
    for g in gens {
        if g.rows() != v.len() || g.cols() != v.len() {
            return Err(Error::dims("generator does not act on the vector's space"));
        }
    }
    Ok(spin_codes(v.field(), v.len(), v.entries(), gens))
}

/// Spins of every line, deduplicated, in order of first appearance.
pub fn line_spins(field: &Arc<FieldSpec>, n: usize, gens: &[Matrix]) -> Vec<Subspace> {
    let space = Space::new(field, n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rep in space.line_reps() {
        let s = spin_codes(field, n, &space.decode(rep), gens);
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}

pub fn is_irreducible(field: &Arc<FieldSpec>, n: usize, gens: &[Matrix]) -> bool {
    let space = Space::new(field, n);
    space
        .line_reps()
        .into_iter()
        .all(|rep| spin_codes(field, n, &space.decode(rep), gens).is_whole())
}

/// The inclusion-minimal spins; each is an irreducible submodule.
pub fn minimal_spins(field: &Arc<FieldSpec>, n: usize, gens: &[Matrix]) -> Vec<Subspace> {
    let mut spins = line_spins(field, n, gens);
    spins.sort_by_key(|s| s.dim());
    let mut minimal: Vec<Subspace> = Vec::new();
    for s in spins {
        if !minimal.iter().any(|m| m.dim() < s.dim() && m.is_subspace_of(&s)) {
            minimal.push(s);
        }
    }
    minimal
}

/// Sum of all irreducible submodules.
pub fn socle(field: &Arc<FieldSpec>, n: usize, gens: &[Matrix]) -> Subspace {
    minimal_spins(field, n, gens)
        .iter()
        .fold(Subspace::zero(field, n), |acc, m| acc.sum(m))
}

pub fn is_completely_reducible(field: &Arc<FieldSpec>, n: usize, gens: &[Matrix]) -> bool {
    socle(field, n, gens).is_whole()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn mat(f: &Arc<FieldSpec>, rows: &[&[Code]]) -> Matrix {
        Matrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn spin_examples() {
        let f = make_field(3, 1).unwrap();
        let e1 = Vector::unit(&f, 2, 0);
        assert_eq!(spin(&e1, &[Matrix::identity(&f, 2)]).unwrap().dim(), 1);
        let rot = mat(&f, &[&[0, 2], &[1, 0]]);
        assert!(spin(&e1, &[rot]).unwrap().is_whole());
        assert_eq!(spin(&Vector::zero(&f, 2), &[]), Err(Error::ZeroSpin));
        let a = mat(&f, &[&[1, 1], &[0, 1]]);
        let b = mat(&f, &[&[2]]);
        let g = a.direct_sum(&b).unwrap();
        let s = spin(&Vector::unit(&f, 3, 1), &[g]).unwrap();
        assert!(s.basis().iter().all(|r| r[2] == 0));
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = make_field(3, 1).unwrap();
        let gl = [mat(&f3, &[&[2, 0], &[0, 1]]), mat(&f3, &[&[2, 1], &[2, 0]])];
        assert!(is_irreducible(&f3, 2, &gl));
        let diag = [mat(&f3, &[&[2, 0], &[0, 1]]), mat(&f3, &[&[1, 0], &[0, 2]])];
        assert!(!is_irreducible(&f3, 2, &diag));
        let f5 = make_field(5, 1).unwrap();
        assert!(!is_irreducible(&f5, 2, &[Matrix::scalar(&f5, 2, 2)]));
    }

    #[test]
    fn complete_reducibility_examples() {
        let f3 = make_field(3, 1).unwrap();
        let gl = [mat(&f3, &[&[2, 0], &[0, 1]]), mat(&f3, &[&[2, 1], &[2, 0]])];
        assert!(is_completely_reducible(&f3, 2, &gl));
        let unipotent = [mat(&f3, &[&[1, 1], &[0, 1]])];
        assert!(!is_completely_reducible(&f3, 2, &unipotent));
        assert_eq!(minimal_spins(&f3, 2, &unipotent).len(), 1);
        let f5 = make_field(5, 1).unwrap();
        let diag = [mat(&f5, &[&[2, 0], &[0, 1]]), mat(&f5, &[&[1, 0], &[0, 2]])];
        assert!(is_completely_reducible(&f5, 2, &diag));
    }
}

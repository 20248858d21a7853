use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{Code, FieldSpec};
use crate::grp::action::{Action, OnLines, OnSubspaces, OnVectors};
use crate::grp::chain::StabChain;
use crate::matlin::{Matrix, Space, Subspace, Vector, SPACE_CAP};

/// A group of invertible `n x n` matrices over GF(q), given by generators. The stabilizer
/// chain is built on first use and shared by clones.
#[derive(Clone)]
pub struct MatrixGroup {
    field: Arc<FieldSpec>,
    n: usize,
    gens: Vec<Matrix>,
    chain: OnceLock<Result<Arc<StabChain>>>,
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixGroup({:?}, n={}, {} gens)", self.field, self.n, self.gens.len())
    }
}

impl MatrixGroup {
    pub fn new(field: &Arc<FieldSpec>, n: usize, gens: Vec<Matrix>) -> Result<Self> {
        for g in &gens {
            if **g.field() != **field {
                return Err(Error::FieldMismatch {
                    left: g.field().q(),
                    right: field.q(),
                });
            }
            if g.rows() != n || g.cols() != n {
                return Err(Error::dims(format!("generator is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        Ok(MatrixGroup {
            field: field.clone(),
            n,
            gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(field: &Arc<FieldSpec>, n: usize) -> Self {
        MatrixGroup {
            field: field.clone(),
            n,
            gens: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    /// The scalar group `Z`.
    pub fn scalars(field: &Arc<FieldSpec>, n: usize) -> Self {
        let gens = if field.q() > 2 {
            vec![Matrix::scalar(field, n, field.generator())]
        } else {
            Vec::new()
        };
        MatrixGroup {
            field: field.clone(),
            n,
            gens,
            chain: OnceLock::new(),
        }
    }

    pub(crate) fn from_chain(chain: StabChain) -> Self {
        let field = chain.field().clone();
        let n = chain.space().dim();
        let gens = chain.generators();
        let lock = OnceLock::new();
        let _ = lock.set(Ok(Arc::new(chain)));
        MatrixGroup {
            field,
            n,
            gens,
            chain: lock,
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn space(&self) -> Space {
        Space::new(&self.field, self.n)
    }

    pub fn chain(&self) -> Result<Arc<StabChain>> {
        self.chain
            .get_or_init(|| {
                let space = self.space();
                if space.size() > SPACE_CAP {
                    return Err(Error::CapExceeded(format!("|V| = {} exceeds {SPACE_CAP}", space.size())));
                }
                StabChain::build(&space, &self.gens).map(Arc::new)
            })
            .clone()
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.chain()?.order())
    }

    fn check(&self, m: &Matrix) -> Result<()> {
        if **m.field() != *self.field {
            return Err(Error::FieldMismatch {
                left: m.field().q(),
                right: self.field.q(),
            });
        }
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::dims("matrix does not act on the group's space"));
        }
        Ok(())
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.check(m)?;
        Ok(self.chain()?.contains(m))
    }

    pub fn elements(&self) -> Result<Vec<Matrix>> {
        Ok(self.chain()?.elements())
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Matrix::is_identity)
    }

    /// Whether every element is scalar.
    pub fn is_scalar_group(&self) -> bool {
        self.gens.iter().all(Matrix::is_scalar)
    }

    /// `|G ∩ Z|`.
    pub fn scalar_subgroup_order(&self) -> Result<u64> {
        let chain = self.chain()?;
        Ok(self
            .field
            .elements()
            .skip(1)
            .filter(|&c| chain.contains(&Matrix::scalar(&self.field, self.n, c)))
            .count() as u64)
    }

    /// `<G, Z>`.
    pub fn with_scalars(&self) -> Result<MatrixGroup> {
        if self.field.q() == 2 {
            return Ok(self.clone());
        }
        let z = Matrix::scalar(&self.field, self.n, self.field.generator());
        if self.contains(&z)? {
            return Ok(self.clone());
        }
        let mut gens = self.gens.clone();
        gens.push(z);
        MatrixGroup::new(&self.field, self.n, gens)
    }

    pub fn orbit_in<A: Action>(&self, action: &A, point: A::Point) -> Vec<A::Point> {
        let mut seen = HashMap::new();
        seen.insert(point.clone(), ());
        let mut pts = vec![point];
        let mut j = 0;
        while j < pts.len() {
            for g in &self.gens {
                let img = action.act(g, &pts[j]);
                if seen.insert(img.clone(), ()).is_none() {
                    pts.push(img);
                }
            }
            j += 1;
        }
        pts
    }

    /// The orbit of `point` with, for each orbit point, an element carrying `point` to it.
    pub fn transversal_in<A: Action>(&self, action: &A, point: A::Point) -> (Vec<A::Point>, Vec<Matrix>) {
        let mut seen = HashMap::new();
        seen.insert(point.clone(), ());
        let mut pts = vec![point];
        let mut reps = vec![Matrix::identity(&self.field, self.n)];
        let mut j = 0;
        while j < pts.len() {
            for g in &self.gens {
                let img = action.act(g, &pts[j]);
                if seen.insert(img.clone(), ()).is_none() {
                    pts.push(img);
                    reps.push(g.mul_unchecked(&reps[j]));
                }
            }
            j += 1;
        }
        (pts, reps)
    }

    pub fn orbit(&self, v: &Vector) -> Vec<Vector> {
        let space = self.space();
        self.orbit_in(&OnVectors(&space), space.index(v))
            .into_iter()
            .map(|i| space.vector(i))
            .collect()
    }

    /// Stabilizer of `point`, generated by Schreier generators until the orbit-stabilizer
    /// order is reached.
    pub fn stabilizer_in<A: Action>(&self, action: &A, point: A::Point) -> Result<MatrixGroup> {
        let order = self.order()?;
        let mut index: HashMap<A::Point, usize> = HashMap::new();
        index.insert(point.clone(), 0);
        let id = Matrix::identity(&self.field, self.n);
        let mut pts = vec![point];
        let mut reps = vec![id.clone()];
        let mut reps_inv = vec![id];
        let gens_inv: Vec<Matrix> = self.gens.iter().map(|g| g.inverse()).collect::<Result<_>>()?;
        let mut j = 0;
        while j < pts.len() {
            for (g, gi) in self.gens.iter().zip(&gens_inv) {
                let img = action.act(g, &pts[j]);
                if !index.contains_key(&img) {
                    index.insert(img.clone(), pts.len());
                    pts.push(img);
                    reps.push(g.mul_unchecked(&reps[j]));
                    reps_inv.push(reps_inv[j].mul_unchecked(gi));
                }
            }
            j += 1;
        }
        if pts.len() == 1 {
            return Ok(self.clone());
        }
        let target = order / pts.len() as u64;
        let mut chain = StabChain::with_target(&self.space(), target);
        'outer: for (j, p) in pts.iter().enumerate() {
            for g in &self.gens {
                if chain.is_complete_for_target() {
                    break 'outer;
                }
                let k = index[&action.act(g, p)];
                let sg = reps_inv[k].mul_unchecked(&g.mul_unchecked(&reps[j]));
                if !sg.is_identity() {
                    chain.add(&sg)?;
                }
            }
        }
        if chain.order() != target {
            return Err(Error::RedFlag(format!(
                "stabilizer order {} differs from |G|/|orbit| = {target}",
                chain.order()
            )));
        }
        Ok(MatrixGroup::from_chain(chain))
    }

    pub fn stabilizer(&self, v: &Vector) -> Result<MatrixGroup> {
        let space = self.space();
        self.stabilizer_in(&OnVectors(&space), space.index(v))
    }

    pub fn stabilizer_of_index(&self, idx: u32) -> Result<MatrixGroup> {
        let space = self.space();
        self.stabilizer_in(&OnVectors(&space), idx)
    }

    /// `C_G(X)`, the pointwise stabilizer.
    pub fn pointwise_stabilizer(&self, vectors: &[Vector]) -> Result<MatrixGroup> {
        vectors.iter().try_fold(self.clone(), |h, v| h.stabilizer(v))
    }

    /// `N_G(U)`, the setwise stabilizer of a subspace.
    pub fn line_stabilizer(&self, u: &Subspace) -> Result<MatrixGroup> {
        if u.dim() == 1 {
            let space = self.space();
            let mut v = u.basis()[0].clone();
            space.normalize_codes(&mut v);
            return self.stabilizer_in(&OnLines(&space), space.encode(&v));
        }
        self.stabilizer_in(&OnSubspaces, u.clone())
    }

    pub fn setwise_stabilizer(&self, u: &Subspace) -> Result<MatrixGroup> {
        self.line_stabilizer(u)
    }

    /// Whether every generator maps `u` into itself.
    pub fn normalizes(&self, u: &Subspace) -> bool {
        self.gens.iter().all(|g| u.is_invariant(g))
    }

    /// Whether every element fixes each vector of `xs`.
    pub fn centralizes(&self, xs: &[Vec<Code>]) -> bool {
        let mut out = vec![0; self.n];
        self.gens.iter().all(|g| {
            xs.iter().all(|x| {
                g.apply_codes(x, &mut out);
                out == *x
            })
        })
    }

    /// The induced group on an invariant subspace, in its echelon basis.
    pub fn restrict(&self, u: &Subspace) -> Result<MatrixGroup> {
        if !self.normalizes(u) {
            return Err(Error::Precondition("subspace is not invariant".into()));
        }
        let d = u.dim();
        let mut out = vec![0; self.n];
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Code>> = u
                    .basis()
                    .iter()
                    .map(|b| {
                        g.apply_codes(b, &mut out);
                        u.coordinates(&out)
                    })
                    .collect();
                Matrix::from_columns(&self.field, &cols)
            })
            .filter(|m| !m.is_identity())
            .collect();
        MatrixGroup::new(&self.field, d, gens)
    }

    /// Action of each generator on `V` as a permutation of indices.
    pub fn permutations(&self) -> Vec<Vec<u32>> {
        let space = self.space();
        self.gens.iter().map(|g| space.permutation(g)).collect()
    }

    /// Orbits on the nonzero vectors, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let space = self.space();
        let perms = self.permutations();
        orbits_of(space.size(), space.nonzero(), |p, s| perms[s][p as usize], perms.len())
    }

    /// Orbits on lines, as sorted lists of normalized representatives.
    pub fn line_orbits(&self) -> Vec<Vec<u32>> {
        let space = self.space();
        let perms = self.permutations();
        let normal: Vec<u32> = (0..space.size()).map(|i| space.normalize(i)).collect();
        orbits_of(
            space.size(),
            space.line_reps().into_iter(),
            |p, s| normal[perms[s][p as usize] as usize],
            perms.len(),
        )
    }
}

/// Orbit partition of `points` under `image(point, generator)`.
pub(crate) fn orbits_of(
    size: u32,
    points: impl Iterator<Item = u32>,
    image: impl Fn(u32, usize) -> u32,
    ngens: usize,
) -> Vec<Vec<u32>> {
    let mut done = vec![false; size as usize];
    let mut out = Vec::new();
    for p in points {
        if done[p as usize] {
            continue;
        }
        done[p as usize] = true;
        let mut orbit = vec![p];
        let mut j = 0;
        while j < orbit.len() {
            for s in 0..ngens {
                let img = image(orbit[j], s);
                if !done[img as usize] {
                    done[img as usize] = true;
                    orbit.push(img);
                }
            }
            j += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
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
    fn orbit_and_stabilizer() {
        let g = gl23();
        let f = g.field().clone();
        let e1 = Vector::unit(&f, 2, 0);
        assert_eq!(g.orbit(&e1).len(), 8);
        assert_eq!(g.stabilizer(&e1).unwrap().order().unwrap(), 6);
        let line = Subspace::span_vectors(&f, 2, &[e1]);
        assert_eq!(g.line_stabilizer(&line).unwrap().order().unwrap(), 12);
        assert_eq!(g.orbits().len(), 1);
        assert_eq!(g.line_orbits().len(), 1);
    }

    #[test]
    fn scalars() {
        let f5 = make_field(5, 1).unwrap();
        let z = MatrixGroup::scalars(&f5, 2);
        assert_eq!(z.order().unwrap(), 4);
        assert_eq!(z.orbit(&Vector::unit(&f5, 2, 0)).len(), 4);
        assert_eq!(z.scalar_subgroup_order().unwrap(), 4);
        let t = MatrixGroup::trivial(&f5, 2).with_scalars().unwrap();
        assert_eq!(t.order().unwrap(), 4);
        let g = gl23();
        assert_eq!(g.with_scalars().unwrap().generators().len(), 2);
    }
}

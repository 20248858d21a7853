use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matlin::{Matrix, Space};

/// Largest group order the chain will build.
pub const ORDER_CAP: u64 = 10_000_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    /// Index of the base vector; always a standard basis vector.
    base: u32,
    coord: usize,
    gens: Vec<Matrix>,
    gens_inv: Vec<Matrix>,
    orbit: Vec<u32>,
    slot: Vec<u32>,
    reps: Vec<Matrix>,
    reps_inv: Vec<Matrix>,
}

impl Level {
    fn position(&self, point: u32) -> Option<usize> {
        match self.slot[point as usize] {
            NONE => None,
            s => Some(s as usize),
        }
    }
}

/// A stabilizer chain for a matrix group acting on vectors, built by deterministic
/// Schreier-Sims. Base points are standard basis vectors.
#[derive(Clone, Debug)]
pub struct StabChain {
    space: Space,
    levels: Vec<Level>,
    target: Option<u64>,
    cap: u64,
    done: bool,
}

impl StabChain {
    pub fn new(space: &Space) -> Self {
        StabChain {
            space: space.clone(),
            levels: Vec::new(),
            target: None,
            cap: ORDER_CAP,
            done: false,
        }
    }

    /// A chain that stops growing once its order reaches `target`. The caller guarantees the
    /// generated group has exactly that order.
    pub fn with_target(space: &Space, target: u64) -> Self {
        let mut c = StabChain::new(space);
        c.target = Some(target);
        c.done = target == 1;
        c
    }

    pub fn build(space: &Space, gens: &[Matrix]) -> Result<Self> {
        let mut c = StabChain::new(space);
        for g in gens {
            c.add(g)?;
        }
        Ok(c)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.space.field()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Generators of the whole group: the ones kept at the top level.
    pub fn generators(&self) -> Vec<Matrix> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Adds `g` to the group. Returns whether the group grew.
    pub fn add(&mut self, g: &Matrix) -> Result<bool> {
        if self.done {
            return Ok(false);
        }
        let before = self.order();
        self.extend(0, g.clone())?;
        Ok(self.order() != before)
    }

    pub fn is_complete_for_target(&self) -> bool {
        self.done
    }

    fn image(&self, g: &Matrix, coord: usize) -> u32 {
        self.space.encode(&g.column(coord))
    }

    /// Strips `g` through the levels from `from` on. Returns the residue and the level it
    /// stopped at.
    fn strip(&self, from: usize, mut g: Matrix) -> (Matrix, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = self.image(&g, level.coord);
            match level.position(b) {
                Some(k) => g = level.reps_inv[k].mul_unchecked(&g),
                None => return (g, i),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    pub fn contains(&self, g: &Matrix) -> bool {
        let (h, _) = self.strip(0, g.clone());
        h.is_identity()
    }

    fn new_level(&mut self, g: &Matrix) {
        let n = self.space.dim();
        let coord = (0..n)
            .find(|&j| (0..n).any(|i| g.get(i, j) != if i == j { 1 } else { 0 }))
            .expect("non-identity element moves a basis vector");
        let base = self.space.field().q().pow(coord as u32);
        let id = Matrix::identity(self.space.field(), n);
        let mut slot = vec![NONE; self.space.size() as usize];
        slot[base as usize] = 0;
        self.levels.push(Level {
            base,
            coord,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![id.clone()],
            reps_inv: vec![id],
        });
    }

    fn check_order(&mut self) -> Result<()> {
        let order = self.order();
        if order > self.cap {
            return Err(Error::CapExceeded(format!("order exceeds {}", self.cap)));
        }
        if self.target == Some(order) {
            self.done = true;
        }
        Ok(())
    }

    fn extend(&mut self, level: usize, g: Matrix) -> Result<()> {
        if self.done {
            return Ok(());
        }
        let (residue, _) = self.strip(level, g.clone());
        if residue.is_identity() {
            return Ok(());
        }
        if level == self.levels.len() {
            self.new_level(&g);
        }
        let g_inv = g.inverse()?;
        let new_gen = {
            let l = &mut self.levels[level];
            l.gens.push(g);
            l.gens_inv.push(g_inv);
            l.gens.len() - 1
        };
        let old_len = self.levels[level].orbit.len();
        for j in 0..old_len {
            self.schreier_step(level, j, new_gen)?;
            if self.done {
                return Ok(());
            }
        }
        let mut j = old_len;
        while j < self.levels[level].orbit.len() {
            for s in 0..self.levels[level].gens.len() {
                self.schreier_step(level, j, s)?;
                if self.done {
                    return Ok(());
                }
            }
            j += 1;
        }
        Ok(())
    }

    /// Handles orbit point `j` under generator `s`: either the image is new and joins the
    /// orbit, or the Schreier generator is pushed one level down.
    fn schreier_step(&mut self, level: usize, j: usize, s: usize) -> Result<()> {
        let l = &self.levels[level];
        let gen = &l.gens[s];
        let u = &l.reps[j];
        let su = gen.mul_unchecked(u);
        let c = self.image(&su, l.coord);
        match l.position(c) {
            None => {
                let su_inv = l.reps_inv[j].mul_unchecked(&l.gens_inv[s]);
                let l = &mut self.levels[level];
                l.slot[c as usize] = l.orbit.len() as u32;
                l.orbit.push(c);
                l.reps.push(su);
                l.reps_inv.push(su_inv);
                self.check_order()
            }
            Some(k) => {
                let h = l.reps_inv[k].mul_unchecked(&su);
                if h.is_identity() {
                    return Ok(());
                }
                self.extend(level + 1, h)
            }
        }
    }

    /// Every element, as products of transversal elements.
    pub fn elements(&self) -> Vec<Matrix> {
        let n = self.space.dim();
        let mut out = vec![Matrix::identity(self.space.field(), n)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.reps.len());
            for u in &level.reps {
                for h in &out {
                    next.push(u.mul_unchecked(h));
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn gl23_order_and_membership() {
        let f = make_field(3, 1).unwrap();
        let space = Space::new(&f, 2);
        let a = Matrix::from_rows(&f, &[vec![2, 0], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![2, 1], vec![2, 0]]).unwrap();
        let c = StabChain::build(&space, &[a.clone(), b]).unwrap();
        assert_eq!(c.order(), 48);
        assert_eq!(c.elements().len(), 48);
        let t = Matrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(c.contains(&t));
        let s = StabChain::build(&space, &[t]).unwrap();
        assert_eq!(s.order(), 3);
        assert!(!s.contains(&a));
    }

    #[test]
    fn target_stops_early() {
        let f = make_field(3, 1).unwrap();
        let space = Space::new(&f, 2);
        let a = Matrix::from_rows(&f, &[vec![2, 0], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![2, 1], vec![2, 0]]).unwrap();
        let mut c = StabChain::with_target(&space, 48);
        c.add(&a).unwrap();
        c.add(&b).unwrap();
        assert!(c.is_complete_for_target());
        assert_eq!(c.order(), 48);
    }
}

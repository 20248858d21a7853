use std::hash::Hash;
use std::marker::PhantomData;

use crate::gf::Code;
use crate::matlin::{Matrix, Space, Subspace};

/// Matrices acting on some set of points.
pub trait Action {
    type Point: Clone + Eq + Hash;

    fn act(&self, g: &Matrix, p: &Self::Point) -> Self::Point;
}

/// Vectors, by enumeration index.
pub struct OnVectors<'a>(pub &'a Space);

impl Action for OnVectors<'_> {
    type Point = u32;

    fn act(&self, g: &Matrix, p: &u32) -> u32 {
        let v = self.0.decode(*p);
        let mut out = vec![0; v.len()];
        g.apply_codes(&v, &mut out);
        self.0.encode(&out)
    }
}

/// Lines, by the index of their normalized representative.
pub struct OnLines<'a>(pub &'a Space);

impl Action for OnLines<'_> {
    type Point = u32;

    fn act(&self, g: &Matrix, p: &u32) -> u32 {
        let v = self.0.decode(*p);
        let mut out = vec![0; v.len()];
        g.apply_codes(&v, &mut out);
        self.0.normalize_codes(&mut out);
        self.0.encode(&out)
    }
}

pub struct OnSubspaces;

impl Action for OnSubspaces {
    type Point = Subspace;

    fn act(&self, g: &Matrix, p: &Subspace) -> Subspace {
        p.image(g)
    }
}

/// Cosets `v + U` of a fixed subspace `U`, each given by its canonical representative.
/// Only meaningful for elements that leave `U` invariant.
pub struct OnCosets<'a>(pub &'a Subspace);

impl Action for OnCosets<'_> {
    type Point = Vec<Code>;

    fn act(&self, g: &Matrix, p: &Vec<Code>) -> Vec<Code> {
        let mut out = vec![0; p.len()];
        g.apply_codes(p, &mut out);
        self.0.reduce(&out)
    }
}

/// Any action given by a closure.
pub struct FnAction<P, F> {
    f: F,
    _point: PhantomData<fn(&P) -> P>,
}

impl<P, F: Fn(&Matrix, &P) -> P> FnAction<P, F> {
    pub fn new(f: F) -> Self {
        FnAction { f, _point: PhantomData }
    }
}

impl<P: Clone + Eq + Hash, F: Fn(&Matrix, &P) -> P> Action for FnAction<P, F> {
    type Point = P;

    fn act(&self, g: &Matrix, p: &P) -> P {
        (self.f)(g, p)
    }
}

use crate::error::Result;
use crate::grp::chain::StabChain;
use crate::grp::MatrixGroup;
use crate::matlin::Matrix;

/// Smallest normal subgroup of `g` containing `elements`.
pub fn normal_closure(g: &MatrixGroup, elements: &[Matrix]) -> Result<MatrixGroup> {
    let mut chain = StabChain::new(&g.space());
    let mut queue = Vec::new();
    for x in elements {
        if chain.add(x)? {
            queue.push(x.clone());
        }
    }
    let conj: Vec<(Matrix, Matrix)> = g
        .generators()
        .iter()
        .map(|s| Ok((s.clone(), s.inverse()?)))
        .collect::<Result<_>>()?;
    while let Some(h) = queue.pop() {
        for (s, si) in &conj {
            let c = si.mul_unchecked(&h).mul_unchecked(s);
            if chain.add(&c)? {
                queue.push(c);
            }
        }
    }
    Ok(MatrixGroup::from_chain(chain))
}

/// `[G, G]`, the normal closure of the generator commutators.
pub fn derived_subgroup(g: &MatrixGroup) -> Result<MatrixGroup> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b)?;
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

/// `G, G', G'', ...` down to the first repeated term, which is listed once.
pub fn derived_series(g: &MatrixGroup) -> Result<Vec<MatrixGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = derived_subgroup(last)?;
        if next.order()? == last.order()? {
            return Ok(series);
        }
        series.push(next);
    }
}

pub fn perfect_residual(g: &MatrixGroup) -> Result<MatrixGroup> {
    Ok(derived_series(g)?.pop().expect("nonempty"))
}

pub fn is_perfect(g: &MatrixGroup) -> Result<bool> {
    Ok(derived_subgroup(g)?.order()? == g.order()?)
}

pub fn is_solvable(g: &MatrixGroup) -> Result<bool> {
    Ok(perfect_residual(g)?.order()? == 1)
}

/// `p` does not divide the order of the perfect residual.
pub fn is_p_solvable(g: &MatrixGroup, p: u32) -> Result<bool> {
    Ok(perfect_residual(g)?.order()? % p as u64 != 0)
}

//! Brute-force reference implementations, used to cross-check the chain-based algorithms on
//! small groups.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::grp::{normal_closure, MatrixGroup};
use crate::matlin::{Matrix, Space};

/// Largest group the naive routines will enumerate.
pub const NAIVE_CAP: usize = 20_000;

/// Largest space the naive base searches accept.
pub const NAIVE_SPACE_CAP: u32 = 27;

/// All elements, by closing the generators under multiplication.
pub fn closure(g: &MatrixGroup) -> Result<Vec<Matrix>> {
    let id = Matrix::identity(g.field(), g.dim());
    let mut seen: HashSet<Matrix> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut j = 0;
    while j < out.len() {
        for s in g.generators() {
            let x = out[j].mul_unchecked(s);
            if seen.insert(x.clone()) {
                if out.len() >= NAIVE_CAP {
                    return Err(Error::CapExceeded(format!("closure beyond {NAIVE_CAP} elements")));
                }
                out.push(x);
            }
        }
        j += 1;
    }
    Ok(out)
}

pub fn closure_order(g: &MatrixGroup) -> Result<u64> {
    Ok(closure(g)?.len() as u64)
}

fn small_space(g: &MatrixGroup) -> Result<Space> {
    let space = g.space();
    if space.size() > NAIVE_SPACE_CAP {
        return Err(Error::CapExceeded(format!("naive search needs |V| <= {NAIVE_SPACE_CAP}")));
    }
    Ok(space)
}

/// First tuple in lexicographic order of `points` whose bits meet every mask's complement,
/// searching lengths `0, 1, ...` up to `max_len`.
fn first_escaping_tuple(points: &[u32], bit: impl Fn(u32) -> u32, masks: &[u32], max_len: usize) -> Option<Vec<u32>> {
    for len in 0..=max_len {
        let mut idx = vec![0usize; len];
        loop {
            let m = idx.iter().fold(0u32, |acc, &i| acc | bit(points[i]));
            if masks.iter().all(|&f| f & m != m) {
                return Some(idx.iter().map(|&i| points[i]).collect());
            }
            let mut k = len;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < points.len() {
                    break;
                }
                idx[k] = 0;
            }
            if len == 0 || idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    None
}

/// `b(G)` and the least base, by checking every tuple against every element.
pub fn naive_b(g: &MatrixGroup) -> Result<(usize, Vec<u32>)> {
    let space = small_space(g)?;
    let elements = closure(g)?;
    let perms: Vec<Vec<u32>> = elements
        .iter()
        .filter(|m| !m.is_identity())
        .map(|m| space.permutation(m))
        .collect();
    let masks: Vec<u32> = perms
        .iter()
        .map(|p| (1..space.size()).filter(|&i| p[i as usize] == i).fold(0, |acc, i| acc | (1 << i)))
        .collect();
    let points: Vec<u32> = space.nonzero().collect();
    let t = first_escaping_tuple(&points, |i| 1 << i, &masks, g.dim())
        .ok_or_else(|| Error::RedFlag("no base found by naive search".into()))?;
    Ok((t.len(), t))
}

/// `b*(G)` and the least strong base of line representatives.
pub fn naive_b_star(g: &MatrixGroup) -> Result<(usize, Vec<u32>)> {
    let space = small_space(g)?;
    let elements = closure(g)?;
    let lines = space.line_reps();
    let slot: HashMap<u32, u32> = lines.iter().enumerate().map(|(k, &l)| (l, k as u32)).collect();
    let masks: Vec<u32> = elements
        .iter()
        .filter(|m| !m.is_scalar())
        .map(|m| {
            let p = space.permutation(m);
            lines
                .iter()
                .enumerate()
                .filter(|&(_, &l)| space.normalize(p[l as usize]) == l)
                .fold(0, |acc, (k, _)| acc | (1 << k))
        })
        .collect();
    let t = first_escaping_tuple(&lines, |l| 1 << slot[&l], &masks, g.dim() + 1)
        .ok_or_else(|| Error::RedFlag("no strong base found by naive search".into()))?;
    Ok((t.len(), t))
}

/// Conjugacy class representatives, the least element of each class by data order.
pub fn class_representatives(g: &MatrixGroup) -> Result<Vec<Matrix>> {
    let elements = closure(g)?;
    let conj: Vec<(Matrix, Matrix)> = g
        .generators()
        .iter()
        .map(|s| Ok((s.clone(), s.inverse()?)))
        .collect::<Result<_>>()?;
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut reps = Vec::new();
    for x in elements {
        if seen.contains(&x) {
            continue;
        }
        seen.insert(x.clone());
        let mut class = vec![x];
        let mut j = 0;
        while j < class.len() {
            for (s, si) in &conj {
                let y = si.mul_unchecked(&class[j]).mul_unchecked(s);
                if seen.insert(y.clone()) {
                    class.push(y);
                }
            }
            j += 1;
        }
        reps.push(class.into_iter().min_by(|a, b| a.data().cmp(b.data())).expect("nonempty"));
    }
    Ok(reps)
}

/// Orders of the factors of a chief series, built by repeatedly adjoining the smallest
/// normal closure of one more element.
pub fn chief_factor_orders(g: &MatrixGroup) -> Result<Vec<u64>> {
    let reps = class_representatives(g)?;
    let total = g.order()?;
    let mut n = MatrixGroup::trivial(g.field(), g.dim());
    let mut factors = Vec::new();
    while n.order()? < total {
        let mut best: Option<MatrixGroup> = None;
        for x in &reps {
            if n.contains(x)? {
                continue;
            }
            let mut seed = n.generators().to_vec();
            seed.push(x.clone());
            let m = normal_closure(g, &seed)?;
            if best.as_ref().map_or(true, |b| m.order().unwrap_or(u64::MAX) < b.order().unwrap_or(u64::MAX)) {
                best = Some(m);
            }
        }
        let m = best.expect("a proper normal subgroup has an element outside it");
        factors.push(m.order()? / n.order()?);
        n = m;
    }
    Ok(factors)
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

/// Every chief factor is a `p`-group or has order prime to `p`.
pub fn naive_is_p_solvable(g: &MatrixGroup, p: u32) -> Result<bool> {
    let p = p as u64;
    Ok(chief_factor_orders(g)?
        .into_iter()
        .all(|f| is_power_of(f, p) || f % p != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn gl23_reference_values() {
        let f = make_field(3, 1).unwrap();
        let a = Matrix::from_rows(&f, &[vec![2, 0], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![2, 1], vec![2, 0]]).unwrap();
        let g = MatrixGroup::new(&f, 2, vec![a, b]).unwrap();
        assert_eq!(closure_order(&g).unwrap(), 48);
        assert_eq!(naive_b(&g).unwrap().0, 2);
        assert_eq!(naive_b_star(&g).unwrap().0, 3);
        let mut chief = chief_factor_orders(&g).unwrap();
        chief.sort();
        assert_eq!(chief, vec![2, 2, 3, 4]);
        assert!(naive_is_p_solvable(&g, 3).unwrap());
        assert_eq!(class_representatives(&g).unwrap().len(), 8);
    }
}

use std::sync::Arc;

use proptest::prelude::*;

use linbase::basesize::{b_exact, b_star_exact, verify_base, BaseKind};
use linbase::catalog::GroupFile;
use linbase::gf::{make_field, Code, FieldSpec};
use linbase::grp::{is_p_solvable, MatrixGroup};
use linbase::matlin::Matrix;
use linbase::oracle::{closure_order, naive_b, naive_b_star, naive_is_p_solvable};

const FIELDS: [(u32, u32); 8] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)];

fn field(i: usize) -> Arc<FieldSpec> {
    let (p, k) = FIELDS[i];
    make_field(p, k).unwrap()
}

/// A small field, a dimension keeping `|V| <= 125`, and raw generator entries.
fn small_group() -> impl Strategy<Value = MatrixGroup> {
    (0usize..4, 1usize..=3)
        .prop_flat_map(|(fi, n)| {
            let n = if fi == 3 { n.min(2) } else { n };
            let q = FIELDS[fi].0.pow(FIELDS[fi].1) as Code;
            (Just(fi), Just(n), prop::collection::vec(prop::collection::vec(0..q, n * n), 1..=3))
        })
        .prop_filter_map("singular generator", |(fi, n, raw)| {
            let f = field(fi);
            let gens: Vec<Matrix> = raw.into_iter().map(|d| Matrix::new(&f, n, n, d).unwrap()).collect();
            if gens.iter().any(|m| !m.is_invertible()) {
                return None;
            }
            MatrixGroup::new(&f, n, gens).ok()
        })
}

proptest! {
    #[test]
    fn field_axioms(fi in 0usize..FIELDS.len(), a in 0u16..16, b in 0u16..16, c in 0u16..16) {
        let f = field(fi);
        let q = f.q() as u16;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        for e in 0..f.k() {
            prop_assert_eq!(f.frobenius_code(f.mul(a, b), e), f.mul(f.frobenius_code(a, e), f.frobenius_code(b, e)));
            prop_assert_eq!(f.frobenius_code(f.add(a, b), e), f.add(f.frobenius_code(a, e), f.frobenius_code(b, e)));
        }
    }

    #[test]
    fn digits_round_trip(fi in 0usize..FIELDS.len(), a in 0u16..16) {
        let f = field(fi);
        let a = a % f.q() as u16;
        prop_assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_order_matches_closure(g in small_group()) {
        let order = g.order().unwrap();
        prop_assume!(order <= 20_000);
        prop_assert_eq!(closure_order(&g).unwrap(), order);
    }

    #[test]
    fn orbit_stabilizer(g in small_group()) {
        let order = g.order().unwrap();
        for orbit in g.orbits() {
            let stab = g.stabilizer_of_index(orbit[0]).unwrap().order().unwrap();
            prop_assert_eq!(stab * orbit.len() as u64, order);
        }
    }

    #[test]
    fn exact_bases_verify_and_nest(g in small_group()) {
        let (b, cert) = b_exact(&g).unwrap();
        let (bs, strong) = b_star_exact(&g).unwrap();
        prop_assert!(verify_base(&g, &cert.vectors, BaseKind::Plain).unwrap());
        prop_assert!(verify_base(&g, &strong.vectors, BaseKind::Strong).unwrap());
        if g.is_scalar_group() {
            prop_assert_eq!(bs, 0);
        } else {
            prop_assert!(b <= bs && bs <= b + 1, "b = {}, b* = {}", b, bs);
        }
        let size = g.space().size() as f64;
        prop_assert!((g.order().unwrap() as f64).ln() <= b as f64 * size.ln() + 1e-9);
    }

    #[test]
    fn pruned_search_matches_naive(g in small_group()) {
        prop_assume!(g.space().size() <= 27 && g.order().unwrap() <= 2000);
        let space = g.space();
        let (b, cert) = b_exact(&g).unwrap();
        let (nb, nt) = naive_b(&g).unwrap();
        prop_assert_eq!(b, nb);
        prop_assert_eq!(cert.vectors.iter().map(|v| space.index(v)).collect::<Vec<_>>(), nt);
        let (bs, strong) = b_star_exact(&g).unwrap();
        let (nbs, nts) = naive_b_star(&g).unwrap();
        prop_assert_eq!(bs, nbs);
        prop_assert_eq!(strong.vectors.iter().map(|v| space.index(v)).collect::<Vec<_>>(), nts);
    }

    #[test]
    fn p_solvability_matches_chief_factors(g in small_group()) {
        prop_assume!(g.order().unwrap() <= 2000);
        let p = g.field().p();
        prop_assert_eq!(is_p_solvable(&g, p).unwrap(), naive_is_p_solvable(&g, p).unwrap());
    }

    #[test]
    fn group_files_round_trip(g in small_group()) {
        let file = GroupFile::from_group("random", &g, None);
        let text = file.render();
        let back = GroupFile::parse(&text, "memory").unwrap();
        prop_assert_eq!(back.render(), text);
        let rebuilt = back.to_group().unwrap().group;
        prop_assert_eq!(rebuilt.generators(), g.generators());
    }
}

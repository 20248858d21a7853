use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basesize::{b_exact, b_star_exact, has_regular_orbit, verify_base, BaseKind};
use crate::catalog::corpus::{in_pool, Construction, LoadedEntry};
use crate::catalog::report::{Row, Status, VerificationReport};
use crate::construct::{
    basis_condition_holds, central_tensor_wreath, find_special_base, imprimitive_base, log_bound, log_margin,
    semilinear_base, special_basis_report, strong_from_base, t_of_q, tensor_base, tensor_product_bound,
    BasisFamily, SpecialCase, LOG_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::grp::{is_p_solvable, is_perfect, MatrixGroup};
use crate::matlin::Vector;
use crate::oracle::{closure_order, naive_b, naive_b_star, naive_is_p_solvable, NAIVE_CAP, NAIVE_SPACE_CAP};

/// Groups this small are also checked against exhaustive search for `b` and `b*`.
pub const NAIVE_BASE_ORDER_CAP: u64 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    StrongBound,
    OrderBound,
    Sharpness,
    SpecialBasis,
    StrongFromSpecial,
    Semilinear,
    Constructions,
    RegularOrbit,
    Oracle,
    Structure,
    PSolvability,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::StrongBound,
        Suite::OrderBound,
        Suite::Sharpness,
        Suite::SpecialBasis,
        Suite::StrongFromSpecial,
        Suite::Semilinear,
        Suite::Constructions,
        Suite::RegularOrbit,
        Suite::Oracle,
        Suite::Structure,
        Suite::PSolvability,
    ];

    /// The name accepted by `verify`.
    pub fn cli_name(self) -> &'static str {
        match self {
            Suite::StrongBound => "thm1",
            Suite::OrderBound => "pw",
            Suite::Sharpness => "sharpness",
            Suite::SpecialBasis => "thm3",
            Suite::StrongFromSpecial => "cor33",
            Suite::Semilinear => "gamma",
            Suite::Constructions => "constructions",
            Suite::RegularOrbit => "lemma-regular",
            Suite::Oracle => "oracle",
            Suite::Structure => "structure",
            Suite::PSolvability => "p-solvability",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            Suite::StrongBound => "strong-bound",
            Suite::OrderBound => "order-bound",
            Suite::Sharpness => "order-exceeds-square",
            Suite::SpecialBasis => "special-basis",
            Suite::StrongFromSpecial => "strong-from-special",
            Suite::Semilinear => "semilinear",
            Suite::Constructions => "assembly",
            Suite::RegularOrbit => "regular-orbit",
            Suite::Oracle => "naive",
            Suite::Structure => "invariants",
            Suite::PSolvability => "chief-factors",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.cli_name() == s || x.alias() == s)
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::StrongBound => "b*(G Z) <= t(q) for p-solvable completely reducible groups",
            Suite::OrderBound => "|G| <= 24^(-1/3) |V|^(d-1) in the log domain",
            Suite::Sharpness => "a group over GF(3) with |G| > |V|^2",
            Suite::SpecialBasis => "special bases of V for n = 2, q >= 5 and n = 3, q in {3, 4}",
            Suite::StrongFromSpecial => "special bases of length t(q) turn into strong bases",
            Suite::Semilinear => "gamma search for semilinear groups over non-prime fields",
            Suite::Constructions => "imprimitive and tensor assemblies verify as bases",
            Suite::RegularOrbit => "b(G) <= 2 when a quasisimple normal subgroup has a regular orbit",
            Suite::Oracle => "stabilizer chain and pruned search agree with brute force",
            Suite::Structure => "orbit-stabilizer, b <= b* <= b + 1 and |G| <= |V|^b",
            Suite::PSolvability => "perfect-residual test agrees with chief factor orders",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

/// Runs one suite over the corpus. Rows follow corpus order.
pub fn run_suite(suite: Suite, corpus: &[LoadedEntry], jobs: usize) -> VerificationReport {
    let name = suite.cli_name();
    let mut rows: Vec<Row> = in_pool(jobs, || {
        corpus
            .par_iter()
            .map(|e| {
                let g = e.group();
                let row = Row::new(name, e.name(), g);
                let out = match suite {
                    Suite::StrongBound => strong_bound(e, row.clone()),
                    Suite::OrderBound => order_bound(e, row.clone()),
                    Suite::Sharpness => sharpness(e, row.clone()),
                    Suite::SpecialBasis => special_basis(e, row.clone()),
                    Suite::StrongFromSpecial => strong_from_special(e, row.clone()),
                    Suite::Semilinear => semilinear(e, row.clone()),
                    Suite::Constructions => constructions(e, row.clone()),
                    Suite::RegularOrbit => regular_orbit(e, corpus, row.clone()),
                    Suite::Oracle => oracle(e, row.clone()),
                    Suite::Structure => structure(e, row.clone()),
                    Suite::PSolvability => p_solvability(e, row.clone()),
                };
                out.unwrap_or_else(|err| Some(row.failed(&err)))
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    if suite == Suite::Sharpness {
        rows.extend(sharpness_summary(&rows));
    }
    VerificationReport {
        suite: name.to_string(),
        rows,
    }
}

pub fn run_all(corpus: &[LoadedEntry], jobs: usize) -> Vec<VerificationReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, corpus, jobs)).collect()
}

type RowResult = Result<Option<Row>>;

fn pass_if(ok: bool, row: Row, detail: String) -> RowResult {
    Ok(Some(row.with(if ok { Status::Pass } else { Status::Fail }, detail)))
}

fn skip(row: Row, why: &str) -> RowResult {
    Ok(Some(row.with(Status::Skip, why)))
}

fn show(vs: &[Vector]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format!("{:?}", v.entries())).collect();
    format!("({})", parts.join(", "))
}

fn strong_bound(e: &LoadedEntry, mut row: Row) -> RowResult {
    if !e.entry.claims.conforming() {
        return skip(row, "not p-solvable and completely reducible");
    }
    let g = e.group().with_scalars()?;
    let t = t_of_q(g.field().q())?;
    let (b_star, cert) = b_star_exact(&g)?;
    row.order = Some(g.order()?);
    row.b_star = Some(b_star);
    row.bound = Some(t as f64);
    pass_if(b_star <= t, row, format!("with scalars; strong base {}", show(&cert.vectors)))
}

fn order_bound(e: &LoadedEntry, mut row: Row) -> RowResult {
    if !e.entry.claims.conforming() {
        return skip(row, "not p-solvable and completely reducible");
    }
    let order = e.group().order()?;
    let margin = log_margin(order, row.v_size, 1);
    row.bound = Some(log_bound(row.v_size, 1).exp());
    pass_if(margin >= -LOG_TOLERANCE, row, format!("log margin {margin:.6}"))
}

fn sharpness(e: &LoadedEntry, row: Row) -> RowResult {
    let q = e.group().field().q();
    if q > 3 || !e.entry.claims.conforming() {
        return Ok(None);
    }
    let order = e.group().order()? as u128;
    let square = (row.v_size as u128).pow(2);
    let status = if order > square { Status::Pass } else { Status::Skip };
    Ok(Some(row.with(status, format!("|G| = {order}, |V|^2 = {square}"))))
}

fn sharpness_summary(rows: &[Row]) -> Vec<Row> {
    let witness = |q: u32| rows.iter().find(|r| r.q == q && r.status == Status::Pass).map(|r| r.group.clone());
    let summary = |q: u32, status: Status, detail: String| Row {
        suite: Suite::Sharpness.cli_name().to_string(),
        group: format!("summary q={q}"),
        status,
        q,
        n: 0,
        order: None,
        v_size: 0,
        b: None,
        b_star: None,
        bound: None,
        detail,
    };
    let mut out = Vec::new();
    out.push(match witness(3) {
        Some(name) => summary(3, Status::Pass, format!("witness {name}")),
        None => summary(3, Status::Fail, "no group over GF(3) with |G| > |V|^2".into()),
    });
    out.push(match witness(2) {
        Some(name) => summary(2, Status::Pass, format!("witness {name}")),
        None => summary(2, Status::Skip, "no witness over GF(2) within the order and space caps".into()),
    });
    out
}

fn basis_family(g: &MatrixGroup) -> Option<BasisFamily> {
    match (g.dim(), g.field().q()) {
        (2, q) if q >= 5 => Some(BasisFamily::Plane),
        (3, 3 | 4) => Some(BasisFamily::Solid),
        _ => None,
    }
}

fn special_basis(e: &LoadedEntry, row: Row) -> RowResult {
    let g = e.group().with_scalars()?;
    let Some(family) = basis_family(&g) else {
        return Ok(None);
    };
    let report = special_basis_report(&g, family)?;
    if !report.hypothesis_failures.is_empty() {
        return skip(row, &report.hypothesis_failures.join("; "));
    }
    if report.red_flag {
        return Ok(Some(row.with(Status::RedFlag, "conforming group without a special basis")));
    }
    let case = report.which.ok_or_else(|| Error::RedFlag("no special basis reported".into()))?;
    let ok = basis_condition_holds(&g, case, &report.witness)?;
    pass_if(ok, row, format!("with scalars; case {} basis {}", case.label(), show(&report.witness)))
}

fn strong_from_special(e: &LoadedEntry, mut row: Row) -> RowResult {
    if !e.entry.claims.conforming() {
        return skip(row, "not p-solvable and completely reducible");
    }
    let g = e.group().with_scalars()?;
    if g.field().q() == 2 {
        return skip(row, "GF(2) has no special bases");
    }
    let t = t_of_q(g.field().q())?;
    // Scanned bases come first; any other special base of length t(q) after.
    let scanned = match basis_family(&g) {
        Some(family) => {
            let r = special_basis_report(&g, family)?;
            match r.which {
                Some(case) if case != SpecialCase::Transvection => {
                    let tuple = r.witness[..t].to_vec();
                    verify_base(&g, &tuple, BaseKind::Plain)?.then_some((case, tuple))
                }
                _ => None,
            }
        }
        None => None,
    };
    let found = match scanned {
        Some(x) => Some(x),
        None => find_special_base(&g)?.map(|s| (s.case, s.vectors)),
    };
    let Some((case, tuple)) = found else {
        return skip(row, "no special base of length t(q)");
    };
    let cert = strong_from_base(&g, &tuple, case)?;
    row.b_star = Some(cert.len());
    row.bound = Some(t as f64);
    pass_if(
        cert.verified && cert.len() <= t,
        row,
        format!("with scalars; case {} base {} -> strong {}", case.label(), show(&tuple), show(&cert.vectors)),
    )
}

fn semilinear(e: &LoadedEntry, mut row: Row) -> RowResult {
    let Some(s) = &e.built.semilinear else {
        return Ok(None);
    };
    if s.extension().top().q() < 8 || s.degree() == 1 || s.dim() > 2 {
        return skip(row, "top field too small for the gamma search");
    }
    let r = semilinear_base(s)?;
    row.b = Some(r.certificate.len());
    row.bound = Some(r.bound as f64);
    let top = s.extension().top().q() as u64;
    pass_if(
        r.certificate.verified && r.excluded as u64 <= r.bound && r.bound < top,
        row,
        format!(
            "case {} gamma {} excluded {} of {top} after {} elements; base {}",
            r.case.label(),
            r.gamma,
            r.excluded,
            r.scanned,
            show(&r.certificate.vectors)
        ),
    )
}

fn constructions(e: &LoadedEntry, mut row: Row) -> RowResult {
    let Some(c) = &e.entry.construction else {
        return Ok(None);
    };
    let g = e.group();
    match c {
        Construction::Imprimitive { block_dim } => {
            let r = imprimitive_base(g, *block_dim)?;
            row.b = Some(r.certificate.len());
            let strong = r.strong.as_ref().map_or("none".to_string(), |s| show(&s.vectors));
            pass_if(
                r.certificate.verified,
                row,
                format!(
                    "blocks of dim {block_dim}, block case {}, base {}, strong {strong}",
                    r.block_case.label(),
                    show(&r.certificate.vectors)
                ),
            )
        }
        Construction::Tensor { factor, case } => {
            let h = factor.build()?.group;
            let w = central_tensor_wreath(&h)?;
            if w.generators() != g.generators() {
                return Err(Error::RedFlag("group is not the tensor wreath of its factor".into()));
            }
            let r = tensor_base(&h, *case, None)?;
            row.b = Some(r.certificate.len());
            let ok = r.certificate.verified && verify_base(g, &r.certificate.vectors, BaseKind::Plain)?;
            let alpha = r.alpha.map_or(String::new(), |a| format!(" alpha {a}"));
            pass_if(ok, row, format!("tensor {case:?}{alpha}, base {}", show(&r.certificate.vectors)))
        }
        Construction::TensorProduct { left, right } => {
            let (l, r) = (left.build()?.group, right.build()?.group);
            let bound = tensor_product_bound(&l, &r)?;
            row.b_star = Some(bound.product);
            row.bound = Some(bound.left.max(bound.right) as f64);
            pass_if(
                bound.holds,
                row,
                format!("b* of factors {} and {}, product {}", bound.left, bound.right, bound.product),
            )
        }
    }
}

fn regular_orbit(e: &LoadedEntry, corpus: &[LoadedEntry], mut row: Row) -> RowResult {
    let Some(n_name) = &e.entry.quasisimple_normal else {
        return Ok(None);
    };
    let n = corpus
        .iter()
        .find(|c| c.name() == n_name)
        .ok_or_else(|| Error::Precondition(format!("unknown normal subgroup {n_name}")))?
        .group();
    let g = e.group();
    let inside = n.generators().iter().map(|m| g.contains(m)).collect::<Result<Vec<_>>>()?;
    let mut normal = true;
    for x in g.generators() {
        let xi = x.inverse()?;
        for m in n.generators() {
            normal &= n.contains(&xi.mul(m)?.mul(x)?)?;
        }
    }
    if !inside.iter().all(|&b| b) || !normal || !is_perfect(n)? {
        return Err(Error::RedFlag(format!("{n_name} is not a perfect normal subgroup")));
    }
    let Some(v) = has_regular_orbit(n)? else {
        return skip(row, "normal subgroup has no regular orbit");
    };
    let (b, cert) = b_exact(g)?;
    row.b = Some(b);
    row.bound = Some(2.0);
    pass_if(
        b <= 2,
        row,
        format!("{n_name} regular on {:?}; base {}", v.entries(), show(&cert.vectors)),
    )
}

fn oracle(e: &LoadedEntry, mut row: Row) -> RowResult {
    let g = e.group();
    let order = g.order()?;
    if order > NAIVE_CAP as u64 {
        return skip(row, "above the naive closure cap");
    }
    let naive_order = closure_order(g)?;
    if naive_order != order {
        return pass_if(false, row, format!("chain order {order}, closure {naive_order}"));
    }
    if order > NAIVE_BASE_ORDER_CAP || row.v_size > NAIVE_SPACE_CAP as u64 {
        return pass_if(true, row, format!("order {order} == closure"));
    }
    let space = g.space();
    let (b, cert) = b_exact(g)?;
    let (bs, scert) = b_star_exact(g)?;
    let (nb, nt) = naive_b(g)?;
    let (nbs, nts) = naive_b_star(g)?;
    let idx = |vs: &[Vector]| vs.iter().map(|v| space.index(v)).collect::<Vec<u32>>();
    row.b = Some(b);
    row.b_star = Some(bs);
    let ok = b == nb && bs == nbs && idx(&cert.vectors) == nt && idx(&scert.vectors) == nts;
    pass_if(
        ok,
        row,
        format!("order == closure; pruned == naive: b {b}/{nb} at {nt:?}, b* {bs}/{nbs} at {nts:?}"),
    )
}

fn structure(e: &LoadedEntry, mut row: Row) -> RowResult {
    let g = e.group();
    let order = g.order()?;
    let space = g.space();
    for orbit in g.orbits() {
        let stab = g.stabilizer_of_index(orbit[0])?.order()?;
        if stab * orbit.len() as u64 != order {
            return pass_if(false, row, format!("orbit of {} has length {} but stabilizer {stab}", orbit[0], orbit.len()));
        }
    }
    let (b, _) = b_exact(g)?;
    let (bs, _) = b_star_exact(g)?;
    row.b = Some(b);
    row.b_star = Some(bs);
    let chain_ok = if g.is_scalar_group() {
        // Scalars fix every line, so the empty tuple is already a strong base.
        bs == 0 && b == usize::from(order > 1)
    } else {
        b <= bs && bs <= b + 1
    };
    let power_ok = (order as f64).ln() <= b as f64 * (space.size() as f64).ln() + LOG_TOLERANCE;
    pass_if(
        chain_ok && power_ok,
        row,
        format!("{} orbits; b <= b* <= b + 1: {chain_ok}; |G| <= |V|^b: {power_ok}", g.orbits().len()),
    )
}

fn p_solvability(e: &LoadedEntry, row: Row) -> RowResult {
    let g = e.group();
    if g.order()? > NAIVE_CAP as u64 {
        return skip(row, "above the naive closure cap");
    }
    let p = g.field().p();
    let fast = is_p_solvable(g, p)?;
    let naive = naive_is_p_solvable(g, p)?;
    pass_if(fast == naive, row, format!("perfect residual {fast}, chief factors {naive}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_corpus;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.cli_name()), Some(s));
            assert_eq!(Suite::from_name(s.alias()), Some(s));
        }
        assert_eq!(Suite::from_name("lemma-regular"), Some(Suite::RegularOrbit));
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn every_suite_passes_on_the_shipped_corpus() {
        let corpus = build_corpus(0).unwrap();
        for s in Suite::ALL {
            let t = std::time::Instant::now();
            let r = run_suite(s, &corpus, 0);
            eprintln!("{} {:?}\n{}", s, t.elapsed(), r.to_text());
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}

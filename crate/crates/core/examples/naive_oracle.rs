//! The pruned base search and the chain order against brute force.

use linbase::basesize::{b_exact, b_star_exact};
use linbase::catalog::build_corpus;
use linbase::oracle::{closure_order, naive_b, naive_b_star, NAIVE_SPACE_CAP};

fn main() -> linbase::Result<()> {
    for e in build_corpus(0)? {
        let g = e.group();
        let order = g.order()?;
        if order > 2000 || g.space().size() > NAIVE_SPACE_CAP {
            continue;
        }
        let space = g.space();
        let idx = |c: &linbase::basesize::BaseCertificate| c.vectors.iter().map(|v| space.index(v)).collect::<Vec<_>>();
        let ((b, base), (nb, nbase)) = (b_exact(g)?, naive_b(g)?);
        let ((bs, strong), (nbs, nstrong)) = (b_star_exact(g)?, naive_b_star(g)?);
        let same = b == nb && bs == nbs && idx(&base) == nbase && idx(&strong) == nstrong;
        println!(
            "{:<18} |G| = {order:<4} closure {:<4} b {b}/{nb} b* {bs}/{nbs} {}",
            e.name(),
            closure_order(g)?,
            if same { "pruned == naive" } else { "pruned != naive" }
        );
    }
    Ok(())
}

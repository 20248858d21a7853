//! A quasisimple normal subgroup with a regular orbit forces b(G) <= 2.

use linbase::basesize::{b_exact, has_regular_orbit};
use linbase::catalog::Recipe;

fn main() -> linbase::Result<()> {
    for q in [9, 11, 49] {
        let n = Recipe::BinaryIcosahedral { q, scalars: false }.build()?.group;
        let g = Recipe::BinaryIcosahedral { q, scalars: true }.build()?.group;
        let orbit = has_regular_orbit(&n)?;
        let (b, _) = b_exact(&g)?;
        println!(
            "SL(2,5) in GL(2,{q}): regular orbit at {:?}; |G| = {} with scalars, b(G) = {b}",
            orbit.map(|v| v.entries().to_vec()),
            g.order()?
        );
    }
    Ok(())
}

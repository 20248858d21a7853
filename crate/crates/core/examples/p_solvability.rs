//! Derived series, perfect residuals and the p-solvability test, against chief factors.

use linbase::catalog::Recipe;
use linbase::grp::{derived_series, is_p_solvable, perfect_residual};
use linbase::oracle::chief_factor_orders;

fn main() -> linbase::Result<()> {
    for recipe in [
        Recipe::General { q: 3, n: 2 },
        Recipe::General { q: 2, n: 3 },
        Recipe::General { q: 5, n: 2 },
        Recipe::BinaryIcosahedral { q: 49, scalars: true },
        Recipe::BinaryIcosahedral { q: 9, scalars: true },
    ] {
        let g = recipe.build()?.group;
        let p = g.field().p();
        let series: Vec<u64> = derived_series(&g)?.iter().map(|h| h.order()).collect::<Result<_, _>>()?;
        println!(
            "{:<26} p = {p}  derived series {:?}  residual {}  p-solvable {}  chief factors {:?}",
            recipe.describe(),
            series,
            perfect_residual(&g)?.order()?,
            is_p_solvable(&g, p)?,
            chief_factor_orders(&g)?
        );
    }
    Ok(())
}

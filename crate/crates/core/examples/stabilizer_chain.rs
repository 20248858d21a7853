//! Orders, membership and orbits from the stabilizer chain.

use linbase::catalog::Recipe;
use linbase::grp::MatrixGroup;
use linbase::matlin::Matrix;

fn main() -> linbase::Result<()> {
    for recipe in [
        Recipe::General { q: 2, n: 3 },
        Recipe::General { q: 3, n: 2 },
        Recipe::General { q: 4, n: 2 },
        Recipe::SingerNormalizer { q: 5, n: 2 },
    ] {
        let g: MatrixGroup = recipe.build()?.group;
        let chain = g.chain()?;
        println!(
            "{:<18} |G| = {:<6} base {:?} orbit lengths {:?}",
            recipe.describe(),
            g.order()?,
            chain.base(),
            chain.orbit_lengths()
        );
    }
    let g = Recipe::Special { q: 3 }.build()?.group;
    let f = g.field().clone();
    let minus = Matrix::scalar(&f, 2, 2);
    let diag = Matrix::diagonal(&f, &[2, 1]);
    println!("-1 in SL(2,3): {}, diag(-1, 1) in SL(2,3): {}", g.contains(&minus)?, g.contains(&diag)?);
    println!("orbits of SL(2,3) on nonzero vectors: {:?}", g.orbits().iter().map(Vec::len).collect::<Vec<_>>());
    Ok(())
}

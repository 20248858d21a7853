//! Spinning vectors: irreducibility, socle and complete reducibility.

use linbase::catalog::Recipe;
use linbase::gf::make_field;
use linbase::matlin::{is_completely_reducible, is_irreducible, socle, Matrix};

fn main() -> linbase::Result<()> {
    let f = make_field(3, 1)?;
    let upper = Matrix::from_rows(&f, &[vec![1, 1], vec![0, 1]])?;
    let gens = [upper];
    println!(
        "unipotent <[[1,1],[0,1]]> over GF(3): irreducible {}, completely reducible {}, socle dim {}",
        is_irreducible(&f, 2, &gens),
        is_completely_reducible(&f, 2, &gens),
        socle(&f, 2, &gens).dim()
    );
    for recipe in [Recipe::Diagonal { q: 5, n: 3 }, Recipe::Singer { q: 3, n: 2 }, Recipe::General { q: 2, n: 3 }] {
        let g = recipe.build()?.group;
        let (f, n) = (g.field(), g.dim());
        println!(
            "{:<14} irreducible {:<5} completely reducible {}",
            recipe.describe(),
            is_irreducible(f, n, g.generators()),
            is_completely_reducible(f, n, g.generators())
        );
    }
    Ok(())
}

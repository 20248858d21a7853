//! Exact minimal base and strong base sizes with lex-least witnesses.

use linbase::basesize::{b_exact, b_star_exact};
use linbase::catalog::Recipe;

fn main() -> linbase::Result<()> {
    for recipe in [
        Recipe::General { q: 3, n: 2 },
        Recipe::Special { q: 3 },
        Recipe::Diagonal { q: 5, n: 2 },
        Recipe::Scalars { q: 7, n: 2 },
        Recipe::General { q: 2, n: 3 },
        Recipe::MonomialWreath {
            base: Box::new(Recipe::General { q: 3, n: 2 }),
            k: 2,
        },
    ] {
        let g = recipe.build()?.group;
        let (b, base) = b_exact(&g)?;
        let (bs, strong) = b_star_exact(&g)?;
        let show = |c: &linbase::basesize::BaseCertificate| {
            c.vectors.iter().map(|v| format!("{:?}", v.entries())).collect::<Vec<_>>().join(" ")
        };
        println!("{:<24} b = {b} [{}]  b* = {bs} [{}]", recipe.describe(), show(&base), show(&strong));
    }
    Ok(())
}

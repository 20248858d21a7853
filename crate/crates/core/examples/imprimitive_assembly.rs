//! Bases of wreath products from a block base and distinguishing vectors.

use linbase::catalog::Recipe;
use linbase::construct::{distinguishing_vectors, imprimitive_base};

fn main() -> linbase::Result<()> {
    let f5 = linbase::gf::make_field(5, 1)?;
    let s3 = vec![vec![1, 0, 2], vec![1, 2, 0]];
    println!("distinguishing vectors for S3 over GF(5): {:?}", distinguishing_vectors(&s3, 3, &f5)?);

    for (block, m, k) in [
        (Recipe::Diagonal { q: 5, n: 2 }, 2, 2),
        (Recipe::General { q: 3, n: 2 }, 2, 3),
        (Recipe::Scalars { q: 4, n: 1 }, 1, 3),
    ] {
        let recipe = Recipe::MonomialWreath { base: Box::new(block), k };
        let g = recipe.build()?.group;
        let r = imprimitive_base(&g, m)?;
        let vs: Vec<_> = r.certificate.vectors.iter().map(|v| v.entries().to_vec()).collect();
        println!(
            "{:<22} |G| = {:<7} block case {} a = {:?} b = {:?} base {vs:?}",
            recipe.describe(),
            g.order()?,
            r.block_case.label(),
            r.distinguishing.a,
            r.distinguishing.b
        );
    }
    Ok(())
}

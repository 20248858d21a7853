//! Bases of central tensor wreaths and the tensor product bound.

use linbase::catalog::Recipe;
use linbase::construct::{central_tensor_wreath, tensor_base, tensor_product_bound, TensorCase};

fn main() -> linbase::Result<()> {
    for (factor, case) in [
        (Recipe::Diagonal { q: 5, n: 2 }, TensorCase::Pair),
        (Recipe::SingerNormalizer { q: 7, n: 2 }, TensorCase::Pair),
        (Recipe::General { q: 3, n: 2 }, TensorCase::Triple),
    ] {
        let h = factor.build()?.group;
        let w = central_tensor_wreath(&h)?;
        let r = tensor_base(&h, case, None)?;
        let vs: Vec<_> = r.certificate.vectors.iter().map(|v| v.entries().to_vec()).collect();
        println!(
            "{:<16} |G1 wr S2| = {:<6} {case:?} alpha {:?} base {vs:?} verified {}",
            factor.describe(),
            w.order()?,
            r.alpha,
            r.certificate.verified
        );
    }
    let l = Recipe::Diagonal { q: 5, n: 2 }.build()?.group;
    let r = Recipe::SingerNormalizer { q: 5, n: 2 }.build()?.group;
    println!("{:?}", tensor_product_bound(&l, &r)?);
    Ok(())
}

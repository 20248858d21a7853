//! The order bound constant and margins for a few groups.

use linbase::catalog::Recipe;
use linbase::construct::{d, log_margin, palfy_wolf_bound, pw_coeff, t_of_q};

fn main() -> linbase::Result<()> {
    println!("d = {:.6}, 24^(-1/3) = {:.6}", d(), pw_coeff());
    for q in [2, 3, 4, 5, 7, 8, 9] {
        println!("t({q}) = {}", t_of_q(q)?);
    }
    for recipe in [
        Recipe::General { q: 3, n: 2 },
        Recipe::MonomialWreath {
            base: Box::new(Recipe::General { q: 3, n: 2 }),
            k: 3,
        },
        Recipe::TensorWreath {
            base: Box::new(Recipe::General { q: 3, n: 2 }),
        },
    ] {
        let g = recipe.build()?.group;
        let (order, v) = (g.order()?, g.space().size() as u64);
        println!(
            "{:<22} |G| = {order:<7} bound {:>12.3} log margin {:+.6} |G| > |V|^2: {}",
            recipe.describe(),
            palfy_wolf_bound(v),
            log_margin(order, v, 1),
            order as u128 > (v as u128).pow(2)
        );
    }
    Ok(())
}

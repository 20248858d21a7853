//! The gamma search for semilinear groups over non-prime fields.

use linbase::catalog::Recipe;
use linbase::construct::semilinear_base;

fn main() -> linbase::Result<()> {
    for (q, f, monomial) in [(3, 2, false), (5, 2, true), (2, 4, false), (2, 3, true), (3, 3, false)] {
        let recipe = Recipe::Semilinear { q, f, l: 2, monomial };
        let built = recipe.build()?;
        let s = built.semilinear.as_ref().expect("semilinear recipe");
        let r = semilinear_base(s)?;
        println!(
            "{:<28} |G| = {:<5} u1 {:?} u2 {:?} case {} gamma {:<3} excluded {} <= {} < {}",
            recipe.describe(),
            built.group.order()?,
            r.u1,
            r.u2,
            r.case.label(),
            r.gamma,
            r.excluded,
            r.bound,
            s.extension().top().q()
        );
    }
    Ok(())
}

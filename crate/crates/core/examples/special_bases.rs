//! Scanning for special bases and turning special bases into strong bases.

use linbase::catalog::Recipe;
use linbase::construct::{find_special_base, special_basis_report, strong_from_base, BasisFamily};

fn main() -> linbase::Result<()> {
    for (recipe, family) in [
        (Recipe::Diagonal { q: 5, n: 2 }, BasisFamily::Plane),
        (Recipe::SingerNormalizer { q: 8, n: 2 }, BasisFamily::Plane),
        (Recipe::General { q: 5, n: 2 }, BasisFamily::Plane),
        (Recipe::SingerNormalizer { q: 3, n: 3 }, BasisFamily::Solid),
        (Recipe::CliffordQutrit { q: 4 }, BasisFamily::Solid),
    ] {
        let g = recipe.build()?.group.with_scalars()?;
        let report = special_basis_report(&g, family)?;
        println!(
            "{:<22} case {:<4} witness {:?} failures {:?}",
            recipe.describe(),
            report.which.map_or("-", |c| c.label()),
            report.witness.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>(),
            report.hypothesis_failures
        );
        if report.hypothesis_failures.is_empty() {
            if let Some(s) = find_special_base(&g)? {
                let cert = strong_from_base(&g, &s.vectors, s.case)?;
                let vs: Vec<_> = cert.vectors.iter().map(|v| v.entries().to_vec()).collect();
                println!("{:<22} strong base {vs:?} verified {}", "", cert.verified);
            }
        }
    }
    Ok(())
}

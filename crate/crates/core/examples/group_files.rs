//! Writing a group file, reading it back, and analyzing it.

use linbase::catalog::{analyze, GroupFile, Recipe};

fn main() -> linbase::Result<()> {
    let built = Recipe::Semilinear { q: 3, f: 2, l: 1, monomial: false }.build()?;
    let file = GroupFile::from_group("gamma-l1-9", &built.group, built.semilinear.as_ref());
    let text = file.render();
    print!("{text}");
    let back = GroupFile::parse(&text, "memory")?;
    assert_eq!(back.render(), text);
    print!("{}", analyze(&back.name, &back.to_group()?.group)?.to_text());
    Ok(())
}

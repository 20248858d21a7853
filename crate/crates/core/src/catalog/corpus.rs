use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::file::GroupFile;
use crate::catalog::recipe::{Built, Recipe};
use crate::construct::TensorCase;
use crate::error::{Error, Result};
use crate::grp::{is_p_solvable, MatrixGroup};
use crate::matlin::{is_completely_reducible, is_irreducible};

/// Properties asserted for a catalog group and re-checked whenever it is built or loaded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub order: u64,
    pub p_solvable: bool,
    pub irreducible: bool,
    pub completely_reducible: bool,
    pub contains_scalars: bool,
}

impl Claims {
    pub fn measure(g: &MatrixGroup) -> Result<Claims> {
        let (f, n) = (g.field(), g.dim());
        Ok(Claims {
            order: g.order()?,
            p_solvable: is_p_solvable(g, f.p())?,
            irreducible: is_irreducible(f, n, g.generators()),
            completely_reducible: is_completely_reducible(f, n, g.generators()),
            contains_scalars: g.scalar_subgroup_order()? == (f.q() - 1) as u64,
        })
    }

    /// The hypotheses of the strong base and order bounds.
    pub fn conforming(&self) -> bool {
        self.p_solvable && self.completely_reducible
    }
}

/// A base-building recipe that applies to the group by construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    /// Coordinate blocks of this size are permuted transitively.
    Imprimitive { block_dim: usize },
    /// The group is the central tensor wreath of `factor`.
    Tensor { factor: Recipe, case: TensorCase },
    /// The group is the tensor product of `left` and `right`.
    TensorProduct { left: Recipe, right: Recipe },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub file: String,
    pub recipe: Recipe,
    pub claims: Claims,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    /// Name of a quasisimple normal subgroup, itself a catalog entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasisimple_normal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub groups: Vec<CatalogEntry>,
}

impl Manifest {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str, location: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::format(format!("{location}:{}:{}", e.line(), e.column()), e.to_string()))
    }
}

/// An entry together with its group.
#[derive(Clone, Debug)]
pub struct LoadedEntry {
    pub entry: CatalogEntry,
    pub file: GroupFile,
    pub built: Built,
}

impl LoadedEntry {
    pub fn name(&self) -> &str {
        &self.entry.name
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.built.group
    }
}

pub fn check_claims(name: &str, g: &MatrixGroup, claims: &Claims) -> Result<()> {
    let got = Claims::measure(g)?;
    if got != *claims {
        return Err(Error::RedFlag(format!("{name}: claimed {claims:?}, measured {got:?}")));
    }
    Ok(())
}

fn entry(name: &str, recipe: Recipe, claims: (u64, bool, bool, bool, bool)) -> CatalogEntry {
    let (order, p_solvable, irreducible, completely_reducible, contains_scalars) = claims;
    CatalogEntry {
        name: name.to_string(),
        file: format!("{name}.json"),
        recipe,
        claims: Claims {
            order,
            p_solvable,
            irreducible,
            completely_reducible,
            contains_scalars,
        },
        construction: None,
        quasisimple_normal: None,
    }
}

fn with(mut e: CatalogEntry, c: Construction) -> CatalogEntry {
    e.construction = Some(c);
    e
}

fn normal(mut e: CatalogEntry, n: &str) -> CatalogEntry {
    e.quasisimple_normal = Some(n.to_string());
    e
}

/// The shipped corpus, in report order.
pub fn shipped_entries() -> Vec<CatalogEntry> {
    use Recipe::*;
    let gl = |q, n| General { q, n };
    let diag = |q, n| Diagonal { q, n };
    let gamma = |q, n| SingerNormalizer { q, n };
    let b = Box::new;
    let c2s3 = MonomialWreath { base: b(Scalars { q: 3, n: 1 }), k: 3 };
    let imp = |block_dim| Construction::Imprimitive { block_dim };
    let sl25 = |q, scalars| BinaryIcosahedral { q, scalars };
    let semi = |q, f, l, monomial| Semilinear { q, f, l, monomial };
    vec![
        entry("gl-2-3", gl(3, 2), (48, true, true, true, true)),
        entry("sl-2-3", Special { q: 3 }, (24, true, true, true, true)),
        entry("diag-z-3", diag(3, 2), (4, true, false, true, true)),
        entry("diag-z-5", diag(5, 2), (16, true, false, true, true)),
        entry("diag-z-9", diag(9, 2), (64, true, false, true, true)),
        entry("scalars-7", Scalars { q: 7, n: 2 }, (6, true, false, true, true)),
        entry("singer-3", Singer { q: 3, n: 2 }, (8, true, true, true, true)),
        entry("gamma-l1-3", gamma(3, 2), (16, true, true, true, true)),
        entry("gamma-l1-4", gamma(4, 2), (30, true, true, true, true)),
        entry("gamma-l1-5", gamma(5, 2), (48, true, true, true, true)),
        entry("gamma-l1-8", gamma(8, 2), (126, true, true, true, true)),
        entry("gamma-l1-16", gamma(16, 2), (510, true, true, true, true)),
        entry("gamma-l1-27", gamma(3, 3), (78, true, true, true, true)),
        entry("gamma-l1-64", gamma(4, 3), (189, true, true, true, true)),
        entry("gamma-l1-16-gf2", gamma(2, 4), (60, true, true, true, true)),
        entry("gl-3-2", gl(2, 3), (168, false, true, true, true)),
        entry("gl-2-4", gl(4, 2), (180, false, true, true, true)),
        entry("gl-2-5", gl(5, 2), (480, false, true, true, true)),
        with(entry("monomial-3-3", c2s3.clone(), (48, true, true, true, true)), imp(1)),
        with(
            entry("monomial-3-4", MonomialWreath { base: b(Scalars { q: 4, n: 1 }), k: 3 }, (162, true, true, true, true)),
            imp(1),
        ),
        with(
            entry("monomial-4-5", MonomialWreath { base: b(diag(5, 2)), k: 2 }, (512, true, false, true, true)),
            imp(2),
        ),
        with(
            entry("monomial-6-3", MonomialWreath { base: b(c2s3), k: 2 }, (4608, true, true, true, true)),
            imp(3),
        ),
        with(
            entry("gl-2-3-wr-2", MonomialWreath { base: b(gl(3, 2)), k: 2 }, (4608, true, true, true, true)),
            imp(2),
        ),
        with(
            entry("gl-2-3-wr-3", MonomialWreath { base: b(gl(3, 2)), k: 3 }, (663552, true, true, true, true)),
            imp(2),
        ),
        with(
            entry("tensor-wreath-3", TensorWreath { base: b(gl(3, 2)) }, (2304, true, true, true, true)),
            Construction::Tensor { factor: gl(3, 2), case: TensorCase::Triple },
        ),
        with(
            entry("tensor-wreath-5", TensorWreath { base: b(diag(5, 2)) }, (128, true, false, true, true)),
            Construction::Tensor { factor: diag(5, 2), case: TensorCase::Pair },
        ),
        with(
            entry("tensor-wreath-5-gamma", TensorWreath { base: b(gamma(5, 2)) }, (1152, true, true, true, true)),
            Construction::Tensor { factor: gamma(5, 2), case: TensorCase::Pair },
        ),
        with(
            entry(
                "tensor-product-5",
                TensorProduct { left: b(diag(5, 2)), right: b(gamma(5, 2)) },
                (192, true, false, true, true),
            ),
            Construction::TensorProduct { left: diag(5, 2), right: gamma(5, 2) },
        ),
        entry("clifford-qutrit-4", CliffordQutrit { q: 4 }, (648, true, true, true, true)),
        entry("sl-2-5-gf49", sl25(49, false), (120, true, true, true, false)),
        normal(entry("sl-2-5-z-gf49", sl25(49, true), (2880, true, true, true, true)), "sl-2-5-gf49"),
        entry("sl-2-5-gf11", sl25(11, false), (120, true, true, true, false)),
        normal(entry("sl-2-5-z-gf11", sl25(11, true), (600, true, true, true, true)), "sl-2-5-gf11"),
        entry("sl-2-5-z-gf9", sl25(9, true), (480, false, true, true, true)),
        entry("semilinear-9", semi(3, 2, 2, false), (128, true, false, true, true)),
        entry("semilinear-25", semi(5, 2, 2, true), (2304, true, true, true, true)),
        entry("semilinear-16-gf2", semi(2, 4, 2, false), (900, true, false, true, true)),
        entry("semilinear-8-gf2", semi(2, 3, 2, true), (294, true, true, true, true)),
        entry("semilinear-27", semi(3, 3, 2, false), (2028, true, false, true, true)),
    ]
}

fn build_checked(e: &CatalogEntry) -> Result<LoadedEntry> {
    let built = e.recipe.build()?;
    check_claims(&e.name, &built.group, &e.claims)?;
    let file = GroupFile::from_group(&e.name, &built.group, built.semilinear.as_ref());
    Ok(LoadedEntry {
        entry: e.clone(),
        file,
        built,
    })
}

/// Builds every shipped entry, checking its claims.
pub fn build_corpus(jobs: usize) -> Result<Vec<LoadedEntry>> {
    in_pool(jobs, || shipped_entries().par_iter().map(build_checked).collect())
}

/// Writes the group files and `manifest.json` into `dir`.
pub fn export_corpus(dir: &Path, jobs: usize) -> Result<Vec<LoadedEntry>> {
    let corpus = build_corpus(jobs)?;
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for c in &corpus {
        c.file.write(&dir.join(&c.entry.file))?;
    }
    let manifest = Manifest {
        groups: corpus.iter().map(|c| c.entry.clone()).collect(),
    };
    let path = dir.join("manifest.json");
    fs::write(&path, manifest.render()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(corpus)
}

fn load_one(dir: &Path, e: &CatalogEntry) -> Result<LoadedEntry> {
    let file = GroupFile::read(&dir.join(&e.file))?;
    if file.name != e.name {
        return Err(Error::format(&e.file, format!("names {} but the manifest says {}", file.name, e.name)));
    }
    let built = file.to_group()?;
    let rebuilt = e.recipe.build()?;
    if rebuilt.group.generators() != built.group.generators() {
        return Err(Error::format(&e.file, "generators differ from the recipe"));
    }
    check_claims(&e.name, &built.group, &e.claims)?;
    Ok(LoadedEntry {
        entry: e.clone(),
        file,
        built,
    })
}

/// Reads `manifest.json` and every group file it names, re-checking all claims.
pub fn load_corpus(dir: &Path, jobs: usize) -> Result<Vec<LoadedEntry>> {
    let path = dir.join("manifest.json");
    let text = fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let manifest = Manifest::parse(&text, &path.display().to_string())?;
    let corpus: Vec<LoadedEntry> = in_pool(jobs, || manifest.groups.par_iter().map(|e| load_one(dir, e)).collect::<Result<_>>())?;
    for c in &corpus {
        if let Some(n) = &c.entry.quasisimple_normal {
            if !corpus.iter().any(|d| d.name() == n) {
                return Err(Error::format("manifest.json", format!("{}: unknown normal subgroup {n}", c.name())));
            }
        }
    }
    Ok(corpus)
}

/// Runs `f` on a pool of `jobs` threads (`0` for the default).
pub fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_claims_hold() {
        let bad: Vec<String> = shipped_entries()
            .par_iter()
            .filter_map(|e| build_checked(e).err().map(|x| x.to_string()))
            .collect();
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}

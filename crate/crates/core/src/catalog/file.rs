use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::recipe::Built;
use crate::error::{Error, Result};
use crate::gf::{make_field, Code, FieldExtension};
use crate::grp::{MatrixGroup, SemilinearElement, SemilinearGroup};
use crate::matlin::Matrix;

/// On-disk group: integer-coded matrices over `GF(p^k)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub p: u32,
    pub k: u32,
    pub n: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semilinear: Option<SemilinearFile>,
}

/// Semilinear generators over the degree-`f` extension, acting on `T^l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemilinearFile {
    pub f: u32,
    pub l: usize,
    pub gens: Vec<SemilinearGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemilinearGenerator {
    pub matrix: Vec<u32>,
    pub auto: u32,
}

fn codes(m: &Matrix) -> Vec<u32> {
    m.data().iter().map(|&c| c as u32).collect()
}

fn row(xs: &[u32]) -> String {
    let body: Vec<String> = xs.iter().map(u32::to_string).collect();
    format!("[{}]", body.join(","))
}

impl GroupFile {
    pub fn from_group(name: &str, g: &MatrixGroup, semilinear: Option<&SemilinearGroup>) -> Self {
        GroupFile {
            name: name.to_string(),
            p: g.field().p(),
            k: g.field().k(),
            n: g.dim(),
            generators: g.generators().iter().map(codes).collect(),
            semilinear: semilinear.map(|s| SemilinearFile {
                f: s.degree(),
                l: s.dim(),
                gens: s
                    .generators()
                    .iter()
                    .map(|e| SemilinearGenerator {
                        matrix: codes(e.matrix()),
                        auto: e.auto(),
                    })
                    .collect(),
            }),
        }
    }

    /// Canonical text: one matrix per line, two-space indent, trailing newline.
    pub fn render(&self) -> String {
        let mut s = String::from("{\n");
        let name = serde_json::to_string(&self.name).expect("string");
        let _ = writeln!(s, "  \"name\": {name},");
        let _ = writeln!(s, "  \"p\": {},", self.p);
        let _ = writeln!(s, "  \"k\": {},", self.k);
        let _ = writeln!(s, "  \"n\": {},", self.n);
        let tail = if self.semilinear.is_some() { "," } else { "" };
        if self.generators.is_empty() {
            let _ = writeln!(s, "  \"generators\": []{tail}");
        } else {
            s.push_str("  \"generators\": [\n");
            let rows: Vec<String> = self.generators.iter().map(|g| format!("    {}", row(g))).collect();
            s.push_str(&rows.join(",\n"));
            let _ = writeln!(s, "\n  ]{tail}");
        }
        if let Some(sl) = &self.semilinear {
            s.push_str("  \"semilinear\": {\n");
            let _ = writeln!(s, "    \"f\": {},", sl.f);
            let _ = writeln!(s, "    \"l\": {},", sl.l);
            if sl.gens.is_empty() {
                s.push_str("    \"gens\": []\n");
            } else {
                s.push_str("    \"gens\": [\n");
                let rows: Vec<String> = sl
                    .gens
                    .iter()
                    .map(|g| format!("      {{\"matrix\": {}, \"auto\": {}}}", row(&g.matrix), g.auto))
                    .collect();
                s.push_str(&rows.join(",\n"));
                s.push_str("\n    ]\n");
            }
            s.push_str("  }\n");
        }
        s.push_str("}\n");
        s
    }

    pub fn parse(text: &str, location: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::format(format!("{location}:{}:{}", e.line(), e.column()), e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.render()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    /// Validates the file and builds the group.
    pub fn to_group(&self) -> Result<Built> {
        let loc = |what: String| format!("{}: {what}", self.name);
        let field = make_field(self.p, self.k).map_err(|e| Error::format(loc("field".into()), e.to_string()))?;
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let data = to_codes(g, field.q()).map_err(|m| Error::format(loc(format!("generators[{i}]")), m))?;
                Matrix::new(&field, self.n, self.n, data).map_err(|e| Error::format(loc(format!("generators[{i}]")), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let group = MatrixGroup::new(&field, self.n, gens).map_err(|e| Error::format(loc("generators".into()), e.to_string()))?;
        let semilinear = match &self.semilinear {
            None => None,
            Some(sl) => {
                if sl.l * sl.f as usize != self.n {
                    return Err(Error::format(loc("semilinear".into()), "l * f must equal n"));
                }
                let ext = Arc::new(FieldExtension::new(&field, sl.f)?);
                let gens = sl
                    .gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let at = loc(format!("semilinear.gens[{i}]"));
                        let data = to_codes(&g.matrix, ext.top().q()).map_err(|m| Error::format(at.clone(), m))?;
                        let m = Matrix::new(ext.top(), sl.l, sl.l, data).map_err(|e| Error::format(at.clone(), e.to_string()))?;
                        SemilinearElement::new(&ext, m, g.auto).map_err(|e| Error::format(at, e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let s = SemilinearGroup::new(&ext, sl.l, gens)?;
                let blown: Vec<Matrix> = s.generators().iter().map(SemilinearElement::blowdown).collect();
                if blown != group.generators() {
                    return Err(Error::format(loc("semilinear".into()), "blow-down differs from the generators"));
                }
                Some(s)
            }
        };
        Ok(Built { group, semilinear })
    }
}

fn to_codes(xs: &[u32], q: u32) -> std::result::Result<Vec<Code>, String> {
    xs.iter()
        .map(|&x| {
            if x < q {
                Ok(x as Code)
            } else {
                Err(format!("entry {x} out of range for GF({q})"))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Recipe;

    #[test]
    fn render_parse_round_trip() {
        let b = Recipe::Semilinear { q: 3, f: 2, l: 1, monomial: false }.build().unwrap();
        let file = GroupFile::from_group("gl1-9", &b.group, b.semilinear.as_ref());
        let text = file.render();
        let back = GroupFile::parse(&text, "mem").unwrap();
        assert_eq!(back, file);
        assert_eq!(back.render(), text);
        assert_eq!(back.to_group().unwrap().group.order().unwrap(), 16);
    }

    #[test]
    fn malformed_input_names_the_place() {
        let e = GroupFile::parse("{\"name\": \"x\", \"p\": 3,\n \"k\": }", "bad.json").unwrap_err();
        assert!(e.to_string().contains("bad.json:2"), "{e}");
        let f = GroupFile {
            name: "x".into(),
            p: 3,
            k: 1,
            n: 2,
            generators: vec![vec![1, 0, 0, 7]],
            semilinear: None,
        };
        assert!(f.to_group().unwrap_err().to_string().contains("generators[0]"));
        let singular = GroupFile {
            generators: vec![vec![1, 1, 1, 1]],
            ..f
        };
        assert!(singular.to_group().is_err());
    }
}

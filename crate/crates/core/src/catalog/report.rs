use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::basesize::{b_exact, b_star_exact, has_regular_orbit};
use crate::catalog::corpus::Claims;
use crate::construct::{log_margin, palfy_wolf_bound, t_of_q};
use crate::error::{Error, Result};
use crate::gf::Code;
use crate::grp::MatrixGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    RedFlag,
    Skip,
    CapExceeded,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::RedFlag => "red-flag",
            Status::Skip => "skip",
            Status::CapExceeded => "cap-exceeded",
        }
    }

    /// Maps an error raised while checking a group to a row status.
    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::CapExceeded(_) => Status::CapExceeded,
            Error::RedFlag(_) => Status::RedFlag,
            _ => Status::Fail,
        }
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub suite: String,
    pub group: String,
    pub status: Status,
    pub q: u32,
    pub n: usize,
    pub order: Option<u64>,
    pub v_size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_star: Option<usize>,
    /// The suite's bound: `t(q)`, the order bound, or a count bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    pub detail: String,
}

impl Row {
    pub fn new(suite: &str, group: &str, g: &MatrixGroup) -> Row {
        Row {
            suite: suite.to_string(),
            group: group.to_string(),
            status: Status::Skip,
            q: g.field().q(),
            n: g.dim(),
            order: g.order().ok(),
            v_size: g.space().size() as u64,
            b: None,
            b_star: None,
            bound: None,
            detail: String::new(),
        }
    }

    pub fn with(mut self, status: Status, detail: impl Into<String>) -> Row {
        self.status = status;
        self.detail = detail.into();
        self
    }

    pub fn failed(self, e: &Error) -> Row {
        self.with(Status::of_error(e), e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub rows: Vec<Row>,
}

impl VerificationReport {
    /// No fail or red-flag rows. Cap-exceeded rows do not fail a suite but set exit code 3.
    pub fn passed(&self) -> bool {
        !self.rows.iter().any(|r| matches!(r.status, Status::Fail | Status::RedFlag))
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn exit_code(&self) -> i32 {
        if !self.passed() {
            1
        } else if self.count(Status::CapExceeded) > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_jsonl(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<22} {:<12} {:>5} {:>2} {:>9} {:>3} {:>3} {:>12}  detail",
            "group", "status", "q", "n", "|G|", "b", "b*", "bound"
        );
        let dash = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<22} {:<12} {:>5} {:>2} {:>9} {:>3} {:>3} {:>12}  {}",
                r.group,
                r.status.label(),
                r.q,
                r.n,
                r.order.map_or("-".to_string(), |o| o.to_string()),
                dash(r.b),
                dash(r.b_star),
                r.bound.map_or("-".to_string(), |b| format!("{b:.6}")),
                r.detail
            );
        }
        let _ = writeln!(
            s,
            "{}: {} ({} pass, {} fail, {} red-flag, {} skip, {} cap-exceeded)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::RedFlag),
            self.count(Status::Skip),
            self.count(Status::CapExceeded)
        );
        s
    }
}

/// Everything `analyze` prints about a group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub name: String,
    pub q: u32,
    pub n: usize,
    pub v_size: u64,
    pub order: u64,
    pub irreducible: bool,
    pub completely_reducible: bool,
    pub p_solvable: bool,
    pub contains_scalars: bool,
    pub b: usize,
    pub base: Vec<Vec<Code>>,
    pub b_star: usize,
    pub strong_base: Vec<Vec<Code>>,
    pub regular_orbit: Option<Vec<Code>>,
    pub t_q: usize,
    pub order_bound: f64,
    pub order_bound_holds: bool,
}

pub fn analyze(name: &str, g: &MatrixGroup) -> Result<Analysis> {
    let claims = Claims::measure(g)?;
    let (b, base) = b_exact(g)?;
    let (b_star, strong) = b_star_exact(g)?;
    let v_size = g.space().size() as u64;
    let entries = |vs: &[crate::matlin::Vector]| vs.iter().map(|v| v.entries().to_vec()).collect();
    Ok(Analysis {
        name: name.to_string(),
        q: g.field().q(),
        n: g.dim(),
        v_size,
        order: claims.order,
        irreducible: claims.irreducible,
        completely_reducible: claims.completely_reducible,
        p_solvable: claims.p_solvable,
        contains_scalars: claims.contains_scalars,
        b,
        base: entries(&base.vectors),
        b_star,
        strong_base: entries(&strong.vectors),
        regular_orbit: has_regular_orbit(g)?.map(|v| v.entries().to_vec()),
        t_q: t_of_q(g.field().q())?,
        order_bound: palfy_wolf_bound(v_size),
        order_bound_holds: log_margin(claims.order, v_size, 1) >= -crate::construct::LOG_TOLERANCE,
    })
}

impl Analysis {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let vecs = |vs: &[Vec<Code>]| {
            let parts: Vec<String> = vs.iter().map(|v| format!("{v:?}")).collect();
            format!("({})", parts.join(", "))
        };
        let _ = writeln!(s, "group                 {}", self.name);
        let _ = writeln!(s, "field, dimension      GF({}), n = {}, |V| = {}", self.q, self.n, self.v_size);
        let _ = writeln!(s, "order                 {}", self.order);
        let _ = writeln!(s, "irreducible           {}", self.irreducible);
        let _ = writeln!(s, "completely reducible  {}", self.completely_reducible);
        let _ = writeln!(s, "p-solvable            {}", self.p_solvable);
        let _ = writeln!(s, "contains scalars      {}", self.contains_scalars);
        let _ = writeln!(s, "b                     {} {}", self.b, vecs(&self.base));
        let _ = writeln!(s, "b*                    {} {}", self.b_star, vecs(&self.strong_base));
        let _ = writeln!(
            s,
            "regular orbit         {}",
            self.regular_orbit.as_ref().map_or("none".to_string(), |v| format!("{v:?}"))
        );
        let _ = writeln!(s, "t(q)                  {}", self.t_q);
        let _ = writeln!(
            s,
            "order bound           {:.3} ({})",
            self.order_bound,
            if self.order_bound_holds { "holds" } else { "exceeded" }
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Recipe;

    #[test]
    fn gl23_analysis() {
        let g = Recipe::General { q: 3, n: 2 }.build().unwrap().group;
        let a = analyze("gl-2-3", &g).unwrap();
        assert_eq!((a.order, a.b, a.b_star), (48, 2, 3));
        assert!(a.irreducible && a.p_solvable && a.order_bound_holds);
        assert!(a.regular_orbit.is_none());
        assert!(a.to_text().contains("order                 48"));
    }

    #[test]
    fn exit_codes() {
        let g = MatrixGroup::scalars(&crate::gf::make_field(3, 1).unwrap(), 1);
        let mut r = VerificationReport {
            suite: "x".into(),
            rows: vec![Row::new("x", "a", &g).with(Status::Pass, "")],
        };
        assert_eq!(r.exit_code(), 0);
        r.rows.push(Row::new("x", "b", &g).with(Status::CapExceeded, ""));
        assert_eq!(r.exit_code(), 3);
        r.rows.push(Row::new("x", "c", &g).with(Status::RedFlag, ""));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.to_jsonl().lines().count(), 3);
        assert!(r.to_jsonl().contains("\"status\":\"red-flag\""));
    }
}

//! Structured reports, shared by the text and JSON output modes. Every
//! report serializes to JSON and parses back to an equal value, so emitted
//! JSON is a faithful machine interface.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use varwreath_core::{AbelianShape, Exponent, GroupExpr, NilpotentProfile, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    Main,
    Finite,
    Abelian,
    Pgroup,
    Circle,
}

impl CriterionKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "main" => CriterionKind::Main,
            "finite" => CriterionKind::Finite,
            "abelian" => CriterionKind::Abelian,
            "pgroup" => CriterionKind::Pgroup,
            "circle" => CriterionKind::Circle,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionKind::Main => "main",
            CriterionKind::Finite => "finite",
            CriterionKind::Abelian => "abelian",
            CriterionKind::Pgroup => "pgroup",
            CriterionKind::Circle => "circle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub criterion: CriterionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<NilpotentProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelian_exponent: Option<Exponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pgroup: Option<PGroupInput>,
    pub shape: AbelianShape,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PGroupInput {
    pub p: u64,
    pub u: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShieldReport {
    pub bottom: GroupExpr,
    pub top: GroupExpr,
    pub p: u64,
    pub class: u64,
    pub depth: u32,
    pub e: Vec<u32>,
    pub a: u64,
    pub b: u64,
    pub bottom_class: u32,
    pub s: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KpReport {
    pub group: GroupExpr,
    pub p: u64,
    pub orders: Vec<u64>,
    pub depth: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcsReport {
    pub group: GroupExpr,
    pub orders: Vec<u64>,
    pub nilpotent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleShieldReport {
    pub bottom: GroupExpr,
    pub top: GroupExpr,
    pub p: u64,
    pub predicted: u64,
    pub observed: u64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsLawReport {
    pub word: String,
    pub group: GroupExpr,
    pub law: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawsReport {
    pub group: GroupExpr,
    pub arity: u32,
    pub max_len: u32,
    pub count: usize,
    pub laws: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub first: GroupExpr,
    pub second: GroupExpr,
    pub arity: u32,
    pub max_len: u32,
    pub only_first: Vec<String>,
    pub only_second: Vec<String>,
    pub common: Vec<String>,
    pub verdict: CompareVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompareVerdict {
    Distinguished { witness: String, law_of: Side },
    IndistinguishableUpTo { max_len: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub c: u64,
    pub z: u64,
    pub l: u64,
    pub p: u64,
    pub v: u32,
    pub alpha: u32,
    pub t: u64,
    /// Exact rational value of the first bound at `t` (always integral).
    pub bound1_at_t: String,
    pub bound2_at_t: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The recorded expectation is known not to match this implementation;
    /// the row passes by differing.
    ExpectedDiscrepant,
}

impl RowStatus {
    fn label(&self) -> &'static str {
        match self {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::ExpectedDiscrepant => "EXPECTED-DISCREPANT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub name: String,
    pub command: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub rows: Vec<RowReport>,
    pub passed: usize,
    pub failed: usize,
    pub discrepant: usize,
}

impl RunReport {
    pub fn from_rows(rows: Vec<RowReport>) -> Self {
        let passed = rows.iter().filter(|r| r.status == RowStatus::Pass).count();
        let failed = rows.iter().filter(|r| r.status == RowStatus::Fail).count();
        let discrepant = rows
            .iter()
            .filter(|r| r.status == RowStatus::ExpectedDiscrepant)
            .count();
        RunReport {
            rows,
            passed,
            failed,
            discrepant,
        }
    }
}

/// Top-level report: one variant per command, tagged for JSON round-trips.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Check(CheckReport),
    Shield(ShieldReport),
    Kpseries(KpReport),
    Lcs(LcsReport),
    OracleShield(OracleShieldReport),
    OracleIslaw(IsLawReport),
    OracleLaws(LawsReport),
    OracleCompare(CompareReport),
    Crossover(CrossoverReport),
    Report(RunReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Check(r) => {
                let _ = writeln!(out, "criterion: {}", r.criterion.as_str());
                if let Some(p) = &r.profile {
                    let _ = writeln!(out, "bottom profile: c={}, m={}", p.class(), p.exponent());
                }
                if let Some(m) = &r.abelian_exponent {
                    let _ = writeln!(out, "bottom exponent: {m}");
                }
                if let Some(pg) = &r.pgroup {
                    let _ = writeln!(out, "bottom p-group: p={}, u={}", pg.p, pg.u);
                }
                let _ = writeln!(
                    out,
                    "top shape: {} (exponent {})",
                    r.shape,
                    r.shape.exponent()
                );
                let _ = writeln!(out, "holds: {}", r.verdict.holds);
                let _ = writeln!(out, "branch: {}", r.verdict.branch.as_str());
                let _ = writeln!(out, "required: {}", demands(&r.verdict.required));
                let _ = writeln!(out, "missing: {}", demands(&r.verdict.missing));
                let _ = writeln!(out, "{}", r.verdict.narrative);
            }
            Report::Shield(r) => {
                let _ = writeln!(
                    out,
                    "wreath product: {} wr {}  (p = {})",
                    r.bottom, r.top, r.p
                );
                let _ = writeln!(
                    out,
                    "top parameters: depth={}, e={:?}, a={}, b={}",
                    r.depth, r.e, r.a, r.b
                );
                let _ = writeln!(out, "bottom profile: class={}, s={:?}", r.bottom_class, r.s);
                let _ = writeln!(out, "nilpotency class: {}", r.class);
            }
            Report::Kpseries(r) => {
                let _ = writeln!(out, "group: {}  (p = {})", r.group, r.p);
                let _ = writeln!(out, "term orders: {:?}", r.orders);
                let _ = writeln!(out, "depth: {}", r.depth);
            }
            Report::Lcs(r) => {
                let _ = writeln!(out, "group: {}", r.group);
                let _ = writeln!(out, "term orders: {:?}", r.orders);
                match r.class {
                    Some(c) => {
                        let _ = writeln!(out, "nilpotency class: {c}");
                    }
                    None => {
                        let _ = writeln!(out, "not nilpotent (series stabilizes above 1)");
                    }
                }
            }
            Report::OracleShield(r) => {
                let _ = writeln!(
                    out,
                    "wreath product: {} wr {}  (p = {})",
                    r.bottom, r.top, r.p
                );
                let _ = writeln!(out, "predicted class: {}", r.predicted);
                let _ = writeln!(out, "observed class:  {}", r.observed);
                let _ = writeln!(out, "agree: {}", r.agree);
            }
            Report::OracleIslaw(r) => {
                let _ = writeln!(out, "word: {}", r.word);
                let _ = writeln!(out, "group: {}", r.group);
                let _ = writeln!(out, "law: {}", r.law);
            }
            Report::OracleLaws(r) => {
                let _ = writeln!(
                    out,
                    "laws of {} (arity {}, length <= {}): {}",
                    r.group, r.arity, r.max_len, r.count
                );
                for law in &r.laws {
                    let _ = writeln!(out, "  {law}");
                }
            }
            Report::OracleCompare(r) => {
                let _ = writeln!(
                    out,
                    "comparing {} vs {} (arity {}, length <= {})",
                    r.first, r.second, r.arity, r.max_len
                );
                let _ = writeln!(out, "laws of first only:  {}", r.only_first.len());
                let _ = writeln!(out, "laws of second only: {}", r.only_second.len());
                let _ = writeln!(out, "laws of both: {}", r.common.len());
                match &r.verdict {
                    CompareVerdict::Distinguished { witness, law_of } => {
                        let side = match law_of {
                            Side::First => "first",
                            Side::Second => "second",
                        };
                        let _ = writeln!(
                            out,
                            "verdict: distinguished by {witness} (law of {side} only)"
                        );
                    }
                    CompareVerdict::IndistinguishableUpTo { max_len } => {
                        let _ = writeln!(out, "verdict: indistinguishable up to length {max_len}");
                    }
                }
            }
            Report::Crossover(r) => {
                let _ = writeln!(
                    out,
                    "parameters: c={}, z={}, l={}, p={}, v={}, alpha={}",
                    r.c, r.z, r.l, r.p, r.v, r.alpha
                );
                let _ = writeln!(out, "crossover t: {}", r.t);
                let _ = writeln!(
                    out,
                    "at t: bound1 = {}, bound2 = {}",
                    r.bound1_at_t, r.bound2_at_t
                );
            }
            Report::Report(r) => {
                let name_w = r
                    .rows
                    .iter()
                    .map(|row| row.name.len())
                    .max()
                    .unwrap_or(4)
                    .max(4);
                for row in &r.rows {
                    let _ = writeln!(
                        out,
                        "[{:<19}] {:<name_w$}  {}  expected {} / got {}",
                        row.status.label(),
                        row.name,
                        row.inputs,
                        row.expected,
                        row.actual,
                    );
                }
                let _ = writeln!(
                    out,
                    "{} passed, {} failed, {} expected-discrepant, {} total",
                    r.passed,
                    r.failed,
                    r.discrepant,
                    r.rows.len()
                );
            }
        }
        out
    }
}

fn demands(list: &[varwreath_core::Demand]) -> String {
    if list.is_empty() {
        return "(none)".to_string();
    }
    list.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

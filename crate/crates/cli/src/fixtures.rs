//! Fixture files: a flat TOML table of cases, each naming a command, its
//! inputs, and the expected result. The runner evaluates every case and
//! produces one row per case.
//!
//! A case may set `discrepant = true`: its `expect` then records a
//! documented external expectation that this implementation is known to
//! disagree with. Such a row reports `EXPECTED-DISCREPANT` when the actual
//! result indeed differs (and `FAIL` if the flag has gone stale).

use serde::Deserialize;

use varwreath_core::GroupExpr;

use crate::commands::{self, BottomInput, CliError, Limits};
use crate::inputs;
use crate::reports::{CriterionKind, Report, RowReport, RowStatus, RunReport};

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    #[serde(default)]
    pub case: Vec<FixtureCase>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureCase {
    pub name: String,
    pub command: String,
    #[serde(default)]
    pub criterion: Option<String>,
    #[serde(default)]
    pub profile: Option<ProfileToml>,
    #[serde(default)]
    pub abelian: Option<String>,
    #[serde(default)]
    pub pgroup: Option<PGroupToml>,
    #[serde(default)]
    pub shape: Option<String>,
    #[serde(default)]
    pub bottom: Option<GroupExpr>,
    #[serde(default)]
    pub top: Option<GroupExpr>,
    #[serde(default)]
    pub group: Option<GroupExpr>,
    #[serde(default)]
    pub first: Option<GroupExpr>,
    #[serde(default)]
    pub second: Option<GroupExpr>,
    #[serde(default)]
    pub word: Option<String>,
    #[serde(default)]
    pub p: Option<u64>,
    #[serde(default)]
    pub arity: Option<u32>,
    #[serde(default)]
    pub maxlen: Option<u32>,
    #[serde(default)]
    pub c: Option<u64>,
    #[serde(default)]
    pub z: Option<u64>,
    #[serde(default)]
    pub l: Option<u64>,
    #[serde(default)]
    pub v: Option<u32>,
    #[serde(default)]
    pub alpha: Option<u32>,
    pub expect: ExpectToml,
    #[serde(default)]
    pub discrepant: bool,
}

#[derive(Debug, Deserialize, Clone, Copy)]
pub struct ProfileToml {
    pub c: u32,
    pub m: u64,
}

#[derive(Debug, Deserialize, Clone, Copy)]
pub struct PGroupToml {
    pub p: u64,
    pub u: u32,
}

/// Expected outcome; which fields apply depends on the command.
#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExpectToml {
    #[serde(default)]
    pub holds: Option<bool>,
    #[serde(default)]
    pub class: Option<u64>,
    #[serde(default)]
    pub orders: Option<Vec<u64>>,
    #[serde(default)]
    pub agree: Option<bool>,
    #[serde(default)]
    pub predicted: Option<u64>,
    #[serde(default)]
    pub nilpotent: Option<bool>,
    #[serde(default)]
    pub law: Option<bool>,
    #[serde(default)]
    pub t: Option<u64>,
    #[serde(default)]
    pub indistinguishable_up_to: Option<u32>,
}

pub fn parse_fixture_file(text: &str) -> Result<FixtureFile, CliError> {
    toml::from_str(text).map_err(|e| CliError::input(format!("fixture file: {e}")))
}

/// Bundled fixture suites, addressable by name from the CLI.
pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "examples-7" => Some(include_str!("../fixtures/examples-7.toml")),
        "shield-grid" => Some(include_str!("../fixtures/shield-grid.toml")),
        _ => None,
    }
}

fn missing(case: &str, field: &'static str) -> CliError {
    CliError::input(format!("case {case:?}: missing field {field}"))
}

/// Observation extracted from a report for comparison against `expect`.
struct Observed {
    summary: String,
    matches: bool,
}

fn observe(case: &FixtureCase, report: &Report) -> Result<Observed, CliError> {
    let expect = &case.expect;
    let mut checks: Vec<(bool, String)> = Vec::new();
    match report {
        Report::Check(r) => {
            let want = expect
                .holds
                .ok_or_else(|| missing(&case.name, "expect.holds"))?;
            checks.push((
                r.verdict.holds == want,
                format!("holds={}", r.verdict.holds),
            ));
        }
        Report::Shield(r) => {
            let want = expect
                .class
                .ok_or_else(|| missing(&case.name, "expect.class"))?;
            checks.push((r.class == want, format!("class={}", r.class)));
        }
        Report::Kpseries(r) => {
            let want = expect
                .orders
                .as_ref()
                .ok_or_else(|| missing(&case.name, "expect.orders"))?;
            checks.push((&r.orders == want, format!("orders={:?}", r.orders)));
        }
        Report::Lcs(r) => {
            if let Some(want) = &expect.orders {
                checks.push((&r.orders == want, format!("orders={:?}", r.orders)));
            }
            if let Some(want) = expect.nilpotent {
                checks.push((r.nilpotent == want, format!("nilpotent={}", r.nilpotent)));
            }
            if let Some(want) = expect.class {
                checks.push((r.class == Some(want as u32), format!("class={:?}", r.class)));
            }
            if checks.is_empty() {
                return Err(missing(&case.name, "expect.orders/nilpotent/class"));
            }
        }
        Report::OracleShield(r) => {
            let want = expect
                .agree
                .ok_or_else(|| missing(&case.name, "expect.agree"))?;
            checks.push((
                r.agree == want,
                format!(
                    "predicted={} observed={} agree={}",
                    r.predicted, r.observed, r.agree
                ),
            ));
            if let Some(p) = expect.predicted {
                checks.push((r.predicted == p, format!("predicted={}", r.predicted)));
            }
        }
        Report::OracleIslaw(r) => {
            let want = expect
                .law
                .ok_or_else(|| missing(&case.name, "expect.law"))?;
            checks.push((r.law == want, format!("law={}", r.law)));
        }
        Report::OracleCompare(r) => {
            let want = expect
                .indistinguishable_up_to
                .ok_or_else(|| missing(&case.name, "expect.indistinguishable_up_to"))?;
            let got = match &r.verdict {
                crate::reports::CompareVerdict::IndistinguishableUpTo { max_len } => Some(*max_len),
                _ => None,
            };
            checks.push((got == Some(want), format!("verdict={:?}", r.verdict)));
        }
        Report::Crossover(r) => {
            let want = expect.t.ok_or_else(|| missing(&case.name, "expect.t"))?;
            checks.push((r.t == want, format!("t={}", r.t)));
        }
        Report::OracleLaws(_) | Report::Report(_) => {
            return Err(CliError::input(format!(
                "case {:?}: command {:?} is not usable in fixtures",
                case.name, case.command
            )));
        }
    }
    Ok(Observed {
        matches: checks.iter().all(|(ok, _)| *ok),
        summary: checks
            .iter()
            .map(|(_, s)| s.as_str())
            .collect::<Vec<_>>()
            .join(", "),
    })
}

fn expectation_summary(case: &FixtureCase) -> String {
    let e = &case.expect;
    let mut parts = Vec::new();
    if let Some(v) = e.holds {
        parts.push(format!("holds={v}"));
    }
    if let Some(v) = e.class {
        parts.push(format!("class={v}"));
    }
    if let Some(v) = &e.orders {
        parts.push(format!("orders={v:?}"));
    }
    if let Some(v) = e.agree {
        parts.push(format!("agree={v}"));
    }
    if let Some(v) = e.predicted {
        parts.push(format!("predicted={v}"));
    }
    if let Some(v) = e.nilpotent {
        parts.push(format!("nilpotent={v}"));
    }
    if let Some(v) = e.law {
        parts.push(format!("law={v}"));
    }
    if let Some(v) = e.t {
        parts.push(format!("t={v}"));
    }
    if let Some(v) = e.indistinguishable_up_to {
        parts.push(format!("indistinguishable_up_to={v}"));
    }
    parts.join(", ")
}

fn inputs_summary(case: &FixtureCase) -> String {
    let mut parts = Vec::new();
    if let Some(p) = &case.profile {
        parts.push(format!("profile c={},m={}", p.c, p.m));
    }
    if let Some(m) = &case.abelian {
        parts.push(format!("abelian m={m}"));
    }
    if let Some(p) = &case.pgroup {
        parts.push(format!("pgroup p={},u={}", p.p, p.u));
    }
    if let Some(s) = &case.shape {
        parts.push(format!("shape {s}"));
    }
    if let Some(b) = &case.bottom {
        parts.push(format!("bottom {b}"));
    }
    if let Some(t) = &case.top {
        parts.push(format!("top {t}"));
    }
    if let Some(g) = &case.group {
        parts.push(format!("group {g}"));
    }
    if let Some(w) = &case.word {
        parts.push(format!("word {w}"));
    }
    if let Some(p) = case.p {
        parts.push(format!("p={p}"));
    }
    if case.command == "crossover" {
        parts.push(format!(
            "c={},z={},l={},v={},alpha={}",
            case.c.unwrap_or(0),
            case.z.unwrap_or(0),
            case.l.unwrap_or(0),
            case.v.unwrap_or(0),
            case.alpha.unwrap_or(0)
        ));
    }
    parts.join("; ")
}

fn execute(case: &FixtureCase, limits: Limits) -> Result<Report, CliError> {
    match case.command.as_str() {
        "check" => {
            let kind = match &case.criterion {
                None => CriterionKind::Main,
                Some(name) => CriterionKind::parse(name).ok_or_else(|| {
                    CliError::input(format!("case {:?}: unknown criterion {name:?}", case.name))
                })?,
            };
            let shape_text = case
                .shape
                .as_ref()
                .ok_or_else(|| missing(&case.name, "shape"))?;
            let shape = inputs::parse_shape("shape", shape_text)?;
            let bottom = if let Some(p) = &case.profile {
                BottomInput::Profile(
                    varwreath_core::NilpotentProfile::new(p.c, p.m)
                        .map_err(|e| CliError::input(format!("case {:?}: {e}", case.name)))?,
                )
            } else if let Some(m) = &case.abelian {
                BottomInput::AbelianExponent(inputs::parse_exponent("abelian", m)?)
            } else if let Some(pg) = &case.pgroup {
                BottomInput::PGroup { p: pg.p, u: pg.u }
            } else {
                return Err(missing(&case.name, "profile/abelian/pgroup"));
            };
            commands::run_check(kind, &bottom, &shape)
        }
        "shield" => commands::run_shield(
            case.bottom
                .as_ref()
                .ok_or_else(|| missing(&case.name, "bottom"))?,
            case.top
                .as_ref()
                .ok_or_else(|| missing(&case.name, "top"))?,
            case.p.ok_or_else(|| missing(&case.name, "p"))?,
            limits,
        ),
        "kpseries" => commands::run_kpseries(
            case.group
                .as_ref()
                .ok_or_else(|| missing(&case.name, "group"))?,
            case.p.ok_or_else(|| missing(&case.name, "p"))?,
            limits,
        ),
        "lcs" => commands::run_lcs(
            case.group
                .as_ref()
                .ok_or_else(|| missing(&case.name, "group"))?,
            limits,
        ),
        "oracle" => {
            if let Some(word) = &case.word {
                commands::run_oracle_islaw(
                    word,
                    case.group
                        .as_ref()
                        .ok_or_else(|| missing(&case.name, "group"))?,
                    limits,
                )
            } else if case.first.is_some() || case.second.is_some() {
                commands::run_oracle_compare(
                    case.first
                        .as_ref()
                        .ok_or_else(|| missing(&case.name, "first"))?,
                    case.second
                        .as_ref()
                        .ok_or_else(|| missing(&case.name, "second"))?,
                    case.arity.ok_or_else(|| missing(&case.name, "arity"))?,
                    case.maxlen.ok_or_else(|| missing(&case.name, "maxlen"))?,
                    limits,
                )
            } else {
                commands::run_oracle_shield(
                    case.bottom
                        .as_ref()
                        .ok_or_else(|| missing(&case.name, "bottom"))?,
                    case.top
                        .as_ref()
                        .ok_or_else(|| missing(&case.name, "top"))?,
                    case.p.ok_or_else(|| missing(&case.name, "p"))?,
                    limits,
                )
            }
        }
        "crossover" => commands::run_crossover(
            case.c.ok_or_else(|| missing(&case.name, "c"))?,
            case.z.ok_or_else(|| missing(&case.name, "z"))?,
            case.l.ok_or_else(|| missing(&case.name, "l"))?,
            case.p.ok_or_else(|| missing(&case.name, "p"))?,
            case.v.ok_or_else(|| missing(&case.name, "v"))?,
            case.alpha.ok_or_else(|| missing(&case.name, "alpha"))?,
        ),
        other => Err(CliError::input(format!(
            "case {:?}: unknown command {other:?}",
            case.name
        ))),
    }
}

/// Run one case to a row. Input errors propagate (malformed fixtures abort
/// the run); result mismatches become FAIL rows.
pub fn run_case(case: &FixtureCase, limits: Limits) -> Result<RowReport, CliError> {
    let report = execute(case, limits)?;
    let observed = observe(case, &report)?;
    let status = match (case.discrepant, observed.matches) {
        (false, true) => RowStatus::Pass,
        (false, false) => RowStatus::Fail,
        // Discrepant rows record an expectation this implementation is
        // documented to disagree with.
        (true, false) => RowStatus::ExpectedDiscrepant,
        (true, true) => RowStatus::Fail, // stale flag: we now agree
    };
    Ok(RowReport {
        name: case.name.clone(),
        command: case.command.clone(),
        inputs: inputs_summary(case),
        expected: if case.discrepant {
            format!("{} [documented mismatch]", expectation_summary(case))
        } else {
            expectation_summary(case)
        },
        actual: observed.summary,
        status,
    })
}

/// Run a whole fixture file, in order.
pub fn run_file(file: &FixtureFile, limits: Limits) -> Result<RunReport, CliError> {
    let rows = file
        .case
        .iter()
        .map(|case| run_case(case, limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunReport::from_rows(rows))
}

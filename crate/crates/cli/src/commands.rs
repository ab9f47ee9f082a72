//! Implementations of the CLI commands, shared by the binary and the
//! fixture runner.

use varwreath_core::criteria::{
    criterion_abelian, criterion_circle, criterion_finite, criterion_main, criterion_pgroup,
};
use varwreath_core::oracle::{self, compare_varieties_upto, is_law, laws_up_to};
use varwreath_core::shield::{bound1, bound2, crossover, gamma_profile, kp_series, shield_params};
use varwreath_core::word::Word;
use varwreath_core::{
    AbelianShape, ConcreteGroup, CriterionError, Exponent, ExprError, GroupError, GroupExpr,
    NilpotentProfile, OracleError, ShieldError,
};

use crate::reports::*;

/// Caps shared by every command; both have environment-variable overrides in
/// the binary.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub cap: u64,
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap: varwreath_core::DEFAULT_CAP,
            budget: varwreath_core::DEFAULT_BUDGET,
        }
    }
}

/// CLI failure, split by exit code: 2 for input/validation problems, 3 for
/// resource limits (oversize groups, exhausted budgets).
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub message: String,
    pub exit_code: u8,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit_code: 2,
        }
    }

    fn resource(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit_code: 3,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Oversize { .. } | GroupError::Expr(ExprError::Overflow) => {
                CliError::resource(e.to_string())
            }
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<ShieldError> for CliError {
    fn from(e: ShieldError) -> Self {
        match e {
            ShieldError::Group(g) => g.into(),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => CliError::resource(e.to_string()),
            OracleError::Group(g) => g.into(),
            OracleError::Shield(s) => s.into(),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<CriterionError> for CliError {
    fn from(e: CriterionError) -> Self {
        CliError::input(e.to_string())
    }
}

/// The bottom-group description for `check`: exactly one of these.
#[derive(Debug, Clone)]
pub enum BottomInput {
    Profile(NilpotentProfile),
    AbelianExponent(Exponent),
    PGroup { p: u64, u: u32 },
}

pub fn run_check(
    criterion: CriterionKind,
    bottom: &BottomInput,
    shape: &AbelianShape,
) -> Result<Report, CliError> {
    let mut report = CheckReport {
        criterion,
        profile: None,
        abelian_exponent: None,
        pgroup: None,
        shape: shape.clone(),
        verdict: match (criterion, bottom) {
            (CriterionKind::Main, BottomInput::Profile(p)) => criterion_main(p, shape),
            (CriterionKind::Circle, BottomInput::Profile(p)) => criterion_circle(p, shape),
            (CriterionKind::Finite, BottomInput::Profile(p)) => criterion_finite(p, shape)?,
            (CriterionKind::Abelian, BottomInput::AbelianExponent(m)) => {
                criterion_abelian(*m, shape)
            }
            (CriterionKind::Pgroup, BottomInput::PGroup { p, u }) => {
                criterion_pgroup(*p, *u, shape)?
            }
            (kind, _) => {
                return Err(CliError::input(format!(
                    "criterion {} does not accept this bottom-group description \
                     (main/finite/circle take --profile, abelian takes --abelian, pgroup takes --pgroup)",
                    kind.as_str()
                )))
            }
        },
    };
    match bottom {
        BottomInput::Profile(p) => report.profile = Some(*p),
        BottomInput::AbelianExponent(m) => report.abelian_exponent = Some(*m),
        BottomInput::PGroup { p, u } => report.pgroup = Some(PGroupInput { p: *p, u: *u }),
    }
    Ok(Report::Check(report))
}

pub fn run_shield(
    bottom: &GroupExpr,
    top: &GroupExpr,
    p: u64,
    limits: Limits,
) -> Result<Report, CliError> {
    let a = ConcreteGroup::materialize(bottom.clone(), limits.cap)?;
    let b = ConcreteGroup::materialize(top.clone(), limits.cap)?;
    let profile = gamma_profile(&a, p)?;
    let params = shield_params(&b, p)?;
    let class = varwreath_core::shield::shield_class_from(&profile, &params);
    Ok(Report::Shield(ShieldReport {
        bottom: bottom.clone(),
        top: top.clone(),
        p,
        class,
        depth: params.depth(),
        e: params.e_values().to_vec(),
        a: params.a(),
        b: params.b(),
        bottom_class: profile.class(),
        s: profile.s_values().to_vec(),
    }))
}

pub fn run_kpseries(group: &GroupExpr, p: u64, limits: Limits) -> Result<Report, CliError> {
    let g = ConcreteGroup::materialize(group.clone(), limits.cap)?;
    let series = kp_series(&g, p)?;
    Ok(Report::Kpseries(KpReport {
        group: group.clone(),
        p,
        orders: series.term_orders(),
        depth: series.depth(),
    }))
}

pub fn run_lcs(group: &GroupExpr, limits: Limits) -> Result<Report, CliError> {
    let g = ConcreteGroup::materialize(group.clone(), limits.cap)?;
    let series = g.lower_central_series();
    let orders: Vec<u64> = series.iter().map(|s| s.order()).collect();
    let class = g.nilpotency_class();
    Ok(Report::Lcs(LcsReport {
        group: group.clone(),
        orders,
        nilpotent: class.is_some(),
        class,
    }))
}

pub fn run_oracle_shield(
    bottom: &GroupExpr,
    top: &GroupExpr,
    p: u64,
    limits: Limits,
) -> Result<Report, CliError> {
    let r = oracle::shield_vs_brute(bottom, top, p, limits.cap)?;
    Ok(Report::OracleShield(OracleShieldReport {
        bottom: bottom.clone(),
        top: top.clone(),
        p,
        predicted: r.predicted,
        observed: r.observed,
        agree: r.agree,
    }))
}

pub fn run_oracle_islaw(word: &str, group: &GroupExpr, limits: Limits) -> Result<Report, CliError> {
    let w = Word::parse(word).map_err(|e| CliError::input(format!("field word: {e}")))?;
    let g = ConcreteGroup::materialize(group.clone(), limits.cap)?;
    let law = is_law(&w, &g, limits.budget)?;
    Ok(Report::OracleIslaw(IsLawReport {
        word: word.to_string(),
        group: group.clone(),
        law,
    }))
}

pub fn run_oracle_laws(
    group: &GroupExpr,
    arity: u32,
    max_len: u32,
    limits: Limits,
) -> Result<Report, CliError> {
    let g = ConcreteGroup::materialize(group.clone(), limits.cap)?;
    let laws = laws_up_to(&g, arity, max_len, limits.budget)?;
    Ok(Report::OracleLaws(LawsReport {
        group: group.clone(),
        arity,
        max_len,
        count: laws.len(),
        laws: laws.iter().map(|w| w.to_string()).collect(),
    }))
}

pub fn run_oracle_compare(
    first: &GroupExpr,
    second: &GroupExpr,
    arity: u32,
    max_len: u32,
    limits: Limits,
) -> Result<Report, CliError> {
    let g1 = ConcreteGroup::materialize(first.clone(), limits.cap)?;
    let g2 = ConcreteGroup::materialize(second.clone(), limits.cap)?;
    let report = compare_varieties_upto(&g1, &g2, arity, max_len, limits.budget)?;
    Ok(Report::OracleCompare(CompareReport {
        first: first.clone(),
        second: second.clone(),
        arity,
        max_len,
        only_first: report.only_first.iter().map(|w| w.to_string()).collect(),
        only_second: report.only_second.iter().map(|w| w.to_string()).collect(),
        common: report.both.iter().map(|w| w.to_string()).collect(),
        verdict: match report.verdict {
            varwreath_core::ComparisonVerdict::Distinguished {
                witness,
                law_of_first,
            } => CompareVerdict::Distinguished {
                witness: witness.to_string(),
                law_of: if law_of_first {
                    Side::First
                } else {
                    Side::Second
                },
            },
            varwreath_core::ComparisonVerdict::IndistinguishableUpTo(l) => {
                CompareVerdict::IndistinguishableUpTo { max_len: l }
            }
        },
    }))
}

pub fn run_crossover(
    c: u64,
    z: u64,
    l: u64,
    p: u64,
    v: u32,
    alpha: u32,
) -> Result<Report, CliError> {
    let t = crossover(c, z, l, p, v, alpha)?;
    let b1 = bound1(c, t, l, p, v, alpha)?;
    let b2 = bound2(c, t, z, p, v, alpha)?;
    Ok(Report::Crossover(CrossoverReport {
        c,
        z,
        l,
        p,
        v,
        alpha,
        t,
        bound1_at_t: b1.to_string(),
        bound2_at_t: i64::try_from(b2)
            .map_err(|_| CliError::input("bound2 exceeds the reportable range"))?,
    }))
}

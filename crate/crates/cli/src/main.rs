use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use varwreath_cli::commands::{self, BottomInput, CliError, Limits};
use varwreath_cli::reports::{CriterionKind, Report, RowReport, RowStatus, RunReport};
use varwreath_cli::{fixtures, fuzz, inputs};

/// Wreath-product variety toolkit: decide when the variety generated by
/// `A wr B` is the full product variety, compute nilpotency classes of
/// wreath products of p-groups through the K_p-series, and cross-check
/// everything against brute-force enumeration.
///
/// Group expressions are JSON: {"cyclic": 6}, {"direct": [..]},
/// {"power": {"base": .., "k": 3}}, {"wreath": {"bottom": .., "top": ..}}.
/// Abelian shapes are JSON ({"summands": [{"q": 2, "w": 1, "mult": "inf"}],
/// "unbounded": false}) or compact text like "C3^inf x C2^7". Any such
/// argument also accepts @path to read the value from a file.
#[derive(Parser)]
#[command(name = "varwreath", version, max_term_width = 100)]
struct Cli {
    /// Materialization cap for concrete groups, in elements.
    #[arg(long, global = true, env = "VARWREATH_CAP", default_value_t = varwreath_core::DEFAULT_CAP)]
    cap: u64,

    /// Evaluation-step budget for law enumeration.
    #[arg(long, global = true, env = "VARWREATH_BUDGET", default_value_t = varwreath_core::DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for randomized runs (report --fuzz).
    #[arg(long, global = true, env = "VARWREATH_SEED", default_value_t = 0x5eed)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether var(A wr B) equals var(A)var(B).
    Check(CheckArgs),
    /// Nilpotency class of a wreath product of p-groups by the closed formula.
    Shield {
        /// Bottom group expression (JSON or @file).
        #[arg(long)]
        bottom: String,
        /// Top group expression (JSON or @file).
        #[arg(long)]
        top: String,
        /// The prime both groups are p-groups for.
        #[arg(long)]
        p: u64,
    },
    /// K_p-series term orders of a finite p-group.
    Kpseries {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Lower central series and nilpotency class of a materialized group.
    Lcs {
        #[arg(long)]
        group: String,
    },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Least t where the second class bound overtakes the first.
    Crossover {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        z: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        v: u32,
        #[arg(long)]
        alpha: u32,
    },
    /// Run a fixture suite (a TOML table of cases) and summarize pass/fail.
    Report {
        /// Path to a fixture file.
        path: Option<PathBuf>,
        /// Run a bundled suite: examples-7 or shield-grid.
        #[arg(long, conflicts_with = "path")]
        builtin: Option<String>,
        /// Append this many randomized criterion-consistency trials.
        #[arg(long)]
        fuzz: Option<u64>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Bottom group as a nilpotent profile "c=2,m=4" (criteria main, finite, circle).
    #[arg(long, conflicts_with_all = ["abelian", "pgroup"])]
    profile: Option<String>,
    /// Bottom group as an abelian exponent: a number or "inf" (criterion abelian).
    #[arg(long, conflicts_with = "pgroup")]
    abelian: Option<String>,
    /// Bottom group as a p-group "p=2,u=1" (criterion pgroup).
    #[arg(long)]
    pgroup: Option<String>,
    /// Top group shape: JSON, compact text, or @file.
    #[arg(long)]
    shape: String,
    /// Which criterion to run: main, finite, abelian, pgroup, circle.
    /// Defaults to match the bottom-group description.
    #[arg(long)]
    criterion: Option<String>,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let limits = Limits {
        cap: cli.cap,
        budget: cli.budget,
    };
    match &cli.command {
        Command::Check(args) => {
            let shape = inputs::parse_shape("shape", &args.shape)?;
            let bottom = if let Some(p) = &args.profile {
                BottomInput::Profile(inputs::parse_profile("profile", p)?)
            } else if let Some(m) = &args.abelian {
                BottomInput::AbelianExponent(inputs::parse_exponent("abelian", m)?)
            } else if let Some(pg) = &args.pgroup {
                let (p, u) = inputs::parse_pgroup("pgroup", pg)?;
                BottomInput::PGroup { p, u }
            } else {
                return Err(CliError::input(
                    "field profile/abelian/pgroup: exactly one bottom-group description is required",
                ));
            };
            let kind = match &args.criterion {
                Some(name) => CriterionKind::parse(name).ok_or_else(|| {
                    CliError::input(format!(
                        "field criterion: unknown criterion {name:?} \
                         (expected main, finite, abelian, pgroup, or circle)"
                    ))
                })?,
                None => match &bottom {
                    BottomInput::Profile(_) => CriterionKind::Main,
                    BottomInput::AbelianExponent(_) => CriterionKind::Abelian,
                    BottomInput::PGroup { .. } => CriterionKind::Pgroup,
                },
            };
            commands::run_check(kind, &bottom, &shape)
        }
        Command::Shield { bottom, top, p } => commands::run_shield(
            &inputs::parse_group_expr("bottom", bottom)?,
            &inputs::parse_group_expr("top", top)?,
            *p,
            limits,
        ),
        Command::Kpseries { group, p } => {
            commands::run_kpseries(&inputs::parse_group_expr("group", group)?, *p, limits)
        }
        Command::Lcs { group } => {
            commands::run_lcs(&inputs::parse_group_expr("group", group)?, limits)
        }
        Command::Oracle(oracle) => run_oracle(oracle, limits),
        Command::Crossover {
            c,
            z,
            l,
            p,
            v,
            alpha,
        } => commands::run_crossover(*c, *z, *l, *p, *v, *alpha),
        Command::Report {
            path,
            builtin,
            fuzz: fuzz_trials,
        } => {
            let file = match (path, builtin) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        CliError::input(format!("cannot read {}: {e}", path.display()))
                    })?;
                    fixtures::parse_fixture_file(&text)?
                }
                (None, Some(name)) => {
                    let text = fixtures::builtin(name).ok_or_else(|| {
                        CliError::input(format!(
                            "unknown builtin suite {name:?} (have examples-7, shield-grid)"
                        ))
                    })?;
                    fixtures::parse_fixture_file(text)?
                }
                (None, None) => fixtures::FixtureFile::default(),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let mut report = fixtures::run_file(&file, limits)?;
            if let Some(trials) = fuzz_trials {
                let outcome = fuzz::consistency_fuzz(*trials, cli.seed);
                let mut rows = report.rows;
                rows.push(RowReport {
                    name: format!("consistency fuzz ({} trials, seed {})", trials, cli.seed),
                    command: "fuzz".into(),
                    inputs: "random profiles and shapes".into(),
                    expected: "0 mismatches".into(),
                    actual: if outcome.clean() {
                        "0 mismatches".into()
                    } else {
                        outcome.mismatches.join(" | ")
                    },
                    status: if outcome.clean() {
                        RowStatus::Pass
                    } else {
                        RowStatus::Fail
                    },
                });
                report = RunReport::from_rows(rows);
            }
            Ok(Report::Report(report))
        }
    }
}

fn run_oracle(cmd: &OracleCommand, limits: Limits) -> Result<Report, CliError> {
    match cmd {
        OracleCommand::Shield { bottom, top, p } => commands::run_oracle_shield(
            &inputs::parse_group_expr("bottom", bottom)?,
            &inputs::parse_group_expr("top", top)?,
            *p,
            limits,
        ),
        OracleCommand::Islaw { word, group } => {
            commands::run_oracle_islaw(word, &inputs::parse_group_expr("group", group)?, limits)
        }
        OracleCommand::Laws {
            group,
            arity,
            maxlen,
        } => commands::run_oracle_laws(
            &inputs::parse_group_expr("group", group)?,
            *arity,
            *maxlen,
            limits,
        ),
        OracleCommand::Compare {
            first,
            second,
            arity,
            maxlen,
        } => commands::run_oracle_compare(
            &inputs::parse_group_expr("first", first)?,
            &inputs::parse_group_expr("second", second)?,
            *arity,
            *maxlen,
            limits,
        ),
    }
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Shield formula vs brute-force class of a materialized wreath product.
    Shield {
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        top: String,
        #[arg(long)]
        p: u64,
    },
    /// Exhaustively check whether a word is a law of a group.
    Islaw {
        /// Word over x1, x2, …; products with '*', powers with '^',
        /// commutators as [u,w].
        #[arg(long)]
        word: String,
        #[arg(long)]
        group: String,
    },
    /// Enumerate all laws within a bounded word window.
    Laws {
        #[arg(long)]
        group: String,
        #[arg(long)]
        arity: u32,
        #[arg(long)]
        maxlen: u32,
    },
    /// Compare the bounded law sets of two groups.
    Compare {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long)]
        arity: u32,
        #[arg(long)]
        maxlen: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                OutputFormat::Text => print!("{}", report.to_text()),
                OutputFormat::Json => println!("{}", report.to_json()),
            }
            // Fixture runs fail the process when any row fails.
            if let Report::Report(run) = &report {
                if run.failed > 0 {
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code)
        }
    }
}

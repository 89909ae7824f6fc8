//! `quatknot`: lemma sweeps, finite-field census, family generation, switch
//! checks, knot invariants and pair classification.
//!
//! Exit codes: 0 on success, 1 when a checked property fails, 2 on usage,
//! parse or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use quatknot::field::{Field, Scalar};
use quatknot::linkinv::{
    invariants, presentation_from_braid, presentation_from_gauss, BraidWord, CrossingConvention,
    GaussCode,
};
use quatknot::par::ExecMode;
use quatknot::quat2::Mat2;
use quatknot::solver::{classify_pair, enumerate_solutions, hyperbolic_family, HyperbolicParams};
use quatknot::switch::{fe_residual, Switch, SwitchKind};
use quatknot::verify::{verify_lemmas, Sampling};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Library(String),
}

fn lib_err(e: impl std::fmt::Display) -> CliError {
    CliError::Library(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "quatknot",
    version,
    about = "Exact 2x2 matrix switches and virtual knot invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra identities, dependency lemmas and generator.
    VerifyLemmas {
        /// `q`, `fp:<p>` or `qt`.
        #[arg(long, value_parser = parse_field)]
        field: Field,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sweep every element instead of sampling (fp:3 and fp:5 only).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Classify every pair of 2x2 matrices over F_p.
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Build the switch of the canonical family member.
    Generate {
        #[arg(long, value_parser = parse_field)]
        field: Field,
        #[arg(long, allow_hyphen_values = true)]
        a0: String,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        a3: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        b3: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the equation, Yang-Baxter and invertibility status of a switch.
    Check {
        #[arg(long)]
        switch: PathBuf,
    },
    /// Module rank and elementary ideals of a virtual knot.
    Invariant {
        #[arg(long)]
        switch: PathBuf,
        /// Signed Gauss code such as `O1+U2+U1+O2+`.
        #[arg(long, conflicts_with_all = ["braid", "input"])]
        gauss: Option<String>,
        /// Virtual braid word such as `s1 s1 v1`; needs `--strands`.
        #[arg(long, requires = "strands", conflicts_with = "input")]
        braid: Option<String>,
        #[arg(long)]
        strands: Option<usize>,
        /// One Gauss code per line, or braid words with `--strands`;
        /// blank lines and `#` comments are skipped.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Convention::BraidLeftOver)]
        convention: Convention,
    },
    /// Sort a pair into commuting, non-solution, matching or hyperbolic.
    Classify {
        #[arg(long)]
        pair: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    BraidLeftOver,
    OverFirst,
    UnderInputs,
}

impl From<Convention> for CrossingConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::BraidLeftOver => CrossingConvention::BraidLeftOver,
            Convention::OverFirst => CrossingConvention::OverFirst,
            Convention::UnderInputs => CrossingConvention::UnderInputs,
        }
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.into(),
        source,
    })
}

/// Pretty JSON to `out`, or to stdout without one.
fn emit(value: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("plain data") + "\n";
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::VerifyLemmas {
            field,
            samples,
            seed,
            exhaustive,
        } => {
            let sampling = if exhaustive {
                Sampling::Exhaustive
            } else {
                Sampling::Random { samples, seed }
            };
            let report =
                verify_lemmas(field, sampling).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&report.to_json(), None)?;
            Ok(report.passed())
        }
        Command::Enumerate { p, out, sequential } => {
            let mode = if sequential {
                ExecMode::Sequential
            } else {
                ExecMode::default()
            };
            let report =
                enumerate_solutions(p, mode).map_err(|e| CliError::Usage(e.to_string()))?;
            let value = serde_json::to_value(&report).expect("plain data");
            emit(&value, out.as_deref())?;
            if out.is_some() {
                println!(
                    "p = {}: {} pairs, {} solutions, {} commuting, {} matching, {} hyperbolic, {} unresolved",
                    report.p,
                    report.pairs_scanned,
                    report.fe_solutions,
                    report.commuting,
                    report.matching,
                    report.hyperbolic,
                    report.unresolved
                );
            }
            Ok(report.unresolved == 0)
        }
        Command::Generate {
            field,
            a0,
            a1,
            a3,
            b1,
            b3,
            out,
        } => {
            let s = |name: &str, v: &str| {
                Scalar::parse(field, v).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
            };
            let params = HyperbolicParams {
                a0: s("a0", &a0)?,
                a1: s("a1", &a1)?,
                a3: s("a3", &a3)?,
                b1: s("b1", &b1)?,
                b3: s("b3", &b3)?,
            };
            let (a, b) = hyperbolic_family(&params).map_err(|e| CliError::Usage(e.to_string()))?;
            let switch = Switch::noncommutative(&a, &b).map_err(lib_err)?;
            let mut value = switch.to_json();
            value["params"] = params.to_json();
            emit(&value, out.as_deref())?;
            Ok(true)
        }
        Command::Check { switch } => {
            let s = load_switch(&switch)?;
            let fe = if s.kind == SwitchKind::NonCommutative && !s.interchanged {
                let r = fe_residual(&s.a, &s.b).map_err(lib_err)?;
                Some(r)
            } else {
                None
            };
            let ybe = s.yang_baxter();
            let inv = s.invertibility();
            let fe_ok = fe.as_ref().is_none_or(|r| r.is_solution);
            let ok = ybe && inv.s && fe_ok && inv.delta_prime_forms_agree != Some(false);
            let value = json!({
                "tag": s.tag(),
                "field": s.field().to_string(),
                "fe": fe.map(|r| json!({
                    "is_solution": r.is_solution,
                    "is_matching": r.is_matching,
                    "commuting": r.commuting,
                    "residual": r.residual.to_json(),
                })),
                "yang_baxter": ybe,
                "invertibility": serde_json::to_value(&inv).expect("plain data"),
                "ok": ok,
            });
            emit(&value, None)?;
            Ok(ok)
        }
        Command::Invariant {
            switch,
            gauss,
            braid,
            strands,
            input,
            depth,
            convention,
        } => {
            let s = load_switch(&switch)?;
            let conv = convention.into();
            let one = |text: &str| -> Result<Value, CliError> {
                let pres = match strands {
                    Some(n) => {
                        let w = BraidWord::parse(text, n)
                            .map_err(|e| CliError::Usage(e.to_string()))?;
                        presentation_from_braid(&s, &w)
                    }
                    None => {
                        let code =
                            GaussCode::parse(text).map_err(|e| CliError::Usage(e.to_string()))?;
                        presentation_from_gauss(&s, &code, conv)
                    }
                }
                .map_err(lib_err)?;
                let r = invariants(&pres, depth).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(r.to_json(text.trim()))
            };
            let value = match (gauss, braid, input) {
                (Some(code), None, None) if strands.is_none() => one(&code)?,
                (None, Some(word), None) => one(&word)?,
                (None, None, Some(path)) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|source| CliError::Io { path, source })?;
                    let items = text
                        .lines()
                        .map(|l| l.split('#').next().unwrap_or("").trim())
                        .filter(|l| !l.is_empty())
                        .map(one)
                        .collect::<Result<Vec<_>, _>>()?;
                    Value::Array(items)
                }
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --gauss, --braid with --strands, or --input".into(),
                    ))
                }
            };
            emit(&value, None)?;
            Ok(true)
        }
        Command::Classify { pair } => {
            let v = read_json(&pair)?;
            let mat = |key: &str| -> Result<Mat2, CliError> {
                let m = v.get(key).ok_or_else(|| {
                    CliError::Usage(format!("{}: missing \"{key}\"", pair.display()))
                })?;
                serde_json::from_value(m.clone()).map_err(|source| CliError::Json {
                    path: pair.clone(),
                    source,
                })
            };
            let (a, b) = (mat("A")?, mat("B")?);
            let c = classify_pair(&a, &b).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&c.to_json(), None)?;
            Ok(true)
        }
    }
}

fn load_switch(path: &Path) -> Result<Switch, CliError> {
    Switch::from_json(&read_json(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

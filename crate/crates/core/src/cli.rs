//! The `stablecat` command line.
//!
//! Exit codes: 0 verified / hypotheses hold / certificate valid,
//! 1 a claim was falsified, 2 bad input.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::certificate::{check_certificate, decide, DecideInput, DecideKind, Verdict};
use crate::error::{Error, Result};
use crate::json::{parse, UnderMorphismJson};
use crate::oracle::OracleBounds;
use crate::report::{
    check_hypotheses, verify_base_zero, verify_counterexample, BaseZeroConfig, CounterexampleConfig,
};
use crate::sample::DEFAULT_SEED;
use crate::under_cat::UnderMorphism;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "stablecat", version, about = "Exact computations in fgMod(Z/4) and (Z/4 under fgMod(Z/4))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify that Fib/~ -> Ho Fib is not faithful under Z/4.
    VerifyCounterexample {
        /// Run the positive control in plain fgMod(Z/4) instead.
        #[arg(long)]
        base_zero: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Row `a,b` of the first map (Z/4, 2) -> (Z/4+Z/2, [2 0]).
        #[arg(long, value_parser = parse_row, default_value = "1,0")]
        f: [i64; 2],
        /// Row `a,b` of the second map.
        #[arg(long, value_parser = parse_row, default_value = "1,1")]
        g: [i64; 2],
        /// Largest k for swept cylinders with carrier (Z/4)^k.
        #[arg(long, default_value_t = 3)]
        sweep_rank: usize,
    },
    /// Decide one query and print a verdict with its certificate.
    Decide {
        kind: DecideKind,
        #[arg(long)]
        input: PathBuf,
        /// Treat the input as a verdict and re-validate its certificate.
        #[arg(long)]
        check_certificate: bool,
    },
    /// Report whether w + w is a weak equivalence for an under-morphism w.
    CheckHypotheses {
        #[arg(long)]
        input: PathBuf,
    },
}

fn parse_row(s: &str) -> std::result::Result<[i64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([
            a.parse().map_err(|e| format!("{a:?}: {e}"))?,
            b.parse().map_err(|e| format!("{b:?}: {e}"))?,
        ]),
        _ => Err(format!("expected `a,b`, got {s:?}")),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Runs a parsed command, writing to stdout and stderr; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let bounds = OracleBounds::from_env()?;
    match cli.command {
        Command::VerifyCounterexample { base_zero, json, seed, f, g, sweep_rank } => {
            let report = if base_zero {
                verify_base_zero(&BaseZeroConfig { seed, bounds, ..Default::default() })?
            } else {
                let cfg = CounterexampleConfig { seed, pair: (f, g), sweep_rank, bounds, ..Default::default() };
                verify_counterexample(&cfg)?
            };
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", report.render_text());
            }
            Ok(if report.is_verified() { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Command::Decide { kind, input, check_certificate: check } => {
            let text = read(&input)?;
            if check {
                let verdict: Verdict = parse(&text)?;
                if verdict.kind != kind {
                    return Err(Error::Input(format!(
                        "verdict is for {:?}, not {kind:?}",
                        verdict.kind
                    )));
                }
                let valid = check_certificate(&verdict)?;
                println!(
                    "{}",
                    to_json(&serde_json::json!({
                        "schema": crate::json::SCHEMA,
                        "kind": kind,
                        "verdict": verdict.verdict,
                        "certificate_valid": valid,
                    }))
                );
                Ok(if valid { EXIT_OK } else { EXIT_FALSIFIED })
            } else {
                let query: DecideInput = parse(&text)?;
                println!("{}", to_json(&decide(kind, &query)?));
                Ok(EXIT_OK)
            }
        }
        Command::CheckHypotheses { input } => {
            let w: UnderMorphismJson = parse(&read(&input)?)?;
            let report = check_hypotheses(&UnderMorphism::try_from(&w)?)?;
            println!("{}", to_json(&report));
            Ok(if report.coproduct_map_weak_equivalence { EXIT_OK } else { EXIT_FALSIFIED })
        }
    }
}

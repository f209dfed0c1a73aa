//! Command-line front end. Exit status is 0 for a true verdict or success,
//! 1 for a false verdict, 2 for any error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::checker::{check_with, eval_with, PartitionOracle, SuiteConfig};
use crate::closure::{fl_closure, neg_fl_closure, pseudo_atoms, FormulaSet};
use crate::error::Result;
use crate::events::{product_update, reduce_event};
use crate::files::{event_model_from_json, load_definitions, load_model, model_to_json, reading_map_from_json};
use crate::kripke::Mode;
use crate::syntax::{parse_formula, parse_term, Definitions};
use crate::term::term_leq;

/// Seed used by `axioms` when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "lcdk", version, about = "Common and distributed knowledge toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    S5,
    S4,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::S5 => Mode::S5,
            ModeArg::S4 => Mode::S4,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula at a state of a model.
    Check {
        model: PathBuf,
        state: String,
        formula: String,
        /// Reading maps and event models the formula refers to.
        #[arg(long)]
        env: Vec<PathBuf>,
        /// Also print every state where the formula holds.
        #[arg(long)]
        extension: bool,
    },
    /// Decide whether the first term is below the second.
    Leq { left: String, right: String },
    /// Compile dynamic operators away.
    Translate {
        formula: String,
        #[arg(long)]
        env: Vec<PathBuf>,
    },
    /// Apply a semi-public reading map to a model.
    Update { model: PathBuf, map: PathBuf },
    /// Product update of a model with a reading event model.
    Product { model: PathBuf, events: PathBuf },
    /// Check random axiom instances on random models.
    Axioms {
        #[arg(long, value_enum, default_value = "s5")]
        mode: ModeArg,
        #[arg(long, default_value_t = 200)]
        models: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List the closure of a static formula.
    Fl {
        formula: String,
        /// Close under single negation too.
        #[arg(long)]
        neg: bool,
        /// Also list the pseudo-atoms over the negation closure.
        #[arg(long)]
        atoms: bool,
    },
    /// Decide the order by brute force over partitions of a small set.
    OracleLeq {
        left: String,
        right: String,
        #[arg(long, default_value_t = 4)]
        states: usize,
    },
}

fn verdict(out: &mut dyn Write, holds: bool) -> Result<i32> {
    writeln!(out, "{holds}")?;
    Ok(if holds { 0 } else { 1 })
}

fn write_set(out: &mut dyn Write, set: &FormulaSet) -> Result<()> {
    for f in set {
        writeln!(out, "{f}")?;
    }
    Ok(())
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Check {
            model,
            state,
            formula,
            env,
            extension,
        } => {
            let m = load_model(model)?;
            let env = load_definitions(env)?;
            let f = parse_formula(formula, &env)?;
            let holds = check_with(&m, &env, state, &f)?;
            if *extension {
                let mut names = m.state_names(&eval_with(&m, &env, &f)?);
                names.sort();
                writeln!(out, "extension: {{{}}}", names.join(", "))?;
            }
            verdict(out, holds)
        }
        Command::Leq { left, right } => verdict(out, term_leq(&parse_term(left)?, &parse_term(right)?)?),
        Command::Translate { formula, env } => {
            let env = load_definitions(env)?;
            let f = parse_formula(formula, &env)?;
            writeln!(out, "{}", reduce_event(&f, &env)?)?;
            Ok(0)
        }
        Command::Update { model, map } => {
            let m = load_model(model)?;
            let map = reading_map_from_json(&std::fs::read_to_string(map)?)?;
            for warning in map.lint() {
                writeln!(err, "warning: {warning}")?;
            }
            let updated = crate::semipublic::update_model(&m, &map)?;
            updated.validate().into_result()?;
            writeln!(out, "{}", model_to_json(&updated))?;
            Ok(0)
        }
        Command::Product { model, events } => {
            let m = load_model(model)?;
            let em = event_model_from_json(&std::fs::read_to_string(events)?)?;
            let product = product_update(&m, &em)?;
            product.validate().into_result()?;
            let detected = product
                .detect_mode()
                .map_or("none".to_string(), |mode| mode.to_string());
            writeln!(err, "detected mode: {detected}")?;
            writeln!(out, "{}", model_to_json(&product))?;
            Ok(0)
        }
        Command::Axioms { mode, models, seed } => {
            let report = SuiteConfig::new((*mode).into(), *models, *seed).run();
            writeln!(out, "{report}")?;
            Ok(if report.failure_count() == 0 { 0 } else { 1 })
        }
        Command::Fl { formula, neg, atoms } => {
            let f = parse_formula(formula, &Definitions::new())?;
            let input: FormulaSet = [f].into_iter().collect();
            let closure = if *neg {
                neg_fl_closure(&input)?
            } else {
                fl_closure(&input)?
            };
            writeln!(out, "{} formulas", closure.len())?;
            write_set(out, &closure)?;
            if *atoms {
                let found = pseudo_atoms(&input)?;
                writeln!(out, "{} pseudo-atoms", found.len())?;
                for atom in &found {
                    let shown: Vec<String> = atom.iter().map(|g| g.to_string()).collect();
                    writeln!(out, "{{{}}}", shown.join(", "))?;
                }
            }
            Ok(0)
        }
        Command::OracleLeq {
            left,
            right,
            states,
        } => {
            let (s, t) = (parse_term(left)?, parse_term(right)?);
            let atoms = s.atoms().into_iter().chain(t.atoms());
            let oracle = PartitionOracle::new(atoms, *states)?;
            match oracle.countermodel(&s, &t)? {
                None => verdict(out, true),
                Some(witness) => {
                    writeln!(out, "countermodel: {witness}")?;
                    verdict(out, false)
                }
            }
        }
    }
}

/// Runs `cli`, reporting errors on `err`; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                2
            } else {
                0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_args(std::iter::once("lcdk").chain(args.iter().copied()), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn leq_verdicts() {
        assert_eq!(run_str(&["leq", "b*a + c*a", "(b+c)*a"]).0, 0);
        let (code, out, _) = run_str(&["leq", "(b+c)*a", "b*a + c*a"]);
        assert_eq!((code, out.trim()), (1, "false"));
    }

    #[test]
    fn oracle_prints_a_witness() {
        let (code, out, _) = run_str(&["oracle-leq", "(b+c)*a", "b*a+c*a", "--states", "4"]);
        assert_eq!(code, 1);
        assert!(out.contains("countermodel"));
    }

    #[test]
    fn parse_errors_exit_2_with_a_column() {
        let (code, _, err) = run_str(&["leq", "a+", "b"]);
        assert_eq!(code, 2);
        assert!(err.contains("column"), "{err}");
    }

    #[test]
    fn fl_lists_the_closure() {
        let (code, out, _) = run_str(&["fl", "<a+b>p", "--neg"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("8 formulas"));
    }
}

//! Command-line surface of the `germkit` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::decomp::Strategy;
use crate::error::{GermError, Result};
use crate::io::{load_algebra, parse_characters, parse_point, read_text, SubDgaFile};
use crate::kuranishi::{mc_spot_check, SpotCheck};
use crate::report::{
    check_report, compute_germ, decompose_report, nilshadow_report, prepare_grading, resolve_target, run_pipeline,
    subdga_report, GermOptions, GermReport, PipelineOptions, Selection, SCHEMA_VERSION,
};

#[derive(Debug, Parser)]
#[command(name = "germkit", version, about = "Exact Chevalley-Eilenberg, Hodge and Kuranishi computations")]
pub struct Cli {
    /// Emit JSON: to stdout when given alone, or to FILE (text still goes to stdout).
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "-", value_name = "FILE")]
    pub json: Option<String>,
    /// Splitting strategy for the cochain complex.
    #[arg(long, global = true, default_value = "metric", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Maximal t-degree of the Kuranishi series.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse().map_err(|e: GermError| e.to_string())
}

#[derive(Debug, Args)]
pub struct SelectionArgs {
    /// Sub-DGA given by its monomials.
    #[arg(long, value_name = "FILE", conflicts_with = "characters")]
    pub subdga: Option<PathBuf>,
    /// Sub-DGA of monomials with trivial character.
    #[arg(long, value_name = "FILE")]
    pub characters: Option<PathBuf>,
}

impl SelectionArgs {
    fn selection(&self) -> Result<Selection> {
        if let Some(p) = &self.subdga {
            return Ok(Selection::Monomials(SubDgaFile::from_json(&read_text(p)?, &p.display().to_string())?));
        }
        if let Some(p) = &self.characters {
            return Ok(Selection::Characters(parse_characters(&read_text(p)?, &p.display().to_string())?));
        }
        Ok(Selection::Full)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi identity, lower central series, unimodularity, grading, Betti numbers.
    Check { algebra: PathBuf },
    /// Semisimple part of the adjoint action and the nilshadow bracket.
    Nilshadow { algebra: PathBuf },
    /// Harmonic bases, Betti numbers and the weight table.
    Decompose {
        algebra: PathBuf,
        #[command(flatten)]
        selection: SelectionArgs,
    },
    /// Verifies a sub-DGA selection.
    Subdga {
        algebra: PathBuf,
        #[command(flatten)]
        selection: SelectionArgs,
    },
    /// Kuranishi series and obstruction polynomials.
    Kuranishi {
        algebra: PathBuf,
        /// Target algebra: sl2, gl:N, h3, abelian:N or a file.
        #[arg(long, default_value = "sl2")]
        target: String,
        #[command(flatten)]
        selection: SelectionArgs,
    },
    /// Exact spot check of a germ file at a point.
    McCheck {
        germ: PathBuf,
        /// Coordinates such as "t1=1,t4=-1/2"; unnamed variables are zero.
        #[arg(long, default_value = "")]
        point: String,
    },
    /// Nilshadow, grading, decomposition, germ and degree bound in one run.
    Pipeline {
        algebra: PathBuf,
        #[arg(long, default_value = "sl2")]
        target: String,
        #[command(flatten)]
        selection: SelectionArgs,
    },
}

/// Rendered result of one command.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: String,
    pub exit_code: i32,
}

fn outcome<T: Serialize>(report: &T, text: String, exit_code: i32) -> Outcome {
    let json = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    Outcome { text, json, exit_code }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionValue {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McCheckReport {
    pub schema_version: u32,
    pub kind: String,
    pub point: Vec<(String, String)>,
    /// `pass`, `obstructed` or `violation`
    pub verdict: String,
    pub obstruction_values: Vec<ObstructionValue>,
    pub residual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl McCheckReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let pt: Vec<String> = self.point.iter().filter(|(_, v)| v != "0").map(|(k, v)| format!("{}={}", k, v)).collect();
        let _ = writeln!(s, "point: {}", if pt.is_empty() { "origin".into() } else { pt.join(", ") });
        let _ = writeln!(s, "verdict: {}", self.verdict);
        for o in &self.obstruction_values {
            let _ = writeln!(s, "  [{}] = {}", o.label, o.value);
        }
        let _ = writeln!(s, "dω + ½[ω, ω] = {}", self.residual);
        if let Some(d) = &self.detail {
            let _ = writeln!(s, "{}", d);
        }
        s
    }
}

fn mc_check(path: &Path, point: &str) -> Result<Outcome> {
    let stored = GermReport::from_json(&read_text(path)?, &path.display().to_string())?;
    let germ = stored.rebuild()?;
    let vars: Vec<String> = germ.series.variables.to_vec();
    let pt = parse_point(point, &vars)?;
    let check = mc_spot_check(&germ.series, &germ.system, &germ.decomposition, &pt)?;
    let omega = germ.series.phi().eval(&pt);
    let residual = germ.series.dgla.format(2, &germ.series.dgla.mc_residual(&omega));
    let (verdict, values, detail, code) = match check {
        SpotCheck::Pass => ("pass", Vec::new(), None, 0),
        SpotCheck::Obstructed { values, .. } => ("obstructed", values, None, 1),
        SpotCheck::Violation(d) => ("violation", Vec::new(), Some(d), 3),
    };
    let report = McCheckReport {
        schema_version: SCHEMA_VERSION,
        kind: "mc-check".into(),
        point: vars.iter().cloned().zip(pt.iter().map(|x| x.pretty())).collect(),
        verdict: verdict.into(),
        obstruction_values: values
            .into_iter()
            .map(|(k, v)| ObstructionValue { label: germ.system.labels[k].clone(), value: v.pretty() })
            .collect(),
        residual,
        detail,
    };
    Ok(outcome(&report, report.text(), code))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Check { algebra } => {
            let r = check_report(&load_algebra(algebra)?)?;
            Ok(outcome(&r, r.text(), 0))
        }
        Command::Nilshadow { algebra } => {
            let r = nilshadow_report(&load_algebra(algebra)?)?;
            Ok(outcome(&r, r.text(), 0))
        }
        Command::Decompose { algebra, selection } => {
            let r = decompose_report(&load_algebra(algebra)?, cli.strategy, &selection.selection()?)?;
            Ok(outcome(&r, r.text(), 0))
        }
        Command::Subdga { algebra, selection } => {
            let sel = selection.selection()?;
            if matches!(sel, Selection::Full) {
                return Err(GermError::parse("subdga", "give --subdga FILE or --characters FILE"));
            }
            let r = subdga_report(&load_algebra(algebra)?, &sel)?;
            Ok(outcome(&r, r.text(), 0))
        }
        Command::Kuranishi { algebra, target, selection } => {
            let input = load_algebra(algebra)?;
            let graded = prepare_grading(&input.algebra, input.grading.as_ref())?;
            let opts = GermOptions { strategy: cli.strategy, cap: cli.cap, selection: selection.selection()? };
            let germ = compute_germ(&graded.algebra, graded.weights, &resolve_target(target)?, &opts)?;
            let code = if germ.report.failed_checks().is_empty() { 0 } else { 3 };
            Ok(outcome(&germ.report, germ.report.text(), code))
        }
        Command::McCheck { germ, point } => mc_check(germ, point),
        Command::Pipeline { algebra, target, selection } => {
            let text = read_text(algebra)?;
            let opts = PipelineOptions {
                germ: GermOptions { strategy: cli.strategy, cap: cli.cap, selection: selection.selection()? },
                target: resolve_target(target)?,
            };
            let r = run_pipeline(&text, &algebra.display().to_string(), &opts)?;
            let code = if r.failed_checks().is_empty() { 0 } else { 3 };
            Ok(outcome(&r, r.text(), code))
        }
    }
}

/// Runs the CLI and writes its output; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(out) => {
            match cli.json.as_deref() {
                Some("-") => print!("{}", out.json),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.json) {
                        eprintln!("error: cannot write {}: {}", path, e);
                        return 2;
                    }
                    print!("{}", out.text);
                }
                None => print!("{}", out.text),
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    }
}

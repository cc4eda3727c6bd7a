use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use nervekit::affine::affine_check;
use nervekit::bar::{bar, bar_ex};
use nervekit::cover::{cech_tabulated, whitehead_report, Sections};
use nervekit::homology::homology_of;
use nervekit::json::{
    to_pretty, BarInputJson, BisimplicialSetJson, CategoryJson, CoverJson, PosetJson, SimplicialSetJson,
};
use nervekit::poset::{ex, nerve, FiniteCategory};
use nervekit::segal::{category_report, segal_check};
use nervekit::simplicial::SimplicialSet;
use nervekit::{Error, DEFAULT_CAP};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  the check ran and its verdict is negative (the report is still written)
  2  command-line usage error
  3  input or output file could not be read or written
  4  input violates its JSON schema or describes an invalid object
  5  an enumeration cap was exceeded
  6  an internal invariant failed

Errors are reported on stderr as {\"error\": {\"kind\", \"exit_code\", \"message\"}}.";

#[derive(Parser, Debug)]
#[command(name = "nervekit", version, about = "Finite simplicial objects, nerves, bar constructions and cover pipelines", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Dimension bound for every construction.
    #[arg(long, global = true, default_value_t = 3)]
    trunc: usize,
    /// Enumeration limit for the Ex constructions and lifting squares.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SectionsArg {
    Collapsed,
    Witnessed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nerve of a finite category or poset.
    Nerve { input: PathBuf },
    /// Kan's Ex of a simplicial set.
    Ex { input: PathBuf },
    /// Čech nerve of a cover complex.
    Cech {
        input: PathBuf,
        /// One sample point (collapsed) or one point per maximal patch set (witnessed).
        #[arg(long, value_enum, default_value_t = SectionsArg::Collapsed)]
        sections: SectionsArg,
    },
    /// Two-sided bar construction of a weight and a diagram on a finite category.
    Bar {
        input: PathBuf,
        /// Build the Ex-modified bar construction instead.
        #[arg(long)]
        ex: bool,
    },
    /// Integral homology in degrees below the truncation.
    Homology { input: PathBuf },
    /// Homology pipeline, ψ certificate, factorization and lifting report for a cover.
    Whitehead { input: PathBuf },
    /// Segal maps of a category nerve (with completeness) or of a bisimplicial set.
    Segal {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Rows of a bisimplicial input to check.
        #[arg(long, default_value_t = 0)]
        rows: usize,
    },
    /// Exact checks of the affine cosimplicial identities and naturality.
    AffineCheck {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Naturality is checked for all monotone [n] → [k] with n, k at most this.
        #[arg(long, default_value_t = 3)]
        naturality: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Schema(String),
    Cap(String),
    Invariant(String),
}

impl Failure {
    fn kind(&self) -> (&'static str, u8, &str) {
        match self {
            Failure::Io(m) => ("io", 3, m),
            Failure::Schema(m) => ("schema", 4, m),
            Failure::Cap(m) => ("cap", 5, m),
            Failure::Invariant(m) => ("invariant", 6, m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Schema(e.to_string()),
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Schema(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CategoryInput {
    Category(CategoryJson),
    Poset(PosetJson),
}

impl CategoryInput {
    fn build(&self) -> nervekit::Result<FiniteCategory> {
        match self {
            CategoryInput::Category(c) => c.build(),
            CategoryInput::Poset(p) => Ok(FiniteCategory::from_poset(&p.build()?)),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SegalInput {
    Category(CategoryInput),
    Bisimplicial(BisimplicialSetJson),
}

/// Result of a command: JSON payload and whether its verdict holds.
struct Outcome {
    value: Value,
    passed: bool,
    /// First line of the text format.
    headline: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn sset(x: &SimplicialSet) -> Outcome {
    let counts = x.generator_counts();
    let headline = format!(
        "simplicial set: nondegenerate simplices {counts:?}, euler characteristic {}{}",
        x.euler_characteristic(),
        if x.is_truncated() { ", truncated" } else { "" }
    );
    Outcome { value: to_value(&SimplicialSetJson::from(x)), passed: true, headline }
}

fn verdict<T: Serialize>(report: &T, passed: bool) -> Outcome {
    Outcome { value: to_value(report), passed, headline: format!("verdict: {}", if passed { "pass" } else { "fail" }) }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let (trunc, cap) = (cli.trunc, cli.cap);
    Ok(match &cli.command {
        Command::Nerve { input } => sset(&nerve(&read_json::<CategoryInput>(input)?.build()?, trunc)),
        Command::Ex { input } => sset(&ex(&read_json::<SimplicialSetJson>(input)?.build()?, trunc, cap)?),
        Command::Cech { input, sections } => {
            let cov = read_json::<CoverJson>(input)?.build()?;
            let sections = match sections {
                SectionsArg::Collapsed => Sections::Collapsed,
                SectionsArg::Witnessed => Sections::Witnessed,
            };
            sset(&cech_tabulated(&cov, sections, trunc)?.set)
        }
        Command::Bar { input, ex } => {
            let (w, d) = read_json::<BarInputJson>(input)?.build()?;
            sset(&if *ex { bar_ex(&w, &d, trunc, cap)? } else { bar(&w, &d, trunc)? })
        }
        Command::Homology { input } => {
            let h = homology_of(&read_json::<SimplicialSetJson>(input)?.build()?, trunc)?;
            Outcome { value: to_value(&h), passed: true, headline: format!("homology: {h}") }
        }
        Command::Whitehead { input } => {
            let r = whitehead_report(&read_json::<CoverJson>(input)?.build()?, trunc, cap)?;
            verdict(&r, r.passed)
        }
        Command::Segal { input, n_max, rows } => match read_json::<SegalInput>(input)? {
            SegalInput::Category(c) => {
                let r = category_report(&c.build()?, *n_max, trunc)?;
                verdict(&r, r.segal.passed)
            }
            SegalInput::Bisimplicial(b) => {
                let r = segal_check(&b.build()?, *n_max, *rows)?;
                verdict(&r, r.passed)
            }
        },
        Command::AffineCheck { n_max, naturality } => {
            let r = affine_check(*n_max, *naturality)?;
            verdict(&r, r.passed)
        }
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Indented `key: value` rendering of a JSON value.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => to_pretty(&outcome.value),
        Format::Text => {
            let mut s = format!("{}\n", outcome.headline);
            render_text(&outcome.value, 0, &mut s);
            s
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|()| out.flush()).map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o).map(|()| o.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (kind, code, message) = f.kind();
            let report = serde_json::json!({ "error": { "kind": kind, "exit_code": code, "message": message } });
            eprint!("{}", to_pretty(&report));
            ExitCode::from(code)
        }
    }
}

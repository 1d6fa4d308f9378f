//! Front end for `tricl-core`: reads JSON variety descriptions and prints
//! reports as text or JSON.

pub mod error;
pub mod render;
pub mod report;
pub mod selftest;
pub mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use tricl_core::Method;

pub use error::CliError;
pub use report::{run_command, Command, Report};
pub use spec::{parse_spec, parse_spec_with_limit, VarietySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Formula,
    Snf,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Snf => Method::Snf,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tricl", version, about = "Divisor class groups and Cox rings of trinomial varieties")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Check that a spec parses and is valid.
    Validate { path: PathBuf },
    /// Bring the data into adjusted form.
    Adjust { path: PathBuf },
    /// Block gcds, c(i), dimension and rationality class.
    Invariants { path: PathBuf },
    /// Divisor class group.
    Classgroup {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Cox ring data of the total coordinate space.
    Coxring { path: PathBuf },
    /// Iterate Cox rings until a factorial variety is reached.
    Iterate { path: PathBuf },
    /// Du Val correspondence for hyperplatonic data.
    Duval { path: PathBuf },
    /// Class group of a Type 1 variety.
    #[command(name = "type1-classgroup")]
    Type1Classgroup { path: PathBuf },
    /// Everything above.
    Report { path: PathBuf },
    /// Run the built-in golden examples.
    Selftest,
}

/// What one input produced: report text for stdout, error text for
/// stderr, and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn process(cmd: Command, path: &Path, max_block: usize, format: Format, label: Option<&str>) -> Outcome {
    let result = read_input(path)
        .and_then(|text| parse_spec_with_limit(&text, max_block))
        .and_then(|spec| run_command(cmd, &spec));
    match result {
        Ok(report) => {
            let value = serde_json::to_value(&report).expect("reports serialize");
            let stdout = match (format, label) {
                (Format::Json, None) => format!("{value}\n"),
                (Format::Json, Some(file)) => format!("{}\n", json!({ "file": file, "report": value })),
                (Format::Text, None) => render::render_text(&value),
                (Format::Text, Some(file)) => format!("== {file} ==\n{}", render::render_text(&value)),
            };
            Outcome { stdout, stderr: String::new(), code: 0 }
        }
        Err(e) => {
            let code = e.exit_code();
            let where_ = label.map(str::to_string).unwrap_or_else(|| path.display().to_string());
            let stderr = format!("error: {where_}: {e}\n");
            let stdout = match format {
                Format::Json => {
                    let mut obj = json!({ "error": { "code": code, "message": e.to_string() } });
                    if let Some(file) = label {
                        obj["file"] = json!(file);
                    }
                    format!("{obj}\n")
                }
                Format::Text => label.map(|f| format!("== {f} ==\nerror: {e}\n")).unwrap_or_default(),
            };
            Outcome { stdout, stderr, code }
        }
    }
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io { path: dir.display().to_string(), source };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// A directory runs every `*.json` file in it, in parallel, and ends with
/// a summary; the exit code is the largest of the per-file codes.
fn run_path(cmd: Command, path: &Path, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let max_block = match spec::max_block_from_env() {
        Ok(n) => n,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    if !path.is_dir() {
        let o = process(cmd, path, max_block, format, None);
        let _ = out.write_all(o.stdout.as_bytes());
        let _ = err.write_all(o.stderr.as_bytes());
        return o.code;
    }
    let files = match json_files(path) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let outcomes: Vec<Outcome> = files
        .par_iter()
        .map(|f| {
            let label = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            process(cmd, f, max_block, format, Some(&label))
        })
        .collect();
    for o in &outcomes {
        let _ = out.write_all(o.stdout.as_bytes());
        let _ = err.write_all(o.stderr.as_bytes());
    }
    let failed = outcomes.iter().filter(|o| o.code != 0).count();
    let ok = outcomes.len() - failed;
    match format {
        Format::Json => {
            let _ = writeln!(out, "{}", json!({ "summary": { "files": outcomes.len(), "ok": ok, "failed": failed } }));
        }
        Format::Text => {
            let _ = writeln!(out, "summary: {} files, {ok} ok, {failed} failed", outcomes.len());
        }
    }
    outcomes.iter().map(|o| o.code).max().unwrap_or(0)
}

fn run_selftest(format: Format, out: &mut dyn Write) -> u8 {
    let lines = selftest::run_selftest();
    let failed = lines.iter().filter(|l| !l.passed).count();
    match format {
        Format::Json => {
            let items: Vec<_> = lines
                .iter()
                .map(|l| json!({ "name": l.name, "passed": l.passed, "detail": l.detail }))
                .collect();
            let _ = writeln!(out, "{}", json!({ "selftest": items, "failed": failed }));
        }
        Format::Text => {
            for l in &lines {
                let tag = if l.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{tag} {}: {}", l.name, l.detail);
            }
            let _ = writeln!(out, "{} of {} passed", lines.len() - failed, lines.len());
        }
    }
    if failed == 0 {
        0
    } else {
        5
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let (cmd, path) = match cli.command {
        Sub::Validate { path } => (Command::Validate, path),
        Sub::Adjust { path } => (Command::Adjust, path),
        Sub::Invariants { path } => (Command::Invariants, path),
        Sub::Classgroup { path, method } => (Command::ClassGroup(method.into()), path),
        Sub::Coxring { path } => (Command::CoxRing, path),
        Sub::Iterate { path } => (Command::Iterate, path),
        Sub::Duval { path } => (Command::DuVal, path),
        Sub::Type1Classgroup { path } => (Command::Type1ClassGroup, path),
        Sub::Report { path } => (Command::Report, path),
        Sub::Selftest => return run_selftest(cli.format, out),
    };
    run_path(cmd, &path, cli.format, out, err)
}

//! Command-line front end for the `betadesign` library.
//!
//! Exit codes are shared by every subcommand: `0` feasible or verified, `1`
//! infeasible or refuted, `2` usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use betadesign::beta_verifier::tdesign_polynomial_roots;
use betadesign::bounds::{feasibility_report, FeasibilityReport, Overall};
use betadesign::constructions::ConstructionName;
use betadesign::design_model::{complement_design, DesignParameters};
use betadesign::exact_arith::format_rational;
use betadesign::Design;

pub mod screen;
pub mod verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refuted(String),
    #[error(transparent)]
    Library(#[from] betadesign::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Refuted(_) => EXIT_REFUTED,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "betadesign",
    version,
    about = "Exact feasibility screening and brute-force verification of β(i) designs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every necessary condition for a β(i) design with parameters (v, k, d).
    Report {
        v: i64,
        k: i64,
        d: i64,
        i: i64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Feasibility over a parameter grid, one row per tuple.
    Screen(screen::ScreenArgs),
    /// Brute-force verification of a design file.
    Verify(verify::VerifyArgs),
    /// Write a built-in design as canonical JSON.
    Construct {
        /// witt24, fano, pair:K, complete:V,K or complement:PATH
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integer zeros in 1..=k of the t-design polynomial at level i.
    TdesignRoots {
        v: i64,
        k: i64,
        d: i64,
        i: i64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Report { v, k, d, i, format } => cmd_report(v, k, d, i, format, out),
        Command::Screen(args) => screen::cmd_screen(&args, out),
        Command::Verify(args) => verify::cmd_verify(&args, out),
        Command::Construct { name, out: path } => cmd_construct(&name, path.as_deref(), out),
        Command::TdesignRoots { v, k, d, i, format } => cmd_tdesign_roots(v, k, d, i, format, out),
    }
}

pub(crate) fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write_stdout(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(io_err(std::path::Path::new("<stdout>")))
}

pub(crate) fn read_design(path: &std::path::Path) -> CliResult<Design> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    Design::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn render_report_text(r: &FeasibilityReport) -> String {
    let mut s = format!(
        "parameters: v={} k={} d={} i={} (k-d={})\n",
        r.v,
        r.k,
        r.d,
        r.i,
        r.k - r.d
    );
    match &r.overall {
        Overall::Infeasible(rules) => {
            let names: Vec<&str> = rules.iter().map(|r| r.as_str()).collect();
            s.push_str(&format!("verdict: infeasible ({})\n", names.join(", ")));
        }
        other => s.push_str(&format!("verdict: {}\n", other.verdict())),
    }
    if let Some(p) = &r.prop0 {
        s.push_str(&format!("b_max: {}\n", format_rational(&p.b_max)));
    }
    if let Some(w) = &r.window {
        s.push_str(&format!("window on v: {}\n", w.describe()));
    }
    for c in &r.checks {
        let tag = match (c.applicable, c.passed) {
            (false, _) => "n/a ",
            (true, true) => "pass",
            (true, false) => "FAIL",
        };
        s.push_str(&format!("  [{tag}] {:<16} {}\n", c.rule.as_str(), c.detail));
    }
    s
}

fn cmd_report(v: i64, k: i64, d: i64, i: i64, format: TextFormat, out: &mut dyn Write) -> CliResult<i32> {
    let r = feasibility_report(v, k, d, i).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match format {
        TextFormat::Text => render_report_text(&r),
        TextFormat::Json => format!("{}\n", serde_json::to_string_pretty(&r).expect("report serializes")),
    };
    write_stdout(out, &text)?;
    Ok(if r.is_feasible() { EXIT_OK } else { EXIT_REFUTED })
}

fn cmd_construct(name: &str, path: Option<&std::path::Path>, out: &mut dyn Write) -> CliResult<i32> {
    let design = if let Some(input) = name.strip_prefix("complement:") {
        complement_design(&read_design(std::path::Path::new(input))?)
    } else {
        let parsed: ConstructionName = name
            .parse()
            .map_err(|e: betadesign::Error| CliError::Refuted(e.to_string()))?;
        parsed.build().map_err(|e| CliError::Refuted(e.to_string()))?.design
    };
    let text = design.to_json();
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_err(p))?,
        None => write_stdout(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn cmd_tdesign_roots(v: i64, k: i64, d: i64, i: i64, format: TextFormat, out: &mut dyn Write) -> CliResult<i32> {
    let to_usize = |x: i64, name: &str| {
        usize::try_from(x).map_err(|_| CliError::Usage(format!("{name} must be non-negative, got {x}")))
    };
    let params = DesignParameters::new(to_usize(v, "v")?, to_usize(k, "k")?, to_usize(d, "d")?, 0)?;
    let r = tdesign_polynomial_roots(&params, to_usize(i, "i")?).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match format {
        TextFormat::Json => format!("{}\n", serde_json::to_string_pretty(&r).expect("roots serialize")),
        TextFormat::Text => {
            let mut s = String::new();
            for (t, value) in &r.values {
                s.push_str(&format!("t={t}: {value}\n"));
            }
            let roots: Vec<String> = r.roots.iter().map(|t| t.to_string()).collect();
            s.push_str(&format!("roots: [{}]\n", roots.join(", ")));
            match r.smallest {
                Some(t) => s.push_str(&format!("smallest: {t}\n")),
                None => s.push_str("smallest: none\n"),
            }
            if r.degenerate {
                s.push_str("note: i = 1, smallest zero is d+1\n");
            }
            s
        }
    };
    write_stdout(out, &text)?;
    Ok(if r.smallest.is_some() { EXIT_OK } else { EXIT_REFUTED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("betadesign").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn report_exit_codes() {
        let (code, out, _) = run_args(&["report", "24", "8", "4", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("verdict: feasible") && out.contains("b_max: 759"));
        let (code, out, _) = run_args(&["report", "20", "10", "4", "3"]);
        assert_eq!(code, 1);
        assert!(out.contains("theorem1"));
        assert_eq!(run_args(&["report", "8", "9", "1", "1"]).0, 2);
        assert_eq!(run_args(&["report", "8"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["--version"]).0, 0);
    }

    #[test]
    fn report_json() {
        let (code, out, _) = run_args(&["report", "11", "4", "1", "1", "--format", "json"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["overall"]["failing_rules"][0], "divisibility-1.1");
    }

    #[test]
    fn construct_names() {
        let (code, out, _) = run_args(&["construct", "pair:4"]);
        assert_eq!(code, 0);
        assert_eq!(Design::from_json(&out).unwrap().b(), 2);
        assert_eq!(run_args(&["construct", "golay"]).0, 1);
        assert_eq!(run_args(&["construct", "pair:1"]).0, 1);
        assert_eq!(run_args(&["construct", "complement:/nonexistent.json"]).0, 2);
    }

    #[test]
    fn tdesign_roots_text() {
        let (code, out, _) = run_args(&["tdesign-roots", "24", "8", "4", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("t=1: 204") && out.contains("smallest: 5"));
        let (_, out, _) = run_args(&["tdesign-roots", "24", "8", "4", "1"]);
        assert!(out.contains("note: i = 1"));
        assert_eq!(run_args(&["tdesign-roots", "24", "8", "4", "9"]).0, 2);
    }
}

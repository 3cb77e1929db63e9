//! Grid screening: one feasibility row per parameter tuple.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use betadesign::bounds::{feasibility_report, perfect_code_bounds, perfect_code_report, FeasibilityReport};
use betadesign::exact_arith::format_rational;

use crate::{io_err, CliError, CliResult, EXIT_OK, VERSION};

/// Largest grid the screener accepts.
pub const MAX_TUPLES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScreenMode {
    Design,
    PerfectCode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScreenFormat {
    Csv,
    Json,
}

/// Inclusive integer range written `N` or `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    fn clamp(self, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
        self.lo.max(lo)..=self.hi.min(hi)
    }
}

impl std::str::FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    #[arg(long, value_enum, default_value_t = ScreenMode::Design)]
    pub mode: ScreenMode,
    /// Point counts (design mode) or an override in perfect-code mode.
    #[arg(long)]
    pub v: Option<IntRange>,
    #[arg(long)]
    pub k: IntRange,
    /// Largest intersection; defaults to every `d < k`.
    #[arg(long)]
    pub d: Option<IntRange>,
    /// Levels; defaults to every `1 <= i <= k-d`.
    #[arg(long)]
    pub i: Option<IntRange>,
    /// Code radius, perfect-code mode only.
    #[arg(long)]
    pub e: Option<IntRange>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = ScreenFormat::Csv)]
    pub format: ScreenFormat,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenRow {
    pub v: i64,
    pub k: i64,
    pub d: i64,
    pub i: i64,
    pub mode: String,
    pub verdict: String,
    pub failing_rule: String,
    pub b_max_num: String,
    pub b_max_den: String,
    pub window_lo: String,
    pub window_hi: String,
    pub gamma_annotation: String,
}

impl ScreenRow {
    pub fn from_report(r: &FeasibilityReport, mode: &str, extra: Option<String>) -> Self {
        let (num, den) = r
            .prop0
            .as_ref()
            .map(|p| (p.b_max.numer().to_string(), p.b_max.denom().to_string()))
            .unwrap_or_default();
        let (lo, hi) = r
            .window
            .as_ref()
            .map(|w| {
                (
                    format_rational(&w.lower),
                    w.upper.as_ref().map(format_rational).unwrap_or_else(|| "inf".into()),
                )
            })
            .unwrap_or_default();
        let mut gamma = r.gamma_annotation();
        if let Some(x) = extra {
            if !gamma.is_empty() {
                gamma.push(';');
            }
            gamma.push_str(&x);
        }
        let rules: Vec<&str> = r.overall.failing_rules().iter().map(|r| r.as_str()).collect();
        ScreenRow {
            v: r.v,
            k: r.k,
            d: r.d,
            i: r.i,
            mode: mode.into(),
            verdict: r.overall.verdict().into(),
            failing_rule: rules.join(";"),
            b_max_num: num,
            b_max_den: den,
            window_lo: lo,
            window_hi: hi,
            gamma_annotation: gamma,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Tuple {
    Design { v: i64, k: i64, d: i64, i: i64 },
    Code { e: i64, k: i64, v: i64 },
}

fn visit_design(args: &ScreenArgs, f: &mut dyn FnMut(Tuple) -> bool) -> CliResult<()> {
    let v_range = args.v.ok_or_else(|| CliError::Usage("design mode needs --v".into()))?;
    for v in v_range.iter() {
        for k in args.k.clamp(1, v - 1) {
            let d_range = args.d.unwrap_or(IntRange { lo: 0, hi: k - 1 });
            for d in d_range.clamp(0, k - 1) {
                let i_range = args.i.unwrap_or(IntRange { lo: 1, hi: k - d });
                for i in i_range.clamp(1, i64::MAX) {
                    if !f(Tuple::Design { v, k, d, i }) {
                        return Ok(());
                    }
                }
            }
        }
    }
    Ok(())
}

fn visit_code(args: &ScreenArgs, f: &mut dyn FnMut(Tuple) -> bool) -> CliResult<()> {
    let e_range = args
        .e
        .ok_or_else(|| CliError::Usage("perfect-code mode needs --e".into()))?;
    for e in e_range.clamp(1, i64::MAX) {
        // d = k - 2e - 1 >= 0
        for k in args.k.clamp(2 * e + 1, i64::MAX) {
            // up to the older bound v <= (k-1)(2e+1)/e unless overridden
            let roos = ((k - 1) * (2 * e + 1)) / e;
            let v_range = args.v.unwrap_or(IntRange {
                lo: k + 1,
                hi: roos.max(k + 1),
            });
            for v in v_range.clamp(k + 1, i64::MAX) {
                if !f(Tuple::Code { e, k, v }) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn tuples(args: &ScreenArgs) -> CliResult<Vec<Tuple>> {
    let visit = match args.mode {
        ScreenMode::Design => visit_design,
        ScreenMode::PerfectCode => visit_code,
    };
    let mut count = 0u64;
    visit(args, &mut |_| {
        count += 1;
        count <= MAX_TUPLES
    })?;
    if count > MAX_TUPLES {
        return Err(CliError::Usage(format!("grid exceeds {MAX_TUPLES} tuples")));
    }
    if count == 0 {
        return Err(CliError::Usage("parameter grid is empty".into()));
    }
    let mut out = Vec::with_capacity(count as usize);
    visit(args, &mut |t| {
        out.push(t);
        true
    })?;
    Ok(out)
}

fn evaluate(t: Tuple) -> CliResult<ScreenRow> {
    match t {
        Tuple::Design { v, k, d, i } => {
            let r = feasibility_report(v, k, d, i)?;
            Ok(ScreenRow::from_report(&r, "design", None))
        }
        Tuple::Code { e, k, v } => {
            let r = perfect_code_report(e, k, v)?;
            let extra = perfect_code_bounds(e, k).ok().map(|p| {
                format!(
                    "thm3=[{},{}];roos={}",
                    p.lower_annotation(),
                    p.upper_annotation(),
                    format_rational(&p.roos_upper)
                )
            });
            Ok(ScreenRow::from_report(&r, "perfect-code", extra))
        }
    }
}

/// All rows for `args`, sorted by `(v, k, d, i)`.
pub fn screen_rows(args: &ScreenArgs) -> CliResult<Vec<ScreenRow>> {
    let tuples = tuples(args)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let mut rows = pool.install(|| tuples.par_iter().map(|&t| evaluate(t)).collect::<CliResult<Vec<_>>>())?;
    rows.sort_by_key(|r| (r.v, r.k, r.d, r.i));
    Ok(rows)
}

pub const CSV_HEADER: &str =
    "v,k,d,i,mode,verdict,failing_rule,b_max_num,b_max_den,window_lo,window_hi,gamma_annotation";

pub fn render_csv(rows: &[ScreenRow], mode: ScreenMode) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8");
    format!("# betadesign {VERSION} screen mode={}\n{body}", mode_name(mode))
}

pub fn render_json(rows: &[ScreenRow], mode: ScreenMode) -> String {
    let doc = serde_json::json!({
        "tool": format!("betadesign {VERSION}"),
        "mode": mode_name(mode),
        "rows": rows,
    });
    format!("{}\n", serde_json::to_string_pretty(&doc).expect("rows serialize"))
}

/// Rows back from a CSV rendering, skipping the `#` header line.
pub fn parse_csv(text: &str) -> Result<Vec<ScreenRow>, csv::Error> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

fn mode_name(mode: ScreenMode) -> &'static str {
    match mode {
        ScreenMode::Design => "design",
        ScreenMode::PerfectCode => "perfect-code",
    }
}

pub fn summary(rows: &[ScreenRow]) -> String {
    let mut verdicts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut rules: BTreeMap<&str, usize> = BTreeMap::new();
    for r in rows {
        *verdicts.entry(&r.verdict).or_default() += 1;
        for rule in r.failing_rule.split(';').filter(|s| !s.is_empty()) {
            *rules.entry(rule).or_default() += 1;
        }
    }
    let v: Vec<String> = verdicts.iter().map(|(k, n)| format!("{k}={n}")).collect();
    let mut s = format!("rows={} {}\n", rows.len(), v.join(" "));
    for (rule, n) in rules {
        s.push_str(&format!("  {rule}: {n}\n"));
    }
    s
}

pub fn cmd_screen(args: &ScreenArgs, out: &mut dyn Write) -> CliResult<i32> {
    let rows = screen_rows(args)?;
    let text = match args.format {
        ScreenFormat::Csv => render_csv(&rows, args.mode),
        ScreenFormat::Json => render_json(&rows, args.mode),
    };
    std::fs::write(&args.out, text).map_err(io_err(&args.out))?;
    out.write_all(summary(&rows).as_bytes())
        .map_err(io_err(std::path::Path::new("<stdout>")))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(mode: ScreenMode) -> ScreenArgs {
        ScreenArgs {
            mode,
            v: None,
            k: "8".parse().unwrap(),
            d: None,
            i: None,
            e: None,
            out: PathBuf::from("unused"),
            format: ScreenFormat::Csv,
            jobs: Some(2),
        }
    }

    #[test]
    fn ranges_parse() {
        assert_eq!("3".parse::<IntRange>().unwrap(), IntRange { lo: 3, hi: 3 });
        assert_eq!("2..5".parse::<IntRange>().unwrap(), IntRange { lo: 2, hi: 5 });
        assert_eq!("2..=5".parse::<IntRange>().unwrap(), IntRange { lo: 2, hi: 5 });
        assert!("5..2".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
    }

    #[test]
    fn witt_row_levels() {
        let mut a = args(ScreenMode::Design);
        a.v = Some("24".parse().unwrap());
        a.d = Some("4".parse().unwrap());
        let rows = screen_rows(&a).unwrap();
        let feasible: Vec<i64> = rows.iter().filter(|r| r.verdict == "feasible").map(|r| r.i).collect();
        assert_eq!(rows.len(), 4);
        assert_eq!(feasible, vec![1, 2]);
        assert_eq!(rows[0].b_max_num, "759");
        assert_eq!(rows[0].window_hi, "inf");
    }

    #[test]
    fn csv_and_json_agree() {
        let mut a = args(ScreenMode::Design);
        a.v = Some("9..20".parse().unwrap());
        let rows = screen_rows(&a).unwrap();
        let from_csv = parse_csv(&render_csv(&rows, a.mode)).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&render_json(&rows, a.mode)).unwrap();
        let from_json: Vec<ScreenRow> = serde_json::from_value(doc["rows"].clone()).unwrap();
        assert_eq!(from_csv, rows);
        assert_eq!(from_json, rows);
    }

    #[test]
    fn perfect_code_rows() {
        let mut a = args(ScreenMode::PerfectCode);
        a.e = Some("2".parse().unwrap());
        let rows = screen_rows(&a).unwrap();
        assert_eq!(rows.first().unwrap().v, 9);
        assert_eq!(rows.last().unwrap().v, 17);
        assert!(rows.iter().all(|r| r.verdict != "feasible"));
        assert!(rows.iter().all(|r| r.failing_rule.contains("theorem3")));
        assert!(rows[0].gamma_annotation.contains("thm3=[16.7"));
    }

    #[test]
    fn grid_cap() {
        let mut a = args(ScreenMode::Design);
        a.v = Some("2..4000".parse().unwrap());
        a.k = "1..2000".parse().unwrap();
        a.i = Some("1".parse().unwrap());
        assert!(matches!(screen_rows(&a), Err(CliError::Usage(m)) if m.contains("exceeds")));
    }

    #[test]
    fn empty_and_missing_ranges() {
        let mut a = args(ScreenMode::Design);
        assert!(matches!(screen_rows(&a), Err(CliError::Usage(_))));
        a.v = Some("3".parse().unwrap());
        assert!(matches!(screen_rows(&a), Err(CliError::Usage(_))));
        assert!(matches!(
            screen_rows(&args(ScreenMode::PerfectCode)),
            Err(CliError::Usage(_))
        ));
    }
}

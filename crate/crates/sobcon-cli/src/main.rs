//! Batch front end for the embedding-constant engine.
//!
//! Subcommands: `profile`, `spline`, `lambda`, `verify`, `scan`, `rescale`.
//! Output is deterministic JSON (or CSV) with exact rationals rendered as
//! "p/q" strings and enclosures as outward-rounded decimal bounds; a timing
//! field is included unless `--no-timing` is given, so identical invocations
//! with `--no-timing` produce byte-identical output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed};
use serde::Serialize;
use sobcon_core::embedding::{
    hypothesis_scan_row, lambda_constant, profile_from_recurrence, rescale_to_symmetric, ScanRow,
};
use sobcon_core::interval::{decimal_string, Rounding};
use sobcon_core::ratpoly::{format_rat, parse_rat, rat_int, Rat};
use sobcon_core::spline::{build_extremal_spline, SplineRecord};
use sobcon_core::verify::{run_all, VerifyOptions};
use std::fmt::Display;
use std::path::PathBuf;
use std::time::Instant;

const VERIFY_FAILURE: i32 = 1;
const USAGE_ERROR: i32 = 2;

#[derive(Parser)]
#[command(
    name = "sobcon",
    version,
    about = "Exact sharp embedding constants of W^n_2[0;1] and their extremal splines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Omit the timing field (byte-identical reruns).
    #[arg(long, global = true)]
    no_timing: bool,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// CSV field separator.
    #[arg(long, global = true, default_value_t = ',')]
    sep: char,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// B-polynomial and scale of A²ₙ,ₖ, optionally evaluated at a point.
    Profile {
        n: usize,
        k: usize,
        /// Evaluation point a as "p/q" in (0, 1).
        #[arg(long)]
        a: Option<String>,
    },
    /// Construct and export the extremal spline gₙ,ₖ.
    Spline {
        n: usize,
        k: usize,
        /// Breakpoint a as "p/q" in (0, 1).
        a: String,
        /// Also write the spline record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified enclosure of the sharp constant Λ²ₙ,ₖ.
    Lambda {
        n: usize,
        k: usize,
        /// Target enclosure width, e.g. "1e-30" (default; or SOBCON_PRECISION).
        #[arg(long)]
        precision: Option<String>,
    },
    /// Run the cross-module invariant suite.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Push the grids to n = 12 and the k = 3/5 certifications to n = 40.
        #[arg(long)]
        deep: bool,
    },
    /// Maxima counts and global-max locations over a range of n for fixed k.
    Scan {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        /// Grid density (points per unit t) for the referee evaluations.
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
    /// Map a constant from \[0;1\] to the symmetric interval \[−1;1\].
    Rescale { n: usize, k: usize, a: String },
}

#[derive(Serialize)]
struct OutputRecord<T: Serialize> {
    command: &'static str,
    inputs: serde_json::Value,
    results: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<String>,
}

fn usage_error(message: impl Display) -> ! {
    eprintln!("error: {message}");
    std::process::exit(USAGE_ERROR);
}

fn parse_point(s: &str) -> Rat {
    match parse_rat(s) {
        Ok(r) => r,
        Err(e) => usage_error(e),
    }
}

/// Accepts "p/q", integers, plain decimals, and scientific notation such as
/// "1e-30"; the result must be a positive rational.
fn parse_precision(s: &str) -> Rat {
    let parse_decimal = |text: &str| -> Option<Rat> {
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if frac_part.is_empty() {
            return parse_rat(int_part).ok();
        }
        let digits = frac_part.len() as u32;
        let joined = format!("{int_part}{frac_part}");
        let numer = parse_rat(joined.trim_start_matches('+')).ok()?;
        Some(numer / Rat::from_integer(num_bigint::BigInt::from(10u32).pow(digits)))
    };
    let bad = || -> ! { usage_error(format!("cannot parse precision {s:?}")) };
    let value = if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let mant = if mant.is_empty() {
            Rat::one()
        } else {
            parse_decimal(mant).unwrap_or_else(|| bad())
        };
        let exp: i32 = match exp.parse() {
            Ok(v) => v,
            Err(_) => bad(),
        };
        let ten = rat_int(10);
        let mut scale = Rat::one();
        for _ in 0..exp.unsigned_abs() {
            scale *= &ten;
        }
        if exp < 0 {
            mant / scale
        } else {
            mant * scale
        }
    } else if s.contains('/') {
        parse_point(s)
    } else {
        parse_decimal(s).unwrap_or_else(|| bad())
    };
    if !value.is_positive() {
        usage_error("requested precision must be positive");
    }
    value
}

/// Decimal digits that resolve the given width, plus two guard digits.
fn digits_for(precision: &Rat) -> u32 {
    let mut digits = 0u32;
    let mut scaled = precision.clone();
    let ten = rat_int(10);
    while scaled < Rat::one() && digits < 200 {
        scaled *= &ten;
        digits += 1;
    }
    digits + 2
}

fn emit<T: Serialize>(record: &OutputRecord<T>, format: Format, csv: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(record).expect("serializable")
        ),
        Format::Csv => print!("{}", csv()),
    }
}

fn timing(no_timing: bool, started: Instant) -> Option<String> {
    if no_timing {
        None
    } else {
        Some(format!("{:.3}", started.elapsed().as_secs_f64() * 1e3))
    }
}

#[derive(Serialize)]
struct ProfileResults {
    n: usize,
    k: usize,
    #[serde(rename = "B_coeffs")]
    b_coeffs: Vec<String>,
    scale: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

fn cmd_profile(n: usize, k: usize, a: Option<String>, format: Format, sep: char, no_timing: bool) {
    let started = Instant::now();
    let profile = profile_from_recurrence(n, k).unwrap_or_else(|e| usage_error(e));
    let point = a.as_deref().map(parse_point);
    let value = point
        .as_ref()
        .map(|p| profile.eval(p).unwrap_or_else(|e| usage_error(e)))
        .map(|v| format_rat(&v));
    let results = ProfileResults {
        n,
        k,
        b_coeffs: profile.b().coeffs().iter().map(format_rat).collect(),
        scale: format_rat(profile.scale()),
        a: point.as_ref().map(format_rat),
        value,
    };
    let record = OutputRecord {
        command: "profile",
        inputs: serde_json::json!({ "n": n, "k": k, "a": results.a }),
        results,
        timing_ms: timing(no_timing, started),
    };
    emit(&record, format, || {
        let r = &record.results;
        format!(
            "n{sep}k{sep}scale{sep}value{sep}B_coeffs\n{}{sep}{}{sep}{}{sep}{}{sep}{}\n",
            r.n,
            r.k,
            r.scale,
            r.value.clone().unwrap_or_default(),
            r.b_coeffs.join(" ")
        )
    });
}

fn cmd_spline(
    n: usize,
    k: usize,
    a: &str,
    out: Option<PathBuf>,
    format: Format,
    sep: char,
    no_timing: bool,
) {
    let started = Instant::now();
    let a = parse_point(a);
    let spline = build_extremal_spline(n, k, &a).unwrap_or_else(|e| usage_error(e));
    let rec = SplineRecord::from(&spline);
    if let Some(path) = &out {
        let json = serde_json::to_string_pretty(&rec).expect("serializable");
        std::fs::write(path, json)
            .unwrap_or_else(|e| usage_error(format!("cannot write {}: {e}", path.display())));
    }
    let record = OutputRecord {
        command: "spline",
        inputs: serde_json::json!({ "n": n, "k": k, "a": format_rat(&a) }),
        results: rec,
        timing_ms: timing(no_timing, started),
    };
    emit(&record, format, || {
        let r = &record.results;
        format!(
            "n{sep}k{sep}a{sep}norm_sq{sep}left_coeffs{sep}right_coeffs\n{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}\n",
            r.n,
            r.k,
            r.a,
            r.norm_sq,
            r.left_coeffs.join(" "),
            r.right_coeffs.join(" ")
        )
    });
}

#[derive(Serialize)]
struct BoundsRecord {
    lo: String,
    hi: String,
}

#[derive(Serialize)]
struct LambdaResults {
    n: usize,
    k: usize,
    enclosure: BoundsRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    maximizer: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
}

fn cmd_lambda(
    n: usize,
    k: usize,
    precision: Option<String>,
    format: Format,
    sep: char,
    no_timing: bool,
) {
    let started = Instant::now();
    let source = precision
        .or_else(|| std::env::var("SOBCON_PRECISION").ok())
        .unwrap_or_else(|| "1e-30".to_string());
    let precision = parse_precision(&source);
    let digits = digits_for(&precision);
    let lambda = lambda_constant(n, k, &precision).unwrap_or_else(|e| usage_error(e));
    let results = LambdaResults {
        n,
        k,
        enclosure: BoundsRecord {
            lo: decimal_string(lambda.enclosure.lo(), digits, Rounding::Down),
            hi: decimal_string(lambda.enclosure.hi(), digits, Rounding::Up),
        },
        exact: lambda.exact.as_ref().map(format_rat),
        maximizer: serde_json::json!({
            "t_lo": format_rat(&lambda.maximizer.t_lo),
            "t_hi": format_rat(&lambda.maximizer.t_hi),
            "kind": lambda.maximizer.kind.as_str(),
            "exact_form": lambda.maximizer.exact_form,
        }),
        closed_form: lambda.closed_form.clone(),
    };
    let record = OutputRecord {
        command: "lambda",
        inputs: serde_json::json!({ "n": n, "k": k, "precision": source }),
        results,
        timing_ms: timing(no_timing, started),
    };
    emit(&record, format, || {
        let r = &record.results;
        format!(
            "n{sep}k{sep}lo{sep}hi{sep}exact\n{}{sep}{}{sep}{}{sep}{}{sep}{}\n",
            r.n,
            r.k,
            r.enclosure.lo,
            r.enclosure.hi,
            r.exact.clone().unwrap_or_default()
        )
    });
}

#[derive(Serialize)]
struct CheckRecord {
    name: String,
    passed: bool,
    details: String,
}

#[derive(Serialize)]
struct VerifyResults {
    passed: bool,
    checks: Vec<CheckRecord>,
}

fn cmd_verify(n_max: usize, deep: bool, format: Format, sep: char, no_timing: bool) {
    let started = Instant::now();
    let checks = run_all(VerifyOptions { n_max, deep });
    let passed = checks.iter().all(|c| c.passed);
    match format {
        Format::Json => {
            let results = VerifyResults {
                passed,
                checks: checks
                    .iter()
                    .map(|c| CheckRecord {
                        name: c.name.clone(),
                        passed: c.passed,
                        details: c.details.clone(),
                    })
                    .collect(),
            };
            let record = OutputRecord {
                command: "verify",
                inputs: serde_json::json!({ "n_max": n_max, "deep": deep }),
                results,
                timing_ms: timing(no_timing, started),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&record).expect("serializable")
            );
        }
        Format::Csv => {
            println!("name{sep}passed{sep}details");
            for c in &checks {
                let details = c.details.replace(sep, " ");
                println!("{}{sep}{}{sep}{}", c.name, c.passed, details);
            }
        }
    }
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        eprintln!("{status}  {:<26} {}", c.name, c.details);
    }
    if !passed {
        std::process::exit(VERIFY_FAILURE);
    }
}

#[derive(Serialize)]
struct ScanRowRecord {
    n: usize,
    k: usize,
    maxima_count: usize,
    expected_maxima: usize,
    count_ok: bool,
    global_at_nearest: bool,
    global_t_lo: String,
    global_t_hi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    competitor_t_lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    competitor_t_hi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    competitor_value_lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    competitor_value_hi: Option<String>,
}

impl From<&ScanRow> for ScanRowRecord {
    fn from(row: &ScanRow) -> Self {
        let digits = 30;
        ScanRowRecord {
            n: row.n,
            k: row.k,
            maxima_count: row.maxima_count,
            expected_maxima: row.expected_maxima,
            count_ok: row.count_ok,
            global_at_nearest: row.global_at_nearest,
            global_t_lo: format_rat(&row.global_max.t_lo),
            global_t_hi: format_rat(&row.global_max.t_hi),
            competitor_t_lo: row.competitor_t.as_ref().map(|iv| format_rat(iv.lo())),
            competitor_t_hi: row.competitor_t.as_ref().map(|iv| format_rat(iv.hi())),
            competitor_value_lo: row
                .competitor_value
                .as_ref()
                .map(|iv| decimal_string(iv.lo(), digits, Rounding::Down)),
            competitor_value_hi: row
                .competitor_value
                .as_ref()
                .map(|iv| decimal_string(iv.hi(), digits, Rounding::Up)),
        }
    }
}

fn cmd_scan(
    k: usize,
    n_from: usize,
    n_to: usize,
    grid: usize,
    format: Format,
    sep: char,
    no_timing: bool,
) {
    let started = Instant::now();
    if n_from > n_to {
        usage_error(format!(
            "empty scan range: n_from = {n_from} > n_to = {n_to}"
        ));
    }
    if n_from <= k {
        usage_error(format!(
            "scan requires n > k throughout (n_from = {n_from}, k = {k})"
        ));
    }
    let mut rows: Vec<ScanRowRecord> = Vec::new();
    for n in n_from..=n_to {
        let row = hypothesis_scan_row(n, k, grid).unwrap_or_else(|e| usage_error(e));
        rows.push(ScanRowRecord::from(&row));
    }
    let record = OutputRecord {
        command: "scan",
        inputs: serde_json::json!({ "k": k, "n_from": n_from, "n_to": n_to, "grid": grid }),
        results: rows,
        timing_ms: timing(no_timing, started),
    };
    emit(&record, format, || {
        let mut out = format!(
            "n{sep}k{sep}maxima_count{sep}expected_maxima{sep}count_ok{sep}global_at_nearest{sep}global_t_lo{sep}global_t_hi{sep}competitor_value_lo{sep}competitor_value_hi\n"
        );
        for r in &record.results {
            out.push_str(&format!(
                "{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}\n",
                r.n,
                r.k,
                r.maxima_count,
                r.expected_maxima,
                r.count_ok,
                r.global_at_nearest,
                r.global_t_lo,
                r.global_t_hi,
                r.competitor_value_lo.clone().unwrap_or_default(),
                r.competitor_value_hi.clone().unwrap_or_default(),
            ));
        }
        out
    });
}

fn cmd_rescale(n: usize, k: usize, a: &str, format: Format, sep: char, no_timing: bool) {
    let started = Instant::now();
    let a = parse_point(a);
    let profile = profile_from_recurrence(n, k).unwrap_or_else(|e| usage_error(e));
    let value = profile.eval(&a).unwrap_or_else(|e| usage_error(e));
    let (point, scaled) = rescale_to_symmetric(n, k, &value, &a).unwrap_or_else(|e| usage_error(e));
    let factor = Rat::from_integer(num_bigint::BigInt::one() << (2 * n - 2 * k - 1));
    let results = serde_json::json!({
        "n": n,
        "k": k,
        "a": format_rat(&a),
        "value_on_unit": format_rat(&value),
        "symmetric_point": format_rat(&point),
        "factor": format_rat(&factor),
        "value_on_symmetric": format_rat(&scaled),
    });
    let record = OutputRecord {
        command: "rescale",
        inputs: serde_json::json!({ "n": n, "k": k, "a": format_rat(&a) }),
        results,
        timing_ms: timing(no_timing, started),
    };
    emit(&record, format, || {
        format!(
            "n{sep}k{sep}a{sep}value_on_unit{sep}symmetric_point{sep}factor{sep}value_on_symmetric\n{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}{sep}{}\n",
            n,
            k,
            format_rat(&a),
            format_rat(&value),
            format_rat(&point),
            format_rat(&factor),
            format_rat(&scaled)
        )
    });
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Profile { n, k, a } => cmd_profile(n, k, a, cli.format, cli.sep, cli.no_timing),
        Command::Spline { n, k, a, out } => {
            cmd_spline(n, k, &a, out, cli.format, cli.sep, cli.no_timing)
        }
        Command::Lambda { n, k, precision } => {
            cmd_lambda(n, k, precision, cli.format, cli.sep, cli.no_timing)
        }
        Command::Verify { n_max, deep } => {
            cmd_verify(n_max, deep, cli.format, cli.sep, cli.no_timing)
        }
        Command::Scan {
            k,
            n_from,
            n_to,
            grid,
        } => cmd_scan(k, n_from, n_to, grid, cli.format, cli.sep, cli.no_timing),
        Command::Rescale { n, k, a } => cmd_rescale(n, k, &a, cli.format, cli.sep, cli.no_timing),
    }
}

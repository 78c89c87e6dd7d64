//! Command-line front end.
//!
//! Exit codes: 0 success or solution found, 1 infeasible or a lemma or
//! theorem violation found, 2 usage or input error, 3 capacity or budget
//! limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use repfn_core::theorem::{self, is_mersenne};
use repfn_core::{
    enumerate_all, rep_fn_table, solve_forced, verify_pair, IntSet, KindFamily, PositionProfile, UniverseCap,
};
use serde::Serialize;

use crate::config::{resolve_jobs, OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::report;
use crate::scan::{run_scan, ScanOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "repfn", version, about = "Representation functions and equal-representation partitions of intervals")]
struct Cli {
    /// Largest integer any set may contain.
    #[arg(long, global = true, default_value_t = UniverseCap::DEFAULT.0)]
    universe_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print R_S(n), the number of pairs s1 < s2 in S with s1 + s2 = n.
    Repfn(RepfnArgs),
    /// Decide whether [0, m] with the given removed/shared points splits into
    /// C (containing 0) and a nonempty D with R_C = R_D. A split whose D would
    /// be empty is reported as infeasible.
    Solve(SolveArgs),
    /// Solve every instance of a profile family up to --max and compare with
    /// the closed-form predictions.
    Scan(ScanArgs),
    /// Build one of the closed-form partitions and verify it.
    Construct(ConstructArgs),
    /// Check a binary digit lemma (3, 4, 5) or the incomplete-interval
    /// witness property (7) for every value up to --max.
    Lemmas(LemmasArgs),
}

#[derive(Args, Debug)]
struct RepfnArgs {
    /// Set literal: "0,3,6,7", "" for the empty set, or a 0x hex bitmask.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Last n to print (default: twice the largest member).
    #[arg(long)]
    upto: Option<usize>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    m: usize,
    /// Points in neither class.
    #[arg(long, value_delimiter = ',')]
    removed: Vec<usize>,
    /// Points in both classes.
    #[arg(long, value_delimiter = ',')]
    shared: Vec<usize>,
    #[arg(long)]
    json: bool,
    /// Cross-check against exhaustive enumeration (at most 28 free positions).
    #[arg(long)]
    enumerate: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Punctured,
    Full,
    Shared,
}

impl From<KindArg> for KindFamily {
    fn from(k: KindArg) -> KindFamily {
        match k {
            KindArg::Punctured => KindFamily::Punctured,
            KindArg::Full => KindFamily::Full,
            KindArg::Shared => KindFamily::Shared,
        }
    }
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    max: usize,
    /// Worker threads (default: $REPFN_JOBS, else all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write every record to this JSONL file.
    #[arg(long)]
    jsonl: Option<PathBuf>,
    /// Resumable JSONL cache; cached instances are not re-solved.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Raise the default limit on --max.
    #[arg(long)]
    budget: Option<usize>,
    /// Zero the timing field so repeated runs print identical bytes.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group(ArgGroup::new("which").required(true).args(["theorem1", "lemma6", "problem2"])))]
struct ConstructArgs {
    /// m = 2^L, r = 2^(L-1), C = A_(L-1) ∪ (2^(L-1)+1+B_(L-1)); L >= 2.
    #[arg(long, value_name = "L")]
    theorem1: Option<u32>,
    /// m = 2^L - 1, C = A_L, D = B_L; L >= 1.
    #[arg(long, value_name = "L")]
    lemma6: Option<u32>,
    /// r = 2^(2L) - 1, m = 2r, C = A_(2L) ∪ (r+B_(2L)), C ∩ D = {r}; L >= 1.
    #[arg(long, value_name = "L")]
    problem2: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LemmasArgs {
    #[arg(long, value_parser = ["3", "4", "5", "7"])]
    check: String,
    #[arg(long)]
    max: u64,
    #[arg(long)]
    json: bool,
}

fn out_err(e: std::io::Error) -> Error {
    Error::io("<output>", e)
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns its exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let config = RunConfig { universe_cap: UniverseCap(cli.universe_cap), ..RunConfig::default() };
    let result = match cli.command {
        Command::Repfn(args) => cmd_repfn(args, &config, out),
        Command::Solve(args) => cmd_solve(args, &config, out),
        Command::Scan(args) => cmd_scan(args, config, out, err),
        Command::Construct(args) => cmd_construct(args, &config, out),
        Command::Lemmas(args) => cmd_lemmas(args, &config, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_repfn(args: RepfnArgs, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let set = IntSet::parse_literal(&args.set, config.universe_cap)?;
    let upto = args.upto.unwrap_or(2 * set.max().unwrap_or(0));
    let set = if upto / 2 > set.universe_bound() { set.with_bound(upto / 2)? } else { set };
    let table = rep_fn_table(&set);
    let format = if args.json {
        OutputFormat::Json
    } else if args.csv {
        OutputFormat::Csv
    } else {
        OutputFormat::Table
    };
    report::write_rep_table(out, &set, &table, upto, format)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SolveReport<'a> {
    m: usize,
    removed: &'a [usize],
    shared: &'a [usize],
    #[serde(rename = "C")]
    c: Option<String>,
    #[serde(rename = "D")]
    d: Option<String>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    failed_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated_solutions: Option<usize>,
}

fn cmd_solve(args: SolveArgs, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    config.universe_cap.check(args.m)?;
    let profile = PositionProfile::with_points(args.m, &args.removed, &args.shared)?;
    let outcome = solve_forced(&profile);
    let enumerated = if args.enumerate {
        let all = enumerate_all(&profile)?;
        let agrees = match (&outcome, all.as_slice()) {
            (Ok(sol), [only]) => sol.c == only.c && sol.d == only.d,
            (Err(_), []) => true,
            _ => false,
        };
        if !agrees {
            return Err(Error::Usage(format!(
                "forcing and enumeration disagree on profile {profile} ({} enumerated solutions)",
                all.len()
            )));
        }
        Some(all.len())
    } else {
        None
    };
    let report = SolveReport {
        m: args.m,
        removed: &args.removed,
        shared: &args.shared,
        c: outcome.as_ref().ok().map(|s| s.c.to_literal()),
        d: outcome.as_ref().ok().map(|s| s.d.to_literal()),
        status: if outcome.is_ok() { "solution" } else { "infeasible" },
        failed_at: outcome.as_ref().err().map(|inf| inf.at),
        enumerated_solutions: enumerated,
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&report)?).map_err(out_err)?;
    } else {
        match &outcome {
            Ok(sol) => {
                writeln!(out, "C = {}", sol.c).map_err(out_err)?;
                writeln!(out, "D = {}", sol.d).map_err(out_err)?;
                writeln!(out, "verified R_C(n) = R_D(n) for n in [1, {}]", sol.verified_upto).map_err(out_err)?;
            }
            Err(inf) => writeln!(out, "{inf}").map_err(out_err)?,
        }
        if let Some(n) = enumerated {
            writeln!(out, "enumeration found {n} solution(s)").map_err(out_err)?;
        }
    }
    Ok(if outcome.is_ok() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_scan(args: ScanArgs, mut config: RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    config.jobs = resolve_jobs(args.jobs)?;
    config.output_format = args.format;
    config.cache_path = args.cache;
    let opts = ScanOptions {
        family: args.kind.into(),
        m_max: args.max,
        jobs: config.jobs,
        universe_cap: config.universe_cap,
        budget: args.budget,
        cache_path: config.cache_path.clone(),
    };
    let report = run_scan(&opts)?;
    for warning in &report.cache_warnings {
        writeln!(err, "warning: {warning}").map_err(out_err)?;
    }
    let records = if args.no_timing { report.without_timing() } else { report.records.clone() };
    report::write_records(out, &records, config.output_format)?;
    if let Some(path) = &args.jsonl {
        let mut file = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        report::write_records(&mut file, &records, OutputFormat::Jsonl)?;
    }

    let summary = format!(
        "scan {} m<={}: {} instances, {} solutions, {} violations, {} anomalies, {} solved, {} cached",
        report.family,
        report.m_max,
        report.records.len(),
        report.solutions().count(),
        report.violations().count(),
        report.anomalies().count(),
        report.solved,
        report.cache_hits,
    );
    if config.output_format == OutputFormat::Table {
        writeln!(out, "{summary}").map_err(out_err)?;
    } else {
        writeln!(err, "{summary}").map_err(out_err)?;
    }
    Ok(if report.violations().count() == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(Serialize)]
struct ConstructReport {
    construction: &'static str,
    l: u32,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(rename = "C")]
    c: String,
    #[serde(rename = "D")]
    d: String,
    verified: bool,
}

fn cmd_construct(args: ConstructArgs, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let cap = config.universe_cap;
    let (construction, l, m, r, c, d, profile) = if let Some(l) = args.theorem1 {
        let t = theorem::construct_theorem1(l, cap)?;
        let profile = PositionProfile::punctured(t.m, t.r)?;
        ("theorem1", l, t.m, Some(t.r), t.c, t.d, profile)
    } else if let Some(l) = args.lemma6 {
        let t = theorem::construct_lemma6(l, cap)?;
        ("lemma6", l, t.m, None, t.c, t.d, PositionProfile::full(t.m))
    } else if let Some(l) = args.problem2 {
        let t = theorem::construct_problem2(l, cap)?;
        let profile = PositionProfile::shared(t.m, t.r)?;
        ("problem2", l, t.m, Some(t.r), t.c, t.d, profile)
    } else {
        return Err(Error::Usage("one of --theorem1, --lemma6, --problem2 is required".into()));
    };
    let verified = verify_pair(&c, &d, &profile);
    let report = ConstructReport { construction, l, m, r, c: c.to_literal(), d: d.to_literal(), verified };
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&report)?).map_err(out_err)?;
    } else {
        writeln!(out, "m = {m}").map_err(out_err)?;
        if let Some(r) = r {
            writeln!(out, "r = {r}").map_err(out_err)?;
        }
        writeln!(out, "C = {}", report.c).map_err(out_err)?;
        writeln!(out, "D = {}", report.d).map_err(out_err)?;
        writeln!(out, "verified = {verified}").map_err(out_err)?;
    }
    Ok(if verified { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(Serialize)]
struct LemmaReport {
    lemma: u8,
    max: u64,
    checked: u64,
    counterexamples: Vec<u64>,
}

/// Runs one lemma check over its whole domain up to `max`.
pub fn lemma_counterexamples(lemma: u8, max: u64) -> Result<(u64, Vec<u64>)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    match lemma {
        3..=5 => {
            for m in 2..=max {
                if lemma == 5 && m % 2 == 1 {
                    continue;
                }
                let holds = match lemma {
                    3 => theorem::check_lemma3(m)?,
                    4 => theorem::check_lemma4(m)?,
                    _ => theorem::check_lemma5(m)?,
                };
                checked += 1;
                if !holds {
                    bad.push(m);
                }
            }
        }
        7 => {
            for m in 1..=max {
                let m = usize::try_from(m).map_err(|_| Error::Usage("--max too large".into()))?;
                checked += 1;
                let ok = match theorem::find_lemma7_witness(m) {
                    Some(n) => !is_mersenne(m) && m < n && n < 2 * m,
                    None => is_mersenne(m),
                };
                if !ok {
                    bad.push(m as u64);
                }
            }
        }
        _ => return Err(Error::Usage(format!("unknown lemma {lemma}"))),
    }
    Ok((checked, bad))
}

fn cmd_lemmas(args: LemmasArgs, config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let lemma: u8 = args.check.parse().map_err(|_| Error::Usage("--check takes 3, 4, 5 or 7".into()))?;
    if lemma == 7 {
        // Each witness search builds tables over [0, 2m].
        config.universe_cap.check(usize::try_from(args.max).unwrap_or(usize::MAX))?;
    }
    let (checked, counterexamples) = lemma_counterexamples(lemma, args.max)?;
    let failed = !counterexamples.is_empty();
    if args.json {
        let report = LemmaReport { lemma, max: args.max, checked, counterexamples };
        writeln!(out, "{}", serde_json::to_string(&report)?).map_err(out_err)?;
    } else {
        writeln!(out, "lemma {lemma}: checked {checked} values up to {}", args.max).map_err(out_err)?;
        if failed {
            let shown: Vec<String> = counterexamples.iter().take(20).map(u64::to_string).collect();
            writeln!(out, "counterexamples ({}): {}", counterexamples.len(), shown.join(",")).map_err(out_err)?;
        } else {
            writeln!(out, "no counterexamples").map_err(out_err)?;
        }
    }
    Ok(if failed { EXIT_NEGATIVE } else { EXIT_OK })
}

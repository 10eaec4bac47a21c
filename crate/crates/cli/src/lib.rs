//! Command-line front end: `search`, `analyze`, `catalog`, `verify`, `ies`.
//!
//! Every command builds an [`Envelope`]. JSON mode prints it as is; text mode
//! renders the same envelope, so the two outputs always agree. Progress and
//! timing go to the diagnostic stream only.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rmra::catalog::{self, CatalogEntry, ComparisonRow, Family, VerificationReport};
use rmra::robustness::{self, ConstraintVerdict, RobustnessReport};
use rmra::search::{self, SearchConfig, SearchOutcome, StageOutcome, StageResult, Verdict};
use rmra::{Error, IesVector, SensorArray};

pub use render::{render_csv, render_text};

pub const SCHEMA_VERSION: u32 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const NOT_FOUND: i32 = 2;
    pub const USAGE: i32 = 3;
    pub const BUDGET: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "rmra",
    version,
    about = "Robust minimum redundancy array analysis and search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Leap-on-success search for the widest robust array with N sensors.
    Search(SearchArgs),
    /// Weights, single-failure holes, essential sensors and constraint verdict.
    Analyze(AnalyzeArgs),
    /// Query the published arrays or the cross-family aperture comparison.
    Catalog(CatalogArgs),
    /// Re-verify every cataloged array.
    Verify(FormatArg),
    /// Inter-element spacing tools.
    Ies(IesArgs),
}

#[derive(Debug, Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l_start: Option<u32>,
    #[arg(long)]
    l_limit: Option<u32>,
    /// Start at the redundancy-derived lower bound instead of L = N.
    #[arg(long)]
    tight_bounds: bool,
    /// Disable the forced-position and mirror filters.
    #[arg(long)]
    no_filters: bool,
    /// Report the lexicographically first valid array of every stage.
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    workers: Option<usize>,
    /// Stop after this many candidates.
    #[arg(long)]
    budget: Option<u64>,
    /// Resume from / periodically save to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Sensor positions, comma- or space-separated.
    #[arg(required = true, num_args = 1..)]
    positions: Vec<String>,
    /// Also show the weight table with this sensor (canonical position) removed.
    #[arg(long)]
    failed: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Show the aperture comparison table instead of entries.
    #[arg(long)]
    compare: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct IesArgs {
    /// Sensor positions, comma- or space-separated.
    #[arg(num_args = 0..)]
    positions: Vec<String>,
    /// Build the array from spacings instead of positions.
    #[arg(long, conflicts_with = "positions")]
    from_ies: Option<String>,
    /// Add this many copies of the longest repeated spacing and re-verify.
    #[arg(long)]
    extend: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Self-describing output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchPayload {
    pub outcome: SearchOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultyTable {
    pub failed: u32,
    pub weights: Vec<u32>,
    pub holes: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzePayload {
    pub positions: SensorArray,
    pub n: usize,
    pub aperture: u32,
    /// w(0..=L).
    pub weights: Vec<u32>,
    pub holes: Vec<u32>,
    pub doubly_redundant_span: u32,
    pub report: RobustnessReport,
    pub verdict: ConstraintVerdict,
    pub faulty: Option<FaultyTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalogPayload {
    Comparison { comparison: Vec<ComparisonRow> },
    Entries { entries: Vec<CatalogEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub all_passed: bool,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub extra: usize,
    pub array: SensorArray,
    pub ies: IesVector,
    pub verdict: ConstraintVerdict,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IesPayload {
    pub array: SensorArray,
    pub ies: IesVector,
    pub extension: Option<Extension>,
}

/// Failure that maps directly onto an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::NoRepeatedRun => exit::NOT_FOUND,
            Error::Io(_) | Error::CorruptCheckpoint(_) => exit::VIOLATION,
            _ => exit::USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

/// Parses a position or spacing list: integers separated by commas and/or
/// whitespace, optionally bracketed.
pub fn parse_list(parts: &[String]) -> Result<Vec<u32>, String> {
    let joined = parts.join(" ");
    let body = joined.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| format!("not a non-negative integer: {t:?}"))
        })
        .collect()
}

fn parse_array(parts: &[String]) -> Result<(Vec<u32>, SensorArray), Failure> {
    let raw = parse_list(parts).map_err(Failure::usage)?;
    let arr = SensorArray::canonicalize(&raw)?;
    Ok((raw, arr))
}

fn envelope(command: &str, inputs: Value, result: impl Serialize, started: Instant) -> Envelope {
    Envelope {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        inputs,
        result: serde_json::to_value(result).expect("payload serializes"),
        timing: Timing {
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        },
    }
}

fn emit(env: &Envelope, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(env).expect("envelope serializes") + "\n",
        Format::Text => render_text(env),
        Format::Csv | Format::Jsonl => {
            render_csv(env, format == Format::Jsonl).ok_or_else(|| {
                Failure::usage(
                    format!("--format {format:?} is not available for {}", env.command)
                        .to_lowercase(),
                )
            })?
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: exit::VIOLATION,
        message: e.to_string(),
    })
}

fn progress_line(stage: &StageResult, n: usize) -> String {
    match &stage.outcome {
        StageOutcome::Found { array, .. } => {
            format!("Valid configuration found for L = {}: {array}", stage.l)
        }
        StageOutcome::Exhausted => format!("Failure to find L = {} for N = {n}", stage.l),
        StageOutcome::BudgetExceeded => {
            format!(
                "Budget exhausted at L = {} after {} candidates",
                stage.l, stage.candidates_examined
            )
        }
    }
}

fn cmd_search(args: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if let (Some(start), Some(limit)) = (args.l_start, args.l_limit) {
        if start > limit {
            return Err(Failure::usage(format!(
                "--l-start {start} exceeds --l-limit {limit}"
            )));
        }
    }
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = SearchConfig {
        l_start: args.l_start,
        l_limit: args.l_limit,
        tight_bounds: args.tight_bounds,
        prune_filters: !args.no_filters,
        mirror_prune: !args.no_filters,
        deterministic: args.deterministic,
        workers,
        candidate_budget: args.budget,
        checkpoint_path: args.checkpoint.clone(),
        ..SearchConfig::new(args.n)
    };
    cfg.validate()?;
    let inputs = json!({
        "n": args.n,
        "l_start": cfg.start_aperture(),
        "l_limit": args.l_limit,
        "tight_bounds": args.tight_bounds,
        "filters": !args.no_filters,
        "deterministic": args.deterministic,
        "workers": workers,
        "budget": args.budget,
        "checkpoint": args.checkpoint,
    });
    let started = Instant::now();
    let n = args.n;
    let outcome = search::loses_search_with(cfg, |stage| {
        let _ = writeln!(err, "{}", progress_line(stage, n));
    })?;
    let code = match outcome.verdict {
        Verdict::Optimal { .. } => exit::OK,
        Verdict::NearOptimal { .. } => exit::BUDGET,
        Verdict::NoneFound => exit::NOT_FOUND,
    };
    let env = envelope("search", inputs, SearchPayload { outcome }, started);
    let _ = writeln!(err, "elapsed {:.1} ms", env.timing.elapsed_ms);
    emit(&env, args.format, out)?;
    Ok(code)
}

fn cmd_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (raw, arr) = parse_array(&args.positions)?;
    if arr.len() < 3 {
        return Err(Failure::usage("analysis needs at least 3 sensors"));
    }
    let started = Instant::now();
    let l = arr.aperture();
    let weights = arr.weight_table();
    let report = robustness::robustness_report(&arr)?;
    let faulty = match args.failed {
        Some(s) => {
            let f = robustness::failure_report(&arr, s)?;
            Some(FaultyTable {
                failed: s,
                weights: f.weight_table(l).counts().to_vec(),
                holes: f.holes,
            })
        }
        None => None,
    };
    let payload = AnalyzePayload {
        n: arr.len(),
        aperture: l,
        weights: weights.counts().to_vec(),
        holes: weights.lag_set().holes(),
        doubly_redundant_span: weights.doubly_redundant_span(),
        verdict: robustness::rmra_check(&arr, arr.len(), l),
        report,
        faulty,
        positions: arr,
    };
    let code = if payload.verdict.two_essential {
        exit::OK
    } else {
        exit::VIOLATION
    };
    let env = envelope(
        "analyze",
        json!({ "positions": raw, "failed": args.failed }),
        payload,
        started,
    );
    emit(&env, args.format, out)?;
    Ok(code)
}

fn cmd_catalog(args: CatalogArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let family = args
        .family
        .as_deref()
        .map(str::parse::<Family>)
        .transpose()?;
    let started = Instant::now();
    let inputs = json!({ "family": family, "n": args.n, "compare": args.compare });
    let (payload, empty) = if args.compare {
        let range = args.n.map_or(6..=20, |n| n..=n);
        let rows = catalog::compare_apertures(range);
        let empty = rows.is_empty();
        (CatalogPayload::Comparison { comparison: rows }, empty)
    } else {
        let entries: Vec<CatalogEntry> = catalog::entries()
            .iter()
            .filter(|e| family.is_none_or(|f| e.family == f))
            .filter(|e| args.n.is_none_or(|n| e.n == n))
            .cloned()
            .collect();
        let empty = entries.is_empty();
        (CatalogPayload::Entries { entries }, empty)
    };
    let env = envelope("catalog", inputs, payload, started);
    emit(&env, args.format, out)?;
    Ok(if empty { exit::NOT_FOUND } else { exit::OK })
}

fn cmd_verify(args: FormatArg, out: &mut dyn Write) -> Result<i32, Failure> {
    let started = Instant::now();
    let report = catalog::verify_catalog();
    let all_passed = report.all_passed();
    let env = envelope(
        "verify",
        json!({}),
        VerifyPayload { all_passed, report },
        started,
    );
    emit(&env, args.format, out)?;
    Ok(if all_passed {
        exit::OK
    } else {
        exit::VIOLATION
    })
}

fn cmd_ies(args: IesArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let started = Instant::now();
    let (inputs, arr) = match (&args.from_ies, args.positions.is_empty()) {
        (Some(list), true) => {
            let spacings = parse_list(std::slice::from_ref(list)).map_err(Failure::usage)?;
            let ies = IesVector::new(spacings.clone())?;
            (
                json!({ "from_ies": spacings, "extend": args.extend }),
                ies.to_array(),
            )
        }
        (None, false) => {
            let (raw, arr) = parse_array(&args.positions)?;
            if arr.len() < 2 {
                return Err(Failure::usage("need at least 2 positions"));
            }
            (json!({ "positions": raw, "extend": args.extend }), arr)
        }
        _ => return Err(Failure::usage("give either positions or --from-ies")),
    };
    let extension = match args.extend {
        Some(extra) => {
            let ext = arr.extend_repeated_spacing(extra)?;
            let verdict = robustness::rmra_check(&ext, ext.len(), ext.aperture());
            Some(Extension {
                extra,
                ies: ext.ies(),
                valid: verdict.overall,
                verdict,
                array: ext,
            })
        }
        None => None,
    };
    let code = match &extension {
        Some(e) if !e.valid => exit::VIOLATION,
        _ => exit::OK,
    };
    let env = envelope(
        "ies",
        inputs,
        IesPayload {
            ies: arr.ies(),
            array: arr,
            extension,
        },
        started,
    );
    emit(&env, args.format, out)?;
    Ok(code)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                exit::USAGE
            } else {
                let _ = write!(out, "{e}");
                exit::OK
            };
        }
    };
    let result = match cli.command {
        Command::Search(a) => cmd_search(a, out, err),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Catalog(a) => cmd_catalog(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Ies(a) => cmd_ies(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn list_separators() {
        let want = vec![0, 1, 2, 5];
        assert_eq!(parse_list(&parts(&["0,1,2,5"])), Ok(want.clone()));
        assert_eq!(parse_list(&parts(&["0", "1", "2", "5"])), Ok(want.clone()));
        assert_eq!(parse_list(&parts(&["[0, 1,\t2 ,5]"])), Ok(want));
        assert!(parse_list(&parts(&["0,-1"])).is_err());
        assert_eq!(parse_list(&parts(&[""])), Ok(vec![]));
    }

    #[test]
    fn in_process_run_reports_exit_codes() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run(["rmra", "analyze", "0,1,2,3,5,6"], &mut out, &mut err),
            exit::OK
        );
        assert!(String::from_utf8(out)
            .unwrap()
            .contains("essential sensors: [0, 6]"));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run(["rmra", "catalog", "--n", "5"], &mut out, &mut err),
            exit::NOT_FOUND
        );
    }
}

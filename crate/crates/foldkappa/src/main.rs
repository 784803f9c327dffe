//! Command-line front end. Reports are line-delimited JSON on stdout;
//! `--pretty` adds human-readable summaries on stderr. Exit codes: 0 for
//! success (including FINDING and UPPER_BOUND_ONLY verdicts), 1 when any
//! claim FAILs, 2 for usage errors, 3 for I/O errors.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use foldkappa::cutfinder::CkappaBudget;
use foldkappa::extremal::SearchBudget;
use foldkappa::faultsim;
use foldkappa::report::{Report, Verdict};
use foldkappa::topology::{Kind, Topology};
use foldkappa::verify::{self, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "foldkappa",
    version,
    about = "Exact and randomized structural analysis of hypercube and folded-hypercube topologies"
)]
struct Cli {
    /// Worker threads. Defaults to the FOLDKAPPA_WORKERS environment
    /// variable, then to available parallelism. Results never depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Also print a human-readable summary to stderr.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Plain hypercube
    Q,
    /// Folded hypercube
    Fq,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Q => Kind::Hypercube,
            KindArg::Fq => Kind::Folded,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaMode {
    Exact,
    Star,
    Formula,
}

#[derive(Clone, Copy, ValueEnum)]
enum CkappaMode {
    Exact,
    Upper,
    Formula,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a graph as an edge list or JSON adjacency document.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: GenFormat,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
    /// Minimum neighborhood size over g-vertex sets, vs the closed form.
    Theta {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        /// Set size.
        #[arg(long)]
        g: i64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ThetaMode,
        /// Node budget for the exact search.
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
    },
    /// Fewest deletions producing at least g+1 components, vs the closed form.
    Ckappa {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        /// Curve index: the search targets g+1 components.
        #[arg(long)]
        g: i64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: CkappaMode,
        /// Node budget shared by the search and the certification sweep.
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
        /// Skip the exhaustive certification sweep; the result degrades to
        /// an upper bound.
        #[arg(long)]
        no_certify: bool,
    },
    /// Run a verification suite over a dimension range.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Dimension range, inclusive: "4..6" or a single "5".
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Per-claim node budget for the exact searches.
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
    },
    /// Monte Carlo fault injection.
    Faultsim {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: u32,
        /// Vertices deleted per trial. Required unless --g-max is given.
        #[arg(long)]
        faults: Option<u32>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the CSV here instead of stdout; stdout then carries the
        /// statistics as one JSON line.
        #[arg(long)]
        csv: Option<String>,
        /// Switch to the threshold table: sweep fault counts around the
        /// curve for each index up to this value and emit a Report.
        #[arg(long)]
        g_max: Option<u32>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("bad dimension range '{s}' (expected 'a..b' or 'a')");
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo < 1 || lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let n: u32 = s.trim().parse().map_err(|_| bad())?;
        if n < 1 {
            return Err(bad());
        }
        Ok((n, n))
    }
}

enum AppError {
    Usage(String),
    Io(String),
}

impl From<foldkappa::Error> for AppError {
    fn from(e: foldkappa::Error) -> Self {
        AppError::Usage(e.to_string())
    }
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = setup_workers(cli.workers) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn setup_workers(flag: Option<usize>) -> Result<(), String> {
    let from_env = match std::env::var("FOLDKAPPA_WORKERS") {
        Ok(s) => Some(
            s.parse::<usize>()
                .map_err(|_| format!("FOLDKAPPA_WORKERS must be a positive integer, got '{s}'"))?,
        ),
        Err(_) => None,
    };
    let workers = flag.or(from_env);
    if let Some(w) = workers {
        if w == 0 {
            return Err("--workers must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, AppError> {
    match &cli.cmd {
        Cmd::Gen { kind, n, format, out } => cmd_gen((*kind).into(), *n, *format, out.as_deref()),
        Cmd::Theta { kind, n, g, mode, max_nodes } => {
            let report = cmd_theta((*kind).into(), *n, *g, *mode, *max_nodes)?;
            emit(cli, std::slice::from_ref(&report))
        }
        Cmd::Ckappa { kind, n, g, mode, max_nodes, no_certify } => {
            let report = cmd_ckappa((*kind).into(), *n, *g, *mode, *max_nodes, *no_certify)?;
            emit(cli, std::slice::from_ref(&report))
        }
        Cmd::Verify { suite, n, seed, max_nodes } => {
            let (n_lo, n_hi) = parse_range(n).map_err(AppError::Usage)?;
            let cfg = SuiteConfig {
                n_lo,
                n_hi,
                seed: *seed,
                max_nodes: *max_nodes,
            };
            let reports = verify::run_suite(*suite, &cfg)?;
            emit(cli, &reports)
        }
        Cmd::Faultsim { kind, n, faults, trials, seed, csv, g_max } => {
            cmd_faultsim(cli, (*kind).into(), *n, *faults, *trials, *seed, csv.as_deref(), *g_max)
        }
    }
}

fn cmd_gen(kind: Kind, n: u32, format: GenFormat, out: Option<&str>) -> Result<u8, AppError> {
    let t = Topology::build(kind, n)?;
    let mut body = Vec::new();
    match format {
        GenFormat::Edgelist => t.export_edge_list(&mut body)?,
        GenFormat::Json => t.export_json(&mut body)?,
    }
    match out {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().write_all(&body)?,
    }
    Ok(0)
}

fn require_u32(g: i64, what: &str) -> Result<u32, AppError> {
    u32::try_from(g).map_err(|_| AppError::Usage(format!("{what} must be non-negative, got {g}")))
}

fn cmd_theta(kind: Kind, n: u32, g: i64, mode: ThetaMode, max_nodes: u64) -> Result<Report, AppError> {
    let report = match mode {
        ThetaMode::Exact => {
            let t = Topology::build(kind, n)?;
            verify::theta_exact_claim(&t, require_u32(g, "--g")?, &SearchBudget::nodes(max_nodes))?
        }
        ThetaMode::Star => {
            let t = Topology::build(kind, n)?;
            verify::theta_star_claim(&t, require_u32(g, "--g")?)?
        }
        ThetaMode::Formula => verify::theta_formula_claim(kind, n, g)?,
    };
    Ok(report)
}

fn cmd_ckappa(
    kind: Kind,
    n: u32,
    g: i64,
    mode: CkappaMode,
    max_nodes: u64,
    no_certify: bool,
) -> Result<Report, AppError> {
    let report = match mode {
        CkappaMode::Exact => {
            let t = Topology::build(kind, n)?;
            let budget = CkappaBudget {
                search: SearchBudget::nodes(max_nodes),
                certify: !no_certify,
                ..CkappaBudget::default()
            };
            verify::ckappa_exact_claim(&t, require_u32(g, "--g")?, &budget)?
        }
        CkappaMode::Upper => {
            let t = Topology::build(kind, n)?;
            verify::ckappa_upper_claim(&t, require_u32(g, "--g")?)?
        }
        CkappaMode::Formula => verify::ckappa_formula_claim(kind, n, g)?,
    };
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cmd_faultsim(
    cli: &Cli,
    kind: Kind,
    n: u32,
    faults: Option<u32>,
    trials: u64,
    seed: u64,
    csv: Option<&str>,
    g_max: Option<u32>,
) -> Result<u8, AppError> {
    let t = Topology::build(kind, n)?;
    if let Some(g_max) = g_max {
        let report = faultsim::threshold_report(&t, g_max, trials, seed)?;
        return emit(cli, std::slice::from_ref(&report));
    }
    let faults = faults.ok_or_else(|| {
        AppError::Usage("either --faults or --g-max is required".into())
    })?;
    let stats = faultsim::simulate(&t, faults, trials, seed)?;
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    match csv {
        Some(path) => {
            let mut buf = Vec::new();
            faultsim::write_csv(&stats, &mut buf)?;
            fs::write(path, buf)?;
            let line = serde_json::to_string(&stats)
                .map_err(|e| AppError::Io(e.to_string()))?;
            writeln!(stdout, "{line}")?;
        }
        None => faultsim::write_csv(&stats, &mut stdout)?,
    }
    if cli.pretty {
        let mut err = io::stderr().lock();
        writeln!(
            err,
            "faultsim kind={} n={n} faults={faults} trials={trials} seed={seed}",
            match kind {
                Kind::Hypercube => "q",
                Kind::Folded => "fq",
            }
        )?;
        writeln!(err, "  component count histogram: {:?}", stats.component_count_histogram)?;
        writeln!(
            err,
            "  largest component min/p50/p99/max: {}/{}/{}/{}",
            stats.largest_component_quantiles.min,
            stats.largest_component_quantiles.p50,
            stats.largest_component_quantiles.p99,
            stats.largest_component_quantiles.max
        )?;
    }
    Ok(0)
}

/// Prints reports as JSON lines, mirrors them to stderr under --pretty, and
/// maps verdicts to the exit code: 1 iff any claim failed.
fn emit(cli: &Cli, reports: &[Report]) -> Result<u8, AppError> {
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    for r in reports {
        writeln!(stdout, "{}", r.to_json_line())?;
    }
    if cli.pretty {
        let mut err = io::stderr().lock();
        for r in reports {
            writeln!(err, "{}", r.pretty_line())?;
        }
        let fails = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
        writeln!(err, "{} claims, {} FAIL", reports.len(), fails)?;
    }
    Ok(if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else {
        0
    })
}

//! Command-line harness: runs simulations, protocols, sweeps, and the
//! oracle-verification suite, writing CSV or JSON time series.
//!
//! Exit codes: 0 success, 1 I/O error, 2 usage/config error,
//! 3 verification failure.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use chainsim::output::{
    write_records_csv, write_records_json, write_sweep_csv, write_sweep_json, OutputFormat,
};
use chainsim::verify::verify_against_oracles;
use chainsim::{
    build_standard_schedule, build_router_run, run_schedule, sweep_two_kicks, uniform_samples,
    AxisRange, ChainConfig, ObservableSet, PulseSchedule, SweepGrid, DEFAULT_KICK_ANGLE,
};

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "chainsim", version, about = "Kicked open Ising chain simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the chain under an explicit schedule (or none) and record
    /// observables on a uniform time grid.
    Simulate(SimulateArgs),
    /// Run the standard kick sequence (N-2 kicks at t = kπ on spins 1..N-1).
    Protocol(SimulateArgs),
    /// Sweep the two kick times of a two-kick run on a (t1, t2) grid.
    Sweep(SweepArgs),
    /// Entangle an interior pair (r, s) by masking bonds and kicking the
    /// isolated sub-chain.
    Router(RouterArgs),
    /// Compare the simulator against the closed-form curves and report the
    /// maximum deviations.
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Default, Serialize, Deserialize)]
struct SimulateArgs {
    /// Number of spins in the chain.
    #[arg(long)]
    spins: Option<usize>,
    /// Final sample time (grid is closed on both ends, starting at 0).
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of samples; default 64 per π of t-max.
    #[arg(long)]
    samples: Option<usize>,
    /// Pairs to record: "all", "ends", or a list like "1-2,3-4".
    #[arg(long)]
    pairs: Option<String>,
    /// Schedule: "none", "standard", or a JSON file of pulse events.
    #[arg(long)]
    schedule: Option<String>,
    /// Kick angle override in radians (default π/2).
    #[arg(long)]
    angle: Option<f64>,
    /// Bond mask as a 0/1 string of length N-1 ("1" = bond active).
    #[arg(long)]
    bond_mask: Option<String>,
    /// Output file path (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    /// JSON config file mirroring these flags; flags win on conflict.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone, Default, Serialize, Deserialize)]
struct SweepArgs {
    #[arg(long)]
    spins: Option<usize>,
    /// Grid spec "t1min:t1max:n,t2min:t2max:n".
    #[arg(long)]
    grid: Option<String>,
    /// Time at which the end-pair concurrence is evaluated.
    #[arg(long)]
    eval_time: Option<f64>,
    #[arg(long)]
    angle: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone, Serialize)]
struct RouterArgs {
    #[arg(long)]
    spins: usize,
    /// First spin of the entangled pair (1 < r).
    #[arg(short = 'r', long)]
    r: usize,
    /// Second spin of the entangled pair (s < N, s - r >= 2).
    #[arg(short = 's', long)]
    s: usize,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    #[arg(long)]
    spins: usize,
    #[arg(long)]
    angle: Option<f64>,
}

enum CmdError {
    Usage(String),
    Io(String),
    VerifyFailed,
}

impl From<chainsim::Error> for CmdError {
    fn from(e: chainsim::Error) -> Self {
        CmdError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args, false),
        Command::Protocol(args) => cmd_simulate(args, true),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Router(args) => cmd_router(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CmdError::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(CmdError::VerifyFailed) => ExitCode::from(EXIT_VERIFY),
    }
}

fn merge_config<T: for<'de> Deserialize<'de> + Serialize>(
    args: T,
    path: &Option<PathBuf>,
) -> Result<T, CmdError> {
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(path)?;
    let mut base: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CmdError::Usage(format!("config {}: {e}", path.display())))?;
    let flags = serde_json::to_value(&args).expect("args serialize");
    // flags win on conflict
    if let (Some(base_map), Some(flag_map)) = (base.as_object_mut(), flags.as_object()) {
        for (k, v) in flag_map {
            if !v.is_null() {
                base_map.insert(k.clone(), v.clone());
            }
        }
    }
    serde_json::from_value(base).map_err(|e| CmdError::Usage(format!("config: {e}")))
}

fn parse_pairs(spec: &str, n_spins: usize) -> Result<ObservableSet, CmdError> {
    match spec {
        "all" => Ok(ObservableSet::all_pairs(n_spins)),
        "ends" => Ok(ObservableSet::ends(n_spins)),
        list => {
            let mut pairs = Vec::new();
            for item in list.split(',') {
                let (a, b) = item.split_once('-').ok_or_else(|| {
                    CmdError::Usage(format!("pair '{item}' must look like 1-4"))
                })?;
                let i: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| CmdError::Usage(format!("bad spin index '{a}'")))?;
                let j: usize = b
                    .trim()
                    .parse()
                    .map_err(|_| CmdError::Usage(format!("bad spin index '{b}'")))?;
                if i < 1 || j > n_spins || i >= j {
                    return Err(CmdError::Usage(format!("invalid pair {i}-{j}")));
                }
                pairs.push((i, j));
            }
            Ok(ObservableSet::pairs(pairs))
        }
    }
}

fn parse_bond_mask(spec: &str, n_spins: usize) -> Result<Vec<bool>, CmdError> {
    if spec.len() != n_spins - 1 || !spec.chars().all(|c| c == '0' || c == '1') {
        return Err(CmdError::Usage(format!(
            "bond mask must be {} characters of 0/1",
            n_spins - 1
        )));
    }
    Ok(spec.chars().map(|c| c == '1').collect())
}

fn parse_schedule(
    spec: &str,
    n_spins: usize,
    angle: f64,
) -> Result<PulseSchedule, CmdError> {
    match spec {
        "none" => Ok(PulseSchedule::empty()),
        "standard" => Ok(build_standard_schedule(n_spins, angle)?),
        path => {
            let text = std::fs::read_to_string(path)?;
            let events: Vec<chainsim::PulseEvent> = serde_json::from_str(&text)
                .map_err(|e| CmdError::Usage(format!("schedule file {path}: {e}")))?;
            Ok(PulseSchedule::new(events)?)
        }
    }
}

fn default_samples(t_max: f64) -> usize {
    ((t_max / PI) * 64.0).ceil() as usize + 1
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CmdError> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p)?))),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn parse_format(spec: &Option<String>) -> Result<OutputFormat, CmdError> {
    match spec.as_deref() {
        None => Ok(OutputFormat::Csv),
        Some(s) => s.parse().map_err(|e: chainsim::Error| CmdError::Usage(e.to_string())),
    }
}

fn cmd_simulate(args: SimulateArgs, force_standard: bool) -> Result<(), CmdError> {
    let config_path = args.config.clone();
    let args = merge_config(args, &config_path)?;
    let n_spins = args
        .spins
        .ok_or_else(|| CmdError::Usage("--spins is required".into()))?;
    let mut config = ChainConfig::uniform(n_spins)?;
    if let Some(mask) = &args.bond_mask {
        config.bond_mask = parse_bond_mask(mask, n_spins)?;
    }
    let angle = args.angle.unwrap_or(DEFAULT_KICK_ANGLE);
    let schedule = if force_standard {
        build_standard_schedule(n_spins, angle)?
    } else {
        parse_schedule(args.schedule.as_deref().unwrap_or("none"), n_spins, angle)?
    };
    let t_max = args.t_max.unwrap_or((n_spins + 2) as f64 * PI);
    let samples = uniform_samples(t_max, args.samples.unwrap_or_else(|| default_samples(t_max)))?;
    let observables = parse_pairs(args.pairs.as_deref().unwrap_or("ends"), n_spins)?;
    let records = run_schedule(&config, &schedule, &samples, &observables)?;

    let mut out = open_output(&args.out)?;
    match parse_format(&args.format)? {
        OutputFormat::Csv => write_records_csv(&records, &mut out)?,
        OutputFormat::Json => write_records_json(&args, &records, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn parse_axis(spec: &str) -> Result<AxisRange, CmdError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CmdError::Usage(format!(
            "axis '{spec}' must look like min:max:count"
        )));
    }
    Ok(AxisRange {
        min: parts[0]
            .parse()
            .map_err(|_| CmdError::Usage(format!("bad number '{}'", parts[0])))?,
        max: parts[1]
            .parse()
            .map_err(|_| CmdError::Usage(format!("bad number '{}'", parts[1])))?,
        count: parts[2]
            .parse()
            .map_err(|_| CmdError::Usage(format!("bad count '{}'", parts[2])))?,
    })
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CmdError> {
    let config_path = args.config.clone();
    let args = merge_config(args, &config_path)?;
    let n_spins = args.spins.unwrap_or(4);
    let grid_spec = args
        .grid
        .as_deref()
        .unwrap_or("0.1:5.0:50,5.1:9.0:40");
    let (t1_spec, t2_spec) = grid_spec
        .split_once(',')
        .ok_or_else(|| CmdError::Usage("grid must be 't1min:t1max:n,t2min:t2max:n'".into()))?;
    let grid = SweepGrid {
        t1_range: parse_axis(t1_spec)?,
        t2_range: parse_axis(t2_spec)?,
        eval_time: args.eval_time.unwrap_or(3.0 * PI),
        n_spins,
        angle_magnitude: args.angle.unwrap_or(DEFAULT_KICK_ANGLE),
    };
    let result = sweep_two_kicks(&grid)?;

    let mut out = open_output(&args.out)?;
    match parse_format(&args.format)? {
        OutputFormat::Csv => write_sweep_csv(&result, &mut out)?,
        OutputFormat::Json => write_sweep_json(&result, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn cmd_router(args: RouterArgs) -> Result<(), CmdError> {
    let (config, schedule) = build_router_run(args.spins, args.r, args.s)?;
    let sub_len = args.s - args.r + 1;
    let t_max = args.t_max.unwrap_or((sub_len + 2) as f64 * PI);
    let samples = uniform_samples(t_max, args.samples.unwrap_or_else(|| default_samples(t_max)))?;
    let observables = ObservableSet::pairs(vec![(args.r, args.s)]);
    let records = run_schedule(&config, &schedule, &samples, &observables)?;

    let mut out = open_output(&args.out)?;
    match parse_format(&args.format)? {
        OutputFormat::Csv => write_records_csv(&records, &mut out)?,
        OutputFormat::Json => write_records_json(&args, &records, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CmdError> {
    let report = verify_against_oracles(args.spins, args.angle.unwrap_or(DEFAULT_KICK_ANGLE))?;
    for d in &report.deviations {
        println!(
            "{}: max deviation {:.3e} (tolerance {:.0e}) [{}]",
            d.formula,
            d.max_deviation,
            d.tolerance,
            if d.passed() { "ok" } else { "FAIL" }
        );
    }
    if report.all_passed() {
        println!("all formulas verified for N = {}", report.n_spins);
        Ok(())
    } else {
        Err(CmdError::VerifyFailed)
    }
}

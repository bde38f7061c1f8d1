//! `qcs`: sweeps, anticlassicality table search, Klyshko bars and single-state reports.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qcs_core::sweep::{self, AmplitudeExpr, OutputFormat, Quantity, SweepConfig, SweepError};
use qcs_core::StateKind;

#[derive(Parser)]
#[command(
    name = "qcs",
    version,
    about = "Nonclassicality of qudit coherent states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate quantities over an amplitude grid for one or more dimensions
    Sweep(SweepArgs),
    /// Search d in 2..=12 for the tabulated anticlassicality values
    Table1(Table1Args),
    /// Klyshko B(n) for n = 0..=d-3 at a list of amplitudes
    Klyshko(KlyshkoArgs),
    /// Every witness and measure for a single state, as JSON
    Report(ReportArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    kind: Option<StateKind>,
    /// Comma-separated dimensions
    #[arg(long = "d", value_delimiter = ',')]
    d: Option<Vec<usize>>,
    /// start:stop, each a real or period multiple such as Td/2
    #[arg(long, value_parser = sweep::parse_range, allow_hyphen_values = true)]
    range: Option<(AmplitudeExpr, AmplitudeExpr)>,
    #[arg(long)]
    steps: Option<usize>,
    /// e.g. hoa:1,hos:2,a3 or `all`
    #[arg(long)]
    quantities: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// JSON file with the same fields; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, default_value_t = 0.005)]
    tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KlyshkoArgs {
    #[arg(long)]
    kind: StateKind,
    #[arg(long = "d")]
    d: usize,
    /// Comma-separated amplitudes, e.g. 1.0,Td/2,Td/4
    #[arg(long, value_delimiter = ',', required = true)]
    amps: Vec<AmplitudeExpr>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    kind: StateKind,
    #[arg(long = "d")]
    d: usize,
    /// Amplitude modulus, real or period multiple
    #[arg(long)]
    amp: AmplitudeExpr,
    /// Amplitude phase in radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phase: f64,
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, SweepError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_sweep_cmd(args: SweepArgs) -> Result<(), SweepError> {
    let base = match &args.config {
        Some(path) => SweepConfig::from_json(&fs::read_to_string(path)?)?,
        None => SweepConfig::default(),
    };
    let quantities = args
        .quantities
        .as_deref()
        .map(Quantity::parse_list)
        .transpose()
        .map_err(SweepError::Usage)?;
    let (amp_start, amp_stop) = args.range.unzip();
    let flags = SweepConfig {
        state_kind: args.kind,
        d_list: args.d,
        amp_start,
        amp_stop,
        steps: args.steps,
        quantities,
        output_path: args.out,
        format: args.format,
    };
    let spec = base.overridden_by(flags).into_spec()?;
    let table = sweep::run_sweep(&spec)?;
    let mut out = open_output(spec.output_path.as_deref())?;
    match spec.format {
        OutputFormat::Csv => sweep::write_sweep_csv(&table, &mut out)?,
        OutputFormat::Json => sweep::write_sweep_json(&table, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn run_table1_cmd(args: Table1Args) -> Result<(), SweepError> {
    let report = sweep::table1_search(args.tolerance)?;
    for cell in &report.cells {
        let status = if cell.matched() {
            format!("match at d={:?}", cell.matches)
        } else {
            format!(
                "MISS, nearest d={} ({:.4})",
                cell.nearest_d, cell.nearest_value
            )
        };
        eprintln!(
            "{:<9} {:<5} target {:.3}: {status}",
            cell.kind,
            cell.amplitude.to_string(),
            cell.target
        );
    }
    let mut out = open_output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn run_klyshko_cmd(args: KlyshkoArgs) -> Result<(), SweepError> {
    let bars = sweep::klyshko_bars(args.kind, args.d, &args.amps)?;
    let mut out = open_output(args.out.as_deref())?;
    match args.format {
        OutputFormat::Csv => sweep::write_klyshko_csv(&bars, &mut out)?,
        OutputFormat::Json => sweep::write_klyshko_json(&bars, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn run_report_cmd(args: ReportArgs) -> Result<(), SweepError> {
    if !args.phase.is_finite() {
        return Err(SweepError::Usage("phase must be finite".into()));
    }
    let report = sweep::state_report(args.kind, args.d, &args.amp, args.phase)?;
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => run_sweep_cmd(a),
        Command::Table1(a) => run_table1_cmd(a),
        Command::Klyshko(a) => run_klyshko_cmd(a),
        Command::Report(a) => run_report_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ecs_core::fock::FockConfig;
use ecs_core::sweep::{
    emit, ordering_report, preset, run_sweep, suffixed_path, verify_configs, verify_summary, Axis,
    Channel, Format, Grid, Measure, PresetPart, SweepConfig, SweepOutput, DEFAULT_TOL,
};
use ecs_core::EcsError;

const AFTER_HELP: &str = "\
Limits are evaluated at finite amplitudes: alpha -> 0 at alpha = 1e-3
(presets fig6, counterexample, limits) and alpha -> infinity at alpha = 6
(preset limits).

The Fock-space oracle sizes each mode from the Poisson tail of the input
amplitude (neglected mass < 1e-12, plus 8 levels). The per-mode cap is 512
and can be changed with the ECS_MAX_FOCK_DIM environment variable; points
that need more fail individually with a capacity error.

Exit status: 0 on success, 1 if any record failed or an oracle delta
exceeded --tol, 2 on configuration or I/O errors.";

#[derive(Parser)]
#[command(
    name = "ecs",
    version,
    about = "Decoherence of entangled coherent states in lossy channels"
)]
#[command(after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep measures over an (alpha, eta) grid.
    Sweep(SweepArgs),
    /// Run a compiled-in sweep: fig1..fig6, counterexample, limits, verify.
    #[command(after_help = AFTER_HELP)]
    Preset(PresetArgs),
    /// Check every closed form against the Fock-space oracle.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// asym (loss on mode 2) or sym (equal loss on both modes).
    #[arg(long)]
    channel: Channel,
    /// start:stop:steps (inclusive) or a comma-separated list.
    #[arg(long)]
    alpha: Axis,
    /// start:stop:steps (inclusive) or a comma-separated list, within [0, 1].
    #[arg(long)]
    eta: Axis,
    /// Comma-separated: fraction, eof_bound, concurrence, eof, negativity,
    /// pt_min_eig, teleport_fidelity, env_entanglement, bell_fraction,
    /// bell_concurrence, bell_eof, bell_negativity.
    #[arg(long, value_delimiter = ',', required = true)]
    measures: Vec<Measure>,
    /// Also evaluate each point with the Fock-space oracle.
    #[arg(long)]
    oracle: bool,
    /// Largest accepted |analytic - oracle|.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: PathBuf,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct PresetArgs {
    name: String,
    /// Output file; presets with several outputs append _<part> to the stem.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// coarse (4 x 9 points) or fine (6 x 19 points).
    #[arg(long, default_value = "coarse")]
    grid: Grid,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Also write the per-point records (one file per channel).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

fn report_failures(out: &SweepOutput) {
    for r in out.failures() {
        eprintln!(
            "{}: alpha={} eta={}: {}",
            out.channel,
            r.alpha,
            r.eta,
            r.failure.as_deref().unwrap_or_default()
        );
    }
}

fn part_path(out: &Path, part: &PresetPart) -> PathBuf {
    match part.suffix {
        Some(s) => suffixed_path(out, s),
        None => out.to_path_buf(),
    }
}

fn sweep(args: SweepArgs, fock: FockConfig) -> Result<bool, EcsError> {
    let mut config = SweepConfig::new(args.channel, args.alpha, args.eta, args.measures);
    config.fock = fock;
    if args.oracle {
        config = config.with_oracle(args.tol);
    }
    let out = run_sweep(&config)?;
    emit(&out, &args.out, args.format)?;
    report_failures(&out);
    Ok(out.passes())
}

fn run_preset(args: PresetArgs, fock: FockConfig) -> Result<bool, EcsError> {
    let p = preset(&args.name, fock)?;
    let mut ok = true;
    let stdout = std::io::stdout();
    for part in &p.parts {
        let out = run_sweep(&part.config)?;
        emit(&out, &part_path(&args.out, part), args.format)?;
        report_failures(&out);
        if part.config.oracle {
            writeln!(stdout.lock(), "{}", verify_summary(&out))?;
        }
        if p.ordering_report {
            write!(stdout.lock(), "{}", ordering_report(&out)?)?;
        }
        ok &= out.passes();
    }
    Ok(ok)
}

fn verify(args: VerifyArgs, fock: FockConfig) -> Result<bool, EcsError> {
    let mut ok = true;
    let stdout = std::io::stdout();
    for part in verify_configs(args.grid, args.tol, fock) {
        let out = run_sweep(&part.config)?;
        if let Some(path) = &args.out {
            emit(&out, &part_path(path, &part), args.format)?;
        }
        report_failures(&out);
        writeln!(stdout.lock(), "{}", verify_summary(&out))?;
        ok &= out.passes();
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = FockConfig::from_env().and_then(|fock| match cli.command {
        Command::Sweep(a) => sweep(a, fock),
        Command::Preset(a) => run_preset(a, fock),
        Command::Verify(a) => verify(a, fock),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! `spinorsurf`: soliton surfaces, mKdV deformations and the verification suite.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 numerical failure
//! (including failed verification checks).

mod config;
mod evolve;
mod surface;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::FileConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Lib(#[from] spinorsurf::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Lib(e) if e.is_numerical() => 3,
            CliError::Lib(spinorsurf::Error::Io(_)) => 1,
            CliError::Lib(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spinorsurf", version, about = "Spinor fields on soliton surfaces of revolution")]
struct Cli {
    /// Flat TOML file with default values for any flag (flags win).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// More log output (repeat for debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the immersed surface of a one-soliton spinor field and export it.
    #[command(allow_negative_numbers = true)]
    SolitonSurface(SurfaceArgs),
    /// Evolve a profile under the mKdV flow and write the trajectory.
    #[command(allow_negative_numbers = true)]
    Evolve(EvolveArgs),
    /// Run the verification checks and print a tab-separated report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct SolitonArgs {
    /// Soliton scale mu > 0.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Phase constant phi0.
    #[arg(long)]
    pub phase: Option<f64>,
    /// Branch sign, +1 or -1.
    #[arg(long)]
    pub sign: Option<String>,
    /// Spectral parameter as `re,im`.
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct MeshArgs {
    #[arg(long)]
    pub xmin: Option<f64>,
    #[arg(long)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub ymin: Option<f64>,
    #[arg(long)]
    pub ymax: Option<f64>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    /// Gauss-Legendre nodes per sub-segment.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Sub-segments per path segment.
    #[arg(long)]
    pub subdivisions: Option<usize>,
    /// Pairing of the immersion forms: closed or printed.
    #[arg(long)]
    pub convention: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub soliton: SolitonArgs,
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// obj, ply or csv (default: from the --out extension, else obj).
    #[arg(long)]
    pub format: Option<String>,
    /// Output file (default: soliton_surface.<ext> in $SPINORSURF_OUT_DIR).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    /// eq16 (`u_t = u_xxx + 3/2 u^2 u_x`) or eq17 (`v_t = v_xxx + 6 v^2 v_x`).
    #[arg(long)]
    pub variant: Option<String>,
    /// Initial profile: exact-soliton, bargmann or file.
    #[arg(long)]
    pub init: Option<String>,
    /// CSV with columns `x,u` for `--init file`.
    #[arg(long)]
    pub init_file: Option<PathBuf>,
    /// Inverse width of the exact soliton.
    #[arg(long)]
    pub kappa: Option<f64>,
    #[command(flatten)]
    pub soliton: SolitonArgs,
    /// Periodic domain length.
    #[arg(long)]
    pub length: Option<f64>,
    /// Number of grid points (power of two).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Keep every k-th step (the final time is always kept).
    #[arg(long)]
    pub record_every: Option<usize>,
    /// Disable 2/3 dealiasing.
    #[arg(long)]
    pub no_dealias: bool,
    /// Sign s in the phase law `phi0 + s mu^3 t` for deformed meshes.
    #[arg(long)]
    pub phase_law_sign: Option<String>,
    /// Also write a deformed surface mesh per snapshot in this format.
    #[arg(long)]
    pub mesh_format: Option<String>,
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Trajectory CSV (default: trajectory.csv in $SPINORSURF_OUT_DIR).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Invariants CSV (default: next to the trajectory).
    #[arg(long)]
    pub invariants_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = verify::Suite::All)]
    pub suite: verify::Suite,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
pub fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::SolitonSurface(args) => surface::run(&args, &file),
        Command::Evolve(args) => evolve::run(&args, &file),
        Command::Verify(args) => verify::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use igfv_cli::commands::{self, OoaOptions};
use igfv_cli::config::{parse_cells, parse_gradients, read_config_file, Settings};
use igfv_cli::CliError;

#[derive(Parser)]
#[command(name = "igfv", version, about = "High-order finite-volume solver for compressible flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a catalog case and write its outputs.
    Run(RunArgs),
    /// Grid-convergence study on the smooth advection case.
    Ooa(OoaArgs),
    /// Write modified-wavenumber curves as CSV.
    Spectra(SpectraArgs),
    /// Print the case catalog.
    ListCases,
}

#[derive(Args)]
struct RunArgs {
    /// key=value file; flags take precedence over its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    case: Option<String>,
    /// mp5, ig4mp, ig6mp, ig4, ig6, c5 or muscl.
    #[arg(long)]
    scheme: Option<String>,
    /// N, NxN or NxNxN.
    #[arg(long)]
    cells: Option<String>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    alpha_mp: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    pr: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// implicit or explicit4e.
    #[arg(long)]
    viscous_gradients: Option<String>,
    /// Also write a snapshot every this many steps.
    #[arg(long)]
    write_every: Option<usize>,
}

#[derive(Args)]
struct OoaArgs {
    #[arg(long, value_delimiter = ',', default_value = "mp5,ig6mp,ig4mp")]
    schemes: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
    ns: Vec<usize>,
    #[arg(long)]
    t_end: Option<f64>,
    /// dt = coef·h², capped by the CFL limit.
    #[arg(long, default_value_t = 1.0)]
    dt_coef: f64,
    #[arg(long, default_value_t = 0.2)]
    cfl: f64,
}

#[derive(Args)]
struct SpectraArgs {
    #[arg(long, value_delimiter = ',', default_value = "ig4,ig6,c5,muscl,mp5,upwind")]
    schemes: Vec<String>,
    /// Wavenumbers sampled uniformly in (0, π].
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn settings(a: RunArgs) -> Result<Settings, CliError> {
    let file = match &a.config {
        Some(p) => read_config_file(p)?,
        None => Settings::default(),
    };
    let flags = Settings {
        case: a.case,
        scheme: a.scheme,
        cells: a.cells.as_deref().map(parse_cells).transpose()?,
        cfl: a.cfl,
        t_end: a.t_end,
        alpha_mp: a.alpha_mp,
        mu: a.mu,
        pr: a.pr,
        out: a.out,
        viscous_gradients: a.viscous_gradients.as_deref().map(parse_gradients).transpose()?,
        write_every: a.write_every,
    };
    Ok(file.merged(flags))
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Run(a) => {
            let m = commands::run(&settings(a)?)?;
            println!(
                "{} with {}: {} steps to t = {} in {:.2} s, fallbacks {}/{}",
                m.case, m.scheme, m.steps, m.time, m.wall_seconds, m.fallbacks.to_mp5, m.fallbacks.to_first_order
            );
            for p in &m.outputs {
                println!("wrote {}", p.display());
            }
        }
        Command::Ooa(a) => {
            let opts = OoaOptions {
                schemes: a.schemes,
                ns: a.ns,
                t_end: a.t_end,
                dt_coef: a.dt_coef,
                cfl: a.cfl,
            };
            print!("{}", commands::format_ooa_table(&commands::ooa(&opts)?));
        }
        Command::Spectra(a) => {
            for p in commands::spectra(&a.schemes, a.samples, &a.out)? {
                println!("wrote {}", p.display());
            }
        }
        Command::ListCases => print!("{}", commands::list_cases()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

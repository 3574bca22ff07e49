//! `circlaw`: reproducible experiment runner for the circular-law toolkit.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 theorem-hypothesis
//! violation (for example a shift too close to the unit circle).

mod config;
mod manifest;
mod run;

use clap::{Parser, Subcommand};
use config::{OutputFormat, PartialConfig, ResolvedConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "circlaw", version, about = "Circular-law experiments on i.i.d. random matrices")]
struct Cli {
    /// JSON config file; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports and the run manifest.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = hardware parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// First seed of the fan-out `seed0 + k`.
    #[arg(long, global = true)]
    seed0: Option<u64>,
    /// Number of seeds.
    #[arg(long, global = true)]
    seeds: Option<usize>,
    /// Entry law: ginibre-real, ginibre-complex, rademacher, uniform, laplace.
    #[arg(long, global = true)]
    ensemble: Option<String>,
    /// Matrix dimension N.
    #[arg(long = "N", global = true)]
    dimension: Option<usize>,
    /// Dimension list for scaling commands, e.g. 256,512,1024.
    #[arg(long = "Ns", global = true, value_delimiter = ',')]
    dimensions: Option<Vec<usize>>,
    /// Shift z, e.g. 0.5 or 1.2-0.3i.
    #[arg(long, global = true)]
    z: Option<String>,
    /// Test-function center z0.
    #[arg(long, global = true)]
    z0: Option<String>,
    /// Rescale exponent a in (0, 1/2].
    #[arg(long, global = true)]
    a: Option<f64>,
    /// Imaginary part of the spectral parameter for mc sweeps.
    #[arg(long, global = true)]
    eta: Option<f64>,
    /// Spectral parameter w for the minors command, e.g. 1+0.1i.
    #[arg(long, global = true)]
    w: Option<String>,
    #[arg(long, global = true)]
    xmin: Option<f64>,
    #[arg(long, global = true)]
    xmax: Option<f64>,
    /// Number of abscissae for curve commands.
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Energy columns of the spectral grid.
    #[arg(long, global = true)]
    grid_ne: Option<usize>,
    /// Eta rows per energy column.
    #[arg(long, global = true)]
    grid_neta: Option<usize>,
    /// Exponent alpha of the grid floor factor phi^alpha.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Test-function support radius for the girko command.
    #[arg(long, global = true)]
    radius: Option<f64>,
    /// Quadrature grid spacing for the girko command.
    #[arg(long, global = true)]
    grid_h: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Limiting spectral density rho_c(x, z) on an interval.
    Density,
    /// The deterministic Stieltjes transform m_c(E + i eta, z).
    Mc,
    /// Local-law deviation sweep over the spectral grid.
    GridSweep,
    /// Local circular-law statistic across dimensions.
    Circular,
    /// Girko Hermitization identity residual.
    Girko,
    /// Eigenvalue rigidity against classical locations.
    Rigidity,
    /// Exact resolvent/minor identity suite on one instance.
    Minors,
    /// Ginibre one-point intensity curve and mass checks.
    GinibreOracle,
    /// Smallest eigenvalue of the Hermitized matrix across seeds.
    Smallest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Density => "density",
            Command::Mc => "mc",
            Command::GridSweep => "grid-sweep",
            Command::Circular => "circular",
            Command::Girko => "girko",
            Command::Rigidity => "rigidity",
            Command::Minors => "minors",
            Command::GinibreOracle => "ginibre-oracle",
            Command::Smallest => "smallest",
        }
    }
}

fn resolve(cli: &Cli) -> circlaw_core::Result<ResolvedConfig> {
    let mut cfg = ResolvedConfig::defaults(cli.command.name());
    if let Some(path) = &cli.config {
        let body = std::fs::read_to_string(path).map_err(|e| {
            circlaw_core::Error::Precondition(format!("read {}: {e}", path.display()))
        })?;
        let file: PartialConfig = serde_json::from_str(&body).map_err(|e| {
            circlaw_core::Error::Precondition(format!("parse {}: {e}", path.display()))
        })?;
        cfg.apply(&file);
    }
    let format = match cli.format.as_deref() {
        None => None,
        Some("csv") => Some(OutputFormat::Csv),
        Some("json") => Some(OutputFormat::Json),
        Some(other) => {
            return Err(circlaw_core::Error::Precondition(format!(
                "unknown format '{other}', expected csv or json"
            )))
        }
    };
    let flags = PartialConfig {
        ensemble: cli.ensemble.clone(),
        dimension: cli.dimension,
        dimensions: cli.dimensions.clone(),
        seed0: cli.seed0,
        seeds: cli.seeds,
        z: cli.z.clone(),
        z0: cli.z0.clone(),
        a: cli.a,
        eta: cli.eta,
        w: cli.w.clone(),
        xmin: cli.xmin,
        xmax: cli.xmax,
        points: cli.points,
        grid_ne: cli.grid_ne,
        grid_neta: cli.grid_neta,
        alpha_exponent: cli.alpha,
        radius: cli.radius,
        grid_h: cli.grid_h,
        output_dir: cli.out.clone(),
        format,
        threads: cli.threads,
    };
    cfg.apply(&flags);
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if cfg.threads > 0 {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run::run(cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ circlaw_core::Error::Hypothesis(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

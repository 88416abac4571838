use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fqdist_cli::{run_fourier_test, run_orbit_check, run_sharpness, run_sweep, run_verify, FieldSpec, Source, SweepConfig, VerifyOptions};

#[derive(Parser)]
#[command(name = "fqdist", version, about = "Exact point-hyperplane distance experiments over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every inequality on seeded random, full, or file-supplied instances.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Use E = F_q^d and every canonical plane.
        #[arg(long, conflicts_with_all = ["points", "planes"])]
        full: bool,
        /// Point-set JSON file (requires --planes).
        #[arg(long, requires = "planes")]
        points: Option<PathBuf>,
        /// Plane-set JSON file (requires --points).
        #[arg(long, requires = "points")]
        planes: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_nu: bool,
    },
    /// Grid of (|E|, |F|) cells across the hypothesis threshold.
    Sweep(Common),
    /// Subfield construction over F_{p^2}; --field takes the prime p.
    Sharpness(Common),
    /// Plancherel, inversion and energy identities on random sets.
    FourierTest(Common),
    /// Exhaustive rigid-motion checks where the orthogonal group fits the budget.
    OrbitCheck(Common),
}

#[derive(Args)]
struct Common {
    /// TOML config; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Field as p or p,k. Repeatable.
    #[arg(long = "field")]
    fields: Vec<FieldSpec>,
    /// Dimension. Repeatable.
    #[arg(long = "dim")]
    dims: Vec<usize>,
    /// |E| values. Repeatable.
    #[arg(long = "esize")]
    e_sizes: Vec<usize>,
    /// |F| values. Repeatable.
    #[arg(long = "fsize")]
    f_sizes: Vec<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration budget for orthogonal-group and exhaustive scans.
    #[arg(long)]
    budget: Option<u64>,
    /// Draw random sizes with |E||F| > q^{d+1}.
    #[arg(long)]
    hypothesis: bool,
    /// Output directory; without it the report goes to stdout and the summary to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn resolve(self) -> anyhow::Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };
        if !self.fields.is_empty() {
            cfg.fields = self.fields;
        }
        if !self.dims.is_empty() {
            cfg.dims = self.dims;
        }
        if !self.e_sizes.is_empty() {
            cfg.e_sizes = self.e_sizes;
        }
        if !self.f_sizes.is_empty() {
            cfg.f_sizes = self.f_sizes;
        }
        cfg.trials = self.trials.unwrap_or(cfg.trials);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.budget = self.budget.unwrap_or(cfg.budget);
        cfg.hypothesis |= self.hypothesis;
        cfg.out = self.out.or(cfg.out);
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let (cfg, outcome) = match cli.command {
        Command::Verify {
            common,
            full,
            points,
            planes,
            corrupt_nu,
        } => {
            let cfg = common.resolve()?;
            let source = match (full, points, planes) {
                (true, _, _) => Source::Full,
                (_, Some(points), Some(planes)) => Source::Files { points, planes },
                _ => Source::Random,
            };
            let outcome = run_verify(&cfg, &VerifyOptions { source, corrupt_nu })?;
            (cfg, outcome)
        }
        Command::Sweep(common) => {
            let cfg = common.resolve()?;
            let outcome = run_sweep(&cfg)?;
            (cfg, outcome)
        }
        Command::Sharpness(common) => {
            let cfg = common.resolve()?;
            let outcome = run_sharpness(&cfg)?;
            (cfg, outcome)
        }
        Command::FourierTest(common) => {
            let cfg = common.resolve()?;
            let outcome = run_fourier_test(&cfg)?;
            (cfg, outcome)
        }
        Command::OrbitCheck(common) => {
            let cfg = common.resolve()?;
            let outcome = run_orbit_check(&cfg)?;
            (cfg, outcome)
        }
    };
    outcome.emit(cfg.out.as_deref())?;
    Ok(outcome.success())
}

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "pwt", version, about = "Attractors of piecewise translations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// JSON spec file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Maximum number of iterations.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for generated specs or sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Exit with status 2 when the cap is reached.
    #[arg(long)]
    pub require_finite: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact 1-D engine.
    Itm {
        #[command(subcommand)]
        action: RunAction,
    },
    /// Planar grid engine.
    Grid {
        #[command(subcommand)]
        action: RunAction,
    },
    /// Double rotations of the torus.
    Torus {
        #[command(subcommand)]
        action: RunAction,
    },
    /// Run a sweep config (any mode).
    Sweep(SweepArgs),
    Probe {
        #[command(subcommand)]
        action: ProbeAction,
    },
    /// Directed distance of each iterate to the attractor.
    Curve(CurveArgs),
    /// Attractor statistics across cell sizes.
    Scale(ScaleArgs),
    /// Distances between two PGM masks.
    Hausdorff(HausdorffArgs),
    /// Render one iterate and its layer masks.
    Render(RenderArgs),
}

#[derive(Subcommand, Debug)]
pub enum RunAction {
    Run(RunArgs),
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: Common,
    /// Grid size for generated specs.
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Iterates to snapshot, comma separated (default 0,1,2,4,...,N).
    #[arg(long, value_delimiter = ',')]
    pub snapshots: Option<Vec<usize>>,
    /// Montage columns.
    #[arg(long, default_value_t = 4)]
    pub columns: usize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Sweep config JSON.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record measured wall times in the CSV.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum ProbeAction {
    Semicontinuity(ProbeArgs),
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub radius: f64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ScaleArgs {
    #[command(flatten)]
    pub common: Common,
    /// Cell sizes, strictly decreasing, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub resolutions: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct HausdorffArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Cell size (default: 1 / width).
    #[arg(long)]
    pub h: Option<f64>,
    /// Treat the masks as periodic.
    #[arg(long)]
    pub torus: bool,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub common: Common,
    /// Iterate to render (default: the final one).
    #[arg(long)]
    pub step: Option<usize>,
}

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gini",
    version,
    about = "Gini means, their shifted family, and property scans"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Gini,
    LnH,
    D1LnH,
    D2LnH,
    K,
    D1LnK,
    #[value(name = "d2-t-ln-h")]
    D2TLnH,
    QuadOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    H,
    LnH,
    D1LnH,
    D2LnH,
    K,
    TLnH,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    Integrand,
    Thm1,
    Thm2H,
    Thm2K,
    Thm3,
    Fd,
    All,
}

#[derive(Debug, clap::Args)]
pub struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity at a point.
    Eval {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        t: f64,
        #[arg(long, value_enum, default_value_t = Quantity::Gini)]
        quantity: Quantity,
    },
    /// Run property checks over a sampled region.
    Scan(ScanArgs),
    /// Emit evenly spaced samples of a curve in t.
    Samples {
        #[arg(long, value_enum)]
        curve: Curve,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, allow_hyphen_values = true)]
        t_range: String,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct ScanArgs {
    /// Property to check; hyphenated names (`thm2-h`) or `all`.
    #[arg(long, value_enum)]
    pub property: Option<PropertyArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub r_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_range: Option<String>,
    /// Grid points per axis.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Seeded uniform random draws on top of the grid.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub boundary_band: Option<f64>,
    #[arg(long)]
    pub sign_tol: Option<f64>,
    /// Finite-difference base step for the `fd` property.
    #[arg(long)]
    pub h: Option<f64>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
    /// JSON file with the same keys as these flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug, Clone)]
#[command(name = "bm", version, about = "Brauer-Manin obstruction for diagonal cubic surfaces over Q(zeta_3)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// H^1(k, Pic X) by group cohomology, cross-checked against the classical table.
    H1(SurfaceArgs),
    /// The 27 lines, their incidences and Galois orbits.
    Lines(SurfaceArgs),
    /// H^1 over every tuple in a coefficient box.
    Scan(ScanArgs),
    /// Local solvability and attained invariants at chosen places.
    Local(LocalArgs),
    /// Full Brauer-Manin verdict.
    Obstruct(LocalArgs),
    /// Reproduces the worked Cassels-Guy example check by check.
    VerifyPaper(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Worker threads for enumeration and scans.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock timing (makes reports run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    /// Coefficients a,b,c,d of a x^3 + b y^3 + c z^3 + d t^3.
    #[arg(short, long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    pub coefficients: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Inclusive coefficient range, e.g. `1..6`.
    #[arg(long, default_value = "1..6")]
    pub range: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct LocalArgs {
    #[arg(short, long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    pub coefficients: String,
    /// Rational primes to examine (default: every place that needs analysis).
    #[arg(long, value_delimiter = ',', value_name = "P")]
    pub place: Vec<u64>,
    /// Starting precision, either `N` for all places or `P=N` per prime.
    #[arg(long, value_delimiter = ',', value_name = "[P=]N")]
    pub precision: Vec<String>,
    /// Chart file for the Brauer class (built in for 5,9,10,12).
    #[arg(long, value_name = "FILE")]
    pub charts: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

//! Brauer classes given by cyclic-algebra charts: evaluation at local points,
//! enumeration of local point classes, per-place invariant sets and the
//! Brauer–Manin verdict.

mod chart;
mod enumerate;
mod evaluate;
mod report;

pub use chart::{
    cassels_guy, cassels_guy_class, cassels_guy_class_with_constants, cassels_guy_constants, load_chart_file, parse_chart_file,
    AzumayaChart, AzumayaClass, CubicForm, CHART_SCHEMA_VERSION,
};
pub use enumerate::{
    enumerate_local_points, HenselCertificate, LocalPointClass, PartitionTotals, PointEnumerator, DEFAULT_NODE_BUDGET,
};
pub use evaluate::{invariant_at_point, residue_over_sqrt_minus_three, unit_resolution, ChartEvaluator, ChartReading};
pub use report::{
    bad_places, default_precision, local_solvability, obstruction_verdict, place_report, printed_six_residues,
    six_residue_census, sumset, zeta_scaled_six_residues, ClassReport, ObstructionReport, PlaceMethod, PlaceReport,
    PrecisionPolicy, PrecisionRun, ResidueCensus, Verdict, PRECISION_CAP_ENV,
};

use crate::eisenstein::EisensteinError;
use crate::lines27::LinesError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AzumayaError {
    #[error("invalid chart data: {0}")]
    InvalidChart(String),
    #[error("precision must be at least 1, got {0}")]
    InvalidPrecision(u32),
    #[error("cannot parse {PRECISION_CAP_ENV}={0}")]
    InvalidPrecisionCap(String),
    #[error("no chart is evaluable at a class over {place} at precision {precision}")]
    NoEvaluableChart { place: String, precision: u32 },
    #[error("charts {first} and {second} disagree at a class over {place}")]
    ChartDisagreement { place: String, first: String, second: String },
    #[error("point class belongs to another place")]
    WrongPlace,
    #[error("local solvability over {place} did not stabilize")]
    NoStabilization { place: String },
    #[error("enumeration over {place} at precision {precision} exceeded the node budget")]
    EnumerationBudget { place: String, precision: u32 },
    #[error("H^1 = {h1} is nonzero but no chart data is available")]
    MissingCharts { h1: String },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Eisenstein(#[from] EisensteinError),
    #[error(transparent)]
    Lines(#[from] LinesError),
}

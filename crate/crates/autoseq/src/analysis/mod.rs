//! Means, densities and dynamics-flavored finite-scale diagnostics.

mod complexity;
mod mean;
mod toeplitz;

pub use complexity::{word_complexity, ComplexityReport, LengthStats};
pub use mean::{empirical_mean, mean_formula, mean_report, mean_trace_csv, MeanReport};
pub use toeplitz::{support_density, toeplitz_check, DecadeDensity, DensityReport};

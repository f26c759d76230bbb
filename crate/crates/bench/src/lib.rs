//! Shared fixtures for the benchmarks.

use qiopa::wigner::{AxisRange, GridMode, GridSpec, FIG4_GAIN};
use qiopa::{derive_params, OpaParams};

pub fn fig4_params() -> OpaParams {
    derive_params(FIG4_GAIN, 0.0).expect("valid gain")
}

/// Preset axes on an n × n grid.
pub fn fig4_spec(mode: GridMode, n: usize) -> GridSpec {
    GridSpec { x: AxisRange::new(-3.0, 3.0, n), y: AxisRange::new(-3.0, 3.0, n), ..GridSpec::fig4(mode) }
}

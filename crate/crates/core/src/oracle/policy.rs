use crate::error::{QiopaError, Result};
use crate::opa::OpaParams;

/// Largest dense register the oracle will allocate (amplitudes).
pub const MAX_REGISTER_AMPLITUDES: usize = 4_000_000;

/// Boundary occupancy above which a propagated state is rejected.
pub const BOUNDARY_TOLERANCE: f64 = 1e-6;

/// Cutoff d per mode: smallest d with Γ^(2d) below `tail_tolerance`, plus
/// `guard_levels`. The guard keeps the reflection off the truncation wall
/// away from amplitudes that are compared one by one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffPolicy {
    pub tail_tolerance: f64,
    pub guard_levels: usize,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        Self { tail_tolerance: 1e-10, guard_levels: 0 }
    }
}

impl CutoffPolicy {
    /// Ten guard levels over the base cutoff. An injected photon fattens the
    /// tail by a factor ~n, which the base cutoff (tuned to the squeezed
    /// vacuum) does not cover.
    pub fn guarded() -> Self {
        Self { guard_levels: 10, ..Self::default() }
    }

    /// For amplitude-by-amplitude comparisons: the wall sits where the
    /// amplitudes themselves (not their squares) have fallen below 1e-10,
    /// plus ten guard levels.
    pub fn amplitude() -> Self {
        Self { tail_tolerance: 1e-20, guard_levels: 10 }
    }

    pub fn base_cutoff(&self, params: &OpaParams) -> usize {
        let x = params.gamma_ratio() * params.gamma_ratio();
        if x == 0.0 {
            return 2;
        }
        let d = (self.tail_tolerance.ln() / x.ln()).floor() as usize + 1;
        d.max(2)
    }

    pub fn cutoff(&self, params: &OpaParams) -> usize {
        self.base_cutoff(params) + self.guard_levels
    }

    /// Cutoff for a dense register of `mode_count` modes, refused when the
    /// register would exceed [`MAX_REGISTER_AMPLITUDES`].
    pub fn dense_cutoff(&self, params: &OpaParams, mode_count: usize) -> Result<usize> {
        let d = self.cutoff(params);
        let cap = (MAX_REGISTER_AMPLITUDES as f64).powf(1.0 / mode_count as f64).floor() as usize;
        let size = (d as f64).powi(mode_count as i32);
        if size > MAX_REGISTER_AMPLITUDES as f64 {
            return Err(QiopaError::CutoffInfeasible { gain: params.gain(), required: d, cap });
        }
        Ok(d)
    }
}

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::opa::OpaParams;

/// One π-analyzer: rotator angle φ (from the 45° axis) and the birefringent
/// phases on the two polarization components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorMode {
    pub rotator_angle: f64,
    #[serde(default)]
    pub psi_alpha: f64,
    #[serde(default)]
    pub psi_beta: f64,
}

impl DetectorMode {
    /// Shift carried entirely by the α component.
    pub fn new(rotator_angle: f64, shift: f64) -> Self {
        Self { rotator_angle, psi_alpha: shift, psi_beta: 0.0 }
    }

    /// Ψ = ψ_α − ψ_β. Every closed form depends on the pair only through this.
    pub fn shift(&self) -> f64 {
        self.psi_alpha - self.psi_beta
    }

    pub fn xi_plus(&self) -> Complex64 {
        let (s, c) = self.rotator_angle.sin_cos();
        Complex64::from_polar(FRAC_1_SQRT_2 * (c + s), self.psi_beta)
    }

    pub fn xi_minus(&self) -> Complex64 {
        let (s, c) = self.rotator_angle.sin_cos();
        Complex64::from_polar(FRAC_1_SQRT_2 * (c - s), self.psi_alpha)
    }

    /// The companion detector behind the same analyzer, at φ + 90°.
    pub fn orthogonal(&self) -> Self {
        Self { rotator_angle: self.rotator_angle + FRAC_PI_2, ..*self }
    }
}

/// Analyzers on k₁ and k₂. The degenerate configuration only reads `modes[0]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DetectorSettings {
    pub modes: [DetectorMode; 2],
}

impl DetectorSettings {
    pub fn new(first: DetectorMode, second: DetectorMode) -> Self {
        Self { modes: [first, second] }
    }

    /// φ_j = 0 with the shifts chosen so every fringe phase vanishes:
    /// Ψ₁ = Φ, Ψ₂ = −Φ (and Ψ = Φ for the degenerate analyzer).
    pub fn aligned(phase_phi: f64) -> Self {
        Self::new(DetectorMode::new(0.0, phase_phi), DetectorMode::new(0.0, -phase_phi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseCombos {
    /// Δ_j⁻ = Φ − Ψ_j
    pub delta_minus: [f64; 2],
    /// Δ_j⁺ = Φ + Ψ_j
    pub delta_plus: [f64; 2],
    /// φ₁ − φ₂
    pub angle_minus: f64,
    /// φ₁ + φ₂
    pub angle_plus: f64,
    /// Ψ₁ + Ψ₂
    pub shift_sum: f64,
    /// Ψ − Φ, degenerate analyzer
    pub degenerate: f64,
}

impl PhaseCombos {
    pub fn new(params: &OpaParams, settings: &DetectorSettings) -> Self {
        let phi = params.phase_phi();
        let [m1, m2] = settings.modes;
        let (p1, p2) = (m1.shift(), m2.shift());
        Self {
            delta_minus: [phi - p1, phi - p2],
            delta_plus: [phi + p1, phi + p2],
            angle_minus: m1.rotator_angle - m2.rotator_angle,
            angle_plus: m1.rotator_angle + m2.rotator_angle,
            shift_sum: p1 + p2,
            degenerate: p1 - phi,
        }
    }
}

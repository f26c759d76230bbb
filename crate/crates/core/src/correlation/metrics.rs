use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::closed_form::{g1_degenerate, g1_nondegenerate, g2_nondegenerate, DetectedMode, ModePair};
use super::settings::{DetectorSettings, PhaseCombos};
use crate::opa::{Configuration, OpaParams};

/// Analyzer settings putting the fringe factor cos(2φ)·cos(Δ) at +1 or −1.
fn fringe_extreme(params: &OpaParams, bright: bool) -> DetectorSettings {
    let mut s = DetectorSettings::aligned(params.phase_phi());
    if !bright {
        for m in &mut s.modes {
            m.rotator_angle = FRAC_PI_2;
        }
    }
    s
}

fn g1(params: &OpaParams, configuration: Configuration, settings: &DetectorSettings, mode: DetectedMode) -> f64 {
    match configuration {
        Configuration::NonDegenerate => g1_nondegenerate(params, settings, mode),
        Configuration::Degenerate => g1_degenerate(params, settings),
    }
}

/// (G_max − G_min)/(G_max + G_min) of the first-order fringe. `mode` is
/// ignored for the degenerate configuration. `None` when both extremes are 0.
pub fn visibility(params: &OpaParams, configuration: Configuration, mode: DetectedMode) -> Option<f64> {
    let hi = g1(params, configuration, &fringe_extreme(params, true), mode);
    let lo = g1(params, configuration, &fringe_extreme(params, false), mode);
    let sum = hi + lo;
    (sum > 0.0).then(|| (hi - lo) / sum)
}

/// G(1) with every fringe phase at zero over the vacuum-injection rate n̄.
pub fn signal_to_noise(params: &OpaParams, configuration: Configuration, mode: DetectedMode) -> Option<f64> {
    let n = params.mean_photons();
    (n > 0.0).then(|| g1(params, configuration, &fringe_extreme(params, true), mode) / n)
}

fn with_orthogonal(settings: &DetectorSettings, mode: DetectedMode) -> DetectorSettings {
    let mut s = *settings;
    let j = match mode {
        DetectedMode::One => 0,
        DetectedMode::Two => 1,
    };
    s.modes[j] = s.modes[j].orthogonal();
    s
}

/// G(1)(φ) − G(1)(φ̄) on one analyzer, from the closed-form G(1).
pub fn fringe_difference(
    params: &OpaParams,
    configuration: Configuration,
    settings: &DetectorSettings,
    mode: DetectedMode,
) -> f64 {
    let mode = match configuration {
        Configuration::NonDegenerate => mode,
        Configuration::Degenerate => DetectedMode::One,
    };
    g1(params, configuration, settings, mode) - g1(params, configuration, &with_orthogonal(settings, mode), mode)
}

/// The difference patterns as printed: n̄·cos(2φ₂)·cos Δ₂⁺ on k₂, and the
/// same amplitude n̄ for the degenerate analyzer (read with ΔΦ). On k₁ no
/// pattern is printed and the value follows from G(1).
pub fn fringe_difference_printed(
    params: &OpaParams,
    configuration: Configuration,
    settings: &DetectorSettings,
    mode: DetectedMode,
) -> f64 {
    let n = params.mean_photons();
    let c = PhaseCombos::new(params, settings);
    match (configuration, mode) {
        (Configuration::NonDegenerate, DetectedMode::Two) => {
            n * (2.0 * settings.modes[1].rotator_angle).cos() * c.delta_plus[1].cos()
        }
        (Configuration::NonDegenerate, DetectedMode::One) => {
            fringe_difference(params, configuration, settings, mode)
        }
        (Configuration::Degenerate, _) => n * (2.0 * settings.modes[0].rotator_angle).cos() * c.degenerate.cos(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CauchySchwarz {
    pub g2_11: f64,
    pub g2_22: f64,
    pub g2_12: f64,
    /// [g(2)_12]²
    pub lhs: f64,
    /// g(2)_11 · g(2)_22
    pub rhs: f64,
    pub violated: bool,
}

impl CauchySchwarz {
    /// From raw rates (G(1)_1, G(1)_2) and (G(2)_11, G(2)_22, G(2)_12).
    pub fn from_rates(g1: [f64; 2], g2: [f64; 3]) -> Option<Self> {
        if g1[0] <= 0.0 || g1[1] <= 0.0 {
            return None;
        }
        let g2_11 = g2[0] / (g1[0] * g1[0]);
        let g2_22 = g2[1] / (g1[1] * g1[1]);
        let g2_12 = g2[2] / (g1[0] * g1[1]);
        let lhs = g2_12 * g2_12;
        let rhs = g2_11 * g2_22;
        Some(Self { g2_11, g2_22, g2_12, lhs, rhs, violated: lhs > rhs })
    }
}

/// Normalized coincidences from the closed forms. `None` at n̄ = 0.
pub fn cauchy_schwarz_test(params: &OpaParams, settings: &DetectorSettings) -> Option<CauchySchwarz> {
    if params.mean_photons() <= 0.0 {
        return None;
    }
    let g1 = [
        g1_nondegenerate(params, settings, DetectedMode::One),
        g1_nondegenerate(params, settings, DetectedMode::Two),
    ];
    let g2 = [
        g2_nondegenerate(params, settings, ModePair::P11),
        g2_nondegenerate(params, settings, ModePair::P22),
        g2_nondegenerate(params, settings, ModePair::P12),
    ];
    CauchySchwarz::from_rates(g1, g2)
}

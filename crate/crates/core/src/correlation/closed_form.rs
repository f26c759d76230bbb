use serde::{Deserialize, Serialize};

use super::settings::{DetectorSettings, PhaseCombos};
use crate::opa::OpaParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetectedMode {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModePair {
    P11,
    P22,
    P12,
}

/// Degenerate coincidences: both counts on D_φ, or one on D_φ and one on D_φ̄.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetectorPair {
    Same,
    Crossed,
}

fn fringe_terms(params: &OpaParams, settings: &DetectorSettings) -> (f64, f64, PhaseCombos) {
    let c = PhaseCombos::new(params, settings);
    let f1 = (2.0 * settings.modes[0].rotator_angle).cos() * c.delta_minus[0].cos();
    let f2 = (2.0 * settings.modes[1].rotator_angle).cos() * c.delta_plus[1].cos();
    (f1, f2, c)
}

pub fn g1_nondegenerate(params: &OpaParams, settings: &DetectorSettings, mode: DetectedMode) -> f64 {
    let n = params.mean_photons();
    let (f1, f2, _) = fringe_terms(params, settings);
    match mode {
        DetectedMode::One => n + 0.5 * (n + 1.0) * (1.0 + f1),
        DetectedMode::Two => n + 0.5 * n * (1.0 + f2),
    }
}

pub fn g1_degenerate(params: &OpaParams, settings: &DetectorSettings) -> f64 {
    let n = params.mean_photons();
    let c = PhaseCombos::new(params, settings);
    let f = (2.0 * settings.modes[0].rotator_angle).cos() * c.degenerate.cos();
    n + (n + 0.5) * (1.0 + f)
}

/// Normal-ordered coincidences. (1,1) and (2,2) are the printed forms; (1,2)
/// drops the constant n̄(n̄+½) that the printed expression carries inside its
/// mode-2 bracket (see [`g2_nondegenerate_printed`]).
pub fn g2_nondegenerate(params: &OpaParams, settings: &DetectorSettings, pair: ModePair) -> f64 {
    let n = params.mean_photons();
    let (f1, f2, c) = fringe_terms(params, settings);
    match pair {
        ModePair::P11 => 2.0 * n * (n + (n + 1.0) * (1.0 + f1)),
        ModePair::P22 => 2.0 * n * n * (1.0 + (1.0 + f2)),
        ModePair::P12 => 2.0 * n * n + 0.5 * n + n * (n + 1.0) * f1 + n * (n + 0.5) * f2 + crossed_term(n, &c),
    }
}

/// G(2) exactly as printed. Only (1,2) differs from [`g2_nondegenerate`].
pub fn g2_nondegenerate_printed(params: &OpaParams, settings: &DetectorSettings, pair: ModePair) -> f64 {
    if pair != ModePair::P12 {
        return g2_nondegenerate(params, settings, pair);
    }
    let n = params.mean_photons();
    let (f1, f2, c) = fringe_terms(params, settings);
    2.0 * n * n + 0.5 * n + n * (n + 1.0) * f1 + n * (n + 0.5) * (1.0 + f2) + crossed_term(n, &c)
}

fn crossed_term(n: f64, c: &PhaseCombos) -> f64 {
    let cp = c.shift_sum.cos();
    n * (n + 1.0) * ((1.0 + cp) * c.angle_minus.cos().powi(2) + (1.0 - cp) * c.angle_plus.sin().powi(2))
}

pub fn g2_degenerate(params: &OpaParams, settings: &DetectorSettings, pair: DetectorPair) -> f64 {
    let n = params.mean_photons();
    let c = PhaseCombos::new(params, settings);
    let c2 = (2.0 * settings.modes[0].rotator_angle).cos();
    match pair {
        DetectorPair::Same => {
            6.0 * n * n + 2.0 * n + 3.0 * n * (n + 1.0) * c2 * c2 + 2.0 * n * (3.0 * n + 2.0) * c2 * c.degenerate.cos()
        }
        DetectorPair::Crossed => 2.0 * n * (3.0 * n + 2.0) - 3.0 * n * (n + 1.0) * c2 * c2,
    }
}

/// Coincidences with both amplifiers fed by vacuum. The output is Gaussian,
/// so G(2)_ij = G(1)_i G(1)_j + |⟨c_i† c_j⟩|² + |⟨c_i c_j⟩|², and only the
/// twin-beam term ⟨c₁c₂⟩ = CS(ξ₁⁻ξ₂⁻ + ξ₁⁺ξ₂⁺) survives.
pub fn g2_vacuum_nondegenerate(params: &OpaParams, settings: &DetectorSettings, pair: ModePair) -> f64 {
    let n = params.mean_photons();
    match pair {
        ModePair::P11 | ModePair::P22 => 2.0 * n * n,
        ModePair::P12 => {
            let [m1, m2] = settings.modes;
            let k = m1.xi_minus() * m2.xi_minus() + m1.xi_plus() * m2.xi_plus();
            n * n + n * (n + 1.0) * k.norm_sqr()
        }
    }
}

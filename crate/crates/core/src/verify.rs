//! Oracle-equivalence suites behind `qiopa verify`. Each suite returns the
//! worst deviation over all requested gains next to its tolerance.

use num_complex::Complex64;
use serde::Serialize;

use crate::correlation::{closed_form_rates, oracle_rates, DetectorMode, DetectorSettings, OracleCorrelator};
use crate::error::{QiopaError, Result};
use crate::opa::disentangle::{squeezed_pair, PairInput};
use crate::opa::{build_output_state, derive_params, Configuration, OpaParams};
use crate::oracle::{
    convention_scale, propagate_injected, wigner_by_displacement, CutoffPolicy, SplitState, SqueezePropagator,
};
use crate::wigner::{closed_form_scale, phase_point_from_real, wigner_closed_form, wigner_normalization};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_GAINS: [f64; 3] = [0.2, 0.5, 0.8];

pub const DISENTANGLING_TOLERANCE: f64 = 1e-8;
pub const BUILDER_TOLERANCE: f64 = 1e-8;
pub const SPLIT_TOLERANCE: f64 = 1e-12;
pub const WIGNER_TOLERANCE: f64 = 1e-6;
pub const CORRELATION_TOLERANCE: f64 = 1e-6;
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// Builder tables run to this photon number.
const BUILDER_TRUNCATION: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    /// Multiplies the oracle's displaced-parity Wigner before comparison.
    pub convention_scale: f64,
    pub phase_phi: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { convention_scale: convention_scale(Configuration::Degenerate), phase_phi: 0.8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_deviation: f64,
    pub worst_gain: f64,
    pub tolerance: f64,
    /// "absolute" or "relative"
    pub measure: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub gains: Vec<f64>,
    pub options: VerifyOptions,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Every suite holds a dense four-mode register at the guarded cutoff for
/// the split cross-check; gains where that does not fit are refused.
pub fn preflight(gains: &[f64]) -> Result<()> {
    if gains.is_empty() {
        return Err(QiopaError::InvalidInput("no gains to verify".into()));
    }
    for &g in gains {
        let p = derive_params(g, 0.0)?;
        CutoffPolicy::guarded().dense_cutoff(&p, 4)?;
    }
    Ok(())
}

pub fn run_all(gains: &[f64], options: &VerifyOptions) -> Result<VerifyReport> {
    preflight(gains)?;
    let checks = vec![
        disentangling(gains)?,
        state_builders(gains, options)?,
        split_register(gains, options)?,
        wigner_degenerate(gains, options)?,
        correlations(gains, options)?,
        normalization(gains, options)?,
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { schema_version: REPORT_SCHEMA_VERSION, gains: gains.to_vec(), options: *options, checks, passed })
}

struct Worst {
    dev: f64,
    gain: f64,
}

impl Worst {
    fn new() -> Self {
        Self { dev: 0.0, gain: f64::NAN }
    }

    fn see(&mut self, dev: f64, gain: f64) {
        // NaN deviations count as failures
        if dev.is_nan() || dev > self.dev || self.gain.is_nan() {
            self.dev = if dev.is_nan() { f64::INFINITY } else { dev.max(self.dev) };
            self.gain = gain;
        }
    }

    fn finish(self, name: &'static str, tolerance: f64, measure: &'static str) -> CheckResult {
        CheckResult {
            name,
            max_deviation: self.dev,
            worst_gain: self.gain,
            tolerance,
            measure,
            passed: self.dev <= tolerance,
        }
    }
}

fn basis_pair(input: PairInput, d: usize) -> Vec<Complex64> {
    let (i, j) = input.occupations();
    let mut v = vec![Complex64::default(); d * d];
    v[i * d + j] = Complex64::new(1.0, 0.0);
    v
}

/// Disentangled squeezed vacuum, one photon and photon pair against the
/// propagator, amplitude by amplitude.
pub fn disentangling(gains: &[f64]) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &g in gains {
        let p = derive_params(g, 0.0)?;
        let d = CutoffPolicy::amplitude().cutoff(&p);
        let u = SqueezePropagator::new(g, d)?;
        for input in [PairInput::Vacuum, PairInput::OnePhoton, PairInput::PhotonPair] {
            let out = u.apply_pair(&basis_pair(input, d))?;
            let dev = out
                .iter()
                .zip(squeezed_pair(&p, input, d))
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            worst.see(dev, g);
        }
    }
    Ok(worst.finish("disentangling", DISENTANGLING_TOLERANCE, "absolute"))
}

pub fn state_builders(gains: &[f64], options: &VerifyOptions) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &g in gains {
        let p = derive_params(g, options.phase_phi)?;
        let d = CutoffPolicy::amplitude().cutoff(&p).max(BUILDER_TRUNCATION + 5);
        let deg = propagate_injected(Configuration::Degenerate, &p, d)?;
        for (occ, a) in build_output_state(Configuration::Degenerate, &p, BUILDER_TRUNCATION).entries() {
            worst.see((deg.amplitude(&occ)? - a).norm(), g);
        }
        let split = SplitState::nondegenerate_output(&p, d)?;
        for (occ, a) in build_output_state(Configuration::NonDegenerate, &p, BUILDER_TRUNCATION).entries() {
            worst.see((split.amplitude(&occ)? - a).norm(), g);
        }
    }
    Ok(worst.finish("state_builders", BUILDER_TOLERANCE, "absolute"))
}

/// Factored non-degenerate output against the dense four-mode register.
pub fn split_register(gains: &[f64], options: &VerifyOptions) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &g in gains {
        let p = derive_params(g, options.phase_phi)?;
        let d = CutoffPolicy::guarded().dense_cutoff(&p, 4)?;
        let dense = propagate_injected(Configuration::NonDegenerate, &p, d)?;
        let split = SplitState::nondegenerate_output(&p, d)?.to_register()?;
        let dev = dense.as_slice().iter().zip(split.as_slice()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        worst.see(dev, g);
    }
    Ok(worst.finish("split_register", SPLIT_TOLERANCE, "absolute"))
}

/// 5×5 grid in the (Re γ+, Im γ−) plane, the other two squeezed
/// coordinates tied to the swept ones so all four vary.
pub fn wigner_points() -> Vec<[f64; 4]> {
    let axis = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut pts = Vec::with_capacity(25);
    for &y in &axis {
        for &x in &axis {
            pts.push([x, 0.3 * y, 0.2 * x, y]);
        }
    }
    pts
}

/// Degenerate closed form against displaced parity, relative to the peak
/// magnitude |W(0)| = 4/π² × scale.
pub fn wigner_degenerate(gains: &[f64], options: &VerifyOptions) -> Result<CheckResult> {
    let cfg = Configuration::Degenerate;
    let mut worst = Worst::new();
    for &g in gains {
        let p = derive_params(g, options.phase_phi)?;
        let d = CutoffPolicy::guarded().dense_cutoff(&p, 2)?;
        let reg = propagate_injected(cfg, &p, d)?;
        let peak = 16.0 / std::f64::consts::PI.powi(4) * closed_form_scale(cfg);
        for u in wigner_points() {
            let pt = phase_point_from_real(&p, cfg, &u)?;
            let closed = wigner_closed_form(&p, &pt).value;
            let oracle = options.convention_scale * wigner_by_displacement(&reg, &[0, 1], &pt.mode_amplitudes())?;
            worst.see((closed - oracle).abs() / peak, g);
        }
    }
    Ok(worst.finish("wigner_degenerate", WIGNER_TOLERANCE, "relative"))
}

/// Detector tuples for the correlation lattice: (Φ, settings).
pub fn detector_lattice() -> Vec<(f64, DetectorSettings)> {
    let d = |phi, a, b| DetectorMode { rotator_angle: phi, psi_alpha: a, psi_beta: b };
    vec![
        (0.0, DetectorSettings::default()),
        (0.9, DetectorSettings::new(d(0.3, 0.4, -0.2), d(-0.5, 1.3, 0.1))),
        (2.1, DetectorSettings::new(d(1.1, -0.7, 0.6), d(0.2, 0.0, 2.5))),
        (-1.4, DetectorSettings::new(d(-0.25, 3.0, 1.0), d(0.8, -2.2, 0.3))),
    ]
}

/// Largest relative deviation between closed-form and oracle rates over the
/// lattice, both configurations, at one gain.
pub fn correlation_deviation(gain: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
        for (phi, s) in detector_lattice() {
            let p = derive_params(gain, phi)?;
            let oracle = OracleCorrelator::injected(cfg, &p, &CutoffPolicy::guarded())?;
            worst = worst.max(rates_deviation(&p, cfg, &oracle, &s)?);
        }
    }
    Ok(worst)
}

fn rates_deviation(p: &OpaParams, cfg: Configuration, oracle: &OracleCorrelator, s: &DetectorSettings) -> Result<f64> {
    let got = oracle_rates(oracle, s)?;
    let want = closed_form_rates(p, cfg, s);
    Ok(got
        .g1
        .iter()
        .chain(&got.g2)
        .zip(want.g1.iter().chain(&want.g2))
        .map(|(a, b)| relative(*a, *b))
        .fold(0.0, f64::max))
}

/// |a − b| / |b|, or |a − b| when b vanishes (zero-gain coincidences).
pub fn relative(a: f64, b: f64) -> f64 {
    let diff = (a - b).abs();
    if b.abs() < 1e-300 {
        diff
    } else {
        diff / b.abs()
    }
}

pub fn correlations(gains: &[f64], _options: &VerifyOptions) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &g in gains {
        worst.see(correlation_deviation(g)?, g);
    }
    Ok(worst.finish("correlations", CORRELATION_TOLERANCE, "relative"))
}

pub fn normalization(gains: &[f64], options: &VerifyOptions) -> Result<CheckResult> {
    let mut worst = Worst::new();
    for &g in gains {
        let p = derive_params(g, options.phase_phi)?;
        for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
            worst.see((wigner_normalization(&p, cfg)? - 1.0).abs(), g);
        }
    }
    Ok(worst.finish("wigner_normalization", NORMALIZATION_TOLERANCE, "absolute"))
}

//! Correlation rates read directly off the propagated state: G(1) = ‖cψ‖²
//! and G(2)_ij = ‖c_j c_i ψ‖² for detected fields c = ξ⁻a + ξ⁺b.

use super::closed_form::{DetectedMode, DetectorPair, ModePair};
use super::settings::{DetectorMode, DetectorSettings};
use crate::error::Result;
use crate::opa::{Configuration, OpaParams};
use crate::oracle::{propagate_injected, propagate_vacuum, CutoffPolicy, FockRegister, LinearMode, SplitState};

#[derive(Debug, Clone)]
enum Output {
    Split(SplitState),
    Dense(FockRegister),
}

impl Output {
    fn apply(&self, field: &LinearMode) -> Result<Self> {
        Ok(match self {
            Output::Split(s) => Output::Split(s.apply(field)?),
            Output::Dense(r) => Output::Dense(field.apply(r)?),
        })
    }

    fn norm_sqr(&self) -> f64 {
        match self {
            Output::Split(s) => s.norm_sqr(),
            Output::Dense(r) => r.norm_sqr(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleCorrelator {
    configuration: Configuration,
    cutoff: usize,
    norm: f64,
    output: Output,
}

impl OracleCorrelator {
    /// Injected qubit through the amplifier(s). The non-degenerate output is
    /// kept factored per amplifier pair; the degenerate one as a dense
    /// two-mode register.
    pub fn injected(configuration: Configuration, params: &OpaParams, policy: &CutoffPolicy) -> Result<Self> {
        let (cutoff, output) = match configuration {
            Configuration::NonDegenerate => {
                let d = policy.cutoff(params);
                (d, Output::Split(SplitState::nondegenerate_output(params, d)?))
            }
            Configuration::Degenerate => {
                let d = policy.dense_cutoff(params, 2)?;
                (d, Output::Dense(propagate_injected(configuration, params, d)?))
            }
        };
        Ok(Self::wrap(configuration, cutoff, output))
    }

    /// Vacuum on every input: the no-injection reference.
    pub fn vacuum(configuration: Configuration, params: &OpaParams, policy: &CutoffPolicy) -> Result<Self> {
        let (cutoff, output) = match configuration {
            Configuration::NonDegenerate => {
                let d = policy.cutoff(params);
                (d, Output::Split(SplitState::vacuum_output(params, d)?))
            }
            Configuration::Degenerate => {
                let d = policy.dense_cutoff(params, 2)?;
                (d, Output::Dense(propagate_vacuum(configuration, params, d)?))
            }
        };
        Ok(Self::wrap(configuration, cutoff, output))
    }

    fn wrap(configuration: Configuration, cutoff: usize, output: Output) -> Self {
        let norm = output.norm_sqr();
        Self { configuration, cutoff, norm, output }
    }

    pub fn configuration(&self) -> Configuration {
        self.configuration
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Truncated state norm; rates are divided by it.
    pub fn norm_sqr(&self) -> f64 {
        self.norm
    }

    /// c = ξ⁻a + ξ⁺b behind the analyzer on k₁ (a = 1⊥, b = 1∥) or k₂
    /// (a = 2∥, b = 2⊥). The degenerate analyzer sees (a, b) = (⊥, ∥).
    pub fn detected_field(&self, mode: DetectedMode, detector: &DetectorMode) -> LinearMode {
        let (a, b) = match (self.configuration, mode) {
            (Configuration::Degenerate, _) | (Configuration::NonDegenerate, DetectedMode::One) => (0, 1),
            (Configuration::NonDegenerate, DetectedMode::Two) => (3, 2),
        };
        LinearMode { terms: vec![(a, detector.xi_minus()), (b, detector.xi_plus())] }
    }

    pub fn g1(&self, field: &LinearMode) -> Result<f64> {
        Ok(self.output.apply(field)?.norm_sqr() / self.norm)
    }

    /// ⟨c_i† c_j† c_j c_i⟩
    pub fn g2(&self, first: &LinearMode, second: &LinearMode) -> Result<f64> {
        Ok(self.output.apply(first)?.apply(second)?.norm_sqr() / self.norm)
    }

    pub fn g1_mode(&self, settings: &DetectorSettings, mode: DetectedMode) -> Result<f64> {
        let j = index(mode);
        self.g1(&self.detected_field(mode, &settings.modes[j]))
    }

    pub fn g2_pair(&self, settings: &DetectorSettings, pair: ModePair) -> Result<f64> {
        let (x, y) = match pair {
            ModePair::P11 => (DetectedMode::One, DetectedMode::One),
            ModePair::P22 => (DetectedMode::Two, DetectedMode::Two),
            ModePair::P12 => (DetectedMode::One, DetectedMode::Two),
        };
        let fx = self.detected_field(x, &settings.modes[index(x)]);
        let fy = self.detected_field(y, &settings.modes[index(y)]);
        self.g2(&fx, &fy)
    }

    /// Degenerate coincidences on D_φ·D_φ or D_φ·D_φ̄.
    pub fn g2_detectors(&self, settings: &DetectorSettings, pair: DetectorPair) -> Result<f64> {
        let det = settings.modes[0];
        let first = self.detected_field(DetectedMode::One, &det);
        let second = match pair {
            DetectorPair::Same => first.clone(),
            DetectorPair::Crossed => self.detected_field(DetectedMode::One, &det.orthogonal()),
        };
        self.g2(&first, &second)
    }
}

fn index(mode: DetectedMode) -> usize {
    match mode {
        DetectedMode::One => 0,
        DetectedMode::Two => 1,
    }
}

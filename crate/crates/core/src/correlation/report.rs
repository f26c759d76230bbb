use serde::Serialize;

use super::closed_form::{
    g1_degenerate, g1_nondegenerate, g2_degenerate, g2_nondegenerate, g2_nondegenerate_printed, DetectedMode,
    DetectorPair, ModePair,
};
use super::metrics::{fringe_difference, fringe_difference_printed, signal_to_noise, visibility, CauchySchwarz};
use super::oracle::OracleCorrelator;
use super::settings::DetectorSettings;
use crate::error::Result;
use crate::opa::{Configuration, OpaParams};
use crate::oracle::CutoffPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
}

/// Rates seen by the two counting channels. Non-degenerate: channel 1 and 2
/// are the D_φ detectors on k₁ and k₂. Degenerate: channel 1 is D_φ and
/// channel 2 is D_φ̄ behind the same analyzer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rates {
    pub g1: [f64; 2],
    /// G(2)_11, G(2)_22, G(2)_12
    pub g2: [f64; 3],
}

/// Printed expressions that the oracle does not reproduce, kept next to the
/// corrected values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedForms {
    pub g2_12: f64,
    pub fringe_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub configuration: Configuration,
    pub gain: f64,
    pub phi: f64,
    pub mean_photons: f64,
    pub settings: DetectorSettings,
    pub provenance: Provenance,
    pub rates: Rates,
    pub normalized: Option<CauchySchwarz>,
    pub visibility: Option<f64>,
    pub signal_to_noise: Option<f64>,
    pub fringe_difference: f64,
    pub printed: PrintedForms,
}

/// Channel whose visibility, s/n and fringe difference are reported.
pub fn reported_mode(configuration: Configuration) -> DetectedMode {
    match configuration {
        Configuration::NonDegenerate => DetectedMode::Two,
        Configuration::Degenerate => DetectedMode::One,
    }
}

pub fn closed_form_rates(params: &OpaParams, configuration: Configuration, settings: &DetectorSettings) -> Rates {
    match configuration {
        Configuration::NonDegenerate => Rates {
            g1: [
                g1_nondegenerate(params, settings, DetectedMode::One),
                g1_nondegenerate(params, settings, DetectedMode::Two),
            ],
            g2: [
                g2_nondegenerate(params, settings, ModePair::P11),
                g2_nondegenerate(params, settings, ModePair::P22),
                g2_nondegenerate(params, settings, ModePair::P12),
            ],
        },
        Configuration::Degenerate => {
            let mut bar = *settings;
            bar.modes[0] = bar.modes[0].orthogonal();
            Rates {
                g1: [g1_degenerate(params, settings), g1_degenerate(params, &bar)],
                g2: [
                    g2_degenerate(params, settings, DetectorPair::Same),
                    g2_degenerate(params, &bar, DetectorPair::Same),
                    g2_degenerate(params, settings, DetectorPair::Crossed),
                ],
            }
        }
    }
}

pub fn oracle_rates(oracle: &OracleCorrelator, settings: &DetectorSettings) -> Result<Rates> {
    match oracle.configuration() {
        Configuration::NonDegenerate => Ok(Rates {
            g1: [oracle.g1_mode(settings, DetectedMode::One)?, oracle.g1_mode(settings, DetectedMode::Two)?],
            g2: [
                oracle.g2_pair(settings, ModePair::P11)?,
                oracle.g2_pair(settings, ModePair::P22)?,
                oracle.g2_pair(settings, ModePair::P12)?,
            ],
        }),
        Configuration::Degenerate => {
            let mut bar = *settings;
            bar.modes[0] = bar.modes[0].orthogonal();
            Ok(Rates {
                g1: [oracle.g1_mode(settings, DetectedMode::One)?, oracle.g1_mode(&bar, DetectedMode::One)?],
                g2: [
                    oracle.g2_detectors(settings, DetectorPair::Same)?,
                    oracle.g2_detectors(&bar, DetectorPair::Same)?,
                    oracle.g2_detectors(settings, DetectorPair::Crossed)?,
                ],
            })
        }
    }
}

impl CorrelationReport {
    pub fn closed_form(params: &OpaParams, configuration: Configuration, settings: &DetectorSettings) -> Self {
        let rates = closed_form_rates(params, configuration, settings);
        Self::assemble(params, configuration, settings, Provenance::ClosedForm, rates)
    }

    /// Rates from the oracle. Visibility and s/n are taken from the oracle at
    /// the two fringe extremes, the fringe difference from the oracle G(1).
    pub fn oracle(
        params: &OpaParams,
        configuration: Configuration,
        settings: &DetectorSettings,
        policy: &CutoffPolicy,
    ) -> Result<Self> {
        let oracle = OracleCorrelator::injected(configuration, params, policy)?;
        let rates = oracle_rates(&oracle, settings)?;
        let mut report = Self::assemble(params, configuration, settings, Provenance::Oracle, rates);
        let mode = reported_mode(configuration);
        let j = match mode {
            DetectedMode::One => 0,
            DetectedMode::Two => 1,
        };
        let bright = DetectorSettings::aligned(params.phase_phi());
        let mut dark = bright;
        for m in &mut dark.modes {
            *m = m.orthogonal();
        }
        let hi = oracle.g1_mode(&bright, mode)?;
        let lo = oracle.g1_mode(&dark, mode)?;
        report.visibility = (hi + lo > 0.0).then(|| (hi - lo) / (hi + lo));
        let n = params.mean_photons();
        report.signal_to_noise = (n > 0.0).then(|| hi / n);
        let mut turned = *settings;
        turned.modes[j] = turned.modes[j].orthogonal();
        report.fringe_difference = oracle.g1_mode(settings, mode)? - oracle.g1_mode(&turned, mode)?;
        Ok(report)
    }

    fn assemble(
        params: &OpaParams,
        configuration: Configuration,
        settings: &DetectorSettings,
        provenance: Provenance,
        rates: Rates,
    ) -> Self {
        let mode = reported_mode(configuration);
        let g2_12 = match configuration {
            Configuration::NonDegenerate => g2_nondegenerate_printed(params, settings, ModePair::P12),
            Configuration::Degenerate => rates.g2[2],
        };
        Self {
            configuration,
            gain: params.gain(),
            phi: params.phase_phi(),
            mean_photons: params.mean_photons(),
            settings: *settings,
            provenance,
            rates,
            normalized: if params.mean_photons() > 0.0 { CauchySchwarz::from_rates(rates.g1, rates.g2) } else { None },
            visibility: visibility(params, configuration, mode),
            signal_to_noise: signal_to_noise(params, configuration, mode),
            fringe_difference: fringe_difference(params, configuration, settings, mode),
            printed: PrintedForms {
                g2_12,
                fringe_difference: fringe_difference_printed(params, configuration, settings, mode),
            },
        }
    }
}

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::CorrelationReport;
use super::settings::DetectorSettings;
use crate::error::{QiopaError, Result};
use crate::opa::{derive_params, Configuration, OpaParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVar {
    #[serde(rename = "phi1")]
    Phi1,
    #[serde(rename = "phi2")]
    Phi2,
    #[serde(rename = "psi1")]
    Psi1,
    #[serde(rename = "psi2")]
    Psi2,
    /// Injection phase Φ.
    #[serde(rename = "Phi")]
    InjectionPhase,
    #[serde(rename = "g")]
    Gain,
}

impl SweepVar {
    pub fn is_angle(self) -> bool {
        self != SweepVar::Gain
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVar::Phi1 => "phi1",
            SweepVar::Phi2 => "phi2",
            SweepVar::Psi1 => "psi1",
            SweepVar::Psi2 => "psi2",
            SweepVar::InjectionPhase => "Phi",
            SweepVar::Gain => "g",
        })
    }
}

impl FromStr for SweepVar {
    type Err = QiopaError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi1" => SweepVar::Phi1,
            "phi2" => SweepVar::Phi2,
            "psi1" => SweepVar::Psi1,
            "psi2" => SweepVar::Psi2,
            "Phi" => SweepVar::InjectionPhase,
            "g" | "gain" => SweepVar::Gain,
            _ => return Err(QiopaError::InvalidInput(format!("unknown sweep variable '{s}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.count == 0 || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(QiopaError::InvalidInput("sweep needs finite bounds and at least one point".into()));
        }
        if self.count == 1 {
            return Ok(vec![self.start]);
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect())
    }
}

/// Closed-form report at every sweep value, in sweep order.
pub fn run_sweep(
    params: &OpaParams,
    configuration: Configuration,
    settings: &DetectorSettings,
    spec: &SweepSpec,
) -> Result<Vec<(f64, CorrelationReport)>> {
    let values = spec.values()?;
    values
        .par_iter()
        .map(|&v| {
            let (p, s) = point(params, settings, spec.var, v)?;
            Ok((v, CorrelationReport::closed_form(&p, configuration, &s)))
        })
        .collect()
}

fn point(params: &OpaParams, settings: &DetectorSettings, var: SweepVar, v: f64) -> Result<(OpaParams, DetectorSettings)> {
    let mut s = *settings;
    let mut p = *params;
    match var {
        SweepVar::Phi1 => s.modes[0].rotator_angle = v,
        SweepVar::Phi2 => s.modes[1].rotator_angle = v,
        SweepVar::Psi1 => s.modes[0].psi_alpha = s.modes[0].psi_beta + v,
        SweepVar::Psi2 => s.modes[1].psi_alpha = s.modes[1].psi_beta + v,
        SweepVar::InjectionPhase => p = params.with_phase(v)?,
        SweepVar::Gain => p = derive_params(v, params.phase_phi())?,
    }
    Ok((p, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fringe_column_follows_rotator() {
        let p = derive_params(crate::opa::gain_for_mean_photons(1.0).unwrap(), 0.0).unwrap();
        let spec = SweepSpec { var: SweepVar::Phi2, start: 0.0, stop: PI, count: 37 };
        let rows = run_sweep(&p, Configuration::NonDegenerate, &DetectorSettings::default(), &spec).unwrap();
        assert_eq!(rows.len(), 37);
        for (v, r) in rows {
            assert!((r.fringe_difference - (2.0 * v).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn shift_sweep_sets_the_difference() {
        let p = derive_params(0.4, 0.0).unwrap();
        let mut s = DetectorSettings::default();
        s.modes[0].psi_beta = 0.7;
        let spec = SweepSpec { var: SweepVar::Psi1, start: 0.0, stop: 1.0, count: 3 };
        let rows = run_sweep(&p, Configuration::NonDegenerate, &s, &spec).unwrap();
        for (v, r) in rows {
            assert!((r.settings.modes[0].shift() - v).abs() < 1e-15);
        }
    }

    #[test]
    fn names_round_trip() {
        for v in [SweepVar::Phi1, SweepVar::Phi2, SweepVar::Psi1, SweepVar::Psi2, SweepVar::InjectionPhase, SweepVar::Gain] {
            assert_eq!(v.to_string().parse::<SweepVar>().unwrap(), v);
        }
    }
}

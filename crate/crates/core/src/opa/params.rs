use serde::Serialize;

use crate::error::{QiopaError, Result};

/// Gain g = χt and injection phase Φ, plus the hyperbolic coefficients every
/// closed form is written in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OpaParams {
    gain: f64,
    phase_phi: f64,
    cosh_c: f64,
    sinh_s: f64,
    gamma_ratio: f64,
    mean_photons: f64,
}

impl OpaParams {
    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn phase_phi(&self) -> f64 {
        self.phase_phi
    }

    pub fn cosh_c(&self) -> f64 {
        self.cosh_c
    }

    pub fn sinh_s(&self) -> f64 {
        self.sinh_s
    }

    pub fn gamma_ratio(&self) -> f64 {
        self.gamma_ratio
    }

    pub fn mean_photons(&self) -> f64 {
        self.mean_photons
    }

    pub fn with_phase(&self, phase_phi: f64) -> Result<Self> {
        derive_params(self.gain, phase_phi)
    }
}

pub fn derive_params(gain: f64, phase_phi: f64) -> Result<OpaParams> {
    if !gain.is_finite() || gain < 0.0 {
        return Err(QiopaError::InvalidParameter(format!(
            "gain must be finite and non-negative, got {gain}"
        )));
    }
    if !phase_phi.is_finite() {
        return Err(QiopaError::InvalidParameter(format!(
            "phase must be finite, got {phase_phi}"
        )));
    }
    let cosh_c = gain.cosh();
    let sinh_s = gain.sinh();
    Ok(OpaParams {
        gain,
        phase_phi,
        cosh_c,
        sinh_s,
        gamma_ratio: gain.tanh(),
        mean_photons: sinh_s * sinh_s,
    })
}

/// Gain at which the squeezed vacuum carries `mean_photons` per mode.
pub fn gain_for_mean_photons(mean_photons: f64) -> Result<f64> {
    if !mean_photons.is_finite() || mean_photons < 0.0 {
        return Err(QiopaError::InvalidParameter(format!(
            "mean photon number must be finite and non-negative, got {mean_photons}"
        )));
    }
    Ok(mean_photons.sqrt().asinh())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalDistribution {
    pub weights: Vec<f64>,
    /// Probability mass beyond `n_max`, i.e. Γ^(2(n_max+1)).
    pub tail_bound: f64,
}

pub fn thermal_weights(params: &OpaParams, n_max: usize) -> ThermalDistribution {
    let g2 = params.gamma_ratio * params.gamma_ratio;
    let mut weights = Vec::with_capacity(n_max + 1);
    let mut p = 1.0 / (params.cosh_c * params.cosh_c);
    for _ in 0..=n_max {
        weights.push(p);
        p *= g2;
    }
    ThermalDistribution {
        weights,
        tail_bound: g2.powi(n_max as i32 + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn zero_gain_is_identity() {
        let p = derive_params(0.0, 0.0).unwrap();
        assert_eq!(p.cosh_c(), 1.0);
        assert_eq!(p.sinh_s(), 0.0);
        assert_eq!(p.gamma_ratio(), 0.0);
        assert_eq!(p.mean_photons(), 0.0);
    }

    #[test]
    fn plotting_gain_coefficients() {
        // exp(±2.5) evaluated independently
        let e = 12.182493960703473_f64;
        let p = derive_params(2.5, 0.0).unwrap();
        assert_relative_eq!(p.cosh_c(), (e + 1.0 / e) / 2.0, max_relative = 1e-13);
        assert_relative_eq!(p.sinh_s(), (e - 1.0 / e) / 2.0, max_relative = 1e-13);
        assert_relative_eq!(p.mean_photons(), 36.604974262393924, max_relative = 1e-12);
    }

    #[test]
    fn unit_mean_photons() {
        let g = gain_for_mean_photons(1.0).unwrap();
        assert_relative_eq!(g, (1.0 + 2f64.sqrt()).ln(), max_relative = 1e-14);
        let p = derive_params(g, 0.0).unwrap();
        let t = thermal_weights(&p, 6);
        for (n, w) in t.weights.iter().enumerate() {
            assert_relative_eq!(*w, 0.5f64.powi(n as i32 + 1), max_relative = 1e-12);
        }
        assert_relative_eq!(t.tail_bound, 0.5f64.powi(7), max_relative = 1e-12);
    }

    #[test]
    fn zero_gain_weights() {
        let p = derive_params(0.0, 1.0).unwrap();
        let t = thermal_weights(&p, 3);
        assert_eq!(t.weights, vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(t.tail_bound, 0.0);
    }

    #[test]
    fn rejects_bad_gain() {
        assert!(derive_params(-0.1, 0.0).is_err());
        assert!(derive_params(f64::NAN, 0.0).is_err());
        assert!(derive_params(f64::INFINITY, 0.0).is_err());
        assert!(derive_params(0.1, f64::NAN).is_err());
        assert!(gain_for_mean_photons(-1.0).is_err());
    }

    proptest! {
        #[test]
        fn hyperbolic_identity(g in 0.0f64..6.0, phi in -10.0f64..10.0) {
            let p = derive_params(g, phi).unwrap();
            let c2 = p.cosh_c() * p.cosh_c();
            let s2 = p.sinh_s() * p.sinh_s();
            prop_assert!(((c2 - s2) - 1.0).abs() <= 1e-12 * c2);
            prop_assert!(p.gamma_ratio() >= 0.0 && p.gamma_ratio() < 1.0);
            prop_assert_eq!(p.gamma_ratio() == 0.0, g == 0.0);
            prop_assert_eq!(p.mean_photons(), s2);
        }

        #[test]
        fn thermal_matches_closed_forms(g in 0.0f64..3.0, n_max in 0usize..80) {
            let p = derive_params(g, 0.0).unwrap();
            let t = thermal_weights(&p, n_max);
            let nbar = p.mean_photons();
            let mut sum = 0.0;
            for (n, w) in t.weights.iter().enumerate() {
                let bose = nbar.powi(n as i32) / (1.0 + nbar).powi(n as i32 + 1);
                prop_assert!((w - bose).abs() <= 1e-12 * bose.max(1e-300) + 1e-300);
                sum += w;
            }
            prop_assert!((sum - (1.0 - t.tail_bound)).abs() < 1e-12);
        }
    }
}

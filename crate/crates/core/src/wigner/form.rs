//! The closed form as a Gaussian times a quadratic in the real squeezed
//! coordinates u:  W = −K e^{−|u|²} [1 − |l·u|²].
//! Marginals follow from ∫e^{−x²}dx = √π and ⟨x²⟩ = ½.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::closed_form::{WignerParts, WignerValue};
use super::coords::{jacobian, real_dimension, SqueezedAxis};
use crate::error::{QiopaError, Result};
use crate::opa::{Configuration, OpaParams};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianQuadratic {
    pub configuration: Configuration,
    /// −K is the value at the origin.
    pub k: f64,
    /// du = J d(phase-space volume)
    pub jacobian: f64,
    pub l: Vec<Complex64>,
}

impl GaussianQuadratic {
    pub fn new(params: &OpaParams, configuration: Configuration) -> Self {
        let (a, b) = branch_vectors(params, configuration);
        let k = match configuration {
            Configuration::NonDegenerate => 16.0 / PI.powi(4),
            Configuration::Degenerate => 4.0 / (PI * PI),
        };
        let l = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Self { configuration, k, jacobian: jacobian(configuration), l }
    }

    pub fn dimension(&self) -> usize {
        self.l.len()
    }

    pub fn value(&self, u: &[f64]) -> f64 {
        let r: f64 = u.iter().map(|x| x * x).sum();
        let q: Complex64 = self.l.iter().zip(u).map(|(l, x)| l * x).sum();
        -self.k * (-r).exp() * (1.0 - q.norm_sqr())
    }

    /// Real symmetric matrix A with |l·u|² = uᵀAu.
    pub fn quadratic_matrix(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dimension();
        nalgebra::DMatrix::from_fn(n, n, |r, c| (self.l[r].conj() * self.l[c]).re)
    }

    /// Integrates out every axis not in `kept`; `integrated` must be the
    /// complement.
    pub fn marginal(&self, kept: &[SqueezedAxis], integrated: &[SqueezedAxis]) -> Result<Marginal> {
        let n = self.dimension();
        let mut seen = BTreeSet::new();
        let resolve = |a: &SqueezedAxis| -> Result<(usize, f64)> {
            let (i, s) = a.resolve(self.configuration);
            if i >= n {
                return Err(QiopaError::InvalidPartition(format!("axis {a} not in this phase space")));
            }
            Ok((i, s))
        };
        let kept: Vec<(usize, f64)> = kept.iter().map(resolve).collect::<Result<_>>()?;
        let dropped: Vec<(usize, f64)> = integrated.iter().map(resolve).collect::<Result<_>>()?;
        for &(i, _) in kept.iter().chain(&dropped) {
            if !seen.insert(i) {
                return Err(QiopaError::InvalidPartition(format!("coordinate {i} listed twice")));
            }
        }
        if seen.len() != n {
            return Err(QiopaError::InvalidPartition(format!(
                "{} of {n} coordinates covered",
                seen.len()
            )));
        }
        let offset = 0.5 * dropped.iter().map(|&(i, _)| self.l[i].norm_sqr()).sum::<f64>();
        Ok(Marginal {
            prefactor: self.k / self.jacobian * PI.powf(dropped.len() as f64 / 2.0),
            l: kept.iter().map(|&(i, s)| self.l[i] * s).collect(),
            offset,
        })
    }
}

/// Coefficient vectors of e^{iΦ}Δ_A and Δ_B over u, so that
/// e^{iΦ}Δ_A + Δ_B = (a + b)·u.
pub fn branch_vectors(params: &OpaParams, configuration: Configuration) -> (Vec<Complex64>, Vec<Complex64>) {
    let h = FRAC_1_SQRT_2;
    let e = Complex64::from_polar(h, params.phase_phi());
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::default();
    // Δ = (γ+ − iγ−)/√2 = (u₀ + iu₁ − iu₂ + u₃)/√2
    let shape = [one, i, -i, one];
    match configuration {
        Configuration::NonDegenerate => (
            shape.iter().map(|&s| e * s).chain([zero; 4]).collect(),
            [zero; 4].into_iter().chain(shape.iter().map(|&s| s * h)).collect(),
        ),
        // γB± = (γA±)*: Δ_B = (u₀ − iu₁ − iu₂ − u₃)/√2
        Configuration::Degenerate => (
            shape.iter().map(|&s| e * s).collect(),
            [one, -i, -i, -one].iter().map(|&s| s * h).collect(),
        ),
    }
}

/// Density over the kept squeezed coordinates:
/// −P e^{−|x|²} [1 − |l·x|² − c].
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal {
    pub prefactor: f64,
    pub l: Vec<Complex64>,
    pub offset: f64,
}

impl Marginal {
    pub fn eval(&self, x: &[f64]) -> WignerValue {
        let r: f64 = x.iter().map(|v| v * v).sum();
        let q: Complex64 = self.l.iter().zip(x).map(|(l, v)| l * v).sum();
        WignerParts {
            vacuum_envelope_a: self.prefactor * (-r).exp(),
            vacuum_envelope_b: 1.0,
            superposition_modulus_sq: q.norm_sqr() + self.offset,
        }
        .into()
    }

    /// Total integral, only meaningful with nothing kept.
    pub fn total(&self) -> f64 {
        self.eval(&[]).value
    }
}

pub fn complement(configuration: Configuration, kept: &[SqueezedAxis]) -> Vec<SqueezedAxis> {
    let used: BTreeSet<usize> = kept.iter().map(|a| a.resolve(configuration).0).collect();
    SqueezedAxis::all(configuration)
        .into_iter()
        .filter(|a| !used.contains(&a.resolve(configuration).0))
        .collect()
}

pub fn check_dimension(configuration: Configuration, u: &[f64]) -> Result<()> {
    let n = real_dimension(configuration);
    if u.len() != n {
        return Err(QiopaError::DimensionMismatch { expected: n, found: u.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opa::derive_params;
    use crate::wigner::closed_form::wigner_closed_form;
    use crate::wigner::coords::{phase_point_from_real, GammaVar, Part};
    use proptest::prelude::*;

    #[test]
    fn everything_integrated_is_one() {
        for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
            for phi in [0.0, 1.0, PI] {
                let f = GaussianQuadratic::new(&derive_params(0.7, phi).unwrap(), cfg);
                let m = f.marginal(&[], &SqueezedAxis::all(cfg)).unwrap();
                assert!((m.total() - 1.0).abs() < 1e-14, "{cfg} {phi}");
            }
        }
    }

    #[test]
    fn bad_partitions() {
        let cfg = Configuration::NonDegenerate;
        let f = GaussianQuadratic::new(&derive_params(0.7, 0.0).unwrap(), cfg);
        let x = SqueezedAxis::new(GammaVar::APlus, Part::Re);
        assert!(f.marginal(&[x], &[]).is_err());
        assert!(f.marginal(&[x], &SqueezedAxis::all(cfg)).is_err());
        let deg = GaussianQuadratic::new(&derive_params(0.7, 0.0).unwrap(), Configuration::Degenerate);
        // Re γB+ is Re γA+ in the collinear case
        let y = SqueezedAxis::new(GammaVar::BPlus, Part::Re);
        let rest = complement(Configuration::Degenerate, &[x]);
        assert!(deg.marginal(&[x, y], &rest).is_err());
    }

    #[test]
    fn beta_marginal_keeps_delta_a_structure() {
        // integrating the B block at Φ = 0 leaves −(K/J)π² e^{−|u_A|²}[1 − |Δ_A|² − ⟨|Δ_B|²⟩]
        let cfg = Configuration::NonDegenerate;
        let f = GaussianQuadratic::new(&derive_params(1.0, 0.0).unwrap(), cfg);
        let all = SqueezedAxis::all(cfg);
        let m = f.marginal(&all[..4], &all[4..]).unwrap();
        assert!((m.offset - 1.0).abs() < 1e-15);
        let w = m.eval(&[0.0; 4]);
        assert!((w.value - 0.0).abs() < 1e-16);
        let w = m.eval(&[0.5, 0.0, 0.0, 0.0]);
        let expect = -(16.0 / PI.powi(4)) / 16.0 * PI * PI * (-0.25f64).exp() * (1.0 - 0.125 - 1.0);
        assert!((w.value - expect).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn form_matches_closed_form(g in 0.0f64..3.0, phi in -4.0f64..4.0, v in proptest::collection::vec(-2.0f64..2.0, 8)) {
            let p = derive_params(g, phi).unwrap();
            for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
                let u = &v[..2 * cfg.mode_count()];
                let f = GaussianQuadratic::new(&p, cfg);
                let pt = phase_point_from_real(&p, cfg, u).unwrap();
                let w = wigner_closed_form(&p, &pt).value;
                prop_assert!((f.value(u) - w).abs() < 1e-12 * (1.0 + w.abs()), "{} vs {}", f.value(u), w);
            }
        }
    }
}

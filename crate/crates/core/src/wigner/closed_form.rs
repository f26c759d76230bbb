use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::coords::{squeezed_coords, PhasePoint, SqueezedCoords};
use crate::opa::{Configuration, OpaParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerParts {
    pub vacuum_envelope_a: f64,
    pub vacuum_envelope_b: f64,
    pub superposition_modulus_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerValue {
    pub value: f64,
    pub parts: WignerParts,
}

impl WignerParts {
    pub fn assemble(&self) -> f64 {
        -self.vacuum_envelope_a * self.vacuum_envelope_b * (1.0 - self.superposition_modulus_sq)
    }
}

impl From<WignerParts> for WignerValue {
    fn from(parts: WignerParts) -> Self {
        Self { value: parts.assemble(), parts }
    }
}

/// Extra factor the degenerate closed form carries relative to the
/// two-amplifier one (π²/4).
pub fn closed_form_scale(configuration: Configuration) -> f64 {
    match configuration {
        Configuration::NonDegenerate => 1.0,
        Configuration::Degenerate => PI * PI / 4.0,
    }
}

/// Value at the squeezed-coordinate origin, the global minimum:
/// −16/π⁴ times [`closed_form_scale`].
pub fn origin_value(configuration: Configuration) -> f64 {
    -16.0 / PI.powi(4) * closed_form_scale(configuration)
}

pub fn delta_a(c: &SqueezedCoords) -> Complex64 {
    (c.gamma_a_plus - I * c.gamma_a_minus) * FRAC_1_SQRT_2
}

pub fn delta_b(c: &SqueezedCoords) -> Complex64 {
    (c.gamma_b_plus - I * c.gamma_b_minus) * FRAC_1_SQRT_2
}

fn superposition_sq(phi: f64, c: &SqueezedCoords) -> f64 {
    (Complex64::from_polar(1.0, phi) * delta_a(c) + delta_b(c)).norm_sqr()
}

fn radius_a(c: &SqueezedCoords) -> f64 {
    c.gamma_a_plus.norm_sqr() + c.gamma_a_minus.norm_sqr()
}

fn radius_b(c: &SqueezedCoords) -> f64 {
    c.gamma_b_plus.norm_sqr() + c.gamma_b_minus.norm_sqr()
}

/// −W̄_A W̄_B [1 − |e^{iΦ}Δ_A + Δ_B|²].
///
/// Two amplifiers: W̄ = (4/π²) exp(−(|γ+|² + |γ−|²)) per pair. Collinear
/// amplifier: both pairs are built from the same (α, β), with γB± = (γA±)*,
/// and each envelope is (2/π) exp(−½(|γ+|² + |γ−|²)); this is π²/4 times the
/// two-amplifier expression with the exponent shared between the pairs.
pub fn wigner_closed_form(params: &OpaParams, point: &PhasePoint) -> WignerValue {
    let c = squeezed_coords(params, point);
    wigner_from_squeezed(params, point.configuration(), &c)
}

pub fn wigner_from_squeezed(params: &OpaParams, configuration: Configuration, c: &SqueezedCoords) -> WignerValue {
    let sup = superposition_sq(params.phase_phi(), c);
    let parts = match configuration {
        Configuration::NonDegenerate => {
            let k = 4.0 / (PI * PI);
            WignerParts {
                vacuum_envelope_a: k * (-radius_a(c)).exp(),
                vacuum_envelope_b: k * (-radius_b(c)).exp(),
                superposition_modulus_sq: sup,
            }
        }
        Configuration::Degenerate => WignerParts {
            vacuum_envelope_a: FRAC_2_PI * (-0.5 * radius_a(c)).exp(),
            vacuum_envelope_b: FRAC_2_PI * (-0.5 * radius_b(c)).exp(),
            superposition_modulus_sq: sup,
        },
    };
    parts.into()
}

/// The collinear expression taken literally: π²/4 times the two-amplifier
/// form evaluated with the collinear squeezed variables. Its envelope decays
/// twice as fast as the state's and it integrates to zero; kept for
/// comparison only.
pub fn wigner_degenerate_printed(params: &OpaParams, alpha: Complex64, beta: Complex64) -> WignerValue {
    let c = squeezed_coords(params, &PhasePoint::Degenerate { alpha, beta });
    let k = 4.0 / (PI * PI);
    let parts = WignerParts {
        vacuum_envelope_a: PI * PI / 4.0 * k * (-radius_a(&c)).exp(),
        vacuum_envelope_b: k * (-radius_b(&c)).exp(),
        superposition_modulus_sq: superposition_sq(params.phase_phi(), &c),
    };
    parts.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opa::derive_params;
    use crate::wigner::coords::{coords_from_real, phase_point_from_squeezed};
    use proptest::prelude::*;

    #[test]
    fn origin_is_minus_sixteen_over_pi4() {
        for phi in [0.0, 1.0, PI] {
            let p = derive_params(0.9, phi).unwrap();
            let w = wigner_closed_form(&p, &PhasePoint::origin(Configuration::NonDegenerate));
            assert!((w.value + 16.0 / PI.powi(4)).abs() < 1e-16);
            let w = wigner_closed_form(&p, &PhasePoint::origin(Configuration::Degenerate));
            assert!((w.value - origin_value(Configuration::Degenerate)).abs() < 1e-16);
            assert!((w.value + 4.0 / (PI * PI)).abs() < 1e-16);
        }
    }

    #[test]
    fn nodal_surface() {
        // u₀ = √2 alone gives Δ_A = 1, Δ_B = 0
        let p = derive_params(1.2, 0.0).unwrap();
        let c = coords_from_real(Configuration::NonDegenerate, &[2f64.sqrt(), 0., 0., 0., 0., 0., 0., 0.]).unwrap();
        let w = wigner_from_squeezed(&p, Configuration::NonDegenerate, &c);
        assert!((w.parts.superposition_modulus_sq - 1.0).abs() < 1e-15);
        assert!(w.value.abs() < 1e-16);
    }

    #[test]
    fn gaussian_decay() {
        let p = derive_params(2.5, 0.3).unwrap();
        for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
            let mut u = vec![0.0; 2 * cfg.mode_count()];
            u[0] = 6.0;
            u[3] = -6.5;
            let c = coords_from_real(cfg, &u).unwrap();
            let w = wigner_from_squeezed(&p, cfg, &c);
            assert!(w.value.abs() < 1e-14, "{cfg}: {}", w.value);
        }
    }

    #[test]
    fn printed_collinear_form_differs() {
        let p = derive_params(0.5, 0.0).unwrap();
        let a = Complex64::new(0.3, 0.1);
        let b = Complex64::new(-0.2, 0.4);
        let lit = wigner_degenerate_printed(&p, a, b);
        let cor = wigner_closed_form(&p, &PhasePoint::Degenerate { alpha: a, beta: b });
        assert!((lit.value - cor.value).abs() > 1e-3);
        // both agree at the origin
        let o = Complex64::default();
        let lit = wigner_degenerate_printed(&p, o, o).value;
        let cor = wigner_closed_form(&p, &PhasePoint::origin(Configuration::Degenerate)).value;
        assert!((lit - cor).abs() < 1e-16);
    }

    proptest! {
        #[test]
        fn reassembly_identity(g in 0.0f64..3.0, phi in -4.0f64..4.0, v in proptest::collection::vec(-2.5f64..2.5, 8)) {
            let p = derive_params(g, phi).unwrap();
            for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
                let c = coords_from_real(cfg, &v[..2 * cfg.mode_count()]).unwrap();
                let pt = phase_point_from_squeezed(&p, cfg, &c);
                let w = wigner_closed_form(&p, &pt);
                prop_assert!((w.value - w.parts.assemble()).abs() <= 1e-14);
                prop_assert!(w.value.is_finite());
            }
        }

        // W(Φ; Δ_A, Δ_B) = W(0; e^{iΦ}Δ_A, Δ_B): rotate the A block of γ by Φ
        #[test]
        fn phase_enters_through_rotated_delta_a(g in 0.0f64..2.5, phi in -4.0f64..4.0, v in proptest::collection::vec(-2.0f64..2.0, 8)) {
            let cfg = Configuration::NonDegenerate;
            let c = coords_from_real(cfg, &v).unwrap();
            let rot = Complex64::from_polar(1.0, phi);
            let c_rot = SqueezedCoords {
                gamma_a_plus: c.gamma_a_plus * rot,
                gamma_a_minus: c.gamma_a_minus * rot,
                ..c
            };
            let w1 = wigner_from_squeezed(&derive_params(g, phi).unwrap(), cfg, &c);
            let w0 = wigner_from_squeezed(&derive_params(g, 0.0).unwrap(), cfg, &c_rot);
            prop_assert!((w1.value - w0.value).abs() < 1e-14);
        }
    }
}

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QiopaError, Result};
use crate::opa::{Configuration, OpaParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Phase-space point. α variables belong to the modes squeezed by OPA_A
/// (α₁ ↔ 1⊥, α₂ ↔ 2∥), β to OPA_B (β₁ ↔ 1∥, β₂ ↔ 2⊥). In the collinear
/// configuration α ↔ 1⊥ and β ↔ 1∥.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PhasePoint {
    NonDegenerate { alpha: [Complex64; 2], beta: [Complex64; 2] },
    Degenerate { alpha: Complex64, beta: Complex64 },
}

impl PhasePoint {
    pub fn origin(configuration: Configuration) -> Self {
        let z = Complex64::default();
        match configuration {
            Configuration::NonDegenerate => PhasePoint::NonDegenerate { alpha: [z; 2], beta: [z; 2] },
            Configuration::Degenerate => PhasePoint::Degenerate { alpha: z, beta: z },
        }
    }

    pub fn configuration(&self) -> Configuration {
        match self {
            PhasePoint::NonDegenerate { .. } => Configuration::NonDegenerate,
            PhasePoint::Degenerate { .. } => Configuration::Degenerate,
        }
    }

    /// Displacements in register mode order (1⊥, 1∥, 2⊥, 2∥) or (1⊥, 1∥).
    pub fn mode_amplitudes(&self) -> Vec<Complex64> {
        match *self {
            PhasePoint::NonDegenerate { alpha, beta } => vec![alpha[0], beta[0], beta[1], alpha[1]],
            PhasePoint::Degenerate { alpha, beta } => vec![alpha, beta],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.mode_amplitudes().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezedCoords {
    pub gamma_a_plus: Complex64,
    pub gamma_a_minus: Complex64,
    pub gamma_b_plus: Complex64,
    pub gamma_b_minus: Complex64,
}

fn plus_minus(x: Complex64, y_conj: Complex64, g: f64) -> (Complex64, Complex64) {
    ((x + y_conj) * (-g).exp(), I * (x - y_conj) * g.exp())
}

// inverse of plus_minus: (x, y*)
fn unsqueeze(plus: Complex64, minus: Complex64, g: f64) -> (Complex64, Complex64) {
    let p = plus * g.exp();
    let m = I * minus * (-g).exp();
    ((p - m) * 0.5, (p + m) * 0.5)
}

pub fn squeezed_coords(params: &OpaParams, point: &PhasePoint) -> SqueezedCoords {
    let g = params.gain();
    match *point {
        PhasePoint::NonDegenerate { alpha, beta } => {
            let (ap, am) = plus_minus(alpha[0], alpha[1].conj(), g);
            let (bp, bm) = plus_minus(beta[0], beta[1].conj(), g);
            SqueezedCoords { gamma_a_plus: ap, gamma_a_minus: am, gamma_b_plus: bp, gamma_b_minus: bm }
        }
        PhasePoint::Degenerate { alpha, beta } => {
            let (ap, am) = plus_minus(alpha, beta.conj(), g);
            let (bp, bm) = plus_minus(beta, alpha.conj(), g);
            SqueezedCoords { gamma_a_plus: ap, gamma_a_minus: am, gamma_b_plus: bp, gamma_b_minus: bm }
        }
    }
}

/// Inverse map. For the degenerate configuration only the A pair is used;
/// the B pair is its complex conjugate by construction.
pub fn phase_point_from_squeezed(params: &OpaParams, configuration: Configuration, c: &SqueezedCoords) -> PhasePoint {
    let g = params.gain();
    let (a1, a2c) = unsqueeze(c.gamma_a_plus, c.gamma_a_minus, g);
    match configuration {
        Configuration::NonDegenerate => {
            let (b1, b2c) = unsqueeze(c.gamma_b_plus, c.gamma_b_minus, g);
            PhasePoint::NonDegenerate { alpha: [a1, a2c.conj()], beta: [b1, b2c.conj()] }
        }
        Configuration::Degenerate => PhasePoint::Degenerate { alpha: a1, beta: a2c.conj() },
    }
}

/// Number of independent real squeezed coordinates.
pub fn real_dimension(configuration: Configuration) -> usize {
    2 * configuration.mode_count()
}

/// |∂u/∂(Re, Im of the mode amplitudes)|: 4 per squeezed pair.
pub fn jacobian(configuration: Configuration) -> f64 {
    match configuration {
        Configuration::NonDegenerate => 16.0,
        Configuration::Degenerate => 4.0,
    }
}

/// Real coordinates u: (Re γA+, Im γA+, Re γA−, Im γA−[, Re γB+, Im γB+,
/// Re γB−, Im γB−]). The degenerate case keeps the A block only.
pub fn real_coords(configuration: Configuration, c: &SqueezedCoords) -> Vec<f64> {
    let mut u = vec![c.gamma_a_plus.re, c.gamma_a_plus.im, c.gamma_a_minus.re, c.gamma_a_minus.im];
    if configuration == Configuration::NonDegenerate {
        u.extend([c.gamma_b_plus.re, c.gamma_b_plus.im, c.gamma_b_minus.re, c.gamma_b_minus.im]);
    }
    u
}

pub fn coords_from_real(configuration: Configuration, u: &[f64]) -> Result<SqueezedCoords> {
    let n = real_dimension(configuration);
    if u.len() != n {
        return Err(QiopaError::DimensionMismatch { expected: n, found: u.len() });
    }
    let ap = Complex64::new(u[0], u[1]);
    let am = Complex64::new(u[2], u[3]);
    Ok(match configuration {
        Configuration::NonDegenerate => SqueezedCoords {
            gamma_a_plus: ap,
            gamma_a_minus: am,
            gamma_b_plus: Complex64::new(u[4], u[5]),
            gamma_b_minus: Complex64::new(u[6], u[7]),
        },
        Configuration::Degenerate => SqueezedCoords {
            gamma_a_plus: ap,
            gamma_a_minus: am,
            gamma_b_plus: ap.conj(),
            gamma_b_minus: am.conj(),
        },
    })
}

pub fn phase_point_from_real(params: &OpaParams, configuration: Configuration, u: &[f64]) -> Result<PhasePoint> {
    let c = coords_from_real(configuration, u)?;
    Ok(phase_point_from_squeezed(params, configuration, &c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GammaVar {
    APlus,
    AMinus,
    BPlus,
    BMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    Re,
    Im,
}

/// One real squeezed coordinate, e.g. Im γB−.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SqueezedAxis {
    pub var: GammaVar,
    pub part: Part,
}

impl SqueezedAxis {
    pub const fn new(var: GammaVar, part: Part) -> Self {
        Self { var, part }
    }

    /// Index into the real coordinates and the sign relating the two. In the
    /// degenerate case γB± = (γA±)*, so Im γB± maps to −Im γA±.
    pub fn resolve(&self, configuration: Configuration) -> (usize, f64) {
        let block = match self.var {
            GammaVar::APlus => 0,
            GammaVar::AMinus => 2,
            GammaVar::BPlus => 4,
            GammaVar::BMinus => 6,
        };
        let off = match self.part {
            Part::Re => 0,
            Part::Im => 1,
        };
        match configuration {
            Configuration::NonDegenerate => (block + off, 1.0),
            Configuration::Degenerate => {
                let sign = if block >= 4 && off == 1 { -1.0 } else { 1.0 };
                (block % 4 + off, sign)
            }
        }
    }

    pub fn all(configuration: Configuration) -> Vec<SqueezedAxis> {
        let vars: &[GammaVar] = match configuration {
            Configuration::NonDegenerate => &[GammaVar::APlus, GammaVar::AMinus, GammaVar::BPlus, GammaVar::BMinus],
            Configuration::Degenerate => &[GammaVar::APlus, GammaVar::AMinus],
        };
        vars.iter()
            .flat_map(|&v| [SqueezedAxis::new(v, Part::Re), SqueezedAxis::new(v, Part::Im)])
            .collect()
    }
}

impl fmt::Display for SqueezedAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = match self.part {
            Part::Re => "re",
            Part::Im => "im",
        };
        let var = match self.var {
            GammaVar::APlus => "gamma_a_plus",
            GammaVar::AMinus => "gamma_a_minus",
            GammaVar::BPlus => "gamma_b_plus",
            GammaVar::BMinus => "gamma_b_minus",
        };
        write!(f, "{part}_{var}")
    }
}

impl FromStr for SqueezedAxis {
    type Err = QiopaError;

    fn from_str(s: &str) -> Result<Self> {
        let (part, var) = s
            .split_once('_')
            .ok_or_else(|| QiopaError::InvalidInput(format!("unknown axis '{s}'")))?;
        let part = match part {
            "re" => Part::Re,
            "im" => Part::Im,
            _ => return Err(QiopaError::InvalidInput(format!("unknown axis '{s}'"))),
        };
        let var = match var {
            "gamma_a_plus" => GammaVar::APlus,
            "gamma_a_minus" => GammaVar::AMinus,
            "gamma_b_plus" => GammaVar::BPlus,
            "gamma_b_minus" => GammaVar::BMinus,
            _ => return Err(QiopaError::InvalidInput(format!("unknown axis '{s}'"))),
        };
        Ok(SqueezedAxis { var, part })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opa::derive_params;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn origin_maps_to_zero() {
        let p = derive_params(1.3, 0.0).unwrap();
        for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
            let s = squeezed_coords(&p, &PhasePoint::origin(cfg));
            assert!(real_coords(cfg, &s).iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn zero_gain_unit_alpha() {
        let p = derive_params(0.0, 0.0).unwrap();
        let pt = PhasePoint::NonDegenerate { alpha: [c(1.0, 0.0), c(0.0, 0.0)], beta: [c(0.0, 0.0); 2] };
        let s = squeezed_coords(&p, &pt);
        assert_eq!(s.gamma_a_plus, c(1.0, 0.0));
        assert_eq!(s.gamma_a_minus, c(0.0, 1.0));
    }

    #[test]
    fn degenerate_equal_real_amplitudes() {
        let p = derive_params(0.7, 0.0).unwrap();
        let pt = PhasePoint::Degenerate { alpha: c(0.4, 0.0), beta: c(0.4, 0.0) };
        let s = squeezed_coords(&p, &pt);
        assert_eq!(s.gamma_a_minus, c(0.0, 0.0));
        assert_eq!(s.gamma_b_plus, s.gamma_a_plus.conj());
        assert_eq!(s.gamma_b_minus, s.gamma_a_minus.conj());
    }

    #[test]
    fn axis_names_round_trip() {
        for axis in SqueezedAxis::all(Configuration::NonDegenerate) {
            assert_eq!(axis.to_string().parse::<SqueezedAxis>().unwrap(), axis);
        }
        assert!("re_gamma_c_plus".parse::<SqueezedAxis>().is_err());
    }

    #[test]
    fn degenerate_axes_fold_onto_a_block() {
        let cfg = Configuration::Degenerate;
        assert_eq!(SqueezedAxis::new(GammaVar::BPlus, Part::Re).resolve(cfg), (0, 1.0));
        assert_eq!(SqueezedAxis::new(GammaVar::BMinus, Part::Im).resolve(cfg), (3, -1.0));
        assert_eq!(SqueezedAxis::new(GammaVar::BMinus, Part::Im).resolve(Configuration::NonDegenerate), (7, 1.0));
    }

    proptest! {
        #[test]
        fn map_is_invertible(g in 0.0f64..3.0, v in proptest::collection::vec(-2.0f64..2.0, 8)) {
            let p = derive_params(g, 0.0).unwrap();
            let pt = PhasePoint::NonDegenerate {
                alpha: [c(v[0], v[1]), c(v[2], v[3])],
                beta: [c(v[4], v[5]), c(v[6], v[7])],
            };
            let s = squeezed_coords(&p, &pt);
            let back = phase_point_from_squeezed(&p, Configuration::NonDegenerate, &s);
            let (a, b) = (pt.mode_amplitudes(), back.mode_amplitudes());
            for k in 0..4 {
                prop_assert!((a[k] - b[k]).norm() < 1e-12 * (1.0 + a[k].norm()));
            }

            let pt = PhasePoint::Degenerate { alpha: c(v[0], v[1]), beta: c(v[2], v[3]) };
            let u = real_coords(Configuration::Degenerate, &squeezed_coords(&p, &pt));
            let back = phase_point_from_real(&p, Configuration::Degenerate, &u).unwrap();
            let (a, b) = (pt.mode_amplitudes(), back.mode_amplitudes());
            for k in 0..2 {
                prop_assert!((a[k] - b[k]).norm() < 1e-12 * (1.0 + a[k].norm()));
            }
        }
    }
}

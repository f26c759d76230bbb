use num_complex::Complex64;

use crate::opa::OpaParams;

/// Arguments of the symmetrically ordered characteristic function, conjugate
/// to the α (η) and β (ξ) variables of [`super::PhasePoint`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConjugatePoint {
    NonDegenerate { eta: [Complex64; 2], xi: [Complex64; 2] },
    Degenerate { eta: Complex64, xi: Complex64 },
}

/// χ_S = {1 − ½|e^{iΦ}η₁(t) + ξ₁(t)|²} exp[−½ Σ_j (|η_j(t)|² + |ξ_j(t)|²)].
///
/// Two amplifiers: η_j(t) = η_j C − η_ĵ* S and likewise for ξ. Collinear
/// amplifier: the single pair mixes η with ξ, η(t) = ηC − ξ*S and
/// ξ(t) = ξC − η*S.
pub fn characteristic_function(params: &OpaParams, point: &ConjugatePoint) -> Complex64 {
    let c = params.cosh_c();
    let s = params.sinh_s();
    let e = Complex64::from_polar(1.0, params.phase_phi());
    let (lead_eta, lead_xi, radius) = match *point {
        ConjugatePoint::NonDegenerate { eta, xi } => {
            let et = [eta[0] * c - eta[1].conj() * s, eta[1] * c - eta[0].conj() * s];
            let xt = [xi[0] * c - xi[1].conj() * s, xi[1] * c - xi[0].conj() * s];
            let r: f64 = et.iter().chain(&xt).map(|z| z.norm_sqr()).sum();
            (et[0], xt[0], r)
        }
        ConjugatePoint::Degenerate { eta, xi } => {
            let et = eta * c - xi.conj() * s;
            let xt = xi * c - eta.conj() * s;
            (et, xt, et.norm_sqr() + xt.norm_sqr())
        }
    };
    let bracket = 1.0 - 0.5 * (e * lead_eta + lead_xi).norm_sqr();
    Complex64::new(bracket * (-0.5 * radius).exp(), 0.0)
}

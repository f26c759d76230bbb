use nalgebra::{DMatrix, SymmetricEigen};

use super::closed_form::wigner_closed_form;
use super::coords::{jacobian, phase_point_from_real, real_dimension};
use crate::error::{QiopaError, Result};
use crate::opa::{Configuration, OpaParams};

/// Nodes per real dimension used by [`wigner_normalization`].
pub const DEFAULT_ORDER: usize = 5;

/// The integrand is a Gaussian times a degree-2 polynomial; three nodes
/// integrate degree ≤ 5 exactly.
pub const MIN_ORDER: usize = 3;

/// Gauss–Hermite rule for ∫ f(x) e^{−x²} dx (Golub–Welsch).
pub fn gauss_hermite(order: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = DMatrix::from_fn(order, order, |r, c| {
        if r.abs_diff(c) == 1 {
            (r.max(c) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|k| {
            let v0 = eig.eigenvectors[(0, k)];
            (eig.eigenvalues[k], std::f64::consts::PI.sqrt() * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Tensor-product rule: Σ Π w · f(u), for ∫ f(u) e^{−|u|²} du.
pub fn tensor_quadrature(dimension: usize, order: usize, mut f: impl FnMut(&[f64]) -> f64) -> Result<f64> {
    if order < MIN_ORDER {
        return Err(QiopaError::QuadratureOrder { order, minimum: MIN_ORDER });
    }
    let (x, w) = gauss_hermite(order);
    let mut idx = vec![0usize; dimension];
    let mut u = vec![0.0; dimension];
    let mut total = 0.0;
    loop {
        let mut weight = 1.0;
        for (k, &i) in idx.iter().enumerate() {
            u[k] = x[i];
            weight *= w[i];
        }
        total += weight * f(&u);
        let mut k = 0;
        loop {
            if k == dimension {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < order {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// ∫ W over the whole phase space, d²α = d(Re α) d(Im α) per mode.
pub fn wigner_normalization(params: &OpaParams, configuration: Configuration) -> Result<f64> {
    wigner_normalization_with_order(params, configuration, DEFAULT_ORDER)
}

pub fn wigner_normalization_with_order(params: &OpaParams, configuration: Configuration, order: usize) -> Result<f64> {
    let n = real_dimension(configuration);
    let total = tensor_quadrature(n, order, |u| {
        let r: f64 = u.iter().map(|x| x * x).sum();
        let pt = phase_point_from_real(params, configuration, u).expect("dimension fixed above");
        wigner_closed_form(params, &pt).value * r.exp()
    })?;
    Ok(total / jacobian(configuration))
}

/// ∫ W̄_A over the α variables of the two-amplifier configuration.
pub fn vacuum_envelope_normalization(params: &OpaParams) -> Result<f64> {
    let total = tensor_quadrature(4, DEFAULT_ORDER, |u| {
        let r: f64 = u.iter().map(|x| x * x).sum();
        let mut full = [0.0; 8];
        full[..4].copy_from_slice(u);
        let pt = phase_point_from_real(params, Configuration::NonDegenerate, &full).expect("8 coordinates");
        wigner_closed_form(params, &pt).parts.vacuum_envelope_a * r.exp()
    })?;
    // one squeezed pair: du = 4 d²α₁ d²α₂
    Ok(total / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opa::derive_params;

    #[test]
    fn hermite_moments() {
        let (x, w) = gauss_hermite(5);
        let pi = std::f64::consts::PI;
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        let m8: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((m0 - pi.sqrt()).abs() < 1e-14);
        assert!((m2 - pi.sqrt() / 2.0).abs() < 1e-14);
        assert!((m4 - 3.0 * pi.sqrt() / 4.0).abs() < 1e-14);
        assert!((m8 - 105.0 * pi.sqrt() / 16.0).abs() < 1e-12);
        // symmetric nodes
        assert!((x[0] + x[4]).abs() < 1e-14 && x[2].abs() < 1e-14);
    }

    #[test]
    fn low_order_refused() {
        let p = derive_params(0.5, 0.0).unwrap();
        assert!(matches!(
            wigner_normalization_with_order(&p, Configuration::Degenerate, 2),
            Err(QiopaError::QuadratureOrder { order: 2, minimum: 3 })
        ));
        let v = wigner_normalization_with_order(&p, Configuration::Degenerate, 3).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalized_both_configurations() {
        for g in [0.0, 1.5] {
            for phi in [0.0, 2.0] {
                let p = derive_params(g, phi).unwrap();
                for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
                    let v = wigner_normalization(&p, cfg).unwrap();
                    assert!((v - 1.0).abs() < 1e-10, "{cfg} g={g}: {v}");
                }
            }
        }
    }

    #[test]
    fn vacuum_envelope_is_normalized() {
        for g in [0.0, 0.8, 2.5] {
            let p = derive_params(g, 0.0).unwrap();
            assert!((vacuum_envelope_normalization(&p).unwrap() - 1.0).abs() < 1e-10);
        }
    }
}

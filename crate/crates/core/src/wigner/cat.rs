use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use serde::Serialize;

use super::closed_form::{origin_value, wigner_closed_form};
use super::coords::{phase_point_from_real, real_dimension, GammaVar, Part, PhasePoint, SqueezedAxis};
use super::form::{branch_vectors, GaussianQuadratic};
use crate::error::Result;
use crate::opa::{Configuration, OpaParams};

#[derive(Debug, Clone, Serialize)]
pub struct NegativityReport {
    pub minimum: f64,
    /// Real squeezed coordinates of the minimum.
    pub location: Vec<f64>,
    pub location_point: PhasePoint,
    pub closed_form_minimum: f64,
    pub not_positive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinguishabilityReport {
    pub x_axis: SqueezedAxis,
    pub y_axis: SqueezedAxis,
    /// Eigenvalues of the quadratic form of |e^{iΦ}Δ_A + Δ_B|² in the plane.
    pub eigenvalues: [f64; 2],
    /// Equal eigenvalues: the peaks form a ring rather than a pair.
    pub ring: bool,
    /// Peak-to-peak distance in the squeezed coordinates.
    pub separation: f64,
    /// The same peaks mapped back to the mode amplitudes.
    pub phase_space_separation: f64,
    /// Full width at half maximum of a peak along the line through both.
    pub width: f64,
    pub ratio: f64,
    pub distinguishable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FringeReport {
    /// Largest |2Re[e^{iΦ}Δ_A Δ_B*]| over unit vectors u.
    pub coupling: f64,
    pub fringe_capable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatReport {
    pub configuration: Configuration,
    pub gain: f64,
    pub phi: f64,
    pub fringe: FringeReport,
    pub negativity: NegativityReport,
    pub distinguishability: DistinguishabilityReport,
    /// Zero gain: the single-photon limit, nothing macroscopic about it.
    pub microscopic: bool,
}

pub fn cat_criteria(params: &OpaParams, configuration: Configuration) -> Result<CatReport> {
    let x = SqueezedAxis::new(GammaVar::APlus, Part::Re);
    let y = SqueezedAxis::new(GammaVar::BMinus, Part::Im);
    Ok(CatReport {
        configuration,
        gain: params.gain(),
        phi: params.phase_phi(),
        fringe: fringe(params, configuration),
        negativity: negativity(params, configuration)?,
        distinguishability: distinguishability(params, configuration, x, y)?,
        microscopic: params.gain() == 0.0,
    })
}

fn w_at(params: &OpaParams, configuration: Configuration, u: &[f64]) -> f64 {
    let pt = phase_point_from_real(params, configuration, u).expect("dimension fixed by caller");
    wigner_closed_form(params, &pt).value
}

/// Grid search over [−2, 2] (5 points per coordinate), then compass search.
pub fn negativity(params: &OpaParams, configuration: Configuration) -> Result<NegativityReport> {
    let n = real_dimension(configuration);
    let nodes = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let mut best_u = vec![0.0; n];
    let mut best = f64::INFINITY;
    let mut idx = vec![0usize; n];
    let mut u = vec![0.0; n];
    'grid: loop {
        for k in 0..n {
            u[k] = nodes[idx[k]];
        }
        let w = w_at(params, configuration, &u);
        if w < best {
            best = w;
            best_u.copy_from_slice(&u);
        }
        let mut k = 0;
        loop {
            if k == n {
                break 'grid;
            }
            idx[k] += 1;
            if idx[k] < nodes.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }

    let mut step = 0.5;
    while step > 1e-10 {
        let mut moved = false;
        for k in 0..n {
            for dir in [-1.0, 1.0] {
                let mut trial = best_u.clone();
                trial[k] += dir * step;
                let w = w_at(params, configuration, &trial);
                if w < best {
                    best = w;
                    best_u = trial;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }

    Ok(NegativityReport {
        minimum: best,
        location_point: phase_point_from_real(params, configuration, &best_u)?,
        location: best_u,
        closed_form_minimum: origin_value(configuration),
        not_positive: best < 0.0,
    })
}

/// Peaks of the slice through the (x, y) plane, all other coordinates at 0.
///
/// There W = −K e^{−s²}[1 − Q] with Q a quadratic form; along its principal
/// axis (eigenvalue λ) the two positive peaks sit at s² = 1 + 1/λ.
pub fn distinguishability(
    params: &OpaParams,
    configuration: Configuration,
    x_axis: SqueezedAxis,
    y_axis: SqueezedAxis,
) -> Result<DistinguishabilityReport> {
    let form = GaussianQuadratic::new(params, configuration);
    let (ix, sx) = x_axis.resolve(configuration);
    let (iy, sy) = y_axis.resolve(configuration);
    let lx = form.l[ix] * sx;
    let ly = form.l[iy] * sy;
    let a = Matrix2::new(
        lx.norm_sqr(),
        (lx.conj() * ly).re,
        (lx.conj() * ly).re,
        ly.norm_sqr(),
    );
    let eig = SymmetricEigen::new(a);
    let (i1, i2) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let lam = eig.eigenvalues[i1];
    let lam2 = eig.eigenvalues[i2];
    let dir = [eig.eigenvectors[(0, i1)], eig.eigenvectors[(1, i1)]];

    let ring = (lam - lam2).abs() <= 1e-12 * lam.abs().max(1.0);
    if lam <= 1e-300 {
        return Ok(DistinguishabilityReport {
            x_axis,
            y_axis,
            eigenvalues: [lam, lam2],
            ring,
            separation: 0.0,
            phase_space_separation: 0.0,
            width: f64::INFINITY,
            ratio: 0.0,
            distinguishable: false,
        });
    }

    let peak = (1.0 + 1.0 / lam).sqrt();
    let f = |s: f64| (-s * s).exp() * (lam * s * s - 1.0);
    let half = 0.5 * f(peak);
    let zero = 1.0 / lam.sqrt();
    let inner = bisect(|s| f(s) - half, zero, peak);
    let mut far = peak + 1.0;
    while f(far) > half {
        far += 1.0;
    }
    let outer = bisect(|s| f(s) - half, far, peak);
    let width = outer - inner;
    let separation = 2.0 * peak;

    let n = real_dimension(configuration);
    let mut u_plus = vec![0.0; n];
    u_plus[ix] = sx * peak * dir[0];
    u_plus[iy] = sy * peak * dir[1];
    let u_minus: Vec<f64> = u_plus.iter().map(|v| -v).collect();
    let p = phase_point_from_real(params, configuration, &u_plus)?.mode_amplitudes();
    let m = phase_point_from_real(params, configuration, &u_minus)?.mode_amplitudes();
    let phase_space_separation = p.iter().zip(&m).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();

    let ratio = separation / width;
    Ok(DistinguishabilityReport {
        x_axis,
        y_axis,
        eigenvalues: [lam, lam2],
        ring,
        separation,
        phase_space_separation,
        width,
        ratio,
        distinguishable: ratio > 1.0,
    })
}

// root of h between a (h < 0) and b (h > 0)
fn bisect(h: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if h(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
        if (a - b).abs() < 1e-15 {
            break;
        }
    }
    0.5 * (a + b)
}

pub fn fringe(params: &OpaParams, configuration: Configuration) -> FringeReport {
    let (a, b) = branch_vectors(params, configuration);
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |r, c| (a[r] * b[c].conj() + a[c] * b[r].conj()).re);
    let coupling = SymmetricEigen::new(m).eigenvalues.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    FringeReport { coupling, fringe_capable: coupling > 1e-12 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opa::derive_params;
    use std::f64::consts::PI;

    #[test]
    fn minimum_at_origin() {
        for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
            let p = derive_params(1.5, 0.7).unwrap();
            let r = negativity(&p, cfg).unwrap();
            assert!((r.minimum - origin_value(cfg)).abs() < 1e-8);
            assert!(r.location.iter().all(|x| x.abs() < 1e-6));
            assert!(r.not_positive);
        }
    }

    #[test]
    fn plotting_gain_is_distinguishable() {
        let p = derive_params(2.5, 0.0).unwrap();
        let r = cat_criteria(&p, Configuration::NonDegenerate).unwrap();
        let d = &r.distinguishability;
        assert!((d.separation - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(d.ratio > 1.0 && d.distinguishable);
        assert!(!d.ring);
        assert!(r.fringe.fringe_capable);
        assert!(!r.microscopic);
    }

    #[test]
    fn quarter_phase_gives_a_ring() {
        let p = derive_params(2.5, PI / 2.0).unwrap();
        let d = cat_criteria(&p, Configuration::NonDegenerate).unwrap().distinguishability;
        assert!(d.ring);
        assert!((d.separation - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn half_maximum_points() {
        let p = derive_params(2.5, 0.0).unwrap();
        let d = distinguishability(
            &p,
            Configuration::NonDegenerate,
            SqueezedAxis::new(GammaVar::APlus, Part::Re),
            SqueezedAxis::new(GammaVar::BMinus, Part::Im),
        )
        .unwrap();
        // λ = 1: f(s) = e^{−s²}(s² − 1), peak at √2 with f = e^{−2}
        let f = |s: f64| (-s * s).exp() * (s * s - 1.0);
        let peak = 2f64.sqrt();
        let half = 0.5 * (-2.0f64).exp();
        // the width brackets the peak and both ends sit at half height
        let lo = peak - d.width;
        assert!(d.width > 0.5 && d.width < 1.2, "{}", d.width);
        assert!(f(lo) < half);
    }

    #[test]
    fn zero_gain_flagged() {
        let p = derive_params(0.0, 0.0).unwrap();
        let r = cat_criteria(&p, Configuration::Degenerate).unwrap();
        assert!(r.microscopic);
        assert!(r.negativity.not_positive);
    }
}

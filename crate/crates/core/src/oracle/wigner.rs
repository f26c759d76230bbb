use std::f64::consts::FRAC_2_PI;

use num_complex::Complex64;

use super::operators::displacement_matrix;
use super::register::FockRegister;
use crate::error::{QiopaError, Result};
use crate::opa::Configuration;

/// Occupancy of the top level above which the parity sum is not trusted.
pub const TOP_OCCUPANCY_LIMIT: f64 = 1e-10;

/// Factor taking the displaced-parity Wigner function to the closed-form
/// convention. Both configurations use d²α = d(Re α) d(Im α) with unit
/// integral, so it is 1; matching the vacuum at the origin fixes it.
pub fn convention_scale(configuration: Configuration) -> f64 {
    match configuration {
        Configuration::NonDegenerate | Configuration::Degenerate => 1.0,
    }
}

/// W over the modes in `subset` at displacements `point` (one per subset mode):
/// (2/π)^k Σ (−1)^{Σn} |⟨n|D(−α)|ψ⟩|², other modes traced out.
pub fn wigner_by_displacement(reg: &FockRegister, subset: &[usize], point: &[Complex64]) -> Result<f64> {
    if subset.len() != point.len() {
        return Err(QiopaError::DimensionMismatch { expected: subset.len(), found: point.len() });
    }
    if subset.iter().any(|&m| m >= reg.mode_count()) {
        return Err(QiopaError::InvalidInput("subset names a mode outside the register".into()));
    }
    let top = reg.top_occupancy();
    if top >= TOP_OCCUPANCY_LIMIT {
        return Err(QiopaError::Unconverged(format!(
            "top-level occupancy {top:.3e} at cutoff {}; raise the cutoff",
            reg.cutoff()
        )));
    }
    let norm = reg.norm_sqr();
    let reach = point.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut rows = reg.cutoff() + 10 + (2.0 * reach * reach + 10.0 * reach).ceil() as usize;
    for _ in 0..4 {
        let phi = displaced(reg, subset, point, rows)?;
        let kept: f64 = phi.as_slice().iter().map(|a| a.norm_sqr()).sum();
        if (norm - kept).abs() <= 1e-13 * norm.max(1.0) {
            return Ok(parity_sum(&phi, subset) * FRAC_2_PI.powi(subset.len() as i32));
        }
        rows += 20;
    }
    Err(QiopaError::Unconverged(format!(
        "displaced state not contained in {rows} levels per mode"
    )))
}

fn displaced(reg: &FockRegister, subset: &[usize], point: &[Complex64], rows: usize) -> Result<FockRegister> {
    let d = reg.cutoff();
    let m = reg.mode_count();
    let mut big = FockRegister::zeros(m, rows)?;
    for (i, a) in reg.as_slice().iter().enumerate() {
        if *a != Complex64::default() {
            let j = big.index_of(&reg.occupations_of(i))?;
            big.as_mut_slice()[j] = *a;
        }
    }
    for (&mode, &alpha) in subset.iter().zip(point) {
        let dm = displacement_matrix(-alpha, rows, d);
        let s = big.stride(mode);
        let src = big.as_slice().to_vec();
        let out = big.as_mut_slice();
        for base in 0..src.len() {
            if (base / s) % rows != 0 {
                continue;
            }
            for r in 0..rows {
                let mut acc = Complex64::default();
                for c in 0..d {
                    acc += dm[(r, c)] * src[base + c * s];
                }
                out[base + r * s] = acc;
            }
        }
    }
    Ok(big)
}

fn parity_sum(reg: &FockRegister, subset: &[usize]) -> f64 {
    reg.as_slice()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let occ = reg.occupations_of(i);
            let n: usize = subset.iter().map(|&m| occ[m]).sum();
            if n % 2 == 0 {
                a.norm_sqr()
            } else {
                -a.norm_sqr()
            }
        })
        .sum()
}

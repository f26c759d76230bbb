//! Exact non-degenerate output kept as a sum of products over the two
//! amplifier pairs, A = (1⊥, 2∥) and B = (1∥, 2⊥). Each factor is a dense
//! two-mode vector, so cutoffs in the hundreds stay affordable where a dense
//! four-mode register would not.

use num_complex::Complex64;

use super::operators::LinearMode;
use super::propagator::SqueezePropagator;
use super::register::FockRegister;
use crate::error::{QiopaError, Result};
use crate::opa::OpaParams;

/// Global mode index (1⊥, 1∥, 2⊥, 2∥) → (pair, slot within pair).
fn locate(mode: usize) -> Result<(usize, usize)> {
    match mode {
        0 => Ok((0, 0)),
        3 => Ok((0, 1)),
        1 => Ok((1, 0)),
        2 => Ok((1, 1)),
        _ => Err(QiopaError::DimensionMismatch { expected: 4, found: mode + 1 }),
    }
}

#[derive(Debug, Clone)]
pub struct SplitState {
    cutoff: usize,
    terms: Vec<[Vec<Complex64>; 2]>,
}

impl SplitState {
    /// Propagated injected qubit.
    pub fn nondegenerate_output(params: &OpaParams, cutoff: usize) -> Result<Self> {
        let (vac, one) = propagated_inputs(params, cutoff)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phase = Complex64::from_polar(h, params.phase_phi());
        let scaled = |v: &[Complex64], c: Complex64| v.iter().map(|a| a * c).collect::<Vec<_>>();
        Ok(Self {
            cutoff,
            terms: vec![
                [scaled(&one, Complex64::new(h, 0.0)), vac.clone()],
                [scaled(&vac, phase), one],
            ],
        })
    }

    /// Both amplifiers fed with vacuum.
    pub fn vacuum_output(params: &OpaParams, cutoff: usize) -> Result<Self> {
        let (vac, _) = propagated_inputs(params, cutoff)?;
        Ok(Self { cutoff, terms: vec![[vac.clone(), vac]] })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
            x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
        };
        let mut total = Complex64::default();
        for r in &self.terms {
            for s in &self.terms {
                total += dot(&r[0], &s[0]) * dot(&r[1], &s[1]);
            }
        }
        total.re
    }

    pub fn annihilate(&self, mode: usize) -> Result<Self> {
        let (pair, slot) = locate(mode)?;
        let d = self.cutoff;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t[pair] = annihilate_pair(&t[pair], d, slot);
                t
            })
            .collect();
        Ok(Self { cutoff: d, terms })
    }

    pub fn apply(&self, op: &LinearMode) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len() * op.terms.len());
        for &(mode, coeff) in &op.terms {
            if coeff == Complex64::default() {
                continue;
            }
            let part = self.annihilate(mode)?;
            for mut t in part.terms {
                for a in t[0].iter_mut() {
                    *a *= coeff;
                }
                terms.push(t);
            }
        }
        Ok(Self { cutoff: self.cutoff, terms })
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Result<Complex64> {
        if occupations.len() != 4 {
            return Err(QiopaError::DimensionMismatch { expected: 4, found: occupations.len() });
        }
        let d = self.cutoff;
        if occupations.iter().any(|&n| n >= d) {
            return Ok(Complex64::default());
        }
        let ia = occupations[0] * d + occupations[3];
        let ib = occupations[1] * d + occupations[2];
        Ok(self.terms.iter().map(|t| t[0][ia] * t[1][ib]).sum())
    }

    /// Dense four-mode register, for small cutoffs only.
    pub fn to_register(&self) -> Result<FockRegister> {
        let d = self.cutoff;
        let mut reg = FockRegister::zeros(4, d)?;
        for (i, slot) in reg.as_mut_slice().iter_mut().enumerate() {
            let occ = [i / (d * d * d), (i / (d * d)) % d, (i / d) % d, i % d];
            *slot = self.amplitude(&occ)?;
        }
        Ok(reg)
    }
}

fn propagated_inputs(params: &OpaParams, cutoff: usize) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let u = SqueezePropagator::for_sectors(params.gain(), cutoff, &[0, 1])?;
    let d = cutoff;
    let mut vac = vec![Complex64::default(); d * d];
    vac[0] = Complex64::new(1.0, 0.0);
    let mut one = vec![Complex64::default(); d * d];
    one[d] = Complex64::new(1.0, 0.0);
    Ok((u.apply_pair(&vac)?, u.apply_pair(&one)?))
}

fn annihilate_pair(v: &[Complex64], d: usize, slot: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); v.len()];
    for i in 0..d {
        for j in 0..d {
            let (n, src) = if slot == 0 { (i, (i + 1) * d + j) } else { (j, i * d + j + 1) };
            if n + 1 < d {
                out[i * d + j] = v[src] * ((n + 1) as f64).sqrt();
            }
        }
    }
    out
}

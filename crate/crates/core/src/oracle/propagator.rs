use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::policy::{CutoffPolicy, BOUNDARY_TOLERANCE};
use super::register::FockRegister;
use crate::error::{QiopaError, Result};
use crate::opa::derive_params;

/// exp[g(a_i†a_j† − a_i a_j)] on a two-mode block truncated at d levels per
/// mode.
///
/// The generator conserves δ = n_i − n_j, so the propagator is a direct sum of
/// sectors. Sector δ ≥ 0 has basis |k+δ, k⟩ (δ < 0: |k, k+|δ|⟩), k = 0..d−|δ|,
/// and a real antisymmetric tridiagonal generator K with
/// K_{k+1,k} = √((k+|δ|+1)(k+1)). Writing K = D(−iT)D⁻¹ with D = diag(iᵏ) and
/// T symmetric gives exp(gK) = D·V e^{−igΛ} Vᵀ·D⁻¹, which is real.
#[derive(Debug, Clone)]
pub struct SqueezePropagator {
    gain: f64,
    cutoff: usize,
    sectors: Vec<Option<DMatrix<f64>>>,
}

impl SqueezePropagator {
    /// All sectors. Refuses cutoffs whose squeezed vacuum would put more than
    /// 1e-6 of its weight beyond the top level.
    pub fn new(gain: f64, cutoff: usize) -> Result<Self> {
        let all: Vec<i64> = (-(cutoff as i64) + 1..cutoff as i64).collect();
        Self::for_sectors(gain, cutoff, &all)
    }

    /// Only the listed sectors; applying the result to a state with weight in
    /// any other sector is an error.
    pub fn for_sectors(gain: f64, cutoff: usize, sectors: &[i64]) -> Result<Self> {
        let params = derive_params(gain, 0.0)?;
        if cutoff < 2 {
            return Err(QiopaError::InvalidInput(format!("cutoff must be at least 2, got {cutoff}")));
        }
        let x = params.gamma_ratio() * params.gamma_ratio();
        let beyond = x.powi(cutoff as i32 - 1);
        if beyond > BOUNDARY_TOLERANCE {
            return Err(QiopaError::CutoffTooSmall {
                cutoff,
                gain,
                occupancy: beyond,
                suggested: CutoffPolicy::default().cutoff(&params),
            });
        }
        let mut blocks = vec![None; 2 * cutoff - 1];
        for &delta in sectors {
            let slot = delta + cutoff as i64 - 1;
            if slot < 0 || slot as usize >= blocks.len() {
                return Err(QiopaError::InvalidInput(format!(
                    "sector {delta} does not exist at cutoff {cutoff}"
                )));
            }
            blocks[slot as usize] = Some(sector_block(gain, cutoff, delta.unsigned_abs() as usize));
        }
        Ok(Self { gain, cutoff, sectors: blocks })
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn sector(&self, delta: i64) -> Option<&DMatrix<f64>> {
        let slot = delta + self.cutoff as i64 - 1;
        if slot < 0 {
            return None;
        }
        self.sectors.get(slot as usize).and_then(|b| b.as_ref())
    }

    /// Applies the propagator to a two-mode vector indexed i·d + j.
    pub fn apply_pair(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let d = self.cutoff;
        if v.len() != d * d {
            return Err(QiopaError::DimensionMismatch { expected: d * d, found: v.len() });
        }
        let mut out = vec![Complex64::default(); d * d];
        self.apply_strided(v, &mut out, 0, d, 1)?;
        check_boundary_pair(&out, d, self.gain)?;
        Ok(out)
    }

    /// Applies the propagator to modes (i, j) of a register.
    pub fn apply(&self, reg: &FockRegister, i: usize, j: usize) -> Result<FockRegister> {
        if i == j || i >= reg.mode_count() || j >= reg.mode_count() {
            return Err(QiopaError::InvalidInput(format!("bad mode pair ({i}, {j})")));
        }
        if reg.cutoff() != self.cutoff {
            return Err(QiopaError::DimensionMismatch { expected: self.cutoff, found: reg.cutoff() });
        }
        let d = self.cutoff;
        let (si, sj) = (reg.stride(i), reg.stride(j));
        let src = reg.as_slice();
        let mut out = vec![Complex64::default(); src.len()];
        for base in 0..src.len() {
            if (base / si) % d == 0 && (base / sj) % d == 0 {
                self.apply_strided(src, &mut out, base, si, sj)?;
            }
        }
        let reg = FockRegister::from_vector(reg.mode_count(), d, out)?;
        let top = reg.top_occupancy();
        if top > BOUNDARY_TOLERANCE {
            return Err(self.too_small(top));
        }
        Ok(reg)
    }

    fn apply_strided(
        &self,
        src: &[Complex64],
        out: &mut [Complex64],
        base: usize,
        si: usize,
        sj: usize,
    ) -> Result<()> {
        let d = self.cutoff as i64;
        for delta in -(d - 1)..d {
            let len = (d - delta.abs()) as usize;
            let (oi, oj) = if delta >= 0 { (delta as usize, 0) } else { (0, (-delta) as usize) };
            let at = |k: usize| base + (k + oi) * si + (k + oj) * sj;
            let block = match self.sector(delta) {
                Some(b) => b,
                None => {
                    if (0..len).any(|k| src[at(k)] != Complex64::default()) {
                        return Err(QiopaError::InvalidInput(format!(
                            "state has weight in sector {delta}, which was not built"
                        )));
                    }
                    continue;
                }
            };
            for r in 0..len {
                let mut acc = Complex64::default();
                for c in 0..len {
                    acc += src[at(c)] * block[(r, c)];
                }
                out[at(r)] = acc;
            }
        }
        Ok(())
    }

    /// Dense d²×d² matrix (two-mode index i·d + j).
    pub fn to_dense(&self) -> DMatrix<f64> {
        let d = self.cutoff;
        let mut m = DMatrix::zeros(d * d, d * d);
        for delta in -(d as i64 - 1)..d as i64 {
            if let Some(b) = self.sector(delta) {
                let (oi, oj) = if delta >= 0 { (delta as usize, 0) } else { (0, (-delta) as usize) };
                for r in 0..b.nrows() {
                    for c in 0..b.ncols() {
                        m[((r + oi) * d + r + oj, (c + oi) * d + c + oj)] = b[(r, c)];
                    }
                }
            }
        }
        m
    }

    fn too_small(&self, occupancy: f64) -> QiopaError {
        let params = derive_params(self.gain, 0.0).expect("gain validated at construction");
        QiopaError::CutoffTooSmall {
            cutoff: self.cutoff,
            gain: self.gain,
            occupancy,
            suggested: CutoffPolicy::default().cutoff(&params).max(self.cutoff + 1),
        }
    }
}

fn check_boundary_pair(v: &[Complex64], d: usize, gain: f64) -> Result<()> {
    let top: f64 = (0..d)
        .flat_map(|k| [(d - 1) * d + k, k * d + d - 1])
        .map(|i| v[i].norm_sqr())
        .sum();
    if top > BOUNDARY_TOLERANCE {
        let params = derive_params(gain, 0.0)?;
        return Err(QiopaError::CutoffTooSmall {
            cutoff: d,
            gain,
            occupancy: top,
            suggested: CutoffPolicy::default().cutoff(&params).max(d + 1),
        });
    }
    Ok(())
}

fn sector_block(gain: f64, cutoff: usize, delta: usize) -> DMatrix<f64> {
    let len = cutoff - delta;
    if len == 1 || gain == 0.0 {
        return DMatrix::identity(len, len);
    }
    let t = DMatrix::from_fn(len, len, |r, c| {
        if r == c + 1 {
            (((c + delta + 1) * (c + 1)) as f64).sqrt()
        } else if c == r + 1 {
            (((r + delta + 1) * (r + 1)) as f64).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let v = &eig.eigenvectors;
    let phases: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex64::from_polar(1.0, -gain * l))
        .collect();
    // entry (r, c) = i^(r−c) Σ_l V_rl V_cl e^{−igλ_l}; only the real part survives
    DMatrix::from_fn(len, len, |r, c| {
        let s: Complex64 = (0..len).map(|l| phases[l] * (v[(r, l)] * v[(c, l)])).sum();
        let rot = match (r as i64 - c as i64).rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        (rot * s).re
    })
}

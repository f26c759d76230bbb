use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QiopaError, Result};
use crate::opa::{Configuration, OutputState};

/// Dense truncated Fock state over `mode_count` modes, each holding
/// 0..cutoff photons. Index of (n₀, …, n_{M−1}) is Σ n_k d^(M−1−k), so the
/// first mode is the most significant digit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockRegister {
    mode_count: usize,
    cutoff: usize,
    state: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Preparation {
    Basis(Vec<usize>),
    /// 2^(−1/2)(|first⟩ + e^{iΦ}|second⟩)
    Superposition { first: Vec<usize>, second: Vec<usize>, phase: f64 },
}

pub fn make_register(mode_count: usize, cutoff: usize, preparation: &Preparation) -> Result<FockRegister> {
    let mut reg = FockRegister::zeros(mode_count, cutoff)?;
    match preparation {
        Preparation::Basis(occ) => {
            let i = reg.index_of(occ)?;
            reg.state[i] = Complex64::new(1.0, 0.0);
        }
        Preparation::Superposition { first, second, phase } => {
            let i = reg.index_of(first)?;
            let j = reg.index_of(second)?;
            if i == j {
                return Err(QiopaError::InvalidInput("superposed tuples coincide".into()));
            }
            let h = std::f64::consts::FRAC_1_SQRT_2;
            reg.state[i] = Complex64::new(h, 0.0);
            reg.state[j] = Complex64::from_polar(h, *phase);
        }
    }
    Ok(reg)
}

/// The injected single-photon qubit for either configuration, vacuum on all
/// other modes (mode order as in [`Configuration::default_modes`]).
pub fn injected_qubit(configuration: Configuration, cutoff: usize, phase: f64) -> Result<FockRegister> {
    let (first, second) = match configuration {
        Configuration::NonDegenerate => (vec![1, 0, 0, 0], vec![0, 1, 0, 0]),
        Configuration::Degenerate => (vec![1, 0], vec![0, 1]),
    };
    make_register(
        configuration.mode_count(),
        cutoff,
        &Preparation::Superposition { first, second, phase },
    )
}

impl FockRegister {
    pub fn zeros(mode_count: usize, cutoff: usize) -> Result<Self> {
        if mode_count == 0 {
            return Err(QiopaError::InvalidInput("register needs at least one mode".into()));
        }
        if cutoff < 2 {
            return Err(QiopaError::InvalidInput(format!("cutoff must be at least 2, got {cutoff}")));
        }
        let len = (cutoff as f64).powi(mode_count as i32);
        if len > super::policy::MAX_REGISTER_AMPLITUDES as f64 {
            return Err(QiopaError::InvalidInput(format!(
                "{cutoff}^{mode_count} amplitudes exceed the register cap"
            )));
        }
        Ok(Self {
            mode_count,
            cutoff,
            state: vec![Complex64::default(); cutoff.pow(mode_count as u32)],
        })
    }

    pub fn from_vector(mode_count: usize, cutoff: usize, state: Vec<Complex64>) -> Result<Self> {
        let mut reg = Self::zeros(mode_count, cutoff)?;
        if state.len() != reg.state.len() {
            return Err(QiopaError::DimensionMismatch { expected: reg.state.len(), found: state.len() });
        }
        reg.state = state;
        Ok(reg)
    }

    /// Embeds a closed-form output state; fails if any retained tuple does
    /// not fit under `cutoff`.
    pub fn from_output_state(state: &OutputState, cutoff: usize) -> Result<Self> {
        let mut reg = Self::zeros(state.configuration().mode_count(), cutoff)?;
        for (occ, a) in state.entries() {
            let i = reg.index_of(&occ)?;
            reg.state[i] = a;
        }
        Ok(reg)
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.state.len()
    }

    pub fn is_empty(&self) -> bool {
        self.state.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.state
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.state
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.state
    }

    pub fn stride(&self, mode: usize) -> usize {
        self.cutoff.pow((self.mode_count - 1 - mode) as u32)
    }

    pub fn index_of(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.mode_count {
            return Err(QiopaError::DimensionMismatch {
                expected: self.mode_count,
                found: occupations.len(),
            });
        }
        let mut idx = 0;
        for &n in occupations {
            if n >= self.cutoff {
                return Err(QiopaError::InvalidInput(format!(
                    "occupation {n} does not fit under cutoff {}",
                    self.cutoff
                )));
            }
            idx = idx * self.cutoff + n;
        }
        Ok(idx)
    }

    pub fn occupations_of(&self, mut index: usize) -> Vec<usize> {
        let mut occ = vec![0; self.mode_count];
        for slot in occ.iter_mut().rev() {
            *slot = index % self.cutoff;
            index /= self.cutoff;
        }
        occ
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Result<Complex64> {
        Ok(self.state[self.index_of(occupations)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.state.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &FockRegister) -> Result<Complex64> {
        if self.state.len() != other.state.len() {
            return Err(QiopaError::DimensionMismatch { expected: self.state.len(), found: other.state.len() });
        }
        Ok(self.state.iter().zip(&other.state).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest probability of finding any single mode at its top level d−1.
    pub fn top_occupancy(&self) -> f64 {
        (0..self.mode_count)
            .map(|m| {
                let s = self.stride(m);
                self.state
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (i / s) % self.cutoff == self.cutoff - 1)
                    .map(|(_, a)| a.norm_sqr())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

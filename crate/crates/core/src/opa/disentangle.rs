//! Closed-form action of the two-mode squeeze operator exp[g(a†b† − ab)] on
//! the three low-lying inputs, as dense two-mode vectors (index i·d + j for
//! |i⟩_a|j⟩_b). Entries beyond the cutoff are dropped.

use super::params::OpaParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairInput {
    /// |0,0⟩
    Vacuum,
    /// |1,0⟩
    OnePhoton,
    /// |1,1⟩
    PhotonPair,
}

impl PairInput {
    pub fn occupations(self) -> (usize, usize) {
        match self {
            PairInput::Vacuum => (0, 0),
            PairInput::OnePhoton => (1, 0),
            PairInput::PhotonPair => (1, 1),
        }
    }
}

pub fn squeezed_pair(params: &OpaParams, input: PairInput, cutoff: usize) -> Vec<f64> {
    let c = params.cosh_c();
    let gamma = params.gamma_ratio();
    let d = cutoff;
    let mut v = vec![0.0; d * d];
    match input {
        PairInput::Vacuum => {
            for n in 0..d {
                v[n * d + n] = gamma.powi(n as i32) / c;
            }
        }
        PairInput::OnePhoton => {
            for n in 0..d.saturating_sub(1) {
                v[(n + 1) * d + n] = gamma.powi(n as i32) * ((n + 1) as f64).sqrt() / (c * c);
            }
        }
        PairInput::PhotonPair => {
            for n in 0..d.saturating_sub(1) {
                v[(n + 1) * d + n + 1] = gamma.powi(n as i32) * (n + 1) as f64 / (c * c * c);
            }
            for n in 0..d {
                v[n * d + n] -= gamma * gamma.powi(n as i32) / c;
            }
        }
    }
    v
}

/// The |1,1⟩ result with an |n,n⟩ index in the expansion. It
/// fails already at g = 0, where it returns |0,0⟩ instead of |1,1⟩.
pub fn photon_pair_printed(params: &OpaParams, cutoff: usize) -> Vec<f64> {
    let c = params.cosh_c();
    let gamma = params.gamma_ratio();
    let d = cutoff;
    let mut v = vec![0.0; d * d];
    for n in 0..d {
        v[n * d + n] = gamma.powi(n as i32) * (n + 1) as f64 / (c * c * c)
            - gamma * gamma.powi(n as i32) / c;
    }
    v
}

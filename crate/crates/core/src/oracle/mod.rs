//! Brute-force truncated Fock-space engine used to arbitrate every closed form.

pub mod operators;
pub mod policy;
pub mod propagator;
pub mod register;
pub mod split;
pub mod wigner;

pub use operators::{annihilate, displacement_matrix, expectation, LinearMode, ModeOperator, Observable, OperatorKind};
pub use policy::{CutoffPolicy, MAX_REGISTER_AMPLITUDES};
pub use propagator::SqueezePropagator;
pub use register::{injected_qubit, make_register, FockRegister, Preparation};
pub use split::SplitState;
pub use wigner::{convention_scale, wigner_by_displacement};

use crate::error::Result;
use crate::opa::{Configuration, OpaParams};

/// Mode pairs squeezed by each amplifier, in register mode indices.
pub fn squeezed_pairs(configuration: Configuration) -> &'static [(usize, usize)] {
    match configuration {
        // OPA_A: 1⊥–2∥, OPA_B: 1∥–2⊥
        Configuration::NonDegenerate => &[(0, 3), (1, 2)],
        Configuration::Degenerate => &[(0, 1)],
    }
}

/// Injected qubit propagated through the amplifier(s) on a dense register.
pub fn propagate_injected(configuration: Configuration, params: &OpaParams, cutoff: usize) -> Result<FockRegister> {
    let u = SqueezePropagator::new(params.gain(), cutoff)?;
    let mut reg = injected_qubit(configuration, cutoff, params.phase_phi())?;
    for &(i, j) in squeezed_pairs(configuration) {
        reg = u.apply(&reg, i, j)?;
    }
    Ok(reg)
}

/// Vacuum propagated through the amplifier(s): the no-injection reference.
pub fn propagate_vacuum(configuration: Configuration, params: &OpaParams, cutoff: usize) -> Result<FockRegister> {
    let u = SqueezePropagator::new(params.gain(), cutoff)?;
    let m = configuration.mode_count();
    let mut reg = make_register(m, cutoff, &Preparation::Basis(vec![0; m]))?;
    for &(i, j) in squeezed_pairs(configuration) {
        reg = u.apply(&reg, i, j)?;
    }
    Ok(reg)
}

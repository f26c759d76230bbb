pub mod disentangle;
pub mod params;
pub mod state;

pub use params::{derive_params, gain_for_mean_photons, thermal_weights, OpaParams, ThermalDistribution};
pub use state::{
    apply_pbs_swap, build_output_state, build_output_state_degenerate,
    build_output_state_nondegenerate, deficit_bound, Configuration, ModeLabel, Occupations,
    OutputState, Polarization, StateDocument, StateEntry,
};

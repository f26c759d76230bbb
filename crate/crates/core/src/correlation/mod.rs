//! Detection model and the first/second-order correlation functions.

pub mod closed_form;
pub mod metrics;
pub mod oracle;
pub mod report;
pub mod settings;
pub mod sweep;

pub use closed_form::{
    g1_degenerate, g1_nondegenerate, g2_degenerate, g2_nondegenerate, g2_nondegenerate_printed,
    g2_vacuum_nondegenerate, DetectedMode, DetectorPair, ModePair,
};
pub use metrics::{cauchy_schwarz_test, fringe_difference, fringe_difference_printed, signal_to_noise, visibility, CauchySchwarz};
pub use oracle::OracleCorrelator;
pub use report::{closed_form_rates, oracle_rates, reported_mode, CorrelationReport, PrintedForms, Provenance, Rates};
pub use settings::{DetectorMode, DetectorSettings, PhaseCombos};
pub use sweep::{run_sweep, SweepSpec, SweepVar};

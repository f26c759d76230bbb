use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::OpaParams;
use crate::error::{QiopaError, Result};

pub const STATE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Configuration {
    /// Two independent amplifiers over k₁, k₂ with both polarizations.
    NonDegenerate,
    /// Single collinear amplifier over the two polarizations of k₁.
    Degenerate,
}

impl Configuration {
    pub fn mode_count(self) -> usize {
        match self {
            Configuration::NonDegenerate => 4,
            Configuration::Degenerate => 2,
        }
    }

    pub fn default_modes(self) -> Vec<ModeLabel> {
        use Polarization::*;
        match self {
            Configuration::NonDegenerate => vec![
                ModeLabel::new(1, Perp),
                ModeLabel::new(1, Par),
                ModeLabel::new(2, Perp),
                ModeLabel::new(2, Par),
            ],
            Configuration::Degenerate => vec![ModeLabel::new(1, Perp), ModeLabel::new(1, Par)],
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Configuration::NonDegenerate => "nondegenerate",
            Configuration::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    Perp,
    Par,
}

/// A bosonic mode: momentum index k and polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeLabel {
    pub momentum: u8,
    pub polarization: Polarization,
}

impl ModeLabel {
    pub const fn new(momentum: u8, polarization: Polarization) -> Self {
        Self { momentum, polarization }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.polarization {
            Polarization::Perp => "perp",
            Polarization::Par => "par",
        };
        write!(f, "k{}_{}", self.momentum, p)
    }
}

impl Serialize for ModeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub type Occupations = Vec<usize>;

/// Truncated Fock expansion of the amplifier output.
///
/// The two superposed branches are kept apart: `branches[0]` carries the
/// photon injected in the ⊥ mode of k₁, `branches[1]` the e^{iΦ} term.
/// Stored amplitudes are renormalized to unit norm; the unrenormalized
/// amplitudes use the unit-norm prefactor (√2 C²)⁻¹ for both configurations.
#[derive(Debug, Clone)]
pub struct OutputState {
    configuration: Configuration,
    params: OpaParams,
    truncation: usize,
    modes: Vec<ModeLabel>,
    branches: [BTreeMap<Occupations, Complex64>; 2],
    prefactor: f64,
    printed_prefactor: f64,
    renormalization: f64,
    normalization_deficit: f64,
}

impl OutputState {
    pub fn configuration(&self) -> Configuration {
        self.configuration
    }

    pub fn params(&self) -> &OpaParams {
        &self.params
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn branch(&self, index: usize) -> &BTreeMap<Occupations, Complex64> {
        &self.branches[index]
    }

    /// Prefactor G that makes the untruncated state unit norm.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// Prefactor as printed for this configuration; for the degenerate
    /// amplifier this is (2C)⁻², which does not give a unit-norm state.
    pub fn printed_prefactor(&self) -> f64 {
        self.printed_prefactor
    }

    pub fn normalization_deficit(&self) -> f64 {
        self.normalization_deficit
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Complex64 {
        self.raw_amplitude(occupations) * self.renormalization
    }

    /// Amplitude before renormalizing the truncated table.
    pub fn raw_amplitude(&self, occupations: &[usize]) -> Complex64 {
        self.branches
            .iter()
            .find_map(|b| b.get(occupations).copied())
            .unwrap_or_default()
    }

    /// Normalized amplitudes, ordered by occupation tuple.
    pub fn entries(&self) -> Vec<(Occupations, Complex64)> {
        let mut all: BTreeMap<&Occupations, Complex64> = BTreeMap::new();
        for b in &self.branches {
            for (k, v) in b {
                all.insert(k, *v * self.renormalization);
            }
        }
        all.into_iter().map(|(k, v)| (k.clone(), v)).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.raw_norm_sqr() * self.renormalization * self.renormalization
    }

    pub fn raw_norm_sqr(&self) -> f64 {
        self.branches
            .iter()
            .flat_map(|b| b.values())
            .map(|a| a.norm_sqr())
            .sum()
    }

    pub fn max_occupation(&self) -> usize {
        self.branches
            .iter()
            .flat_map(|b| b.keys())
            .flat_map(|k| k.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> StateDocument {
        StateDocument {
            schema_version: STATE_SCHEMA_VERSION,
            configuration: self.configuration,
            gain: self.params.gain(),
            phi: self.params.phase_phi(),
            truncation: self.truncation,
            modes: self.modes.iter().map(|m| m.to_string()).collect(),
            prefactor: self.prefactor,
            printed_prefactor: self.printed_prefactor,
            normalization_deficit: self.normalization_deficit,
            entries: self
                .entries()
                .into_iter()
                .map(|(occupations, a)| StateEntry { occupations, re: a.re, im: a.im })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub schema_version: u32,
    pub configuration: Configuration,
    pub gain: f64,
    pub phi: f64,
    pub truncation: usize,
    pub modes: Vec<String>,
    pub prefactor: f64,
    pub printed_prefactor: f64,
    pub normalization_deficit: f64,
    pub entries: Vec<StateEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateEntry {
    pub occupations: Occupations,
    pub re: f64,
    pub im: f64,
}

/// Upper bound (N+3)·Γ^(2(N+1)) on the truncation deficit of either builder.
pub fn deficit_bound(params: &OpaParams, truncation: usize) -> f64 {
    let x = params.gamma_ratio() * params.gamma_ratio();
    (truncation as f64 + 3.0) * x.powi(truncation as i32 + 1)
}

// Tail of Σ_{m>N} (1−x)²(m+1)x^m.
fn weighted_tail(x: f64, n: usize) -> f64 {
    x.powi(n as i32 + 1) * ((n as f64 + 2.0) * (1.0 - x) + x)
}

fn finish(
    configuration: Configuration,
    params: &OpaParams,
    truncation: usize,
    branches: [BTreeMap<Occupations, Complex64>; 2],
    printed_prefactor: f64,
    normalization_deficit: f64,
) -> OutputState {
    if normalization_deficit > 0.5 {
        log::warn!(
            "truncation {truncation} keeps only {:.3} of the norm at gain {}",
            1.0 - normalization_deficit,
            params.gain()
        );
    }
    let c = params.cosh_c();
    let mut state = OutputState {
        configuration,
        params: *params,
        truncation,
        modes: configuration.default_modes(),
        branches,
        prefactor: 1.0 / (SQRT_2 * c * c),
        printed_prefactor,
        renormalization: 1.0,
        normalization_deficit,
    };
    state.renormalization = 1.0 / state.raw_norm_sqr().sqrt();
    state
}

/// Two-amplifier output: G{|Ψ_B(0)⟩⊗|Ψ_A(1)⟩ + e^{iΦ}|Ψ_A(0)⟩⊗|Ψ_B(1)⟩}.
///
/// Occupations are ordered (1⊥, 1∥, 2⊥, 2∥); OPA_A couples 1⊥–2∥ and OPA_B
/// couples 1∥–2⊥. Both series run over 0..=truncation.
pub fn build_output_state_nondegenerate(params: &OpaParams, truncation: usize) -> OutputState {
    let c = params.cosh_c();
    let gamma = params.gamma_ratio();
    let g = 1.0 / (SQRT_2 * c * c);
    let phase = Complex64::from_polar(1.0, params.phase_phi());

    let vacuum: Vec<f64> = (0..=truncation).map(|n| gamma.powi(n as i32) / c).collect();
    let excited: Vec<f64> = (0..=truncation)
        .map(|m| gamma.powi(m as i32) * ((m + 1) as f64).sqrt())
        .collect();

    let mut a = BTreeMap::new();
    let mut b = BTreeMap::new();
    for (n, vn) in vacuum.iter().enumerate() {
        for (m, em) in excited.iter().enumerate() {
            let amp = g * vn * em;
            if amp == 0.0 {
                continue;
            }
            a.insert(vec![m + 1, n, n, m], Complex64::new(amp, 0.0));
            b.insert(vec![n, m + 1, m, n], phase * amp);
        }
    }

    let x = gamma * gamma;
    let t_vac = x.powi(truncation as i32 + 1);
    let t_exc = weighted_tail(x, truncation);
    let deficit = t_vac + t_exc - t_vac * t_exc;
    finish(Configuration::NonDegenerate, params, truncation, [a, b], g, deficit)
}

/// Collinear output: G{|n+1⟩_{1⊥}|n⟩_{1∥} + e^{iΦ}|n⟩_{1⊥}|n+1⟩_{1∥}} summed with
/// weights Γⁿ√(n+1).
pub fn build_output_state_degenerate(params: &OpaParams, truncation: usize) -> OutputState {
    let c = params.cosh_c();
    let gamma = params.gamma_ratio();
    let g = 1.0 / (SQRT_2 * c * c);
    let phase = Complex64::from_polar(1.0, params.phase_phi());

    let mut a = BTreeMap::new();
    let mut b = BTreeMap::new();
    for n in 0..=truncation {
        let amp = g * gamma.powi(n as i32) * ((n + 1) as f64).sqrt();
        if amp == 0.0 {
            continue;
        }
        a.insert(vec![n + 1, n], Complex64::new(amp, 0.0));
        b.insert(vec![n, n + 1], phase * amp);
    }

    let printed = 1.0 / (4.0 * c * c);
    let deficit = weighted_tail(gamma * gamma, truncation);
    finish(Configuration::Degenerate, params, truncation, [a, b], printed, deficit)
}

pub fn build_output_state(
    configuration: Configuration,
    params: &OpaParams,
    truncation: usize,
) -> OutputState {
    match configuration {
        Configuration::NonDegenerate => build_output_state_nondegenerate(params, truncation),
        Configuration::Degenerate => build_output_state_degenerate(params, truncation),
    }
}

/// Polarizing beam splitter on k₁: 1⊥ exits along k₃, 1∥ along k₄.
pub fn apply_pbs_swap(state: &OutputState) -> Result<OutputState> {
    if state.configuration != Configuration::Degenerate {
        return Err(QiopaError::InvalidConfiguration(format!(
            "the PBS swap acts on the degenerate output, got {}",
            state.configuration
        )));
    }
    if state.modes != Configuration::Degenerate.default_modes() {
        return Err(QiopaError::InvalidConfiguration(
            "state has already been routed through the PBS".into(),
        ));
    }
    let mut out = state.clone();
    out.modes = vec![
        ModeLabel::new(3, Polarization::Perp),
        ModeLabel::new(4, Polarization::Par),
    ];
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opa::params::derive_params;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn params(g: f64, phi: f64) -> OpaParams {
        derive_params(g, phi).unwrap()
    }

    #[test]
    fn nondegenerate_zero_gain_is_input_qubit() {
        let s = build_output_state_nondegenerate(&params(0.0, 0.7), 40);
        let e = s.entries();
        assert_eq!(e.len(), 2);
        assert_eq!(s.amplitude(&[1, 0, 0, 0]), Complex64::new(FRAC_1_SQRT_2, 0.0));
        let b = s.amplitude(&[0, 1, 0, 0]);
        assert_relative_eq!(b.re, FRAC_1_SQRT_2 * 0.7f64.cos(), epsilon = 1e-16);
        assert_relative_eq!(b.im, FRAC_1_SQRT_2 * 0.7f64.sin(), epsilon = 1e-16);
        assert_eq!(s.normalization_deficit(), 0.0);
    }

    #[test]
    fn nondegenerate_norm_at_half_gain() {
        let s = build_output_state_nondegenerate(&params(0.5, 0.0), 40);
        assert!((s.raw_norm_sqr() - 1.0).abs() < 1e-10);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nondegenerate_leading_amplitude() {
        let p = params(0.5, 0.0);
        let c = p.cosh_c();
        let s = build_output_state_nondegenerate(&p, 40);
        assert_relative_eq!(s.prefactor(), 1.0 / (SQRT_2 * c * c), max_relative = 1e-15);
        // the vacuum pair of OPA_B contributes √P₀ = 1/C on top of G
        assert_relative_eq!(
            s.raw_amplitude(&[1, 0, 0, 0]).re,
            s.prefactor() / c,
            max_relative = 1e-15
        );
    }

    #[test]
    fn degenerate_prefactors() {
        let p = params(0.6, 0.0);
        let c = p.cosh_c();
        let s = build_output_state_degenerate(&p, 60);
        assert_relative_eq!(s.printed_prefactor(), 1.0 / (4.0 * c * c), max_relative = 1e-15);
        assert_relative_eq!(s.raw_amplitude(&[1, 0]).re, 1.0 / (SQRT_2 * c * c), max_relative = 1e-15);
        assert!((s.raw_norm_sqr() - 1.0).abs() < 1e-10);

        // the printed prefactor leaves 1/8 of the norm
        let ratio = s.printed_prefactor() / s.prefactor();
        assert_relative_eq!(s.raw_norm_sqr() * ratio * ratio, 0.125, max_relative = 1e-9);
    }

    #[test]
    fn degenerate_zero_gain_and_branch_symmetry() {
        let s = build_output_state_degenerate(&params(0.0, PI / 2.0), 10);
        assert_eq!(s.entries().len(), 2);
        assert_relative_eq!(s.amplitude(&[1, 0]).re, FRAC_1_SQRT_2);
        assert_relative_eq!(s.amplitude(&[0, 1]).im, FRAC_1_SQRT_2, epsilon = 1e-16);

        let s = build_output_state_degenerate(&params(0.8, 1.3), 30);
        for n in 0..30 {
            let a = s.amplitude(&[n + 1, n]).norm();
            let b = s.amplitude(&[n, n + 1]).norm();
            assert_relative_eq!(a, b, max_relative = 1e-14);
        }
    }

    #[test]
    fn degenerate_pairing_constraint() {
        let s = build_output_state_degenerate(&params(0.9, 0.2), 25);
        for (k, _) in s.entries() {
            assert!(k[0] == k[1] + 1 || k[1] == k[0] + 1, "{k:?}");
        }
    }

    #[test]
    fn pbs_swap_relabels() {
        let s = build_output_state_degenerate(&params(0.4, 0.3), 20);
        let t = apply_pbs_swap(&s).unwrap();
        let labels: Vec<String> = t.modes().iter().map(|m| m.to_string()).collect();
        assert_eq!(labels, ["k3_perp", "k4_par"]);
        assert_eq!(t.entries(), s.entries());
        assert_eq!(t.norm_sqr(), s.norm_sqr());
        assert!(apply_pbs_swap(&t).is_err());

        let nd = build_output_state_nondegenerate(&params(0.4, 0.3), 5);
        assert!(matches!(apply_pbs_swap(&nd), Err(QiopaError::InvalidConfiguration(_))));
    }

    #[test]
    fn json_document() {
        let s = build_output_state_degenerate(&params(0.0, 0.0), 3);
        let doc = s.to_json();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"configuration\":\"degenerate\""));
        let back: StateDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }

    proptest! {
        #[test]
        fn branches_have_disjoint_support(g in 0.0f64..1.5, n in 0usize..25) {
            for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
                let s = build_output_state(cfg, &params(g, 0.4), n);
                for k in s.branch(0).keys() {
                    prop_assert!(!s.branch(1).contains_key(k));
                }
            }
        }

        #[test]
        fn phase_shift_touches_second_branch_only(g in 0.0f64..1.2, phi in -3.0f64..3.0, d in -3.0f64..3.0) {
            for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
                let s0 = build_output_state(cfg, &params(g, phi), 12);
                let s1 = build_output_state(cfg, &params(g, phi + d), 12);
                let rot = Complex64::from_polar(1.0, d);
                for (k, a) in s0.branch(0) {
                    prop_assert_eq!(*a, s1.branch(0)[k]);
                }
                for (k, a) in s0.branch(1) {
                    prop_assert!((a * rot - s1.branch(1)[k]).norm() < 1e-15);
                    prop_assert!((a.norm() - s1.branch(1)[k].norm()).abs() < 1e-15);
                }
            }
        }

        #[test]
        fn deficit_matches_sum_and_bound(g in 0.0f64..1.5, n in 0usize..40) {
            let p = params(g, 0.0);
            for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
                let s = build_output_state(cfg, &p, n);
                let d = s.normalization_deficit();
                prop_assert!(d >= 0.0);
                prop_assert!((d - (1.0 - s.raw_norm_sqr())).abs() < 1e-13);
                prop_assert!(d <= deficit_bound(&p, n) + 1e-15);
            }
        }

        #[test]
        fn norm_grows_with_truncation(g in 0.05f64..1.5, n in 0usize..30) {
            for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
                let lo = build_output_state(cfg, &params(g, 0.0), n);
                let hi = build_output_state(cfg, &params(g, 0.0), n + 1);
                prop_assert!(hi.raw_norm_sqr() >= lo.raw_norm_sqr());
                prop_assert!(hi.normalization_deficit() <= lo.normalization_deficit());
            }
        }
    }
}

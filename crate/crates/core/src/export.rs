//! Plain-text exports for external plotting. Floats are written with 17
//! significant digits so values round-trip exactly; row order is fixed.

use std::io::{self, Write};

use serde::Serialize;

use crate::correlation::{CorrelationReport, SweepSpec};
use crate::opa::{Configuration, OutputState};
use crate::wigner::{AxisRange, GridMode, PhaseGrid, SqueezedAxis};

pub const GRID_SCHEMA_VERSION: u32 = 1;
pub const SWEEP_SCHEMA_VERSION: u32 = 1;

pub const GRID_HEADER: &str = "x,y,W,envelope_a,envelope_b,superposition_sq";
pub const SWEEP_HEADER: &str = "sweep_var,value,G1_1,G1_2,G2_11,G2_22,G2_12,V,s/n,fringe,G2_12_printed,fringe_printed";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), num)
}

pub fn write_grid_csv(grid: &PhaseGrid, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{GRID_HEADER}")?;
    let nx = grid.xs.len();
    for (k, s) in grid.samples.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            num(grid.xs[k % nx]),
            num(grid.ys[k / nx]),
            num(s.value),
            num(s.parts.vacuum_envelope_a),
            num(s.parts.vacuum_envelope_b),
            num(s.parts.superposition_modulus_sq),
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridFile {
    pub file: String,
    pub mode: GridMode,
    /// Pinned coordinates of a slice; every unlisted non-swept one is 0.
    pub fixed: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSidecar {
    pub schema_version: u32,
    pub configuration: Configuration,
    pub gain: f64,
    pub phi: f64,
    pub axes: [String; 2],
    pub ranges: [AxisRange; 2],
    pub counts: [usize; 2],
    pub columns: Vec<&'static str>,
    pub measure: &'static str,
    pub grids: Vec<GridFile>,
}

/// Sidecar for one or more grids sharing axes and parameters.
pub fn grid_sidecar(grids: &[(&PhaseGrid, String)]) -> Option<GridSidecar> {
    let (first, _) = grids.first()?;
    let spec = &first.spec;
    Some(GridSidecar {
        schema_version: GRID_SCHEMA_VERSION,
        configuration: spec.configuration,
        gain: first.gain,
        phi: first.phi,
        axes: [spec.x_axis.to_string(), spec.y_axis.to_string()],
        ranges: [spec.x, spec.y],
        counts: [spec.x.count, spec.y.count],
        columns: GRID_HEADER.split(',').collect(),
        measure: "d2alpha = dRe(alpha) dIm(alpha); marginals are densities in the kept squeezed coordinates",
        grids: grids
            .iter()
            .map(|(g, file)| GridFile {
                file: file.clone(),
                mode: g.spec.mode,
                fixed: g.spec.fixed.iter().map(|(a, v): &(SqueezedAxis, f64)| (a.to_string(), *v)).collect(),
            })
            .collect(),
    })
}

pub fn write_sweep_csv(spec: &SweepSpec, rows: &[(f64, CorrelationReport)], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for (v, r) in rows {
        let cols = [
            num(*v),
            num(r.rates.g1[0]),
            num(r.rates.g1[1]),
            num(r.rates.g2[0]),
            num(r.rates.g2[1]),
            num(r.rates.g2[2]),
            opt(r.visibility),
            opt(r.signal_to_noise),
            num(r.fringe_difference),
            num(r.printed.g2_12),
            num(r.printed.fringe_difference),
        ];
        writeln!(out, "{},{}", spec.var, cols.join(","))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSidecar {
    pub schema_version: u32,
    pub configuration: Configuration,
    pub gain: f64,
    pub phi: f64,
    pub settings: crate::correlation::DetectorSettings,
    pub sweep: SweepSpec,
    pub columns: Vec<&'static str>,
    /// Which detectors the numbered columns refer to.
    pub channels: &'static str,
}

pub fn sweep_sidecar(
    configuration: Configuration,
    base: &CorrelationReport,
    spec: &SweepSpec,
) -> SweepSidecar {
    SweepSidecar {
        schema_version: SWEEP_SCHEMA_VERSION,
        configuration,
        gain: base.gain,
        phi: base.phi,
        settings: base.settings,
        sweep: *spec,
        columns: SWEEP_HEADER.split(',').collect(),
        channels: match configuration {
            Configuration::NonDegenerate => "1 = D_phi on k1, 2 = D_phi on k2; V, s/n and fringe refer to k2",
            Configuration::Degenerate => "1 = D_phi, 2 = D_phibar behind the same analyzer",
        },
    }
}

pub fn write_state_json(state: &OutputState, out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &state.to_json())?;
    writeln!(out)
}

pub fn write_json<T: Serialize>(value: &T, out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

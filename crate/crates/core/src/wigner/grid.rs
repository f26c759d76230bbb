use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closed_form::{wigner_closed_form, WignerValue};
use super::coords::{phase_point_from_real, real_dimension, GammaVar, Part, SqueezedAxis};
use super::form::{complement, GaussianQuadratic, Marginal};
use crate::error::{QiopaError, Result};
use crate::opa::{Configuration, OpaParams};

pub const DEFAULT_GRID_CAP: usize = 4_000_000;
pub const FIG4_GAIN: f64 = 2.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    /// Non-swept coordinates pinned to fixed values (0 unless given).
    Slice,
    /// Non-swept coordinates integrated out analytically.
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn samples(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 })
            .collect()
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.count < 2 {
            return Err(QiopaError::InvalidInput(format!("{name} axis needs at least 2 samples")));
        }
        if !self.min.is_finite() || !self.max.is_finite() || self.min >= self.max {
            return Err(QiopaError::InvalidInput(format!(
                "{name} range [{}, {}] must be finite and increasing",
                self.min, self.max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub configuration: Configuration,
    pub mode: GridMode,
    pub x_axis: SqueezedAxis,
    pub y_axis: SqueezedAxis,
    pub x: AxisRange,
    pub y: AxisRange,
    /// Slice mode only: values of non-swept coordinates.
    #[serde(default)]
    pub fixed: Vec<(SqueezedAxis, f64)>,
    pub max_samples: usize,
}

impl GridSpec {
    /// Two-amplifier output on (Re γA+, Im γB−). Which reduction to two
    /// variables is meant is ambiguous, so callers pick slice or marginal.
    pub fn fig4(mode: GridMode) -> Self {
        Self {
            configuration: Configuration::NonDegenerate,
            mode,
            x_axis: SqueezedAxis::new(GammaVar::APlus, Part::Re),
            y_axis: SqueezedAxis::new(GammaVar::BMinus, Part::Im),
            x: AxisRange::new(-3.0, 3.0, 121),
            y: AxisRange::new(-3.0, 3.0, 121),
            fixed: Vec::new(),
            max_samples: DEFAULT_GRID_CAP,
        }
    }

    pub fn sample_count(&self) -> usize {
        self.x.count.saturating_mul(self.y.count)
    }

    fn validate(&self) -> Result<()> {
        self.x.validate("x")?;
        self.y.validate("y")?;
        let n = self.sample_count();
        if n > self.max_samples {
            return Err(QiopaError::GridTooLarge { requested: n, cap: self.max_samples });
        }
        let dim = real_dimension(self.configuration);
        let (ix, _) = self.x_axis.resolve(self.configuration);
        let (iy, _) = self.y_axis.resolve(self.configuration);
        if ix >= dim || iy >= dim {
            return Err(QiopaError::InvalidInput("axis outside this phase space".into()));
        }
        if ix == iy {
            return Err(QiopaError::InvalidInput(format!(
                "{} and {} are the same coordinate here",
                self.x_axis, self.y_axis
            )));
        }
        if self.mode == GridMode::Marginal && !self.fixed.is_empty() {
            return Err(QiopaError::InvalidInput("fixed values apply to slices only".into()));
        }
        let mut seen = BTreeSet::from([ix, iy]);
        for (axis, v) in &self.fixed {
            let (i, _) = axis.resolve(self.configuration);
            if i >= dim || !seen.insert(i) {
                return Err(QiopaError::InvalidInput(format!("fixed value for {axis} conflicts")));
            }
            if !v.is_finite() {
                return Err(QiopaError::InvalidInput(format!("fixed value for {axis} is not finite")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseGrid {
    pub spec: GridSpec,
    pub gain: f64,
    pub phi: f64,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// Row-major, x fastest: sample (ix, iy) at iy·nx + ix.
    pub samples: Vec<WignerValue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridExtremum {
    pub value: f64,
    pub x: f64,
    pub y: f64,
}

impl PhaseGrid {
    pub fn at(&self, ix: usize, iy: usize) -> &WignerValue {
        &self.samples[iy * self.xs.len() + ix]
    }

    pub fn minimum(&self) -> GridExtremum {
        self.extremum(|a, b| a < b)
    }

    pub fn maximum(&self) -> GridExtremum {
        self.extremum(|a, b| a > b)
    }

    fn extremum(&self, better: impl Fn(f64, f64) -> bool) -> GridExtremum {
        let nx = self.xs.len();
        let mut best = 0;
        for (i, s) in self.samples.iter().enumerate() {
            if better(s.value, self.samples[best].value) {
                best = i;
            }
        }
        GridExtremum { value: self.samples[best].value, x: self.xs[best % nx], y: self.ys[best / nx] }
    }
}

pub fn wigner_grid(params: &OpaParams, spec: &GridSpec) -> Result<PhaseGrid> {
    spec.validate()?;
    let cfg = spec.configuration;
    let xs = spec.x.samples();
    let ys = spec.y.samples();
    let nx = xs.len();
    let samples: Vec<WignerValue> = match spec.mode {
        GridMode::Slice => {
            let (ix, sx) = spec.x_axis.resolve(cfg);
            let (iy, sy) = spec.y_axis.resolve(cfg);
            let mut base = vec![0.0; real_dimension(cfg)];
            for (axis, v) in &spec.fixed {
                let (i, s) = axis.resolve(cfg);
                base[i] = s * v;
            }
            (0..spec.sample_count())
                .into_par_iter()
                .map(|k| {
                    let mut u = base.clone();
                    u[ix] = sx * xs[k % nx];
                    u[iy] = sy * ys[k / nx];
                    let pt = phase_point_from_real(params, cfg, &u).expect("dimension checked");
                    wigner_closed_form(params, &pt)
                })
                .collect()
        }
        GridMode::Marginal => {
            let kept = [spec.x_axis, spec.y_axis];
            let m = GaussianQuadratic::new(params, cfg).marginal(&kept, &complement(cfg, &kept))?;
            eval_marginal(&m, &xs, &ys)
        }
    };
    Ok(PhaseGrid { spec: spec.clone(), gain: params.gain(), phi: params.phase_phi(), xs, ys, samples })
}

/// Marginal on the (kept[0], kept[1]) plane with `integrated` summed out;
/// the two lists must partition the coordinates.
pub fn marginal_wigner(
    params: &OpaParams,
    configuration: Configuration,
    kept: [SqueezedAxis; 2],
    integrated: &[SqueezedAxis],
    x: AxisRange,
    y: AxisRange,
) -> Result<PhaseGrid> {
    let spec = GridSpec {
        configuration,
        mode: GridMode::Marginal,
        x_axis: kept[0],
        y_axis: kept[1],
        x,
        y,
        fixed: Vec::new(),
        max_samples: DEFAULT_GRID_CAP,
    };
    spec.validate()?;
    let m = GaussianQuadratic::new(params, configuration).marginal(&kept, integrated)?;
    let xs = x.samples();
    let ys = y.samples();
    let samples = eval_marginal(&m, &xs, &ys);
    Ok(PhaseGrid { spec, gain: params.gain(), phi: params.phase_phi(), xs, ys, samples })
}

fn eval_marginal(m: &Marginal, xs: &[f64], ys: &[f64]) -> Vec<WignerValue> {
    let nx = xs.len();
    (0..xs.len() * ys.len())
        .into_par_iter()
        .map(|k| m.eval(&[xs[k % nx], ys[k / nx]]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opa::derive_params;
    use std::f64::consts::PI;

    fn small(mode: GridMode) -> GridSpec {
        GridSpec { x: AxisRange::new(-2.0, 2.0, 21), y: AxisRange::new(-2.0, 2.0, 21), ..GridSpec::fig4(mode) }
    }

    #[test]
    fn samples_equal_pointwise_values() {
        let p = derive_params(0.6, 0.4).unwrap();
        let spec = GridSpec { x: AxisRange::new(-0.5, 0.5, 2), y: AxisRange::new(-0.25, 0.25, 2), ..GridSpec::fig4(GridMode::Slice) };
        let g = wigner_grid(&p, &spec).unwrap();
        for iy in 0..2 {
            for ix in 0..2 {
                let mut u = [0.0; 8];
                u[0] = g.xs[ix];
                u[7] = g.ys[iy];
                let pt = phase_point_from_real(&p, Configuration::NonDegenerate, &u).unwrap();
                assert_eq!(g.at(ix, iy), &wigner_closed_form(&p, &pt));
            }
        }
    }

    #[test]
    fn phase_pi_reflects_y() {
        for mode in [GridMode::Slice, GridMode::Marginal] {
            let a = wigner_grid(&derive_params(2.5, 0.0).unwrap(), &small(mode)).unwrap();
            let b = wigner_grid(&derive_params(2.5, PI).unwrap(), &small(mode)).unwrap();
            let n = a.ys.len();
            for iy in 0..n {
                for ix in 0..a.xs.len() {
                    let d = (a.at(ix, iy).value - b.at(ix, n - 1 - iy).value).abs();
                    assert!(d < 1e-15, "{mode:?} ({ix},{iy}): {d}");
                }
            }
        }
    }

    #[test]
    fn slice_is_negative_marginal_positive() {
        for phi in [0.0, PI / 2.0, PI] {
            let p = derive_params(2.5, phi).unwrap();
            let s = wigner_grid(&p, &small(GridMode::Slice)).unwrap();
            assert!(s.minimum().value < 0.0);
            assert_eq!((s.minimum().x, s.minimum().y), (0.0, 0.0));
            let m = wigner_grid(&p, &small(GridMode::Marginal)).unwrap();
            assert!(m.minimum().value > 0.0);
        }
    }

    #[test]
    fn refusals() {
        let p = derive_params(1.0, 0.0).unwrap();
        let mut spec = small(GridMode::Slice);
        spec.max_samples = 100;
        assert!(matches!(wigner_grid(&p, &spec), Err(QiopaError::GridTooLarge { requested: 441, cap: 100 })));
        let mut spec = small(GridMode::Slice);
        spec.x.count = 1;
        assert!(wigner_grid(&p, &spec).is_err());
        let mut spec = small(GridMode::Slice);
        spec.y.max = f64::INFINITY;
        assert!(wigner_grid(&p, &spec).is_err());
        let mut spec = small(GridMode::Slice);
        spec.configuration = Configuration::Degenerate;
        spec.y_axis = SqueezedAxis::new(GammaVar::BPlus, Part::Re);
        assert!(wigner_grid(&p, &spec).is_err());
    }

    #[test]
    fn marginal_reports_reassembled_parts() {
        let p = derive_params(0.8, 1.0).unwrap();
        let all = SqueezedAxis::all(Configuration::Degenerate);
        let g = marginal_wigner(
            &p,
            Configuration::Degenerate,
            [all[0], all[3]],
            &[all[1], all[2]],
            AxisRange::new(-1.0, 1.0, 5),
            AxisRange::new(-1.0, 1.0, 5),
        )
        .unwrap();
        for s in &g.samples {
            assert!((s.value - s.parts.assemble()).abs() < 1e-16);
        }
        assert!(marginal_wigner(&p, Configuration::Degenerate, [all[0], all[3]], &[all[1]],
            AxisRange::new(-1.0, 1.0, 5), AxisRange::new(-1.0, 1.0, 5)).is_err());
    }
}

use qiopa::export::{grid_sidecar, write_grid_csv, write_json};
use qiopa::wigner::{cat_criteria, wigner_grid, wigner_normalization, AxisRange, GridMode, GridSpec, PhaseGrid, SqueezedAxis, FIG4_GAIN};
use qiopa::Configuration;

use super::{check_stem, output_path, resolve_params, Defaults, PendingFiles};
use crate::config::{self, GridConfig, RangeConfig};
use crate::error::{usage, CliError, CliResult};
use crate::WignerGridArgs;

pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

fn parse_modes(s: &str) -> CliResult<Vec<GridMode>> {
    match s {
        "slice" => Ok(vec![GridMode::Slice]),
        "marginal" => Ok(vec![GridMode::Marginal]),
        "both" => Ok(vec![GridMode::Slice, GridMode::Marginal]),
        other => Err(usage(format!("unknown grid mode '{other}' (slice | marginal | both)"))),
    }
}

fn parse_range(s: &str) -> CliResult<AxisRange> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || usage(format!("range '{s}' should be min,max,count"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let min = parts[0].parse().map_err(|_| bad())?;
    let max = parts[1].parse().map_err(|_| bad())?;
    let count = parts[2].parse().map_err(|_| bad())?;
    Ok(AxisRange::new(min, max, count))
}

fn parse_axis(s: &str) -> CliResult<SqueezedAxis> {
    s.parse().map_err(CliError::from)
}

fn mode_name(mode: GridMode) -> &'static str {
    match mode {
        GridMode::Slice => "slice",
        GridMode::Marginal => "marginal",
    }
}

fn range_of(r: &RangeConfig) -> AxisRange {
    AxisRange::new(r.min, r.max, r.count)
}

pub fn run(args: &WignerGridArgs) -> CliResult<()> {
    let file = config::load(args.common.config.as_deref())?;
    let grid_cfg = file.grid.clone().unwrap_or_default();
    let preset = args.preset.clone().or(grid_cfg.preset.clone());
    let fig4 = match preset.as_deref() {
        None => false,
        Some("fig4") => true,
        Some(other) => return Err(usage(format!("unknown preset '{other}' (fig4)"))),
    };
    let defaults = if fig4 {
        Defaults { configuration: Some(Configuration::NonDegenerate), gain: Some(FIG4_GAIN) }
    } else {
        Defaults::default()
    };
    let (cfg, params) = resolve_params(&args.common, &file, defaults)?;
    let modes = parse_modes(args.mode.as_deref().or(grid_cfg.mode.as_deref()).unwrap_or(if fig4 { "both" } else { "slice" }))?;
    let specs = build_specs(args, &grid_cfg, cfg, &modes)?;

    let stem = args
        .stem
        .clone()
        .or_else(|| file.output.as_ref().and_then(|o| o.stem.clone()))
        .unwrap_or_else(|| if fig4 { "fig4".into() } else { "wigner".into() });
    check_stem(&stem)?;
    let dir = args.out_dir.clone().or_else(|| file.output.as_ref().and_then(|o| o.dir.clone()));

    let grids: Vec<PhaseGrid> = specs.iter().map(|s| wigner_grid(&params, s)).collect::<qiopa::Result<_>>()?;
    let mut files = PendingFiles::default();
    let mut named = Vec::new();
    for g in &grids {
        let name = format!("{stem}_{}.csv", mode_name(g.spec.mode));
        let mut bytes = Vec::new();
        write_grid_csv(g, &mut bytes)?;
        files.add(output_path(dir.as_deref(), &name), bytes);
        named.push((g, name));
    }
    let sidecar = grid_sidecar(&named).ok_or_else(|| usage("no grid requested"))?;
    let mut bytes = Vec::new();
    write_json(&sidecar, &mut bytes)?;
    files.add(output_path(dir.as_deref(), &format!("{stem}.json")), bytes);

    let normalize = args.normalize_check || grid_cfg.normalize_check.unwrap_or(false);
    let integral = if normalize { Some(wigner_normalization(&params, cfg)?) } else { None };
    let cat = if args.cat_report { Some(cat_criteria(&params, cfg)?) } else { None };

    for path in files.commit()? {
        println!("wrote {}", path.display());
    }
    println!("configuration = {cfg}, g = {}, Phi = {}", params.gain(), params.phase_phi());
    for g in &grids {
        let lo = g.minimum();
        let hi = g.maximum();
        println!(
            "{}: min W = {:.12e} at ({}, {}), max W = {:.12e} at ({}, {})",
            mode_name(g.spec.mode),
            lo.value,
            lo.x,
            lo.y,
            hi.value,
            hi.x,
            hi.y
        );
    }
    if let Some(c) = cat {
        println!("{}", serde_json::to_string_pretty(&c).map_err(|e| usage(e.to_string()))?);
    }
    if let Some(v) = integral {
        println!("integral = {v:.9}");
        if (v - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(CliError::Tolerance(format!("normalization off by {:e}", v - 1.0)));
        }
    }
    Ok(())
}

fn build_specs(args: &WignerGridArgs, grid_cfg: &GridConfig, cfg: Configuration, modes: &[GridMode]) -> CliResult<Vec<GridSpec>> {
    let base = GridSpec { configuration: cfg, ..GridSpec::fig4(modes[0]) };
    let x_axis = match args.x_axis.as_deref().or(grid_cfg.x_axis.as_deref()) {
        Some(s) => parse_axis(s)?,
        None => base.x_axis,
    };
    let y_axis = match args.y_axis.as_deref().or(grid_cfg.y_axis.as_deref()) {
        Some(s) => parse_axis(s)?,
        None => base.y_axis,
    };
    let x = match &args.x_range {
        Some(s) => parse_range(s)?,
        None => grid_cfg.x.as_ref().map(range_of).unwrap_or(base.x),
    };
    let y = match &args.y_range {
        Some(s) => parse_range(s)?,
        None => grid_cfg.y.as_ref().map(range_of).unwrap_or(base.y),
    };
    let mut fixed = Vec::new();
    if args.fixed.is_empty() {
        for (k, v) in grid_cfg.fixed.iter().flatten() {
            fixed.push((parse_axis(k)?, *v));
        }
    } else {
        for f in &args.fixed {
            let (k, v) = f.split_once('=').ok_or_else(|| usage(format!("--fix expects axis=value, got '{f}'")))?;
            let v: f64 = v.trim().parse().map_err(|_| usage(format!("--fix value '{v}' is not a number")))?;
            fixed.push((parse_axis(k.trim())?, v));
        }
    }
    if !fixed.is_empty() && !modes.contains(&GridMode::Slice) {
        return Err(usage("pinned coordinates apply to slices only"));
    }
    let max_samples = args.max_samples.or(grid_cfg.max_samples).unwrap_or(base.max_samples);
    Ok(modes
        .iter()
        .map(|&mode| GridSpec {
            configuration: cfg,
            mode,
            x_axis,
            y_axis,
            x,
            y,
            // pinned values only make sense on a slice
            fixed: if mode == GridMode::Slice { fixed.clone() } else { Vec::new() },
            max_samples,
        })
        .collect())
}

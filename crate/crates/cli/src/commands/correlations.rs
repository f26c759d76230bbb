use qiopa::correlation::{
    cauchy_schwarz_test, reported_mode, run_sweep, visibility, CorrelationReport, DetectedMode, DetectorMode,
    DetectorSettings, SweepSpec, SweepVar,
};
use qiopa::export::{sweep_sidecar, write_json, write_sweep_csv};
use qiopa::oracle::CutoffPolicy;
use qiopa::{Configuration, OpaParams};

use super::{check_stem, output_path, resolve_params, Defaults, PendingFiles};
use crate::angle::parse_angle;
use crate::config::{self, DetectorConfig, ScenarioConfig, SweepConfig};
use crate::error::{usage, CliResult};
use crate::CorrelationArgs;

fn detector(file: Option<&DetectorConfig>, angle: Option<f64>, shift: Option<f64>) -> CliResult<DetectorMode> {
    let get = |v: Option<&crate::angle::AngleValue>, name: &str| -> CliResult<f64> {
        v.map(|a| a.radians().map_err(|e| usage(format!("{name}: {e}")))).transpose().map(|x| x.unwrap_or(0.0))
    };
    let f = file.cloned().unwrap_or_default();
    let mut m = DetectorMode {
        rotator_angle: get(f.rotator_angle.as_ref(), "rotator_angle")?,
        psi_alpha: get(f.psi_alpha.as_ref(), "psi_alpha")?,
        psi_beta: get(f.psi_beta.as_ref(), "psi_beta")?,
    };
    if let Some(a) = angle {
        m.rotator_angle = a;
    }
    if let Some(s) = shift {
        m.psi_alpha = m.psi_beta + s;
    }
    Ok(m)
}

fn settings(args: &CorrelationArgs, file: &ScenarioConfig) -> CliResult<DetectorSettings> {
    let d = file.detectors.clone().unwrap_or_default();
    Ok(DetectorSettings::new(
        detector(d.k1.as_ref(), args.phi1, args.psi1)?,
        detector(d.k2.as_ref(), args.phi2, args.psi2)?,
    ))
}

fn parse_sweep_flag(s: &str) -> CliResult<SweepSpec> {
    let bad = || usage(format!("--sweep expects var=start:stop:count, got '{s}'"));
    let (var, rest) = s.split_once('=').ok_or_else(bad)?;
    let var: SweepVar = var.trim().parse()?;
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let bound = |t: &str| -> CliResult<f64> {
        if var.is_angle() {
            parse_angle(t).map_err(usage)
        } else {
            t.trim().parse().map_err(|_| bad())
        }
    };
    Ok(SweepSpec { var, start: bound(parts[0])?, stop: bound(parts[1])?, count: parts[2].trim().parse().map_err(|_| bad())? })
}

fn sweep_from_config(c: &SweepConfig) -> CliResult<SweepSpec> {
    let var: SweepVar = c.var.parse()?;
    let conv = |a: &crate::angle::AngleValue| if var.is_angle() { a.radians() } else { a.plain() };
    Ok(SweepSpec {
        var,
        start: conv(&c.start).map_err(|e| usage(format!("sweep start: {e}")))?,
        stop: conv(&c.stop).map_err(|e| usage(format!("sweep stop: {e}")))?,
        count: c.count,
    })
}

fn sweep(args: &CorrelationArgs, file: &ScenarioConfig) -> CliResult<Option<SweepSpec>> {
    let specs: Vec<SweepSpec> = if args.sweep.is_empty() {
        file.sweep.iter().flat_map(|s| s.to_vec()).map(|c| sweep_from_config(&c)).collect::<CliResult<_>>()?
    } else {
        args.sweep.iter().map(|s| parse_sweep_flag(s)).collect::<CliResult<_>>()?
    };
    match specs.len() {
        0 => Ok(None),
        1 => Ok(Some(specs[0])),
        _ => Err(usage("only one variable can be swept per run; run the sweeps separately")),
    }
}

pub fn run(args: &CorrelationArgs) -> CliResult<()> {
    let file = config::load(args.common.config.as_deref())?;
    let (cfg, params) = resolve_params(&args.common, &file, Defaults::default())?;
    let settings = settings(args, &file)?;
    let sweep = sweep(args, &file)?;
    if args.cauchy_schwarz && cfg == Configuration::Degenerate {
        return Err(usage("the Cauchy-Schwarz test compares the two beams k1, k2 of the non-degenerate configuration"));
    }
    if args.oracle && sweep.is_some() {
        return Err(usage("--oracle evaluates a single point; drop --sweep or --oracle"));
    }

    if let Some(spec) = sweep {
        let stem = args
            .stem
            .clone()
            .or_else(|| file.output.as_ref().and_then(|o| o.stem.clone()))
            .unwrap_or_else(|| "correlations".into());
        check_stem(&stem)?;
        let dir = args.out_dir.clone().or_else(|| file.output.as_ref().and_then(|o| o.dir.clone()));
        let rows = run_sweep(&params, cfg, &settings, &spec)?;
        let base = CorrelationReport::closed_form(&params, cfg, &settings);
        let mut files = PendingFiles::default();
        let mut csv = Vec::new();
        write_sweep_csv(&spec, &rows, &mut csv)?;
        files.add(output_path(dir.as_deref(), &format!("{stem}.csv")), csv);
        let mut json = Vec::new();
        write_json(&sweep_sidecar(cfg, &base, &spec), &mut json)?;
        files.add(output_path(dir.as_deref(), &format!("{stem}.json")), json);
        for path in files.commit()? {
            println!("wrote {}", path.display());
        }
    }

    let report = if args.oracle {
        CorrelationReport::oracle(&params, cfg, &settings, &CutoffPolicy::guarded())?
    } else {
        CorrelationReport::closed_form(&params, cfg, &settings)
    };
    if args.json {
        let mut out = Vec::new();
        write_json(&report, &mut out)?;
        print!("{}", String::from_utf8_lossy(&out));
    } else if sweep.is_none() && !args.cauchy_schwarz && !args.visibility {
        print_report(&report);
    }
    if args.visibility {
        print_visibility(&params, cfg);
    }
    if args.cauchy_schwarz {
        let cs = if args.oracle { report.normalized } else { cauchy_schwarz_test(&params, &settings) };
        match cs {
            None => println!("Cauchy-Schwarz: not applicable at n = 0"),
            Some(cs) => {
                println!("g2_11 = {:.12}", cs.g2_11);
                println!("g2_22 = {:.12}", cs.g2_22);
                println!("g2_12 = {:.12}", cs.g2_12);
                println!("lhs = {:.12}", cs.lhs);
                println!("rhs = {:.12}", cs.rhs);
                println!("{}", if cs.violated { "VIOLATED" } else { "not violated" });
            }
        }
    }
    Ok(())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".into(), |v| format!("{v:.12}"))
}

fn print_visibility(params: &OpaParams, cfg: Configuration) {
    match cfg {
        Configuration::NonDegenerate => {
            println!("V_k1 = {}", fmt_opt(visibility(params, cfg, DetectedMode::One)));
            println!("V_k2 = {}", fmt_opt(visibility(params, cfg, DetectedMode::Two)));
        }
        Configuration::Degenerate => println!("V = {}", fmt_opt(visibility(params, cfg, reported_mode(cfg)))),
    }
}

fn print_report(r: &CorrelationReport) {
    let row = |k: &str, v: String| println!("{k:<16} {v}");
    row("configuration", r.configuration.to_string());
    row("gain", format!("{}", r.gain));
    row("mean_photons", format!("{:.12}", r.mean_photons));
    row("provenance", format!("{:?}", r.provenance));
    row("G1_1", format!("{:.12}", r.rates.g1[0]));
    row("G1_2", format!("{:.12}", r.rates.g1[1]));
    row("G2_11", format!("{:.12}", r.rates.g2[0]));
    row("G2_22", format!("{:.12}", r.rates.g2[1]));
    row("G2_12", format!("{:.12}", r.rates.g2[2]));
    row("G2_12_printed", format!("{:.12}", r.printed.g2_12));
    row("V", fmt_opt(r.visibility));
    row("s/n", fmt_opt(r.signal_to_noise));
    row("fringe", format!("{:.12}", r.fringe_difference));
    row("fringe_printed", format!("{:.12}", r.printed.fringe_difference));
}

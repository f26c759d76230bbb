use qiopa::export::write_json;
use qiopa::verify::{run_all, VerifyOptions, VerifyReport, DEFAULT_GAINS};

use super::PendingFiles;
use crate::config;
use crate::error::{usage, CliError, CliResult};
use crate::VerifyArgs;

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    let file = config::load(args.config.as_deref())?;
    let vcfg = file.verify.clone().unwrap_or_default();
    let gains = args.gains.clone().or(vcfg.gains).unwrap_or_else(|| DEFAULT_GAINS.to_vec());
    if gains.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(usage("gains must be finite and non-negative"));
    }
    let mut options = VerifyOptions::default();
    if let Some(s) = args.convention_scale.or(vcfg.convention_scale) {
        options.convention_scale = s;
    }
    let report = run_all(&gains, &options)?;

    let mut json = Vec::new();
    write_json(&report, &mut json)?;
    if let Some(path) = &args.report {
        let mut files = PendingFiles::default();
        files.add(path.clone(), json.clone());
        files.commit()?;
    }
    if args.json {
        print!("{}", String::from_utf8_lossy(&json));
    } else {
        print_table(&report);
    }
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        Err(CliError::Tolerance(format!("failed checks: {}", failed.join(", "))))
    }
}

fn print_table(report: &VerifyReport) {
    println!("{:<22} {:>14} {:>10} {:>9} {:>7}  result", "check", "max |dev|", "tolerance", "measure", "at g");
    for c in &report.checks {
        println!(
            "{:<22} {:>14.3e} {:>10.0e} {:>9} {:>7}  {}",
            c.name,
            c.max_deviation,
            c.tolerance,
            c.measure,
            c.worst_gain,
            if c.passed { "PASS" } else { "FAIL" }
        );
    }
    println!("overall: {}", if report.passed { "PASS" } else { "FAIL" });
}

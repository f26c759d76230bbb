pub mod correlations;
pub mod state_dump;
pub mod verify;
pub mod wigner_grid;

use std::path::{Path, PathBuf};

use qiopa::{derive_params, gain_for_mean_photons, Configuration, OpaParams};

use crate::config::ScenarioConfig;
use crate::error::{usage, CliResult};
use crate::CommonArgs;

pub fn parse_configuration(s: &str) -> CliResult<Configuration> {
    match s.trim().to_ascii_lowercase().as_str() {
        "nondegenerate" | "non-degenerate" => Ok(Configuration::NonDegenerate),
        "degenerate" | "collinear" => Ok(Configuration::Degenerate),
        other => Err(usage(format!("unknown configuration '{other}' (nondegenerate | degenerate)"))),
    }
}

/// Scenario defaults that a preset may supply before file and flags.
#[derive(Debug, Clone, Copy, Default)]
pub struct Defaults {
    pub configuration: Option<Configuration>,
    pub gain: Option<f64>,
}

pub fn resolve_params(
    common: &CommonArgs,
    file: &ScenarioConfig,
    defaults: Defaults,
) -> CliResult<(Configuration, OpaParams)> {
    let configuration = match &common.configuration {
        Some(s) => parse_configuration(s)?,
        None => file.configuration.or(defaults.configuration).unwrap_or(Configuration::NonDegenerate),
    };
    let phi = match common.phi {
        Some(p) => p,
        None => match &file.phi {
            Some(a) => a.radians().map_err(|e| usage(format!("phi: {e}")))?,
            None => 0.0,
        },
    };
    // flag over file; within each source gain and n̄ are exclusive
    let gain = if let Some(g) = common.gain {
        g
    } else if let Some(n) = common.mean_photons {
        gain_for_mean_photons(n)?
    } else {
        match (file.gain, file.mean_photons) {
            (Some(_), Some(_)) => return Err(usage("config sets both gain and mean_photons")),
            (Some(g), None) => g,
            (None, Some(n)) => gain_for_mean_photons(n)?,
            (None, None) => defaults.gain.unwrap_or(0.0),
        }
    };
    Ok((configuration, derive_params(gain, phi)?))
}

/// Files are assembled in memory and written only once the whole run has
/// succeeded, so a failed run leaves nothing behind.
#[derive(Debug, Default)]
pub struct PendingFiles {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl PendingFiles {
    pub fn add(&mut self, path: PathBuf, bytes: Vec<u8>) {
        self.files.push((path, bytes));
    }

    pub fn commit(self) -> CliResult<Vec<PathBuf>> {
        let mut written = Vec::with_capacity(self.files.len());
        for (path, bytes) in self.files {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&path, bytes)?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn output_path(dir: Option<&Path>, name: &str) -> PathBuf {
    dir.unwrap_or(Path::new(".")).join(name)
}

pub fn check_stem(stem: &str) -> CliResult<()> {
    if stem.is_empty() || stem.contains(['/', '\\']) {
        return Err(usage(format!("output stem '{stem}' must be a plain file name")));
    }
    Ok(())
}

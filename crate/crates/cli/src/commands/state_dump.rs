use qiopa::export::write_state_json;
use qiopa::{apply_pbs_swap, build_output_state};

use super::{resolve_params, Defaults, PendingFiles};
use crate::config;
use crate::error::CliResult;
use crate::StateDumpArgs;

const DEFAULT_TRUNCATION: usize = 40;

pub fn run(args: &StateDumpArgs) -> CliResult<()> {
    let file = config::load(args.common.config.as_deref())?;
    let (cfg, params) = resolve_params(&args.common, &file, Defaults::default())?;
    let state_cfg = file.state.clone().unwrap_or_default();
    let truncation = args.truncation.or(state_cfg.truncation).unwrap_or(DEFAULT_TRUNCATION);
    let mut state = build_output_state(cfg, &params, truncation);
    if args.pbs_swap || state_cfg.pbs_swap.unwrap_or(false) {
        state = apply_pbs_swap(&state)?;
    }
    let mut bytes = Vec::new();
    write_state_json(&state, &mut bytes)?;
    match &args.out {
        Some(path) => {
            let mut files = PendingFiles::default();
            files.add(path.clone(), bytes);
            files.commit()?;
        }
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    Ok(())
}

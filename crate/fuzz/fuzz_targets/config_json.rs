#![no_main]

use libfuzzer_sys::fuzz_target;
use wrm_cli::config::{CommandKind, RunConfig, Settings};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(settings) = Settings::from_json(text) else {
        return;
    };
    for command in [
        CommandKind::Solve,
        CommandKind::JacobianCheck,
        CommandKind::Properties,
        CommandKind::Compare,
        CommandKind::List,
    ] {
        if let Ok(cfg) = RunConfig::resolve(command, settings.clone()) {
            // Resolved configs must carry usable values.
            assert!(cfg.n >= 2 && cfg.trials > 0 && cfg.cases > 0 && !cfg.ns.is_empty());
            cfg.solve.validate().expect("resolve validated solver options");
        }
    }
});

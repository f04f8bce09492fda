#![no_main]

use libfuzzer_sys::fuzz_target;
use wrm_cli::args::{self, Command};
use wrm_cli::configure;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let argv = std::iter::once("wrm").chain(text.split(['\0', '\n', ' ']).filter(|s| !s.is_empty()));
    let Ok(mut cli) = args::parse(argv) else {
        return;
    };
    // Keep the target off the filesystem.
    match &mut cli.command {
        Command::Solve(a) | Command::JacobianCheck(a) | Command::Properties(a) | Command::Compare(a) => {
            a.config = None;
        }
        Command::List(_) => {}
    }
    if let Err(e) = configure(cli) {
        assert_eq!(e.exit_code(), wrm_cli::exit::INVALID_CONFIG);
    }
});

#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use wrm_cli::config::OutputFormat;
use wrm_core::assembly::BasisKind;
use wrm_core::problems::{ProblemKind, Scheme};
use wrm_core::solvers::{JacobianMode, Method};

fn roundtrip<T: FromStr + PartialEq + std::fmt::Debug>(s: &str, name: impl Fn(&T) -> &'static str) {
    if let Ok(v) = s.parse::<T>() {
        let back: T = name(&v).parse().ok().expect("canonical name parses");
        assert_eq!(back, v);
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    roundtrip::<ProblemKind>(s, |v| v.name());
    roundtrip::<Scheme>(s, |v| v.name());
    roundtrip::<BasisKind>(s, |v| v.name());
    roundtrip::<Method>(s, |v| v.name());
    roundtrip::<JacobianMode>(s, |v| v.name());
    roundtrip::<OutputFormat>(s, |v| v.name());
});

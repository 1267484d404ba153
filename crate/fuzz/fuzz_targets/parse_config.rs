#![no_main]

use eit_cli::{parse_config, SweepConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(raw) = parse_config(text) {
        if let Ok(cfg) = SweepConfig::from_raw(&raw) {
            assert!(!cfg.omega.is_empty() && !cfg.z.is_empty());
            assert!(cfg.omega.windows(2).all(|w| w[0] < w[1]));
            assert!(cfg.z.windows(2).all(|w| w[0] < w[1]));
        }
    }
});

#![no_main]

use eit_cli::{parse_override, SweepConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(arg) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((key, value)) = parse_override(arg) {
        assert!(!key.is_empty() && !value.is_empty());
        let _ = SweepConfig::from_pairs([(key.as_str(), value.as_str())]);
    }
});

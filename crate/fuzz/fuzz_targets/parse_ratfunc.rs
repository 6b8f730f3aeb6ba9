#![no_main]

use libfuzzer_sys::fuzz_target;
use shalika_core::exactalg::parse_ratfunc;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_ratfunc(text) {
        // canonical text reparses to the same value whenever it stays within the parser limits
        if let Ok(g) = parse_ratfunc(&f.to_string()) {
            assert_eq!(f, g);
        }
    }
});

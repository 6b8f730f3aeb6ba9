#![no_main]

use libfuzzer_sys::fuzz_target;
use shalika_core::shalikaeval::parse_block_spec;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_block_spec(text);
    }
});

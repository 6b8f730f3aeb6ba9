#![no_main]

use libfuzzer_sys::fuzz_target;
use shalika_core::charspace::{parse_segment_spec, segment_char};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(seg) = parse_segment_spec(text) {
        assert!(seg.validate().is_ok());
        let _ = segment_char(&seg);
    }
});

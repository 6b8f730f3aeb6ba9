#![no_main]

use libfuzzer_sys::fuzz_target;
use shalika_core::weylcomb::SimpleSet;

fuzz_target!(|data: &[u8]| {
    let Some((&size, rest)) = data.split_first() else { return };
    let size = usize::from(size % 13);
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(s) = SimpleSet::parse(text, size) {
        assert!(s.fits(size));
    }
});

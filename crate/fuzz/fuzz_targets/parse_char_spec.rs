#![no_main]

use libfuzzer_sys::fuzz_target;
use shalika_core::charspace::parse_char_spec;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = usize::from(n % 5);
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(theta) = parse_char_spec(text, n) {
        assert_eq!(theta.values().len(), 2 * theta.n());
    }
});

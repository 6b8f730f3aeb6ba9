#![no_main]

use libfuzzer_sys::fuzz_target;
use shalika_core::weylcomb::Perm;

fuzz_target!(|data: &[u8]| {
    let Some((&size, rest)) = data.split_first() else { return };
    let size = usize::from(size % 9);
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(w) = Perm::parse(text, size) {
        assert_eq!(w.size(), size);
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(Perm::from_word(size, &w.reduced_word()), w);
    }
});

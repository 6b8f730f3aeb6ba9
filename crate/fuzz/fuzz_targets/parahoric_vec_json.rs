#![no_main]

use libfuzzer_sys::fuzz_target;
use shalika_core::intertwine::ParahoricVec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = ParahoricVec::from_json(text) {
        let again = ParahoricVec::from_json(&v.to_json().to_string()).expect("serialized vector reparses");
        assert_eq!(v, again);
    }
});

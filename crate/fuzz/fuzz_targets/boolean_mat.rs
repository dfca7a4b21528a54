#![no_main]

use libfuzzer_sys::fuzz_target;
use monoid_tc::concrete::BooleanMat;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = BooleanMat::parse(text) {
        assert_eq!(BooleanMat::parse(&m.to_string()).unwrap(), m);
    }
});

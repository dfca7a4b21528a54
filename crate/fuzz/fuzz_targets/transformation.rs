#![no_main]

use libfuzzer_sys::fuzz_target;
use monoid_tc::concrete::Transformation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = Transformation::parse(text) {
        assert_eq!(Transformation::parse(&t.to_string()).unwrap(), t);
    }
});

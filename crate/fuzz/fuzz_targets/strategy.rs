#![no_main]

use libfuzzer_sys::fuzz_target;
use monoid_tc::{CongruenceKind, Strategy};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = text.parse::<Strategy>() {
        assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
    }
    if let Ok(k) = text.parse::<CongruenceKind>() {
        assert_eq!(k.as_str().parse::<CongruenceKind>().unwrap(), k);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use monoid_tc::Alphabet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::standard(4);
    if let Ok(w) = alphabet.parse_word(text) {
        let shown = alphabet.format_word(&w);
        assert_eq!(alphabet.parse_word(&shown).unwrap(), w);
    }
});

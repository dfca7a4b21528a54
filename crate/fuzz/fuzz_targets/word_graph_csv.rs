#![no_main]

use libfuzzer_sys::fuzz_target;
use monoid_tc::WordGraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = WordGraph::from_csv(text) {
        assert!(g.preimages_consistent());
        let back = WordGraph::from_csv(&g.to_csv()).unwrap();
        assert_eq!(back.edges(), g.edges());
    }
});

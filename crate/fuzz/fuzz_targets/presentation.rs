#![no_main]

use libfuzzer_sys::fuzz_target;
use monoid_tc::{parse_presentation, Limits, Session, Strategy};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = parse_presentation(text) else {
        return;
    };
    // a short capped run exercises the engine on whatever parsed
    let Ok(mut sess) = Session::new(&p.presentation, &p.pairs, p.kind) else {
        return;
    };
    sess.set_limits(Limits {
        max_nodes: 200,
        max_steps: 20_000,
    });
    let r = sess
        .run(Strategy::Hlt)
        .expect("hlt never rejects its input");
    if r.is_complete() {
        let g = r.graph();
        assert!(g.is_complete());
        assert!(g.is_compatible(p.presentation.relations()));
    }
});

#![allow(dead_code)]

pub mod invariants;

use monoid_tc::concrete::{right_cayley, BooleanMat, CayleyResult};
use monoid_tc::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const STRATEGIES: [Strategy; 4] = [
    Strategy::Hlt,
    Strategy::Felsch,
    Strategy::FelschModified,
    Strategy::Alternating { hlt: 1, felsch: 1 },
];

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn load(name: &str) -> ParsedPresentation {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    parse_presentation(&text).unwrap()
}

pub fn parse(text: &str) -> ParsedPresentation {
    parse_presentation(text).unwrap()
}

/// `a`, `b`, `c` as letters 0, 1, 2.
pub fn w(s: &str) -> Word {
    Alphabet::standard(3)
        .parse_word(if s.is_empty() { "1" } else { s })
        .unwrap()
}

pub fn ex51_generators() -> Vec<BooleanMat> {
    ["110;011;101", "110;010;001", "101;110;011"]
        .iter()
        .map(|s| BooleanMat::parse(s).unwrap())
        .collect()
}

pub fn ex51_cayley() -> CayleyResult<BooleanMat> {
    right_cayley(&ex51_generators(), 100).unwrap()
}

/// The presentation of the boolean matrix monoid, relations in the order
/// `ac = a^2, b^2 = b, ca = a^2, cb = bc, c^2 = a^2, a^3 = a^2, aba = a^2`.
pub fn ex62() -> ParsedPresentation {
    load("ex62.pres")
}

pub fn run(
    p: &Presentation,
    s: &GeneratingPairs,
    kind: CongruenceKind,
    st: Strategy,
) -> EnumerationResult {
    let mut sess = Session::new(p, s, kind).unwrap();
    sess.run(st).unwrap()
}

pub fn random_word(rng: &mut ChaCha8Rng, k: usize, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}

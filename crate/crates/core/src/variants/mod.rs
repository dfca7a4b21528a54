//! Monoid-with-zero enumeration, Rees congruences, and Stephen's procedure.

mod stephen;

pub use stephen::{StephenGraph, StephenStatus};

use crate::enumerator::{EnumerationResult, Limits, Session, Strategy};
use crate::error::{Error, Result};
use crate::presentation::{CongruenceKind, GeneratingPairs, Presentation, Relation, Word};

/// Enumerates a presentation whose zero letter is handled structurally: a
/// node ω carrying loops on every letter receives the zero edge of every
/// node. The result's [`EnumerationResult::zero_class`] is ω's class.
pub fn run_with_zero(
    p: &Presentation,
    s: &GeneratingPairs,
    kind: CongruenceKind,
    strategy: Strategy,
    limits: Limits,
) -> Result<EnumerationResult> {
    if !p.has_zero() {
        return Err(Error::InvalidArgument(
            "the presentation has no zero letter".into(),
        ));
    }
    let mut sess = Session::new(p, s, kind)?;
    sess.set_limits(limits);
    sess.run(strategy)
}

/// Enumerates the Rees congruence of the ideal generated by `ideal` (a
/// right ideal for `kind` right, two-sided for `kind` two-sided): every
/// generator is identified with the zero. A zero letter is adjoined when
/// `p` has none; it is the last letter.
pub fn run_rees(
    p: &Presentation,
    ideal: &[Word],
    kind: CongruenceKind,
    strategy: Strategy,
    limits: Limits,
) -> Result<EnumerationResult> {
    let p = with_zero_letter(p)?;
    let z = p.zero().expect("zero present");
    for w in ideal {
        w.validate(p.alphabet_size())?;
    }
    let pairs = GeneratingPairs::new(
        ideal
            .iter()
            .map(|w| Relation::new(w.clone(), Word::new(vec![z])))
            .collect(),
    );
    run_with_zero(&p, &pairs, kind, strategy, limits)
}

/// `p` itself if it has a zero letter, otherwise `p` over one more letter
/// marked as the zero.
pub fn with_zero_letter(p: &Presentation) -> Result<Presentation> {
    if p.has_zero() {
        return Ok(p.clone());
    }
    let k = p.alphabet_size();
    Presentation::new(k + 1, p.relations().to_vec())?.with_zero(k)
}

//! Zero handling, Rees congruences and Stephen's procedure.

mod common;

use std::collections::BTreeSet;

use common::*;
use monoid_tc::concrete::Element;
use monoid_tc::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zero_pres() -> ParsedPresentation {
    load("zero.pres")
}

#[test]
fn structural_zero_matches_explicit_zero() {
    let p = zero_pres();
    let z = p.presentation.zero().unwrap();
    assert_eq!(z, 2);
    let explicit = p.presentation.expand_zero();
    assert!(!explicit.has_zero());
    assert_eq!(
        explicit.relations().len(),
        p.presentation.relations().len() + 5
    );
    let plain = run(&explicit, &p.pairs, p.kind, Strategy::Hlt);
    for st in STRATEGIES {
        let r = run_with_zero(&p.presentation, &p.pairs, p.kind, st, Limits::default()).unwrap();
        assert_eq!(r.class_count(), plain.class_count());
        assert!(r.graph().isomorphic(plain.graph()).unwrap());
        let zc = r.zero_class().unwrap();
        assert_eq!(r.class_of(&[z]).unwrap(), zc);
        for a in 0..3 {
            assert_eq!(r.graph().target(zc, a), Some(zc));
        }
    }
}

#[test]
fn zero_absorbs() {
    let p = zero_pres();
    let r = run_with_zero(
        &p.presentation,
        &p.pairs,
        p.kind,
        Strategy::Felsch,
        Limits::default(),
    )
    .unwrap();
    let zc = r.zero_class().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..500 {
        let x = random_word(&mut rng, 3, 5);
        let y = random_word(&mut rng, 3, 5);
        let xzy = x.concat(&[2]).concat(&y);
        assert_eq!(r.class_of(&xzy).unwrap(), zc);
    }
    assert_eq!(r.class_of(&[0, 1]).unwrap(), zc);
    assert_ne!(r.class_of(&[1, 0]).unwrap(), zc);
}

#[test]
fn omega_keeps_only_loops() {
    let p = zero_pres();
    let mut sess = Session::new(&p.presentation, &p.pairs, p.kind).unwrap();
    assert_eq!(sess.zero_node(), Some(1));
    assert_eq!(sess.zero_letter(), Some(2));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let check = |sess: &mut Session| {
        let omega = sess.zero_node().unwrap();
        for a in 0..3 {
            assert_eq!(sess.graph().target(omega, a), Some(omega));
        }
        for n in sess.graph().active_nodes() {
            assert_eq!(sess.graph().target(n, 2), Some(omega));
        }
    };
    for _ in 0..300 {
        let active: Vec<_> = sess.graph().active_nodes().collect();
        let n = active[rng.gen_range(0..active.len())];
        match rng.gen_range(0..4) {
            0 | 1 => {
                let a = rng.gen_range(0..3);
                if sess.graph().target(n, a).is_none() {
                    sess.tc1(n, a).unwrap();
                }
            }
            2 => {
                let r = rng.gen_range(0..sess.relations().len());
                sess.tc2(n, r).unwrap();
            }
            _ => sess.tc3().unwrap(),
        }
        check(&mut sess);
    }
    let r = sess.run_hlt();
    assert!(r.is_complete());
    check(&mut sess);
}

#[test]
fn zero_requires_zero_letter() {
    let p = ex62();
    assert!(matches!(
        run_with_zero(
            &p.presentation,
            &p.pairs,
            p.kind,
            Strategy::Hlt,
            Limits::default()
        ),
        Err(Error::InvalidArgument(_))
    ));
    let z = zero_pres();
    let start = WordGraph::trivial(3);
    assert!(Session::with_start(&z.presentation, &z.pairs, CongruenceKind::Right, start).is_err());
}

/// Elements of the right (or two-sided) ideal generated by `gens`, as
/// Cayley graph nodes.
fn ideal_nodes(
    c: &concrete::CayleyResult<concrete::BooleanMat>,
    gens: &[Word],
    two_sided: bool,
) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<NodeId> = gens
        .iter()
        .map(|w| c.graph.follow_full(0, w).unwrap())
        .collect();
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        for (a, g) in c.generators.iter().enumerate() {
            stack.push(c.graph.target(x, a).unwrap());
            if two_sided {
                stack.push(c.node_of(&g.mul(&c.elements[x])).unwrap());
            }
        }
    }
    seen
}

#[test]
fn rees_classes_against_ideal_oracle() {
    let p = ex62();
    let c = ex51_cayley();
    let mut rng = ChaCha8Rng::seed_from_u64(92);
    for _ in 0..40 {
        let n = rng.gen_range(1..=2);
        let gens: Vec<Word> = (0..n).map(|_| random_word(&mut rng, 3, 3)).collect();
        for kind in [CongruenceKind::Right, CongruenceKind::TwoSided] {
            let ideal = ideal_nodes(&c, &gens, kind == CongruenceKind::TwoSided);
            let r = run_rees(
                &p.presentation,
                &gens,
                kind,
                Strategy::Hlt,
                Limits::default(),
            )
            .unwrap();
            // the adjoined zero joins the ideal's class
            assert_eq!(r.class_count(), Some(9 - ideal.len() + 1));
            let zc = r.zero_class().unwrap();
            let mut outside = BTreeSet::new();
            for (x, rep) in c.reps.iter().enumerate() {
                let cls = r.class_of(rep).unwrap();
                if ideal.contains(&x) {
                    assert_eq!(cls, zc);
                } else {
                    assert_ne!(cls, zc);
                    assert!(outside.insert(cls), "class of {rep:?} is not a singleton");
                }
            }
        }
    }
}

#[test]
fn rees_adjoins_a_zero_letter_last() {
    let p = ex62();
    let with_zero = variants::with_zero_letter(&p.presentation).unwrap();
    assert_eq!(with_zero.alphabet_size(), 4);
    assert_eq!(with_zero.zero(), Some(3));
    let z = zero_pres();
    assert_eq!(
        variants::with_zero_letter(&z.presentation).unwrap(),
        z.presentation
    );
    // an ideal word over the adjoined letter is accepted
    let r = run_rees(
        &p.presentation,
        &[Word::new(vec![3])],
        CongruenceKind::Right,
        Strategy::Hlt,
        Limits::default(),
    )
    .unwrap();
    assert_eq!(r.class_count(), Some(10));
    assert!(run_rees(
        &p.presentation,
        &[Word::new(vec![4])],
        CongruenceKind::Right,
        Strategy::Hlt,
        Limits::default()
    )
    .is_err());
}

fn stephen_agrees(name: &str, cases: usize, max_len: usize, seed: u64) {
    let p = load(name);
    let full = run(
        &p.presentation,
        &GeneratingPairs::default(),
        CongruenceKind::Right,
        Strategy::Hlt,
    );
    let k = p.presentation.alphabet_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let u = random_word(&mut rng, k, max_len);
        let w = random_word(&mut rng, k, max_len);
        let mut s = StephenGraph::build(&p.presentation, &w).unwrap();
        assert_eq!(s.run(Limits::default()), StephenStatus::Closed);
        let expected = full.class_of(&u).unwrap() == full.class_of(&w).unwrap();
        assert_eq!(s.accepts(&u).unwrap(), expected, "{name}: u={u:?} w={w:?}");
        assert!(s.accepts(&w).unwrap());
    }
}

#[test]
fn stephen_matches_enumeration() {
    stephen_agrees("ex62.pres", 200, 6, 1);
    stephen_agrees("bool9.pres", 200, 6, 2);
    stephen_agrees("felsch15.pres", 200, 6, 3);
}

#[test]
fn stephen_language_only_grows() {
    let p = load("felsch15.pres");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let samples: Vec<Word> = (0..300).map(|_| random_word(&mut rng, 2, 7)).collect();
    for _ in 0..20 {
        let w = random_word(&mut rng, 2, 6);
        let mut s = StephenGraph::build(&p.presentation, &w).unwrap();
        let mut accepted = BTreeSet::new();
        loop {
            let acc = s.accept_node();
            let now: BTreeSet<usize> = samples
                .iter()
                .enumerate()
                .filter(|(_, u)| s.graph().follow_full(0, u) == Some(acc))
                .map(|(i, _)| i)
                .collect();
            assert!(accepted.is_subset(&now));
            accepted = now;
            if s.pass() != StephenStatus::Open {
                break;
            }
        }
        assert!(s.is_closed());
    }
}

#[test]
fn stephen_refuses_open_graphs() {
    let p = load("felsch15.pres");
    let mut s = StephenGraph::build(&p.presentation, &Word::new(vec![0, 1, 0])).unwrap();
    assert_eq!(s.status(), StephenStatus::Open);
    assert_eq!(s.accepts(&[0]), Err(Error::Incomplete));
    assert_eq!(
        s.run(Limits {
            max_nodes: 5,
            ..Limits::default()
        }),
        StephenStatus::NodeLimit
    );
    assert_eq!(s.accepts(&[0]), Err(Error::Incomplete));
    // free monoid: the linear graph is already closed
    let free = Presentation::new(2, vec![]).unwrap();
    let mut s = StephenGraph::build(&free, &Word::new(vec![0, 1])).unwrap();
    assert!(s.is_closed());
    assert!(s.accepts(&[0, 1]).unwrap());
    assert!(!s.accepts(&[1, 0]).unwrap());
    assert!(s.accepts(&[2]).is_err());
}

#[test]
fn left_congruence_reverses_words() {
    let p = ex62();
    let c = ex51_cayley();
    let s = GeneratingPairs::new(vec![Relation::new(w("a"), w("c"))]);
    let labels = concrete::congruence_closure_oracle(&c, &s, CongruenceKind::Left).unwrap();
    for st in STRATEGIES {
        let r = run(&p.presentation, &s, CongruenceKind::Left, st);
        assert_eq!(r.class_count(), Some(concrete::class_count(&labels)));
        for x in 0..9 {
            for y in 0..9 {
                let same = r.class_of(&c.reps[x]).unwrap() == r.class_of(&c.reps[y]).unwrap();
                assert_eq!(same, labels[x] == labels[y]);
            }
        }
    }
}

//! Generators and checks shared by the property tests and the acceptance
//! run.

use std::collections::BTreeSet;

use monoid_tc::Strategy as Plan;
use monoid_tc::*;
use proptest::prelude::*;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngSeed, TestCaseError};

use super::ex62;

pub fn config(seed: u64) -> Config {
    Config {
        cases: 1000,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// A graph on `n` nodes over `k` letters; each edge is present with
/// probability about 3/4.
pub fn arb_graph(max_nodes: usize, max_k: usize) -> impl Strategy<Value = WordGraph> {
    (1..=max_nodes, 1..=max_k)
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                Just(k),
                proptest::collection::vec(proptest::option::weighted(0.75, 0..n), n * k),
            )
        })
        .prop_map(|(n, k, ts)| {
            let edges: Vec<_> = ts
                .iter()
                .enumerate()
                .filter_map(|(i, t)| t.map(|t| (i / k, i % k, t)))
                .collect();
            WordGraph::from_edges(k, n, &edges).unwrap()
        })
}

pub fn arb_complete_graph(max_nodes: usize, max_k: usize) -> impl Strategy<Value = WordGraph> {
    (1..=max_nodes, 1..=max_k)
        .prop_flat_map(|(n, k)| (Just(n), Just(k), proptest::collection::vec(0..n, n * k)))
        .prop_map(|(n, k, ts)| {
            let edges: Vec<_> = ts
                .iter()
                .enumerate()
                .map(|(i, &t)| (i / k, i % k, t))
                .collect();
            WordGraph::from_edges(k, n, &edges).unwrap()
        })
}

pub fn arb_pairs(n: usize, max: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((0..n, 0..n), 0..=max)
}

pub fn arb_word(k: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(0..k, 0..=max_len)
}

/// Nodes reachable from 0 by plain search.
pub fn reachable(g: &WordGraph) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::from([0]);
    let mut stack = vec![0];
    while let Some(n) = stack.pop() {
        for a in 0..g.alphabet_size() {
            if let Some(t) = g.target(n, a) {
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
    seen
}

/// Every edge `(min α, a, min β)` of the quotient as a relation, before
/// any edge is dropped.
pub fn full_quotient_edges(
    g: &WordGraph,
    uf: &mut UnionFind,
) -> BTreeSet<(NodeId, Letter, NodeId)> {
    g.edges()
        .into_iter()
        .map(|(s, a, t)| (uf.find(s), a, uf.find(t)))
        .collect()
}

/// Merges coincidences into `uf` until the quotient is deterministic.
pub fn close(g: &WordGraph, uf: &mut UnionFind) -> WordGraph {
    loop {
        let q = g.quotient(uf);
        if q.coincidences.is_empty() {
            return q.graph;
        }
        for (x, y) in q.coincidences {
            uf.union(x, y);
        }
    }
}

/// Random finite-looking presentation on two letters: power relations for
/// each letter plus one or two random relations.
pub fn arb_presentation() -> impl Strategy<Value = Presentation> {
    (
        1usize..4,
        1usize..4,
        proptest::collection::vec((arb_word(2, 4), arb_word(2, 4)), 1..=2),
    )
        .prop_map(|(i, j, extra)| {
            let mut rels = vec![
                Relation::new(vec![0; i + 1], vec![0; i.min(2)]),
                Relation::new(vec![1; j + 1], vec![1; j.min(2)]),
            ];
            rels.extend(extra.into_iter().map(|(u, v)| Relation::new(u, v)));
            Presentation::new(2, rels).unwrap()
        })
}

pub fn capped_run(
    p: &Presentation,
    s: &GeneratingPairs,
    kind: CongruenceKind,
    st: Plan,
) -> EnumerationResult {
    let mut sess = Session::new(p, s, kind).unwrap();
    sess.set_limits(Limits {
        max_nodes: 2000,
        max_steps: 200_000,
    });
    sess.run(st).unwrap()
}

#[derive(Debug, Clone)]
pub enum Op {
    Tc1(usize, Letter),
    Tc2(usize, usize),
    Tc3,
    Deductions,
}

pub fn arb_ops() -> impl Strategy<Value = Vec<Op>> {
    let op = prop_oneof![
        3 => (0usize..64, 0usize..3).prop_map(|(n, a)| Op::Tc1(n, a)),
        3 => (0usize..64, 0usize..7).prop_map(|(n, r)| Op::Tc2(n, r)),
        1 => Just(Op::Tc3),
        1 => Just(Op::Deductions),
    ];
    proptest::collection::vec(op, 0..60)
}

/// Applies `ops` to a session on the boolean matrix presentation, mapping
/// node indices onto active nodes. Returns the ids handed out by TC1.
pub fn apply_ops(sess: &mut Session, ops: &[Op]) -> Vec<NodeId> {
    let mut ids = Vec::new();
    for op in ops {
        let active: Vec<_> = sess.graph().active_nodes().collect();
        match *op {
            Op::Tc1(i, a) => {
                let n = active[i % active.len()];
                if sess.graph().target(n, a).is_none() {
                    ids.push(sess.tc1(n, a).unwrap());
                }
            }
            Op::Tc2(i, r) => {
                let n = active[i % active.len()];
                sess.tc2(n, r).unwrap();
            }
            Op::Tc3 => sess.tc3().unwrap(),
            Op::Deductions => sess.process_deductions().unwrap(),
        }
    }
    ids
}

pub type Check = Result<(), TestCaseError>;

pub fn arb_composition(
) -> impl Strategy<Value = (WordGraph, Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    arb_graph(8, 3).prop_flat_map(|g| {
        let n = g.id_bound();
        (Just(g), arb_pairs(n, 3), arb_pairs(n, 3))
    })
}

/// Quotienting by κ and then κ′ agrees with quotienting by their join.
pub fn check_quotient_composition(
    (g, p1, p2): (WordGraph, Vec<(usize, usize)>, Vec<(usize, usize)>),
) -> Check {
    let n = g.id_bound();
    let mut k1 = UnionFind::new(n);
    for &(x, y) in &p1 {
        k1.union(x, y);
    }
    let q1 = g.quotient(&mut k1);
    // the second partition lives on the labels of the first quotient
    let mut k2 = UnionFind::new(n);
    let mut joined = UnionFind::new(n);
    for x in 0..n {
        joined.union(x, k1.find(x));
    }
    for &(x, y) in &p2 {
        let (x, y) = (k1.find(x), k1.find(y));
        k2.union(x, y);
        joined.union(x, y);
    }
    let q2 = q1.graph.quotient(&mut k2);
    let direct = g.quotient(&mut joined);
    prop_assert_eq!(
        q2.graph.active_nodes().collect::<Vec<_>>(),
        direct.graph.active_nodes().collect::<Vec<_>>()
    );
    let full = full_quotient_edges(&g, &mut joined);
    for e in q2.graph.edges() {
        prop_assert!(full.contains(&e));
    }
    // both routes generate the same closure
    let mut via_two = UnionFind::new(n);
    let mut via_one = UnionFind::new(n);
    for x in 0..n {
        via_two.union(x, joined.find(x));
        via_one.union(x, joined.find(x));
    }
    for &(x, y) in q1.coincidences.iter().chain(&q2.coincidences) {
        via_two.union(x, y);
    }
    for &(x, y) in &direct.coincidences {
        via_one.union(x, y);
    }
    let a = close(&g, &mut via_two);
    let b = close(&g, &mut via_one);
    prop_assert_eq!(a, b);
    if q1.coincidences.is_empty() && q2.coincidences.is_empty() {
        prop_assert!(direct.coincidences.is_empty());
        prop_assert_eq!(q2.graph, direct.graph);
    }
    Ok(())
}

/// Random TC1/TC2/TC3 sequences keep every node reachable, hand out
/// increasing ids and never leave two targets for one edge.
pub fn check_session_ops(ops: Vec<Op>) -> Check {
    let p = ex62();
    let mut sess = Session::new(&p.presentation, &p.pairs, p.kind).unwrap();
    let start = sess.stats().tc1;
    let ids = apply_ops(&mut sess, &ops);
    for pair in ids.windows(2) {
        prop_assert!(pair[0] < pair[1]);
    }
    let g = sess.graph();
    prop_assert!(g.preimages_consistent());
    prop_assert_eq!(reachable(g), g.active_nodes().collect::<BTreeSet<_>>());
    prop_assert!(g.num_active() as u64 <= sess.stats().nodes_defined + 1);
    prop_assert_eq!(sess.stats().tc1, start + ids.len() as u64);
    // finishing from any reachable state gives the same answer
    let r = sess.run_hlt();
    prop_assert_eq!(r.class_count(), Some(4));
    Ok(())
}

pub fn arb_run() -> impl Strategy<Value = (Presentation, Plan, Vec<(Vec<Letter>, Vec<Letter>)>)> {
    (
        arb_presentation(),
        prop_oneof![
            Just(Plan::Hlt),
            Just(Plan::Felsch),
            Just(Plan::FelschModified),
            Just(Plan::Alternating { hlt: 1, felsch: 1 }),
        ],
        proptest::collection::vec((arb_word(2, 5), arb_word(2, 5)), 10),
    )
}

/// Repeat runs agree and completed graphs satisfy the right-action law.
pub fn check_enumeration(
    (p, st, uv): (Presentation, Plan, Vec<(Vec<Letter>, Vec<Letter>)>),
) -> Check {
    let s = GeneratingPairs::default();
    let r = capped_run(&p, &s, CongruenceKind::Right, st);
    let again = capped_run(&p, &s, CongruenceKind::Right, st);
    prop_assert_eq!(r.status(), again.status());
    prop_assert_eq!(r.graph(), again.graph());
    prop_assert!(r.stats().active <= r.stats().peak);
    if r.is_complete() {
        let g = r.graph();
        prop_assert!(g.is_complete());
        prop_assert!(g.is_compatible(p.relations()));
        prop_assert_eq!(reachable(g).len(), g.num_active());
        for (u, v) in &uv {
            let x = g.follow_full(0, u).unwrap();
            let uv: Vec<_> = u.iter().chain(v).copied().collect();
            prop_assert_eq!(g.follow_full(x, v), g.follow_full(0, &uv));
        }
        let nf = r.normal_forms().unwrap();
        for (c, w) in nf.iter().enumerate() {
            prop_assert_eq!(r.class_of(w).unwrap(), c);
        }
        for (u, _) in &uv {
            let c = r.class_of(u).unwrap();
            prop_assert!(!shortlex_less(u, &nf[c], &[0, 1]));
        }
        let h = capped_run(&p, &s, CongruenceKind::Right, Plan::Hlt);
        if h.is_complete() {
            prop_assert!(g.isomorphic(h.graph()).unwrap());
        }
    } else {
        prop_assert_eq!(r.class_count(), None);
    }
    Ok(())
}

/// Normal forms are the short-lex least words of their classes.
pub fn check_normal_forms(p: Presentation) -> Check {
    let r = capped_run(
        &p,
        &GeneratingPairs::default(),
        CongruenceKind::Right,
        Plan::Hlt,
    );
    prop_assume!(r.is_complete());
    let nf = r.normal_forms().unwrap();
    for pair in nf.windows(2) {
        prop_assert!(shortlex_less(&pair[0], &pair[1], &[0, 1]));
    }
    // exhaustive: the first word in short-lex order to reach a class
    let longest = nf.iter().map(|w| w.len()).max().unwrap();
    let mut best: Vec<Option<Vec<Letter>>> = vec![None; nf.len()];
    let mut layer = vec![Vec::new()];
    for _ in 0..=longest.min(8) {
        let mut next = Vec::new();
        for u in layer {
            let c = r.class_of(&u).unwrap();
            if best[c].is_none() {
                best[c] = Some(u.clone());
            }
            for a in 0..2 {
                let mut v = u.clone();
                v.push(a);
                next.push(v);
            }
        }
        layer = next;
    }
    for (c, w) in nf.iter().enumerate() {
        if w.len() <= 8 {
            prop_assert_eq!(best[c].as_deref(), Some(&w[..]));
        }
    }
    Ok(())
}

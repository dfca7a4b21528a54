//! Enumeration sessions: the primitive steps TC1, TC2, TC3, deduction
//! processing, and the strategies built from them.

mod result;
mod strategy;

use std::collections::VecDeque;
use std::sync::Arc;

pub use result::{EnumerationResult, Status};
pub use strategy::Strategy;

use crate::error::{Error, Result};
use crate::felsch_tree::FelschTree;
use crate::presentation::{CongruenceKind, GeneratingPairs, Letter, Presentation, Relation};
use crate::union_find::UnionFind;
use crate::word_graph::{NodeId, WordGraph, WordOrder, DEFAULT_NODE_CAP, UNDEF};

/// Default cap on the deduction stack before falling back to a full sweep.
pub const DEFAULT_DEDUCTION_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of simultaneously active nodes.
    pub max_nodes: usize,
    /// Largest number of TC1 + TC2 + TC3 applications.
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: DEFAULT_NODE_CAP,
            max_steps: u64::MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub tc1: u64,
    pub tc2: u64,
    /// Node merges performed while processing coincidences.
    pub tc3: u64,
    pub steps: u64,
    pub nodes_defined: u64,
    pub active: usize,
    pub peak: usize,
}

/// What a single TC2 application did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tc2Outcome {
    /// One side was traced fully and the other up to its last letter; the
    /// missing last edge was added.
    EdgeDefined,
    /// Both sides were traced to different nodes; the pair was queued.
    CoincidenceRecorded,
    /// Neither side could be traced far enough.
    Incomplete,
    /// Both sides already end at the same node.
    AlreadyCompatible,
}

/// Why a run stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    NodeLimit,
    StepLimit,
}

pub(crate) type Step<T = ()> = std::result::Result<T, Stop>;

#[derive(Debug, Clone, Copy)]
struct ZeroState {
    letter: Letter,
    omega: NodeId,
}

/// A single enumeration in progress.
#[derive(Debug, Clone)]
pub struct Session {
    alphabet_size: usize,
    kind: CongruenceKind,
    relations: Arc<Vec<Relation>>,
    pairs: Arc<Vec<Relation>>,
    graph: WordGraph,
    partition: UnionFind,
    coincidences: Vec<(NodeId, NodeId)>,
    deductions: Vec<(NodeId, Letter)>,
    track_deductions: bool,
    deduction_cap: usize,
    deduction_overflow: bool,
    tree: Option<Arc<FelschTree>>,
    backtrack: Vec<(NodeId, usize)>,
    felsch_cursor: usize,
    hlt_cursor: NodeId,
    limits: Limits,
    stats: Stats,
    zero: Option<ZeroState>,
    order: WordOrder,
}

impl Session {
    /// A session starting from the trivial word graph.
    pub fn new(p: &Presentation, s: &GeneratingPairs, kind: CongruenceKind) -> Result<Self> {
        Self::build(p, s, kind, None)
    }

    /// A session starting from `start`, whose root paths must already lie
    /// in the congruence (a right Cayley graph of the monoid, for example).
    /// Not available for left congruences.
    pub fn with_start(
        p: &Presentation,
        s: &GeneratingPairs,
        kind: CongruenceKind,
        start: WordGraph,
    ) -> Result<Self> {
        Self::build(p, s, kind, Some(start))
    }

    fn build(
        p: &Presentation,
        s: &GeneratingPairs,
        kind: CongruenceKind,
        start: Option<WordGraph>,
    ) -> Result<Self> {
        let k = p.alphabet_size();
        s.validate(k)?;
        let (relations, pairs) = match kind {
            CongruenceKind::Right => (p.relations().to_vec(), s.pairs.clone()),
            CongruenceKind::Left => {
                if start.is_some() {
                    return Err(Error::InvalidArgument(
                        "start graphs are not supported for left congruences".into(),
                    ));
                }
                let (p, s) = crate::presentation::reverse_presentation(p, s);
                (p.relations().to_vec(), s.pairs)
            }
            CongruenceKind::TwoSided => {
                let mut r = p.relations().to_vec();
                r.extend(s.pairs.iter().cloned());
                (r, Vec::new())
            }
        };
        let graph = match start {
            Some(g) => {
                if p.has_zero() {
                    return Err(Error::InvalidArgument(
                        "start graphs are not supported with a zero letter".into(),
                    ));
                }
                check_start(&g, k)?;
                g
            }
            None => WordGraph::trivial(k),
        };
        let mut sess = Session {
            alphabet_size: k,
            kind,
            relations: Arc::new(relations),
            pairs: Arc::new(pairs),
            partition: UnionFind::new(graph.id_bound()),
            stats: Stats {
                active: graph.num_active(),
                peak: graph.num_active(),
                ..Stats::default()
            },
            graph,
            coincidences: Vec::new(),
            deductions: Vec::new(),
            track_deductions: true,
            deduction_cap: DEFAULT_DEDUCTION_CAP,
            deduction_overflow: false,
            tree: None,
            backtrack: Vec::new(),
            felsch_cursor: 0,
            hlt_cursor: 0,
            limits: Limits::default(),
            zero: None,
            order: WordOrder::shortlex(),
        };
        if let Some(z) = p.zero() {
            sess.install_zero(z);
        }
        sess.init_pairs().map_err(|e| sess.stop_error(e))?;
        Ok(sess)
    }

    /// A bare session over an arbitrary graph, used by the Stephen driver.
    pub(crate) fn raw(relations: Vec<Relation>, graph: WordGraph) -> Self {
        Session {
            alphabet_size: graph.alphabet_size(),
            kind: CongruenceKind::Right,
            relations: Arc::new(relations),
            pairs: Arc::new(Vec::new()),
            partition: UnionFind::new(graph.id_bound()),
            stats: Stats {
                active: graph.num_active(),
                peak: graph.num_active(),
                ..Stats::default()
            },
            graph,
            coincidences: Vec::new(),
            deductions: Vec::new(),
            track_deductions: false,
            deduction_cap: DEFAULT_DEDUCTION_CAP,
            deduction_overflow: false,
            tree: None,
            backtrack: Vec::new(),
            felsch_cursor: 0,
            hlt_cursor: 0,
            limits: Limits::default(),
            zero: None,
            order: WordOrder::shortlex(),
        }
    }

    /// Node ω (id 1) with loops on every letter, and a zero edge from every
    /// other node into it.
    fn install_zero(&mut self, z: Letter) {
        let omega = self.graph.push_node();
        self.partition.grow_to(self.graph.id_bound());
        for a in 0..self.alphabet_size {
            self.graph.link(omega, a, omega);
        }
        let nodes: Vec<NodeId> = self.graph.active_nodes().collect();
        for n in nodes {
            if n != omega && self.graph.target(n, z).is_none() {
                self.graph.link(n, z, omega);
                self.deduce(n, z);
            }
        }
        self.zero = Some(ZeroState { letter: z, omega });
        self.note_size();
    }

    /// Steps (a) and (b) of a congruence enumeration: trace both sides of
    /// every pair from 0, then apply TC2 at 0 to every pair.
    fn init_pairs(&mut self) -> Step {
        let pairs = Arc::clone(&self.pairs);
        for p in pairs.iter() {
            self.trace_define(0, &p.lhs)?;
            self.trace_define(0, &p.rhs)?;
        }
        for p in pairs.iter() {
            self.tc2_words(0, &p.lhs, &p.rhs)?;
        }
        Ok(())
    }

    // ----- configuration and inspection -----

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Order used to standardize the graph of a completed run.
    pub fn set_order(&mut self, order: WordOrder) -> Result<()> {
        order.letters(self.alphabet_size)?;
        self.order = order;
        Ok(())
    }

    pub fn set_deduction_cap(&mut self, cap: usize) {
        self.deduction_cap = cap;
    }

    pub fn graph(&self) -> &WordGraph {
        &self.graph
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn kind(&self) -> CongruenceKind {
        self.kind
    }

    /// The relations actually enumerated: reversed for left congruences,
    /// with the pairs appended for two-sided ones.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The pairs traced at the root (empty for two-sided congruences).
    pub fn pairs(&self) -> &[Relation] {
        &self.pairs
    }

    pub fn pending_coincidences(&self) -> &[(NodeId, NodeId)] {
        &self.coincidences
    }

    pub fn pending_deductions(&self) -> &[(NodeId, Letter)] {
        &self.deductions
    }

    /// The node currently representing `node`.
    pub fn find(&mut self, node: NodeId) -> NodeId {
        self.partition.grow_to(self.graph.id_bound());
        self.partition.find(node)
    }

    /// ω's current representative in a session with a zero letter.
    pub fn zero_node(&mut self) -> Option<NodeId> {
        let omega = self.zero?.omega;
        Some(self.find(omega))
    }

    pub fn zero_letter(&self) -> Option<Letter> {
        self.zero.map(|z| z.letter)
    }

    // ----- public primitive steps -----

    /// TC1: adds a fresh node `β` and the edge `(node, letter, β)`.
    pub fn tc1(&mut self, node: NodeId, letter: Letter) -> Result<NodeId> {
        self.check_node_letter(node, letter)?;
        if self.graph.target(node, letter).is_some() {
            return Err(Error::DuplicateEdge { node, letter });
        }
        self.tc1_step(node, letter).map_err(|e| self.stop_error(e))
    }

    /// TC2 at `node` for the relation with index `relation`.
    pub fn tc2(&mut self, node: NodeId, relation: usize) -> Result<Tc2Outcome> {
        if !self.graph.is_active(node) {
            return Err(Error::InactiveNode(node));
        }
        let rels = Arc::clone(&self.relations);
        let r = rels
            .get(relation)
            .ok_or_else(|| Error::InvalidArgument(format!("no relation with index {relation}")))?;
        self.tc2_words(node, &r.lhs, &r.rhs)
            .map_err(|e| self.stop_error(e))
    }

    /// TC3: processes queued coincidences until none remain.
    pub fn tc3(&mut self) -> Result<()> {
        self.tc3_step().map_err(|e| self.stop_error(e))
    }

    /// Pops deductions and re-checks every (node, relation) pair whose
    /// traced paths can pass through the deduced edge.
    pub fn process_deductions(&mut self) -> Result<()> {
        self.process_deductions_step()
            .map_err(|e| self.stop_error(e))
    }

    fn check_node_letter(&self, node: NodeId, letter: Letter) -> Result<()> {
        if letter >= self.alphabet_size {
            return Err(Error::LetterOutOfRange {
                letter,
                alphabet_size: self.alphabet_size,
            });
        }
        if !self.graph.is_active(node) {
            return Err(Error::InactiveNode(node));
        }
        Ok(())
    }

    fn stop_error(&self, stop: Stop) -> Error {
        match stop {
            Stop::NodeLimit => Error::NodeLimit(self.limits.max_nodes),
            Stop::StepLimit => Error::StepLimit(self.limits.max_steps),
        }
    }

    // ----- internals -----

    #[inline]
    fn count_step(&mut self) -> Step {
        if self.stats.steps >= self.limits.max_steps {
            return Err(Stop::StepLimit);
        }
        self.stats.steps += 1;
        Ok(())
    }

    #[inline]
    fn note_size(&mut self) {
        let n = self.graph.num_active();
        self.stats.active = n;
        self.stats.peak = self.stats.peak.max(n);
    }

    #[inline]
    fn deduce(&mut self, node: NodeId, letter: Letter) {
        push_deduction(
            &mut self.deductions,
            &mut self.deduction_overflow,
            self.track_deductions,
            self.deduction_cap,
            node,
            letter,
        );
    }

    pub(crate) fn tc1_step(&mut self, node: NodeId, letter: Letter) -> Step<NodeId> {
        if self.graph.num_active() >= self.limits.max_nodes.min(self.graph.node_cap()) {
            return Err(Stop::NodeLimit);
        }
        self.count_step()?;
        let beta = self.graph.push_node();
        self.partition.grow_to(self.graph.id_bound());
        self.graph.link(node, letter, beta);
        self.deduce(node, letter);
        self.stats.tc1 += 1;
        self.stats.nodes_defined += 1;
        if let Some(z) = self.zero {
            let omega = self.partition.find(z.omega);
            self.graph.link(beta, z.letter, omega);
            self.deduce(beta, z.letter);
        }
        self.note_size();
        Ok(beta)
    }

    /// Follows `w` from `node`, defining missing edges with TC1.
    pub(crate) fn trace_define(&mut self, node: NodeId, w: &[Letter]) -> Step<NodeId> {
        let mut cur = node;
        for &a in w {
            cur = match self.graph.target(cur, a) {
                Some(t) => t,
                None => self.tc1_step(cur, a)?,
            };
        }
        Ok(cur)
    }

    pub(crate) fn tc2_words(
        &mut self,
        node: NodeId,
        u: &[Letter],
        v: &[Letter],
    ) -> Step<Tc2Outcome> {
        self.count_step()?;
        self.stats.tc2 += 1;
        let fu = self.graph.follow(node, u);
        let fv = self.graph.follow(node, v);
        let u_full = fu.prefix_len == u.len();
        let v_full = fv.prefix_len == v.len();
        Ok(match (u_full, v_full) {
            (true, true) => {
                if fu.last_node == fv.last_node {
                    Tc2Outcome::AlreadyCompatible
                } else {
                    self.coincidences.push((fu.last_node, fv.last_node));
                    Tc2Outcome::CoincidenceRecorded
                }
            }
            (true, false) if fv.prefix_len + 1 == v.len() => {
                self.graph
                    .link(fv.last_node, v[fv.prefix_len], fu.last_node);
                self.deduce(fv.last_node, v[fv.prefix_len]);
                Tc2Outcome::EdgeDefined
            }
            (false, true) if fu.prefix_len + 1 == u.len() => {
                self.graph
                    .link(fu.last_node, u[fu.prefix_len], fv.last_node);
                self.deduce(fu.last_node, u[fu.prefix_len]);
                Tc2Outcome::EdgeDefined
            }
            _ => Tc2Outcome::Incomplete,
        })
    }

    /// Merges queued coincidences, always keeping the smaller id.
    pub(crate) fn tc3_step(&mut self) -> Step {
        let k = self.alphabet_size;
        while let Some((x, y)) = self.coincidences.pop() {
            let (x, y) = (self.partition.find(x), self.partition.find(y));
            if x == y {
                continue;
            }
            if let Err(e) = self.count_step() {
                self.coincidences.push((x, y));
                return Err(e);
            }
            self.stats.tc3 += 1;
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            self.partition.union(lo, hi);
            let Session {
                graph,
                deductions,
                deduction_overflow,
                track_deductions,
                deduction_cap,
                coincidences,
                ..
            } = self;
            graph.redirect_into(hi, lo, |s, a| {
                push_deduction(
                    deductions,
                    deduction_overflow,
                    *track_deductions,
                    *deduction_cap,
                    s,
                    a,
                )
            });
            for a in 0..k {
                if let Some(t) = graph.unlink(hi, a) {
                    match graph.target(lo, a) {
                        None => {
                            graph.link(lo, a, t);
                            push_deduction(
                                deductions,
                                deduction_overflow,
                                *track_deductions,
                                *deduction_cap,
                                lo,
                                a,
                            );
                        }
                        Some(u) if u != t => coincidences.push((u, t)),
                        Some(_) => {}
                    }
                }
            }
            graph.deactivate(hi);
        }
        self.note_size();
        Ok(())
    }

    fn felsch_tree(&mut self) -> Arc<FelschTree> {
        if self.tree.is_none() {
            self.tree = Some(Arc::new(FelschTree::build(
                self.alphabet_size,
                &self.relations,
            )));
        }
        Arc::clone(self.tree.as_ref().expect("just built"))
    }

    pub(crate) fn process_deductions_step(&mut self) -> Step {
        let tree = self.felsch_tree();
        let rels = Arc::clone(&self.relations);
        let mut stack = std::mem::take(&mut self.backtrack);
        let result = (|| {
            loop {
                if self.deduction_overflow {
                    self.deduction_overflow = false;
                    self.deductions.clear();
                    self.sweep()?;
                    continue;
                }
                let Some((alpha, a)) = self.deductions.pop() else {
                    break;
                };
                if !self.graph.is_active(alpha) || self.graph.raw_target(alpha, a) == UNDEF {
                    continue;
                }
                let Some(start) = tree.letter_node(a) else {
                    continue;
                };
                stack.clear();
                stack.push((alpha, start));
                while let Some((gamma, v)) = stack.pop() {
                    for &ri in tree.iota(v) {
                        let r = &rels[ri];
                        self.tc2_words(gamma, &r.lhs, &r.rhs)?;
                    }
                    for b in 0..self.alphabet_size {
                        if let Some(bv) = tree.extension(v, b) {
                            stack.extend(self.graph.sources(gamma, b).map(|beta| (beta, bv)));
                        }
                    }
                }
                self.tc3_step()?;
            }
            Ok(())
        })();
        self.backtrack = stack;
        result
    }

    /// TC2 at every active node for every relation, with TC3 after each
    /// node. Returns whether anything changed.
    pub(crate) fn sweep(&mut self) -> Step<bool> {
        let rels = Arc::clone(&self.relations);
        let mut changed = false;
        let mut n = 0;
        while let Some(node) = self.graph.next_active(n) {
            for r in rels.iter() {
                if !self.graph.is_active(node) {
                    break;
                }
                match self.tc2_words(node, &r.lhs, &r.rhs)? {
                    Tc2Outcome::EdgeDefined | Tc2Outcome::CoincidenceRecorded => changed = true,
                    _ => {}
                }
            }
            if !self.coincidences.is_empty() {
                self.tc3_step()?;
            }
            n = node + 1;
        }
        Ok(changed)
    }

    /// The least `(node, letter)` without an edge, scanning from a cursor
    /// that never moves backwards: active nodes never lose edges.
    pub(crate) fn next_gap(&mut self) -> Option<(NodeId, Letter)> {
        let k = self.alphabet_size;
        let end = self.graph.id_bound() * k;
        while self.felsch_cursor < end {
            let (n, a) = (self.felsch_cursor / k, self.felsch_cursor % k);
            if !self.graph.is_active(n) {
                self.felsch_cursor = (n + 1) * k;
                continue;
            }
            if self.graph.raw_target(n, a) == UNDEF {
                return Some((n, a));
            }
            self.felsch_cursor += 1;
        }
        None
    }

    /// The termination test: no pending coincidences, complete, compatible
    /// with the relations everywhere and with the pairs at the root.
    pub fn is_finished(&self) -> bool {
        self.coincidences.is_empty()
            && self.graph.is_complete()
            && self.graph.is_compatible(&self.relations)
            && self.pairs.iter().all(|p| {
                let t = self.graph.follow_full(0, &p.lhs);
                t.is_some() && t == self.graph.follow_full(0, &p.rhs)
            })
    }
}

#[inline]
fn push_deduction(
    stack: &mut Vec<(NodeId, Letter)>,
    overflow: &mut bool,
    track: bool,
    cap: usize,
    node: NodeId,
    letter: Letter,
) {
    if !track || *overflow {
        return;
    }
    if stack.len() >= cap {
        *overflow = true;
        stack.clear();
    } else {
        stack.push((node, letter));
    }
}

/// A start graph must have node 0 and reach every active node from it.
fn check_start(g: &WordGraph, alphabet_size: usize) -> Result<()> {
    if g.alphabet_size() != alphabet_size {
        return Err(Error::MalformedStart(format!(
            "alphabet size {} does not match the presentation's {alphabet_size}",
            g.alphabet_size()
        )));
    }
    if !g.is_active(0) {
        return Err(Error::MalformedStart("node 0 is not active".into()));
    }
    let mut seen = vec![false; g.id_bound()];
    seen[0] = true;
    let mut reached = 1;
    let mut q = VecDeque::from([0]);
    while let Some(n) = q.pop_front() {
        for a in 0..alphabet_size {
            if let Some(t) = g.target(n, a) {
                if !seen[t] {
                    seen[t] = true;
                    reached += 1;
                    q.push_back(t);
                }
            }
        }
    }
    if reached != g.num_active() {
        return Err(Error::MalformedStart(
            "some nodes are not reachable from 0".into(),
        ));
    }
    Ok(())
}

//! Deterministic word graphs with a reverse (preimage) index.
//!
//! Node ids are never reused: removing a node only marks it inactive, and
//! ids become dense again only through [`WordGraph::standardized`].

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::presentation::{rank_of, Alphabet, Letter, Relation, Word};
use crate::union_find::UnionFind;

pub type NodeId = usize;

pub(crate) const UNDEF: u32 = u32::MAX;

/// Default cap on the number of active nodes.
pub const DEFAULT_NODE_CAP: usize = 1 << 24;

/// Where a walk along a word stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FollowResult {
    pub last_node: NodeId,
    /// Number of letters consumed; equals the word length iff the whole word
    /// labels a path.
    pub prefix_len: usize,
}

#[derive(Debug, Clone)]
pub struct WordGraph {
    alphabet_size: usize,
    /// `targets[node * A + a]`
    targets: Vec<u32>,
    /// `preim_head[target * A + a]` is the first source of an `a`-edge into
    /// `target`; the rest are chained through `preim_next`/`preim_prev`,
    /// which are indexed by `source * A + a`.
    preim_head: Vec<u32>,
    preim_next: Vec<u32>,
    preim_prev: Vec<u32>,
    active: Vec<bool>,
    num_active: usize,
    node_cap: usize,
}

impl PartialEq for WordGraph {
    /// Same alphabet, same active ids, same edges.
    fn eq(&self, other: &Self) -> bool {
        self.alphabet_size == other.alphabet_size
            && self.active_nodes().eq(other.active_nodes())
            && self
                .active_nodes()
                .all(|n| (0..self.alphabet_size).all(|a| self.target(n, a) == other.target(n, a)))
    }
}

impl Eq for WordGraph {}

impl WordGraph {
    /// The graph with the single node 0 and no edges.
    pub fn trivial(alphabet_size: usize) -> Self {
        Self::with_nodes(alphabet_size, 1)
    }

    /// Nodes `0..n` and no edges.
    pub fn with_nodes(alphabet_size: usize, n: usize) -> Self {
        let n = n.max(1);
        WordGraph {
            alphabet_size,
            targets: vec![UNDEF; n * alphabet_size],
            preim_head: vec![UNDEF; n * alphabet_size],
            preim_next: vec![UNDEF; n * alphabet_size],
            preim_prev: vec![UNDEF; n * alphabet_size],
            active: vec![true; n],
            num_active: n,
            node_cap: DEFAULT_NODE_CAP,
        }
    }

    /// Nodes `0..n` with the given edges.
    pub fn from_edges(
        alphabet_size: usize,
        n: usize,
        edges: &[(NodeId, Letter, NodeId)],
    ) -> Result<Self> {
        let mut g = Self::with_nodes(alphabet_size, n);
        for &(s, a, t) in edges {
            g.add_edge(s, a, t)?;
        }
        Ok(g)
    }

    pub fn set_node_cap(&mut self, cap: usize) {
        self.node_cap = cap;
    }

    pub fn node_cap(&self) -> usize {
        self.node_cap
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// One past the largest id ever issued.
    pub fn id_bound(&self) -> usize {
        self.active.len()
    }

    pub fn num_active(&self) -> usize {
        self.num_active
    }

    pub fn is_active(&self, node: NodeId) -> bool {
        self.active.get(node).copied().unwrap_or(false)
    }

    pub fn active_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.active
            .iter()
            .enumerate()
            .filter_map(|(i, &live)| live.then_some(i))
    }

    /// The smallest active id `>= from`.
    pub fn next_active(&self, from: NodeId) -> Option<NodeId> {
        (from..self.active.len()).find(|&i| self.active[i])
    }

    /// Adds a node whose id exceeds every id issued so far.
    pub fn add_node(&mut self) -> Result<NodeId> {
        if self.num_active >= self.node_cap {
            return Err(Error::NodeLimit(self.node_cap));
        }
        Ok(self.push_node())
    }

    pub(crate) fn push_node(&mut self) -> NodeId {
        let id = self.active.len();
        let new_len = (id + 1) * self.alphabet_size;
        self.targets.resize(new_len, UNDEF);
        self.preim_head.resize(new_len, UNDEF);
        self.preim_next.resize(new_len, UNDEF);
        self.preim_prev.resize(new_len, UNDEF);
        self.active.push(true);
        self.num_active += 1;
        id
    }

    pub fn add_edge(&mut self, src: NodeId, letter: Letter, tgt: NodeId) -> Result<()> {
        self.check_letter(letter)?;
        for n in [src, tgt] {
            if !self.is_active(n) {
                return Err(Error::InactiveNode(n));
            }
        }
        if self.target(src, letter).is_some() {
            return Err(Error::DuplicateEdge { node: src, letter });
        }
        self.link(src, letter, tgt);
        Ok(())
    }

    fn check_letter(&self, letter: Letter) -> Result<()> {
        if letter >= self.alphabet_size {
            Err(Error::LetterOutOfRange {
                letter,
                alphabet_size: self.alphabet_size,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn target(&self, node: NodeId, letter: Letter) -> Option<NodeId> {
        match self.targets.get(node * self.alphabet_size + letter) {
            Some(&t) if t != UNDEF => Some(t as NodeId),
            _ => None,
        }
    }

    #[inline]
    pub(crate) fn raw_target(&self, node: NodeId, letter: Letter) -> u32 {
        self.targets[node * self.alphabet_size + letter]
    }

    /// Walks from `start` along `w` for as long as edges exist.
    pub fn follow(&self, start: NodeId, w: &[Letter]) -> FollowResult {
        let mut node = start;
        for (i, &a) in w.iter().enumerate() {
            match self.target(node, a) {
                Some(t) => node = t,
                None => {
                    return FollowResult {
                        last_node: node,
                        prefix_len: i,
                    }
                }
            }
        }
        FollowResult {
            last_node: node,
            prefix_len: w.len(),
        }
    }

    /// Target of the path labelled `w` from `start`, if the whole word
    /// labels one.
    #[inline]
    pub fn follow_full(&self, start: NodeId, w: &[Letter]) -> Option<NodeId> {
        let mut node = start as u32;
        for &a in w {
            node = self.targets[node as usize * self.alphabet_size + a];
            if node == UNDEF {
                return None;
            }
        }
        Some(node as NodeId)
    }

    /// Sources of `letter`-edges into `target`.
    pub fn sources(&self, target: NodeId, letter: Letter) -> Sources<'_> {
        let head = if self.is_active(target) {
            self.preim_head[target * self.alphabet_size + letter]
        } else {
            UNDEF
        };
        Sources {
            graph: self,
            letter,
            cur: head,
        }
    }

    /// Every active node has an edge for every letter.
    pub fn is_complete(&self) -> bool {
        self.active_nodes()
            .all(|n| (0..self.alphabet_size).all(|a| self.raw_target(n, a) != UNDEF))
    }

    /// Every relation's sides label paths from every node to a common node.
    pub fn is_compatible(&self, rels: &[Relation]) -> bool {
        self.active_nodes().all(|n| {
            rels.iter().all(|r| match self.follow_full(n, &r.lhs) {
                Some(t) => self.follow_full(n, &r.rhs) == Some(t),
                None => false,
            })
        })
    }

    /// All edges of active nodes, ordered by source then letter.
    pub fn edges(&self) -> Vec<(NodeId, Letter, NodeId)> {
        let mut out = Vec::new();
        for n in self.active_nodes() {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.target(n, a) {
                    out.push((n, a, t));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.active_nodes()
            .map(|n| {
                (0..self.alphabet_size)
                    .filter(|&a| self.raw_target(n, a) != UNDEF)
                    .count()
            })
            .sum()
    }

    // ----- mutation primitives used by the enumerator -----

    /// Sets `src -a-> tgt` and threads `src` onto `tgt`'s preimage list.
    /// The slot must be empty.
    #[inline]
    pub(crate) fn link(&mut self, src: NodeId, a: Letter, tgt: NodeId) {
        let k = self.alphabet_size;
        let slot = src * k + a;
        debug_assert_eq!(self.targets[slot], UNDEF);
        self.targets[slot] = tgt as u32;
        let head = self.preim_head[tgt * k + a];
        self.preim_next[slot] = head;
        self.preim_prev[slot] = UNDEF;
        if head != UNDEF {
            self.preim_prev[head as usize * k + a] = src as u32;
        }
        self.preim_head[tgt * k + a] = src as u32;
    }

    /// Clears the edge `src -a-> ?`, returning the old target.
    #[inline]
    pub(crate) fn unlink(&mut self, src: NodeId, a: Letter) -> Option<NodeId> {
        let k = self.alphabet_size;
        let slot = src * k + a;
        let tgt = self.targets[slot];
        if tgt == UNDEF {
            return None;
        }
        let (prev, next) = (self.preim_prev[slot], self.preim_next[slot]);
        if prev == UNDEF {
            self.preim_head[tgt as usize * k + a] = next;
        } else {
            self.preim_next[prev as usize * k + a] = next;
        }
        if next != UNDEF {
            self.preim_prev[next as usize * k + a] = prev;
        }
        self.targets[slot] = UNDEF;
        self.preim_next[slot] = UNDEF;
        self.preim_prev[slot] = UNDEF;
        Some(tgt as NodeId)
    }

    /// Points every edge into `from` at `to` instead, reporting each
    /// rewritten `(source, letter)`.
    pub(crate) fn redirect_into(
        &mut self,
        from: NodeId,
        to: NodeId,
        mut changed: impl FnMut(NodeId, Letter),
    ) {
        for a in 0..self.alphabet_size {
            loop {
                let src = self.preim_head[from * self.alphabet_size + a];
                if src == UNDEF {
                    break;
                }
                let src = src as NodeId;
                self.unlink(src, a);
                self.link(src, a, to);
                changed(src, a);
            }
        }
    }

    pub(crate) fn deactivate(&mut self, node: NodeId) {
        if self.active[node] {
            self.active[node] = false;
            self.num_active -= 1;
        }
    }

    /// Checks the preimage index against the forward table.
    pub fn preimages_consistent(&self) -> bool {
        let k = self.alphabet_size;
        let mut seen = 0usize;
        for t in self.active_nodes() {
            for a in 0..k {
                let mut prev = UNDEF;
                let mut cur = self.preim_head[t * k + a];
                while cur != UNDEF {
                    let s = cur as usize;
                    if !self.active[s]
                        || self.targets[s * k + a] != t as u32
                        || self.preim_prev[s * k + a] != prev
                    {
                        return false;
                    }
                    seen += 1;
                    prev = cur;
                    cur = self.preim_next[s * k + a];
                }
            }
        }
        seen == self.num_edges()
    }

    // ----- quotients -----

    /// The quotient by `partition`, with every class relabelled by its least
    /// active member. Where two edges `(α, a, β)`, `(α, a, γ)` with `β ≠ γ`
    /// would result, only the first (in source order) is kept and the pair
    /// is returned as a coincidence `(min, max)`.
    pub fn quotient(&self, partition: &mut UnionFind) -> Quotient {
        partition.grow_to(self.id_bound());
        let mut label: HashMap<NodeId, NodeId> = HashMap::new();
        let mut map = vec![UNDEF as NodeId; self.id_bound()];
        for n in self.active_nodes() {
            let r = partition.find(n);
            let m = *label.entry(r).or_insert(n);
            map[n] = m;
        }
        let mut g = WordGraph {
            alphabet_size: self.alphabet_size,
            targets: vec![UNDEF; self.targets.len()],
            preim_head: vec![UNDEF; self.targets.len()],
            preim_next: vec![UNDEF; self.targets.len()],
            preim_prev: vec![UNDEF; self.targets.len()],
            active: vec![false; self.active.len()],
            num_active: 0,
            node_cap: self.node_cap,
        };
        for n in self.active_nodes() {
            if map[n] == n {
                g.active[n] = true;
                g.num_active += 1;
            }
        }
        let mut coincidences = Vec::new();
        for n in self.active_nodes() {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.target(n, a) {
                    let (s, t) = (map[n], map[t]);
                    match g.target(s, a) {
                        None => g.link(s, a, t),
                        Some(u) if u != t => coincidences.push((u.min(t), u.max(t))),
                        Some(_) => {}
                    }
                }
            }
        }
        coincidences.sort_unstable();
        coincidences.dedup();
        Quotient {
            graph: g,
            coincidences,
        }
    }

    // ----- standardization -----

    /// A relabelled copy with nodes `0..n` numbered in the order of their
    /// least access words, plus the map from old ids to new ones. Nodes not
    /// reachable from 0 are dropped.
    pub fn standardized(&self, order: &WordOrder) -> Result<(WordGraph, Vec<Option<NodeId>>)> {
        let letters = order.letters(self.alphabet_size)?;
        let visit = match order.kind {
            OrderKind::ShortLex => self.bfs_order(&letters),
            OrderKind::Lex => self.dfs_order(&letters),
        };
        let mut map = vec![None; self.id_bound()];
        for (new, &old) in visit.iter().enumerate() {
            map[old] = Some(new);
        }
        let mut g = WordGraph::with_nodes(self.alphabet_size, visit.len());
        g.node_cap = self.node_cap;
        for (new, &old) in visit.iter().enumerate() {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.target(old, a) {
                    // every target of a visited node is visited
                    g.link(new, a, map[t].expect("target reachable"));
                }
            }
        }
        Ok((g, map))
    }

    /// Replaces `self` by its standardized form and returns the relabelling.
    pub fn standardize(&mut self, order: &WordOrder) -> Result<Vec<Option<NodeId>>> {
        let (g, map) = self.standardized(order)?;
        *self = g;
        Ok(map)
    }

    fn bfs_order(&self, letters: &[Letter]) -> Vec<NodeId> {
        let mut seen = vec![false; self.id_bound()];
        let mut order = vec![0];
        seen[0] = true;
        let mut q = VecDeque::from([0]);
        while let Some(n) = q.pop_front() {
            for &a in letters {
                if let Some(t) = self.target(n, a) {
                    if !seen[t] {
                        seen[t] = true;
                        order.push(t);
                        q.push_back(t);
                    }
                }
            }
        }
        order
    }

    fn dfs_order(&self, letters: &[Letter]) -> Vec<NodeId> {
        let mut seen = vec![false; self.id_bound()];
        let mut order = vec![0];
        seen[0] = true;
        let mut stack = vec![(0, 0usize)];
        while let Some(&mut (n, ref mut i)) = stack.last_mut() {
            if *i == letters.len() {
                stack.pop();
                continue;
            }
            let a = letters[*i];
            *i += 1;
            if let Some(t) = self.target(n, a) {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                    stack.push((t, 0));
                }
            }
        }
        order
    }

    /// Least access word of every node reachable from 0, in short-lex order
    /// with the natural letter order; indexed by node id.
    pub fn access_words(&self) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.id_bound()];
        words[0] = Some(Word::empty());
        let mut q = VecDeque::from([0]);
        while let Some(n) = q.pop_front() {
            for a in 0..self.alphabet_size {
                if let Some(t) = self.target(n, a) {
                    if words[t].is_none() {
                        let w = words[n].as_ref().expect("visited").concat(&[a]);
                        words[t] = Some(w);
                        q.push_back(t);
                    }
                }
            }
        }
        words
    }

    /// Whether the two complete graphs are isomorphic as rooted word graphs.
    pub fn isomorphic(&self, other: &WordGraph) -> Result<bool> {
        if !self.is_complete() || !other.is_complete() {
            return Err(Error::NotComplete);
        }
        if self.alphabet_size != other.alphabet_size || self.num_active != other.num_active {
            return Ok(false);
        }
        let order = WordOrder::shortlex();
        let (a, _) = self.standardized(&order)?;
        let (b, _) = other.standardized(&order)?;
        Ok(a.num_active == self.num_active && a == b)
    }

    // ----- export -----

    /// Graphviz rendering. `node_labels` is indexed by node id.
    pub fn to_dot(&self, alphabet: Option<&Alphabet>, node_labels: Option<&[String]>) -> String {
        let fallback;
        let alphabet = match alphabet {
            Some(a) => a,
            None => {
                fallback = Alphabet::standard(self.alphabet_size);
                &fallback
            }
        };
        let mut out = String::from("digraph WordGraph {\n  node [shape=circle];\n");
        for n in self.active_nodes() {
            match node_labels.and_then(|l| l.get(n)) {
                Some(label) => {
                    let _ = writeln!(out, "  {n} [label=\"{n}\\n{}\"];", escape_dot(label));
                }
                None => {
                    let _ = writeln!(out, "  {n};");
                }
            }
        }
        for (s, a, t) in self.edges() {
            let name = escape_dot(&alphabet.name(a).to_string());
            let _ = writeln!(out, "  {s} -> {t} [label=\"{name}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// Flat dump of the forward table.
    pub fn to_csv(&self) -> String {
        let mut out = format!("alphabet_size,{}\nnode,letter,target\n", self.alphabet_size);
        for (s, a, t) in self.edges() {
            let _ = writeln!(out, "{s},{a},{t}");
        }
        out
    }

    /// Reads [`WordGraph::to_csv`] output. Node ids absent from every row
    /// (other than 0) are inactive.
    pub fn from_csv(text: &str) -> std::result::Result<WordGraph, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (n1, first) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "empty input"))?;
        let k = first
            .strip_prefix("alphabet_size,")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&k| (1..=crate::presentation::MAX_ALPHABET).contains(&k))
            .ok_or_else(|| ParseError::new(n1, "expected `alphabet_size,<1..=64>`"))?;
        match lines.next() {
            Some((_, "node,letter,target")) => {}
            Some((n, _)) => return Err(ParseError::new(n, "expected `node,letter,target`")),
            None => return Err(ParseError::new(n1, "missing header")),
        }
        let mut rows = Vec::new();
        let mut max_id = 0;
        for (n, line) in lines {
            let mut fields = line.split(',');
            let mut next = |what: &str| -> std::result::Result<usize, ParseError> {
                fields
                    .next()
                    .and_then(|f| f.trim().parse::<usize>().ok())
                    .ok_or_else(|| ParseError::new(n, format!("bad {what}")))
            };
            let (s, a, t) = (next("node")?, next("letter")?, next("target")?);
            if fields.next().is_some() {
                return Err(ParseError::new(n, "too many fields"));
            }
            if a >= k {
                return Err(ParseError::new(n, format!("letter {a} out of range")));
            }
            if s >= DEFAULT_NODE_CAP || t >= DEFAULT_NODE_CAP {
                return Err(ParseError::new(n, "node id too large"));
            }
            max_id = max_id.max(s).max(t);
            rows.push((n, s, a, t));
        }
        let mut g = WordGraph::with_nodes(k, max_id + 1);
        let mut mentioned = vec![false; max_id + 1];
        mentioned[0] = true;
        for &(_, s, _, t) in &rows {
            mentioned[s] = true;
            mentioned[t] = true;
        }
        for (id, &m) in mentioned.iter().enumerate() {
            if !m {
                g.deactivate(id);
            }
        }
        for (n, s, a, t) in rows {
            if g.target(s, a).is_some() {
                return Err(ParseError::new(n, format!("duplicate edge ({s}, {a})")));
            }
            g.link(s, a, t);
        }
        Ok(g)
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Iterator over the sources of edges into a node.
pub struct Sources<'a> {
    graph: &'a WordGraph,
    letter: Letter,
    cur: u32,
}

impl Iterator for Sources<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        if self.cur == UNDEF {
            return None;
        }
        let s = self.cur as NodeId;
        self.cur = self.graph.preim_next[s * self.graph.alphabet_size + self.letter];
        Some(s)
    }
}

/// Result of [`WordGraph::quotient`].
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: WordGraph,
    pub coincidences: Vec<(NodeId, NodeId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderKind {
    /// Shorter words first, ties broken lexicographically.
    #[default]
    ShortLex,
    /// Depth-first: nodes numbered in preorder of a search that tries
    /// letters in order.
    Lex,
}

/// The order used to number nodes during standardization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordOrder {
    pub kind: OrderKind,
    /// Letters from smallest to largest; `None` is the natural order.
    pub letter_order: Option<Vec<Letter>>,
}

impl WordOrder {
    pub fn shortlex() -> Self {
        WordOrder::default()
    }

    pub fn lex() -> Self {
        WordOrder {
            kind: OrderKind::Lex,
            letter_order: None,
        }
    }

    pub fn with_letter_order(mut self, order: Vec<Letter>) -> Self {
        self.letter_order = Some(order);
        self
    }

    pub(crate) fn letters(&self, alphabet_size: usize) -> Result<Vec<Letter>> {
        match &self.letter_order {
            None => Ok((0..alphabet_size).collect()),
            Some(order) => {
                let rank = rank_of(order);
                if order.len() != alphabet_size || rank.contains(&usize::MAX) {
                    return Err(Error::InvalidOrder(format!(
                        "{order:?} is not a permutation of 0..{alphabet_size}"
                    )));
                }
                Ok(order.clone())
            }
        }
    }
}

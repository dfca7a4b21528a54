use super::{Stats, Stop};
use crate::error::{Error, Result};
use crate::presentation::{CongruenceKind, Letter, Word};
use crate::word_graph::{NodeId, WordGraph, WordOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    NodeLimit,
    StepLimit,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::NodeLimit => "node_limit",
            Status::StepLimit => "step_limit",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<Stop> for Status {
    fn from(s: Stop) -> Self {
        match s {
            Stop::NodeLimit => Status::NodeLimit,
            Stop::StepLimit => Status::StepLimit,
        }
    }
}

/// The outcome of a run. On success the graph is standardized and node `i`
/// is class `i`; otherwise it is the partial graph at the point of abort.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    status: Status,
    graph: WordGraph,
    kind: CongruenceKind,
    stats: Stats,
    zero_class: Option<NodeId>,
}

impl EnumerationResult {
    pub(crate) fn complete(
        graph: &WordGraph,
        order: &WordOrder,
        kind: CongruenceKind,
        stats: Stats,
        zero: Option<NodeId>,
    ) -> Self {
        let (g, map) = graph
            .standardized(order)
            .expect("session orders are validated when set");
        EnumerationResult {
            status: Status::Complete,
            graph: g,
            kind,
            stats,
            zero_class: zero.and_then(|z| map[z]),
        }
    }

    pub(crate) fn aborted(
        graph: WordGraph,
        stop: Stop,
        kind: CongruenceKind,
        stats: Stats,
    ) -> Self {
        EnumerationResult {
            status: stop.into(),
            graph,
            kind,
            stats,
            zero_class: None,
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn graph(&self) -> &WordGraph {
        &self.graph
    }

    pub fn into_graph(self) -> WordGraph {
        self.graph
    }

    pub fn kind(&self) -> CongruenceKind {
        self.kind
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// Number of classes; `None` unless the run completed.
    pub fn class_count(&self) -> Option<usize> {
        self.is_complete().then(|| self.graph.num_active())
    }

    /// The class containing ω in a run with a zero letter.
    pub fn zero_class(&self) -> Option<usize> {
        self.zero_class
    }

    /// Index of the class containing `w`. Left congruences are enumerated
    /// on reversed words, so `w` is reversed first.
    pub fn class_of(&self, w: &[Letter]) -> Result<usize> {
        if !self.is_complete() {
            return Err(Error::Incomplete);
        }
        let k = self.graph.alphabet_size();
        if let Some(&a) = w.iter().find(|&&a| a >= k) {
            return Err(Error::LetterOutOfRange {
                letter: a,
                alphabet_size: k,
            });
        }
        let node = if self.kind == CongruenceKind::Left {
            let r: Vec<Letter> = w.iter().rev().copied().collect();
            self.graph.follow_full(0, &r)
        } else {
            self.graph.follow_full(0, w)
        };
        Ok(node.expect("complete graph"))
    }

    /// The short-lex least word in each class, indexed by class. For left
    /// congruences these are the reverses of the least reversed words.
    pub fn normal_forms(&self) -> Result<Vec<Word>> {
        if !self.is_complete() {
            return Err(Error::Incomplete);
        }
        let words = self.graph.access_words();
        Ok(words
            .into_iter()
            .map(|w| {
                let w = w.expect("standardized graphs are reachable");
                if self.kind == CongruenceKind::Left {
                    w.reversed()
                } else {
                    w
                }
            })
            .collect())
    }
}

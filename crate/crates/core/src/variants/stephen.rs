use crate::enumerator::{Limits, Session, Stop};
use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Relation, Word};
use crate::word_graph::{NodeId, WordGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StephenStatus {
    /// No elementary expansion or determination changes the graph.
    Closed,
    /// The last pass changed the graph.
    Open,
    NodeLimit,
    StepLimit,
}

/// A word graph recognising the words equal to `w` in the monoid, grown
/// from the path labelled `w`.
#[derive(Debug, Clone)]
pub struct StephenGraph {
    session: Session,
    word: Word,
    accept: NodeId,
    status: StephenStatus,
}

impl StephenGraph {
    /// The linear graph of `w`: nodes `0..=|w|` and edges `(i, w_i, i+1)`.
    pub fn build(p: &Presentation, w: &Word) -> Result<Self> {
        w.validate(p.alphabet_size())?;
        let mut g = WordGraph::with_nodes(p.alphabet_size(), w.len() + 1);
        for (i, &a) in w.iter().enumerate() {
            g.add_edge(i, a, i + 1)?;
        }
        // both orientations: an expansion may replace either side by the other
        let mut rels = Vec::with_capacity(2 * p.relations().len());
        for r in p.relations() {
            rels.push(r.clone());
            if r.lhs != r.rhs {
                rels.push(Relation::new(r.rhs.clone(), r.lhs.clone()));
            }
        }
        Ok(StephenGraph {
            session: Session::raw(rels, g),
            word: w.clone(),
            accept: w.len(),
            status: if p.relations().is_empty() {
                StephenStatus::Closed
            } else {
                StephenStatus::Open
            },
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn graph(&self) -> &WordGraph {
        self.session.graph()
    }

    /// The current node at the end of the original `w` path.
    pub fn accept_node(&mut self) -> NodeId {
        self.session.find(self.accept)
    }

    pub fn status(&self) -> StephenStatus {
        self.status
    }

    pub fn is_closed(&self) -> bool {
        self.status == StephenStatus::Closed
    }

    pub fn stats(&self) -> crate::enumerator::Stats {
        self.session.stats()
    }

    /// Runs passes until the graph stops changing or a limit is hit.
    pub fn run(&mut self, limits: Limits) -> StephenStatus {
        self.session.set_limits(limits);
        while self.status == StephenStatus::Open {
            self.pass();
        }
        self.status
    }

    /// One pass over the nodes active at its start, in increasing order:
    /// wherever one side of a relation labels a path from the node and the
    /// other does not end at the same place, trace the other side with TC1
    /// up to its last letter and apply TC2, then resolve coincidences.
    pub fn pass(&mut self) -> StephenStatus {
        if self.status != StephenStatus::Open {
            return self.status;
        }
        self.status = match self.pass_step() {
            Ok(true) => StephenStatus::Open,
            Ok(false) => StephenStatus::Closed,
            Err(Stop::NodeLimit) => StephenStatus::NodeLimit,
            Err(Stop::StepLimit) => StephenStatus::StepLimit,
        };
        self.status
    }

    fn pass_step(&mut self) -> std::result::Result<bool, Stop> {
        let rels = self.session.relations().to_vec();
        let mut changed = false;
        // nodes born during this pass wait for the next one, so the pass
        // cannot run away from the low nodes
        let bound = self.session.graph().id_bound();
        let mut from = 0;
        while let Some(alpha) = self
            .session
            .graph()
            .next_active(from)
            .filter(|&n| n < bound)
        {
            for r in &rels {
                if !self.session.graph().is_active(alpha) {
                    break;
                }
                let g = self.session.graph();
                let Some(t) = g.follow_full(alpha, &r.lhs) else {
                    continue;
                };
                if g.follow_full(alpha, &r.rhs) == Some(t) {
                    continue;
                }
                changed = true;
                if let Some((_, v1)) = r.rhs.split_last() {
                    self.session.trace_define(alpha, v1)?;
                }
                self.session.tc2_words(alpha, &r.lhs, &r.rhs)?;
                if !self.session.pending_coincidences().is_empty() {
                    self.session.tc3_step()?;
                }
            }
            from = alpha + 1;
        }
        Ok(changed)
    }

    /// Whether `u` equals the original word in the monoid. Only answered
    /// once the graph is closed.
    pub fn accepts(&mut self, u: &[Letter]) -> Result<bool> {
        if !self.is_closed() {
            return Err(Error::Incomplete);
        }
        let k = self.graph().alphabet_size();
        if let Some(&a) = u.iter().find(|&&a| a >= k) {
            return Err(Error::LetterOutOfRange {
                letter: a,
                alphabet_size: k,
            });
        }
        let accept = self.accept_node();
        Ok(self.graph().follow_full(0, u) == Some(accept))
    }
}

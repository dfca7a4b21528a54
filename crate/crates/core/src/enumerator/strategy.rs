use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{EnumerationResult, Session, Step};
use crate::error::{Error, Result};
use crate::presentation::Relation;
use crate::word_graph::NodeId;

/// How definitions and scans are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Hlt,
    /// Define one edge, then apply TC2 everywhere.
    Felsch,
    /// Define one edge, then re-check only what the Felsch tree points at.
    FelschModified,
    /// `hlt` HLT node steps, then `felsch` Felsch definitions, repeated.
    Alternating {
        hlt: usize,
        felsch: usize,
    },
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Hlt => f.write_str("hlt"),
            Strategy::Felsch => f.write_str("felsch"),
            Strategy::FelschModified => f.write_str("felsch-mod"),
            Strategy::Alternating { hlt, felsch } => write!(f, "alt:{hlt},{felsch}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            "felsch-mod" => Ok(Strategy::FelschModified),
            _ => {
                let bad = || Error::InvalidArgument(format!("unknown strategy {s:?}"));
                let rest = s.strip_prefix("alt:").ok_or_else(bad)?;
                let (h, f) = rest.split_once(',').ok_or_else(bad)?;
                let hlt = h.trim().parse().map_err(|_| bad())?;
                let felsch = f.trim().parse().map_err(|_| bad())?;
                if hlt == 0 || felsch == 0 {
                    return Err(Error::InvalidArgument(
                        "alternation periods must be at least 1".into(),
                    ));
                }
                Ok(Strategy::Alternating { hlt, felsch })
            }
        }
    }
}

impl Session {
    pub fn run(&mut self, strategy: Strategy) -> Result<EnumerationResult> {
        match strategy {
            Strategy::Hlt => Ok(self.run_hlt()),
            Strategy::Felsch => Ok(self.run_felsch(false)),
            Strategy::FelschModified => Ok(self.run_felsch(true)),
            Strategy::Alternating { hlt, felsch } => self.run_alternating(hlt, felsch),
        }
    }

    /// For each node in increasing order: trace every relation with TC1,
    /// apply TC2, resolve coincidences at once, then define any missing
    /// edges at the node.
    pub fn run_hlt(&mut self) -> EnumerationResult {
        self.track_deductions = false;
        self.deductions.clear();
        self.deduction_overflow = false;
        let outcome = (|| {
            self.tc3_step()?;
            let rels = Arc::clone(&self.relations);
            let skip_tc1 = every_letter_starts_a_side(self.alphabet_size, &rels);
            while let Some(n) = self.graph.next_active(self.hlt_cursor) {
                self.hlt_cursor = n;
                self.hlt_node(n, &rels, skip_tc1)?;
                self.hlt_cursor = n + 1;
            }
            self.settle()
        })();
        self.finish(outcome)
    }

    fn hlt_node(&mut self, alpha: NodeId, rels: &[Relation], skip_tc1: bool) -> Step {
        for r in rels {
            if !self.graph.is_active(alpha) {
                return Ok(());
            }
            self.trace_define(alpha, &r.lhs)?;
            if let Some((_, v1)) = r.rhs.split_last() {
                self.trace_define(alpha, v1)?;
            }
            self.tc2_words(alpha, &r.lhs, &r.rhs)?;
            if !self.coincidences.is_empty() {
                self.tc3_step()?;
            }
        }
        if !skip_tc1 && self.graph.is_active(alpha) {
            for a in 0..self.alphabet_size {
                if self.graph.target(alpha, a).is_none() {
                    self.tc1_step(alpha, a)?;
                }
            }
        }
        Ok(())
    }

    /// Repeatedly defines the least missing edge. The plain variant then
    /// applies TC2 at every node and relation; the modified variant only
    /// processes the resulting deductions.
    pub fn run_felsch(&mut self, modified: bool) -> EnumerationResult {
        self.track_deductions = modified;
        if !modified {
            self.deductions.clear();
            self.deduction_overflow = false;
        }
        let outcome = (|| {
            self.tc3_step()?;
            self.sweep()?;
            loop {
                match self.next_gap() {
                    Some((n, a)) => {
                        self.tc1_step(n, a)?;
                        if modified {
                            self.process_deductions_step()?;
                        } else {
                            self.sweep()?;
                        }
                    }
                    None => {
                        if modified {
                            self.process_deductions_step()?;
                        }
                        if self.next_gap().is_none() {
                            if self.is_finished() {
                                return Ok(());
                            }
                            self.sweep()?;
                        }
                    }
                }
            }
        })();
        self.finish(outcome)
    }

    /// Alternates `hlt` HLT node steps with `felsch` modified-Felsch
    /// definitions.
    pub fn run_alternating(&mut self, hlt: usize, felsch: usize) -> Result<EnumerationResult> {
        if hlt == 0 || felsch == 0 {
            return Err(Error::InvalidArgument(
                "alternation periods must be at least 1".into(),
            ));
        }
        self.track_deductions = true;
        let outcome = (|| {
            self.tc3_step()?;
            let rels = Arc::clone(&self.relations);
            let skip_tc1 = every_letter_starts_a_side(self.alphabet_size, &rels);
            loop {
                for _ in 0..hlt {
                    match self.graph.next_active(self.hlt_cursor) {
                        Some(n) => {
                            self.hlt_cursor = n;
                            self.hlt_node(n, &rels, skip_tc1)?;
                            self.hlt_cursor = n + 1;
                        }
                        None => break,
                    }
                }
                self.process_deductions_step()?;
                for _ in 0..felsch {
                    match self.next_gap() {
                        Some((n, a)) => {
                            self.tc1_step(n, a)?;
                            self.process_deductions_step()?;
                        }
                        None => break,
                    }
                }
                if self.next_gap().is_none() && self.deductions.is_empty() {
                    if self.is_finished() {
                        return Ok(());
                    }
                    self.sweep()?;
                }
            }
        })();
        Ok(self.finish(outcome))
    }

    /// Drives an HLT-processed graph to the termination test, defining and
    /// sweeping as in plain Felsch if anything is still missing.
    fn settle(&mut self) -> Step {
        loop {
            if let Some((n, a)) = self.next_gap() {
                self.tc1_step(n, a)?;
                self.sweep()?;
            } else if self.is_finished() {
                return Ok(());
            } else {
                self.sweep()?;
            }
        }
    }

    fn finish(&mut self, outcome: Step) -> EnumerationResult {
        self.note_size();
        match outcome {
            Ok(()) => {
                debug_assert!(self.is_finished());
                let zero = self.zero_node();
                EnumerationResult::complete(&self.graph, &self.order, self.kind, self.stats, zero)
            }
            Err(stop) => {
                EnumerationResult::aborted(self.graph.clone(), stop, self.kind, self.stats)
            }
        }
    }
}

/// HLT3 can be skipped when tracing relations already defines every letter
/// at every node.
fn every_letter_starts_a_side(alphabet_size: usize, rels: &[Relation]) -> bool {
    (0..alphabet_size).all(|a| {
        rels.iter()
            .any(|r| r.lhs.first() == Some(&a) || r.rhs.first() == Some(&a))
    })
}

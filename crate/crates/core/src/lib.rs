//! Todd-Coxeter congruence enumeration for finitely presented monoids.
//!
//! The engine works on [`WordGraph`]s: a presentation and a set of
//! generating pairs are turned into a complete, deterministic word graph
//! whose nodes are the classes of the least right congruence containing
//! both. Left and two-sided congruences are reduced to the right case.

pub mod concrete;
pub mod enumerator;
pub mod error;
pub mod felsch_tree;
pub mod parse;
pub mod presentation;
pub mod union_find;
pub mod variants;
pub mod word_graph;

pub use enumerator::{EnumerationResult, Limits, Session, Stats, Status, Strategy, Tc2Outcome};
pub use error::{Error, ParseError, Result};
pub use felsch_tree::FelschTree;
pub use parse::{parse_presentation, ParsedPresentation};
pub use presentation::{
    reverse_presentation, reverse_word, shortlex_less, Alphabet, CongruenceKind, GeneratingPairs,
    Letter, Presentation, Relation, Word,
};
pub use union_find::UnionFind;
pub use variants::{run_rees, run_with_zero, StephenGraph, StephenStatus};
pub use word_graph::{FollowResult, NodeId, OrderKind, Quotient, WordGraph, WordOrder};

//! The subword graph of a presentation's relation words, used to find which
//! (node, relation) pairs a newly defined edge can affect.

use std::collections::HashMap;

use crate::presentation::{shortlex_less, Letter, Relation, Word};

/// Interned contiguous subwords of the relation words.
///
/// Node 0 is the empty word whenever there is at least one relation. For a
/// node `u` and letter `a`, [`FelschTree::extension`] gives the node for
/// `a·u` if that is also a subword.
#[derive(Debug, Clone)]
pub struct FelschTree {
    alphabet_size: usize,
    words: Vec<Word>,
    index: HashMap<Vec<Letter>, usize>,
    /// `ext[u * A + a]`, `usize::MAX` when absent.
    ext: Vec<usize>,
    /// Relation indices having the node's word as a prefix of either side.
    iota: Vec<Vec<usize>>,
}

const NONE: usize = usize::MAX;

impl FelschTree {
    pub fn build(alphabet_size: usize, relations: &[Relation]) -> Self {
        let mut subwords: Vec<Vec<Letter>> = Vec::new();
        if !relations.is_empty() {
            let mut seen = std::collections::HashSet::new();
            seen.insert(Vec::new());
            subwords.push(Vec::new());
            for r in relations {
                for side in [&r.lhs, &r.rhs] {
                    for i in 0..side.len() {
                        for j in i + 1..=side.len() {
                            if seen.insert(side[i..j].to_vec()) {
                                subwords.push(side[i..j].to_vec());
                            }
                        }
                    }
                }
            }
        }
        let order: Vec<Letter> = (0..alphabet_size).collect();
        subwords.sort_by(|u, v| {
            if shortlex_less(u, v, &order) {
                std::cmp::Ordering::Less
            } else if u == v {
                std::cmp::Ordering::Equal
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let index: HashMap<Vec<Letter>, usize> = subwords
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();

        let mut ext = vec![NONE; subwords.len() * alphabet_size];
        let mut buf = Vec::new();
        for (id, w) in subwords.iter().enumerate() {
            for a in 0..alphabet_size {
                buf.clear();
                buf.push(a);
                buf.extend_from_slice(w);
                if let Some(&t) = index.get(&buf) {
                    ext[id * alphabet_size + a] = t;
                }
            }
        }

        let mut iota = vec![Vec::new(); subwords.len()];
        for (ri, r) in relations.iter().enumerate() {
            for side in [&r.lhs, &r.rhs] {
                for k in 0..=side.len() {
                    let id = index[&side[..k]];
                    if iota[id].last() != Some(&ri) {
                        iota[id].push(ri);
                    }
                }
            }
        }

        FelschTree {
            alphabet_size,
            words: subwords.into_iter().map(Word::new).collect(),
            index,
            ext,
            iota,
        }
    }

    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// The node for `w`, if `w` is a subword of some relation word.
    pub fn node(&self, w: &[Letter]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn word(&self, node: usize) -> &Word {
        &self.words[node]
    }

    /// Relation indices with the node's word as a prefix of a side.
    pub fn iota(&self, node: usize) -> &[usize] {
        &self.iota[node]
    }

    /// [`FelschTree::iota`] looked up by word; empty for non-subwords.
    pub fn iota_of(&self, w: &[Letter]) -> &[usize] {
        self.node(w).map_or(&[], |n| self.iota(n))
    }

    /// The node for `letter·word(node)`, if that is a subword.
    #[inline]
    pub fn extension(&self, node: usize, letter: Letter) -> Option<usize> {
        match self.ext[node * self.alphabet_size + letter] {
            NONE => None,
            t => Some(t),
        }
    }

    /// The node for the one-letter word `letter`.
    #[inline]
    pub fn letter_node(&self, letter: Letter) -> Option<usize> {
        if self.words.is_empty() {
            None
        } else {
            self.extension(0, letter)
        }
    }
}

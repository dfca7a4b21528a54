//! Words, relations and monoid presentations.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Index of a generator. Letters are dense and 0-based.
pub type Letter = usize;

/// The largest supported alphabet.
pub const MAX_ALPHABET: usize = 64;

/// A finite sequence of letters; the empty word is the monoid identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn into_inner(self) -> Vec<Letter> {
        self.0
    }

    /// The word with its letters in reverse order.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(other);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Checks every letter against `alphabet_size`.
    pub fn validate(&self, alphabet_size: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l >= alphabet_size) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                alphabet_size,
            }),
            None => Ok(()),
        }
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(v: [Letter; N]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Reverses a word.
pub fn reverse_word(w: &Word) -> Word {
    w.reversed()
}

/// A pair of words, read as `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: impl Into<Word>, rhs: impl Into<Word>) -> Self {
        Relation {
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            lhs: self.lhs.reversed(),
            rhs: self.rhs.reversed(),
        }
    }

    pub fn validate(&self, alphabet_size: usize) -> Result<()> {
        self.lhs.validate(alphabet_size)?;
        self.rhs.validate(alphabet_size)
    }
}

/// Which side(s) of multiplication a congruence must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CongruenceKind {
    #[default]
    Right,
    Left,
    TwoSided,
}

impl CongruenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CongruenceKind::Right => "right",
            CongruenceKind::Left => "left",
            CongruenceKind::TwoSided => "twosided",
        }
    }
}

impl fmt::Display for CongruenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CongruenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(CongruenceKind::Right),
            "left" => Ok(CongruenceKind::Left),
            "twosided" | "two-sided" => Ok(CongruenceKind::TwoSided),
            other => Err(Error::InvalidArgument(format!(
                "unknown congruence kind {other:?}"
            ))),
        }
    }
}

/// A monoid presentation `<A | R>`, optionally with one letter acting as a
/// zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet_size: usize,
    relations: Vec<Relation>,
    zero: Option<Letter>,
}

impl Presentation {
    pub fn new(alphabet_size: usize, relations: Vec<Relation>) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
            return Err(Error::AlphabetSize(alphabet_size));
        }
        for r in &relations {
            r.validate(alphabet_size)?;
        }
        Ok(Presentation {
            alphabet_size,
            relations,
            zero: None,
        })
    }

    /// Marks `letter` as the zero of a monoid-with-zero presentation.
    pub fn with_zero(mut self, letter: Letter) -> Result<Self> {
        if letter >= self.alphabet_size {
            return Err(Error::LetterOutOfRange {
                letter,
                alphabet_size: self.alphabet_size,
            });
        }
        self.zero = Some(letter);
        Ok(self)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn zero(&self) -> Option<Letter> {
        self.zero
    }

    pub fn has_zero(&self) -> bool {
        self.zero.is_some()
    }

    pub fn add_relation(&mut self, r: Relation) -> Result<()> {
        r.validate(self.alphabet_size)?;
        self.relations.push(r);
        Ok(())
    }

    /// The same presentation with every relation word reversed.
    pub fn reversed(&self) -> Presentation {
        Presentation {
            alphabet_size: self.alphabet_size,
            relations: self.relations.iter().map(Relation::reversed).collect(),
            zero: self.zero,
        }
    }

    /// Makes the zero relations explicit: `x0 = 0`, `0x = 0` for every
    /// letter `x`. The result is an ordinary presentation.
    pub fn expand_zero(&self) -> Presentation {
        let mut out = Presentation {
            alphabet_size: self.alphabet_size,
            relations: self.relations.clone(),
            zero: None,
        };
        if let Some(z) = self.zero {
            for x in 0..self.alphabet_size {
                out.relations.push(Relation::new([x, z], [z]));
                if x != z {
                    out.relations.push(Relation::new([z, x], [z]));
                }
            }
        }
        out
    }
}

/// The extra pairs `S` whose generated congruence is being enumerated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratingPairs {
    pub pairs: Vec<Relation>,
}

impl GeneratingPairs {
    pub fn new(pairs: Vec<Relation>) -> Self {
        GeneratingPairs { pairs }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self, alphabet_size: usize) -> Result<()> {
        self.pairs
            .iter()
            .try_for_each(|p| p.validate(alphabet_size))
    }

    pub fn reversed(&self) -> GeneratingPairs {
        GeneratingPairs {
            pairs: self.pairs.iter().map(Relation::reversed).collect(),
        }
    }
}

/// Reverses every relation and pair. Left congruences are enumerated as
/// right congruences of the reversed input.
pub fn reverse_presentation(
    p: &Presentation,
    s: &GeneratingPairs,
) -> (Presentation, GeneratingPairs) {
    (p.reversed(), s.reversed())
}

/// Strict short-lex comparison with letters ranked by `letter_order`
/// (`letter_order[i]` is the i-th smallest letter).
pub fn shortlex_less(u: &[Letter], v: &[Letter], letter_order: &[Letter]) -> bool {
    if u.len() != v.len() {
        return u.len() < v.len();
    }
    let rank = rank_of(letter_order);
    for (&x, &y) in u.iter().zip(v) {
        if x != y {
            return rank[x] < rank[y];
        }
    }
    false
}

/// Inverts a letter order into a rank table.
pub(crate) fn rank_of(letter_order: &[Letter]) -> Vec<usize> {
    let mut rank = vec![usize::MAX; letter_order.len()];
    for (i, &l) in letter_order.iter().enumerate() {
        if l < rank.len() {
            rank[l] = i;
        }
    }
    rank
}

/// `0, 1, ..., n-1`.
pub fn natural_order(n: usize) -> Vec<Letter> {
    (0..n).collect()
}

/// Printable names for letters, kept apart from the dense indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: Vec<char>) -> Self {
        Alphabet { names }
    }

    /// `a, b, c, ...` for small alphabets, falling back to other printable
    /// characters beyond 26 letters.
    pub fn standard(size: usize) -> Self {
        const POOL: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ023456789";
        let mut names: Vec<char> = POOL.chars().take(size).collect();
        let mut extra = 0xC0u32;
        while names.len() < size {
            names.push(char::from_u32(extra).unwrap_or('?'));
            extra += 1;
        }
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> char {
        self.names.get(letter).copied().unwrap_or('?')
    }

    pub fn index(&self, c: char) -> Option<Letter> {
        self.names.iter().position(|&n| n == c)
    }

    /// Adds a letter name, returning its index.
    pub fn push(&mut self, c: char) -> Letter {
        self.names.push(c);
        self.names.len() - 1
    }

    /// Renders a word; the empty word is `1`.
    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&l| self.name(l)).collect()
        }
    }

    /// Reads a word written over this alphabet; `1` is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        crate::parse::parse_word_str(self, s, 0).map_err(Error::from)
    }
}

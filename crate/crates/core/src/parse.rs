//! Reader for the line-oriented presentation format.
//!
//! ```text
//! # comment
//! alphabet: abc
//! relation: ac = aa
//! pair: a = b
//! kind: right
//! zero: c
//! ```
//!
//! Letters are single characters, numbered in declaration order. The word
//! `1` denotes the empty word, so `1` cannot be a letter.

use crate::error::ParseError;
use crate::presentation::{
    Alphabet, CongruenceKind, GeneratingPairs, Presentation, Relation, Word, MAX_ALPHABET,
};

/// Words longer than this are rejected by the parser.
pub const MAX_WORD_LEN: usize = 1 << 16;

/// Everything read from a presentation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPresentation {
    pub presentation: Presentation,
    pub pairs: GeneratingPairs,
    pub kind: CongruenceKind,
    pub alphabet: Alphabet,
}

pub fn parse_presentation(text: &str) -> Result<ParsedPresentation, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut relations = Vec::new();
    let mut pairs = Vec::new();
    let mut kind: Option<CongruenceKind> = None;
    let mut zero: Option<(usize, char)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| ParseError::new(line_no, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(ParseError::new(line_no, "alphabet declared twice"));
                }
                alphabet = Some(parse_alphabet(value, line_no)?);
            }
            "relation" | "pair" => {
                let a = alphabet.as_ref().ok_or_else(|| {
                    ParseError::new(line_no, "alphabet must be declared before words")
                })?;
                let rel = parse_equation(a, value, line_no)?;
                if key.trim() == "relation" {
                    relations.push(rel);
                } else {
                    pairs.push(rel);
                }
            }
            "kind" => {
                if kind.is_some() {
                    return Err(ParseError::new(line_no, "kind declared twice"));
                }
                kind = Some(match value {
                    "right" => CongruenceKind::Right,
                    "left" => CongruenceKind::Left,
                    "twosided" => CongruenceKind::TwoSided,
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            format!("unknown kind {other:?}; expected right, left or twosided"),
                        ))
                    }
                });
            }
            "zero" => {
                if zero.is_some() {
                    return Err(ParseError::new(line_no, "zero declared twice"));
                }
                let mut chars = value.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => zero = Some((line_no, c)),
                    _ => {
                        return Err(ParseError::new(
                            line_no,
                            "zero must name exactly one letter",
                        ))
                    }
                }
            }
            other => return Err(ParseError::new(line_no, format!("unknown key {other:?}"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| ParseError::new(0, "empty alphabet"))?;
    let mut presentation = Presentation::new(alphabet.len(), relations)
        .map_err(|e| ParseError::new(0, e.to_string()))?;
    if let Some((line_no, c)) = zero {
        let letter = alphabet
            .index(c)
            .ok_or_else(|| ParseError::new(line_no, format!("undeclared letter {c:?}")))?;
        presentation = presentation
            .with_zero(letter)
            .map_err(|e| ParseError::new(line_no, e.to_string()))?;
    }
    Ok(ParsedPresentation {
        presentation,
        pairs: GeneratingPairs::new(pairs),
        kind: kind.unwrap_or_default(),
        alphabet,
    })
}

fn parse_alphabet(value: &str, line: usize) -> Result<Alphabet, ParseError> {
    let mut alphabet = Alphabet::new(Vec::new());
    for c in value.chars() {
        if c.is_whitespace() {
            return Err(ParseError::new(line, "whitespace in alphabet"));
        }
        if matches!(c, '1' | '=' | '#' | ':' | ',') {
            return Err(ParseError::new(line, format!("{c:?} cannot be a letter")));
        }
        if alphabet.index(c).is_some() {
            return Err(ParseError::new(
                line,
                format!("letter {c:?} declared twice"),
            ));
        }
        alphabet.push(c);
    }
    if alphabet.is_empty() {
        return Err(ParseError::new(line, "empty alphabet"));
    }
    if alphabet.len() > MAX_ALPHABET {
        return Err(ParseError::new(
            line,
            format!(
                "alphabet has {} letters; at most {MAX_ALPHABET} allowed",
                alphabet.len()
            ),
        ));
    }
    Ok(alphabet)
}

fn parse_equation(alphabet: &Alphabet, value: &str, line: usize) -> Result<Relation, ParseError> {
    let (lhs, rhs) = value
        .split_once('=')
        .ok_or_else(|| ParseError::new(line, "expected `<word> = <word>`"))?;
    if rhs.contains('=') {
        return Err(ParseError::new(line, "more than one `=`"));
    }
    Ok(Relation {
        lhs: parse_word_str(alphabet, lhs.trim(), line)?,
        rhs: parse_word_str(alphabet, rhs.trim(), line)?,
    })
}

pub(crate) fn parse_word_str(
    alphabet: &Alphabet,
    s: &str,
    line: usize,
) -> Result<Word, ParseError> {
    if s.is_empty() {
        return Err(ParseError::new(
            line,
            "missing word (write `1` for the empty word)",
        ));
    }
    if s == "1" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for c in s.chars() {
        if c.is_whitespace() {
            return Err(ParseError::new(line, "whitespace inside a word"));
        }
        let l = alphabet
            .index(c)
            .ok_or_else(|| ParseError::new(line, format!("undeclared letter {c:?}")))?;
        letters.push(l);
        if letters.len() > MAX_WORD_LEN {
            return Err(ParseError::new(
                line,
                format!("word longer than {MAX_WORD_LEN} letters"),
            ));
        }
    }
    Ok(Word::new(letters))
}

//! Concrete monoid elements, right Cayley graphs, and a brute-force
//! congruence closure used to check the enumerator.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, ParseError, Result};
use crate::presentation::{CongruenceKind, GeneratingPairs, Letter, Word};
use crate::word_graph::{NodeId, WordGraph};

/// Largest transformation degree accepted by the literal parser.
pub const MAX_DEGREE: usize = 1 << 16;

/// Elements of a finite monoid that can be multiplied and hashed.
pub trait Element: Clone + Eq + Hash + fmt::Debug {
    fn degree(&self) -> usize;
    fn identity(degree: usize) -> Self;
    /// `self` followed by `other`.
    fn mul(&self, other: &Self) -> Self;
}

/// A square matrix over the boolean semiring, of size at most 64.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMat {
    n: usize,
    /// Bit `j` of `rows[i]` is entry `(i, j)`.
    rows: Vec<u64>,
}

impl BooleanMat {
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > 64 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(
                "boolean matrices must be square of size 1..=64".into(),
            ));
        }
        let mut out = vec![0u64; n];
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                match x {
                    0 => {}
                    1 => out[i] |= 1 << j,
                    _ => return Err(Error::InvalidArgument("entries must be 0 or 1".into())),
                }
            }
        }
        Ok(BooleanMat { n, rows: out })
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Parses rows separated by `;`, e.g. `110;011;101`.
    pub fn parse(s: &str) -> std::result::Result<Self, ParseError> {
        let rows: Vec<&str> = s.trim().split(';').map(str::trim).collect();
        let n = rows.len();
        if n > 64 {
            return Err(ParseError::new(0, "boolean matrices have at most 64 rows"));
        }
        let mut out = vec![0u64; n];
        for (i, r) in rows.iter().enumerate() {
            if r.chars().count() != n {
                return Err(ParseError::new(
                    0,
                    format!(
                        "row {} has {} entries; expected {n}",
                        i + 1,
                        r.chars().count()
                    ),
                ));
            }
            for (j, c) in r.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => out[i] |= 1 << j,
                    _ => return Err(ParseError::new(0, format!("bad matrix entry {c:?}"))),
                }
            }
        }
        if n == 0 || rows[0].is_empty() {
            return Err(ParseError::new(0, "empty matrix"));
        }
        Ok(BooleanMat { n, rows: out })
    }
}

impl Element for BooleanMat {
    fn degree(&self) -> usize {
        self.n
    }

    fn identity(n: usize) -> Self {
        BooleanMat {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0;
                let mut bits = r;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc |= other.rows[j];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BooleanMat { n: self.n, rows }
    }
}

impl fmt::Debug for BooleanMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BooleanMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// A function on `{0, ..., n-1}`, written as its list of images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Transformation {
    images: Vec<u32>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE || images.iter().any(|&x| x >= n) {
            return Err(Error::InvalidArgument(format!(
                "{images:?} is not a transformation of degree 1..={MAX_DEGREE}"
            )));
        }
        Ok(Transformation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// Parses an image list such as `[1,0,2]`.
    pub fn parse(s: &str) -> std::result::Result<Self, ParseError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(0, "expected `[i, j, ...]`"))?;
        let mut images = Vec::new();
        for part in inner.split(',') {
            if images.len() == MAX_DEGREE {
                return Err(ParseError::new(0, format!("degree exceeds {MAX_DEGREE}")));
            }
            let x: usize = part
                .trim()
                .parse()
                .map_err(|_| ParseError::new(0, format!("bad image {:?}", part.trim())))?;
            images.push(x);
        }
        let n = images.len();
        if let Some(&x) = images.iter().find(|&&x| x >= n) {
            return Err(ParseError::new(
                0,
                format!("image {x} out of range for degree {n}"),
            ));
        }
        Ok(Transformation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }
}

impl Element for Transformation {
    fn degree(&self) -> usize {
        self.images.len()
    }

    fn identity(n: usize) -> Self {
        Transformation {
            images: (0..n as u32).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        Transformation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// The right Cayley graph of the monoid generated by some elements.
#[derive(Debug, Clone)]
pub struct CayleyResult<E> {
    pub graph: WordGraph,
    /// Short-lex least word for each node.
    pub reps: Vec<Word>,
    pub elements: Vec<E>,
    pub generators: Vec<E>,
    index: HashMap<E, NodeId>,
}

impl<E: Element> CayleyResult<E> {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn node_of(&self, e: &E) -> Option<NodeId> {
        self.index.get(e).copied()
    }

    /// The element represented by a word over the generators.
    pub fn evaluate(&self, w: &[Letter]) -> Option<E> {
        let mut e = E::identity(self.elements[0].degree());
        for &a in w {
            e = e.mul(self.generators.get(a)?);
        }
        Some(e)
    }
}

/// Breadth-first closure from the identity; node 0 is the identity and
/// nodes appear in short-lex order of their least words.
pub fn right_cayley<E: Element>(generators: &[E], limit: usize) -> Result<CayleyResult<E>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    let n = first.degree();
    if generators.iter().any(|g| g.degree() != n) {
        return Err(Error::InvalidArgument("generators differ in degree".into()));
    }
    let k = generators.len();
    let id = E::identity(n);
    let mut elements = vec![id.clone()];
    let mut reps = vec![Word::empty()];
    let mut index = HashMap::from([(id, 0)]);
    let mut edges = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        for (a, g) in generators.iter().enumerate() {
            let prod = elements[next].mul(g);
            let target = match index.get(&prod) {
                Some(&t) => t,
                None => {
                    if elements.len() >= limit {
                        return Err(Error::ElementLimit(limit));
                    }
                    let t = elements.len();
                    index.insert(prod.clone(), t);
                    elements.push(prod);
                    reps.push(reps[next].concat(&[a]));
                    t
                }
            };
            edges.push((next, a, target));
        }
        next += 1;
    }
    let graph = WordGraph::from_edges(k, elements.len(), &edges)?;
    Ok(CayleyResult {
        graph,
        reps,
        elements,
        generators: generators.to_vec(),
        index,
    })
}

/// The congruence on the monoid generated by `pairs`, computed by pair
/// propagation over the concrete elements. Returns, for each node, the
/// least node of its class.
pub fn congruence_closure_oracle<E: Element>(
    c: &CayleyResult<E>,
    pairs: &GeneratingPairs,
    kind: CongruenceKind,
) -> Result<Vec<NodeId>> {
    let size = c.size();
    let mut class: Vec<NodeId> = (0..size).collect();
    let mut queue = VecDeque::new();
    for p in &pairs.pairs {
        let trace = |w: &Word| {
            c.graph.follow_full(0, w).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "word {:?} does not label a path",
                    w.as_ref() as &[Letter]
                ))
            })
        };
        queue.push_back((trace(&p.lhs)?, trace(&p.rhs)?));
    }
    let right = kind != CongruenceKind::Left;
    let left = kind != CongruenceKind::Right;
    while let Some((x, y)) = queue.pop_front() {
        let (cx, cy) = (class[x], class[y]);
        if cx == cy {
            continue;
        }
        let (keep, drop) = (cx.min(cy), cx.max(cy));
        for l in class.iter_mut() {
            if *l == drop {
                *l = keep;
            }
        }
        for (a, g) in c.generators.iter().enumerate() {
            if right {
                let (xa, ya) = (c.graph.target(x, a), c.graph.target(y, a));
                queue.push_back((xa.expect("complete"), ya.expect("complete")));
            }
            if left {
                let ax = c.node_of(&g.mul(&c.elements[x])).expect("closed");
                let ay = c.node_of(&g.mul(&c.elements[y])).expect("closed");
                queue.push_back((ax, ay));
            }
        }
    }
    Ok(class)
}

/// Number of distinct classes in a partition given by class labels.
pub fn class_count(labels: &[NodeId]) -> usize {
    let mut seen: Vec<NodeId> = labels.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

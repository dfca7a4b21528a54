//! Disjoint sets whose representative is always the least element of the
//! class.

/// Disjoint-set forest over `0..len()`.
///
/// Roots are linked smaller-id-wins, so `find` returns the class minimum.
/// This gives up union-by-rank; path halving keeps the trees shallow.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnionFind {
    parent: Vec<usize>,
    classes: usize,
}

impl UnionFind {
    /// `n` singleton classes.
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            classes: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    /// Appends `k` new singletons.
    pub fn extend(&mut self, k: usize) {
        let n = self.parent.len();
        self.parent.extend(n..n + k);
        self.classes += k;
    }

    /// Grows to at least `n` elements.
    pub fn grow_to(&mut self, n: usize) {
        if n > self.parent.len() {
            self.extend(n - self.parent.len());
        }
    }

    /// The least element of `x`'s class.
    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// `find` without path compression.
    pub fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Joins the classes of `x` and `y`; true iff they were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        self.classes -= 1;
        true
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    /// True iff every element is its own class.
    pub fn is_trivial(&self) -> bool {
        self.classes == self.parent.len()
    }
}

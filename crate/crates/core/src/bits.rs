//! Dense bit sets and bit-matrix relations indexed by carrier position.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length set of indices `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; words_for(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = BitSet::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// The subset whose members are the set bits of `mask` (only for `len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask constructor needs len <= 64");
        let mut s = BitSet::new(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// Universe size (not the number of members).
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let w = &mut self.words[i / WORD];
        let bit = 1u64 << (i % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn complement(&self) -> BitSet {
        let mut s = BitSet::new(self.len);
        for i in 0..self.len {
            if !self.contains(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation on `0..n`, stored as an `n x n` bit matrix, one row per source.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    stride: usize,
    words: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Relation { n, stride, words: vec![0; stride * n] }
    }

    /// The diagonal `{(i, i)}`.
    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    /// The improper relation `n x n`.
    pub fn full(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            for j in 0..n {
                r.insert(i, j);
            }
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    /// Size of the underlying index set.
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.words[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        assert!(i < self.n && j < self.n, "pair ({i},{j}) out of range {}", self.n);
        let w = &mut self.words[i * self.stride + j / WORD];
        let bit = 1u64 << (j % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n);
        self.words[i * self.stride + j / WORD] &= !(1u64 << (j % WORD));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.successors(i).map(move |j| (i, j)))
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.contains(i, j))
    }

    pub fn predecessors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i, j))
    }

    pub fn row(&self, i: usize) -> BitSet {
        BitSet::from_indices(self.n, self.successors(i))
    }

    /// `row(dst) |= row(src)`; returns whether `dst` changed.
    #[inline]
    pub fn union_rows(&mut self, src: usize, dst: usize) -> bool {
        let (s, d) = (src * self.stride, dst * self.stride);
        let mut changed = false;
        for k in 0..self.stride {
            let add = self.words[s + k];
            let old = self.words[d + k];
            let new = old | add;
            changed |= new != old;
            self.words[d + k] = new;
        }
        changed
    }

    pub fn transpose(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(i, j)| (j, i)))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut r = self.clone();
        for (a, b) in r.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        r
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut r = self.clone();
        for (a, b) in r.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        r
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// First `i` with `(i, i)` missing.
    pub fn reflexivity_violation(&self) -> Option<usize> {
        (0..self.n).find(|&i| !self.contains(i, i))
    }

    /// First triple `(a, b, c)` in lexicographic order with `a R b`, `b R c` but not `a R c`.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for b in self.successors(a) {
                for c in self.successors(b) {
                    if !self.contains(a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First pair `(a, b)`, `a < b`, related in both directions.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.contains(a, b) && self.contains(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// Smallest reflexive and transitive relation containing `self` (Warshall over rows).
    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        for i in 0..self.n {
            r.insert(i, i);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && r.contains(i, k) {
                    r.union_rows(k, i);
                }
            }
        }
        r
    }

    /// Adds `(i, j)` to a relation that is already reflexive and transitive and restores
    /// transitivity: every `a` reaching `i` now reaches everything `j` reaches.
    pub fn insert_closed(&mut self, i: usize, j: usize) {
        if self.contains(i, j) {
            return;
        }
        for a in 0..self.n {
            if self.contains(a, i) {
                self.union_rows(j, a);
            }
        }
    }

    /// `{(p(i), p(j))}` for a permutation-like index map `p` into `0..m`.
    pub fn image(&self, m: usize, map: &[usize]) -> Relation {
        Relation::from_pairs(m, self.pairs().map(|(i, j)| (map[i], map[j])))
    }

    /// `{(i, j) | (map(i), map(j)) in self}`.
    pub fn preimage(&self, map: &[usize]) -> Relation {
        let m = map.len();
        let mut r = Relation::empty(m);
        for i in 0..m {
            for j in 0..m {
                if self.contains(map[i], map[j]) {
                    r.insert(i, j);
                }
            }
        }
        r
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

//! Fixed-width bitsets over an indexed universe.
//!
//! Both attribute sets and object sets are represented as [`BitSet`]s whose
//! width is the size of the universe they live in. Index 0 is the
//! <-smallest element, which is what lectic comparison and Next-Closure
//! rely on.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

const WORD: usize = u64::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    width: usize,
    words: Vec<u64>,
}

/// A subset of the attribute universe.
pub type AttrSet = BitSet;
/// A subset of the objects of a formal context.
pub type ObjSet = BitSet;

impl BitSet {
    pub fn empty(width: usize) -> Self {
        BitSet {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut set = Self::empty(width);
        for w in set.words.iter_mut() {
            *w = !0;
        }
        set.trim();
        set
    }

    /// Builds a set from indices. Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut set = Self::empty(width);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Interprets the low `width` bits of `mask` as a set. `width` must be at most 64.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= WORD, "from_mask supports at most 64 elements");
        let mut set = Self::empty(width);
        if width > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    /// The low 64 bits as a mask; only meaningful for widths up to 64.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of elements in the universe this set lives in.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.width, "index {i} out of range for width {}", self.width);
        let had = self.contains(i);
        self.words[i / WORD] |= 1 << (i % WORD);
        !had
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        if had {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
        had
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Smallest element, if any.
    pub fn min(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &BitSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> BitSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    /// The elements strictly below `i`.
    pub fn below(&self, i: usize) -> BitSet {
        let mut out = self.clone();
        let (k, r) = (i / WORD, i % WORD);
        for (j, w) in out.words.iter_mut().enumerate() {
            if j > k || (j == k && r == 0) {
                *w = 0;
            } else if j == k {
                *w &= (1u64 << r) - 1;
            }
        }
        out
    }

    /// True iff both sets contain the same elements strictly below `i`.
    pub fn agrees_below(&self, other: &BitSet, i: usize) -> bool {
        self.below(i) == other.below(i)
    }
}

impl<'a> BitOr for &'a BitSet {
    type Output = BitSet;
    fn bitor(self, rhs: &'a BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(rhs);
        out
    }
}

impl<'a> BitAnd for &'a BitSet {
    type Output = BitSet;
    fn bitand(self, rhs: &'a BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(rhs);
        out
    }
}

impl<'a> Sub for &'a BitSet {
    type Output = BitSet;
    fn sub(self, rhs: &'a BitSet) -> BitSet {
        let mut out = self.clone();
        out.difference_with(rhs);
        out
    }
}

impl<'a> BitXor for &'a BitSet {
    type Output = BitSet;
    fn bitxor(self, rhs: &'a BitSet) -> BitSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
        out
    }
}

pub struct Iter<'a> {
    set: &'a BitSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            self.bits = *self.set.words.get(self.word)?;
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All subsets of a universe of `width` elements, by ascending bitmask.
///
/// Meant for exhaustive checks on small universes; panics above 30 elements.
pub fn powerset(width: usize) -> impl Iterator<Item = BitSet> {
    assert!(width <= 30, "powerset enumeration is limited to 30 elements");
    (0..1u64 << width).map(move |m| BitSet::from_mask(width, m))
}

/// All subsets of `width` elements grouped by ascending cardinality.
pub fn subsets_by_cardinality(width: usize) -> impl Iterator<Item = BitSet> {
    (0..=width).flat_map(move |k| Combinations::new(width, k))
}

/// k-element subsets of {0..n} in lexicographic order of index vectors.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = BitSet;

    fn next(&mut self) -> Option<BitSet> {
        if self.done {
            return None;
        }
        let out = BitSet::from_indices(self.n, self.idx.iter().copied());
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

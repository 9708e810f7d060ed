use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::torus::{TorusShape, VertexId};

/// Dense bit-vector over the vertices of one torus; bit `i` is vertex `i`.
///
/// Bits past `n^d` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    shape: TorusShape,
    words: Vec<u64>,
}

/// A state `ω ∈ {0,1}^N`: the set of active vertices.
pub type Configuration = VertexSet;

pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

/// Mask of the valid bits in the last word of a `len`-bit vector.
pub(crate) fn tail_mask(len: usize) -> u64 {
    match len % 64 {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

impl VertexSet {
    pub fn empty(shape: TorusShape) -> Self {
        VertexSet { shape, words: vec![0; word_count(shape.vertex_count())] }
    }

    pub fn full(shape: TorusShape) -> Self {
        let mut s = VertexSet { shape, words: vec![!0; word_count(shape.vertex_count())] };
        s.clear_tail();
        s
    }

    pub fn from_vertices(shape: TorusShape, vs: impl IntoIterator<Item = VertexId>) -> Self {
        let mut s = Self::empty(shape);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn from_fn(shape: TorusShape, mut f: impl FnMut(VertexId) -> bool) -> Self {
        let mut s = Self::empty(shape);
        for v in shape.vertices() {
            if f(v) {
                s.insert(v);
            }
        }
        s
    }

    /// Builds a set by testing 1-based coordinates.
    pub fn from_coords_fn(shape: TorusShape, mut f: impl FnMut(&[usize]) -> bool) -> Self {
        let mut s = Self::empty(shape);
        shape.for_each_coords(|v, xs| {
            if f(xs) {
                s.insert(v);
            }
        });
        s
    }

    /// Wraps raw words. Fails on wrong length or stray bits past `n^d`.
    pub fn from_words(shape: TorusShape, words: Vec<u64>) -> Result<Self> {
        let expected = word_count(shape.vertex_count());
        if words.len() != expected {
            return Err(Error::BadLength { expected, found: words.len() });
        }
        if words.last().is_some_and(|&w| w & !tail_mask(shape.vertex_count()) != 0) {
            return Err(Error::BadLength { expected, found: words.len() });
        }
        Ok(VertexSet { shape, words })
    }

    pub fn shape(&self) -> TorusShape {
        self.shape
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    fn clear_tail(&mut self) {
        let mask = tail_mask(self.shape.vertex_count());
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        (self.words[v.0 / 64] >> (v.0 % 64)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        assert!(v.0 < self.shape.vertex_count());
        self.words[v.0 / 64] |= 1 << (v.0 % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) {
        self.words[v.0 / 64] &= !(1 << (v.0 % 64));
    }

    pub fn set(&mut self, v: VertexId, active: bool) {
        if active {
            self.insert(v)
        } else {
            self.remove(v)
        }
    }

    /// `|ω|`, the number of members.
    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        let n = self.words.len();
        let mask = tail_mask(self.shape.vertex_count());
        self.words[..n - 1].iter().all(|&w| w == !0) && self.words[n - 1] == mask
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(VertexId(i * 64 + b))
            })
        })
    }

    fn check_shape(&self, other: &VertexSet) {
        assert_eq!(self.shape, other.shape, "vertex sets from different tori");
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_shape(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_shape(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_shape(other);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet {
            shape: self.shape,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    /// `self ≤ other` in the componentwise order on configurations.
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_shape(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Number of neighbors of `v` that belong to this set.
    pub fn neighbors_in(&self, v: VertexId) -> usize {
        let mut k = 0;
        self.shape.for_each_neighbor(v, |u| k += self.contains(u) as usize);
        k
    }

    /// Smallest number of in-set neighbors over the members, `None` when empty.
    pub fn min_internal_degree(&self) -> Option<usize> {
        self.iter().map(|v| self.neighbors_in(v)).min()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet({}, |{}|: ", self.shape, self.cardinality())?;
        f.debug_list().entries(self.iter().map(|v| v.0)).finish()?;
        f.write_str(")")
    }
}

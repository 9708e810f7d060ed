use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Default cap on `n^d`. Keeps a configuration at 2 MiB.
pub const DEFAULT_MAX_CELLS: usize = 1 << 24;

/// Dense index of a vertex, `Σ (x_j − 1)·n^(j−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A vertex position with 1-based components `x_1, …, x_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coord(Vec<usize>);

impl Coord {
    pub fn new(components: Vec<usize>) -> Self {
        Coord(components)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<&[usize]> for Coord {
    fn from(c: &[usize]) -> Self {
        Coord(c.to_vec())
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The torus `T_n^d`: vertex set `[n]^d`, two vertices adjacent iff they
/// differ by ±1 (mod n) in exactly one coordinate. Always `2d`-regular.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusShape {
    n: usize,
    d: usize,
    len: usize,
}

impl TorusShape {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        Self::with_cell_limit(n, d, DEFAULT_MAX_CELLS)
    }

    /// Like [`TorusShape::new`] with an explicit cap on `n^d`.
    pub fn with_cell_limit(n: usize, d: usize, max_cells: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DegenerateSide { n });
        }
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        let too_many = Error::TooManyCells { n, d, limit: max_cells };
        let mut len = 1usize;
        for _ in 0..d {
            len = len
                .checked_mul(n)
                .filter(|&l| l <= max_cells)
                .ok_or_else(|| too_many.clone())?;
        }
        Ok(TorusShape { n, d, len })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.len
    }

    pub fn degree(&self) -> usize {
        2 * self.d
    }

    /// `n^axis`, the index distance between neighbors along a 0-based axis.
    pub fn stride(&self, axis: usize) -> usize {
        debug_assert!(axis < self.d);
        self.n.pow(axis as u32)
    }

    /// 1-based value of coordinate `axis + 1` of `v`.
    #[inline]
    pub fn coordinate(&self, v: VertexId, axis: usize) -> usize {
        (v.0 / self.stride(axis)) % self.n + 1
    }

    pub fn coords_of(&self, v: VertexId) -> Coord {
        assert!(v.0 < self.len, "vertex {} out of range", v.0);
        let mut rest = v.0;
        let mut out = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            out.push(rest % self.n + 1);
            rest /= self.n;
        }
        Coord(out)
    }

    pub fn vertex_index(&self, c: &Coord) -> Result<VertexId> {
        let xs = c.as_slice();
        if xs.len() != self.d || xs.iter().any(|&x| x == 0 || x > self.n) {
            return Err(Error::InvalidCoord);
        }
        let idx = xs.iter().rev().fold(0usize, |acc, &x| acc * self.n + (x - 1));
        Ok(VertexId(idx))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.len).map(VertexId)
    }

    /// Calls `f` with each of the `2d` neighbors of `v`, axis by axis,
    /// `+1` before `−1`.
    #[inline]
    pub fn for_each_neighbor(&self, v: VertexId, mut f: impl FnMut(VertexId)) {
        let n = self.n;
        let mut stride = 1;
        for _ in 0..self.d {
            let x = (v.0 / stride) % n;
            let wrap = (n - 1) * stride;
            f(VertexId(if x == n - 1 { v.0 - wrap } else { v.0 + stride }));
            f(VertexId(if x == 0 { v.0 + wrap } else { v.0 - stride }));
            stride *= n;
        }
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.degree());
        self.for_each_neighbor(v, |u| out.push(u));
        out
    }

    /// Visits every vertex in index order together with its 1-based
    /// coordinates, without dividing per vertex.
    pub fn for_each_coords(&self, mut f: impl FnMut(VertexId, &[usize])) {
        let mut xs = vec![1usize; self.d];
        for idx in 0..self.len {
            f(VertexId(idx), &xs);
            for x in xs.iter_mut() {
                if *x == self.n {
                    *x = 1;
                } else {
                    *x += 1;
                    break;
                }
            }
        }
    }
}

impl fmt::Display for TorusShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{}^{}", self.n, self.d)
    }
}

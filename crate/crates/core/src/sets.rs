//! The named vertex sets used by the constructions.
//!
//! All coordinates here are 1-based, so parity and level computations agree
//! with the usual `x ∈ [n]^d` convention:
//!
//! | set | definition |
//! |-----|------------|
//! | `A_i` | `Σ x_j ≡ i (mod 2)` |
//! | `B_j` | `Σ x_j = j` |
//! | `C(l)` | non-wrapping L1 distance to the nearest corner `{1,n}^d` is `l` |
//! | `H` | some `x_j ≤ 2` |
//! | border (width w) | some `x_j > n − w` |
//! | `T(k)` | `x_j = 1` for every `j ∈ k` |
//! | `D(r)` | union of `T(k)` over all `(d−r+1)`-subsets `k` |

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::torus::{TorusShape, VertexId};

/// `A_i`: vertices whose coordinate sum has parity `i`.
pub fn parity_class(shape: TorusShape, i: u8) -> Result<VertexSet> {
    if i > 1 {
        return Err(Error::OutOfRange { what: "parity class", value: i as usize, min: 0, max: 1 });
    }
    let i = i as usize;
    Ok(VertexSet::from_coords_fn(shape, |xs| xs.iter().sum::<usize>() % 2 == i))
}

/// `B_j`: vertices whose coordinates sum to `j`, for `d ≤ j ≤ dn`.
pub fn level_set(shape: TorusShape, j: usize) -> Result<VertexSet> {
    let (lo, hi) = (shape.d(), shape.d() * shape.n());
    if !(lo..=hi).contains(&j) {
        return Err(Error::OutOfRange { what: "level", value: j, min: lo, max: hi });
    }
    Ok(VertexSet::from_coords_fn(shape, |xs| xs.iter().sum::<usize>() == j))
}

/// Distance from `xs` to the nearest corner, per coordinate `min(x−1, n−x)`.
pub fn corner_distance(n: usize, xs: &[usize]) -> usize {
    xs.iter().map(|&x| (x - 1).min(n - x)).sum()
}

/// `C(l)` for `0 ≤ l ≤ d·⌊n/2⌋`.
pub fn corner_distance_class(shape: TorusShape, l: usize) -> Result<VertexSet> {
    let max = shape.d() * (shape.n() / 2);
    if l > max {
        return Err(Error::OutOfRange { what: "corner distance", value: l, min: 0, max });
    }
    let n = shape.n();
    Ok(VertexSet::from_coords_fn(shape, |xs| corner_distance(n, xs) == l))
}

/// `H`: the union of the `d` slabs `{x_j ≤ 2}`. Needs `n ≥ 5`.
pub fn build_h(shape: TorusShape) -> Result<VertexSet> {
    if shape.n() < 5 {
        return Err(Error::SideTooSmall { n: shape.n(), min: 5, what: "the slab set H" });
    }
    Ok(VertexSet::from_coords_fn(shape, |xs| xs.iter().any(|&x| x <= 2)))
}

/// Vertices with some coordinate in the last `width` layers, `x_j > n − width`.
pub fn border_set(shape: TorusShape, width: usize) -> Result<VertexSet> {
    if !(1..=2).contains(&width) {
        return Err(Error::OutOfRange { what: "border width", value: width, min: 1, max: 2 });
    }
    let min = 2 * width + 1;
    if shape.n() < min {
        return Err(Error::SideTooSmall { n: shape.n(), min, what: "the border set" });
    }
    let cut = shape.n() - width;
    Ok(VertexSet::from_coords_fn(shape, |xs| xs.iter().any(|&x| x > cut)))
}

fn check_small_r(d: usize, r: usize) -> Result<()> {
    if d < 2 || !(2..=d).contains(&r) {
        return Err(Error::InvalidThreshold { r, min: 2, max: d.max(2) });
    }
    Ok(())
}

/// `K(r)`: every strictly increasing `(d−r+1)`-tuple from `[1, d]`, in
/// lexicographic order. There are `C(d, r−1)` of them.
pub fn index_family(d: usize, r: usize) -> Result<Vec<Vec<usize>>> {
    check_small_r(d, r)?;
    let k = d - r + 1;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let Some(i) = (0..k).rev().find(|&i| cur[i] < d - (k - 1 - i)) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    Ok(out)
}

/// A coordinate sub-torus `T(k)` together with its identification with a
/// fresh `T_n^(d−|k|)`: the fixed coordinates are dropped and the free ones,
/// in increasing order, become the coordinates of the smaller torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubTorus {
    outer: TorusShape,
    inner: TorusShape,
    fixed: Vec<usize>,
    free: Vec<usize>,
}

impl SubTorus {
    /// `fixed` holds 1-based coordinate indices; needs `1 ≤ |fixed| < d`.
    pub fn new(outer: TorusShape, fixed: &[usize]) -> Result<Self> {
        let d = outer.d();
        let increasing = fixed.windows(2).all(|w| w[0] < w[1]);
        if fixed.is_empty() || fixed.len() >= d || !increasing || fixed.iter().any(|&j| j == 0 || j > d) {
            return Err(Error::InvalidIndexTuple);
        }
        let free: Vec<usize> = (1..=d).filter(|j| !fixed.contains(j)).collect();
        let inner = TorusShape::new(outer.n(), free.len())?;
        Ok(SubTorus { outer, inner, fixed: fixed.to_vec(), free })
    }

    pub fn outer(&self) -> TorusShape {
        self.outer
    }

    pub fn inner(&self) -> TorusShape {
        self.inner
    }

    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    /// Index of the outer vertex that corresponds to `v` of the inner torus.
    pub fn lift(&self, v: VertexId) -> VertexId {
        let mut idx = 0;
        for (axis, &j) in self.free.iter().enumerate() {
            let x = self.inner.coordinate(v, axis);
            idx += (x - 1) * self.outer.stride(j - 1);
        }
        VertexId(idx)
    }

    pub fn embed(&self, inner_set: &VertexSet) -> VertexSet {
        assert_eq!(inner_set.shape(), self.inner);
        VertexSet::from_vertices(self.outer, inner_set.iter().map(|v| self.lift(v)))
    }

    /// The members of `T(k)`.
    pub fn members(&self) -> VertexSet {
        self.embed(&VertexSet::full(self.inner))
    }

    /// Pulls an outer set back onto the inner torus.
    pub fn restrict(&self, outer_set: &VertexSet) -> VertexSet {
        assert_eq!(outer_set.shape(), self.outer);
        VertexSet::from_fn(self.inner, |v| outer_set.contains(self.lift(v)))
    }
}

/// `T(k) = {x : x_j = 1 ∀ j ∈ k}`.
pub fn sub_torus(shape: TorusShape, k: &[usize]) -> Result<VertexSet> {
    Ok(SubTorus::new(shape, k)?.members())
}

/// `D(r)`, the union of `T(k)` over `k ∈ K(r)`.
pub fn union_d_r(shape: TorusShape, r: usize) -> Result<VertexSet> {
    let mut acc = VertexSet::empty(shape);
    for k in index_family(shape.d(), r)? {
        acc.union_with(&sub_torus(shape, &k)?);
    }
    Ok(acc)
}

/// Every level set `B_d, …, B_dn` in order.
pub fn level_sets(shape: TorusShape) -> Vec<VertexSet> {
    let d = shape.d();
    let mut out = vec![VertexSet::empty(shape); d * (shape.n() - 1) + 1];
    shape.for_each_coords(|v, xs| out[xs.iter().sum::<usize>() - d].insert(v));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Coord;

    fn t(n: usize, d: usize) -> TorusShape {
        TorusShape::new(n, d).unwrap()
    }

    fn at(s: TorusShape, xs: &[usize]) -> VertexId {
        s.vertex_index(&Coord::from(xs)).unwrap()
    }

    #[test]
    fn parity_sizes() {
        assert_eq!(parity_class(t(4, 2), 0).unwrap().cardinality(), 8);
        assert_eq!(parity_class(t(4, 2), 1).unwrap().cardinality(), 8);
        // enumerate pairs over 1..=5: 13 even sums
        let brute = (1..=5).flat_map(|a| (1..=5).map(move |b| a + b)).filter(|s| s % 2 == 0).count();
        assert_eq!(brute, 13);
        assert_eq!(parity_class(t(5, 2), 0).unwrap().cardinality(), brute);
        assert_eq!(parity_class(t(5, 2), 1).unwrap().cardinality(), 12);
        assert!(parity_class(t(5, 2), 2).is_err());
    }

    #[test]
    fn even_side_is_bipartite_odd_side_is_not() {
        for (n, d, bip) in [(4, 2, true), (6, 3, true), (5, 2, false), (3, 1, false)] {
            let s = t(n, d);
            let a0 = parity_class(s, 0).unwrap();
            let mono = s.vertices().any(|v| s.neighbors(v).iter().any(|&u| a0.contains(u) == a0.contains(v)));
            assert_eq!(!mono, bip, "n={n} d={d}");
        }
    }

    #[test]
    fn level_sets_small_cases() {
        let s = t(5, 2);
        assert_eq!(level_set(s, 2).unwrap(), VertexSet::from_vertices(s, [at(s, &[1, 1])]));
        assert_eq!(
            level_set(s, 3).unwrap(),
            VertexSet::from_vertices(s, [at(s, &[1, 2]), at(s, &[2, 1])])
        );
        assert!(level_set(s, 1).is_err());
        assert!(level_set(s, 11).is_err());
        let total: usize = (2..=10).map(|j| level_set(s, j).unwrap().cardinality()).sum();
        assert_eq!(total, 25);
        let a0 = parity_class(s, 0).unwrap();
        for j in 2..=10 {
            let b = level_set(s, j).unwrap();
            assert_eq!(b.is_subset(&a0), j % 2 == 0);
        }
    }

    #[test]
    fn corner_classes() {
        let s = t(5, 2);
        let c0 = corner_distance_class(s, 0).unwrap();
        let corners = [[1, 1], [1, 5], [5, 1], [5, 5]].map(|c| at(s, &c));
        assert_eq!(c0, VertexSet::from_vertices(s, corners));
        // brute force: count vertices at distance exactly 1 from the corner set
        let brute = (1..=5usize)
            .flat_map(|a| (1..=5usize).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                [(1, 1), (1, 5), (5, 1), (5, 5)]
                    .iter()
                    .map(|&(c1, c2): &(usize, usize)| a.abs_diff(c1) + b.abs_diff(c2))
                    .min()
                    == Some(1)
            })
            .count();
        assert_eq!(brute, 8);
        assert_eq!(corner_distance_class(s, 1).unwrap().cardinality(), 8);
        let total: usize = (0..=4).map(|l| corner_distance_class(s, l).unwrap().cardinality()).sum();
        assert_eq!(total, 25);
        assert!(corner_distance_class(s, 5).is_err());
    }

    #[test]
    fn slab_set_h() {
        let h = build_h(t(10, 2)).unwrap();
        assert_eq!(h.cardinality(), 36);
        assert!(h.min_internal_degree().unwrap() >= 3);
        assert_eq!(build_h(t(6, 3)).unwrap().cardinality(), 152);
        assert!(build_h(t(4, 2)).is_err());
        for (n, d) in [(5, 1), (5, 2), (7, 3), (5, 4)] {
            let h = build_h(t(n, d)).unwrap();
            assert_eq!(h.cardinality(), n.pow(d as u32) - (n - 2).pow(d as u32));
            assert!(h.min_internal_degree().unwrap() >= 2 * d - 1);
        }
    }

    #[test]
    fn borders() {
        let s = t(5, 2);
        assert_eq!(border_set(s, 1).unwrap().cardinality(), 9);
        assert_eq!(border_set(s, 2).unwrap().cardinality(), 16);
        let c5 = t(5, 1);
        assert_eq!(border_set(c5, 1).unwrap(), VertexSet::from_vertices(c5, [at(c5, &[5])]));
        assert!(border_set(t(4, 2), 2).is_err());
        assert!(border_set(t(3, 2), 1).is_ok());
        assert!(border_set(s, 3).is_err());
    }

    #[test]
    fn index_families() {
        assert_eq!(index_family(2, 2).unwrap(), vec![vec![1], vec![2]]);
        assert_eq!(index_family(3, 2).unwrap(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(index_family(4, 3).unwrap().len(), 6);
        assert_eq!(index_family(5, 5).unwrap().len(), 5);
        assert_eq!(index_family(4, 2).unwrap().len(), 4);
        assert!(index_family(3, 1).is_err());
        assert!(index_family(3, 4).is_err());
    }

    #[test]
    fn sub_tori() {
        let s = t(5, 2);
        let col = sub_torus(s, &[1]).unwrap();
        assert_eq!(col.cardinality(), 5);
        assert!(col.iter().all(|v| s.coordinate(v, 0) == 1));
        let s3 = t(5, 3);
        let line = sub_torus(s3, &[1, 2]).unwrap();
        assert_eq!(line.cardinality(), 5);
        assert!(line.iter().all(|v| s3.coordinate(v, 0) == 1 && s3.coordinate(v, 1) == 1));
        let plane = sub_torus(s3, &[2]).unwrap();
        assert_eq!(plane.cardinality(), 25);
        assert!(plane.iter().all(|v| plane.neighbors_in(v) == 4));
        assert!(sub_torus(s3, &[2, 1]).is_err());
        assert!(sub_torus(s3, &[1, 2, 3]).is_err());
        assert!(sub_torus(s3, &[4]).is_err());
    }

    #[test]
    fn sub_torus_embedding_is_a_graph_isomorphism() {
        let s = t(5, 3);
        let st = SubTorus::new(s, &[2]).unwrap();
        let inner = st.inner();
        assert_eq!(inner.d(), 2);
        for v in inner.vertices() {
            let mut a: Vec<VertexId> = inner.neighbors(v).into_iter().map(|u| st.lift(u)).collect();
            let members = st.members();
            let mut b: Vec<VertexId> =
                s.neighbors(st.lift(v)).into_iter().filter(|&u| members.contains(u)).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        let probe = VertexSet::from_fn(inner, |v| v.0 % 3 == 0);
        assert_eq!(st.restrict(&st.embed(&probe)), probe);
    }

    #[test]
    fn d_r_unions() {
        assert_eq!(union_d_r(t(5, 2), 2).unwrap().cardinality(), 9);
        // three axis lines through (1,1,1)
        let s = t(5, 3);
        let brute = VertexSet::from_coords_fn(s, |xs| xs.iter().filter(|&&x| x == 1).count() >= 2);
        assert_eq!(brute.cardinality(), 13);
        assert_eq!(union_d_r(s, 2).unwrap(), brute);
        // three coordinate planes
        let planes = VertexSet::from_coords_fn(s, |xs| xs.contains(&1));
        assert_eq!(planes.cardinality(), 61);
        assert_eq!(union_d_r(s, 3).unwrap(), planes);
    }

    #[test]
    fn d_r_contains_low_levels_and_has_internal_degree() {
        for (n, d) in [(5, 2), (5, 3), (4, 4), (6, 3)] {
            let s = t(n, d);
            for r in 2..=d {
                let dr = union_d_r(s, r).unwrap();
                for j in d..=d + r - 1 {
                    assert!(level_set(s, j).unwrap().is_subset(&dr));
                }
                assert!(dr.min_internal_degree().unwrap() >= 2 * (r - 1));
            }
        }
    }

    #[test]
    fn level_sets_partition() {
        let s = t(4, 3);
        let all = level_sets(s);
        assert_eq!(all.len(), 10);
        assert_eq!(all.iter().map(|b| b.cardinality()).sum::<usize>(), 64);
        for (i, b) in all.iter().enumerate() {
            assert_eq!(*b, level_set(s, i + 3).unwrap());
        }
    }
}

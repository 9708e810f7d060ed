use alloc::vec;
use alloc::vec::Vec;

use crate::set::VertexSet;
use crate::torus::VertexId;

/// The `k`-core of the subgraph induced by `set`: the largest subset whose
/// induced minimum degree is at least `k`. Vertices of degree below `k` are
/// removed until none remain.
pub fn k_core(set: &VertexSet, k: usize) -> VertexSet {
    let order: Vec<VertexId> = set.iter().collect();
    k_core_in_order(set, k, &order)
}

/// [`k_core`] with an explicit order for the initial scan of `set`. Any
/// permutation of the members gives the same core.
pub fn k_core_in_order(set: &VertexSet, k: usize, order: &[VertexId]) -> VertexSet {
    let shape = set.shape();
    let mut alive = set.clone();
    if k == 0 {
        return alive;
    }
    let mut degree = vec![0u16; shape.vertex_count()];
    for v in set.iter() {
        degree[v.0] = set.neighbors_in(v) as u16;
    }
    let mut stack: Vec<VertexId> = order.iter().copied().filter(|&v| (degree[v.0] as usize) < k).collect();
    while let Some(v) = stack.pop() {
        if !alive.contains(v) {
            continue;
        }
        alive.remove(v);
        shape.for_each_neighbor(v, |u| {
            if alive.contains(u) {
                degree[u.0] -= 1;
                if degree[u.0] as usize + 1 == k {
                    stack.push(u);
                }
            }
        });
    }
    alive
}

/// BP(r) percolates from `config` iff the inactive vertices contain no
/// subgraph of minimum degree `2d − r + 1`: such a subgraph can never
/// activate, and without one the closure reaches every vertex.
pub fn bp_dynamo_by_core(config: &VertexSet, r: usize) -> bool {
    let shape = config.shape();
    assert!(r >= 1 && r <= shape.degree());
    k_core(&config.complement(), shape.degree() - r + 1).is_empty()
}

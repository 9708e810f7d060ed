//! Binary PGM (P5) frames of two-dimensional configurations: one pixel per
//! vertex, `x_1` as the column and `x_2` as the row with `x_2 = 1` on top,
//! active black (0) and inactive white (255).

use dynamo_lab_core::{VertexId, VertexSet};

pub fn encode(config: &VertexSet) -> Vec<u8> {
    let shape = config.shape();
    assert_eq!(shape.d(), 2, "frames need a two-dimensional torus");
    let n = shape.n();
    let mut out = format!("P5\n{n} {n}\n255\n").into_bytes();
    // row-major index (x_2 − 1)·n + (x_1 − 1) is the vertex index itself
    out.extend((0..n * n).map(|i| if config.contains(VertexId(i)) { 0 } else { 255 }));
    out
}

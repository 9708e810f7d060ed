//! Text format for configurations:
//!
//! ```text
//! torus <n> <d>
//! <hex>
//! ```
//!
//! The second line is the bit-vector as one big-endian hexadecimal number of
//! exactly `⌈n^d / 4⌉` lowercase digits, with bit `i` holding vertex `i`.
//! Files end with a newline. Readers accept either case.

use std::fs;
use std::path::Path;

use dynamo_lab_core::{TorusShape, VertexSet};

use crate::error::{LabError, LabResult};
use crate::limits::shape;

pub fn digits(shape: TorusShape) -> usize {
    shape.vertex_count().div_ceil(4)
}

pub fn to_string(config: &VertexSet) -> String {
    let shape = config.shape();
    let nbytes = shape.vertex_count().div_ceil(8);
    let mut bytes: Vec<u8> = config.words().iter().flat_map(|w| w.to_le_bytes()).take(nbytes).collect();
    bytes.reverse();
    let hex = hex::encode(bytes);
    let skip = hex.len() - digits(shape);
    format!("torus {} {}\n{}\n", shape.n(), shape.d(), &hex[skip..])
}

/// Parses the format; `what` names the source in error messages.
pub fn from_str(text: &str, what: &str) -> LabResult<VertexSet> {
    let err = |msg: String| LabError::Parse { path: what.to_string(), msg };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| err("empty file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, d) = match fields.as_slice() {
        ["torus", n, d] => (
            n.parse::<usize>().map_err(|e| err(format!("bad n: {e}")))?,
            d.parse::<usize>().map_err(|e| err(format!("bad d: {e}")))?,
        ),
        _ => return Err(err(format!("expected `torus <n> <d>`, found `{header}`"))),
    };
    let shape = shape(n, d)?;
    let body = lines.next().map(str::trim).unwrap_or("");
    if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
        return Err(err(format!("unexpected trailing line `{extra}`")));
    }
    let want = digits(shape);
    if body.len() != want {
        return Err(err(format!("expected {want} hex digits for {shape}, found {}", body.len())));
    }
    let padded = if want % 2 == 1 { format!("0{body}") } else { body.to_string() };
    let mut bytes = hex::decode(padded).map_err(|e| err(format!("bad hex: {e}")))?;
    bytes.reverse();
    let mut words = vec![0u64; shape.vertex_count().div_ceil(64)];
    for (i, b) in bytes.iter().enumerate() {
        words[i / 8] |= (*b as u64) << (8 * (i % 8));
    }
    VertexSet::from_words(shape, words).map_err(|_| err("bits set beyond the last vertex".into()))
}

pub fn read(path: &Path) -> LabResult<VertexSet> {
    let text = fs::read_to_string(path).map_err(|e| LabError::io(path.display().to_string(), e))?;
    from_str(&text, &path.display().to_string())
}

pub fn write(path: &Path, config: &VertexSet) -> LabResult<()> {
    fs::write(path, to_string(config)).map_err(|e| LabError::io(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynamo_lab_core::VertexId;

    #[test]
    fn small_example_is_byte_exact() {
        // vertices 0 and 5 on C_6: bits 100001 = 0x21
        let s = TorusShape::new(6, 1).unwrap();
        let cfg = VertexSet::from_vertices(s, [VertexId(0), VertexId(5)]);
        assert_eq!(to_string(&cfg), "torus 6 1\n21\n");
        let s = TorusShape::new(3, 1).unwrap();
        assert_eq!(to_string(&VertexSet::full(s)), "torus 3 1\n7\n");
    }

    #[test]
    fn round_trip() {
        for (n, d) in [(3, 1), (5, 2), (7, 2), (4, 3), (9, 3)] {
            let s = TorusShape::new(n, d).unwrap();
            let cfg = VertexSet::from_fn(s, |v| (v.0 * 7 + 3) % 5 < 2);
            let text = to_string(&cfg);
            assert_eq!(text.lines().nth(1).unwrap().len(), digits(s));
            assert_eq!(from_str(&text, "mem").unwrap(), cfg);
            assert_eq!(from_str(&text.to_uppercase().replace("TORUS", "torus"), "mem").unwrap(), cfg);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(from_str("", "x").is_err());
        assert!(from_str("torus 5 2\n", "x").is_err());
        assert!(from_str("torus 5 2\n000000\n", "x").is_err());
        assert!(from_str("torus 5 2\n0000000\n", "x").is_ok());
        assert!(from_str("torus 3 1\n8\n", "x").is_err());
        assert!(from_str("torus 3 1\nz\n", "x").is_err());
        assert!(from_str("grid 3 1\n1\n", "x").is_err());
        assert!(from_str("torus 2 1\n1\n", "x").is_err());
    }
}

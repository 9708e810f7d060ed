//! The cell budget guard. `DYNAMO_LAB_MAX_CELLS` overrides the default
//! `2^24` limit on `n^d`.

use dynamo_lab_core::{TorusShape, DEFAULT_MAX_CELLS};

use crate::error::{LabError, LabResult};

pub const MAX_CELLS_VAR: &str = "DYNAMO_LAB_MAX_CELLS";

pub fn max_cells() -> LabResult<usize> {
    match std::env::var(MAX_CELLS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| LabError::Usage(format!("{MAX_CELLS_VAR} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

/// `T_n^d` under the configured cell budget.
pub fn shape(n: usize, d: usize) -> LabResult<TorusShape> {
    Ok(TorusShape::with_cell_limit(n, d, max_cells()?)?)
}

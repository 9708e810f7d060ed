//! The comparison table: for each cell, the leading term of the known
//! minimum next to the size of our construction and its predicted bound.

use std::io::Write;

use dynamo_lab_core::analysis::table1_bounds;
use dynamo_lab_core::constructions::{
    build_large_r_bp, build_large_r_monotone, build_majority_dynamo, build_small_r_bp, build_small_r_monotone,
    build_small_r_reversible_odd, ConstructionReport,
};
use dynamo_lab_core::dynamics::{default_max_rounds, Rule, Verification};
use dynamo_lab_core::TorusShape;

use crate::error::LabResult;
use crate::limits::shape;

pub const HEADER: [&str; 9] = ["d", "r", "n", "model", "monotone", "lower", "constructed", "upper", "verified"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Bp,
    Rbp,
    Maj,
}

impl Model {
    pub fn token(self) -> &'static str {
        match self {
            Model::Bp => "bp",
            Model::Rbp => "rbp",
            Model::Maj => "maj",
        }
    }

    pub fn rule(self, r: usize) -> Rule {
        match self {
            Model::Bp => Rule::Bp(r),
            Model::Rbp => Rule::ReversibleBp(r),
            Model::Maj => Rule::Majority,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub d: usize,
    pub r: Option<usize>,
    pub n: usize,
    pub model: Model,
    pub monotone: bool,
    pub lower: String,
    pub constructed: String,
    pub upper: String,
    pub verified: String,
}

impl Row {
    fn fields(&self) -> [String; 9] {
        [
            self.d.to_string(),
            self.r.map_or("-".into(), |r| r.to_string()),
            self.n.to_string(),
            self.model.token().into(),
            self.monotone.to_string(),
            self.lower.clone(),
            self.constructed.clone(),
            self.upper.clone(),
            self.verified.clone(),
        ]
    }
}

/// The construction that realizes a table cell. A monotone dynamo is also a
/// dynamo, so non-monotone reversible cells with large `r` or even `n` reuse
/// the monotone builders.
pub fn cell_builder(s: TorusShape, model: Model, r: usize, monotone: bool) -> dynamo_lab_core::Result<ConstructionReport> {
    let small = r <= s.d();
    match model {
        Model::Bp if small => build_small_r_bp(s, r),
        Model::Bp => build_large_r_bp(s, r),
        Model::Rbp if !small => build_large_r_monotone(s, r),
        Model::Rbp if monotone || s.n().is_multiple_of(2) => build_small_r_monotone(s, r),
        Model::Rbp => build_small_r_reversible_odd(s, r),
        Model::Maj => build_majority_dynamo(s),
    }
}

fn verification_token(v: Verification) -> &'static str {
    match v {
        Verification::Verified => "true",
        Verification::Refuted => "false",
        Verification::Indeterminate => "indeterminate",
    }
}

pub fn row(d: usize, r: Option<usize>, n: usize, model: Model, monotone: bool) -> Row {
    let rule = model.rule(r.unwrap_or(0));
    let mut row = Row {
        d,
        r,
        n,
        model,
        monotone,
        lower: "-".into(),
        constructed: "-".into(),
        upper: "-".into(),
        verified: String::new(),
    };
    match table1_bounds(d, rule, n, monotone) {
        Ok(rec) => row.lower = rec.lower.to_string(),
        Err(e) => {
            row.verified = format!("skip: {e}");
            return row;
        }
    }
    let built = shape(n, d).map_err(|e| e.to_string()).and_then(|s| {
        cell_builder(s, model, r.unwrap_or(0), monotone).map_err(|e| e.to_string())
    });
    match built {
        Ok(rep) => {
            row.constructed = rep.size().to_string();
            row.upper = rep.predicted_size_bound.to_string();
            row.verified = verification_token(rep.verify(default_max_rounds(rep.shape()))).into();
        }
        Err(e) => row.verified = format!("skip: {e}"),
    }
    row
}

/// Rows for every combination, in the order d, r, n. Majority ignores `rs`.
pub fn rows(ds: &[usize], rs: &[usize], ns: &[usize], model: Model, monotone: bool) -> Vec<Row> {
    let mut out = Vec::new();
    for &d in ds {
        let rs: Vec<Option<usize>> = match model {
            Model::Maj => vec![None],
            _ => rs.iter().map(|&r| Some(r)).collect(),
        };
        for &r in &rs {
            for &n in ns {
                out.push(row(d, r, n, model, monotone));
            }
        }
    }
    out
}

pub fn write_csv(rows: &[Row], out: impl Write) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush().map_err(|e| crate::error::LabError::io("csv output", e))?;
    Ok(())
}

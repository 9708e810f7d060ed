//! Closed-form bounds, k-core peeling and exhaustive search on tiny tori.

mod bounds;
mod kcore;
mod search;

pub use bounds::{
    binomial, check_lower_bounds, table1_bounds, BoundCheck, BoundsRecord, LowerBoundReport, Rational,
};
pub use kcore::{bp_dynamo_by_core, k_core, k_core_in_order};
pub use search::{
    min_dynamo_search, search_rounds, CandidateTester, SearchOptions, SearchResult, ShardResult, ShardSearch,
};

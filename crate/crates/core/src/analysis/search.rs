//! Minimum dynamo size by enumeration, for tori small enough to enumerate.
//!
//! Candidates are visited by increasing cardinality, so the first dynamo
//! found is a minimum. Each cardinality is split into shards by the two
//! smallest members; a driver may run shards on separate threads as long as
//! it stops every shard once one of them succeeds. With translation pruning
//! only candidates containing vertex 0 are visited, which loses nothing since
//! every property tested here is invariant under translations of the torus.

use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::{bp_closure, Rule, Simulator, Verification};
use crate::error::Result;
use crate::set::VertexSet;
use crate::torus::{TorusShape, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidate configurations to test.
    pub budget: u64,
    pub symmetry_pruning: bool,
    /// Round budget for each reversible/majority simulation.
    pub max_rounds: usize,
}

impl SearchOptions {
    pub fn for_shape(shape: TorusShape) -> Self {
        SearchOptions { budget: u64::MAX, symmetry_pruning: true, max_rounds: search_rounds(shape) }
    }
}

/// Round budget used by the search: twice the edge count plus slack, which
/// covers the transient of any synchronous threshold network on the torus.
pub fn search_rounds(shape: TorusShape) -> usize {
    2 * shape.d() * shape.vertex_count() + 16
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub minimum: usize,
    pub witness: VertexSet,
    pub examined: u64,
    /// `minimum` is proven: every smaller candidate was tested and refuted.
    pub exhaustive: bool,
    /// Candidates whose simulation ran out of rounds.
    pub indeterminate: u64,
}

/// Tests one candidate against the rule, reusing buffers between calls.
pub struct CandidateTester {
    sim: Simulator,
    rule: Rule,
    monotone: bool,
    max_rounds: usize,
}

impl CandidateTester {
    pub fn new(shape: TorusShape, rule: Rule, monotone: bool, max_rounds: usize) -> Result<Self> {
        rule.validate(shape)?;
        Ok(CandidateTester { sim: Simulator::new(shape), rule, monotone, max_rounds })
    }

    pub fn test(&mut self, config: &VertexSet) -> Verification {
        match self.rule {
            // BP processes are always monotone and end at the closure
            Rule::Bp(r) if bp_closure(config, r).is_full() => Verification::Verified,
            Rule::Bp(_) => Verification::Refuted,
            rule => self.sim.check(config, rule, self.monotone, self.max_rounds).verification,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShardResult {
    pub found: Option<VertexSet>,
    pub examined: u64,
    pub indeterminate: u64,
    /// `admit` refused a candidate before the shard was finished.
    pub aborted: bool,
}

/// All candidates of one cardinality sharing a fixed prefix of smallest members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShardSearch {
    pub cardinality: usize,
    pub prefix: Vec<usize>,
}

impl ShardSearch {
    /// The shards covering cardinality `c` on `shape`.
    pub fn shards(shape: TorusShape, c: usize, pruned: bool) -> Vec<ShardSearch> {
        let len = shape.vertex_count();
        let mk = |prefix: Vec<usize>| ShardSearch { cardinality: c, prefix };
        match (c, pruned) {
            (0, _) => vec![mk(vec![])],
            _ if c > len => vec![],
            (1, true) => vec![mk(vec![0])],
            (1, false) => (0..len).map(|f| mk(vec![f])).collect(),
            (_, true) => (1..=len - c + 1).map(|s| mk(vec![0, s])).collect(),
            (_, false) => (0..=len - c)
                .flat_map(|f| (f + 1..=len - c + 1).map(move |s| (f, s)))
                .map(|(f, s)| mk(vec![f, s]))
                .collect(),
        }
    }

    /// Enumerates the shard until a dynamo is found or `admit` refuses.
    /// `admit` is asked before each candidate.
    pub fn run(&self, tester: &mut CandidateTester, admit: &mut dyn FnMut() -> bool) -> ShardResult {
        let shape = tester.sim.engine().shape();
        let len = shape.vertex_count();
        let mut out = ShardResult::default();
        let rest = self.cardinality - self.prefix.len();
        let start = self.prefix.last().map_or(0, |&p| p + 1);
        if start + rest > len {
            return out;
        }
        let mut base = VertexSet::empty(shape);
        for &p in &self.prefix {
            base.insert(VertexId(p));
        }
        let mut idx: Vec<usize> = (start..start + rest).collect();
        loop {
            if !admit() {
                out.aborted = true;
                return out;
            }
            let mut cand = base.clone();
            for &i in &idx {
                cand.insert(VertexId(i));
            }
            out.examined += 1;
            match tester.test(&cand) {
                Verification::Verified => {
                    out.found = Some(cand);
                    return out;
                }
                Verification::Indeterminate => out.indeterminate += 1,
                Verification::Refuted => {}
            }
            // next combination of `rest` elements from [start, len)
            let Some(i) = (0..rest).rev().find(|&i| idx[i] < len - (rest - i)) else {
                return out;
            };
            idx[i] += 1;
            for j in i + 1..rest {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// Sequential minimum-dynamo search. `monotone_required` restricts to
/// monotone dynamos.
///
/// When the budget runs out the result is not exhaustive and falls back to
/// the all-active configuration, which is a (monotone) dynamo for every
/// valid rule.
pub fn min_dynamo_search(
    shape: TorusShape,
    rule: Rule,
    monotone_required: bool,
    opts: SearchOptions,
) -> Result<SearchResult> {
    let mut tester = CandidateTester::new(shape, rule, monotone_required, opts.max_rounds)?;
    let mut examined = 0u64;
    let mut indeterminate = 0u64;
    for c in 0..=shape.vertex_count() {
        for shard in ShardSearch::shards(shape, c, opts.symmetry_pruning) {
            let mut used = examined;
            let mut admit = || {
                used += 1;
                used <= opts.budget
            };
            let res = shard.run(&mut tester, &mut admit);
            examined += res.examined;
            indeterminate += res.indeterminate;
            if let Some(witness) = res.found {
                return Ok(SearchResult { minimum: c, witness, examined, exhaustive: indeterminate == 0, indeterminate });
            }
            if res.aborted {
                let witness = VertexSet::full(shape);
                return Ok(SearchResult {
                    minimum: shape.vertex_count(),
                    witness,
                    examined,
                    exhaustive: false,
                    indeterminate,
                });
            }
        }
    }
    unreachable!("the all-active configuration is always a dynamo")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::is_dynamo;

    fn t(n: usize, d: usize) -> TorusShape {
        TorusShape::new(n, d).unwrap()
    }

    fn min(s: TorusShape, rule: Rule, mono: bool) -> SearchResult {
        min_dynamo_search(s, rule, mono, SearchOptions::for_shape(s)).unwrap()
    }

    #[test]
    fn cycle_minima() {
        assert_eq!(min(t(5, 1), Rule::Bp(1), false).minimum, 1);
        assert_eq!(min(t(4, 1), Rule::ReversibleBp(1), false).minimum, 2);
        assert_eq!(min(t(5, 1), Rule::ReversibleBp(1), false).minimum, 1);
        assert_eq!(min(t(5, 1), Rule::ReversibleBp(1), true).minimum, 2);
    }

    #[test]
    fn shards_cover_all_combinations_once() {
        let s = t(3, 2);
        for c in 0..=9 {
            for pruned in [false, true] {
                let total: usize = ShardSearch::shards(s, c, pruned)
                    .iter()
                    .map(|sh| {
                        let rest = c - sh.prefix.len();
                        let start = sh.prefix.last().map_or(0, |&p| p + 1);
                        crate::analysis::binomial(9 - start, rest) as usize
                    })
                    .sum();
                let want = if pruned && c > 0 { crate::analysis::binomial(8, c - 1) } else { crate::analysis::binomial(9, c) };
                assert_eq!(total as i128, want, "c={c} pruned={pruned}");
            }
        }
    }

    #[test]
    fn pruning_keeps_the_minimum() {
        for (s, rule) in [
            (t(3, 2), Rule::Bp(2)),
            (t(3, 2), Rule::ReversibleBp(2)),
            (t(4, 2), Rule::Bp(3)),
            (t(6, 1), Rule::ReversibleBp(1)),
            (t(3, 2), Rule::Majority),
        ] {
            let mut opts = SearchOptions::for_shape(s);
            let pruned = min_dynamo_search(s, rule, false, opts).unwrap();
            opts.symmetry_pruning = false;
            let full = min_dynamo_search(s, rule, false, opts).unwrap();
            assert_eq!(pruned.minimum, full.minimum, "{s} {rule}");
            assert!(pruned.exhaustive && full.exhaustive);
            assert!(pruned.examined <= full.examined);
        }
    }

    #[test]
    fn t3_2_bp2_against_plain_enumeration() {
        // independent oracle: all 512 subsets by bitmask, simulated with `run`
        let s = t(3, 2);
        let mut best = usize::MAX;
        for mask in 0u32..512 {
            let cfg = VertexSet::from_fn(s, |v| mask >> v.0 & 1 == 1);
            if is_dynamo(&cfg, Rule::Bp(2), 64).holds() {
                best = best.min(mask.count_ones() as usize);
            }
        }
        let res = min(s, Rule::Bp(2), false);
        assert_eq!(res.minimum, best);
        assert!(is_dynamo(&res.witness, Rule::Bp(2), 64).holds());
    }

    #[test]
    fn budget_exhaustion_falls_back_to_all_active() {
        let s = t(4, 2);
        let mut opts = SearchOptions::for_shape(s);
        opts.budget = 10;
        let res = min_dynamo_search(s, Rule::ReversibleBp(4), false, opts).unwrap();
        assert!(!res.exhaustive);
        assert_eq!(res.minimum, 16);
        assert!(res.witness.is_full());
        assert_eq!(res.examined, 10);
    }
}

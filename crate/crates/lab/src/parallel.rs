//! Multi-threaded driver for the minimum-dynamo search.
//!
//! Within one cardinality, worker threads pull shards from a shared counter.
//! The first dynamo found raises a flag that makes every other shard stop at
//! its next candidate; the candidate budget is a shared counter as well.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use dynamo_lab_core::analysis::{CandidateTester, SearchOptions, SearchResult, ShardSearch};
use dynamo_lab_core::dynamics::Rule;
use dynamo_lab_core::{Result, TorusShape, VertexSet};

pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// Same answer as `analysis::min_dynamo_search` (the witness may differ).
pub fn min_dynamo_search_par(
    shape: TorusShape,
    rule: Rule,
    monotone_required: bool,
    opts: SearchOptions,
    threads: usize,
) -> Result<SearchResult> {
    // fail early on an invalid rule
    CandidateTester::new(shape, rule, monotone_required, opts.max_rounds)?;
    let threads = threads.max(1);
    let admitted = AtomicU64::new(0);
    let mut examined = 0u64;
    let mut indeterminate = 0u64;
    for c in 0..=shape.vertex_count() {
        let shards = ShardSearch::shards(shape, c, opts.symmetry_pruning);
        let next = AtomicUsize::new(0);
        let found = AtomicBool::new(false);
        let over_budget = AtomicBool::new(false);
        let witness: Mutex<Option<VertexSet>> = Mutex::new(None);
        let counts = Mutex::new((0u64, 0u64));
        thread::scope(|scope| {
            for _ in 0..threads.min(shards.len()) {
                scope.spawn(|| {
                    let mut tester = CandidateTester::new(shape, rule, monotone_required, opts.max_rounds)
                        .expect("rule validated above");
                    let mut admit = || {
                        if found.load(Ordering::Relaxed) {
                            return false;
                        }
                        let ok = admitted.fetch_add(1, Ordering::Relaxed) < opts.budget;
                        if !ok {
                            over_budget.store(true, Ordering::Relaxed);
                        }
                        ok
                    };
                    let (mut ex, mut ind) = (0, 0);
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= shards.len() || found.load(Ordering::Relaxed) || over_budget.load(Ordering::Relaxed) {
                            break;
                        }
                        let res = shards[i].run(&mut tester, &mut admit);
                        ex += res.examined;
                        ind += res.indeterminate;
                        if let Some(w) = res.found {
                            found.store(true, Ordering::Relaxed);
                            witness.lock().expect("no poisoning").get_or_insert(w);
                            break;
                        }
                    }
                    let mut counts = counts.lock().expect("no poisoning");
                    counts.0 += ex;
                    counts.1 += ind;
                });
            }
        });
        let (ex, ind) = counts.into_inner().expect("no poisoning");
        examined += ex;
        indeterminate += ind;
        if let Some(witness) = witness.into_inner().expect("no poisoning") {
            return Ok(SearchResult { minimum: c, witness, examined, exhaustive: indeterminate == 0, indeterminate });
        }
        if over_budget.load(Ordering::Relaxed) {
            return Ok(SearchResult {
                minimum: shape.vertex_count(),
                witness: VertexSet::full(shape),
                examined,
                exhaustive: false,
                indeterminate,
            });
        }
    }
    unreachable!("the all-active configuration is always a dynamo")
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynamo_lab_core::analysis::min_dynamo_search;
    use dynamo_lab_core::dynamics::is_dynamo;

    #[test]
    fn agrees_with_the_sequential_search() {
        for (n, d, rule) in [
            (4, 2, Rule::ReversibleBp(2)),
            (4, 2, Rule::Bp(3)),
            (5, 1, Rule::ReversibleBp(1)),
            (3, 2, Rule::Majority),
            (6, 1, Rule::Bp(2)),
        ] {
            let s = TorusShape::new(n, d).unwrap();
            let opts = SearchOptions::for_shape(s);
            let seq = min_dynamo_search(s, rule, false, opts).unwrap();
            for threads in [1, 3, 8] {
                let par = min_dynamo_search_par(s, rule, false, opts, threads).unwrap();
                assert_eq!(par.minimum, seq.minimum, "{s} {rule} threads={threads}");
                assert!(par.exhaustive);
                assert!(is_dynamo(&par.witness, rule, opts.max_rounds).holds());
            }
        }
    }

    #[test]
    fn budget_stops_all_workers() {
        let s = TorusShape::new(4, 2).unwrap();
        let opts = SearchOptions { budget: 50, ..SearchOptions::for_shape(s) };
        let res = min_dynamo_search_par(s, Rule::ReversibleBp(4), false, opts, 4).unwrap();
        assert!(!res.exhaustive);
        assert!(res.witness.is_full());
        assert!(res.examined <= 50);
    }
}

//! Synchronous threshold dynamics.
//!
//! [`Engine`] evaluates one round for every vertex at once, 64 vertices per
//! machine word: for each axis the `+1` and `−1` neighbor states are produced
//! by two word shifts (one for the interior, one for the wraparound layer)
//! and summed into bit-sliced counters, which are then compared against the
//! threshold. Reads go to the round-`t` buffer and writes to the round-`t+1`
//! buffer, so evaluation order never matters.

use alloc::collections::VecDeque;
#[cfg(debug_assertions)]
use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::set::{tail_mask, word_count, VertexSet};
use crate::torus::{TorusShape, VertexId};

/// Update rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Irreversible r-bootstrap percolation: inactive vertices with at least
    /// `r` active neighbors activate, active vertices stay active.
    Bp(usize),
    /// Reversible r-bootstrap percolation: active next round iff at least
    /// `r` neighbors are active now.
    ReversibleBp(usize),
    /// Majority with self-preference on ties. On the `2d`-regular torus:
    /// active iff more than `d` active neighbors, or exactly `d` and active now.
    Majority,
}

impl Rule {
    pub fn threshold(&self) -> Option<usize> {
        match *self {
            Rule::Bp(r) | Rule::ReversibleBp(r) => Some(r),
            Rule::Majority => None,
        }
    }

    pub fn validate(&self, shape: TorusShape) -> Result<()> {
        match self.threshold() {
            Some(r) if r == 0 || r > shape.degree() => {
                Err(Error::InvalidThreshold { r, min: 1, max: shape.degree() })
            }
            _ => Ok(()),
        }
    }

    pub fn is_reversible(&self) -> bool {
        !matches!(self, Rule::Bp(_))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Bp(r) => write!(f, "bp({r})"),
            Rule::ReversibleBp(r) => write!(f, "rbp({r})"),
            Rule::Majority => f.write_str("maj"),
        }
    }
}

const PLANES: usize = 8;

#[inline]
fn shifted_down(src: &[u64], k: usize, w: usize) -> u64 {
    // bit i of the result is bit i + k of src
    let (q, b) = (k / 64, k % 64);
    let lo = src.get(w + q).copied().unwrap_or(0);
    if b == 0 {
        return lo;
    }
    let hi = src.get(w + q + 1).copied().unwrap_or(0);
    (lo >> b) | (hi << (64 - b))
}

#[inline]
fn shifted_up(src: &[u64], k: usize, w: usize) -> u64 {
    // bit i of the result is bit i − k of src
    let (q, b) = (k / 64, k % 64);
    if w < q {
        return 0;
    }
    let lo = src[w - q];
    if b == 0 {
        return lo;
    }
    let carry = if w > q { src[w - q - 1] >> (64 - b) } else { 0 };
    (lo << b) | carry
}

#[inline]
fn add_plane(planes: &mut [u64; PLANES], mut carry: u64) {
    for p in planes.iter_mut() {
        if carry == 0 {
            break;
        }
        let c = *p & carry;
        *p ^= carry;
        carry = c;
    }
}

/// Lanes whose counter is at least `k`.
#[inline]
fn at_least(planes: &[u64; PLANES], k: usize) -> u64 {
    if k >= 1 << PLANES {
        return 0;
    }
    let (mut gt, mut eq) = (0u64, !0u64);
    for p in (0..PLANES).rev() {
        if (k >> p) & 1 == 1 {
            eq &= planes[p];
        } else {
            gt |= eq & planes[p];
            eq &= !planes[p];
        }
    }
    gt | eq
}

#[inline]
fn exactly(planes: &[u64; PLANES], k: usize) -> u64 {
    let mut eq = !0u64;
    for (p, plane) in planes.iter().enumerate() {
        eq &= if (k >> p) & 1 == 1 { *plane } else { !*plane };
    }
    eq
}

struct Axis {
    stride: usize,
    wrap: usize,
    /// vertices with `x_j < n`, whose `+1` neighbor does not wrap
    up_inner: Vec<u64>,
    /// vertices with `x_j > 1`, whose `−1` neighbor does not wrap
    down_inner: Vec<u64>,
}

/// Word-parallel update kernel for one torus shape.
pub struct Engine {
    shape: TorusShape,
    axes: Vec<Axis>,
    last_mask: u64,
}

impl Engine {
    pub fn new(shape: TorusShape) -> Self {
        let n = shape.n();
        let axes = (0..shape.d())
            .map(|axis| {
                let up = VertexSet::from_fn(shape, |v| shape.coordinate(v, axis) < n);
                let down = VertexSet::from_fn(shape, |v| shape.coordinate(v, axis) > 1);
                let stride = shape.stride(axis);
                Axis {
                    stride,
                    wrap: (n - 1) * stride,
                    up_inner: up.words().to_vec(),
                    down_inner: down.words().to_vec(),
                }
            })
            .collect();
        Engine { shape, axes, last_mask: tail_mask(shape.vertex_count()) }
    }

    pub fn shape(&self) -> TorusShape {
        self.shape
    }

    /// One synchronous round: `dst = f(src)`. Both slices hold `⌈n^d/64⌉` words.
    pub fn step_into(&self, rule: Rule, src: &[u64], dst: &mut [u64]) {
        let words = word_count(self.shape.vertex_count());
        assert!(src.len() == words && dst.len() == words);
        let d = self.shape.d();
        for w in 0..words {
            let mut planes = [0u64; PLANES];
            for a in &self.axes {
                let (ui, di) = (a.up_inner[w], a.down_inner[w]);
                let plus = (shifted_down(src, a.stride, w) & ui) | (shifted_up(src, a.wrap, w) & !ui);
                let minus = (shifted_up(src, a.stride, w) & di) | (shifted_down(src, a.wrap, w) & !di);
                add_plane(&mut planes, plus);
                add_plane(&mut planes, minus);
            }
            let next = match rule {
                Rule::Bp(r) => src[w] | at_least(&planes, r),
                Rule::ReversibleBp(r) => at_least(&planes, r),
                Rule::Majority => at_least(&planes, d + 1) | (exactly(&planes, d) & src[w]),
            };
            dst[w] = if w + 1 == words { next & self.last_mask } else { next };
        }
    }

    pub fn step(&self, config: &VertexSet, rule: Rule) -> VertexSet {
        assert_eq!(config.shape(), self.shape);
        let mut out = VertexSet::empty(self.shape);
        self.step_into(rule, config.words(), out.words_mut());
        out
    }
}

/// One synchronous round of `rule` applied to `config`.
pub fn step(config: &VertexSet, rule: Rule) -> VertexSet {
    Engine::new(config.shape()).step(config, rule)
}

/// The default round budget, `4·d·n + 16`.
pub fn default_max_rounds(shape: TorusShape) -> usize {
    4 * shape.d() * shape.n() + 16
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// All vertices active at this round (and forever after).
    Percolated { round: usize },
    /// `ω(entry + period) = ω(entry)` without percolation; `period ∈ {1, 2}`.
    Cycle { entry: usize, period: usize },
    /// Neither stopper fired within `limit` rounds.
    BudgetExhausted { limit: usize },
    /// An active vertex became inactive at this round. Only produced when
    /// [`RunOptions::stop_on_decrease`] is set.
    Decreased { round: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    /// `ω(t+1) ≥ ω(t)` held for every simulated round.
    pub monotone: bool,
    pub rounds_run: usize,
    /// `ω(0), ω(1), …` when a trace was requested.
    pub trace: Option<Vec<VertexSet>>,
}

impl Outcome {
    pub fn percolated(&self) -> bool {
        matches!(self.verdict, Verdict::Percolated { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub max_rounds: usize,
    pub record_trace: bool,
    pub stop_on_decrease: bool,
}

impl RunOptions {
    pub fn for_shape(shape: TorusShape) -> Self {
        RunOptions { max_rounds: default_max_rounds(shape), record_trace: false, stop_on_decrease: false }
    }

    pub fn max_rounds(mut self, max_rounds: usize) -> Self {
        self.max_rounds = max_rounds;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

/// Reusable simulation state; avoids reallocating buffers across many runs.
pub struct Simulator {
    engine: Engine,
    cur: Vec<u64>,
    next: Vec<u64>,
    prev: Vec<u64>,
}

fn all_ones(words: &[u64], last_mask: u64) -> bool {
    let n = words.len();
    words[..n - 1].iter().all(|&w| w == !0) && words[n - 1] == last_mask
}

impl Simulator {
    pub fn new(shape: TorusShape) -> Self {
        let words = word_count(shape.vertex_count());
        Simulator { engine: Engine::new(shape), cur: vec![0; words], next: vec![0; words], prev: vec![0; words] }
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// Iterates `rule` from `config` until all-active, a repeat
    /// `ω(t+2) = ω(t)`, or the round budget.
    pub fn run(&mut self, config: &VertexSet, rule: Rule, opts: RunOptions) -> Outcome {
        let shape = self.engine.shape;
        assert_eq!(config.shape(), shape);
        let last_mask = self.engine.last_mask;
        self.cur.copy_from_slice(config.words());
        let mut trace = opts.record_trace.then(|| vec![config.clone()]);
        let mut monotone = true;
        let mut have_prev = false;
        #[cfg(debug_assertions)]
        let mut seen: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        #[cfg(debug_assertions)]
        seen.insert(self.cur.clone(), 0);

        let finish = |verdict, monotone, rounds_run, trace| Outcome { verdict, monotone, rounds_run, trace };
        if all_ones(&self.cur, last_mask) {
            return finish(Verdict::Percolated { round: 0 }, true, 0, trace);
        }
        for t in 0..opts.max_rounds {
            self.engine.step_into(rule, &self.cur, &mut self.next);
            let round = t + 1;
            monotone &= self.cur.iter().zip(&self.next).all(|(a, b)| a & !b == 0);
            if let Some(tr) = trace.as_mut() {
                tr.push(VertexSet::from_words(shape, self.next.clone()).expect("engine keeps tail clear"));
            }
            #[cfg(debug_assertions)]
            if let Some(first) = seen.insert(self.next.clone(), round) {
                // symmetric threshold networks only have periods 1 and 2
                debug_assert!(round - first <= 2, "cycle of period {} from round {first}", round - first);
            }
            if opts.stop_on_decrease && !monotone {
                return finish(Verdict::Decreased { round }, false, round, trace);
            }
            if all_ones(&self.next, last_mask) {
                return finish(Verdict::Percolated { round }, monotone, round, trace);
            }
            if self.next == self.cur {
                return finish(Verdict::Cycle { entry: t, period: 1 }, monotone, round, trace);
            }
            if have_prev && self.next == self.prev {
                return finish(Verdict::Cycle { entry: t - 1, period: 2 }, monotone, round, trace);
            }
            core::mem::swap(&mut self.prev, &mut self.cur);
            core::mem::swap(&mut self.cur, &mut self.next);
            have_prev = true;
        }
        finish(Verdict::BudgetExhausted { limit: opts.max_rounds }, monotone, opts.max_rounds, trace)
    }
}

/// Runs the process induced by `rule` from `config`.
pub fn run(config: &VertexSet, rule: Rule, opts: RunOptions) -> Outcome {
    Simulator::new(config.shape()).run(config, rule, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified,
    Refuted,
    /// The round budget ran out before either stopper fired.
    Indeterminate,
}

/// A yes/no/unknown answer together with the run that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamoCheck {
    pub verification: Verification,
    pub outcome: Outcome,
}

impl DynamoCheck {
    pub fn holds(&self) -> bool {
        self.verification == Verification::Verified
    }

    fn from_outcome(outcome: Outcome, need_monotone: bool) -> Self {
        let verification = match outcome.verdict {
            Verdict::Percolated { .. } if !need_monotone || outcome.monotone => Verification::Verified,
            Verdict::BudgetExhausted { .. } if !need_monotone || outcome.monotone => Verification::Indeterminate,
            _ => Verification::Refuted,
        };
        DynamoCheck { verification, outcome }
    }
}

/// Does `config` eventually make every vertex active (and keep it so)?
pub fn is_dynamo(config: &VertexSet, rule: Rule, max_rounds: usize) -> DynamoCheck {
    let opts = RunOptions::for_shape(config.shape()).max_rounds(max_rounds);
    DynamoCheck::from_outcome(run(config, rule, opts), false)
}

/// A dynamo whose process never deactivates a vertex.
pub fn is_monotone_dynamo(config: &VertexSet, rule: Rule, max_rounds: usize) -> DynamoCheck {
    let opts = RunOptions { stop_on_decrease: true, ..RunOptions::for_shape(config.shape()).max_rounds(max_rounds) };
    DynamoCheck::from_outcome(run(config, rule, opts), true)
}

impl Simulator {
    pub fn check(&mut self, config: &VertexSet, rule: Rule, monotone: bool, max_rounds: usize) -> DynamoCheck {
        let opts = RunOptions {
            stop_on_decrease: monotone,
            ..RunOptions::for_shape(config.shape()).max_rounds(max_rounds)
        };
        DynamoCheck::from_outcome(self.run(config, rule, opts), monotone)
    }
}

/// Whether every member of `set` has enough neighbors inside `set` to stay
/// active: `r` for reversible r-BP, `d` for majority; always true for BP.
pub fn is_stable_set(set: &VertexSet, rule: Rule) -> bool {
    let need = match rule {
        Rule::Bp(_) => return true,
        Rule::ReversibleBp(r) => r,
        Rule::Majority => set.shape().d(),
    };
    set.iter().all(|v| set.neighbors_in(v) >= need)
}

/// Final state of irreversible r-BP from `config`, by worklist propagation.
///
/// Each inactive vertex keeps a count of active neighbors and is queued the
/// moment the count reaches `r`, so the cost is `O(n^d · d)`.
pub fn bp_closure(config: &VertexSet, r: usize) -> VertexSet {
    let shape = config.shape();
    assert!(r >= 1 && r <= shape.degree(), "threshold {r} out of range");
    let mut active = config.clone();
    let mut counts = vec![0u16; shape.vertex_count()];
    let mut queue = VecDeque::new();
    let mut bump = |u: VertexId, active: &VertexSet, queue: &mut VecDeque<VertexId>| {
        if !active.contains(u) {
            counts[u.0] += 1;
            if counts[u.0] as usize == r {
                queue.push_back(u);
            }
        }
    };
    for v in config.iter() {
        shape.for_each_neighbor(v, |u| bump(u, &active, &mut queue));
    }
    while let Some(u) = queue.pop_front() {
        active.insert(u);
        shape.for_each_neighbor(u, |w| bump(w, &active, &mut queue));
    }
    active
}

/// Reference cycle detector: remembers every state and reports
/// `(entry, period)` of the first repeat, or `None` if the budget runs out.
pub fn find_cycle_exact(config: &VertexSet, rule: Rule, max_rounds: usize) -> Option<(usize, usize)> {
    let engine = Engine::new(config.shape());
    let mut history: Vec<Vec<u64>> = vec![config.words().to_vec()];
    let mut index: BTreeSet<Vec<u64>> = BTreeSet::new();
    index.insert(config.words().to_vec());
    let mut cur = config.words().to_vec();
    let mut next = cur.clone();
    for t in 1..=max_rounds {
        engine.step_into(rule, &cur, &mut next);
        if index.contains(&next) {
            let entry = history.iter().position(|h| *h == next).expect("indexed state is in history");
            return Some((entry, t - entry));
        }
        index.insert(next.clone());
        history.push(next.clone());
        core::mem::swap(&mut cur, &mut next);
    }
    None
}

/// Runs `rule` and returns the first round at which a whole parity class
/// `A_i` is active, as `(i, round)`. `A_0` wins ties.
pub fn first_full_parity_class(config: &VertexSet, rule: Rule, max_rounds: usize) -> Option<(u8, usize)> {
    let shape = config.shape();
    let classes = [
        crate::sets::parity_class(shape, 0).expect("valid class"),
        crate::sets::parity_class(shape, 1).expect("valid class"),
    ];
    let engine = Engine::new(shape);
    let mut cur = config.clone();
    for round in 0..=max_rounds {
        for (i, class) in classes.iter().enumerate() {
            if class.is_subset(&cur) {
                return Some((i as u8, round));
            }
        }
        cur = engine.step(&cur, rule);
    }
    None
}

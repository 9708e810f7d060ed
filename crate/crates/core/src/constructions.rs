//! Explicit dynamo constructions and the transforms between them.
//!
//! Every builder returns a [`ConstructionReport`] with the configuration and
//! an exact upper bound on its size. The bound is split into the leading term
//! (the asymptotic value the construction is built to meet) and a concrete
//! lower-order allowance `c·n^e`, so that
//!
//! ```text
//! leading − c·n^e  ≤  |config|  ≤  predicted_size_bound  ≤  leading + c·n^e
//! ```
//!
//! can be checked on every instance.
//!
//! The large-threshold sets `S` are residue classes of a weighted coordinate
//! sum `f(x) = Σ c_i·x_i mod m`. The bound used for `|S|` counts, along each
//! line in direction `x_1` (on which `f` runs through all residues), at most
//! `⌊n/m⌋·s + min(n mod m, s)` members, where `s` is the number of accepted
//! residues.

use alloc::vec::Vec;
use core::fmt;

use crate::analysis::{binomial, Rational};
use crate::dynamics::{is_dynamo, is_monotone_dynamo, first_full_parity_class, Rule, Verification};
use crate::error::{Error, Result};
use crate::set::VertexSet;
use crate::sets::{border_set, index_family, parity_class, SubTorus};
use crate::torus::TorusShape;

pub use crate::sets::build_h;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    Dynamo,
    MonotoneDynamo,
    /// Some round has a whole parity class active.
    A0Activator,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Dynamo => "dynamo",
            Claim::MonotoneDynamo => "monotone dynamo",
            Claim::A0Activator => "A0-activator",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    pub name: &'static str,
    pub config: VertexSet,
    pub predicted_size_bound: usize,
    /// Leading term of the size, as a value at this `n`.
    pub leading_term: Rational,
    /// `c` in the lower-order allowance `c·n^e`.
    pub allowance: Rational,
    /// `e` in the lower-order allowance `c·n^e`.
    pub allowance_exponent: usize,
    pub claim: Claim,
    pub model: Rule,
}

impl ConstructionReport {
    pub fn size(&self) -> usize {
        self.config.cardinality()
    }

    pub fn shape(&self) -> TorusShape {
        self.config.shape()
    }

    /// `c·n^e` evaluated at this `n`.
    pub fn allowance_value(&self) -> Rational {
        self.allowance * Rational::from_integer(pow(self.shape().n(), self.allowance_exponent))
    }

    /// `leading − c·n^e ≤ size ≤ predicted_size_bound ≤ leading + c·n^e`.
    pub fn size_within_allowance(&self) -> bool {
        let size = Rational::from_integer(self.size() as i128);
        let bound = Rational::from_integer(self.predicted_size_bound as i128);
        let slack = self.allowance_value();
        self.size() <= self.predicted_size_bound
            && size >= self.leading_term - slack
            && bound <= self.leading_term + slack
    }

    /// Runs the claim through the simulator.
    pub fn verify(&self, max_rounds: usize) -> Verification {
        match self.claim {
            Claim::Dynamo => is_dynamo(&self.config, self.model, max_rounds).verification,
            Claim::MonotoneDynamo => is_monotone_dynamo(&self.config, self.model, max_rounds).verification,
            Claim::A0Activator => match first_full_parity_class(&self.config, self.model, max_rounds) {
                Some(_) => Verification::Verified,
                None => Verification::Indeterminate,
            },
        }
    }
}

fn pow(n: usize, e: usize) -> i128 {
    (n as i128).pow(e as u32)
}

fn int(x: i128) -> Rational {
    Rational::from_integer(x)
}

/// `f(x) = Σ coeffs[i]·x_{i+1} mod m`, accepted residues `1..=s`.
#[derive(Clone, Debug)]
struct ResidueRule {
    coeffs: Vec<usize>,
    m: usize,
    s: usize,
}

impl ResidueRule {
    fn large_r(d: usize, r: usize) -> Self {
        if r.is_multiple_of(2) {
            ResidueRule { coeffs: (1..r / 2).collect(), m: r / 2, s: r - d }
        } else {
            ResidueRule { coeffs: (1..=(r - 1) / 2).map(|i| 2 * i).collect(), m: r, s: 2 * (r - d) }
        }
    }

    fn majority(d: usize) -> Self {
        if d.is_multiple_of(2) {
            ResidueRule { coeffs: (1..=d / 2).collect(), m: (d + 2) / 2, s: 1 }
        } else {
            ResidueRule { coeffs: (1..=d.div_ceil(2)).map(|i| 2 * i).collect(), m: d + 2, s: 2 }
        }
    }

    fn set(&self, shape: TorusShape) -> VertexSet {
        VertexSet::from_coords_fn(shape, |xs| {
            let f = self.coeffs.iter().zip(xs).map(|(c, x)| c * x).sum::<usize>() % self.m;
            (1..=self.s).contains(&f)
        })
    }

    fn size_bound(&self, shape: TorusShape) -> usize {
        let n = shape.n();
        let per_line = n / self.m * self.s + (n % self.m).min(self.s);
        per_line * shape.n().pow(shape.d() as u32 - 1)
    }

    fn density(&self) -> Rational {
        Rational::new(self.s as i128, self.m as i128)
    }

    /// Largest possible `size_bound − density·n^d`, per `n^(d−1)`.
    fn excess(&self) -> Rational {
        Rational::new((self.s * (self.m - self.s)) as i128, self.m as i128)
    }
}

fn need_side(shape: TorusShape, min: usize, what: &'static str) -> Result<()> {
    if shape.n() < min {
        return Err(Error::SideTooSmall { n: shape.n(), min, what });
    }
    Ok(())
}

fn large_r_range(shape: TorusShape, r: usize, max: usize) -> Result<()> {
    let d = shape.d();
    if r <= d || r > max {
        return Err(Error::InvalidThreshold { r, min: d + 1, max });
    }
    Ok(())
}

fn small_r_range(shape: TorusShape, r: usize) -> Result<()> {
    if r == 0 || r > shape.d() {
        return Err(Error::InvalidThreshold { r, min: 1, max: shape.d() });
    }
    Ok(())
}

/// The set `S` for `d < r < 2d`: every member has exactly `r` neighbors in
/// `S`, every other vertex exactly `2(r − d)`, as long as no weighted
/// coordinate wraps around (always, when the modulus divides `n`).
pub fn build_s_threshold(shape: TorusShape, r: usize) -> Result<VertexSet> {
    large_r_range(shape, r, 2 * shape.d() - 1)?;
    need_side(shape, 5, "the threshold set S")?;
    Ok(ResidueRule::large_r(shape.d(), r).set(shape))
}

/// The majority analog of `S`: members have exactly `d` neighbors in it,
/// non-members exactly two, again away from wraparound.
pub fn build_majority_s(shape: TorusShape) -> Result<VertexSet> {
    need_side(shape, 5, "the majority set S")?;
    Ok(ResidueRule::majority(shape.d()).set(shape))
}

fn h_size(shape: TorusShape) -> usize {
    let (n, d) = (shape.n(), shape.d() as u32);
    n.pow(d) - (n - 2).pow(d)
}

/// `H ∪ S`, a monotone dynamo of reversible r-BP for `d < r ≤ 2d`. For
/// `r = 2d` only the all-active configuration qualifies.
pub fn build_large_r_monotone(shape: TorusShape, r: usize) -> Result<ConstructionReport> {
    let d = shape.d();
    large_r_range(shape, r, 2 * d)?;
    need_side(shape, 5, "the large-r construction")?;
    let model = Rule::ReversibleBp(r);
    if r == 2 * d {
        return Ok(ConstructionReport {
            name: "large-r",
            config: VertexSet::full(shape),
            predicted_size_bound: shape.vertex_count(),
            leading_term: int(pow(shape.n(), d)),
            allowance: int(0),
            allowance_exponent: d - 1,
            claim: Claim::MonotoneDynamo,
            model,
        });
    }
    let rule = ResidueRule::large_r(d, r);
    let config = build_h(shape)?.union(&rule.set(shape));
    Ok(ConstructionReport {
        name: "large-r",
        config,
        predicted_size_bound: rule.size_bound(shape) + h_size(shape),
        leading_term: rule.density() * int(pow(shape.n(), d)),
        allowance: int(2 * d as i128) + rule.excess(),
        allowance_exponent: d - 1,
        claim: Claim::MonotoneDynamo,
        model,
    })
}

/// Irreversible r-BP dynamo for `d < r ≤ 2d`: [`halve_monotone`] of `H ∪ S`.
pub fn build_large_r_bp(shape: TorusShape, r: usize) -> Result<ConstructionReport> {
    let mono = build_large_r_monotone(shape, r)?;
    let n = shape.n();
    let d = shape.d();
    let border = n.pow(d as u32) - (n - 1).pow(d as u32);
    Ok(ConstructionReport {
        name: "large-r-bp",
        config: halve_monotone(&mono.config),
        predicted_size_bound: mono.predicted_size_bound / 2 + border,
        leading_term: mono.leading_term / int(2),
        allowance: mono.allowance / int(2) + int(d as i128),
        allowance_exponent: d - 1,
        claim: Claim::Dynamo,
        model: Rule::Bp(r),
    })
}

/// Unions one copy of a per-sub-torus pattern over every `T(k)`, `k ∈ K(r)`.
/// `copy` maps the sub-torus `T_n^(r−1)` to a report for it.
fn over_sub_tori(
    shape: TorusShape,
    r: usize,
    mut copy: impl FnMut(TorusShape) -> Result<ConstructionReport>,
) -> Result<(VertexSet, ConstructionReport)> {
    let family = index_family(shape.d(), r)?;
    let mut config = VertexSet::empty(shape);
    let mut sub_report = None;
    for k in &family {
        let sub = SubTorus::new(shape, k)?;
        let rep = match &sub_report {
            Some(rep) => rep,
            None => sub_report.insert(copy(sub.inner())?),
        };
        config.union_with(&sub.embed(&rep.config));
    }
    Ok((config, sub_report.expect("K(r) is never empty")))
}

/// Leading term and allowance of `copies` unioned sub-torus copies. Two
/// distinct `T(k)` meet in at most `n^(r−2)` vertices, which the union may
/// lose relative to the sum.
fn scale(rep: &ConstructionReport, copies: i128) -> (Rational, Rational) {
    let overlaps = copies * (copies - 1) / 2;
    (rep.leading_term * int(copies), rep.allowance * int(copies) + int(overlaps))
}

/// Monotone dynamo of reversible r-BP for `r ≤ d`: the large-r monotone
/// dynamo of `T_n^(r−1)` placed in each sub-torus `T(k)`. For `r = 1`, two
/// adjacent vertices. Needs `n ≥ 5` when `r ≥ 2`.
pub fn build_small_r_monotone(shape: TorusShape, r: usize) -> Result<ConstructionReport> {
    small_r_range(shape, r)?;
    let model = Rule::ReversibleBp(r);
    if r == 1 {
        let config = VertexSet::from_coords_fn(shape, |xs| xs[0] <= 2 && xs[1..].iter().all(|&x| x == 1));
        return Ok(small_report("small-r-monotone", config, 2, int(2), int(0), 0, Claim::MonotoneDynamo, model));
    }
    need_side(shape, 5, "the small-r construction")?;
    let (config, sub) = over_sub_tori(shape, r, |inner| build_large_r_monotone(inner, r))?;
    let copies = binomial(shape.d(), r - 1);
    let (leading, allowance) = scale(&sub, copies);
    let bound = copies as usize * sub.predicted_size_bound;
    Ok(small_report("small-r-monotone", config, bound, leading, allowance, r - 2, Claim::MonotoneDynamo, model))
}

#[allow(clippy::too_many_arguments)]
fn small_report(
    name: &'static str,
    config: VertexSet,
    predicted_size_bound: usize,
    leading_term: Rational,
    allowance: Rational,
    allowance_exponent: usize,
    claim: Claim,
    model: Rule,
) -> ConstructionReport {
    ConstructionReport { name, config, predicted_size_bound, leading_term, allowance, allowance_exponent, claim, model }
}

/// Irreversible r-BP dynamo for `r ≤ d`: each sub-torus copy is halved with
/// [`halve_monotone`]. For `r = 1`, a single vertex.
pub fn build_small_r_bp(shape: TorusShape, r: usize) -> Result<ConstructionReport> {
    small_r_range(shape, r)?;
    let model = Rule::Bp(r);
    if r == 1 {
        let config = VertexSet::from_coords_fn(shape, |xs| xs.iter().all(|&x| x == 1));
        return Ok(small_report("small-r-bp", config, 1, int(1), int(0), 0, Claim::Dynamo, model));
    }
    need_side(shape, 5, "the small-r construction")?;
    let (config, sub) = over_sub_tori(shape, r, |inner| {
        let mono = build_large_r_monotone(inner, r)?;
        let n = inner.n();
        let e = inner.d() as u32;
        Ok(ConstructionReport {
            config: halve_monotone(&mono.config),
            predicted_size_bound: mono.predicted_size_bound / 2 + n.pow(e) - (n - 1).pow(e),
            leading_term: mono.leading_term / int(2),
            allowance: mono.allowance / int(2) + int(inner.d() as i128),
            ..mono
        })
    })?;
    let copies = binomial(shape.d(), r - 1);
    let (leading, allowance) = scale(&sub, copies);
    let bound = copies as usize * sub.predicted_size_bound;
    Ok(small_report("small-r-bp", config, bound, leading, allowance, r - 2, Claim::Dynamo, model))
}

/// Dynamo of reversible r-BP for odd `n` and `r ≤ d`: each sub-torus copy
/// is the [`to_a0_activator`] transform of the large-r monotone dynamo. For
/// `r = 1`, the single vertex `(1, …, 1)`. Needs `n ≥ 7` when `r ≥ 2`.
pub fn build_small_r_reversible_odd(shape: TorusShape, r: usize) -> Result<ConstructionReport> {
    small_r_range(shape, r)?;
    if shape.n().is_multiple_of(2) {
        return Err(Error::OddSideRequired { n: shape.n() });
    }
    let model = Rule::ReversibleBp(r);
    if r == 1 {
        let config = VertexSet::from_coords_fn(shape, |xs| xs.iter().all(|&x| x == 1));
        return Ok(small_report("small-r-odd", config, 1, int(1), int(0), 0, Claim::Dynamo, model));
    }
    need_side(shape, 7, "the odd-n small-r construction")?;
    let (config, sub) = over_sub_tori(shape, r, |inner| {
        let mono = build_large_r_monotone(inner, r)?;
        let n = inner.n();
        let e = inner.d() as u32;
        Ok(ConstructionReport {
            config: to_a0_activator(&mono.config, r)?,
            predicted_size_bound: mono.predicted_size_bound / 2 + n.pow(e) - (n - 2).pow(e),
            leading_term: mono.leading_term / int(2),
            allowance: mono.allowance / int(2) + int(2 * inner.d() as i128),
            ..mono
        })
    })?;
    let copies = binomial(shape.d(), r - 1);
    let (leading, allowance) = scale(&sub, copies);
    let bound = copies as usize * sub.predicted_size_bound;
    Ok(small_report("small-r-odd", config, bound, leading, allowance, r - 2, Claim::Dynamo, model))
}

/// `A_0` on a torus of odd side, a dynamo of reversible r-BP for every
/// `1 ≤ r ≤ d`. The report names `r = d`.
pub fn build_a0(shape: TorusShape) -> Result<ConstructionReport> {
    if shape.n().is_multiple_of(2) {
        return Err(Error::OddSideRequired { n: shape.n() });
    }
    let config = parity_class(shape, 0)?;
    // |A_0| = (n^d + (−1)^d) / 2 for odd n
    let predicted = if shape.d().is_multiple_of(2) { shape.vertex_count() / 2 + 1 } else { shape.vertex_count() / 2 };
    Ok(ConstructionReport {
        name: "a0",
        config,
        predicted_size_bound: predicted,
        leading_term: Rational::new(pow(shape.n(), shape.d()), 2),
        allowance: Rational::new(1, 2),
        allowance_exponent: 0,
        claim: Claim::Dynamo,
        model: Rule::ReversibleBp(shape.d()),
    })
}

/// `H ∪ S` for majority, a monotone dynamo.
pub fn build_majority_dynamo(shape: TorusShape) -> Result<ConstructionReport> {
    need_side(shape, 5, "the majority construction")?;
    let d = shape.d();
    let rule = ResidueRule::majority(d);
    Ok(ConstructionReport {
        name: "majority",
        config: build_h(shape)?.union(&rule.set(shape)),
        predicted_size_bound: rule.size_bound(shape) + h_size(shape),
        leading_term: rule.density() * int(pow(shape.n(), d)),
        allowance: int(2 * d as i128) + rule.excess(),
        allowance_exponent: d - 1,
        claim: Claim::MonotoneDynamo,
        model: Rule::Majority,
    })
}

/// Index of the parity class holding fewer members of `config`; `A_0` on ties.
fn lighter_class(config: &VertexSet) -> Result<(u8, VertexSet)> {
    let shape = config.shape();
    let a0 = parity_class(shape, 0)?.intersection(config);
    let a1 = config.difference(&a0);
    Ok(if a1.cardinality() < a0.cardinality() { (1, a1) } else { (0, a0) })
}

/// On a bipartite torus (even `n`) keeps only the members of `config` in
/// the lighter parity class. Turns a reversible r-BP dynamo into an r-BP
/// dynamo of at most half the size.
pub fn halve_bipartite(config: &VertexSet) -> Result<VertexSet> {
    let n = config.shape().n();
    if n % 2 == 1 {
        return Err(Error::EvenSideRequired { n });
    }
    Ok(lighter_class(config)?.1)
}

/// `(W ∩ A_i) ∪ (W ∩ border)` for the lighter class `A_i`, where `border` is
/// the layer `{some x_j = n}`. Turns a monotone reversible r-BP dynamo `W`
/// into an r-BP dynamo, for any `n`.
pub fn halve_monotone(config: &VertexSet) -> VertexSet {
    let shape = config.shape();
    let (_, mut out) = lighter_class(config).expect("classes 0 and 1 are valid");
    out.union_with(&border_set(shape, 1).expect("n ≥ 3").intersection(config));
    out
}

/// `(W ∩ A_i) ∪ border₂` for the lighter class `A_i`, where `border₂` is the
/// layer `{some x_j ≥ n − 1}`. From a reversible r-BP dynamo `W` with
/// `d < r < 2d` the result eventually has a whole parity class active.
///
/// For `r = 2d` the border is not stable and `W` can only be all-active.
/// Instead the result is the neighborhood `N(A_i)` of the class with the
/// smaller neighborhood: a vertex is active after one round iff all its
/// neighbors are, so `A_i` is active at round 1.
pub fn to_a0_activator(config: &VertexSet, r: usize) -> Result<VertexSet> {
    let shape = config.shape();
    large_r_range(shape, r, 2 * shape.d())?;
    if r == 2 * shape.d() {
        let hoods = [0, 1].map(|i| {
            let class = parity_class(shape, i).expect("valid class");
            VertexSet::from_fn(shape, |v| shape.neighbors(v).iter().any(|&u| class.contains(u)))
        });
        let [n0, n1] = hoods;
        return Ok(if n1.cardinality() < n0.cardinality() { n1 } else { n0 });
    }
    let border = border_set(shape, 2)?;
    let (_, light) = lighter_class(config)?;
    Ok(light.union(&border))
}

/// Embeds `config` on `T_n^d` into `T_(n+3)^d`: same states on `[1, n]^d`,
/// every other vertex active.
pub fn pad_embed(config: &VertexSet) -> Result<VertexSet> {
    let small = config.shape();
    let n = small.n();
    let large = TorusShape::new(n + 3, small.d())?;
    Ok(VertexSet::from_coords_fn(large, |xs| {
        if xs.iter().all(|&x| x <= n) {
            let idx = xs.iter().rev().fold(0, |acc, &x| acc * n + (x - 1));
            config.contains(crate::torus::VertexId(idx))
        } else {
            true
        }
    }))
}

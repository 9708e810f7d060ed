use alloc::vec::Vec;

use num_rational::Ratio;

use crate::dynamics::Rule;
use crate::error::{Error, Result};
use crate::torus::TorusShape;

/// Exact rational arithmetic for bound formulas.
pub type Rational = Ratio<i128>;

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

fn pow(n: usize, e: usize) -> i128 {
    (n as i128).pow(e as u32)
}

fn int(x: i128) -> Rational {
    Rational::from_integer(x)
}

fn ratio(a: i128, b: i128) -> Rational {
    Rational::new(a, b)
}

/// Leading-term value of one cell of the table of minimum (monotone) dynamo
/// sizes on `T_n^d`. Each cell is tight up to lower-order terms, so `lower`
/// and `upper` carry the same leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRecord {
    pub d: usize,
    pub n: usize,
    pub model: Rule,
    pub monotone: bool,
    pub lower: Rational,
    pub upper: Rational,
    pub source: &'static str,
}

/// Looks up the leading term for `(d, rule, n, monotone)`.
pub fn table1_bounds(d: usize, rule: Rule, n: usize, monotone: bool) -> Result<BoundsRecord> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if let Some(r) = rule.threshold() {
        if r == 0 || r > 2 * d {
            return Err(Error::InvalidThreshold { r, min: 1, max: 2 * d });
        }
    }
    let (value, source) = match rule {
        Rule::Bp(r) if r <= d => {
            (ratio(binomial(d, r - 1) * pow(n, r - 1), r as i128), "bp/small-r (weak saturation)")
        }
        Rule::Bp(r) => ((int(1) - ratio(d as i128, r as i128)) * int(pow(n, d)), "bp/large-r"),
        Rule::ReversibleBp(r) if r <= d => {
            let factor = if monotone || n.is_multiple_of(2) { 2 } else { 1 };
            let source = match (monotone, n.is_multiple_of(2)) {
                (true, _) => "rbp/small-r/monotone",
                (false, true) => "rbp/small-r/even-n",
                (false, false) => "rbp/small-r/odd-n",
            };
            (ratio(factor * binomial(d, r - 1) * pow(n, r - 1), r as i128), source)
        }
        Rule::ReversibleBp(r) => {
            (int(2) * (int(1) - ratio(d as i128, r as i128)) * int(pow(n, d)), "rbp/large-r")
        }
        Rule::Majority if monotone => {
            ((int(1) - ratio(d as i128, d as i128 + 2)) * int(pow(n, d)), "maj/monotone")
        }
        Rule::Majority => ((int(1) - ratio(d as i128, d as i128 + 1)) * int(pow(n, d)), "maj"),
    };
    Ok(BoundsRecord { d, n, model: rule, monotone, lower: value, upper: value, source })
}

/// One inequality `observed ≥ ⌈bound⌉`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: Rational,
    pub required: i128,
    pub observed: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub checks: Vec<BoundCheck>,
}

impl LowerBoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn push(&mut self, name: &'static str, bound: Rational, observed: usize) {
        let required = bound.ceil().to_integer().max(0);
        self.checks.push(BoundCheck { name, bound, required, observed, holds: observed as i128 >= required });
    }
}

/// Checks every closed-form lower bound that applies to a dynamo size
/// `observed` on `shape` (a proven minimum, or the size of any dynamo):
///
/// * monotone reversible r-BP on a Δ-regular graph: `≥ 2(1 − Δ/2r)·|G|`;
/// * monotone majority on a 2d-regular graph: `≥ (1 − d/(d+2))·|G|`;
/// * reversible r-BP on a bipartite torus (even `n`), given the r-BP
///   minimum `m`: `≥ 2m`;
/// * reversible (monotone or not) against BP: `≥ m`.
pub fn check_lower_bounds(
    shape: TorusShape,
    rule: Rule,
    monotone: bool,
    observed: usize,
    bp_minimum: Option<usize>,
) -> LowerBoundReport {
    let mut report = LowerBoundReport::default();
    let size = shape.vertex_count() as i128;
    let d = shape.d() as i128;
    match rule {
        Rule::ReversibleBp(r) => {
            let r = r as i128;
            if monotone {
                let delta = 2 * d;
                report.push("monotone-regular", int(2) * (int(1) - ratio(delta, 2 * r)) * int(size), observed);
            }
            if let Some(m) = bp_minimum {
                report.push("reversible-vs-bp", int(m as i128), observed);
                if shape.n().is_multiple_of(2) && r <= 2 * d {
                    report.push("bipartite-doubling", int(2 * m as i128), observed);
                }
            }
        }
        Rule::Majority if monotone => {
            report.push("monotone-majority", (int(1) - ratio(d, d + 2)) * int(size), observed);
        }
        _ => {}
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(10, 3), 120);
    }

    #[test]
    fn parity_dependence_on_the_cycle() {
        let odd = table1_bounds(1, Rule::ReversibleBp(1), 5, false).unwrap();
        assert_eq!(odd.lower, int(1));
        let even = table1_bounds(1, Rule::ReversibleBp(1), 4, false).unwrap();
        assert_eq!(even.lower, int(2));
        let mon = table1_bounds(1, Rule::ReversibleBp(1), 5, true).unwrap();
        assert_eq!(mon.lower, int(2));
    }

    #[test]
    fn large_r_cells() {
        let rec = table1_bounds(2, Rule::ReversibleBp(3), 12, false).unwrap();
        assert_eq!(rec.upper, int(96));
        assert!(rec.lower <= rec.upper);
        assert_eq!(table1_bounds(2, Rule::Bp(3), 12, false).unwrap().upper, int(48));
        assert_eq!(table1_bounds(2, Rule::Majority, 10, true).unwrap().upper, int(50));
        assert_eq!(table1_bounds(3, Rule::Majority, 10, false).unwrap().upper, int(250));
        assert_eq!(
            table1_bounds(3, Rule::ReversibleBp(2), 7, true).unwrap().upper,
            int(3 * 7)
        );
        assert_eq!(table1_bounds(3, Rule::Bp(3), 6, false).unwrap().upper, ratio(3 * 36, 3));
    }

    #[test]
    fn out_of_range_threshold() {
        assert!(table1_bounds(2, Rule::ReversibleBp(5), 5, false).is_err());
        assert!(table1_bounds(2, Rule::Bp(0), 5, false).is_err());
        assert!(table1_bounds(0, Rule::Majority, 5, false).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let c4 = TorusShape::new(4, 1).unwrap();
        let rep = check_lower_bounds(c4, Rule::ReversibleBp(2), true, 4, None);
        assert_eq!(rep.checks[0].required, 4);
        assert!(rep.all_hold());
        assert!(!check_lower_bounds(c4, Rule::ReversibleBp(2), true, 3, None).all_hold());

        let c6 = TorusShape::new(6, 1).unwrap();
        let rep = check_lower_bounds(c6, Rule::ReversibleBp(1), false, 2, Some(1));
        let dbl = rep.checks.iter().find(|c| c.name == "bipartite-doubling").unwrap();
        assert_eq!(dbl.required, 2);
        assert!(rep.all_hold());
        assert!(!check_lower_bounds(c6, Rule::ReversibleBp(1), false, 1, Some(1)).all_hold());

        let t4 = TorusShape::new(4, 2).unwrap();
        let rep = check_lower_bounds(t4, Rule::Majority, true, 8, None);
        assert_eq!(rep.checks[0].required, 8);
        assert!(rep.all_hold());
    }

    #[test]
    fn small_r_monotone_bound_is_vacuous() {
        let s = TorusShape::new(5, 3).unwrap();
        let rep = check_lower_bounds(s, Rule::ReversibleBp(2), true, 0, None);
        assert_eq!(rep.checks[0].required, 0);
    }
}

use dynamo_lab_core::analysis::table1_bounds;
use dynamo_lab_core::constructions::*;
use dynamo_lab_core::dynamics::{bp_closure, default_max_rounds, is_dynamo, Rule, Verification};
use dynamo_lab_core::sets::{border_set, build_h};
use dynamo_lab_core::{TorusShape, VertexSet};

fn t(n: usize, d: usize) -> TorusShape {
    TorusShape::new(n, d).unwrap()
}

/// Neighbors of `xs` by coordinate arithmetic, independent of the crate's
/// index math. Each entry is `(neighbor coords, axis, step)`.
fn coord_neighbors(n: usize, xs: &[usize]) -> Vec<(Vec<usize>, usize, i8)> {
    let mut out = Vec::new();
    for axis in 0..xs.len() {
        for step in [1i8, -1] {
            let mut ys = xs.to_vec();
            ys[axis] = if step == 1 { xs[axis] % n + 1 } else { (xs[axis] + n - 2) % n + 1 };
            out.push((ys, axis, step));
        }
    }
    out
}

fn all_coords(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|p| (1..=n).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

fn member(set: &VertexSet, xs: &[usize]) -> bool {
    let n = set.shape().n();
    let idx = xs.iter().rev().fold(0, |acc, &x| acc * n + x - 1);
    set.contains(dynamo_lab_core::VertexId(idx))
}

struct Structure {
    /// violations of the exact internal degree
    internal: usize,
    /// violations of the exact forward count for non-members off H
    forward: usize,
    /// violations of `≥ need` forward neighbors in S ∪ H off S ∪ H
    operational: usize,
    checked: usize,
}

/// `weighted` is the number of leading coordinates `f` depends on; exact
/// counts are only claimed where none of them wraps around.
fn structure(s: &VertexSet, weighted: usize, internal: usize, forward: usize, everywhere: bool) -> Structure {
    let shape = s.shape();
    let (n, d) = (shape.n(), shape.d());
    let h = build_h(shape).unwrap();
    let sh = s.union(&h);
    let mut out = Structure { internal: 0, forward: 0, operational: 0, checked: 0 };
    for xs in all_coords(n, d) {
        let nbrs = coord_neighbors(n, &xs);
        let j: usize = xs.iter().sum();
        let forward_of = |set: &VertexSet| {
            nbrs.iter().filter(|(ys, _, _)| ys.iter().sum::<usize>() != j - 1 && member(set, ys)).count()
        };
        if !member(&sh, &xs) && forward_of(&sh) < forward {
            out.operational += 1;
        }
        let applicable = everywhere || xs[..weighted].iter().all(|&x| (2..n).contains(&x));
        if !applicable {
            continue;
        }
        out.checked += 1;
        if member(s, &xs) {
            if nbrs.iter().filter(|(ys, _, _)| member(s, ys)).count() != internal {
                out.internal += 1;
            }
        } else if !member(&h, &xs) && forward_of(s) != forward {
            out.forward += 1;
        }
    }
    out
}

#[test]
fn large_r_s_structure() {
    // (d, r, n, weighted coordinates, modulus)
    for (d, r, n, k, m) in [(2, 3, 9, 1, 3), (2, 3, 12, 1, 3), (2, 3, 15, 1, 3), (3, 4, 9, 1, 2), (3, 4, 8, 1, 2), (3, 5, 9, 2, 5), (3, 5, 10, 2, 5)] {
        let s = build_s_threshold(t(n, d), r).unwrap();
        let res = structure(&s, k, r, r - d, n % m == 0);
        assert!(res.checked > 0);
        assert_eq!((res.internal, res.forward, res.operational), (0, 0, 0), "d={d} r={r} n={n}");
    }
}

#[test]
fn wraparound_breaks_exactness_when_modulus_does_not_divide() {
    // x_1 = 9 and x_1 = 1 are both odd, so the seam adds an S-neighbor
    let s = build_s_threshold(t(9, 3), 4).unwrap();
    let res = structure(&s, 1, 4, 1, true);
    assert!(res.internal > 0);
}

#[test]
fn majority_s_structure() {
    for (d, n, k, m) in [(2, 10, 1, 2), (2, 9, 1, 2), (3, 10, 2, 5), (3, 9, 2, 5), (4, 6, 2, 3), (1, 9, 1, 3)] {
        let s = build_majority_s(t(n, d)).unwrap();
        let res = structure(&s, k, d, 1, n % m == 0);
        assert_eq!((res.internal, res.forward, res.operational), (0, 0, 0), "d={d} n={n}");
    }
}

#[test]
fn s_sizes_by_enumeration() {
    let s = build_s_threshold(t(12, 2), 3).unwrap();
    let count = all_coords(12, 2).iter().filter(|xs| (2 * xs[0]) % 3 != 0).count();
    assert_eq!(s.cardinality(), count);
    assert_eq!(count, 96);
    assert!(build_s_threshold(t(8, 3), 4).unwrap().cardinality() <= 320);
    assert!(build_majority_s(t(10, 3)).unwrap().cardinality() <= 500);
}

fn grid() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 2..=4 {
        for n in 9..=16 {
            out.push((2, r, n));
        }
    }
    for r in 2..=6 {
        for n in [7, 9, 10] {
            out.push((3, r, n));
        }
    }
    out
}

fn builders(s: TorusShape, r: usize) -> Vec<ConstructionReport> {
    let mut reps = Vec::new();
    if r > s.d() {
        reps.push(build_large_r_monotone(s, r).unwrap());
        reps.push(build_large_r_bp(s, r).unwrap());
    } else {
        reps.push(build_small_r_monotone(s, r).unwrap());
        reps.push(build_small_r_bp(s, r).unwrap());
        if s.n() % 2 == 1 {
            reps.push(build_small_r_reversible_odd(s, r).unwrap());
        }
    }
    reps
}

fn table_leading(rep: &ConstructionReport) -> dynamo_lab_core::analysis::Rational {
    let s = rep.shape();
    let monotone = rep.claim == Claim::MonotoneDynamo;
    table1_bounds(s.d(), rep.model, s.n(), monotone).unwrap().upper
}

#[test]
fn every_builder_meets_its_claim_and_bound() {
    for (d, r, n) in grid() {
        let s = t(n, d);
        for rep in builders(s, r) {
            let ctx = format!("{} on {s} r={r}", rep.name);
            assert_eq!(rep.verify(default_max_rounds(s)), Verification::Verified, "{ctx}");
            assert!(rep.size() <= rep.predicted_size_bound, "{ctx}");
            assert!(rep.size_within_allowance(), "{ctx}");
            assert_eq!(rep.leading_term, table_leading(&rep), "{ctx}");
        }
    }
}

#[test]
fn halving_monotone_dynamos_gives_bp_dynamos() {
    for (d, r, n) in grid() {
        let s = t(n, d);
        let border = border_set(s, 1).unwrap();
        for rep in builders(s, r).into_iter().filter(|r| r.claim == Claim::MonotoneDynamo) {
            let w = &rep.config;
            let half = halve_monotone(w);
            assert!(bp_closure(&half, r).is_full(), "{s} r={r}");
            assert!(half.cardinality() <= w.cardinality() / 2 + w.intersection(&border).cardinality());
            if n % 2 == 0 {
                let bip = halve_bipartite(w).unwrap();
                assert!(bp_closure(&bip, r).is_full(), "{s} r={r}");
                assert!(2 * bip.cardinality() <= w.cardinality());
            }
        }
    }
}

#[test]
fn padding_keeps_reversible_dynamos() {
    for (d, r, n) in [(2, 2, 9), (2, 3, 9), (2, 2, 10), (3, 4, 7), (3, 2, 7)] {
        let s = t(n, d);
        for rep in builders(s, r).into_iter().filter(|rep| rep.model.is_reversible()) {
            let padded = pad_embed(&rep.config).unwrap();
            assert_eq!(padded.shape().n(), n + 3);
            let big = padded.shape();
            assert!(is_dynamo(&padded, rep.model, default_max_rounds(big)).holds(), "{} {s}", rep.name);
        }
    }
}

#[test]
fn activators_fill_a_parity_class() {
    for (n, d, r) in [(9, 2, 3), (11, 2, 3), (7, 3, 4), (7, 3, 5), (9, 1, 2), (7, 2, 4)] {
        let s = t(n, d);
        let w = build_large_r_monotone(s, r).unwrap().config;
        let out = to_a0_activator(&w, r).unwrap();
        assert!(
            dynamo_lab_core::dynamics::first_full_parity_class(&out, Rule::ReversibleBp(r), default_max_rounds(s))
                .is_some(),
            "{s} r={r}"
        );
    }
}

#[test]
fn odd_builders_reject_even_sides() {
    assert!(build_small_r_reversible_odd(t(8, 2), 2).is_err());
    assert!(build_small_r_reversible_odd(t(5, 2), 2).is_err());
    assert!(build_a0(t(6, 3)).is_err());
}

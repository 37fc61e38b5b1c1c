//! Deterministic generators shared by the test suites: random ordinals,
//! random maps supported below `w^3`, and the standard grid of test points.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::dynamics::TransitivityProblem;
use crate::homeo::{ClopenInterval, PwHomeo};
use crate::ordinal::Ordinal;
use crate::sieve::{ConstraintSystem, PartialInjection};

/// `w^2*a + w*b + c`.
pub fn cnf3(a: u64, b: u64, c: u64) -> Ordinal {
    let mut terms = Vec::new();
    for (e, k) in [(2u64, a), (1, b), (0, c)] {
        if k > 0 {
            terms.push((Ordinal::nat(e), BigUint::from(k)));
        }
    }
    Ordinal::from_terms(terms).expect("canonical by construction")
}

/// All `w^2*a + w*b + c` with `a, b, c <= n`, in increasing order.
pub fn grid(n: u64) -> Vec<Ordinal> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            for c in 0..=n {
                out.push(cnf3(a, b, c));
            }
        }
    }
    out
}

/// A random point below `w^3` with coefficients up to `max_coef`.
pub fn point_below_w3<R: Rng>(rng: &mut R, max_coef: u64) -> Ordinal {
    cnf3(
        rng.gen_range(0..=max_coef),
        rng.gen_range(0..=max_coef),
        rng.gen_range(0..=max_coef),
    )
}

/// A random point of rank `r <= 3` below `w^4`.
pub fn point_of_rank<R: Rng>(rng: &mut R, r: u64, max_coef: u64) -> Ordinal {
    assert!(r <= 3, "ranks up to 3 only");
    let mut terms = Vec::new();
    for e in (r + 1..=3).rev() {
        let c = rng.gen_range(0..=max_coef);
        if c > 0 {
            terms.push((Ordinal::nat(e), BigUint::from(c)));
        }
    }
    terms.push((
        Ordinal::nat(r),
        BigUint::from(rng.gen_range(1..=max_coef.max(1))),
    ));
    Ordinal::from_terms(terms).expect("canonical by construction")
}

/// A random ordinal with at most `width` terms per level, nesting exponents
/// `depth` levels deep.
pub fn ordinal<R: Rng>(rng: &mut R, depth: usize, width: usize, max_coef: u64) -> Ordinal {
    let n = rng.gen_range(0..=width);
    let mut exps: Vec<Ordinal> = (0..n)
        .map(|_| {
            if depth == 0 {
                Ordinal::zero()
            } else {
                ordinal(rng, depth - 1, width, max_coef)
            }
        })
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    let terms = exps
        .into_iter()
        .map(|e| (e, BigUint::from(rng.gen_range(1..=max_coef))))
        .collect();
    Ordinal::from_terms(terms).expect("canonical by construction")
}

/// A swap of two disjoint intervals `]a, a+L]`, `]b, b+L]`. Coefficients
/// stay small enough that every point where two products of such swaps can
/// differ has a witness in `grid(6)`.
pub fn interval_swap_below_w3<R: Rng>(rng: &mut R) -> PwHomeo {
    let r = rng.gen_range(0..=2u64);
    let m = rng.gen_range(1..=2u64);
    let len = match r {
        0 => cnf3(0, 0, m),
        1 => cnf3(0, m, 0),
        _ => cnf3(m, 0, 0),
    };
    let a = cnf3(0, rng.gen_range(0..=1), rng.gen_range(0..=1));
    let gap = cnf3(
        rng.gen_range(0..=1),
        rng.gen_range(0..=1),
        rng.gen_range(0..=1),
    );
    let a_end = &a + &len;
    let b = &a_end + &gap;
    let b_end = &b + &len;
    let i = ClopenInterval::left_open(a, a_end).expect("nonempty");
    let j = ClopenInterval::left_open(b, b_end).expect("nonempty");
    PwHomeo::interval_swap(&i, &j).expect("disjoint, same type")
}

/// A product of up to `max_factors` random interval swaps; supported below
/// `w^3`.
pub fn map_below_w3<R: Rng>(rng: &mut R, max_factors: usize) -> PwHomeo {
    let n = rng.gen_range(0..=max_factors);
    (0..n).fold(PwHomeo::identity(), |acc, _| {
        interval_swap_below_w3(rng).compose(&acc)
    })
}

/// `n` distinct random points whose ranks are drawn from `0..=max_rank`.
pub fn distinct_points<R: Rng>(rng: &mut R, n: usize, max_rank: u64) -> Vec<Ordinal> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let r = rng.gen_range(0..=max_rank);
        let x = point_of_rank(rng, r, 4);
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

/// A random solvable problem: ranks up to `max_rank`, at most `max_pairs`
/// pairs and `max_frozen` frozen points. Targets are sometimes other
/// sources, so moves have to track displaced points.
pub fn transitivity_problem<R: Rng>(
    rng: &mut R,
    max_rank: u64,
    max_pairs: usize,
    max_frozen: usize,
) -> TransitivityProblem {
    let k = rng.gen_range(1..=max_pairs);
    let nf = rng.gen_range(0..=max_frozen);
    let pool = distinct_points(rng, 2 * k + nf, max_rank);
    let (xs, rest) = pool.split_at(k);
    let (fresh, frozen) = rest.split_at(k);
    let mut taken = BTreeSet::new();
    let mut pairs = Vec::with_capacity(k);
    for x in xs {
        let same_rank: Vec<&Ordinal> = xs
            .iter()
            .chain(fresh)
            .filter(|y| y.rank() == x.rank() && !taken.contains(*y))
            .collect();
        let y = (*same_rank.choose(rng).expect("x itself qualifies")).clone();
        taken.insert(y.clone());
        pairs.push((x.clone(), y));
    }
    let frozen = frozen.iter().cloned();
    TransitivityProblem::new(pairs, frozen)
}

/// A random constraint system on points `0..k` (for `k <= max_points`)
/// with allowed sets drawn from a pool of `k + 1` values, so that Hall's
/// condition fails fairly often.
pub fn constraint_system<R: Rng>(rng: &mut R, max_points: usize) -> ConstraintSystem {
    let k = rng.gen_range(0..=max_points);
    let pool: Vec<u64> = (100..=100 + k as u64).collect();
    let constraints = (0..k as u64)
        .map(|x| {
            let size = rng.gen_range(1..=3.min(pool.len()));
            let ys = pool
                .choose_multiple(rng, size)
                .map(|&y| Ordinal::nat(y))
                .collect();
            (Ordinal::nat(x), ys)
        })
        .collect();
    ConstraintSystem::new(constraints).expect("nonempty allowed sets")
}

/// A decreasing chain of satisfiable systems: every member plants the same
/// injection, and each step shrinks allowed sets or adds points.
pub fn decreasing_chain<R: Rng>(
    rng: &mut R,
    max_len: usize,
    max_points: usize,
) -> Vec<ConstraintSystem> {
    let len = rng.gen_range(1..=max_len);
    let planted: Vec<u64> = {
        let mut v: Vec<u64> = (100..100 + max_points as u64).collect();
        v.shuffle(rng);
        v
    };
    let mut sets: Vec<Vec<u64>> = Vec::new();
    let mut chain = Vec::with_capacity(len);
    for _ in 0..len {
        for (i, ys) in sets.iter_mut().enumerate() {
            if ys.len() > 1 && rng.gen_bool(0.3) {
                let drop = rng.gen_range(0..ys.len());
                if ys[drop] != planted[i] {
                    ys.remove(drop);
                }
            }
        }
        if sets.len() < max_points && (sets.is_empty() || rng.gen_bool(0.4)) {
            let i = sets.len();
            let mut ys = vec![planted[i]];
            for _ in 0..rng.gen_range(0..4) {
                ys.push(rng.gen_range(100..100 + max_points as u64 + 3));
            }
            sets.push(ys);
        }
        let constraints = sets
            .iter()
            .enumerate()
            .map(|(x, ys)| {
                (
                    Ordinal::nat(x as u64),
                    ys.iter().map(|&y| Ordinal::nat(y)).collect(),
                )
            })
            .collect();
        chain.push(ConstraintSystem::new(constraints).expect("nonempty allowed sets"));
    }
    chain
}

/// A random injection with at most `max_pairs` pairs between small
/// naturals, so chains and cycles both occur.
pub fn injection<R: Rng>(rng: &mut R, max_pairs: usize) -> PartialInjection {
    let k = rng.gen_range(0..=max_pairs);
    let pool: Vec<u64> = (0..(2 * max_pairs as u64).max(1)).collect();
    let from = pool.choose_multiple(rng, k);
    let to = pool.choose_multiple(rng, k);
    let pairs = from
        .zip(to)
        .map(|(&a, &b)| (Ordinal::nat(a), Ordinal::nat(b)))
        .collect();
    PartialInjection::new(pairs).expect("distinct samples")
}

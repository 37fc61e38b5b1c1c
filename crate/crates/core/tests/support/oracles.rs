//! Independent models used to cross-check the library.

#![allow(dead_code)]

use ordhomeo::testkit::cnf3;
use ordhomeo::{Ordinal, PwHomeo};

/// `w*m + n` as `(m, n)`.
pub type Pair = (u64, u64);

pub fn pair(p: Pair) -> Ordinal {
    cnf3(0, p.0, p.1)
}

pub fn pair_add(a: Pair, b: Pair) -> Pair {
    if b.0 > 0 {
        (a.0 + b.0, b.1)
    } else {
        (a.0, a.1 + b.1)
    }
}

/// The product as `w^2*c2 + w*c1 + c0`.
pub fn pair_mul(a: Pair, b: Pair) -> (u64, u64, u64) {
    match a {
        (0, 0) => (0, 0, 0),
        (0, n1) => (0, b.0, n1 * b.1),
        (m1, n1) => (b.0, m1 * b.1, if b.1 > 0 { n1 } else { 0 }),
    }
}

/// `x` with `a + x = b`, for `a <= b`.
pub fn pair_sub(a: Pair, b: Pair) -> Pair {
    if a.0 == b.0 {
        (0, b.1 - a.1)
    } else {
        (b.0 - a.0, b.1)
    }
}

/// `sup g([0, beta])` from the pieces: each piece meeting `[0, beta]` is
/// increasing, so its contribution is the image of its last point there.
pub fn sup_image(g: &PwHomeo, beta: &Ordinal) -> Ordinal {
    let mut best = if beta > g.support() {
        beta.clone()
    } else {
        Ordinal::zero()
    };
    for p in g.pieces() {
        let first = p.source().first();
        if &first > beta {
            break;
        }
        let last = p.source().hi().min(beta);
        best = best.max(g.apply(last));
    }
    best
}

/// Whether `g([0, c]) ⊆ [0, c]`.
pub fn prefix_ok(g: &PwHomeo, c: &Ordinal) -> bool {
    sup_image(g, c) <= *c
}

/// Whether `g([0, c]) = [0, c]`.
pub fn segment_ok(g: &PwHomeo, c: &Ordinal) -> bool {
    prefix_ok(g, c) && prefix_ok(&g.inverse(), c)
}

/// The iteration `b -> sup({b} ∪ g(b) ∪ g⁻¹[0, b]) + 1` over the family,
/// for at most `steps` steps.
pub struct Eq1Run {
    pub iterates: Vec<Ordinal>,
    /// `b + w` for the first iterate above every support, if one came.
    pub limit: Option<Ordinal>,
}

pub fn eq1_iteration(gs: &[PwHomeo], alpha: &Ordinal, steps: usize) -> Eq1Run {
    let top = gs
        .iter()
        .map(|g| g.support().clone())
        .max()
        .unwrap_or_default();
    let inverses: Vec<PwHomeo> = gs.iter().map(PwHomeo::inverse).collect();
    let mut b = alpha.clone();
    let mut iterates = vec![b.clone()];
    for _ in 0..steps {
        if b > top {
            return Eq1Run {
                iterates,
                limit: Some(&b + &Ordinal::omega()),
            };
        }
        let mut next = b.clone();
        for (g, gi) in gs.iter().zip(&inverses) {
            next = next.max(g.apply(&b)).max(sup_image(gi, &b));
        }
        b = next.succ();
        iterates.push(b.clone());
    }
    Eq1Run {
        iterates,
        limit: None,
    }
}

/// `a -> max(a, sup g([0, a]))` until it stops moving.
pub fn prefix_iteration(g: &PwHomeo, alpha: &Ordinal, steps: usize) -> Option<Ordinal> {
    let mut a = alpha.clone();
    for _ in 0..steps {
        let next = a.clone().max(sup_image(g, &a));
        if next == a {
            return Some(a);
        }
        a = next;
    }
    None
}

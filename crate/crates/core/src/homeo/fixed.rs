//! Exact fixed-point sets and invariant initial segments.
//!
//! Everything here rests on absorption: on a piece `]a, ..] -> ]c, ..]`
//! the `i`-th points are `a + (1+i)` and `c + (1+i)`, which agree exactly
//! when `i >= w^(d+1)` for `d` the largest exponent where `a` and `c`
//! differ. So every piece fixes either nothing or a closed final segment
//! of itself, and all the sets below are finite unions of closed intervals
//! with a closed unbounded tail.

use num_bigint::BigUint;
use num_traits::One;

use super::{OrdinalSet, Piece, PwHomeo};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Least index fixed by a non-identity piece.
fn fixed_index_threshold(p: &Piece) -> Ordinal {
    let omega = Ordinal::omega();
    match (p.source.lo(), p.target.lo()) {
        (None, Some(c)) | (Some(c), None) => c.absorb_threshold().max(omega),
        (Some(a), Some(c)) => {
            let d = a.diff_exponent(c).expect("distinct starts");
            Ordinal::mono(d.succ(), BigUint::one())
        }
        (None, None) => Ordinal::zero(),
    }
}

/// The closed final segment `[from, hi]` of the source that the piece
/// fixes pointwise, if any.
pub(super) fn fixed_segment(p: &Piece) -> Option<(Ordinal, Ordinal)> {
    let hi = p.source.hi().clone();
    if p.is_identity() {
        return Some((p.source.first(), hi));
    }
    let from = p.source.nth(&fixed_index_threshold(p));
    (from <= hi).then_some((from, hi))
}

/// Whether `g(t) <= t` on the whole piece.
fn never_raises(p: &Piece) -> bool {
    match (p.source.lo(), p.target.lo()) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(c)) => c <= a,
    }
}

impl PwHomeo {
    /// The exact fixed-point set. Closed, and unbounded by construction.
    pub fn fixed_points(&self) -> OrdinalSet {
        let intervals = self.pieces.iter().filter_map(fixed_segment).collect();
        OrdinalSet::new(intervals, Some(self.tail_start()))
    }

    fn tail_start(&self) -> Ordinal {
        if self.pieces.is_empty() {
            Ordinal::zero()
        } else {
            self.support.succ()
        }
    }

    /// `sup g([0, alpha])`.
    pub fn sup_image(&self, alpha: &Ordinal) -> Ordinal {
        if alpha >= &self.support {
            return alpha.clone();
        }
        let mut best = Ordinal::zero();
        for p in &self.pieces {
            if p.source.contains(alpha) {
                return best.max(p.apply(alpha));
            }
            best = best.max(p.target.hi().clone());
        }
        unreachable!("alpha below the support lies in some piece")
    }

    /// The set of all `alpha` with `g([0, alpha]) ⊆ [0, alpha]`.
    pub fn stable_prefixes(&self) -> OrdinalSet {
        let mut intervals = Vec::new();
        let mut images_below: Option<Ordinal> = None;
        for p in &self.pieces {
            let region = if never_raises(p) {
                Some((p.source.first(), p.source.hi().clone()))
            } else {
                fixed_segment(p)
            };
            if let Some((lo, hi)) = region {
                let lo = match &images_below {
                    Some(m) => lo.max(m.clone()),
                    None => lo,
                };
                if lo <= hi {
                    intervals.push((lo, hi));
                }
            }
            let top = p.target.hi().clone();
            images_below = Some(images_below.map_or(top.clone(), |m| m.max(top)));
        }
        OrdinalSet::new(intervals, Some(self.tail_start()))
    }

    /// The set of all `alpha` with `g([0, alpha]) = [0, alpha]`.
    pub fn stable_segments(&self) -> OrdinalSet {
        self.stable_prefixes()
            .intersect(&self.inverse().stable_prefixes())
    }

    /// Least `a >= alpha` with `g([0, a]) ⊆ [0, a]`.
    pub fn invariant_prefix(&self, alpha: &Ordinal) -> Ordinal {
        self.stable_prefixes()
            .least_at_or_above(alpha)
            .expect("stable prefixes are unbounded")
    }

    /// Least `a >= alpha` with `g([0, a]) = [0, a]`.
    pub fn invariant_point(&self, alpha: &Ordinal) -> Ordinal {
        self.stable_segments()
            .least_at_or_above(alpha)
            .expect("stable segments are unbounded")
    }
}

/// Intersection of the fixed-point sets of a nonempty family.
pub fn common_fixed_points(gs: &[PwHomeo]) -> Result<OrdinalSet> {
    let (first, rest) = gs
        .split_first()
        .ok_or_else(|| Error::Domain("empty family of maps".into()))?;
    Ok(rest.iter().fold(first.fixed_points(), |acc, g| {
        acc.intersect(&g.fixed_points())
    }))
}

/// A common fixed point above `alpha`, from the iteration
/// `b0 = alpha`, `b(n+1) = sup({b(n)} ∪ A b(n) ∪ A⁻¹[0, b(n)]) + 1` over
/// the family `A = gs`.
///
/// Returns the least limit `l > alpha` such that every map sends `[0, l[`
/// onto itself; every map fixes such an `l`. This is the limit of the
/// iteration with `A b(n)` widened to `A [0, b(n)]`, and it equals the
/// limit of the iteration itself whenever the iterates pass every support
/// bound after finitely many steps (from then on the step is `b -> b + 1`,
/// so the limit is that iterate plus `w`).
pub fn find_fixed_point_above(gs: &[PwHomeo], alpha: &Ordinal) -> Result<Ordinal> {
    if gs.is_empty() {
        return Err(Error::Domain("empty family of maps".into()));
    }
    let closed = gs
        .iter()
        .map(|g| g.stable_segments().intersect(&g.fixed_points()))
        .reduce(|a, b| a.intersect(&b))
        .expect("nonempty family");
    let l = closed
        .least_limit_above(alpha)
        .expect("closed set with an unbounded tail");
    debug_assert!(gs.iter().all(|g| g.apply(&l) == l));
    Ok(l)
}

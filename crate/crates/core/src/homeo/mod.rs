//! Finitely-piecewise homeomorphisms of the ordinals.
//!
//! A [`PwHomeo`] partitions `[0, support]` into clopen intervals and maps
//! each onto another clopen interval of the same order type by the unique
//! order isomorphism. Sources and targets both tile `[0, support]`; every
//! point above `support` is fixed. Values are always kept canonical, so
//! structural equality is extensional equality.

mod fixed;
mod set;
mod text;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ordinal::{Notation, Ordinal};

pub use fixed::{common_fixed_points, find_fixed_point_above};
pub use set::OrdinalSet;
pub use text::parse_homeo;

/// Default iteration cap for [`PwHomeo::order_of`].
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

/// `[0, hi]` or `]lo, hi]`. Both kinds are clopen in the order topology.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ClopenInterval {
    Initial { hi: Ordinal },
    LeftOpen { lo: Ordinal, hi: Ordinal },
}

impl ClopenInterval {
    pub fn initial(hi: Ordinal) -> Self {
        ClopenInterval::Initial { hi }
    }

    pub fn left_open(lo: Ordinal, hi: Ordinal) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Domain(format!("empty interval ({lo}, {hi}]")));
        }
        Ok(ClopenInterval::LeftOpen { lo, hi })
    }

    /// `[0, hi]` when `lo` is `None`, else `]lo, hi]`.
    pub fn from_bounds(lo: Option<Ordinal>, hi: Ordinal) -> Result<Self> {
        match lo {
            None => Ok(ClopenInterval::initial(hi)),
            Some(lo) => ClopenInterval::left_open(lo, hi),
        }
    }

    /// The one-point interval around an isolated point.
    pub fn singleton(x: &Ordinal) -> Result<Self> {
        if x.is_zero() {
            return Ok(ClopenInterval::initial(Ordinal::zero()));
        }
        match x.predecessor() {
            Some(p) => ClopenInterval::left_open(p, x.clone()),
            None => Err(Error::Domain(format!("{x} is not an isolated point"))),
        }
    }

    /// Excluded lower bound; `None` for `[0, hi]`.
    pub fn lo(&self) -> Option<&Ordinal> {
        match self {
            ClopenInterval::Initial { .. } => None,
            ClopenInterval::LeftOpen { lo, .. } => Some(lo),
        }
    }

    pub fn hi(&self) -> &Ordinal {
        match self {
            ClopenInterval::Initial { hi } | ClopenInterval::LeftOpen { hi, .. } => hi,
        }
    }

    /// Least element.
    pub fn first(&self) -> Ordinal {
        self.lo().map_or_else(Ordinal::zero, Ordinal::succ)
    }

    pub fn contains(&self, t: &Ordinal) -> bool {
        t <= self.hi() && self.lo().is_none_or(|lo| lo < t)
    }

    /// Order type. For `]a, b]` with `a + x = b` this is `x` when `x` is
    /// finite and `x + 1` otherwise (the `+1` counts `b` itself after the
    /// initial `w`-block absorbs the shift).
    pub fn order_type(&self) -> Ordinal {
        match self {
            ClopenInterval::Initial { hi } => hi.succ(),
            ClopenInterval::LeftOpen { lo, hi } => {
                let len = lo.left_subtract(hi).expect("lo < hi");
                if len.is_finite() {
                    len
                } else {
                    len.succ()
                }
            }
        }
    }

    /// The `i`-th element, without a range check.
    fn nth(&self, i: &Ordinal) -> Ordinal {
        match self {
            ClopenInterval::Initial { .. } => i.clone(),
            ClopenInterval::LeftOpen { lo, .. } => lo + &(&Ordinal::one() + i),
        }
    }

    /// The `i`-th element in increasing order.
    pub fn enum_index(&self, i: &Ordinal) -> Result<Ordinal> {
        let x = self.nth(i);
        if &x > self.hi() {
            return Err(Error::Domain(format!("index {i} out of range for {self}")));
        }
        Ok(x)
    }

    /// Position of `t` within the interval; inverse of [`enum_index`](Self::enum_index).
    pub fn index_of(&self, t: &Ordinal) -> Result<Ordinal> {
        if !self.contains(t) {
            return Err(Error::Domain(format!("{t} is not in {self}")));
        }
        Ok(self.index_unchecked(t))
    }

    fn index_unchecked(&self, t: &Ordinal) -> Ordinal {
        match self {
            ClopenInterval::Initial { .. } => t.clone(),
            ClopenInterval::LeftOpen { lo, .. } => {
                let s = lo.left_subtract(t).expect("t in interval");
                match s.as_nat() {
                    Some(n) => Ordinal::nat(n - 1u32),
                    None => s,
                }
            }
        }
    }

    pub fn intersect(&self, other: &ClopenInterval) -> Option<ClopenInterval> {
        let lo = self.lo().max(other.lo()).cloned();
        let hi = self.hi().min(other.hi()).clone();
        ClopenInterval::from_bounds(lo, hi).ok()
    }

    fn cmp_start(&self, other: &ClopenInterval) -> Ordering {
        self.lo().cmp(&other.lo())
    }

    pub fn render(&self, notation: Notation) -> String {
        match self {
            ClopenInterval::Initial { hi } => format!("[0, {}]", hi.render(notation)),
            ClopenInterval::LeftOpen { lo, hi } => {
                format!("({}, {}]", lo.render(notation), hi.render(notation))
            }
        }
    }
}

impl fmt::Display for ClopenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// The unique order isomorphism from `source` onto `target`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Piece {
    source: ClopenInterval,
    target: ClopenInterval,
}

impl Piece {
    pub fn new(source: ClopenInterval, target: ClopenInterval) -> Result<Self> {
        let (a, b) = (source.order_type(), target.order_type());
        if a != b {
            return Err(Error::Validation(format!(
                "piece {source} -> {target}: order types differ ({a} vs {b})"
            )));
        }
        Ok(Piece { source, target })
    }

    pub fn source(&self) -> &ClopenInterval {
        &self.source
    }

    pub fn target(&self) -> &ClopenInterval {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// Image of a point of the source.
    pub fn apply(&self, t: &Ordinal) -> Ordinal {
        debug_assert!(self.source.contains(t));
        self.target.nth(&self.source.index_unchecked(t))
    }

    pub fn inverse(&self) -> Piece {
        Piece {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// Restriction to a clopen sub-interval of the source.
    fn restrict_source(&self, sub: &ClopenInterval) -> Piece {
        let lo = if sub.lo() == self.source.lo() {
            self.target.lo().cloned()
        } else {
            Some(self.apply(sub.lo().expect("proper sub-interval has a lower bound")))
        };
        let target = ClopenInterval::from_bounds(lo, self.apply(sub.hi()))
            .expect("image of a nonempty interval");
        Piece {
            source: sub.clone(),
            target,
        }
    }

    fn restrict_target(&self, sub: &ClopenInterval) -> Piece {
        self.inverse().restrict_source(sub).inverse()
    }

    /// Whether this piece can be glued after `prev`: sources and targets
    /// are both contiguous.
    fn continues(&self, prev: &Piece) -> bool {
        self.source.lo() == Some(prev.source.hi()) && self.target.lo() == Some(prev.target.hi())
    }

    pub fn render(&self, notation: Notation) -> String {
        format!(
            "{} -> {}",
            self.source.render(notation),
            self.target.render(notation)
        )
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// A canonical finitely-piecewise homeomorphism. The empty piece list with
/// support 0 is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PwHomeo {
    pieces: Vec<Piece>,
    support: Ordinal,
}

impl PwHomeo {
    pub fn identity() -> Self {
        PwHomeo::default()
    }

    /// Validate a piece list and return its canonical form. Pieces may be
    /// given in any order.
    pub fn build(mut pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Ok(PwHomeo::identity());
        }
        pieces.sort_by(|p, q| p.source.cmp_start(&q.source));
        let src_end = check_tiling(pieces.iter().map(|p| (p, &p.source)), "source")?;
        let mut by_target: Vec<&Piece> = pieces.iter().collect();
        by_target.sort_by(|p, q| p.target.cmp_start(&q.target));
        let tgt_end = check_tiling(by_target.into_iter().map(|p| (p, &p.target)), "target")?;
        if src_end != tgt_end {
            return Err(Error::Validation(format!(
                "sources cover [0, {src_end}] but targets cover [0, {tgt_end}]"
            )));
        }
        Ok(canonicalize(pieces))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Every point above the support bound is fixed.
    pub fn support(&self) -> &Ordinal {
        &self.support
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.is_empty()
    }

    fn piece_at(&self, x: &Ordinal) -> Option<&Piece> {
        if x > &self.support || self.pieces.is_empty() {
            return None;
        }
        let i = self
            .pieces
            .partition_point(|p| p.source.lo().is_none_or(|lo| lo < x));
        Some(&self.pieces[i - 1])
    }

    pub fn apply(&self, x: &Ordinal) -> Ordinal {
        match self.piece_at(x) {
            Some(p) => p.apply(x),
            None => x.clone(),
        }
    }

    pub fn inverse(&self) -> PwHomeo {
        let pieces = self.pieces.iter().map(Piece::inverse).collect();
        PwHomeo::build(pieces).expect("inverse of a valid map is valid")
    }

    /// The same map written with support exactly `bound >= support`.
    fn padded(&self, bound: &Ordinal) -> Vec<Piece> {
        let mut pieces = self.pieces.clone();
        if self.pieces.is_empty() {
            let all = ClopenInterval::initial(bound.clone());
            pieces.push(Piece {
                source: all.clone(),
                target: all,
            });
        } else if bound > &self.support {
            let rest = ClopenInterval::LeftOpen {
                lo: self.support.clone(),
                hi: bound.clone(),
            };
            pieces.push(Piece {
                source: rest.clone(),
                target: rest,
            });
        }
        pieces
    }

    /// `x -> self(inner(x))`.
    pub fn compose(&self, inner: &PwHomeo) -> PwHomeo {
        if self.is_identity() {
            return inner.clone();
        }
        if inner.is_identity() {
            return self.clone();
        }
        let bound = self.support.clone().max(inner.support.clone());
        let outer = self.padded(&bound);
        let mut out = Vec::new();
        for p in inner.padded(&bound) {
            for q in &outer {
                if let Some(mid) = p.target.intersect(&q.source) {
                    let first = p.restrict_target(&mid);
                    let second = q.restrict_source(&mid);
                    out.push(Piece {
                        source: first.source,
                        target: second.target,
                    });
                }
            }
        }
        PwHomeo::build(out).expect("composite of valid maps is valid")
    }

    /// Least `n <= cap` with `self^n` the identity.
    pub fn order_of(&self, cap: u64) -> Option<u64> {
        let mut power = self.clone();
        for n in 1..=cap {
            if power.is_identity() {
                return Some(n);
            }
            power = self.compose(&power);
        }
        None
    }

    /// Exchange two disjoint clopen intervals of equal order type by their
    /// order isomorphism, fixing everything else.
    pub fn interval_swap(i: &ClopenInterval, j: &ClopenInterval) -> Result<PwHomeo> {
        if i.intersect(j).is_some() {
            return Err(Error::Domain(format!("intervals {i} and {j} overlap")));
        }
        let (ti, tj) = (i.order_type(), j.order_type());
        if ti != tj {
            return Err(Error::Domain(format!(
                "intervals {i} and {j} have different order types ({ti} vs {tj})"
            )));
        }
        let (first, second) = if i.cmp_start(j) == Ordering::Less {
            (i, j)
        } else {
            (j, i)
        };
        let mut pieces = vec![
            Piece {
                source: first.clone(),
                target: second.clone(),
            },
            Piece {
                source: second.clone(),
                target: first.clone(),
            },
        ];
        let mut fill = |iv: ClopenInterval| {
            pieces.push(Piece {
                source: iv.clone(),
                target: iv,
            })
        };
        if let Some(lo) = first.lo() {
            fill(ClopenInterval::initial(lo.clone()));
        }
        let gap_lo = first.hi();
        let gap_hi = second.lo().expect("second interval starts above the first");
        if gap_lo < gap_hi {
            fill(ClopenInterval::left_open(gap_lo.clone(), gap_hi.clone())?);
        }
        PwHomeo::build(pieces)
    }

    /// The transposition of two distinct isolated points.
    pub fn swap_points(x: &Ordinal, y: &Ordinal) -> Result<PwHomeo> {
        if x == y {
            return Err(Error::Domain(format!("cannot swap {x} with itself")));
        }
        PwHomeo::interval_swap(
            &ClopenInterval::singleton(x)?,
            &ClopenInterval::singleton(y)?,
        )
    }

    /// Agrees with `self` on `[0, bound]` and is the identity above it.
    /// Requires `self` to map `[0, bound]` onto itself.
    pub fn restrict_to(&self, bound: &Ordinal) -> Result<PwHomeo> {
        if bound >= &self.support {
            return Ok(self.clone());
        }
        let cut = ClopenInterval::initial(bound.clone());
        let pieces: Vec<Piece> = self
            .pieces
            .iter()
            .filter_map(|p| p.source.intersect(&cut).map(|s| p.restrict_source(&s)))
            .collect();
        PwHomeo::build(pieces).map_err(|e| {
            Error::Domain(format!("[0, {bound}] is not invariant under the map ({e})"))
        })
    }

    pub fn render(&self, notation: Notation) -> String {
        if self.pieces.is_empty() {
            return "# identity\n".to_string();
        }
        self.pieces
            .iter()
            .map(|p| p.render(notation) + "\n")
            .collect()
    }
}

impl fmt::Display for PwHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// Check that the intervals, already sorted by start, tile `[0, end]` and
/// return `end`.
fn check_tiling<'a>(
    items: impl Iterator<Item = (&'a Piece, &'a ClopenInterval)>,
    side: &str,
) -> Result<Ordinal> {
    let mut prev: Option<(&Piece, &ClopenInterval)> = None;
    for (piece, iv) in items {
        match (prev, iv.lo()) {
            (None, None) => {}
            (None, Some(_)) => {
                return Err(Error::Validation(format!(
                    "no {side} interval contains 0 (first is {iv} in piece {piece})"
                )))
            }
            (Some((pp, _)), None) => {
                return Err(Error::Validation(format!(
                    "pieces {pp} and {piece} both have a {side} containing 0"
                )))
            }
            (Some((pp, piv)), Some(lo)) => match lo.cmp(piv.hi()) {
                Ordering::Less => {
                    return Err(Error::Validation(format!(
                        "{side} intervals of pieces {pp} and {piece} overlap"
                    )))
                }
                Ordering::Greater => {
                    return Err(Error::Validation(format!(
                        "gap between {side} intervals of pieces {pp} and {piece}"
                    )))
                }
                Ordering::Equal => {}
            },
        }
        prev = Some((piece, iv));
    }
    Ok(prev.expect("nonempty").1.hi().clone())
}

/// Glue contiguous pieces, then cut the map back to the least bound above
/// which it is the identity.
fn canonicalize(pieces: Vec<Piece>) -> PwHomeo {
    let mut merged: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        match merged.last_mut() {
            Some(last) if p.continues(last) => {
                let source =
                    ClopenInterval::from_bounds(last.source.lo().cloned(), p.source.hi().clone())
                        .expect("nonempty");
                let target =
                    ClopenInterval::from_bounds(last.target.lo().cloned(), p.target.hi().clone())
                        .expect("nonempty");
                *last = Piece { source, target };
            }
            _ => merged.push(p),
        }
    }
    if merged.last().is_some_and(Piece::is_identity) {
        merged.pop();
    }
    // A non-identity last piece can still fix a final segment of itself;
    // that segment begins at a limit, so the cut stays clopen.
    if let Some(last) = merged.pop() {
        match fixed::fixed_segment(&last) {
            Some((from, _)) => {
                let sub = ClopenInterval::from_bounds(last.source.lo().cloned(), from)
                    .expect("fixed segment starts above the piece's lower bound");
                merged.push(last.restrict_source(&sub));
            }
            None => merged.push(last),
        }
    }
    let support = merged
        .last()
        .map_or_else(Ordinal::zero, |p| p.source.hi().clone());
    PwHomeo {
        pieces: merged,
        support,
    }
}

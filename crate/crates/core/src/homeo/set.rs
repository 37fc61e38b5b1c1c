use std::fmt;

use crate::ordinal::{Notation, Ordinal};

/// A finite union of closed intervals `[lo, hi]` plus an optional closed
/// tail `[tail, ∞)`. Kept sorted, disjoint and non-adjacent.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OrdinalSet {
    intervals: Vec<(Ordinal, Ordinal)>,
    tail: Option<Ordinal>,
}

impl OrdinalSet {
    pub fn new(mut intervals: Vec<(Ordinal, Ordinal)>, mut tail: Option<Ordinal>) -> Self {
        intervals.retain(|(lo, hi)| lo <= hi);
        intervals.sort();
        let mut merged: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            match merged.last_mut() {
                Some(last) if lo <= last.1.succ() => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        if let Some(t) = tail.as_mut() {
            while let Some((lo, hi)) = merged.last() {
                if hi.succ() < *t {
                    break;
                }
                if lo < t {
                    *t = lo.clone();
                }
                merged.pop();
            }
        }
        OrdinalSet {
            intervals: merged,
            tail,
        }
    }

    pub fn empty() -> Self {
        OrdinalSet::default()
    }

    /// `[from, ∞)`.
    pub fn from(from: Ordinal) -> Self {
        OrdinalSet::new(Vec::new(), Some(from))
    }

    pub fn intervals(&self) -> &[(Ordinal, Ordinal)] {
        &self.intervals
    }

    /// Least element of the unbounded tail.
    pub fn tail(&self) -> Option<&Ordinal> {
        self.tail.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.tail.is_none()
    }

    pub fn is_unbounded(&self) -> bool {
        self.tail.is_some()
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.tail.as_ref().is_some_and(|t| x >= t)
            || self.intervals.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }

    pub fn intersect(&self, other: &OrdinalSet) -> OrdinalSet {
        let mut out = Vec::new();
        for (a, b) in &self.intervals {
            for (c, d) in &other.intervals {
                out.push((a.max(c).clone(), b.min(d).clone()));
            }
            if let Some(t) = &other.tail {
                out.push((a.max(t).clone(), b.clone()));
            }
        }
        if let Some(t) = &self.tail {
            for (c, d) in &other.intervals {
                out.push((c.max(t).clone(), d.clone()));
            }
        }
        let tail = match (&self.tail, &other.tail) {
            (Some(s), Some(t)) => Some(s.max(t).clone()),
            _ => None,
        };
        OrdinalSet::new(out, tail)
    }

    pub fn union(&self, other: &OrdinalSet) -> OrdinalSet {
        let intervals = self
            .intervals
            .iter()
            .chain(&other.intervals)
            .cloned()
            .collect();
        let tail = match (&self.tail, &other.tail) {
            (Some(s), Some(t)) => Some(s.min(t).clone()),
            (s, t) => s.clone().or(t.clone()),
        };
        OrdinalSet::new(intervals, tail)
    }

    /// Least member `>= x`.
    pub fn least_at_or_above(&self, x: &Ordinal) -> Option<Ordinal> {
        self.pieces().find_map(|(lo, hi)| {
            let cand = lo.max(x).clone();
            hi.is_none_or(|hi| cand <= *hi).then_some(cand)
        })
    }

    /// Least limit ordinal member `> x`.
    pub fn least_limit_above(&self, x: &Ordinal) -> Option<Ordinal> {
        let above = x.succ();
        self.pieces().find_map(|(lo, hi)| {
            let cand = lo.max(&above).next_limit();
            hi.is_none_or(|hi| cand <= *hi).then_some(cand)
        })
    }

    /// Whether some natural number `k >= n` is a member.
    pub fn meets_naturals_from(&self, n: &Ordinal) -> bool {
        self.pieces().any(|(lo, hi)| {
            let k = lo.max(n);
            k.is_finite() && hi.is_none_or(|hi| k <= hi)
        })
    }

    /// Whether the members below `w` are unbounded in `w`. Since the set is
    /// a finite union of intervals this means some interval starts at a
    /// natural number and reaches `w`.
    pub fn has_cofinal_naturals(&self) -> bool {
        let omega = Ordinal::omega();
        self.pieces()
            .any(|(lo, hi)| lo.is_finite() && hi.is_none_or(|hi| *hi >= omega))
    }

    /// Intervals and tail as `(lo, Some(hi))` / `(lo, None)`, in order.
    fn pieces(&self) -> impl Iterator<Item = (&Ordinal, Option<&Ordinal>)> {
        self.intervals
            .iter()
            .map(|(lo, hi)| (lo, Some(hi)))
            .chain(self.tail.iter().map(|t| (t, None)))
    }

    pub fn render(&self, notation: Notation) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let mut parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(lo, hi)| {
                if lo == hi {
                    format!("{{{}}}", lo.render(notation))
                } else {
                    format!("[{}, {}]", lo.render(notation), hi.render(notation))
                }
            })
            .collect();
        if let Some(t) = &self.tail {
            parts.push(match t.predecessor() {
                Some(p) => format!("({}, ∞)", p.render(notation)),
                None => format!("[{}, ∞)", t.render(notation)),
            });
        }
        parts.join(" ∪ ")
    }
}

impl fmt::Display for OrdinalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn iv(a: &str, b: &str) -> (Ordinal, Ordinal) {
        (o(a), o(b))
    }

    #[test]
    fn normalizes_adjacent_and_overlapping() {
        let s = OrdinalSet::new(vec![iv("3", "5"), iv("0", "2"), iv("4", "9")], None);
        assert_eq!(s.intervals(), &[iv("0", "9")]);
        let s = OrdinalSet::new(vec![iv("w", "w+3"), iv("0", "2")], Some(o("w+4")));
        assert_eq!(s.intervals(), &[iv("0", "2")]);
        assert_eq!(s.tail(), Some(&o("w")));
        // [0,2] and [w, ..] are not adjacent: 3 is missing.
        assert_eq!(s.to_string(), "[0, 2] ∪ [w, ∞)");
    }

    #[test]
    fn renders_open_tail_for_successor_start() {
        let s = OrdinalSet::new(vec![iv("0", "0")], Some(o("w*2+1")));
        assert_eq!(s.to_string(), "{0} ∪ (w*2, ∞)");
        assert_eq!(OrdinalSet::empty().to_string(), "∅");
        assert_eq!(OrdinalSet::from(o("0")).to_string(), "[0, ∞)");
    }

    #[test]
    fn intersection_and_union() {
        let a = OrdinalSet::new(vec![iv("0", "5"), iv("w", "w*2")], Some(o("w^2")));
        let b = OrdinalSet::new(vec![iv("3", "w+1")], Some(o("w*2")));
        let i = a.intersect(&b);
        assert_eq!(
            i.intervals(),
            &[iv("3", "5"), iv("w", "w+1"), iv("w*2", "w*2")]
        );
        assert_eq!(i.tail(), Some(&o("w^2")));
        let u = a.union(&b);
        assert_eq!(u.intervals(), &[]);
        assert_eq!(u.tail(), Some(&o("0")));
    }

    #[test]
    fn queries() {
        let s = OrdinalSet::new(vec![iv("0", "0"), iv("w+5", "w*2")], Some(o("w*3+1")));
        assert!(s.contains(&o("0")));
        assert!(!s.contains(&o("1")));
        assert!(s.contains(&o("w+7")));
        assert!(s.contains(&o("w^5")));
        assert_eq!(s.least_at_or_above(&o("1")), Some(o("w+5")));
        assert_eq!(s.least_at_or_above(&o("w*2+1")), Some(o("w*3+1")));
        assert_eq!(s.least_limit_above(&o("0")), Some(o("w*2")));
        assert_eq!(s.least_limit_above(&o("w*2")), Some(o("w*4")));
        assert!(s.meets_naturals_from(&o("0")));
        assert!(!s.meets_naturals_from(&o("1")));
        assert!(!s.has_cofinal_naturals());
        let t = OrdinalSet::new(vec![iv("7", "w")], None);
        assert!(t.has_cofinal_naturals());
        assert!(t.meets_naturals_from(&o("100")));
    }
}

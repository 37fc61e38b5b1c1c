//! Point-level topology of the ordinals: Cantor-Bendixson rank, derived
//! sets, isolating neighbourhoods, and the absorption closed forms used by
//! the fixed-point solver.

use num_bigint::BigUint;
use num_traits::One;

use super::{Ordinal, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointClass {
    Zero,
    /// `Successor(p)` is the point `p + 1`.
    Successor(Ordinal),
    Limit,
}

impl Ordinal {
    /// Cantor-Bendixson rank: the exponent of the last term.
    /// `rank(0) = 0` by convention, since 0 is isolated.
    pub fn rank(&self) -> Ordinal {
        self.last_exponent().cloned().unwrap_or_default()
    }

    pub fn classify(&self) -> PointClass {
        match self.terms.last() {
            None => PointClass::Zero,
            Some(t) if t.exponent.is_zero() => {
                let mut terms = self.terms.clone();
                let last = terms.last_mut().expect("nonempty");
                if last.coefficient.is_one() {
                    terms.pop();
                } else {
                    last.coefficient -= 1u32;
                }
                PointClass::Successor(Ordinal { terms })
            }
            Some(_) => PointClass::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.classify(), PointClass::Limit)
    }

    /// Isolated points are 0 and the successors.
    pub fn is_isolated(&self) -> bool {
        self.rank().is_zero()
    }

    pub fn predecessor(&self) -> Option<Ordinal> {
        match self.classify() {
            PointClass::Successor(p) => Some(p),
            _ => None,
        }
    }

    /// Least `s > 0` with `self + s == s`: `w^(e+1)` for leading exponent
    /// `e`, and 1 for zero.
    pub fn absorb_threshold(&self) -> Ordinal {
        match self.leading_exponent() {
            None => Ordinal::one(),
            Some(e) => Ordinal::mono(e.succ(), BigUint::one()),
        }
    }

    /// Largest exponent at which the normal forms of `self` and `other`
    /// differ; `None` iff they are equal.
    ///
    /// `self + s == other + s` iff `s >= w^(d+1)` for `d` the result.
    pub fn diff_exponent(&self, other: &Ordinal) -> Option<Ordinal> {
        let (a, b) = (&self.terms, &other.terms);
        let i = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        match (a.get(i), b.get(i)) {
            (None, None) => None,
            (Some(t), None) | (None, Some(t)) => Some(t.exponent.clone()),
            (Some(x), Some(y)) => Some(x.exponent.clone().max(y.exponent.clone())),
        }
    }

    /// Membership in the `alpha`-th derived set of the ordinals.
    pub fn in_derived(&self, alpha: &Ordinal) -> bool {
        !self.is_zero() && self.rank() >= *alpha
    }

    /// For `y > 0`, the point `x` with `x + w^rank(y) == y`; the interval
    /// `]x, y]` then meets the rank level of `y` only in `y`.
    pub fn isolating_left_endpoint(&self) -> Result<Ordinal> {
        let mut terms = self.terms.clone();
        let Some(last) = terms.last_mut() else {
            return Err(Error::Domain(
                "0 is isolated and has no left neighbourhood".into(),
            ));
        };
        if last.coefficient.is_one() {
            terms.pop();
        } else {
            last.coefficient -= 1u32;
        }
        Ok(Ordinal { terms })
    }

    /// Cantor-Bendixson rank of the space `[0, self]`: the first `alpha`
    /// with empty `alpha`-th derived set.
    pub fn cb_rank_segment(&self) -> Ordinal {
        self.leading_exponent().cloned().unwrap_or_default().succ()
    }

    /// Least limit ordinal `>= self`.
    pub fn next_limit(&self) -> Ordinal {
        if self.is_limit() {
            return self.clone();
        }
        let base = self.truncate_below(&Ordinal::one());
        &base + &Ordinal::omega()
    }

    /// Least point of rank exactly `alpha` strictly above `self`.
    pub fn next_of_rank(&self, alpha: &Ordinal) -> Ordinal {
        let base = self.truncate_below(alpha);
        let step = Ordinal {
            terms: vec![Term {
                exponent: alpha.clone(),
                coefficient: BigUint::one(),
            }],
        };
        &base + &step
    }

    /// Number of finite units above the largest limit `<= self`.
    #[cfg(test)]
    pub(crate) fn finite_part(&self) -> BigUint {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => t.coefficient.clone(),
            _ => BigUint::default(),
        }
    }
}

/// The first `max_count` points of rank exactly `alpha` in `]lo, hi]`, in
/// increasing order.
pub fn enumerate_level(
    alpha: &Ordinal,
    lo: &Ordinal,
    hi: &Ordinal,
    max_count: usize,
) -> Result<Vec<Ordinal>> {
    if lo > hi {
        return Err(Error::Domain(format!("empty range: {lo} > {hi}")));
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    while out.len() < max_count {
        cur = cur.next_of_rank(alpha);
        if cur > *hi {
            break;
        }
        out.push(cur.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(o("w^2+w*3").rank(), o("1"));
        assert_eq!(o("w^w").rank(), o("w"));
        assert_eq!(o("7").rank(), o("0"));
        assert_eq!(o("0").rank(), o("0"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(o("0").classify(), PointClass::Zero);
        assert_eq!(o("w+3").classify(), PointClass::Successor(o("w+2")));
        assert_eq!(o("w+1").classify(), PointClass::Successor(o("w")));
        assert_eq!(o("w*2").classify(), PointClass::Limit);
    }

    #[test]
    fn absorb_threshold_examples() {
        assert_eq!(o("w").absorb_threshold(), o("w^2"));
        assert_eq!(o("5").absorb_threshold(), o("w"));
        assert_eq!(o("w^2*3+w").absorb_threshold(), o("w^3"));
        assert_eq!(o("0").absorb_threshold(), o("1"));
    }

    #[test]
    fn absorb_threshold_is_least() {
        // Sampled check below the threshold: a + s > s.
        for a in ["w", "w^2*3+w", "7", "w^w+1"] {
            let a = o(a);
            let th = a.absorb_threshold();
            assert_eq!(&a + &th, th);
            for s in ["1", "5", "w", "w*7+2", "w^2", "w^2*9+w"] {
                let s = o(s);
                if s < th {
                    assert_ne!(&a + &s, s, "{a} + {s}");
                }
            }
        }
    }

    #[test]
    fn diff_exponent_examples() {
        assert_eq!(o("1").diff_exponent(&o("2")), Some(o("0")));
        let (a, b) = (o("w*2+1"), o("w*2+3"));
        assert_eq!(a.diff_exponent(&b), Some(o("0")));
        assert_eq!(&a + &o("w"), &b + &o("w"));
        assert_eq!(a.diff_exponent(&a), None);
        assert_eq!(o("w^2").diff_exponent(&o("w^2+w*3")), Some(o("1")));
        assert_eq!(o("w^3").diff_exponent(&o("w^2+5")), Some(o("3")));
    }

    #[test]
    fn derived_membership() {
        assert!(o("w^2").in_derived(&o("2")));
        assert!(!o("w^2").in_derived(&o("3")));
        assert!(!o("0").in_derived(&o("0")));
        assert!(o("3").in_derived(&o("0")));
    }

    #[test]
    fn level_enumeration() {
        let lvl = enumerate_level(&o("1"), &o("0"), &o("w*9"), 3).unwrap();
        assert_eq!(lvl, vec![o("w"), o("w*2"), o("w*3")]);
        let lvl = enumerate_level(&o("0"), &o("w"), &o("w+3"), 10).unwrap();
        assert_eq!(lvl, vec![o("w+1"), o("w+2"), o("w+3")]);
        let lvl = enumerate_level(&o("2"), &o("w^2"), &o("w^2*3+w"), 10).unwrap();
        assert_eq!(lvl, vec![o("w^2*2"), o("w^2*3")]);
        assert!(enumerate_level(&o("1"), &o("w"), &o("1"), 3).is_err());
    }

    #[test]
    fn level_enumeration_matches_rank_scan() {
        // Oracle: every point w^2*a + w*b + c of a grid that is closed
        // under the levels queried, filtered by rank.
        let mut pts = Vec::new();
        for a in 0..4u64 {
            for b in 0..8u64 {
                for c in 0..8u64 {
                    let x = &(&(&o("w^2") * &Ordinal::nat(a)) + &(&o("w") * &Ordinal::nat(b)))
                        + &Ordinal::nat(c);
                    pts.push(x);
                }
            }
        }
        pts.sort();
        let cases = [
            (o("0"), o("w+2"), o("w+7")),
            (o("1"), o("w+2"), o("w*7+5")),
            (o("2"), o("w+2"), o("w^2*3+w*5+5")),
        ];
        for (alpha, lo, hi) in cases {
            let expected: Vec<Ordinal> = pts
                .iter()
                .filter(|x| **x > lo && **x <= hi && x.rank() == alpha)
                .cloned()
                .collect();
            let got = enumerate_level(&alpha, &lo, &hi, 1000).unwrap();
            assert_eq!(got, expected, "alpha={alpha}");
        }
    }

    #[test]
    fn isolating_left_endpoint_examples() {
        assert_eq!(o("w*2").isolating_left_endpoint().unwrap(), o("w"));
        assert_eq!(o("w^2").isolating_left_endpoint().unwrap(), o("0"));
        assert_eq!(o("w+1").isolating_left_endpoint().unwrap(), o("w"));
        assert!(matches!(
            o("0").isolating_left_endpoint(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn isolating_interval_has_lower_ranks_inside() {
        let y = o("w*2");
        let x = y.isolating_left_endpoint().unwrap();
        for k in 1..50u64 {
            let t = &x + &Ordinal::nat(k);
            assert!(t < y);
            assert!(t.rank() < y.rank());
        }
        let y = o("w^2*2");
        let x = y.isolating_left_endpoint().unwrap();
        for b in 0..10u64 {
            for c in 0..10u64 {
                let t = &(&x + &(&o("w") * &Ordinal::nat(b))) + &Ordinal::nat(c);
                if t > x && t < y {
                    assert!(t.rank() < y.rank());
                }
            }
        }
    }

    #[test]
    fn cb_rank_examples() {
        assert_eq!(o("0").cb_rank_segment(), o("1"));
        assert_eq!(o("w").cb_rank_segment(), o("2"));
        assert_eq!(o("w^2*2+5").cb_rank_segment(), o("3"));
    }

    /// Brute derived-set iteration on a finite model of `[0, w*k + n]`:
    /// a point survives a derivative step iff it is a limit of survivors.
    #[test]
    fn cb_rank_matches_brute_derivatives_below_w_squared() {
        for k in 0..4u64 {
            for n in 0..4u64 {
                let beta = &(&o("w") * &Ordinal::nat(k)) + &Ordinal::nat(n);
                // Model: points w*a+b with b < 12 as stand-ins for the
                // isolated points; limits w*a (a >= 1) are accumulation
                // points of those.
                let mut space: Vec<Ordinal> = Vec::new();
                for a in 0..=k {
                    for b in 0..12u64 {
                        let x = &(&o("w") * &Ordinal::nat(a)) + &Ordinal::nat(b);
                        if x <= beta {
                            space.push(x);
                        }
                    }
                }
                let mut level = 0u64;
                while !space.is_empty() {
                    // A limit survives iff the stand-ins for its approaching
                    // sequence are still present.
                    let next: Vec<Ordinal> = space
                        .iter()
                        .filter(|x| {
                            x.is_limit()
                                && space.contains(
                                    &(&x.isolating_left_endpoint().unwrap() + &Ordinal::nat(11u32)),
                                )
                        })
                        .cloned()
                        .collect();
                    space = next;
                    level += 1;
                }
                assert_eq!(beta.cb_rank_segment(), Ordinal::nat(level), "beta={beta}");
            }
        }
    }

    #[test]
    fn next_limit_examples() {
        assert_eq!(o("0").next_limit(), o("w"));
        assert_eq!(o("w").next_limit(), o("w"));
        assert_eq!(o("w+3").next_limit(), o("w*2"));
        assert_eq!(o("w^2+w+1").next_limit(), o("w^2+w*2"));
    }
}

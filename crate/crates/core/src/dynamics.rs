//! Constructions on the group of piecewise homeomorphisms: moving finitely
//! many points of equal rank to prescribed places, decompositions `g = u h u'`
//! with `u, u'` fixing a finite set and `h` from a finite family, and the
//! witnesses behind the density and Baire-category arguments.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::homeo::{ClopenInterval, PwHomeo};
use crate::ordinal::{parse_ordinal_at, Ordinal};

/// Send each `x` to its `y` while fixing every frozen point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitivityProblem {
    pub pairs: Vec<(Ordinal, Ordinal)>,
    pub frozen: BTreeSet<Ordinal>,
}

impl TransitivityProblem {
    pub fn new(pairs: Vec<(Ordinal, Ordinal)>, frozen: impl IntoIterator<Item = Ordinal>) -> Self {
        TransitivityProblem {
            pairs,
            frozen: frozen.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs.is_empty() {
            return Err(Error::Domain("no pairs to move".into()));
        }
        let mut xs = BTreeSet::new();
        let mut ys = BTreeSet::new();
        for (x, y) in &self.pairs {
            let pair = format!("({x}, {y})");
            if x.rank() != y.rank() {
                return Err(Error::Precondition(format!(
                    "pair {pair}: ranks differ ({} vs {})",
                    x.rank(),
                    y.rank()
                )));
            }
            if !xs.insert(x) {
                return Err(Error::Precondition(format!(
                    "pair {pair}: source {x} repeated"
                )));
            }
            if !ys.insert(y) {
                return Err(Error::Precondition(format!(
                    "pair {pair}: target {y} repeated"
                )));
            }
            if x != y && (self.frozen.contains(x) || self.frozen.contains(y)) {
                return Err(Error::Precondition(format!(
                    "pair {pair} moves a frozen point"
                )));
            }
        }
        Ok(())
    }

    /// Whether `g` solves the problem.
    pub fn is_solved_by(&self, g: &PwHomeo) -> bool {
        self.pairs.iter().all(|(x, y)| g.apply(x) == *y)
            && self.frozen.iter().all(|f| g.apply(f) == *f)
    }
}

/// Lines `x -> y` for pairs and `fix x` for frozen points; `#` starts a
/// comment line.
pub fn parse_problem(text: &str) -> Result<TransitivityProblem> {
    let mut pairs = Vec::new();
    let mut frozen = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let parsed = if let Some(rest) = t.strip_prefix("fix ") {
            let at = line.len() - rest.len();
            parse_ordinal_at(rest, at).map(|f| frozen.push(f))
        } else if let Some(arrow) = line.find("->") {
            parse_ordinal_at(&line[..arrow], 0).and_then(|x| {
                let y = parse_ordinal_at(&line[arrow + 2..], arrow + 2)?;
                pairs.push((x, y));
                Ok(())
            })
        } else {
            Err(Error::parse(0, "expected 'x -> y' or 'fix x'"))
        };
        parsed.map_err(|e| e.at_line(n + 1))?;
    }
    Ok(TransitivityProblem::new(pairs, frozen))
}

/// A map solving the problem, built one pair at a time: each pair's current
/// position is exchanged with its target by a swap of two neighbourhoods of
/// type `w^rank + 1`, shrunk until they avoid every other point in play.
pub fn make_transitive(problem: &TransitivityProblem) -> Result<PwHomeo> {
    problem.validate()?;
    let mut g = PwHomeo::identity();
    let mut frozen = problem.frozen.clone();
    let mut pos: Vec<Ordinal> = problem.pairs.iter().map(|(x, _)| x.clone()).collect();
    for (i, (_, y)) in problem.pairs.iter().enumerate() {
        let p = pos[i].clone();
        if &p != y {
            let obstacles: Vec<&Ordinal> = frozen
                .iter()
                .chain(
                    pos.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, q)| q),
                )
                .filter(|q| *q != y && **q != p)
                .collect();
            let step = exchange(&p, y, &obstacles)?;
            for q in pos.iter_mut() {
                *q = step.apply(q);
            }
            g = step.compose(&g);
        }
        frozen.insert(y.clone());
    }
    if !problem.is_solved_by(&g) {
        return Err(Error::Contract(
            "constructed map misses a pair or moves a frozen point".into(),
        ));
    }
    Ok(g)
}

/// A map exchanging the equal-rank points `p != y` and fixing every obstacle.
fn exchange(p: &Ordinal, y: &Ordinal, obstacles: &[&Ordinal]) -> Result<PwHomeo> {
    if p.is_isolated() {
        return PwHomeo::swap_points(p, y);
    }
    let (lo, hi) = if p < y { (p, y) } else { (y, p) };
    let below = |bound: &Ordinal, floor: Ordinal| {
        obstacles
            .iter()
            .filter(|q| **q < bound)
            .fold(floor, |m, q| m.max((*q).clone()))
    };
    let a = below(lo, lo.isolating_left_endpoint()?);
    let b = below(hi, hi.isolating_left_endpoint()?.max(lo.clone()));
    PwHomeo::interval_swap(
        &ClopenInterval::left_open(a, lo.clone())?,
        &ClopenInterval::left_open(b, hi.clone())?,
    )
}

/// The `seq`-th point of rank `r` above `floor`:
/// `trunc(floor) + w^(r+1) + w^r * (seq+1)`, where `trunc` drops the terms of
/// `floor` with exponent at most `r`. Distinct `seq` give distinct points.
pub fn fresh_point(r: &Ordinal, seq: usize, floor: &Ordinal) -> Result<Ordinal> {
    let up = r.succ();
    let base = &floor.truncate_below(&up) + &Ordinal::monomial(up, BigUint::from(1u32))?;
    Ok(&base + &Ordinal::monomial(r.clone(), BigUint::from(seq + 1))?)
}

/// `g = u ∘ h ∘ u_prime` with `u`, `u_prime` fixing every point and `h`
/// determined by the points and `sigma` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoelckeCertificate {
    pub u: PwHomeo,
    pub h: PwHomeo,
    pub u_prime: PwHomeo,
    /// `(i, j)` with `g(x_i) = x_j`, by index into the points, sorted by `i`.
    pub sigma: Vec<(usize, usize)>,
}

impl RoelckeCertificate {
    pub fn check(&self, g: &PwHomeo, points: &[Ordinal]) -> bool {
        self.u.compose(&self.h.compose(&self.u_prime)) == *g
            && points
                .iter()
                .all(|x| self.u.apply(x) == *x && self.u_prime.apply(x) == *x)
            && self
                .sigma
                .iter()
                .all(|&(i, j)| self.h.apply(&points[i]) == points[j])
    }
}

fn check_distinct(points: &[Ordinal]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for x in points {
        if !seen.insert(x) {
            return Err(Error::Precondition(format!("point {x} repeated")));
        }
    }
    Ok(())
}

/// Off the domain of `sigma`, `x_i` goes to the `i`-th fresh point of its
/// rank above every point.
fn family_targets(points: &[Ordinal], sigma: &[(usize, usize)]) -> Result<Vec<Ordinal>> {
    let floor = points.iter().max().cloned().unwrap_or_default();
    points
        .iter()
        .enumerate()
        .map(|(i, x)| match sigma.iter().find(|&&(a, _)| a == i) {
            Some(&(_, j)) => Ok(points[j].clone()),
            None => fresh_point(&x.rank(), i, &floor),
        })
        .collect()
}

/// The member of the finite family indexed by partial injections `sigma`
/// of the point set: it sends `x_i` to `x_sigma(i)` on the domain and every
/// other point to a fresh point of the same rank.
pub fn roelcke_family_member(points: &[Ordinal], sigma: &[(usize, usize)]) -> Result<PwHomeo> {
    check_distinct(points)?;
    if points.is_empty() {
        return Ok(PwHomeo::identity());
    }
    let targets = family_targets(points, sigma)?;
    let pairs = points.iter().cloned().zip(targets).collect();
    make_transitive(&TransitivityProblem::new(pairs, []))
}

pub fn roelcke_decompose(g: &PwHomeo, points: &[Ordinal]) -> Result<RoelckeCertificate> {
    check_distinct(points)?;
    let sigma: Vec<(usize, usize)> = points
        .iter()
        .enumerate()
        .filter_map(|(i, x)| {
            let gx = g.apply(x);
            points.iter().position(|y| *y == gx).map(|j| (i, j))
        })
        .collect();
    let h = roelcke_family_member(points, &sigma)?;
    let pairs: Vec<(Ordinal, Ordinal)> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| !sigma.iter().any(|&(a, _)| a == *i))
        .map(|(_, x)| (h.apply(x), g.apply(x)))
        .collect();
    let u = if pairs.is_empty() {
        PwHomeo::identity()
    } else {
        make_transitive(&TransitivityProblem::new(pairs, points.iter().cloned()))?
    };
    let w = g.inverse().compose(&u.compose(&h));
    if points.iter().any(|x| w.apply(x) != *x) {
        return Err(Error::Contract("g^-1 u h moves a point".into()));
    }
    let cert = RoelckeCertificate {
        u,
        h,
        u_prime: w.inverse(),
        sigma,
    };
    if !cert.check(g, points) {
        return Err(Error::Contract(
            "certificate does not recompose to g".into(),
        ));
    }
    Ok(cert)
}

/// Witnesses that maps agreeing with `g` on the targets and fixing the
/// family's images are close to `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseApprox {
    /// `g` maps `[0, alpha]` onto itself.
    pub alpha: Ordinal,
    /// `g` on `[0, alpha]`, the identity above.
    pub h: PwHomeo,
    /// Pushes every family point above `alpha`.
    pub k: PwHomeo,
}

pub fn dense_approx(g: &PwHomeo, targets: &[Ordinal], family: &[Ordinal]) -> Result<DenseApprox> {
    let start = targets
        .iter()
        .max()
        .map_or_else(Ordinal::one, Ordinal::succ);
    let alpha = g.invariant_point(&start);
    let h = g.restrict_to(&alpha)?;
    let mut points: Vec<Ordinal> = family.to_vec();
    points.sort();
    points.dedup();
    let k = if points.is_empty() {
        PwHomeo::identity()
    } else {
        let floor = points.last().expect("nonempty").clone().max(alpha.clone());
        let pairs = points
            .iter()
            .enumerate()
            .map(|(i, f)| Ok((f.clone(), fresh_point(&f.rank(), i, &floor)?)))
            .collect::<Result<Vec<_>>>()?;
        make_transitive(&TransitivityProblem::new(pairs, []))?
    };
    let ok = targets.iter().all(|t| h.apply(t) == g.apply(t))
        && h.support() <= &alpha
        && family.iter().all(|f| k.apply(f) > alpha);
    if !ok {
        return Err(Error::Contract("approximation contracts fail".into()));
    }
    Ok(DenseApprox { alpha, h, k })
}

fn positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be a positive integer".into()));
    }
    Ok(())
}

/// Whether `g` fixes some natural number `k >= n`.
pub fn in_baire_t(g: &PwHomeo, n: u64) -> Result<bool> {
    positive(n)?;
    Ok(g.fixed_points().meets_naturals_from(&Ordinal::nat(n)))
}

/// A map agreeing with `g` on the constraints that fixes a natural number
/// `k >= n`: `g` followed by the transposition of `k` and `g⁻¹(k)`.
pub fn baire_density_witness(g: &PwHomeo, n: u64, constraints: &[Ordinal]) -> Result<PwHomeo> {
    positive(n)?;
    let images: BTreeSet<Ordinal> = constraints.iter().map(|c| g.apply(c)).collect();
    let k = (n..)
        .map(Ordinal::nat)
        .find(|k| !constraints.contains(k) && !images.contains(k))
        .expect("finitely many exclusions");
    let j = g.inverse().apply(&k);
    let h = if j == k {
        g.clone()
    } else {
        let t = PwHomeo::swap_points(&k, &j)
            .map_err(|e| Error::Contract(format!("preimage of {k} is not isolated ({e})")))?;
        g.compose(&t)
    };
    if h.apply(&k) != k || constraints.iter().any(|c| h.apply(c) != g.apply(c)) {
        return Err(Error::Contract("witness fails its contracts".into()));
    }
    Ok(h)
}

/// The transposition of `n` and `w + n`.
pub fn discontinuity_sequence(n: u64) -> Result<PwHomeo> {
    positive(n)?;
    let x = Ordinal::nat(n);
    PwHomeo::swap_points(&x, &(&Ordinal::omega() + &x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::parse_ordinal;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn problem(pairs: &[(&str, &str)], frozen: &[&str]) -> TransitivityProblem {
        TransitivityProblem::new(
            pairs.iter().map(|(x, y)| (o(x), o(y))).collect(),
            frozen.iter().map(|f| o(f)),
        )
    }

    fn swap() -> PwHomeo {
        crate::homeo::parse_homeo("[0,0] -> [0,0]\n(0,w] -> (w,w*2]\n(w,w*2] -> (0,w]\n").unwrap()
    }

    #[test]
    fn transitive_examples() {
        let g = make_transitive(&problem(&[("w", "w*2")], &[])).unwrap();
        assert_eq!(g, swap());
        let g = make_transitive(&problem(&[("3", "5")], &["4"])).unwrap();
        assert_eq!(g, PwHomeo::swap_points(&o("3"), &o("5")).unwrap());
        let g = make_transitive(&problem(&[("w", "w*2"), ("w*2", "w")], &[])).unwrap();
        assert_eq!(g.apply(&o("w")), o("w*2"));
        assert_eq!(g.apply(&o("w*2")), o("w"));
    }

    #[test]
    fn transitive_avoids_frozen_points() {
        let p = problem(
            &[("w^2", "w^2*3"), ("w+2", "w*5+2")],
            &["w^2+w", "w^2*2+4", "7"],
        );
        let g = make_transitive(&p).unwrap();
        assert!(p.is_solved_by(&g));
        let p = problem(
            &[("w*2", "w*3"), ("w*3", "w*4"), ("w*4", "w*2")],
            &["w*3+1"],
        );
        let g = make_transitive(&p).unwrap();
        assert!(p.is_solved_by(&g));
        assert_eq!(g.order_of(10), Some(3));
    }

    #[test]
    fn problem_text() {
        let p = parse_problem("# move\nw -> w*2\nfix 4\n  fix w^2\n").unwrap();
        assert_eq!(p, problem(&[("w", "w*2")], &["4", "w^2"]));
        assert!(matches!(
            parse_problem("w -> w*2\nfix w^^2"),
            Err(Error::Parse {
                line: Some(2),
                pos: 6,
                ..
            })
        ));
        assert!(matches!(parse_problem("w w*2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn transitive_preconditions() {
        let bad = [
            problem(&[("w", "5")], &[]),
            problem(&[("1", "2"), ("1", "3")], &[]),
            problem(&[("1", "3"), ("2", "3")], &[]),
            problem(&[("1", "3")], &["3"]),
        ];
        for p in bad {
            assert!(
                matches!(make_transitive(&p), Err(Error::Precondition(_))),
                "{p:?}"
            );
        }
        assert!(make_transitive(&problem(&[("2", "2")], &["2"]))
            .unwrap()
            .is_identity());
        assert!(matches!(
            make_transitive(&problem(&[], &[])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fresh_points() {
        assert_eq!(fresh_point(&o("0"), 0, &o("5")).unwrap(), o("w+1"));
        assert_eq!(fresh_point(&o("1"), 2, &o("w*3+4")).unwrap(), o("w^2+w*3"));
        assert_eq!(fresh_point(&o("0"), 1, &o("w^5")).unwrap(), o("w^5+w+2"));
        let f = fresh_point(&o("w"), 0, &o("w^w*2")).unwrap();
        assert_eq!(f.rank(), o("w"));
        assert!(f > o("w^w*2"));
    }

    #[test]
    fn roelcke_examples() {
        let pts = [o("3"), o("w"), o("w^2+1")];
        let c = roelcke_decompose(&PwHomeo::identity(), &pts).unwrap();
        assert!(c.u.is_identity() && c.h.is_identity() && c.u_prime.is_identity());
        assert_eq!(c.sigma, vec![(0, 0), (1, 1), (2, 2)]);

        let g = swap();
        let c = roelcke_decompose(&g, &[o("w")]).unwrap();
        assert!(c.sigma.is_empty());
        assert_eq!(c.h.apply(&o("w")).rank(), o("1"));
        assert!(c.check(&g, &[o("w")]));

        let g = PwHomeo::swap_points(&o("2"), &o("w+5")).unwrap();
        let pts = [o("2"), o("w+5")];
        let c = roelcke_decompose(&g, &pts).unwrap();
        assert_eq!(c.sigma, vec![(0, 1), (1, 0)]);
        assert_eq!(c.h, g);
        assert!(c.check(&g, &pts));
        assert_eq!(c.h, roelcke_family_member(&pts, &c.sigma).unwrap());
    }

    #[test]
    fn dense_examples() {
        let d = dense_approx(&PwHomeo::identity(), &[o("w+3")], &[o("2"), o("w")]).unwrap();
        assert_eq!(d.alpha, o("w+4"));
        assert!(d.h.is_identity());
        assert!(d.k.apply(&o("w")) > o("w+4"));

        let d = dense_approx(&swap(), &[o("w")], &[o("1")]).unwrap();
        assert_eq!(d.alpha, o("w*2"));
        assert_eq!(d.h, swap());
        assert!(d.k.apply(&o("1")) > o("w*2"));

        let d = dense_approx(&swap(), &[], &[]).unwrap();
        assert_eq!(d.alpha, o("w*2"));
    }

    #[test]
    fn baire_examples() {
        assert!(in_baire_t(&PwHomeo::identity(), 5).unwrap());
        let g = PwHomeo::swap_points(&o("7"), &o("w+7")).unwrap();
        assert!(in_baire_t(&g, 7).unwrap());
        assert!(in_baire_t(&g, 0).is_err());

        let h = baire_density_witness(&PwHomeo::identity(), 1, &[o("5")]).unwrap();
        assert!(h.is_identity());

        let g = PwHomeo::swap_points(&o("1"), &o("w+1")).unwrap();
        let h = baire_density_witness(&g, 1, &[]).unwrap();
        assert_eq!(h.apply(&o("1")), o("1"));
        assert!(in_baire_t(&h, 1).unwrap());

        let g = PwHomeo::swap_points(&o("1"), &o("4"))
            .unwrap()
            .compose(&PwHomeo::swap_points(&o("5"), &o("w+2")).unwrap());
        let cs: Vec<Ordinal> = (1..=3u32).map(Ordinal::nat).collect();
        let h = baire_density_witness(&g, 1, &cs).unwrap();
        for c in &cs {
            assert_eq!(h.apply(c), g.apply(c));
        }
        // 4 = g(1) is excluded, so k = 5 and g⁻¹(5) = w+2.
        assert_eq!(h.apply(&o("5")), o("5"));
        assert!(in_baire_t(&h, 1).unwrap());
    }

    #[test]
    fn discontinuity_examples() {
        let g1 = discontinuity_sequence(1).unwrap();
        assert_eq!(g1, PwHomeo::swap_points(&o("1"), &o("w+1")).unwrap());
        for n in 1..=50u64 {
            let g = discontinuity_sequence(n).unwrap();
            assert_eq!(
                g.apply(&Ordinal::nat(n)),
                &Ordinal::omega() + &Ordinal::nat(n)
            );
        }
        assert!(discontinuity_sequence(0).is_err());
    }
}

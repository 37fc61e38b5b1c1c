//! Basic open sets of the symmetric group on the ordinals, written as
//! constraint systems `{g : g(x_i) ∈ Y_i}`, with satisfiability by bipartite
//! matching, containment, finite decreasing chains and completion of
//! partial injections to permutations.

mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use text::{parse_constraints, parse_injection};

use crate::error::{Error, Result};
use crate::ordinal::{Notation, Ordinal};

/// Largest system [`ConstraintSystem::hall_brute`] will enumerate.
pub const HALL_BRUTE_LIMIT: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    constraints: Vec<(Ordinal, BTreeSet<Ordinal>)>,
}

/// Outcome of a containment test; `vacuous` marks an empty left side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    pub vacuous: bool,
}

impl ConstraintSystem {
    /// Every allowed set must be nonempty; points may repeat.
    pub fn new(constraints: Vec<(Ordinal, BTreeSet<Ordinal>)>) -> Result<Self> {
        if let Some((x, _)) = constraints.iter().find(|(_, ys)| ys.is_empty()) {
            return Err(Error::Domain(format!("empty allowed set for {x}")));
        }
        Ok(ConstraintSystem { constraints })
    }

    pub fn constraints(&self) -> &[(Ordinal, BTreeSet<Ordinal>)] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Sort by point and intersect the allowed sets of repeated points. The
    /// result may contain empty allowed sets; see
    /// [`is_trivially_unsatisfiable`](Self::is_trivially_unsatisfiable).
    pub fn normalize(&self) -> ConstraintSystem {
        let mut merged: BTreeMap<Ordinal, BTreeSet<Ordinal>> = BTreeMap::new();
        for (x, ys) in &self.constraints {
            merged
                .entry(x.clone())
                .and_modify(|cur| cur.retain(|y| ys.contains(y)))
                .or_insert_with(|| ys.clone());
        }
        ConstraintSystem {
            constraints: merged.into_iter().collect(),
        }
    }

    pub fn is_trivially_unsatisfiable(&self) -> bool {
        self.normalize()
            .constraints
            .iter()
            .any(|(_, ys)| ys.is_empty())
    }

    /// An injection `x_i -> y_i ∈ Y_i`, by augmenting paths, or `None` when
    /// Hall's condition fails.
    pub fn satisfiable(&self) -> Option<PartialInjection> {
        let norm = self.normalize();
        let matching = Matcher::new(&norm).run()?;
        let pairs = norm
            .constraints
            .iter()
            .zip(matching)
            .map(|((x, _), y)| (x.clone(), y))
            .collect();
        Some(PartialInjection { pairs })
    }

    /// Hall's condition checked on every subset of points.
    pub fn hall_brute(&self) -> Result<bool> {
        let norm = self.normalize();
        let k = norm.constraints.len();
        if k > HALL_BRUTE_LIMIT {
            return Err(Error::Resource(format!(
                "{k} points exceed the limit of {HALL_BRUTE_LIMIT} for exhaustive Hall checks"
            )));
        }
        Ok((1u32..1 << k).all(|mask| {
            let union: BTreeSet<&Ordinal> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .flat_map(|i| norm.constraints[i].1.iter())
                .collect();
            union.len() >= mask.count_ones() as usize
        }))
    }

    /// Normal form with every allowed value that no satisfying injection
    /// uses removed. Two satisfiable systems define the same open set iff
    /// their tightened forms agree.
    pub fn tighten(&self) -> ConstraintSystem {
        let norm = self.normalize();
        let constraints = norm
            .constraints
            .iter()
            .enumerate()
            .map(|(i, (x, ys))| {
                let keep = ys
                    .iter()
                    .filter(|y| {
                        let mut forced = norm.clone();
                        forced.constraints[i].1 = BTreeSet::from([(*y).clone()]);
                        Matcher::new(&forced).run().is_some()
                    })
                    .cloned()
                    .collect();
                (x.clone(), keep)
            })
            .collect();
        ConstraintSystem { constraints }
    }

    /// Whether every permutation satisfying `self` satisfies `other`.
    ///
    /// Points of `other` left free by `self` can be sent outside any finite
    /// set, so inclusion holds iff each constraint `(u, Z)` of `other` has
    /// `u` constrained by `self` with every usable value in `Z`.
    pub fn contains(&self, other: &ConstraintSystem) -> Containment {
        if self.satisfiable().is_none() {
            return Containment {
                holds: true,
                vacuous: true,
            };
        }
        let tight: BTreeMap<Ordinal, BTreeSet<Ordinal>> =
            self.tighten().constraints.into_iter().collect();
        let holds = other
            .normalize()
            .constraints
            .iter()
            .all(|(u, zs)| tight.get(u).is_some_and(|ys| ys.is_subset(zs)));
        Containment {
            holds,
            vacuous: false,
        }
    }

    /// The sieve relation on constraint-defined opens: `self ⊑ other`.
    pub fn below(&self, other: &ConstraintSystem) -> Result<bool> {
        for (side, s) in [("left", self), ("right", other)] {
            if s.satisfiable().is_none() {
                return Err(Error::Precondition(format!(
                    "{side} system is unsatisfiable"
                )));
            }
        }
        Ok(self.contains(other).holds)
    }

    /// Whether `h` is defined on every point with `h(x) ∈ Y`.
    pub fn satisfied_by(&self, h: &PartialInjection) -> bool {
        self.constraints
            .iter()
            .all(|(x, ys)| h.get(x).is_some_and(|y| ys.contains(y)))
    }

    pub fn render(&self, notation: Notation) -> String {
        self.constraints
            .iter()
            .map(|(x, ys)| {
                let ys: Vec<String> = ys.iter().map(|y| y.render(notation)).collect();
                format!("{} : {{{}}}\n", x.render(notation), ys.join(", "))
            })
            .collect()
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// Kuhn's augmenting-path matching of points (left) to allowed values.
struct Matcher<'a> {
    adj: Vec<Vec<usize>>,
    values: Vec<&'a Ordinal>,
    owner: Vec<Option<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(cs: &'a ConstraintSystem) -> Self {
        let values: Vec<&Ordinal> = cs
            .constraints
            .iter()
            .flat_map(|(_, ys)| ys)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let adj = cs
            .constraints
            .iter()
            .map(|(_, ys)| {
                ys.iter()
                    .map(|y| values.binary_search(&y).expect("collected above"))
                    .collect()
            })
            .collect();
        let owner = vec![None; values.len()];
        Matcher { adj, values, owner }
    }

    fn run(mut self) -> Option<Vec<Ordinal>> {
        for i in 0..self.adj.len() {
            let mut seen = vec![false; self.values.len()];
            if !self.augment(i, &mut seen) {
                return None;
            }
        }
        let mut out = vec![None; self.adj.len()];
        for (v, owner) in self.owner.iter().enumerate() {
            if let Some(i) = owner {
                out[*i] = Some(self.values[v].clone());
            }
        }
        out.into_iter().collect()
    }

    fn augment(&mut self, i: usize, seen: &mut [bool]) -> bool {
        for k in 0..self.adj[i].len() {
            let v = self.adj[i][k];
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if self.owner[v].is_none_or(|j| self.augment(j, seen)) {
                self.owner[v] = Some(i);
                return true;
            }
        }
        false
    }
}

/// Merge a decreasing chain `c_0 ⊒ c_1 ⊒ ...` into one system and pick an
/// injection satisfying every member.
pub fn chain_limit(chain: &[ConstraintSystem]) -> Result<(ConstraintSystem, PartialInjection)> {
    if chain.is_empty() {
        return Err(Error::Domain("empty chain".into()));
    }
    for (n, w) in chain.windows(2).enumerate() {
        if !w[1].below(&w[0])? {
            return Err(Error::Precondition(format!(
                "chain member {} is not below member {n}",
                n + 1
            )));
        }
    }
    let limit = ConstraintSystem {
        constraints: chain.iter().flat_map(|c| c.constraints.clone()).collect(),
    }
    .normalize();
    let witness = limit
        .satisfiable()
        .ok_or_else(|| Error::Contract("limit of the chain is unsatisfiable".into()))?;
    if !chain.iter().all(|c| c.satisfied_by(&witness)) {
        return Err(Error::Contract("witness misses a chain member".into()));
    }
    Ok((limit, witness))
}

/// A finite injective map between ordinals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialInjection {
    pairs: Vec<(Ordinal, Ordinal)>,
}

impl PartialInjection {
    pub fn new(pairs: Vec<(Ordinal, Ordinal)>) -> Result<Self> {
        let mut from = BTreeSet::new();
        let mut to = BTreeSet::new();
        for (x, y) in &pairs {
            if !from.insert(x) {
                return Err(Error::Domain(format!("{x} mapped twice")));
            }
            if !to.insert(y) {
                return Err(Error::Domain(format!("{y} hit twice")));
            }
        }
        Ok(PartialInjection { pairs })
    }

    pub fn pairs(&self) -> &[(Ordinal, Ordinal)] {
        &self.pairs
    }

    pub fn get(&self, x: &Ordinal) -> Option<&Ordinal> {
        self.pairs.iter().find(|(a, _)| a == x).map(|(_, b)| b)
    }

    /// Close every maximal chain `a -> ... -> z` into the cycle
    /// `(a ... z)`; cycles already present are kept.
    pub fn extend_to_permutation(&self) -> Permutation {
        let next: BTreeMap<&Ordinal, &Ordinal> = self.pairs.iter().map(|(a, b)| (a, b)).collect();
        let targets: BTreeSet<&Ordinal> = self.pairs.iter().map(|(_, b)| b).collect();
        let mut done: BTreeSet<&Ordinal> = BTreeSet::new();
        let mut cycles = Vec::new();
        let starts = next
            .keys()
            .filter(|a| !targets.contains(*a))
            .chain(next.keys().filter(|a| targets.contains(*a)));
        for &start in starts {
            if done.contains(start) {
                continue;
            }
            let mut cycle = vec![start.clone()];
            done.insert(start);
            let mut cur = start;
            while let Some(&n) = next.get(cur) {
                if n == start {
                    break;
                }
                done.insert(n);
                cycle.push(n.clone());
                cur = n;
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        Permutation { cycles }
    }

    pub fn render(&self, notation: Notation) -> String {
        self.pairs
            .iter()
            .map(|(a, b)| format!("{} -> {}\n", a.render(notation), b.render(notation)))
            .collect()
    }
}

impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

/// A finitely supported permutation as disjoint cycles of length at least 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Permutation {
    cycles: Vec<Vec<Ordinal>>,
}

impl Permutation {
    pub fn cycles(&self) -> &[Vec<Ordinal>] {
        &self.cycles
    }

    pub fn support(&self) -> BTreeSet<&Ordinal> {
        self.cycles.iter().flatten().collect()
    }

    pub fn apply(&self, x: &Ordinal) -> Ordinal {
        for c in &self.cycles {
            if let Some(i) = c.iter().position(|y| y == x) {
                return c[(i + 1) % c.len()].clone();
            }
        }
        x.clone()
    }

    pub fn render(&self, notation: Notation) -> String {
        if self.cycles.is_empty() {
            return "()\n".to_string();
        }
        let cycles: Vec<String> = self
            .cycles
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(|x| x.render(notation)).collect();
                format!("({})", xs.join(", "))
            })
            .collect();
        cycles.join(" ") + "\n"
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

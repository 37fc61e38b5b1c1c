//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients.
//! The representation is canonical, so derived equality and hashing are
//! ordinal equality.

mod parse;
mod topology;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(crate) use parse::parse_ordinal_at;
pub use parse::{parse_ordinal, parse_ordinal_with_cap, Notation};
pub use topology::{enumerate_level, PointClass};

/// Default cap on the nesting depth of exponents.
pub const DEFAULT_DEPTH_CAP: usize = 32;

/// One Cantor-normal-form term `w^exponent * coefficient`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    exponent: Ordinal,
    coefficient: BigUint,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1u32)
    }

    pub fn omega() -> Self {
        Ordinal::mono(Ordinal::one(), BigUint::one())
    }

    /// The finite ordinal `n`.
    pub fn nat(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal::mono(Ordinal::zero(), n)
        }
    }

    /// `w^exponent * coefficient` without any checks.
    pub(crate) fn mono(exponent: Ordinal, coefficient: BigUint) -> Self {
        debug_assert!(!coefficient.is_zero());
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// `w^exponent * coefficient`; the coefficient must be positive and the
    /// result must respect the depth cap.
    pub fn monomial(exponent: Ordinal, coefficient: BigUint) -> Result<Self> {
        if coefficient.is_zero() {
            return Err(Error::Domain("coefficient must be at least 1".into()));
        }
        check_depth(exponent.depth() + 1, DEFAULT_DEPTH_CAP)?;
        Ok(Ordinal::mono(exponent, coefficient))
    }

    /// Build from `(exponent, coefficient)` pairs, which must already be in
    /// canonical order.
    pub fn from_terms(terms: Vec<(Ordinal, BigUint)>) -> Result<Self> {
        for (i, (e, c)) in terms.iter().enumerate() {
            if c.is_zero() {
                return Err(Error::Domain(format!("term {i} has coefficient 0")));
            }
            if i > 0 && terms[i - 1].0 <= *e {
                return Err(Error::Domain(format!(
                    "exponents not strictly decreasing at term {i}"
                )));
            }
        }
        let o = Ordinal {
            terms: terms
                .into_iter()
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        };
        check_depth(o.depth(), DEFAULT_DEPTH_CAP)?;
        Ok(o)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_nat().and_then(|n| u64::try_from(n).ok())
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// Exponent of the last term; `None` for zero.
    pub fn last_exponent(&self) -> Option<&Ordinal> {
        self.terms.last().map(|t| &t.exponent)
    }

    /// Nesting depth of the exponent tower: 0 for zero, 1 for naturals,
    /// 2 for `w^n` etc.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| 1 + t.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn succ(&self) -> Ordinal {
        self + &Ordinal::one()
    }

    /// `w^self`, subject to [`DEFAULT_DEPTH_CAP`].
    pub fn omega_pow(&self) -> Result<Ordinal> {
        self.omega_pow_capped(DEFAULT_DEPTH_CAP)
    }

    pub fn omega_pow_capped(&self, cap: usize) -> Result<Ordinal> {
        check_depth(self.depth() + 1, cap)?;
        Ok(Ordinal::mono(self.clone(), BigUint::one()))
    }

    /// The unique `x` with `self + x == other`. Requires `self <= other`.
    pub fn left_subtract(&self, other: &Ordinal) -> Result<Ordinal> {
        if self > other {
            return Err(Error::Domain(format!(
                "cannot left-subtract {self} from smaller {other}"
            )));
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut i = 0;
        while i < a.len() && a[i] == b[i] {
            i += 1;
        }
        if i == a.len() {
            return Ok(Ordinal {
                terms: b[i..].to_vec(),
            });
        }
        // a < b and they first differ at i, so b[i] exists and is larger.
        let mut terms = Vec::with_capacity(b.len() - i);
        if a[i].exponent == b[i].exponent {
            terms.push(Term {
                exponent: b[i].exponent.clone(),
                coefficient: &b[i].coefficient - &a[i].coefficient,
            });
        } else {
            terms.push(b[i].clone());
        }
        terms.extend_from_slice(&b[i + 1..]);
        Ok(Ordinal { terms })
    }

    /// Drop every term whose exponent is below `e`; the result is the
    /// largest multiple of `w^e` that is `<= self`.
    pub fn truncate_below(&self, e: &Ordinal) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .take_while(|t| t.exponent >= *e)
                .cloned()
                .collect(),
        }
    }
}

pub(crate) fn check_depth(depth: usize, cap: usize) -> Result<()> {
    if depth > cap {
        Err(Error::Resource(format!(
            "exponent nesting depth {depth} exceeds cap {cap}"
        )))
    } else {
        Ok(())
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.terms.iter().zip(&other.terms) {
            let ord = x
                .exponent
                .cmp(&y.exponent)
                .then_with(|| x.coefficient.cmp(&y.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent >= head.exponent)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        if let Some(last) = terms.last_mut() {
            if last.exponent == head.exponent {
                last.coefficient += &head.coefficient;
                rest.next();
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl Mul for &Ordinal {
    type Output = Ordinal;

    /// Left-distributive product: `a * (w^f*d + ...) = a*w^f*d + ...`.
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = self.terms.first() else {
            return Ordinal::zero();
        };
        let mut out = Ordinal::zero();
        for t in &rhs.terms {
            let part = if t.exponent.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].coefficient *= &t.coefficient;
                Ordinal { terms }
            } else {
                Ordinal::mono(&lead.exponent + &t.exponent, t.coefficient.clone())
            };
            out = &out + &part;
        }
        out
    }
}

impl Mul for Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: Ordinal) -> Ordinal {
        &self * &rhs
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl From<BigUint> for Ordinal {
    fn from(n: BigUint) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

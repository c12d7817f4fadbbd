use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{format_rational, Rational};

/// A finite formal rational combination of basis elements `B`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// elements. Terms iterate in the order of `B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::monomial(b, Rational::one())
    }

    pub fn monomial(b: B, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Rational)>) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    pub fn pop_first(&mut self) -> Option<(B, Rational)> {
        self.terms.pop_first()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// Linear extension of `f` on basis elements.
    pub fn map_basis<C: Ord + Clone>(&self, f: impl Fn(&B) -> C) -> LinComb<C> {
        LinComb::from_terms(self.terms.iter().map(|(b, c)| (f(b), c.clone())))
    }

    /// Linear extension of a map from basis elements to combinations.
    pub fn flat_map<C: Ord + Clone>(&self, f: impl Fn(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }
}

impl<B: Ord> IntoIterator for LinComb<B> {
    type Item = (B, Rational);
    type IntoIter = std::collections::btree_map::IntoIter<B, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;

    fn neg(self) -> LinComb<B> {
        self.scale(&-Rational::one())
    }
}

/// Text form: `x1x2x3 - x1x3x2`, `2 * x1(x2x3)`, `-1/2 * x1`; `0` when empty.
impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{} * {b}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

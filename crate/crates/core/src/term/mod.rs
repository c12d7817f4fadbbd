//! Free nonassociative terms over indexed generators `x1, x2, ...`.
//!
//! A [`Term`] is a binary tree; a [`Word`] is a left-normed product
//! `x_{i1} x_{i2} ... x_{ik} = ((x_{i1} x_{i2}) ...) x_{ik}`. Left-normed words
//! span every Leibniz algebra, and in the free Leibniz algebra the
//! multilinear ones of degree `n` form a basis of `P_n`.

mod lincomb;
mod multilinear;
mod parse;
mod reduce;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use lincomb::LinComb;
pub use multilinear::{
    multidegree, multilinearize, skew_symmetrize, standard_polynomial, PolyWordPattern,
};
pub use parse::{parse_lincomb, parse_term};
pub use reduce::{leibniz_reduce, leibniz_reduce_with, mul_comb, mul_words, reduce_lincomb, Strategy};

use crate::error::{Error, Result};

/// The generator `x_i`, `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidArgument("generator index must be at least 1".into()));
        }
        Ok(Generator(index))
    }

    /// # Panics
    /// If `index == 0`.
    pub fn x(index: u32) -> Self {
        Self::new(index).expect("generator index must be at least 1")
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Leaf(Generator),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    /// # Panics
    /// If `index == 0`.
    pub fn var(index: u32) -> Term {
        Term::Leaf(Generator::x(index))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(left: Term, right: Term) -> Term {
        Term::Mul(Box::new(left), Box::new(right))
    }

    /// Left-normed product of the given letters.
    ///
    /// # Panics
    /// If `letters` is empty.
    pub fn left_normed(letters: &[Generator]) -> Term {
        let (first, rest) = letters.split_first().expect("empty word");
        rest.iter()
            .fold(Term::Leaf(*first), |acc, &g| Term::mul(acc, Term::Leaf(g)))
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Mul(l, r) => l.degree() + r.degree(),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Generator>) {
        match self {
            Term::Leaf(g) => out.push(*g),
            Term::Mul(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// True when every right factor is a single generator.
    pub fn is_left_normed(&self) -> bool {
        match self {
            Term::Leaf(_) => true,
            Term::Mul(l, r) => matches!(**r, Term::Leaf(_)) && l.is_left_normed(),
        }
    }

    /// Replaces every generator by `f(generator)`.
    pub fn rename(&self, f: &impl Fn(Generator) -> Generator) -> Term {
        match self {
            Term::Leaf(g) => Term::Leaf(f(*g)),
            Term::Mul(l, r) => Term::mul(l.rename(f), r.rename(f)),
        }
    }

    /// Replaces every leaf by a term.
    pub fn substitute(&self, f: &impl Fn(Generator) -> Term) -> Term {
        match self {
            Term::Leaf(g) => f(*g),
            Term::Mul(l, r) => Term::mul(l.substitute(f), r.substitute(f)),
        }
    }

    /// Occurrence count of each generator.
    pub fn multidegree(&self) -> BTreeMap<Generator, usize> {
        let mut out = BTreeMap::new();
        for g in self.leaves() {
            *out.entry(g).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(g) => write!(f, "{g}"),
            Term::Mul(l, r) => {
                write!(f, "{l}")?;
                match **r {
                    Term::Leaf(g) => write!(f, "{g}"),
                    _ => write!(f, "({r})"),
                }
            }
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        parse_term(s)
    }
}

/// Formats with the fewest parentheses: left-normed products print bracket-free.
pub fn format_term(t: &Term) -> String {
    t.to_string()
}

/// A left-normed word `x_{i1} x_{i2} ... x_{ik}`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    /// # Panics
    /// If `letters` is empty.
    pub fn new(letters: Vec<Generator>) -> Word {
        assert!(!letters.is_empty(), "a word has at least one letter");
        Word(letters)
    }

    /// Word from raw indices.
    ///
    /// # Panics
    /// If empty or some index is zero.
    pub fn from_indices(indices: &[u32]) -> Word {
        Word::new(indices.iter().map(|&i| Generator::x(i)).collect())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|g| g.index()).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn to_term(&self) -> Term {
        Term::left_normed(&self.0)
    }

    pub fn rename(&self, f: &impl Fn(Generator) -> Generator) -> Word {
        Word(self.0.iter().map(|&g| f(g)).collect())
    }

    pub fn appended(&self, g: Generator) -> Word {
        let mut v = self.0.clone();
        v.push(g);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Element of the free Leibniz algebra in the left-normed word basis.
pub type WordComb = LinComb<Word>;
/// Formal combination of free nonassociative terms.
pub type TermComb = LinComb<Term>;

impl WordComb {
    pub fn to_terms(&self) -> TermComb {
        self.map_basis(|w| w.to_term())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_index_zero_is_rejected() {
        assert!(Generator::new(0).is_err());
        assert_eq!(Generator::new(7).unwrap().to_string(), "x7");
    }

    #[test]
    fn formatting_uses_minimal_parentheses() {
        let t = Term::mul(Term::mul(Term::var(1), Term::var(2)), Term::var(3));
        assert_eq!(format_term(&t), "x1x2x3");
        let t = Term::mul(Term::var(1), Term::mul(Term::var(2), Term::var(3)));
        assert_eq!(format_term(&t), "x1(x2x3)");
        assert_eq!(format_term(&Term::var(7)), "x7");
    }

    #[test]
    fn left_normed_detection() {
        assert!(parse_term("x1x2x3").unwrap().is_left_normed());
        assert!(!parse_term("x1(x2x3)").unwrap().is_left_normed());
        assert!(!parse_term("(x1x2)(x3x4)").unwrap().is_left_normed());
    }
}

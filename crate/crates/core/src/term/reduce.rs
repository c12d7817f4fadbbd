//! Reduction modulo the Leibniz identity.
//!
//! The rewrite rule is `u(pq) -> (up)q - (uq)p`. Each step lowers the degree
//! of some right factor, so every strategy terminates, and the result is
//! unique because left-normed words are a basis of the free Leibniz algebra.

use num_traits::One;

use super::{Generator, Term, TermComb, Word, WordComb};
use crate::scalar::Rational;

/// Order in which redexes `u(pq)` are rewritten.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Reduce both factors of every product, then multiply left-normed words.
    Recursive,
    /// Rewrite the innermost, rightmost redex of the tree first.
    InnermostRightmost,
    /// Rewrite the outermost, leftmost redex of the tree first.
    OutermostLeftmost,
}

pub fn leibniz_reduce(t: &Term) -> WordComb {
    leibniz_reduce_with(t, Strategy::Recursive)
}

pub fn leibniz_reduce_with(t: &Term, strategy: Strategy) -> WordComb {
    match strategy {
        Strategy::Recursive => reduce_recursive(t),
        Strategy::InnermostRightmost | Strategy::OutermostLeftmost => rewrite(t, strategy),
    }
}

/// Linear extension of [`leibniz_reduce`].
pub fn reduce_lincomb(c: &TermComb) -> WordComb {
    c.flat_map(leibniz_reduce)
}

fn reduce_recursive(t: &Term) -> WordComb {
    match t {
        Term::Leaf(g) => WordComb::basis(Word::new(vec![*g])),
        Term::Mul(l, r) => mul_comb(&reduce_recursive(l), &reduce_recursive(r)),
    }
}

/// Product `u·v` of two left-normed words, expanded into left-normed words.
pub fn mul_words(u: &Word, v: &Word) -> WordComb {
    let mut out = WordComb::zero();
    let mut prefix = u.letters().to_vec();
    expand(&mut prefix, v.letters(), &[], Rational::one(), &mut out);
    out
}

pub fn mul_comb(u: &WordComb, v: &WordComb) -> WordComb {
    let mut out = WordComb::zero();
    for (wu, cu) in u.iter() {
        for (wv, cv) in v.iter() {
            let mut prefix = wu.letters().to_vec();
            expand(&mut prefix, wv.letters(), &[], cu * cv, &mut out);
        }
    }
    out
}

/// Adds `coeff · ((prefix · right) suffix...)` to `out`, where `right` is the
/// left-normed word on the given letters and `suffix` letters are appended
/// by right multiplication.
///
/// Uses `u(r·y) = (u r)y - (u y)r` with `y` the last letter of `right`.
fn expand(
    prefix: &mut Vec<Generator>,
    right: &[Generator],
    suffix: &[Generator],
    coeff: Rational,
    out: &mut WordComb,
) {
    match right {
        [] => unreachable!("right factor is never empty"),
        [g] => {
            let mut letters = Vec::with_capacity(prefix.len() + 1 + suffix.len());
            letters.extend_from_slice(prefix);
            letters.push(*g);
            letters.extend_from_slice(suffix);
            out.add_term(Word::new(letters), coeff);
        }
        [rest @ .., last] => {
            let mut longer = Vec::with_capacity(suffix.len() + 1);
            longer.push(*last);
            longer.extend_from_slice(suffix);
            expand(prefix, rest, &longer, coeff.clone(), out);
            prefix.push(*last);
            expand(prefix, rest, suffix, -coeff, out);
            prefix.pop();
        }
    }
}

fn rewrite(t: &Term, strategy: Strategy) -> WordComb {
    let mut pending = TermComb::basis(t.clone());
    let mut done = WordComb::zero();
    while let Some((term, coeff)) = pending.pop_first() {
        if term.is_left_normed() {
            done.add_term(Word::new(term.leaves()), coeff);
            continue;
        }
        let (plus, minus) = rewrite_once(&term, strategy).expect("non-left-normed term has a redex");
        pending.add_term(plus, coeff.clone());
        pending.add_term(minus, -coeff);
    }
    done
}

/// One rewrite `C[u(pq)] -> C[(up)q] - C[(uq)p]`, returning both terms.
fn rewrite_once(t: &Term, strategy: Strategy) -> Option<(Term, Term)> {
    let Term::Mul(l, r) = t else {
        return None;
    };
    let at_root = || match &**r {
        Term::Mul(p, q) => Some((
            Term::mul(Term::mul((**l).clone(), (**p).clone()), (**q).clone()),
            Term::mul(Term::mul((**l).clone(), (**q).clone()), (**p).clone()),
        )),
        Term::Leaf(_) => None,
    };
    let in_left = || {
        rewrite_once(l, strategy)
            .map(|(a, b)| (Term::mul(a, (**r).clone()), Term::mul(b, (**r).clone())))
    };
    let in_right = || {
        rewrite_once(r, strategy)
            .map(|(a, b)| (Term::mul((**l).clone(), a), Term::mul((**l).clone(), b)))
    };
    match strategy {
        Strategy::InnermostRightmost => in_right().or_else(in_left).or_else(at_root),
        Strategy::OutermostLeftmost | Strategy::Recursive => {
            at_root().or_else(in_left).or_else(in_right)
        }
    }
}

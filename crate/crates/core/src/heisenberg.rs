//! The Leibniz algebra `H ⊕ Q[t]`.
//!
//! `H` is the Heisenberg Lie algebra with basis `a, b, c`, `ba = -ab = c` and
//! all other basis products zero. `Q[t]` is a right `H`-module via
//! `f·a = f'`, `f·b = t f`, `f·c = f`, and the product on the direct sum is
//! `(x + f)(y + g) = xy + f·y`. Polynomial parts of right factors are ignored,
//! so `u·g = 0` for every polynomial `g`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Subspace};
use crate::perm::{factorial, unrank};
use crate::scalar::{format_rational, int, Rational};
use crate::space::MultilinearSpace;
use crate::term::{Generator, Term, TermComb, Word, WordComb};
use crate::v3basis::ThetaElement;

/// Dense polynomial in `t`; no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// `t · f`.
    pub fn times_t(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(Rational::zero());
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    fn combine(&self, other: &Poly, sign: &Rational) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i) * sign)
                .collect(),
        )
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.combine(rhs, &Rational::one())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.combine(rhs, &-Rational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, Rational)> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let atom = match i {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{i}"),
                };
                (atom, c.clone())
            })
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (atom, c)) in terms.iter().enumerate() {
            let sep = match (k, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let abs = format_rational(&c.abs());
            if atom.is_empty() {
                write!(f, "{sep}{abs}")?;
            } else {
                write!(f, "{sep}{abs}*{atom}")?;
            }
        }
        Ok(())
    }
}

/// `ca·a + cb·b + cc·c + f(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HElement {
    pub ca: Rational,
    pub cb: Rational,
    pub cc: Rational,
    pub f: Poly,
}

impl HElement {
    pub fn zero() -> Self {
        HElement {
            ca: Rational::zero(),
            cb: Rational::zero(),
            cc: Rational::zero(),
            f: Poly::zero(),
        }
    }

    pub fn a() -> Self {
        HElement {
            ca: Rational::one(),
            ..Self::zero()
        }
    }

    pub fn b() -> Self {
        HElement {
            cb: Rational::one(),
            ..Self::zero()
        }
    }

    pub fn c() -> Self {
        HElement {
            cc: Rational::one(),
            ..Self::zero()
        }
    }

    pub fn poly(f: Poly) -> Self {
        HElement { f, ..Self::zero() }
    }

    pub fn t_pow(k: usize) -> Self {
        Self::poly(Poly::t_pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.ca.is_zero() && self.cb.is_zero() && self.cc.is_zero() && self.f.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HElement {
            ca: &self.ca * s,
            cb: &self.cb * s,
            cc: &self.cc * s,
            f: self.f.scale(s),
        }
    }

    /// Coordinates `(ca, cb, cc, f_0, ..., f_{max_deg})`.
    ///
    /// # Panics
    /// If `f` has degree above `max_deg`.
    pub fn coordinates(&self, max_deg: usize) -> Vec<Rational> {
        assert!(self.f.degree().is_none_or(|d| d <= max_deg), "polynomial degree too large");
        let mut v = vec![self.ca.clone(), self.cb.clone(), self.cc.clone()];
        v.extend((0..=max_deg).map(|i| self.f.coeff(i)));
        v
    }
}

impl Add for &HElement {
    type Output = HElement;
    fn add(self, rhs: &HElement) -> HElement {
        HElement {
            ca: &self.ca + &rhs.ca,
            cb: &self.cb + &rhs.cb,
            cc: &self.cc + &rhs.cc,
            f: &self.f + &rhs.f,
        }
    }
}

impl Sub for &HElement {
    type Output = HElement;
    fn sub(self, rhs: &HElement) -> HElement {
        HElement {
            ca: &self.ca - &rhs.ca,
            cb: &self.cb - &rhs.cb,
            cc: &self.cc - &rhs.cc,
            f: &self.f - &rhs.f,
        }
    }
}

impl Neg for &HElement {
    type Output = HElement;
    fn neg(self) -> HElement {
        self.scale(&-Rational::one())
    }
}

/// The product `(x + f)(y + g) = xy + f·y`.
pub fn h_mul(u: &HElement, w: &HElement) -> HElement {
    if u.is_zero() || w.is_zero() {
        return HElement::zero();
    }
    // xy in H: only ab = -c and ba = c survive
    let cc = &u.cb * &w.ca - &u.ca * &w.cb;
    let mut f = Poly::zero();
    if !w.ca.is_zero() {
        f = &f + &u.f.derivative().scale(&w.ca);
    }
    if !w.cb.is_zero() {
        f = &f + &u.f.times_t().scale(&w.cb);
    }
    if !w.cc.is_zero() {
        f = &f + &u.f.scale(&w.cc);
    }
    HElement {
        ca: Rational::zero(),
        cb: Rational::zero(),
        cc,
        f,
    }
}

/// `(uv)w - (uw)v - u(vw)`; zero for all inputs because the algebra is Leibniz.
pub fn leibniz_witness(u: &HElement, v: &HElement, w: &HElement) -> HElement {
    let lhs = h_mul(&h_mul(u, v), w);
    let r1 = h_mul(&h_mul(u, w), v);
    let r2 = h_mul(u, &h_mul(v, w));
    &(&lhs - &r1) - &r2
}

pub type Assignment = BTreeMap<Generator, HElement>;

fn lookup(a: &Assignment, g: Generator) -> Result<&HElement> {
    a.get(&g).ok_or(Error::Unassigned(g.index()))
}

pub fn evaluate_term(t: &Term, a: &Assignment) -> Result<HElement> {
    match t {
        Term::Leaf(g) => lookup(a, *g).cloned(),
        Term::Mul(l, r) => Ok(h_mul(&evaluate_term(l, a)?, &evaluate_term(r, a)?)),
    }
}

pub fn evaluate_word(w: &Word, a: &Assignment) -> Result<HElement> {
    let (first, rest) = w.letters().split_first().expect("nonempty word");
    let mut acc = lookup(a, *first)?.clone();
    for g in rest {
        acc = h_mul(&acc, lookup(a, *g)?);
    }
    Ok(acc)
}

/// Value of an element of the free Leibniz algebra.
pub fn evaluate(c: &WordComb, a: &Assignment) -> Result<HElement> {
    let mut acc = HElement::zero();
    for (w, x) in c.iter() {
        acc = &acc + &evaluate_word(w, a)?.scale(x);
    }
    Ok(acc)
}

/// Value of a formal combination of terms.
pub fn evaluate_terms(c: &TermComb, a: &Assignment) -> Result<HElement> {
    let mut acc = HElement::zero();
    for (t, x) in c.iter() {
        acc = &acc + &evaluate_term(t, a)?.scale(x);
    }
    Ok(acc)
}

/// Values of terms under every substitution from a fixed list of elements.
///
/// A term's value depends only on its bracketing shape and on the elements
/// placed at its leaves, so each shape is tabulated once over all
/// `len(elements)^degree` leaf tuples.
#[derive(Debug, Clone)]
pub struct SubstitutionTable {
    elements: Vec<HElement>,
    tables: HashMap<Term, Vec<HElement>>,
}

impl SubstitutionTable {
    pub fn new(elements: Vec<HElement>) -> Self {
        SubstitutionTable {
            elements,
            tables: HashMap::new(),
        }
    }

    pub fn elements(&self) -> &[HElement] {
        &self.elements
    }

    fn shape(t: &Term) -> Term {
        t.rename(&|_| Generator::x(1))
    }

    fn table(&mut self, shape: &Term) -> &[HElement] {
        if !self.tables.contains_key(shape) {
            let table = match shape {
                Term::Leaf(_) => self.elements.clone(),
                Term::Mul(l, r) => {
                    let left = self.table(l).to_vec();
                    let right = self.table(r).to_vec();
                    let mut out = Vec::with_capacity(left.len() * right.len());
                    for u in &left {
                        for w in &right {
                            out.push(h_mul(u, w));
                        }
                    }
                    out
                }
            };
            self.tables.insert(shape.clone(), table);
        }
        &self.tables[shape]
    }

    /// A substitution `x_i -> elements[sub[i-1]]` under which `f` is nonzero,
    /// trying all of them; `None` if `f` vanishes everywhere.
    pub fn find_nonvanishing(&mut self, f: &TermComb) -> Option<Vec<usize>> {
        let k = f
            .basis_elements()
            .flat_map(|t| t.leaves())
            .map(|g| g.index() as usize)
            .max()
            .unwrap_or(0);
        let base = self.elements.len();
        let terms: Vec<(Term, Vec<usize>, Rational)> = f
            .iter()
            .map(|(t, c)| {
                let leaves = t.leaves().iter().map(|g| g.index() as usize - 1).collect();
                (Self::shape(t), leaves, c.clone())
            })
            .collect();
        for (shape, _, _) in &terms {
            self.table(shape);
        }
        let mut sub = vec![0usize; k];
        loop {
            let mut acc = HElement::zero();
            for (shape, leaves, c) in &terms {
                let idx = leaves.iter().fold(0, |i, &l| i * base + sub[l]);
                let v = &self.tables[shape][idx];
                if !v.is_zero() {
                    acc = &acc + &v.scale(c);
                }
            }
            if !acc.is_zero() {
                return Some(sub);
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return None;
                }
                sub[pos] += 1;
                if sub[pos] < base {
                    break;
                }
                sub[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// The substitution that singles out `theta`: its head becomes `t^fdeg`,
/// the first entry of each pair `a`, the second `b`, and each remaining
/// generator `c`.
pub fn theorem2_assignment(theta: &ThetaElement, n: usize, fdeg: usize) -> Result<Assignment> {
    if theta.degree() != n {
        return Err(Error::InvalidTheta(format!(
            "{theta} has degree {}, expected {n}",
            theta.degree()
        )));
    }
    theta.validate()?;
    if fdeg < n {
        return Err(Error::InvalidArgument(format!("fdeg {fdeg} is below n = {n}")));
    }
    let mut out = Assignment::new();
    out.insert(Generator::x(theta.head()), HElement::t_pow(fdeg));
    for &(i, j) in theta.pairs() {
        out.insert(Generator::x(i), HElement::a());
        out.insert(Generator::x(j), HElement::b());
    }
    for &k in theta.singles() {
        out.insert(Generator::x(k), HElement::c());
    }
    Ok(out)
}

/// A random element with small integer and half-integer coefficients.
pub fn random_element<R: Rng>(rng: &mut R, max_poly_degree: usize) -> HElement {
    let coef = |rng: &mut R| Rational::new(BigInt::from(rng.gen_range(-4i64..=4)), BigInt::from(rng.gen_range(1i64..=2)));
    let deg = rng.gen_range(0..=max_poly_degree);
    let f = Poly::from_coeffs((0..=deg).map(|_| coef(rng)).collect());
    HElement {
        ca: coef(rng),
        cb: coef(rng),
        cc: coef(rng),
        f,
    }
}

pub fn random_assignment<R: Rng>(rng: &mut R, n: usize, max_poly_degree: usize) -> Assignment {
    (1..=n as u32)
        .map(|i| (Generator::x(i), random_element(rng, max_poly_degree)))
        .collect()
}

/// Evaluation functionals on `P_n` of the free Leibniz algebra.
///
/// Each substitution of basis elements of the algebra into `x1..xn` together
/// with an output coordinate gives a linear functional on `P_n`; their span
/// has dimension `dim P_n(var)` of the variety generated by the algebra, and
/// its annihilator is the space of multilinear identities.
///
/// Only substitutions with at most one polynomial generator matter: a
/// polynomial sitting anywhere but first in a left-normed word has zero
/// `H`-part, so the word vanishes. For `x_j = t^k` every surviving value is a
/// polynomial in `k` of degree below `n`, so `k = 0..=n` suffices.
#[derive(Debug, Clone)]
pub struct EvaluationFunctionals {
    space: MultilinearSpace,
    span: Subspace,
}

impl EvaluationFunctionals {
    pub fn compute(n: usize) -> Self {
        let space = MultilinearSpace::new(n);
        let dim = factorial(n);
        let words: Vec<Word> = (0..dim).map(|c| Word::from_indices(&unrank(n, c))).collect();
        let mut seeds: Vec<SparseVec> = Vec::new();
        let push_functionals = |assignment: &Assignment, seeds: &mut Vec<SparseVec>| {
            let mut by_coord: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (col, w) in words.iter().enumerate() {
                let v = evaluate_word(w, assignment).expect("total assignment");
                let d = v.f.degree().unwrap_or(0);
                for (k, x) in v.coordinates(d).into_iter().enumerate() {
                    if !x.is_zero() {
                        by_coord.entry(k).or_default().push((col, x));
                    }
                }
            }
            seeds.extend(by_coord.into_values());
        };

        // Up to renaming, an H-assignment is a multiset of a/b/c.
        let h_multisets = |len: usize| -> Vec<Vec<HElement>> {
            let mut out = Vec::new();
            for na in 0..=len {
                for nb in 0..=len - na {
                    let nc = len - na - nb;
                    let mut v = vec![HElement::a(); na];
                    v.extend(std::iter::repeat_n(HElement::b(), nb));
                    v.extend(std::iter::repeat_n(HElement::c(), nc));
                    out.push(v);
                }
            }
            out
        };
        for hs in h_multisets(n) {
            let a: Assignment = hs
                .into_iter()
                .enumerate()
                .map(|(i, h)| (Generator::x(i as u32 + 1), h))
                .collect();
            push_functionals(&a, &mut seeds);
        }
        for k in 0..=n {
            for hs in h_multisets(n - 1) {
                let mut a: Assignment = hs
                    .into_iter()
                    .enumerate()
                    .map(|(i, h)| (Generator::x(i as u32 + 2), h))
                    .collect();
                a.insert(Generator::x(1), HElement::t_pow(k));
                push_functionals(&a, &mut seeds);
            }
        }
        let mut span = Subspace::new(dim);
        space.close_under_symmetric_group(&mut span, seeds);
        EvaluationFunctionals { space, span }
    }

    /// `dim P_n` of the variety generated by the algebra.
    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    /// True iff the multilinear element is an identity of the algebra.
    pub fn annihilates(&self, c: &WordComb) -> Result<bool> {
        let v = self.space.dense_vector(c)?;
        Ok(self.span.basis().iter().all(|phi| {
            phi.iter()
                .zip(&v)
                .map(|(x, y)| x * y)
                .sum::<Rational>()
                .is_zero()
        }))
    }
}

/// `dim P_n(var H ⊕ Q[t])` computed from evaluation functionals.
pub fn relatively_free_dimension(n: usize) -> usize {
    EvaluationFunctionals::compute(n).rank()
}

impl fmt::Display for HElement {
    /// `ca*a + cb*b + cc*c + [p(t)]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signed = |c: &Rational, first: bool| -> String {
            match (first, c.is_negative()) {
                (true, _) => format_rational(c),
                (false, true) => format!(" - {}", format_rational(&c.abs())),
                (false, false) => format!(" + {}", format_rational(c)),
            }
        };
        write!(
            f,
            "{}*a{}*b{}*c + [{}]",
            signed(&self.ca, true),
            signed(&self.cb, false),
            signed(&self.cc, false),
            self.f
        )
    }
}

impl FromStr for HElement {
    type Err = Error;

    /// Accepts signed sums of `[coef*]a`, `[coef*]b`, `[coef*]c`,
    /// `[coef*]t^k`, bare constants and bracketed polynomials `[...]`.
    fn from_str(s: &str) -> Result<HElement> {
        parse_helement(s)
    }
}

fn parse_helement(text: &str) -> Result<HElement> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let mut out = HElement::zero();
    let err = |pos: usize, msg: &str| Error::parse(pos, format!("{msg} in `{text}`"));
    let skip = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };

    // stack of bracket depth; terms inside brackets must be polynomial
    let mut depth = 0usize;
    let mut expect_term = true;
    let mut sign = Rational::one();
    loop {
        skip(&mut pos);
        if pos == chars.len() {
            if expect_term || depth > 0 {
                return Err(err(pos, "unexpected end of input"));
            }
            return Ok(out);
        }
        let ch = chars[pos];
        if !expect_term {
            match ch {
                '+' => sign = Rational::one(),
                '-' | '\u{2212}' => sign = -Rational::one(),
                ']' if depth > 0 => {
                    depth -= 1;
                    pos += 1;
                    continue;
                }
                _ => return Err(err(pos, "expected `+` or `-`")),
            }
            pos += 1;
            expect_term = true;
            continue;
        }
        match ch {
            '+' => {
                pos += 1;
                continue;
            }
            '-' | '\u{2212}' => {
                sign = -sign;
                pos += 1;
                continue;
            }
            '[' => {
                // a sign before the bracket applies to its first term only
                // when the bracket opens; we keep it simple and forbid it
                if !sign.is_one() {
                    return Err(err(pos, "negated bracket not supported"));
                }
                depth += 1;
                pos += 1;
                continue;
            }
            _ => {}
        }
        // coefficient
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
            pos += 1;
        }
        let mut coeff = if pos > start {
            let s: String = chars[start..pos].iter().collect();
            crate::scalar::parse_rational(&s).map_err(|_| err(start, "bad coefficient"))?
        } else {
            Rational::one()
        };
        coeff *= &sign;
        sign = Rational::one();
        skip(&mut pos);
        let has_coeff = pos > start;
        let mut atom_follows = !has_coeff;
        if has_coeff && pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            skip(&mut pos);
            atom_follows = true;
        }
        if !atom_follows {
            out.f = &out.f + &Poly::monomial(coeff, 0);
            expect_term = false;
            continue;
        }
        let Some(&atom) = chars.get(pos) else {
            return Err(err(pos, "expected a, b, c or t"));
        };
        pos += 1;
        match atom {
            'a' | 'b' | 'c' if depth > 0 => {
                return Err(err(pos - 1, "Heisenberg basis element inside polynomial"));
            }
            'a' => out.ca += coeff,
            'b' => out.cb += coeff,
            'c' => out.cc += coeff,
            't' => {
                skip(&mut pos);
                let mut k = 1usize;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip(&mut pos);
                    let s = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let digits: String = chars[s..pos].iter().collect();
                    k = digits.parse().map_err(|_| err(s, "expected exponent"))?;
                }
                out.f = &out.f + &Poly::monomial(coeff, k);
            }
            _ => return Err(err(pos - 1, "expected a, b, c or t")),
        }
        expect_term = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::term::{leibniz_reduce, parse_term};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assign(pairs: &[(u32, HElement)]) -> Assignment {
        pairs.iter().map(|(i, h)| (Generator::x(*i), h.clone())).collect()
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(h_mul(&HElement::b(), &HElement::a()), HElement::c());
        assert_eq!(h_mul(&HElement::a(), &HElement::b()), -&HElement::c());
        assert_eq!(
            h_mul(&HElement::t_pow(2), &HElement::a()),
            HElement::poly(Poly::monomial(int(2), 1))
        );
        assert!(h_mul(&HElement::a(), &HElement::t_pow(1)).is_zero());
        assert_eq!(h_mul(&HElement::t_pow(1), &HElement::b()), HElement::t_pow(2));
        assert!(h_mul(&HElement::c(), &HElement::c()).is_zero());
        assert_eq!(h_mul(&HElement::t_pow(3), &HElement::c()), HElement::t_pow(3));
    }

    #[test]
    fn witness_examples() {
        assert!(leibniz_witness(&HElement::a(), &HElement::b(), &HElement::c()).is_zero());
        assert!(leibniz_witness(&HElement::t_pow(3), &HElement::a(), &HElement::b()).is_zero());
        assert!(leibniz_witness(&HElement::zero(), &HElement::a(), &HElement::t_pow(2)).is_zero());
    }

    #[test]
    fn witness_vanishes_on_basis_triples() {
        let mut basis = vec![HElement::a(), HElement::b(), HElement::c()];
        basis.extend((0..=8).map(HElement::t_pow));
        for u in &basis {
            for v in &basis {
                for w in &basis {
                    assert!(leibniz_witness(u, v, w).is_zero());
                }
            }
        }
    }

    #[test]
    fn right_factor_polynomial_is_ignored() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let u = random_element(&mut rng, 5);
            let w = random_element(&mut rng, 5);
            let w_h = HElement { f: Poly::zero(), ..w.clone() };
            assert_eq!(h_mul(&u, &w), h_mul(&u, &w_h));
        }
    }

    #[test]
    fn bilinearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (u, v, w) = (
                random_element(&mut rng, 4),
                random_element(&mut rng, 4),
                random_element(&mut rng, 4),
            );
            let s = ratio(rng.gen_range(-5..=5), 3);
            let left = h_mul(&(&u.scale(&s) + &v), &w);
            assert_eq!(left, &h_mul(&u, &w).scale(&s) + &h_mul(&v, &w));
            let right = h_mul(&w, &(&u.scale(&s) + &v));
            assert_eq!(right, &h_mul(&w, &u).scale(&s) + &h_mul(&w, &v));
        }
    }

    #[test]
    fn evaluation_examples() {
        let t = parse_term("x1(x2x3)").unwrap();
        let a = assign(&[(1, HElement::t_pow(0)), (2, HElement::a()), (3, HElement::b())]);
        let v = evaluate_term(&t, &a).unwrap();
        assert_eq!(v, HElement::poly(Poly::monomial(int(-1), 0)));
        assert_eq!(evaluate(&leibniz_reduce(&t), &a).unwrap(), v);

        let z = assign(&[(1, HElement::zero()), (2, HElement::a()), (3, HElement::b())]);
        assert!(evaluate_term(&t, &z).unwrap().is_zero());

        let t2 = parse_term("x1x2").unwrap();
        let a2 = assign(&[(1, HElement::a()), (2, HElement::t_pow(4))]);
        assert!(evaluate_term(&t2, &a2).unwrap().is_zero());

        assert_eq!(
            evaluate_term(&t2, &assign(&[(1, HElement::a())])),
            Err(Error::Unassigned(2))
        );
    }

    #[test]
    fn text_form_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let e = random_element(&mut rng, 4);
            let s = e.to_string();
            assert_eq!(s.parse::<HElement>().unwrap(), e, "{s}");
        }
        let e: HElement = "2*a - c + [1 + 3/2*t^2]".parse().unwrap();
        assert_eq!(e.ca, int(2));
        assert_eq!(e.cc, int(-1));
        assert_eq!(e.f, Poly::from_coeffs(vec![int(1), int(0), ratio(3, 2)]));
        assert_eq!("t^3".parse::<HElement>().unwrap(), HElement::t_pow(3));
        assert_eq!("b".parse::<HElement>().unwrap(), HElement::b());
        assert_eq!(HElement::t_pow(2).to_string(), "0*a + 0*b + 0*c + [1*t^2]");
        for bad in ["", "a +", "[a]", "q", "2 a", "[t"] {
            assert!(bad.parse::<HElement>().is_err(), "{bad}");
        }
    }

    #[test]
    fn small_relatively_free_dimensions() {
        assert_eq!(relatively_free_dimension(1), 1);
        assert_eq!(relatively_free_dimension(2), 2);
        assert_eq!(relatively_free_dimension(3), 6);
    }

    #[test]
    fn substitution_table_matches_direct_evaluation() {
        let elems = vec![HElement::a(), HElement::b(), HElement::c(), HElement::t_pow(0), HElement::t_pow(2)];
        let mut table = SubstitutionTable::new(elems.clone());
        let f = crate::term::parse_lincomb("x1x2x3 - x3(x1x2)").unwrap();
        let hit = table.find_nonvanishing(&f).expect("not an identity");
        let a: Assignment = hit
            .iter()
            .enumerate()
            .map(|(i, &e)| (Generator::x(i as u32 + 1), elems[e].clone()))
            .collect();
        assert!(!evaluate_terms(&f, &a).unwrap().is_zero());
        let g = crate::term::parse_lincomb("x1(x2(x3x4))").unwrap();
        assert_eq!(table.find_nonvanishing(&g), None);
    }
}

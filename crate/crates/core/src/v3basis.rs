//! The θ-basis of `P_n(Ṽ₃)` and the rewriting procedure into it.
//!
//! `θ(i; (i1,j1)...(im,jm); k1,...)` stands for the left-normed product
//! `x_i (x_{i1}x_{j1}) ... (x_{im}x_{jm}) x_{k1} ... x_{k_{n-2m-1}}` with
//! `i_s < j_s`, both `i_s` and `j_s` increasing, and increasing `k_t`.
//!
//! Rewriting in `Ṽ₃` uses, besides the Leibniz identity,
//!
//! * `x(y(zt)) ≡ 0`, which lets pair brackets commute with every factor
//!   (`u s p - u p s = u(s p)`) and kills deeper right factors;
//! * `x(yz) ≡ -x(zy)`;
//! * `x y z ≡ x z y + x(yz)` to sort the single letters;
//! * `x0(x1x4)(x2x3) ≡ x0(x1x3)(x2x4) - x0(x1x2)(x3x4)` for nested pairs.

use std::fmt;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisenberg::{evaluate, evaluate_terms, random_assignment, theorem2_assignment};
use crate::linalg::{sparse_from_dense, Subspace};
use crate::perm::combinations;
use crate::scalar::{int, Rational};
use crate::term::{reduce_lincomb, LinComb, Term, TermComb, WordComb};
use crate::variety::{builtin_variety, tideal_multilinear_bounded, DEFAULT_DEGREE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThetaElement {
    n: usize,
    head: u32,
    pairs: Vec<(u32, u32)>,
    singles: Vec<u32>,
}

impl ThetaElement {
    pub fn new(n: usize, head: u32, pairs: Vec<(u32, u32)>, singles: Vec<u32>) -> Result<Self> {
        let t = ThetaElement {
            n,
            head,
            pairs,
            singles,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn head(&self) -> u32 {
        self.head
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn singles(&self) -> &[u32] {
        &self.singles
    }

    /// Number of pair brackets.
    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidTheta(format!("{self}: {why}")));
        if self.pairs.iter().any(|(i, j)| i >= j) {
            return bad("pair not increasing");
        }
        if self.pairs.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return bad("pairs not increasing");
        }
        if self.singles.windows(2).any(|w| w[0] >= w[1]) {
            return bad("singles not increasing");
        }
        let mut all: Vec<u32> = std::iter::once(self.head)
            .chain(self.pairs.iter().flat_map(|&(i, j)| [i, j]))
            .chain(self.singles.iter().copied())
            .collect();
        all.sort_unstable();
        if all != (1..=self.n as u32).collect::<Vec<_>>() {
            return bad("indices do not partition 1..n");
        }
        Ok(())
    }

    pub fn to_term(&self) -> Term {
        let mut t = Term::var(self.head);
        for &(i, j) in &self.pairs {
            t = Term::mul(t, Term::mul(Term::var(i), Term::var(j)));
        }
        for &k in &self.singles {
            t = Term::mul(t, Term::var(k));
        }
        t
    }

    fn sort_key(&self) -> (usize, u32, Vec<u32>, Vec<u32>, Vec<u32>) {
        (
            self.m(),
            self.head,
            self.pairs.iter().map(|p| p.0).collect(),
            self.pairs.iter().map(|p| p.1).collect(),
            self.singles.clone(),
        )
    }
}

impl fmt::Display for ThetaElement {
    /// `theta(i; (i1,j1)(i2,j2); k1,k2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: String = self.pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
        let singles: Vec<String> = self.singles.iter().map(u32::to_string).collect();
        write!(f, "theta({}; {}; {})", self.head, pairs, singles.join(","))
    }
}

pub type ThetaCoordinates = LinComb<ThetaElement>;

/// All θ of degree `n`, ordered by `m`, then head, then the `i`, `j` and
/// `k` sequences.
pub fn enumerate_theta(n: usize) -> Vec<ThetaElement> {
    let mut out = Vec::new();
    for head in 1..=n as u32 {
        let rest: Vec<u32> = (1..=n as u32).filter(|&x| x != head).collect();
        for m in 0..=rest.len() / 2 {
            for chosen in combinations(&rest, 2 * m) {
                let singles: Vec<u32> = rest.iter().copied().filter(|x| !chosen.contains(x)).collect();
                for pairs in non_nesting_matchings(&chosen) {
                    out.push(ThetaElement {
                        n,
                        head,
                        pairs,
                        singles: singles.clone(),
                    });
                }
            }
        }
    }
    out.sort_by_cached_key(ThetaElement::sort_key);
    out
}

/// Perfect matchings of a sorted set with both ends increasing: the `s`-th
/// opener is paired with the `s`-th closer, openers forming a ballot sequence.
fn non_nesting_matchings(set: &[u32]) -> Vec<Vec<(u32, u32)>> {
    fn go(set: &[u32], pos: usize, open: &mut Vec<u32>, closed: &mut Vec<u32>, out: &mut Vec<Vec<(u32, u32)>>) {
        let m = set.len() / 2;
        if pos == set.len() {
            out.push(open.iter().copied().zip(closed.iter().copied()).collect());
            return;
        }
        if open.len() < m {
            open.push(set[pos]);
            go(set, pos + 1, open, closed, out);
            open.pop();
        }
        if closed.len() < open.len() {
            closed.push(set[pos]);
            go(set, pos + 1, open, closed, out);
            closed.pop();
        }
    }
    let mut out = Vec::new();
    go(set, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Image of θ in the left-normed basis of the free Leibniz algebra.
pub fn theta_to_lincomb(t: &ThetaElement) -> WordComb {
    reduce_lincomb(&TermComb::basis(t.to_term()))
}

/// `Σ c_θ θ` as terms.
pub fn theta_coordinates_to_terms(c: &ThetaCoordinates) -> TermComb {
    TermComb::from_terms(c.iter().map(|(t, x)| (t.to_term(), x.clone())))
}

/// `x_head (pairs) singles`, pairs kept first since they commute with every
/// factor modulo `x(y(zt))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct BracketWord {
    head: u32,
    pairs: Vec<(u32, u32)>,
    singles: Vec<u32>,
}

type BracketComb = LinComb<BracketWord>;

/// `(a, b)` with `a < b`, and the sign from `x(yz) ≡ -x(zy)`.
fn oriented(a: u32, b: u32) -> ((u32, u32), Rational) {
    if a < b {
        ((a, b), Rational::one())
    } else {
        ((b, a), -Rational::one())
    }
}

/// `w · t` in the bracket-word form.
fn rmul(w: &BracketComb, t: &Term) -> BracketComb {
    match t {
        Term::Leaf(g) => w.map_basis(|b| {
            let mut b = b.clone();
            b.singles.push(g.index());
            b
        }),
        Term::Mul(p, q) => match (&**p, &**q) {
            (Term::Leaf(a), Term::Leaf(b)) => {
                let (pair, sign) = oriented(a.index(), b.index());
                let mut out = BracketComb::zero();
                for (b, c) in w.iter() {
                    let mut b = b.clone();
                    b.pairs.push(pair);
                    out.add_term(b, c * &sign);
                }
                out
            }
            // u(p(q1 q2)) ≡ 0
            (_, Term::Mul(..)) => BracketComb::zero(),
            // u(p y) = (u p) y - (u y) p
            (p, y @ Term::Leaf(_)) => &rmul(&rmul(w, p), y) - &rmul(&rmul(w, y), p),
        },
    }
}

fn bracket_form(t: &Term) -> BracketComb {
    let mut spine = Vec::new();
    let mut cur = t;
    while let Term::Mul(l, r) = cur {
        spine.push(&**r);
        cur = l;
    }
    let Term::Leaf(h) = cur else { unreachable!() };
    let mut w = BracketComb::basis(BracketWord {
        head: h.index(),
        pairs: vec![],
        singles: vec![],
    });
    for factor in spine.into_iter().rev() {
        w = rmul(&w, factor);
    }
    w
}

/// One rewriting step, or `None` for a θ element. Pairs in the input are
/// sorted by their first entry.
fn rewrite_step(b: &BracketWord) -> Option<Vec<(BracketWord, Rational)>> {
    // P a b -> P b a + P(ab) at the first inversion of the singles
    if let Some(t) = b.singles.windows(2).position(|w| w[0] > w[1]) {
        let (a, c) = (b.singles[t], b.singles[t + 1]);
        let mut swapped = b.clone();
        swapped.singles.swap(t, t + 1);
        let mut bracketed = b.clone();
        bracketed.singles.drain(t..=t + 1);
        let (pair, sign) = oriented(a, c);
        bracketed.pairs.push(pair);
        return Some(vec![(swapped, Rational::one()), (bracketed, sign)]);
    }
    // nested pairs (a,d)(b,c): (ad)(bc) -> (ac)(bd) - (ab)(cd)
    if let Some(s) = b.pairs.windows(2).position(|w| w[0].1 > w[1].1) {
        let ((a, d), (bb, c)) = (b.pairs[s], b.pairs[s + 1]);
        let with = |p: (u32, u32), q: (u32, u32)| {
            let mut w = b.clone();
            w.pairs[s] = p;
            w.pairs[s + 1] = q;
            w
        };
        return Some(vec![
            (with((a, c), (bb, d)), Rational::one()),
            (with((a, bb), (c, d)), -Rational::one()),
        ]);
    }
    None
}

fn check_multilinear(e: &TermComb, n: usize) -> Result<()> {
    let want: Vec<u32> = (1..=n as u32).collect();
    for t in e.basis_elements() {
        let mut got: Vec<u32> = t.leaves().iter().map(|g| g.index()).collect();
        got.sort_unstable();
        if got != want {
            return Err(Error::NotMultilinear {
                degree: n,
                detail: format!("term {t}"),
            });
        }
    }
    Ok(())
}

/// Coordinates of a multilinear element of `x1..xn` in the θ-basis, by
/// rewriting modulo the identities of `Ṽ₃`.
pub fn reduce_to_theta(e: &TermComb, n: usize) -> Result<ThetaCoordinates> {
    check_multilinear(e, n)?;
    let mut pending = BracketComb::zero();
    for (t, c) in e.iter() {
        pending.add_scaled(&bracket_form(t), c);
    }
    let mut out = ThetaCoordinates::zero();
    let mut steps = 0usize;
    while let Some((mut b, c)) = pending.pop_first() {
        b.pairs.sort_unstable();
        match rewrite_step(&b) {
            Some(next) => {
                steps += 1;
                if steps > 10_000_000 {
                    return Err(Error::Invariant("theta rewriting did not terminate".into()));
                }
                for (w, s) in next {
                    pending.add_term(w, &c * &s);
                }
            }
            None => {
                let theta = ThetaElement::new(n, b.head, b.pairs, b.singles)
                    .map_err(|e| Error::Invariant(e.to_string()))?;
                out.add_term(theta, c);
            }
        }
    }
    Ok(out)
}

/// A random multilinear element of degree `n`: up to `terms` random
/// bracketings of random orderings of `x1..xn`, small integer coefficients.
pub fn random_multilinear_element<R: Rng>(rng: &mut R, n: usize, terms: usize) -> TermComb {
    fn tree<R: Rng>(rng: &mut R, letters: &[u32]) -> Term {
        if letters.len() == 1 {
            return Term::var(letters[0]);
        }
        let cut = rng.gen_range(1..letters.len());
        Term::mul(tree(rng, &letters[..cut]), tree(rng, &letters[cut..]))
    }
    let mut out = TermComb::zero();
    for _ in 0..terms {
        let mut letters: Vec<u32> = (1..=n as u32).collect();
        for i in (1..letters.len()).rev() {
            letters.swap(i, rng.gen_range(0..=i));
        }
        let c = rng.gen_range(-3i64..=3);
        out.add_term(tree(rng, &letters), int(if c == 0 { 1 } else { c }));
    }
    out
}

/// Outcome of the θ-basis verification at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub n: usize,
    pub theta_count: usize,
    /// `dim P_n(Ṽ₃)` from the T-ideal.
    pub quotient_dimension: usize,
    /// Rank of the matrix of θ' evaluated at the assignments singling out each θ.
    pub independence_rank: usize,
    pub fdeg: usize,
    pub samples: usize,
    pub assignments_per_sample: usize,
    /// Samples whose θ-normal form differs from the input under some assignment.
    pub evaluation_failures: usize,
    /// Samples whose θ-normal form differs from the input modulo the T-ideal.
    pub ideal_failures: usize,
}

impl ThetaReport {
    pub fn span_ok(&self) -> bool {
        self.theta_count == self.quotient_dimension
    }

    pub fn independence_ok(&self) -> bool {
        self.independence_rank == self.theta_count
    }

    pub fn consistency_ok(&self) -> bool {
        self.evaluation_failures == 0 && self.ideal_failures == 0
    }

    pub fn passed(&self) -> bool {
        self.span_ok() && self.independence_ok() && self.consistency_ok()
    }
}

impl fmt::Display for ThetaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(f, "{}: n = {}", mark(self.passed()), self.n)?;
        writeln!(
            f,
            "  span: {} theta elements, dim P_n(V3tilde) = {} [{}]",
            self.theta_count,
            self.quotient_dimension,
            mark(self.span_ok())
        )?;
        writeln!(
            f,
            "  independence: evaluation matrix rank {}/{} (fdeg {}) [{}]",
            self.independence_rank,
            self.theta_count,
            self.fdeg,
            mark(self.independence_ok())
        )?;
        write!(
            f,
            "  consistency: {} samples x {} assignments, {} evaluation and {} ideal mismatches [{}]",
            self.samples,
            self.assignments_per_sample,
            self.evaluation_failures,
            self.ideal_failures,
            mark(self.consistency_ok())
        )
    }
}

/// Options for [`verify_theorem2_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaCheckOptions {
    pub fdeg: Option<usize>,
    pub samples: usize,
    pub assignments_per_sample: usize,
    pub seed: u64,
    pub bound: usize,
}

impl Default for ThetaCheckOptions {
    fn default() -> Self {
        ThetaCheckOptions {
            fdeg: None,
            samples: 50,
            assignments_per_sample: 10,
            seed: 2,
            bound: DEFAULT_DEGREE_BOUND,
        }
    }
}

pub fn verify_theorem2(n: usize) -> Result<ThetaReport> {
    verify_theorem2_with(n, ThetaCheckOptions::default())
}

pub fn verify_theorem2_with(n: usize, opts: ThetaCheckOptions) -> Result<ThetaReport> {
    let v3 = builtin_variety("V3tilde")?;
    let quotient = tideal_multilinear_bounded(&v3, n, opts.bound)?;
    let thetas = enumerate_theta(n);
    let fdeg = opts.fdeg.unwrap_or(n);
    if fdeg < n {
        return Err(Error::InvalidArgument(format!("fdeg {fdeg} is below n = {n}")));
    }

    // row θ', columns (θ, coordinate)
    let images: Vec<WordComb> = thetas.iter().map(theta_to_lincomb).collect();
    let max_deg = fdeg + n;
    let width = 3 + max_deg + 1;
    let mut rows = vec![Vec::with_capacity(width * thetas.len()); thetas.len()];
    for theta in &thetas {
        let a = theorem2_assignment(theta, n, fdeg)?;
        for (row, image) in rows.iter_mut().zip(&images) {
            row.extend(evaluate(image, &a)?.coordinates(max_deg));
        }
    }
    let mut span = Subspace::new(width * thetas.len());
    for row in &rows {
        span.insert_sparse(&sparse_from_dense(row))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ n as u64);
    let mut evaluation_failures = 0;
    let mut ideal_failures = 0;
    for _ in 0..opts.samples {
        let e = random_multilinear_element(&mut rng, n, 3);
        let normal = theta_coordinates_to_terms(&reduce_to_theta(&e, n)?);
        let difference = reduce_lincomb(&(&e - &normal));
        if !quotient.contains(&difference)? {
            ideal_failures += 1;
        }
        let mut bad = false;
        for _ in 0..opts.assignments_per_sample {
            let a = random_assignment(&mut rng, n, 3);
            if evaluate_terms(&e, &a)? != evaluate_terms(&normal, &a)? {
                bad = true;
            }
        }
        evaluation_failures += usize::from(bad);
    }

    Ok(ThetaReport {
        n,
        theta_count: thetas.len(),
        quotient_dimension: quotient.dimension(),
        independence_rank: span.rank(),
        fdeg,
        samples: opts.samples,
        assignments_per_sample: opts.assignments_per_sample,
        evaluation_failures,
        ideal_failures,
    })
}

/// `θ ↦ coefficient`, in enumeration order.
pub fn ordered_coordinates(c: &ThetaCoordinates) -> Vec<(ThetaElement, Rational)> {
    let mut v: Vec<(ThetaElement, Rational)> = c.iter().map(|(t, x)| (t.clone(), x.clone())).collect();
    v.sort_by_cached_key(|(t, _)| t.sort_key());
    v
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_lincomb;

    fn theta(n: usize, head: u32, pairs: &[(u32, u32)], singles: &[u32]) -> ThetaElement {
        ThetaElement::new(n, head, pairs.to_vec(), singles.to_vec()).unwrap()
    }

    fn reduce(text: &str, n: usize) -> String {
        let c = reduce_to_theta(&parse_lincomb(text).unwrap(), n).unwrap();
        ordered_coordinates(&c)
            .iter()
            .map(|(t, x)| format!("{x}*{t}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_theta(n).len()).collect();
        assert_eq!(counts, [1, 2, 6, 16, 45, 126, 357]);
        let three = enumerate_theta(3);
        assert_eq!(three.iter().filter(|t| t.m() == 0).count(), 3);
        assert_eq!(three[0].to_string(), "theta(1; ; 2,3)");
        assert_eq!(three[5].to_string(), "theta(3; (1,2); )");
    }

    #[test]
    fn validation() {
        assert!(ThetaElement::new(3, 1, vec![(3, 2)], vec![]).is_err());
        assert!(ThetaElement::new(5, 1, vec![(2, 5), (3, 4)], vec![]).is_err());
        assert!(ThetaElement::new(3, 1, vec![], vec![3, 2]).is_err());
        assert!(ThetaElement::new(3, 1, vec![], vec![2]).is_err());
        assert_eq!(
            theta(5, 1, &[(2, 4), (3, 5)], &[]).to_term().to_string(),
            "x1(x2x4)(x3x5)"
        );
    }

    #[test]
    fn expansions() {
        assert_eq!(theta_to_lincomb(&theta(3, 1, &[], &[2, 3])).to_string(), "x1x2x3");
        assert_eq!(
            theta_to_lincomb(&theta(3, 1, &[(2, 3)], &[])).to_string(),
            "x1x2x3 - x1x3x2"
        );
        assert_eq!(theta_to_lincomb(&theta(5, 1, &[(2, 3), (4, 5)], &[])).len(), 4);
    }

    #[test]
    fn rewriting_examples() {
        assert_eq!(reduce("x1x3x2", 3), "1*theta(1; ; 2,3) -1*theta(1; (2,3); )");
        assert_eq!(
            reduce("x1(x2x5)(x3x4)", 5),
            "1*theta(1; (2,4)(3,5); ) -1*theta(1; (2,3)(4,5); )"
        );
        assert_eq!(reduce("x1(x2(x3x4))", 4), "");
        assert_eq!(reduce("x2x1", 2), "1*theta(2; ; 1)");
        for t in enumerate_theta(5) {
            let c = reduce_to_theta(&TermComb::basis(t.to_term()), 5).unwrap();
            assert_eq!(c, ThetaCoordinates::basis(t));
        }
    }

    #[test]
    fn rejects_non_multilinear() {
        assert!(reduce_to_theta(&parse_lincomb("x1x1").unwrap(), 2).is_err());
        assert!(reduce_to_theta(&parse_lincomb("x1x2").unwrap(), 3).is_err());
    }

    #[test]
    fn small_reports() {
        for n in 1..=4 {
            let r = verify_theorem2(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

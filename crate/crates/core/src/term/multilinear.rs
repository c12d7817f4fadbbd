//! Multilinearization, standard polynomials and skew-symmetrization.

use std::collections::BTreeMap;

use super::{Generator, Term, TermComb};
use crate::error::{Error, Result};
use crate::perm::{permutations, sign};
use crate::scalar::int;

/// Common multidegree of the terms of `c`, or `None` if `c` is not
/// polyhomogeneous. The zero combination has the empty multidegree.
pub fn multidegree(c: &TermComb) -> Option<BTreeMap<Generator, usize>> {
    let mut it = c.basis_elements().map(Term::multidegree);
    let first = it.next().unwrap_or_default();
    it.all(|d| d == first).then_some(first)
}

/// Full multilinearization.
///
/// The input is split into its polyhomogeneous components; in each one a
/// generator of degree `d` is replaced by `d` fresh generators, summing over
/// all `d!` placements. Fresh generators are numbered `x1, x2, ...` in the
/// order of the original generators, so a component of multidegree
/// `(d_1, ..., d_k)` comes back multilinear in `x1..x_{d_1+...+d_k}`.
/// Re-identifying the fresh copies of a generator multiplies the component by
/// `d_1! ... d_k!`, which is invertible in characteristic zero.
pub fn multilinearize(c: &TermComb) -> Vec<TermComb> {
    let mut groups: BTreeMap<BTreeMap<Generator, usize>, TermComb> = BTreeMap::new();
    for (t, coeff) in c.iter() {
        groups
            .entry(t.multidegree())
            .or_default()
            .add_term(t.clone(), coeff.clone());
    }
    groups
        .into_iter()
        .map(|(degrees, component)| multilinearize_component(&degrees, &component))
        .filter(|c| !c.is_zero())
        .collect()
}

fn multilinearize_component(degrees: &BTreeMap<Generator, usize>, c: &TermComb) -> TermComb {
    // first fresh index for each generator
    let mut offsets = BTreeMap::new();
    let mut next = 1u32;
    for (&g, &d) in degrees {
        offsets.insert(g, next);
        next += d as u32;
    }
    let perms: Vec<(Generator, Vec<Vec<usize>>)> = degrees
        .iter()
        .map(|(&g, &d)| (g, permutations(d)))
        .collect();

    let mut out = TermComb::zero();
    for (t, coeff) in c.iter() {
        let mut choice = vec![0usize; perms.len()];
        loop {
            let placement: BTreeMap<Generator, &Vec<usize>> = perms
                .iter()
                .zip(&choice)
                .map(|((g, ps), &k)| (*g, &ps[k]))
                .collect();
            let mut seen: BTreeMap<Generator, usize> = BTreeMap::new();
            let fresh = relabel_occurrences(t, &mut |g| {
                let r = seen.entry(g).or_insert(0);
                let idx = offsets[&g] + placement[&g][*r] as u32;
                *r += 1;
                Generator::x(idx)
            });
            out.add_term(fresh, coeff.clone());

            // odometer over the product of symmetric groups
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < perms[pos].1.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    out
}

/// Renames leaves left to right, calling `f` once per occurrence.
fn relabel_occurrences(t: &Term, f: &mut impl FnMut(Generator) -> Generator) -> Term {
    match t {
        Term::Leaf(g) => Term::Leaf(f(*g)),
        Term::Mul(l, r) => {
            let l = relabel_occurrences(l, f);
            let r = relabel_occurrences(r, f);
            Term::mul(l, r)
        }
    }
}

/// `St_n(v_1, ..., v_n) = Σ_q sgn(q) v_{q(1)} ... v_{q(n)}` over left-normed products.
///
/// # Panics
/// If `vars` is empty.
pub fn standard_polynomial(vars: &[Generator]) -> TermComb {
    assert!(!vars.is_empty(), "standard polynomial needs at least one variable");
    let mut out = TermComb::zero();
    for p in permutations(vars.len()) {
        let letters: Vec<Generator> = p.iter().map(|&i| vars[i]).collect();
        out.add_term(Term::left_normed(&letters), int(sign(&p)));
    }
    out
}

/// Alternating sum over all permutations of `varset` inside `template`.
pub fn skew_symmetrize(template: &Term, varset: &[Generator]) -> Result<TermComb> {
    let present = template.multidegree();
    for g in varset {
        if !present.contains_key(g) {
            return Err(Error::InvalidArgument(format!(
                "{g} does not occur in {template}"
            )));
        }
    }
    let mut sorted = varset.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != varset.len() {
        return Err(Error::InvalidArgument("repeated variable in skew set".into()));
    }
    let mut out = TermComb::zero();
    for p in permutations(varset.len()) {
        let map: BTreeMap<Generator, Generator> =
            varset.iter().enumerate().map(|(i, &g)| (g, varset[p[i]])).collect();
        let t = template.rename(&|g| *map.get(&g).unwrap_or(&g));
        out.add_term(t, int(sign(&p)));
    }
    Ok(out)
}

/// The word `x Y^before z Y^after` in right-multiplication notation, i.e. the
/// left-normed product `x y...y z y...y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyWordPattern {
    pub x: Generator,
    pub y: Generator,
    pub z: Generator,
    pub before: usize,
    pub after: usize,
}

impl PolyWordPattern {
    pub fn new(before: usize, after: usize) -> Self {
        PolyWordPattern {
            x: Generator::x(1),
            y: Generator::x(2),
            z: Generator::x(3),
            before,
            after,
        }
    }

    pub fn degree(&self) -> usize {
        self.before + self.after + 2
    }

    pub fn to_term(&self) -> Term {
        let mut letters = vec![self.x];
        letters.extend(std::iter::repeat_n(self.y, self.before));
        letters.push(self.z);
        letters.extend(std::iter::repeat_n(self.y, self.after));
        Term::left_normed(&letters)
    }
}

//! Varieties given by identity systems, and the multilinear components of
//! their T-ideals inside the free Leibniz algebra.
//!
//! The degree-`d` component `J_d` of the T-ideal of `V` (in `x1..xd`) is
//! spanned by
//!
//! * substitution instances `f(m_1, ..., m_k)` of each multilinearized
//!   identity `f`, where the `m_i` are left-normed words on disjoint blocks
//!   of `{1..d}`;
//! * `J_{d-1}·x_j` and `x_j·J_{d-1}` for every `j`, the lower component
//!   being renamed onto the other `d - 1` generators.
//!
//! Left-normed words span the free Leibniz algebra, and left or right
//! multiplication by any monomial reduces to repeated multiplication by
//! single generators, so these vectors span the whole component. Everything
//! is invariant under renaming generators, so each kind of generator is only
//! produced once, in canonical position, and the span is then closed under
//! `S_d`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Subspace};
use crate::perm::compositions;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::space::{compress_generators, MultilinearSpace, SpinStats};
use crate::symfunc::{self, CharacterDecomposition};
use crate::term::{
    mul_comb, mul_words, multilinearize, parse_lincomb, reduce_lincomb, skew_symmetrize,
    Generator, PolyWordPattern, Term, TermComb, Word, WordComb,
};

/// Largest degree the T-ideal construction accepts unless told otherwise.
pub const DEFAULT_DEGREE_BOUND: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub element: TermComb,
}

impl Identity {
    pub fn new(name: impl Into<String>, element: TermComb) -> Self {
        Identity {
            name: name.into(),
            element,
        }
    }

    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        Ok(Self::new(name, parse_lincomb(text)?))
    }

    /// Total degree of each polyhomogeneous component, in increasing order.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.element.basis_elements().map(Term::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_multilinear(&self) -> bool {
        self.element
            .basis_elements()
            .all(|t| t.multidegree().values().all(|&m| m == 1))
    }

    /// Multilinear components, each reduced to left-normed words in `x1..xd`.
    pub fn multilinear_components(&self) -> Vec<(usize, WordComb)> {
        multilinearize(&self.element)
            .iter()
            .map(|c| {
                let (w, d) = compress_generators(&reduce_lincomb(c));
                (d, w)
            })
            .filter(|(_, w)| !w.is_zero())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variety {
    pub name: String,
    pub identities: Vec<Identity>,
}

impl Variety {
    pub fn new(name: impl Into<String>, identities: Vec<Identity>) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::InvalidArgument("variety name is empty".into()));
        }
        Ok(Variety { name, identities })
    }

    pub fn with_identity(&self, id: Identity) -> Variety {
        let mut v = self.clone();
        v.identities.push(id);
        v
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: VarietyFile =
            serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        file.into_variety()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_file(&self) -> VarietyFile {
        VarietyFile {
            name: self.name.clone(),
            identities: self
                .identities
                .iter()
                .map(|id| IdentityRecord {
                    name: id.name.clone(),
                    terms: id
                        .element
                        .iter()
                        .map(|(t, c)| TermRecord {
                            coefficient: format_rational(c),
                            term: t.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// On-disk form of a variety: named identities, each a list of
/// `{coefficient, term}` records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyFile {
    pub name: String,
    pub identities: Vec<IdentityRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coefficient: String,
    pub term: String,
}

impl VarietyFile {
    pub fn into_variety(self) -> Result<Variety> {
        let identities = self
            .identities
            .into_iter()
            .map(|rec| {
                let mut element = TermComb::zero();
                for t in rec.terms {
                    let c = parse_rational(&t.coefficient)?;
                    element.add_term(t.term.parse()?, c);
                }
                Ok(Identity::new(rec.name, element))
            })
            .collect::<Result<Vec<_>>>()?;
        Variety::new(self.name, identities)
    }
}

fn ident(name: &str, text: &str) -> Identity {
    Identity::parse(name, text).expect("builtin identity parses")
}

/// `(x1x2)(x3x4)...(x_{2s+1}x_{2s+2})`, a left-normed product of `s+1` pairs.
pub fn nsa_identity(s: usize) -> Identity {
    let text: String = (0..=s)
        .map(|k| format!("(x{}x{})", 2 * k + 1, 2 * k + 2))
        .collect();
    ident(&format!("nilpotent-by-abelian({s})"), &text)
}

/// `x(y(zt)) ≡ 0`.
pub fn v3_right_nilpotence() -> Identity {
    ident("x1(x2(x3x4))", "x1(x2(x3x4))")
}

/// `x0(x1x4)(x2x3) ≡ x0(x1x3)(x2x4) - x0(x1x2)(x3x4)`, written in `x1..x5`.
pub fn v3_pair_exchange() -> Identity {
    ident(
        "pair exchange",
        "x1(x2x5)(x3x4) - x1(x2x4)(x3x5) + x1(x2x3)(x4x5)",
    )
}

/// `x0 A x̄1 B x̄2 C x̄3 D x̄4`: the left-normed word with runs of fresh letters
/// of the given lengths between the four skew-symmetrized generators.
pub fn skew_word_identity(runs: [usize; 4]) -> Identity {
    let mut letters = vec![Generator::x(1)];
    let mut next = 2u32;
    let mut skew = Vec::new();
    for run in runs {
        for _ in 0..run {
            letters.push(Generator::x(next));
            next += 1;
        }
        letters.push(Generator::x(next));
        skew.push(Generator::x(next));
        next += 1;
    }
    let element = skew_symmetrize(&Term::left_normed(&letters), &skew).expect("skew set occurs");
    Identity::new(format!("skew word {runs:?}"), element)
}

/// All [`skew_word_identity`] shapes of total degree at most `max_degree`.
pub fn skew_word_identities(max_degree: usize) -> Vec<Identity> {
    let mut out = Vec::new();
    if max_degree < 5 {
        return out;
    }
    let spare = max_degree - 5;
    for a in 0..=spare {
        for b in 0..=spare - a {
            for c in 0..=spare - a - b {
                for d in 0..=spare - a - b - c {
                    out.push(skew_word_identity([a, b, c, d]));
                }
            }
        }
    }
    out
}

/// Built-in varieties: `free`, `abelian`, `NsA(s)`, `V1`, `V1tilde`, `V3tilde`.
/// Names are case-insensitive.
pub fn builtin_variety(name: &str) -> Result<Variety> {
    let key = name.trim().to_ascii_lowercase();
    let v = match key.as_str() {
        "free" => Variety::new("free", vec![])?,
        "abelian" => Variety::new("abelian", vec![ident("x1x2", "x1x2")])?,
        "v1tilde" => Variety::new("V1tilde", vec![ident("x1(x2x3)(x4x5)", "x1(x2x3)(x4x5)")])?,
        "v1" => Variety::new(
            "V1",
            vec![
                ident("anticommutativity", "x1x1"),
                nsa_identity(2),
            ],
        )?,
        "v3tilde" => Variety::new("V3tilde", vec![v3_right_nilpotence(), v3_pair_exchange()])?,
        _ => {
            let digits = key
                .strip_prefix("nsa(")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| key.strip_prefix("nsa"));
            let s = digits
                .and_then(|d| d.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownVariety(name.to_string()))?;
            Variety::new(format!("NsA({s})"), vec![nsa_identity(s)])?
        }
    };
    Ok(v)
}

/// `J_n ⊂ P_n(free)` and the quotient `P_n(V) = P_n(free) / J_n`.
#[derive(Debug, Clone)]
pub struct MultilinearQuotient {
    space: MultilinearSpace,
    ideal: Subspace,
    stats: SpinStats,
}

impl MultilinearQuotient {
    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    pub fn space(&self) -> &MultilinearSpace {
        &self.space
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn stats(&self) -> SpinStats {
        self.stats
    }

    /// `dim P_n(V) = n! - rank J_n`.
    pub fn dimension(&self) -> usize {
        self.space.dimension() - self.ideal.rank()
    }

    /// True iff a multilinear element of degree `n` in `x1..xn` lies in `J_n`.
    pub fn contains(&self, c: &WordComb) -> Result<bool> {
        self.ideal.contains(&self.space.dense_vector(c)?)
    }

    /// Canonical representative modulo `J_n`, supported on [`basis_words`](Self::basis_words).
    pub fn normal_form(&self, c: &WordComb) -> Result<Vec<Rational>> {
        self.ideal.reduce(&self.space.dense_vector(c)?)
    }

    /// Coordinates modulo `J_n` in the basis of [`basis_words`](Self::basis_words).
    pub fn coordinates(&self, c: &WordComb) -> Result<Vec<Rational>> {
        let nf = self.normal_form(c)?;
        Ok(self.ideal.free_columns().into_iter().map(|k| nf[k].clone()).collect())
    }

    /// Words whose images form a basis of `P_n(V)`.
    pub fn basis_words(&self) -> Vec<Word> {
        self.ideal
            .free_columns()
            .into_iter()
            .map(|c| self.space.word(c))
            .collect()
    }
}

fn check_degree(n: usize, bound: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if n > bound {
        return Err(Error::DegreeBound { degree: n, bound });
    }
    Ok(())
}

/// `J_1, ..., J_nmax`.
pub fn tideal_tower(v: &Variety, nmax: usize, bound: usize) -> Result<Vec<MultilinearQuotient>> {
    check_degree(nmax, bound)?;
    let components: Vec<(usize, WordComb)> = v
        .identities
        .iter()
        .flat_map(Identity::multilinear_components)
        .collect();

    let mut tower: Vec<MultilinearQuotient> = Vec::with_capacity(nmax);
    for d in 1..=nmax {
        let space = MultilinearSpace::new(d);
        let mut seeds: Vec<SparseVec> = Vec::new();
        let newest = Generator::x(d as u32);

        if let Some(prev) = tower.last() {
            for row in prev.ideal.basis() {
                let lower = prev.space.comb_dense(&row);
                let right = lower.map_basis(|w| w.appended(newest));
                let left = lower.flat_map(|w| mul_words(&Word::new(vec![newest]), w));
                seeds.push(space.vector(&right)?);
                seeds.push(space.vector(&left)?);
            }
        }
        for (k, f) in &components {
            for blocks in compositions(d, *k) {
                let inst = substitute_blocks(f, &blocks);
                if !inst.is_zero() {
                    seeds.push(space.vector(&inst)?);
                }
            }
        }

        let mut ideal = Subspace::new(space.dimension());
        let stats = space.close_under_symmetric_group(&mut ideal, seeds);
        tower.push(MultilinearQuotient {
            space,
            ideal,
            stats,
        });
    }
    Ok(tower)
}

/// `f(m_1, ..., m_k)` where `m_i` is the left-normed word on the `i`-th block
/// of consecutive generators.
fn substitute_blocks(f: &WordComb, blocks: &[usize]) -> WordComb {
    let mut words = Vec::with_capacity(blocks.len());
    let mut next = 1u32;
    for &len in blocks {
        words.push(WordComb::basis(Word::from_indices(
            &(next..next + len as u32).collect::<Vec<_>>(),
        )));
        next += len as u32;
    }
    f.flat_map(|u| {
        let mut it = u.letters().iter().map(|g| &words[g.index() as usize - 1]);
        let first = it.next().expect("nonempty word").clone();
        it.fold(first, |acc, m| mul_comb(&acc, m))
    })
}

pub fn tideal_multilinear(v: &Variety, n: usize) -> Result<MultilinearQuotient> {
    tideal_multilinear_bounded(v, n, DEFAULT_DEGREE_BOUND)
}

pub fn tideal_multilinear_bounded(v: &Variety, n: usize, bound: usize) -> Result<MultilinearQuotient> {
    Ok(tideal_tower(v, n, bound)?.pop().expect("nonempty tower"))
}

/// True iff every multilinear component of `f` lies in the T-ideal of `v`.
pub fn is_identity(v: &Variety, f: &TermComb) -> Result<bool> {
    is_identity_bounded(v, f, DEFAULT_DEGREE_BOUND)
}

pub fn is_identity_bounded(v: &Variety, f: &TermComb, bound: usize) -> Result<bool> {
    let comps = Identity::new("", f.clone()).multilinear_components();
    let Some(max) = comps.iter().map(|(d, _)| *d).max() else {
        return Ok(true);
    };
    let tower = tideal_tower(v, max, bound)?;
    is_identity_in(&tower, f)
}

/// Membership against a precomputed tower.
pub fn is_identity_in(tower: &[MultilinearQuotient], f: &TermComb) -> Result<bool> {
    for (d, c) in Identity::new("", f.clone()).multilinear_components() {
        let q = tower.get(d - 1).ok_or(Error::DegreeBound {
            degree: d,
            bound: tower.len(),
        })?;
        if !q.contains(&c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_km(k: usize, m: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= m, got k={k}, m={m}")));
    }
    Ok(())
}

/// `x Y^k z Y^(m-k) - Σ_{i=1..k} α_i x Y^(k-i) z Y^(m-k+i)` in `x1 = x`,
/// `x2 = y`, `x3 = z`.
pub fn condition3_element(k: usize, m: usize, alphas: &[Rational]) -> Result<TermComb> {
    check_km(k, m)?;
    if alphas.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            actual: alphas.len(),
        });
    }
    let mut out = TermComb::basis(PolyWordPattern::new(k, m - k).to_term());
    for (i, a) in alphas.iter().enumerate() {
        let i = i + 1;
        out.add_term(PolyWordPattern::new(k - i, m - k + i).to_term(), -a.clone());
    }
    Ok(out)
}

/// True iff `xY^k zY^(m-k) ≡ Σ α_i xY^(k-i) zY^(m-k+i)` holds in `v`.
pub fn check_condition_3(v: &Variety, k: usize, m: usize, alphas: &[Rational]) -> Result<bool> {
    check_condition_3_bounded(v, k, m, alphas, DEFAULT_DEGREE_BOUND)
}

pub fn check_condition_3_bounded(
    v: &Variety,
    k: usize,
    m: usize,
    alphas: &[Rational],
    bound: usize,
) -> Result<bool> {
    let f = condition3_element(k, m, alphas)?;
    let q = tideal_multilinear_bounded(v, m + 2, bound)?;
    is_identity_at(&q, &f)
}

fn is_identity_at(q: &MultilinearQuotient, f: &TermComb) -> Result<bool> {
    for (_, c) in Identity::new("", f.clone()).multilinear_components() {
        if !q.contains(&c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some `α` making the condition an identity of `v`, or `None`. Free
/// parameters of the solution set are set to zero.
pub fn solve_condition_3(v: &Variety, k: usize, m: usize) -> Result<Option<Vec<Rational>>> {
    solve_condition_3_bounded(v, k, m, DEFAULT_DEGREE_BOUND)
}

pub fn solve_condition_3_bounded(
    v: &Variety,
    k: usize,
    m: usize,
    bound: usize,
) -> Result<Option<Vec<Rational>>> {
    check_km(k, m)?;
    check_degree(m + 2, bound)?;
    let q = tideal_multilinear_bounded(v, m + 2, bound)?;
    // every pattern has the same multidegree, so the multilinearizations share labels
    let linearized = |before: usize| -> Result<Vec<Rational>> {
        let t = TermComb::basis(PolyWordPattern::new(before, m - before).to_term());
        let comps = Identity::new("", t).multilinear_components();
        match comps.as_slice() {
            [(_, c)] => q.normal_form(c),
            _ => Err(Error::Invariant("pattern is not polyhomogeneous".into())),
        }
    };
    let lhs = linearized(k)?;
    let columns = (1..=k)
        .map(|i| linearized(k - i))
        .collect::<Result<Vec<_>>>()?;
    let solution = crate::linalg::solve_columns(&columns, &lhs)?;
    if let Some(alphas) = &solution {
        // cross-check through the membership route
        if !is_identity_at(&q, &condition3_element(k, m, alphas)?)? {
            return Err(Error::Invariant("power-word solution fails the membership check".into()));
        }
    }
    Ok(solution)
}

/// One row of a colength table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColengthRow {
    pub n: usize,
    pub dimension: usize,
    pub decomposition: CharacterDecomposition,
    pub colength: usize,
}

/// `l_n(V)` for `n = 1..=nmax`.
pub fn colength_profile(v: &Variety, nmax: usize) -> Result<Vec<ColengthRow>> {
    colength_profile_bounded(v, nmax, DEFAULT_DEGREE_BOUND)
}

pub fn colength_profile_bounded(v: &Variety, nmax: usize, bound: usize) -> Result<Vec<ColengthRow>> {
    let tower = tideal_tower(v, nmax, bound)?;
    tower
        .iter()
        .map(|q| {
            let chi = symfunc::module_character(q);
            let decomposition = symfunc::decompose(&chi)?;
            let colength = symfunc::colength(&decomposition);
            let check = decomposition.dimension();
            if check != q.dimension() {
                return Err(Error::Invariant(format!(
                    "Σ m_λ dim λ = {check} but dim P_{} = {}",
                    q.degree(),
                    q.dimension()
                )));
            }
            Ok(ColengthRow {
                n: q.degree(),
                dimension: q.dimension(),
                decomposition,
                colength,
            })
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::factorial;
    use crate::scalar::int;

    fn v(name: &str) -> Variety {
        builtin_variety(name).unwrap()
    }

    #[test]
    fn builtins() {
        assert!(v("free").identities.is_empty());
        assert_eq!(v("V3tilde").identities.len(), 2);
        assert_eq!(v("v3TILDE").name, "V3tilde");
        assert_eq!(
            v("V1tilde").identities[0].element.to_string(),
            "x1(x2x3)(x4x5)"
        );
        assert_eq!(v("NsA(1)").identities[0].element.to_string(), "x1x2(x3x4)");
        assert_eq!(v("nsa2").name, "NsA(2)");
        assert!(matches!(
            builtin_variety("nope"),
            Err(Error::UnknownVariety(_))
        ));
    }

    #[test]
    fn free_quotients_are_full() {
        for n in 1..=5 {
            let q = tideal_multilinear(&v("free"), n).unwrap();
            assert_eq!(q.ideal().rank(), 0);
            assert_eq!(q.dimension(), factorial(n));
        }
    }

    #[test]
    fn abelian_quotients() {
        let tower = tideal_tower(&v("abelian"), 4, 7).unwrap();
        let dims: Vec<usize> = tower.iter().map(|q| q.dimension()).collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn v3_small_degrees() {
        let tower = tideal_tower(&v("V3tilde"), 5, 7).unwrap();
        let dims: Vec<usize> = tower.iter().map(|q| q.dimension()).collect();
        assert_eq!(dims, vec![1, 2, 6, 16, 45]);
        for q in &tower {
            assert!(q.stats().last_growth <= q.stats().examined);
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        assert_eq!(
            tideal_multilinear(&v("free"), 8).unwrap_err(),
            Error::DegreeBound { degree: 8, bound: 7 }
        );
        assert!(tideal_multilinear(&v("free"), 0).is_err());
    }

    #[test]
    fn identity_membership() {
        let v3 = v("V3tilde");
        let x = |s: &str| parse_lincomb(s).unwrap();
        assert!(!is_identity(&v("free"), &x("x1(x2(x3x4))")).unwrap());
        assert!(is_identity(&v3, &x("x1(x2(x3x4))")).unwrap());
        // the skew-symmetrized word x0 x̄1 x̄2 x̄3 x̄4
        assert!(is_identity(&v3, &skew_word_identity([0; 4]).element).unwrap());
        for id in &v3.identities {
            assert!(is_identity(&v3, &id.element).unwrap());
        }
        // sign-flipped pair exchange is not an identity
        assert!(!is_identity(
            &v3,
            &x("x1(x2x5)(x3x4) - x1(x2x3)(x4x5) - x1(x2x4)(x3x5)")
        )
        .unwrap());
    }

    #[test]
    fn condition3_examples() {
        assert!(check_condition_3(&v("abelian"), 1, 2, &[int(0)]).unwrap());
        assert!(!check_condition_3(&v("free"), 1, 1, &[int(1)]).unwrap());
        assert!(!check_condition_3(&v("free"), 1, 1, &[int(0)]).unwrap());
        assert_eq!(
            solve_condition_3(&v("abelian"), 1, 2).unwrap(),
            Some(vec![int(0)])
        );
        assert_eq!(solve_condition_3(&v("free"), 1, 2).unwrap(), None);
        assert!(condition3_element(2, 1, &[]).is_err());
        assert!(condition3_element(1, 2, &[int(1), int(2)]).is_err());
    }

    #[test]
    fn variety_file_roundtrip() {
        let v3 = v("V3tilde");
        let json = serde_json::to_string(&v3.to_file()).unwrap();
        assert_eq!(Variety::from_json(&json).unwrap(), v3);
        assert!(Variety::from_json("{").is_err());
        assert!(Variety::from_json(r#"{"name":"x","identities":[{"name":"a","terms":[{"coefficient":"1","term":"y"}]}]}"#).is_err());
    }
}

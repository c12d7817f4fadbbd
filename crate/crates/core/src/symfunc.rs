//! Partitions, irreducible characters of `S_n`, the character of the
//! `S_n`-module `P_n(V)`, its decomposition `Σ m_λ χ_λ` and the colength
//! `l_n(V) = Σ m_λ`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};
use crate::scalar::{int, Rational};
use crate::space::MultilinearSpace;
use crate::variety::{tideal_multilinear, MultilinearQuotient, Variety};

/// A partition `λ = (λ_1 ≥ λ_2 ≥ ... ≥ λ_l ≥ 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not a partition"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// `f^λ = n! / Π hooks`.
    pub fn hook_length_dimension(&self) -> usize {
        let conj = self.conjugate();
        let mut hooks = 1usize;
        for (i, &row) in self.0.iter().enumerate() {
            for (j, &col) in conj.0.iter().enumerate().take(row) {
                hooks *= (row - j - 1) + (col - i - 1) + 1;
            }
        }
        factorial(self.size()) / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Size of the conjugacy class of cycle type `μ`: `n! / Π k^{m_k} m_k!`.
pub fn class_size(mu: &Partition) -> usize {
    let mut denom = 1usize;
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &k in mu.parts() {
        *counts.entry(k).or_default() += 1;
    }
    for (k, m) in counts {
        denom *= k.pow(m as u32) * factorial(m);
    }
    factorial(mu.size()) / denom
}

/// Murnaghan–Nakayama evaluator with its own memo table.
#[derive(Debug, Default)]
pub struct CharacterMemo {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl CharacterMemo {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ_λ(μ)`.
    pub fn value(&mut self, lambda: &Partition, mu: &Partition) -> Result<i64> {
        if lambda.size() != mu.size() {
            return Err(Error::DimensionMismatch {
                expected: lambda.size(),
                actual: mu.size(),
            });
        }
        Ok(self.eval(lambda.parts(), mu.parts()))
    }

    fn eval(&mut self, lambda: &[usize], mu: &[usize]) -> i64 {
        let Some((&r, rest)) = mu.split_first() else {
            return 1;
        };
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // beta-set: λ_i + (l - i), strictly decreasing
        let l = lambda.len();
        let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let between = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut moved = beta.clone();
            moved[idx] = target;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let len = moved.len();
            let shape: Vec<usize> = moved
                .iter()
                .enumerate()
                .map(|(i, &c)| c - (len - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            total += sign * self.eval(&shape, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule.
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    CharacterMemo::new().value(lambda, mu)
}

/// Character table of `S_n`, rows `λ` and columns `μ` both in [`partitions`] order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let parts = partitions(n);
        let mut memo = CharacterMemo::new();
        let values = parts
            .iter()
            .map(|l| {
                parts
                    .iter()
                    .map(|m| memo.value(l, m).expect("same size"))
                    .collect()
            })
            .collect();
        CharacterTable {
            n,
            partitions: parts,
            values,
        }
    }

    pub fn character(&self, lambda: &Partition) -> Option<ClassFunction> {
        let row = self.partitions.iter().position(|p| p == lambda)?;
        Some(ClassFunction {
            n: self.n,
            values: self
                .partitions
                .iter()
                .zip(&self.values[row])
                .map(|(mu, &v)| (mu.clone(), int(v)))
                .collect(),
        })
    }
}

/// A class function on `S_n`, one value per cycle type in [`partitions`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    values: Vec<(Partition, Rational)>,
}

impl ClassFunction {
    pub fn new(n: usize, values: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        let given: HashMap<Partition, Rational> = values.into_iter().collect();
        let parts = partitions(n);
        if given.len() != parts.len() {
            return Err(Error::DimensionMismatch {
                expected: parts.len(),
                actual: given.len(),
            });
        }
        let values = parts
            .into_iter()
            .map(|p| {
                let v = given.get(&p).cloned().ok_or_else(|| {
                    Error::InvalidArgument(format!("no value for cycle type {p}"))
                })?;
                Ok((p, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { n, values })
    }

    pub fn zero(n: usize) -> Self {
        ClassFunction {
            n,
            values: partitions(n).into_iter().map(|p| (p, Rational::zero())).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[(Partition, Rational)] {
        &self.values
    }

    pub fn value(&self, mu: &Partition) -> Option<&Rational> {
        self.values.iter().find(|(p, _)| p == mu).map(|(_, v)| v)
    }

    /// `⟨χ, ψ⟩ = (1/n!) Σ_μ |C_μ| χ(μ) ψ(μ)` (all characters here are real).
    pub fn inner(&self, other: &ClassFunction) -> Result<Rational> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        let mut sum = Rational::zero();
        for ((mu, a), (_, b)) in self.values.iter().zip(&other.values) {
            sum += int(class_size(mu) as i64) * a * b;
        }
        Ok(sum / int(factorial(self.n) as i64))
    }
}

/// `χ = Σ m_λ χ_λ`, listed over all `λ ⊢ n` in [`partitions`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterDecomposition {
    pub n: usize,
    pub multiplicities: Vec<(Partition, usize)>,
}

impl CharacterDecomposition {
    pub fn multiplicity(&self, lambda: &Partition) -> usize {
        self.multiplicities
            .iter()
            .find(|(p, _)| p == lambda)
            .map_or(0, |(_, m)| *m)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Partition, usize)> {
        self.multiplicities
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(p, m)| (p, *m))
    }

    /// `Σ m_λ f^λ`.
    pub fn dimension(&self) -> usize {
        self.nonzero().map(|(p, m)| m * p.hook_length_dimension()).sum()
    }
}

pub fn decompose(chi: &ClassFunction) -> Result<CharacterDecomposition> {
    let table = CharacterTable::new(chi.n);
    let multiplicities = table
        .partitions
        .iter()
        .map(|lambda| {
            let m = chi.inner(&table.character(lambda).expect("row exists"))?;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Invariant(format!(
                    "multiplicity of {lambda} is {m}, not a nonnegative integer"
                )));
            }
            let m = m.to_integer().to_usize().ok_or_else(|| {
                Error::Invariant(format!("multiplicity of {lambda} overflows"))
            })?;
            Ok((lambda.clone(), m))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterDecomposition {
        n: chi.n,
        multiplicities,
    })
}

/// `l_n = Σ m_λ`.
pub fn colength(d: &CharacterDecomposition) -> usize {
    d.multiplicities.iter().map(|(_, m)| m).sum()
}

/// Trace of `σ` on `P_n(V)`, computed on the complement of the pivot columns
/// of `J_n`.
pub fn permutation_trace(q: &MultilinearQuotient, sigma: &Permutation) -> Rational {
    let space: &MultilinearSpace = q.space();
    let table = space.permutation_table(sigma);
    let ideal = q.ideal();
    let mut trace = Rational::zero();
    for c in ideal.free_columns() {
        let image = table[c];
        if image == c {
            trace += int(1);
        } else if let Some(row) = ideal.row_for_pivot(image) {
            // e_image ≡ e_image - row, which has -row[c] at column c
            if let Ok(k) = row.binary_search_by_key(&c, |(col, _)| *col) {
                trace -= &row[k].1;
            }
        }
    }
    trace
}

/// Character of the `S_n`-module `P_n(V)`.
pub fn module_character(q: &MultilinearQuotient) -> ClassFunction {
    ClassFunction {
        n: q.degree(),
        values: partitions(q.degree())
            .into_iter()
            .map(|mu| {
                let v = permutation_trace(q, &Permutation::from_cycle_type(mu.parts()));
                (mu, v)
            })
            .collect(),
    }
}

pub fn variety_character(v: &Variety, n: usize) -> Result<ClassFunction> {
    Ok(module_character(&tideal_multilinear(v, n)?))
}

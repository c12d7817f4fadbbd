//! Coordinates on `P_n` of the free Leibniz algebra.
//!
//! The multilinear left-normed words in `x1..xn` are numbered by the
//! lexicographic rank of their index sequence, giving `n!` columns. `S_n`
//! acts by renaming generators, which permutes columns.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Subspace};
use crate::perm::{factorial, rank, unrank, Permutation};
use crate::scalar::Rational;
use crate::term::{Generator, Word, WordComb};

#[derive(Debug, Clone)]
pub struct MultilinearSpace {
    n: usize,
}

/// Bookkeeping from [`MultilinearSpace::close_under_symmetric_group`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpinStats {
    /// Candidate vectors examined in total.
    pub examined: usize,
    /// Index (1-based) of the last candidate that increased the rank.
    pub last_growth: usize,
}

impl MultilinearSpace {
    pub fn new(n: usize) -> Self {
        MultilinearSpace { n }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        factorial(self.n)
    }

    pub fn column(&self, w: &Word) -> Option<usize> {
        if w.degree() != self.n {
            return None;
        }
        rank(&w.indices())
    }

    pub fn word(&self, col: usize) -> Word {
        Word::from_indices(&unrank(self.n, col))
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.dimension()).map(|c| self.word(c))
    }

    /// Sparse coordinates of a multilinear element of degree `n` in `x1..xn`.
    pub fn vector(&self, c: &WordComb) -> Result<SparseVec> {
        let mut out: SparseVec = Vec::with_capacity(c.len());
        for (w, x) in c.iter() {
            let col = self.column(w).ok_or_else(|| Error::NotMultilinear {
                degree: self.n,
                detail: format!("word {w}"),
            })?;
            out.push((col, x.clone()));
        }
        out.sort_by_key(|(c, _)| *c);
        Ok(out)
    }

    pub fn dense_vector(&self, c: &WordComb) -> Result<Vec<Rational>> {
        Ok(crate::linalg::dense_from_sparse(&self.vector(c)?, self.dimension()))
    }

    pub fn comb(&self, v: &[(usize, Rational)]) -> WordComb {
        WordComb::from_terms(v.iter().map(|(c, x)| (self.word(*c), x.clone())))
    }

    pub fn comb_dense(&self, v: &[Rational]) -> WordComb {
        WordComb::from_terms(
            v.iter()
                .enumerate()
                .map(|(c, x)| (self.word(c), x.clone())),
        )
    }

    /// `table[col] = column of σ·word(col)`.
    pub fn permutation_table(&self, sigma: &Permutation) -> Vec<usize> {
        assert_eq!(sigma.degree(), self.n);
        (0..self.dimension())
            .map(|c| {
                let img: Vec<u32> = unrank(self.n, c).iter().map(|&i| sigma.apply(i)).collect();
                rank(&img).expect("image of a permutation word")
            })
            .collect()
    }

    pub fn permute(table: &[usize], v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = v.iter().map(|(c, x)| (table[*c], x.clone())).collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    /// Inserts `seeds` into `space` and closes it under renaming of generators.
    pub fn close_under_symmetric_group(
        &self,
        space: &mut Subspace,
        seeds: impl IntoIterator<Item = SparseVec>,
    ) -> SpinStats {
        let tables: Vec<Vec<usize>> = Permutation::group_generators(self.n)
            .iter()
            .map(|g| self.permutation_table(g))
            .collect();
        let mut queue: VecDeque<SparseVec> = seeds.into_iter().collect();
        let mut stats = SpinStats::default();
        while let Some(v) = queue.pop_front() {
            stats.examined += 1;
            if space.insert_sparse(&v).expect("vector of matching length") {
                stats.last_growth = stats.examined;
                for t in &tables {
                    queue.push_back(Self::permute(t, &v));
                }
            }
        }
        stats
    }
}

/// Relabels the generators of a combination by their order-preserving map
/// onto `1..=k`. Returns the relabelled combination and `k`.
pub fn compress_generators(c: &WordComb) -> (WordComb, usize) {
    let mut gens: Vec<Generator> = c
        .basis_elements()
        .flat_map(|w| w.letters().iter().copied())
        .collect();
    gens.sort();
    gens.dedup();
    let k = gens.len();
    let relabel = |g: Generator| {
        let pos = gens.binary_search(&g).expect("generator present");
        Generator::x(pos as u32 + 1)
    };
    (c.map_basis(|w| w.rename(&relabel)), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn columns_roundtrip() {
        let s = MultilinearSpace::new(4);
        for c in 0..s.dimension() {
            assert_eq!(s.column(&s.word(c)), Some(c));
        }
        assert_eq!(s.column(&Word::from_indices(&[1, 2, 3])), None);
        assert_eq!(s.column(&Word::from_indices(&[1, 2, 2, 3])), None);
    }

    #[test]
    fn orbit_of_one_word_is_everything() {
        let s = MultilinearSpace::new(4);
        let mut sub = Subspace::new(s.dimension());
        let stats = s.close_under_symmetric_group(&mut sub, vec![vec![(0, int(1))]]);
        assert_eq!(sub.rank(), 24);
        assert!(stats.last_growth < stats.examined);
    }

    #[test]
    fn alternating_vector_spans_sign_line() {
        let s = MultilinearSpace::new(3);
        let st = crate::term::reduce_lincomb(&crate::term::standard_polynomial(&[
            Generator::x(1),
            Generator::x(2),
            Generator::x(3),
        ]));
        let mut sub = Subspace::new(6);
        s.close_under_symmetric_group(&mut sub, vec![s.vector(&st).unwrap()]);
        assert_eq!(sub.rank(), 1);
    }
}

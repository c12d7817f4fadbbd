//! Exact rational row reduction.
//!
//! [`Subspace`] keeps a reduced row-echelon basis: every row has a leading 1
//! in its pivot column and zeros in all other pivot columns. Rows are stored
//! sparsely because the subspaces met here are spanned by vectors with few
//! nonzero entries even when `ncols` runs into the thousands.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Dense matrix given by its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    actual: r.len(),
                });
            }
        }
        Ok(RationalMatrix { ncols, rows })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RationalMatrix {
            ncols,
            rows: vec![vec![Rational::zero(); ncols]; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| crate::scalar::int(x)).collect())
            .collect();
        RationalMatrix::new(ncols, rows).expect("ragged rows")
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = Self::zeros(self.ncols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }
}

/// Sparse vector: `(column, value)` pairs sorted by column, no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, ncols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ncols];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Row space in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ncols: usize,
    // unordered; rows[k] has its leading 1 at pivots[k]
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl Subspace {
    pub fn new(ncols: usize) -> Self {
        Subspace {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Basis rows ordered by pivot column.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.pivots()
            .into_iter()
            .map(|p| dense_from_sparse(&self.rows[self.pivot_row[p].unwrap()], self.ncols))
            .collect()
    }

    /// Sparse basis row whose pivot is `col`.
    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row[col].map(|k| &self.rows[k])
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                actual: len,
            });
        }
        Ok(())
    }

    /// Subtracts basis rows so that `v` vanishes on every pivot column.
    /// The result is the canonical representative of `v` modulo the subspace.
    pub fn reduce_in_place(&self, v: &mut [Rational]) -> Result<()> {
        self.check_len(v.len())?;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, x) in row {
                v[*c] -= &f * x;
            }
        }
        Ok(())
    }

    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w)?;
        Ok(w)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Adds `v` to the spanning set. Returns true if the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> Result<bool> {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w)?;
        Ok(self.insert_reduced(w))
    }

    /// Same as [`insert`](Self::insert) for a sparse vector.
    pub fn insert_sparse(&mut self, v: &SparseVec) -> Result<bool> {
        if let Some((c, _)) = v.last() {
            if *c >= self.ncols {
                return Err(Error::DimensionMismatch {
                    expected: self.ncols,
                    actual: c + 1,
                });
            }
        }
        let mut w = dense_from_sparse(v, self.ncols);
        self.reduce_in_place(&mut w)?;
        Ok(self.insert_reduced(w))
    }

    fn insert_reduced(&mut self, w: Vec<Rational>) -> bool {
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        let new_row: SparseVec = w
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x * &inv))
            .collect();
        for row in &mut self.rows {
            if let Ok(k) = row.binary_search_by_key(&p, |(c, _)| *c) {
                let f = row[k].1.clone();
                *row = axpy(row, &new_row, &-f);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(new_row);
        self.pivots.push(p);
        true
    }
}

/// `a + f·b` on sparse vectors.
fn axpy(a: &SparseVec, b: &SparseVec, f: &Rational) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * f));
            j += 1;
        } else {
            let x = &a[i].1 + &b[j].1 * f;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row-echelon form of the row space of `m`.
pub fn rref(m: &RationalMatrix) -> Subspace {
    let mut s = Subspace::new(m.ncols);
    for r in &m.rows {
        s.insert(r).expect("row length checked at construction");
    }
    s
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).rank()
}

pub fn contains(s: &Subspace, v: &[Rational]) -> Result<bool> {
    s.contains(v)
}

/// Basis of `{x : m x = 0}`, one vector per free column of `rref(m)`.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let s = rref(m);
    s.free_columns()
        .into_iter()
        .map(|free| {
            let mut x = vec![Rational::zero(); m.ncols];
            x[free] = Rational::one();
            for p in s.pivots() {
                let row = s.row_for_pivot(p).unwrap();
                if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    x[p] = -row[k].1.clone();
                }
            }
            x
        })
        .collect()
}

/// Some solution of `Σ_j x_j · columns[j] = rhs`, with every free unknown set
/// to zero; `None` if the system is inconsistent.
pub fn solve_columns(columns: &[Vec<Rational>], rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let k = columns.len();
    for c in columns {
        if c.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: rhs.len(),
                actual: c.len(),
            });
        }
    }
    // Augmented rows [a_i1 .. a_ik | b_i].
    let rows: Vec<Vec<Rational>> = (0..rhs.len())
        .map(|i| {
            columns
                .iter()
                .map(|c| c[i].clone())
                .chain(std::iter::once(rhs[i].clone()))
                .collect()
        })
        .collect();
    let s = rref(&RationalMatrix::new(k + 1, rows)?);
    if s.is_pivot(k) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); k];
    for p in s.pivots() {
        let row = s.row_for_pivot(p).unwrap();
        if let Ok(idx) = row.binary_search_by_key(&k, |(c, _)| *c) {
            x[p] = row[idx].1.clone();
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let z = rref(&RationalMatrix::zeros(2, 3));
        assert_eq!(z.rank(), 0);
        assert!(z.basis().is_empty());

        let id = RationalMatrix::identity(3);
        let s = rref(&id);
        assert_eq!(s.rank(), 3);
        assert_eq!(s.basis(), id.rows().to_vec());

        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let s = rref(&m);
        assert_eq!(s.basis(), vec![v(&[1, 2])]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn membership_examples() {
        let s = rref(&RationalMatrix::from_i64(&[&[1, 1, 0]]));
        assert!(contains(&s, &v(&[0, 0, 0])).unwrap());
        assert!(contains(&s, &v(&[2, 2, 0])).unwrap());
        assert!(!contains(&s, &v(&[1, 0, 0])).unwrap());
        let empty = Subspace::new(3);
        assert!(!contains(&empty, &v(&[0, 1, 0])).unwrap());
        assert!(contains(&empty, &v(&[0, 0, 0])).unwrap());
        assert!(matches!(
            contains(&s, &v(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn nullspace_and_solve() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for x in &ns {
            for r in m.rows() {
                let dot: Rational = r.iter().zip(x).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(
            solve_columns(&cols, &v(&[2, 3, 5])).unwrap(),
            Some(v(&[2, 3]))
        );
        assert_eq!(solve_columns(&cols, &v(&[2, 3, 4])).unwrap(), None);
        assert_eq!(solve_columns(&[], &v(&[0, 0])).unwrap(), Some(vec![]));
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r).prop_map(move |rows| {
                RationalMatrix::new(c, rows.into_iter().map(|r| v(&r)).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_invariants(m in small_matrix()) {
            let s = rref(&m);
            prop_assert!(s.rank() <= m.nrows().min(m.ncols()));
            let basis = s.basis();
            let pivots = s.pivots();
            for (row, &p) in basis.iter().zip(&pivots) {
                prop_assert!(row[..p].iter().all(Zero::is_zero));
                prop_assert!(row[p].is_one());
                for &q in &pivots {
                    if q != p {
                        prop_assert!(row[q].is_zero());
                    }
                }
                prop_assert!(s.contains(row).unwrap());
            }
            for r in m.rows() {
                prop_assert!(s.contains(r).unwrap());
            }
            // idempotent
            let again = rref(&RationalMatrix::new(m.ncols(), basis.clone()).unwrap());
            prop_assert_eq!(again.basis(), basis);
            // transposition preserves rank
            prop_assert_eq!(rank(&m.transpose()), s.rank());
        }

        #[test]
        fn row_order_does_not_matter(m in small_matrix()) {
            let mut rows = m.rows().to_vec();
            rows.reverse();
            let r = RationalMatrix::new(m.ncols(), rows).unwrap();
            prop_assert_eq!(rref(&r).basis(), rref(&m).basis());
        }
    }
}

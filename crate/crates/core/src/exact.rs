//! Exact rational scalars and linear algebra over `Q`.
//!
//! Everything here is exact: kernels and ranks are certified, never
//! approximated. Two kernel routines are provided. [`RationalMatrix::kernel_basis`]
//! is the plain dense route; [`KernelBuilder`] shrinks a kernel one sparse
//! constraint at a time and is what the primitive-space assembly uses. Both
//! return the same canonical basis (the reduced row echelon form of the
//! kernel), so they can be checked against each other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return invalid(format!("row of length {} in a matrix with {cols} columns", bad.len()));
        }
        let n = rows.len();
        Ok(RationalMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return invalid(format!("vector of length {} against {} columns", x.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Pivots are taken at the first nonzero column, the pivot row
    /// being the first candidate row from the top.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..cols {
            if prow == rows {
                break;
            }
            let Some(found) = (prow..rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if found != prow {
                for c in 0..cols {
                    self.data.swap(found * cols + c, prow * cols + c);
                }
            }
            let inv = self.get(prow, col).recip();
            for c in col..cols {
                let v = &self.data[prow * cols + c] * &inv;
                self.data[prow * cols + c] = v;
            }
            for r in 0..rows {
                if r == prow || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..cols {
                    let sub = &factor * &self.data[prow * cols + c];
                    if !sub.is_zero() {
                        self.data[r * cols + c] -= sub;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Canonical basis of `{x : A x = 0}`: the rows of the reduced echelon
    /// form of the kernel. Empty iff `A` is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<Vec<Rational>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, free).clone();
                }
                v
            })
            .collect();
        echelonize(self.cols, raw)
    }

    /// One solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return invalid(format!("right-hand side of length {} for {} rows", b.len(), self.rows));
        }
        let mut aug = RationalMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// Reduced row echelon form of a list of vectors, zero rows dropped.
pub fn echelonize(cols: usize, vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return vectors;
    }
    let mut m = RationalMatrix::from_rows(cols, vectors).expect("uniform vector lengths");
    let rank = m.rref_in_place().len();
    (0..rank).map(|r| m.row(r).to_vec()).collect()
}

pub fn rank_of(cols: usize, vectors: Vec<Vec<Rational>>) -> usize {
    echelonize(cols, vectors).len()
}

/// A sparse row: `(column, value)` pairs with distinct columns.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incremental kernel computation: starts from the whole space `Q^cols` and
/// intersects it with the hyperplane of each added constraint row.
///
/// The working basis is kept dense. Each constraint costs one sparse dot
/// product per basis vector, plus an elimination step when the constraint is
/// not already implied.
#[derive(Clone, Debug)]
pub struct KernelBuilder {
    cols: usize,
    basis: Vec<Vec<Rational>>,
    support: Vec<Vec<usize>>,
}

impl KernelBuilder {
    pub fn new(cols: usize) -> Self {
        let basis = (0..cols)
            .map(|c| {
                let mut v = vec![Rational::zero(); cols];
                v[c] = Rational::one();
                v
            })
            .collect();
        let support = (0..cols).map(|c| vec![c]).collect();
        KernelBuilder { cols, basis, support }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn add_constraint(&mut self, row: &[(usize, Rational)]) {
        if self.basis.is_empty() || row.is_empty() {
            return;
        }
        let dots: Vec<Rational> = self
            .basis
            .iter()
            .map(|v| {
                row.iter()
                    .filter(|(c, a)| !a.is_zero() && !v[*c].is_zero())
                    .fold(Rational::zero(), |acc, (c, a)| acc + a * &v[*c])
            })
            .collect();
        let hit: Vec<usize> = (0..dots.len()).filter(|&k| !dots[k].is_zero()).collect();
        let Some(&pivot) = hit.iter().min_by_key(|&&k| (self.support[k].len(), k)) else {
            return;
        };
        let pv = self.basis[pivot].clone();
        let psupp = self.support[pivot].clone();
        let pdot = dots[pivot].clone();
        for &k in &hit {
            if k == pivot {
                continue;
            }
            let factor = &dots[k] / &pdot;
            let v = &mut self.basis[k];
            for &c in &psupp {
                let d = &factor * &pv[c];
                v[c] -= d;
            }
            let mut supp: Vec<usize> = self.support[k].iter().chain(&psupp).copied().collect();
            supp.sort_unstable();
            supp.dedup();
            supp.retain(|&c| !v[c].is_zero());
            self.support[k] = supp;
        }
        self.basis.swap_remove(pivot);
        self.support.swap_remove(pivot);
    }

    /// Canonical (reduced echelon) kernel basis.
    pub fn finish(self) -> Vec<Vec<Rational>> {
        let mut vs = self.basis;
        // integer-friendly scaling before the final reduction
        for v in &mut vs {
            if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
                if !lead.is_one() {
                    let inv = lead.recip();
                    for x in v.iter_mut().filter(|x| !x.is_zero()) {
                        *x = &*x * &inv;
                    }
                }
            }
        }
        echelonize(self.cols, vs)
    }
}

/// Sign helper used when printing coefficients.
pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::zeros(2, 3).kernel_basis().len(), 3);
        assert_eq!(m(&[&[1, 1], &[1, 1]]).kernel_basis(), vec![vec![rat(1), rat(-1)]]);
    }

    #[test]
    fn rank_and_solve_examples() {
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(m(&[&[2]]).solve(&[rat(1)]).unwrap(), Some(vec![frac(1, 2)]));
        assert_eq!(m(&[&[1], &[1]]).solve(&[rat(1), rat(2)]).unwrap(), None);
        assert!(m(&[&[1], &[1]]).solve(&[rat(1)]).is_err());
        assert!(m(&[&[1, 2]]).mul_vec(&[rat(1)]).is_err());
    }

    #[test]
    fn from_rows_rejects_ragged() {
        assert!(RationalMatrix::from_rows(2, vec![vec![rat(1)]]).is_err());
    }

    #[test]
    fn builder_agrees_with_dense_route() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 0]]);
        let mut kb = KernelBuilder::new(4);
        for r in 0..a.rows() {
            let row: SparseRow = a.row(r).iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            kb.add_constraint(&row);
        }
        assert_eq!(kb.finish(), a.kernel_basis());
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, vals) in small_matrix()) {
            let rows: Vec<Vec<Rational>> = vals.chunks(c).map(|ch| ch.iter().map(|&v| rat(v)).collect()).collect();
            let a = RationalMatrix::from_rows(c, rows).unwrap();
            prop_assert_eq!(a.rows(), r);
            let ker = a.kernel_basis();
            prop_assert_eq!(a.rank() + ker.len(), c);
            for v in &ker {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
            }
            let mut kb = KernelBuilder::new(c);
            for i in 0..a.rows() {
                let row: SparseRow = a.row(i).iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                kb.add_constraint(&row);
            }
            prop_assert_eq!(kb.finish(), ker);
        }

        #[test]
        fn solve_is_exact((_r, c, vals) in small_matrix(), xs in prop::collection::vec(-4i64..=4, 6)) {
            let rows: Vec<Vec<Rational>> = vals.chunks(c).map(|ch| ch.iter().map(|&v| rat(v)).collect()).collect();
            let a = RationalMatrix::from_rows(c, rows).unwrap();
            let x: Vec<Rational> = xs[..c].iter().map(|&v| rat(v)).collect();
            let b = a.mul_vec(&x).unwrap();
            let sol = a.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul_vec(&sol).unwrap(), b);
        }
    }
}

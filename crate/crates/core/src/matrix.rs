//! Integer matrices: Hermite normal form with unimodular multiplier,
//! saturated kernel lattices, rank and exact rational solving.

use num_traits::{One, Zero};

use crate::scalar::{Ratio, Scalar};
use crate::vector::{IntVec, RatVec};

/// Rectangular integer matrix, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> IntMat<S> {
    pub fn from_rows(rows: Vec<IntVec<S>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.dim());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.dim(), ncols, "ragged rows");
            data.extend(r.into_coords());
        }
        IntMat { rows: nrows, cols: ncols, data }
    }

    pub fn from_cols(cols: Vec<IntVec<S>>) -> Self {
        IntMat::from_rows(cols).transpose()
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> IntVec<S> {
        IntVec::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> IntVec<S> {
        IntVec::new((0..self.rows).map(|r| self.at(r, c).clone()).collect())
    }

    pub fn row_vecs(&self) -> Vec<IntVec<S>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = IntMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.at(r, c).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut m = IntMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k).clone() * other.at(k, c).clone();
                }
                m.data[r * other.cols + c] = acc;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &IntVec<S>) -> IntVec<S> {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape");
        IntVec::new((0..self.rows).map(|r| self.row(r).dot(v)).collect())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// row_i -= q * row_j
    fn sub_scaled_row(&mut self, i: usize, j: usize, q: &S) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = self.at(j, c).clone() * q.clone();
            self.data[i * self.cols + c] = self.at(i, c).clone() - t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self.data[i * self.cols + c] = -self.at(i, c).clone();
        }
    }

    /// Rank over the rationals, by exact elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(&self.row_vecs())
    }

    /// Determinant of a square matrix by exact fraction-free expansion.
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "det: square only");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        // Bareiss fraction-free elimination.
        let mut a: Vec<Vec<S>> = (0..n).map(|r| self.row(r).into_coords()).collect();
        let mut sign = S::one();
        let mut prev = S::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return S::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = num / prev.clone();
                }
                a[i][k] = S::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl<S: Scalar> std::fmt::Debug for IntMat<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Result of a row-style Hermite normal form computation: `h = u * a`
/// with `u` unimodular, pivot entries positive, entries above each
/// pivot reduced into `[0, pivot)`, zero rows at the bottom.
#[derive(Clone, Debug)]
pub struct Hnf<S: Scalar> {
    pub h: IntMat<S>,
    pub u: IntMat<S>,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Hnf<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style Hermite normal form with unimodular row multiplier.
pub fn hnf<S: Scalar>(a: &IntMat<S>) -> Hnf<S> {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.rows());
    let mut pivots = Vec::new();
    let mut prow = 0usize;
    for col in 0..h.cols() {
        if prow == h.rows() {
            break;
        }
        // Euclid on the entries of this column at or below prow.
        loop {
            let mut best: Option<usize> = None;
            for r in prow..h.rows() {
                if !h.at(r, col).is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if h.at(r, col).abs() < h.at(b, col).abs() => Some(r),
                        other => other,
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(prow, b);
            u.swap_rows(prow, b);
            let mut done = true;
            for r in prow + 1..h.rows() {
                if !h.at(r, col).is_zero() {
                    let q = h.at(r, col).div_floor(h.at(prow, col));
                    h.sub_scaled_row(r, prow, &q);
                    u.sub_scaled_row(r, prow, &q);
                    if !h.at(r, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(prow, col).is_zero() {
            continue;
        }
        if h.at(prow, col).is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        // Reduce entries above the pivot into [0, pivot).
        for r in 0..prow {
            let q = h.at(r, col).div_floor(h.at(prow, col));
            h.sub_scaled_row(r, prow, &q);
            u.sub_scaled_row(r, prow, &q);
        }
        pivots.push(col);
        prow += 1;
    }
    Hnf { h, u, pivots }
}

/// Canonical (HNF) basis of the lattice spanned by the given vectors.
/// Returns only the nonzero rows.
pub fn lattice_basis<S: Scalar>(vecs: &[IntVec<S>]) -> Vec<IntVec<S>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let res = hnf(&IntMat::from_rows(vecs.to_vec()));
    (0..res.rank()).map(|r| res.h.row(r)).collect()
}

/// Saturated kernel lattice of the column map `a: Z^cols -> Z^rows`,
/// i.e. a canonical basis of `{ x : a x = 0 }`, together with the
/// coordinate functionals of the inclusion in that basis: entry `i`
/// of the returned functional list is the `i`-th column of the basis
/// matrix.
pub fn kernel_lattice<S: Scalar>(a: &IntMat<S>) -> (IntMat<S>, Vec<IntVec<S>>) {
    let r = a.cols();
    let res = hnf(&a.transpose());
    let rank = res.rank();
    let mut kernel_rows: Vec<IntVec<S>> = (rank..r).map(|i| res.u.row(i)).collect();
    kernel_rows = lattice_basis(&kernel_rows);
    let basis = if kernel_rows.is_empty() {
        IntMat::zero(0, r)
    } else {
        IntMat::from_rows(kernel_rows)
    };
    let nu = (0..r).map(|i| basis.col(i)).collect();
    (basis, nu)
}

/// Rank of a list of integer vectors over the rationals.
pub fn rank_of_rows<S: Scalar>(rows: &[IntVec<S>]) -> usize {
    let mut work: Vec<Vec<Ratio<S>>> = rows
        .iter()
        .map(|r| r.iter().map(|c| Ratio::from_integer(c.clone())).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.dim());
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, p);
        let pivot = work[rank][col].clone();
        for r in 0..work.len() {
            if r != rank && !work[r][col].is_zero() {
                let factor = work[r][col].clone() / pivot.clone();
                for c in col..cols {
                    let t = work[rank][c].clone() * factor.clone();
                    work[r][c] = work[r][c].clone() - t;
                }
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Solve the square rational system `m x = rhs` exactly. Returns None
/// if `m` is singular.
pub fn solve_square<S: Scalar>(m: &[IntVec<S>], rhs: &[Ratio<S>]) -> Option<RatVec<S>> {
    let n = m.len();
    assert!(m.iter().all(|r| r.dim() == n), "solve_square: shape");
    assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<Ratio<S>>> = m
        .iter()
        .zip(rhs.iter())
        .map(|(row, b)| {
            let mut v: Vec<Ratio<S>> = row.iter().map(|c| Ratio::from_integer(c.clone())).collect();
            v.push(b.clone());
            v
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for c in col..=n {
            a[col][c] = a[col][c].clone() / pivot.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let t = a[col][c].clone() * factor.clone();
                    a[r][c] = a[r][c].clone() - t;
                }
            }
        }
    }
    Some(RatVec::new(a.into_iter().map(|row| row[n].clone()).collect()))
}

/// Solve a general rational system `rows * x = rhs` exactly (least
/// constraints, any shape). Returns a particular solution and a basis
/// of the homogeneous solution space, or None if inconsistent.
pub fn solve_general<S: Scalar>(
    rows: &[Vec<Ratio<S>>],
    rhs: &[Ratio<S>],
) -> Option<(Vec<Ratio<S>>, Vec<Vec<Ratio<S>>>)> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    assert_eq!(rhs.len(), nrows);
    let mut a: Vec<Vec<Ratio<S>>> = rows
        .iter()
        .zip(rhs.iter())
        .map(|(row, b)| {
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut prow = 0usize;
    for col in 0..ncols {
        if prow == nrows {
            break;
        }
        let Some(p) = (prow..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(prow, p);
        let pivot = a[prow][col].clone();
        for c in col..=ncols {
            a[prow][c] = a[prow][c].clone() / pivot.clone();
        }
        for r in 0..nrows {
            if r != prow && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=ncols {
                    let t = a[prow][c].clone() * factor.clone();
                    a[r][c] = a[r][c].clone() - t;
                }
            }
        }
        pivot_cols.push(col);
        prow += 1;
    }
    // Consistency: zero rows must have zero rhs.
    for r in prow..nrows {
        if !a[r][ncols].is_zero() {
            return None;
        }
    }
    let mut particular = vec![Ratio::zero(); ncols];
    for (i, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = a[i][ncols].clone();
    }
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Ratio::zero(); ncols];
        v[fc] = Ratio::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[i][fc].clone();
        }
        basis.push(v);
    }
    Some((particular, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Int;
    use num_traits::Signed;

    type M = IntMat<Int>;
    type V = IntVec<Int>;

    fn mat(rows: &[&[i64]]) -> M {
        M::from_rows(rows.iter().map(|r| V::from_i64(r)).collect())
    }

    #[test]
    fn hnf_already_in_form() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let res = hnf(&a);
        assert_eq!(res.h, a);
        assert_eq!(res.u, M::identity(2));
    }

    #[test]
    fn hnf_row_swap() {
        let a = mat(&[&[0, 1], &[1, 0]]);
        let res = hnf(&a);
        assert_eq!(res.h, M::identity(2));
        assert_eq!(res.u.mul(&a), res.h);
        assert_eq!(res.u.det().abs(), Int::from(1));
    }

    #[test]
    fn hnf_reduction_example() {
        let a = mat(&[&[2, 4], &[1, 3]]);
        let res = hnf(&a);
        assert_eq!(res.h, mat(&[&[1, 1], &[0, 2]]));
        assert_eq!(res.u.mul(&a), res.h);
        assert_eq!(res.u.det().abs(), Int::from(1));
    }

    #[test]
    fn hnf_idempotent() {
        let a = mat(&[&[2, 4, 1], &[1, 3, 5], &[0, 6, 2]]);
        let first = hnf(&a);
        let second = hnf(&first.h);
        assert_eq!(second.h, first.h);
    }

    #[test]
    fn kernel_of_sum_map() {
        // gamma = [1 1]: kernel spanned by (1, -1).
        let (basis, nu) = kernel_lattice(&mat(&[&[1, 1]]));
        assert_eq!(basis.row_vecs(), vec![V::from_i64(&[1, -1])]);
        assert_eq!(nu, vec![V::from_i64(&[1]), V::from_i64(&[-1])]);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let (basis, nu) = kernel_lattice(&M::identity(3));
        assert_eq!(basis.rows(), 0);
        assert!(nu.iter().all(|v| v.dim() == 0));
    }

    #[test]
    fn kernel_of_lifted_action_n4() {
        // Columns (1,0,0), (1,0,1), (0,1,0), (0,1,1).
        let gamma = mat(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 1, 0, 1]]);
        let (basis, nu) = kernel_lattice(&gamma);
        assert_eq!(basis.row_vecs(), vec![V::from_i64(&[1, -1, -1, 1])]);
        assert_eq!(gamma.mul_vec(&basis.row(0)), V::from_i64(&[0, 0, 0]));
        let flat: Vec<i64> = nu.iter().map(|v| format!("{}", v[0]).parse().unwrap()).collect();
        assert_eq!(flat, vec![1, -1, -1, 1]);
    }

    #[test]
    fn det_and_rank() {
        let a = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), Int::from(18));
        assert_eq!(a.rank(), 3);
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_square_exactly() {
        let m = vec![V::from_i64(&[2, 1]), V::from_i64(&[1, 3])];
        let rhs = vec![crate::scalar::Rat::from_integer(Int::from(4)), crate::scalar::Rat::from_integer(Int::from(7))];
        let x = solve_square(&m, &rhs).unwrap();
        assert_eq!(x, RatVec::new(vec![crate::scalar::Rat::from_integer(Int::from(1)), crate::scalar::Rat::from_integer(Int::from(2))]));
    }
}

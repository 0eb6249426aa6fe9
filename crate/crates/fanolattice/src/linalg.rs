//! Dense exact linear algebra over integer scalars and their fraction fields.
//!
//! Everything here is exact: Bareiss determinants, Hermite normal form with a
//! unimodular multiplier, rational Gaussian elimination for solving, rank and
//! nullspaces, and the fixed-subspace dimension used by the symmetry layer.
//! Matrices are stored densely; ambient ranks stay at or below 8.

use std::fmt;
use std::ops::Index;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ring bounds shared by integer scalars and their fraction fields.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + std::ops::Neg<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Mul<Output = T>
{
}

/// Dense column vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector { entries }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.entries.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<T> {
        self.entries
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Vector<U> {
        Vector::new(self.entries.iter().map(f).collect())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;

    #[inline]
    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

impl<T: fmt::Debug> fmt::Debug for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.entries.fmt(f)
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl<T: Ring> Vector<T> {
    pub fn zeros(n: usize) -> Self {
        Vector::new(vec![T::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        Vector::new(v)
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.len(), other.len());
        let mut acc = T::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = acc + a.clone() * b.clone();
        }
        acc
    }

    /// Coordinate sum, the pairing with the all-ones functional.
    pub fn coord_sum(&self) -> T {
        let mut acc = T::zero();
        for a in &self.entries {
            acc = acc + a.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Vector::new(self.entries.iter().map(|a| -a.clone()).collect())
    }

    pub fn scaled(&self, s: &T) -> Self {
        Vector::new(self.entries.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }
}

impl<S: Scalar> Vector<S> {
    /// Gcd of the coordinates; zero only for the zero vector.
    pub fn content(&self) -> S {
        let mut g = S::zero();
        for a in &self.entries {
            g = g.gcd(a);
        }
        g
    }

    /// True when the coordinates are coprime (in particular, nonzero vector).
    pub fn is_primitive(&self) -> bool {
        self.content() == S::one()
    }

    /// Divides out the content; the zero vector is returned unchanged.
    pub fn primitivized(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Vector::new(self.entries.iter().map(|a| a.clone() / g.clone()).collect())
    }

    pub fn to_rational(&self) -> Vector<Ratio<S>> {
        self.map(|a| Ratio::from_integer(a.clone()))
    }

    pub fn cast<T: Scalar>(&self) -> Vector<T>
    where
        T: From<S>,
    {
        self.map(|a| T::from(a.clone()))
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_row_vectors(rows: &[Vector<T>]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.as_slice().to_vec()).collect())
    }

    pub fn from_col_vectors(cols: &[Vector<T>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vector::len);
        Matrix::from_fn(nrows, ncols, |i, j| cols[j][i].clone())
    }

    pub fn row(&self, i: usize) -> Vector<T> {
        Vector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> Vector<T> {
        Vector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        Vector::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = T::zero();
                    for k in 0..self.cols {
                        acc = acc + self.get(i, k).clone() * v[k].clone();
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn to_rational(&self) -> Matrix<Ratio<S>> {
        self.map(|a| Ratio::from_integer(a.clone()))
    }

    pub fn cast<T: Scalar>(&self) -> Matrix<T>
    where
        T: From<S>,
    {
        self.map(|a| T::from(a.clone()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(S::one());
        }
        let mut a: Vec<Vec<S>> = (0..n).map(|i| self.row(i).into_vec()).collect();
        let mut sign_flip = false;
        let mut prev = S::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(S::zero()),
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
        let det = a[n - 1][n - 1].clone();
        Ok(if sign_flip { -det } else { det })
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.abs() == S::one())
    }

    /// Hermite normal form by row operations: returns `(h, u)` with
    /// `u * self == h`, `u` unimodular, and `h` in row-echelon Hermite form
    /// (positive pivots, entries above a pivot reduced into `[0, pivot)`).
    /// The reduction is deterministic, so equal inputs give equal outputs.
    pub fn hermite_normal_form(&self) -> (Matrix<S>, Matrix<S>) {
        let m = self.rows;
        let n = self.cols;
        let mut h: Vec<Vec<S>> = (0..m).map(|i| self.row(i).into_vec()).collect();
        let mut u: Vec<Vec<S>> = (0..m)
            .map(|i| {
                let mut r = vec![S::zero(); m];
                r[i] = S::one();
                r
            })
            .collect();
        let mut pivot_row = 0usize;
        for col in 0..n {
            if pivot_row == m {
                break;
            }
            // Euclid on the column below pivot_row until one nonzero remains.
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..m {
                    if !h[r][col].is_zero() {
                        let better = match best {
                            None => true,
                            Some(b) => h[r][col].abs() < h[b][col].abs(),
                        };
                        if better {
                            best = Some(r);
                        }
                    }
                }
                let Some(b) = best else { break };
                h.swap(pivot_row, b);
                u.swap(pivot_row, b);
                let mut others = false;
                for r in pivot_row + 1..m {
                    if !h[r][col].is_zero() {
                        others = true;
                        let q = h[r][col].div_floor(&h[pivot_row][col]);
                        for j in 0..n {
                            let s = h[r][j].clone() - q.clone() * h[pivot_row][j].clone();
                            h[r][j] = s;
                        }
                        for j in 0..m {
                            let s = u[r][j].clone() - q.clone() * u[pivot_row][j].clone();
                            u[r][j] = s;
                        }
                    }
                }
                if !others {
                    break;
                }
            }
            if h[pivot_row][col].is_zero() {
                continue;
            }
            if h[pivot_row][col].is_negative() {
                for j in 0..n {
                    h[pivot_row][j] = -h[pivot_row][j].clone();
                }
                for j in 0..m {
                    u[pivot_row][j] = -u[pivot_row][j].clone();
                }
            }
            for r in 0..pivot_row {
                if !h[r][col].is_zero() {
                    let q = h[r][col].div_floor(&h[pivot_row][col]);
                    if !q.is_zero() {
                        for j in 0..n {
                            let s = h[r][j].clone() - q.clone() * h[pivot_row][j].clone();
                            h[r][j] = s;
                        }
                        for j in 0..m {
                            let s = u[r][j].clone() - q.clone() * u[pivot_row][j].clone();
                            u[r][j] = s;
                        }
                    }
                }
            }
            pivot_row += 1;
        }
        (Matrix::from_rows(h), Matrix::from_rows(u))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rational();
        gaussian_pivots(&mut a).len()
    }

    /// Primitive integer basis of the rational nullspace.
    pub fn nullspace_primitive(&self) -> Vec<Vector<S>> {
        let mut a = self.to_rational();
        let pivots = gaussian_pivots(&mut a);
        let n = self.cols;
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut x = vec![Ratio::<S>::zero(); n];
            x[free] = Ratio::one();
            // Back-substitute pivot rows (already reduced echelon).
            for &(r, c) in pivots.iter().rev() {
                let mut acc = Ratio::<S>::zero();
                for j in c + 1..n {
                    if !a.get(r, j).is_zero() && !x[j].is_zero() {
                        acc = acc + a.get(r, j).clone() * x[j].clone();
                    }
                }
                x[c] = -acc / a.get(r, c).clone();
            }
            basis.push(clear_denominators(&Vector::new(x)));
        }
        basis
    }
}

/// Reduced row echelon over a fraction field; returns the (row, col) pivots.
pub(crate) fn gaussian_pivots<S: Scalar>(a: &mut Matrix<Ratio<S>>) -> Vec<(usize, usize)> {
    let rows = a.nrows();
    let cols = a.ncols();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a.get(p, j).clone();
                a.set(p, j, a.get(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let inv = a.get(r, c).clone();
        for j in c..cols {
            a.set(r, j, a.get(r, j).clone() / inv.clone());
        }
        for i in 0..rows {
            if i != r && !a.get(i, c).is_zero() {
                let f = a.get(i, c).clone();
                for j in c..cols {
                    let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Scales a rational vector to a primitive integer vector (same direction).
pub fn clear_denominators<S: Scalar>(v: &Vector<Ratio<S>>) -> Vector<S> {
    let mut lcm = S::one();
    for e in v.iter() {
        lcm = lcm.lcm(e.denom());
    }
    let ints: Vec<S> = v
        .iter()
        .map(|e| e.numer().clone() * (lcm.clone() / e.denom().clone()))
        .collect();
    Vector::new(ints).primitivized()
}

/// Exact solve `a * x = b` over the fraction field; `None` when inconsistent.
/// Underdetermined consistent systems get the solution with free variables 0.
pub fn rational_solve<S: Scalar>(
    a: &Matrix<Ratio<S>>,
    b: &Vector<Ratio<S>>,
) -> Option<Vector<Ratio<S>>> {
    assert_eq!(a.nrows(), b.len(), "dimension mismatch in solve");
    let rows = a.nrows();
    let cols = a.ncols();
    let mut aug = Matrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = gaussian_pivots(&mut aug);
    if pivots.iter().any(|&(_, c)| c == cols) {
        return None;
    }
    let mut x = vec![Ratio::<S>::zero(); cols];
    for &(r, c) in &pivots {
        // Reduced echelon: the pivot row reads x_c + sum(free terms) = rhs,
        // and free variables are pinned to zero.
        let mut rhs = aug.get(r, cols).clone();
        for j in c + 1..cols {
            if !aug.get(r, j).is_zero() && !x[j].is_zero() {
                rhs = rhs - aug.get(r, j).clone() * x[j].clone();
            }
        }
        x[c] = rhs;
    }
    Some(Vector::new(x))
}

/// Exact solve for integer inputs, rational output.
pub fn solve_integer_system<S: Scalar>(a: &Matrix<S>, b: &Vector<S>) -> Option<Vector<Ratio<S>>> {
    rational_solve(&a.to_rational(), &b.to_rational())
}

/// Exact inverse over the fraction field; `None` when singular.
pub fn inverse_rational<S: Scalar>(m: &Matrix<S>) -> Option<Matrix<Ratio<S>>> {
    if !m.is_square() {
        return None;
    }
    let n = m.nrows();
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            Ratio::from_integer(m.get(i, j).clone())
        } else if j - n == i {
            Ratio::one()
        } else {
            Ratio::zero()
        }
    });
    let pivots = gaussian_pivots(&mut aug);
    if pivots.len() < n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
}

/// Dimension over the rationals of the common fixed space
/// `∩_g ker(g − I)`, from the stacked matrix of all `g − I`.
pub fn fixed_space_dimension<S: Scalar>(mats: &[Matrix<S>]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Err(Error::InvalidInput("fixed space of an empty matrix list".into()));
    };
    let n = first.nrows();
    for m in mats {
        if !m.is_square() || m.nrows() != n {
            return Err(Error::DimensionMismatch(
                "fixed_space_dimension requires equal square matrices".into(),
            ));
        }
    }
    let mut stacked = Vec::with_capacity(mats.len() * n);
    for m in mats {
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut v = m.get(i, j).clone();
                if i == j {
                    v = v - S::one();
                }
                row.push(v);
            }
            stacked.push(row);
        }
    }
    Ok(n - Matrix::from_rows(stacked).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type M = Matrix<BigInt>;

    fn mat(rows: &[&[i64]]) -> M {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    #[test]
    fn determinant_identity_is_one() {
        assert_eq!(M::identity(3).determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn determinant_triangular() {
        assert_eq!(mat(&[&[1, 0], &[1, 1]]).determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn determinant_two_by_two_cofactor() {
        assert_eq!(mat(&[&[0, 1], &[-1, -1]]).determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        assert!(mat(&[&[1, 2, 3], &[4, 5, 6]]).determinant().is_err());
    }

    #[test]
    fn determinant_singular_is_zero() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).determinant().unwrap(), BigInt::from(0));
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        let (h, u) = M::identity(2).hermite_normal_form();
        assert!(h.is_identity());
        assert!(u.is_identity());
    }

    #[test]
    fn hnf_fixes_diagonal_input() {
        let m = mat(&[&[2, 0], &[0, 1]]);
        let (h, _) = m.hermite_normal_form();
        assert_eq!(h, m);
    }

    #[test]
    fn hnf_multiplier_is_unimodular_and_consistent() {
        let m = mat(&[&[1, 1], &[0, 1]]);
        let (h, u) = m.hermite_normal_form();
        assert!(u.is_unimodular().unwrap());
        assert_eq!(u.mul(&m), h);
    }

    #[test]
    fn rational_solve_identity_returns_rhs() {
        let a = M::identity(3).to_rational();
        let b = Vector::new(vec![BigInt::from(4), BigInt::from(-7), BigInt::from(0)]).to_rational();
        assert_eq!(rational_solve(&a, &b).unwrap(), b);
    }

    #[test]
    fn rational_solve_two_by_two() {
        let a = mat(&[&[1, 1], &[1, -1]]).to_rational();
        let b = Vector::new(vec![BigInt::from(2), BigInt::from(0)]).to_rational();
        let x = rational_solve(&a, &b).unwrap();
        let one = num_rational::BigRational::from_integer(BigInt::from(1));
        assert_eq!(x.as_slice(), &[one.clone(), one]);
    }

    #[test]
    fn rational_solve_inconsistent_returns_none() {
        let a = mat(&[&[1, 0], &[1, 0], &[0, 1]]).to_rational();
        let b = Vector::new(vec![BigInt::from(1), BigInt::from(2), BigInt::from(0)]).to_rational();
        assert!(rational_solve(&a, &b).is_none());
    }

    #[test]
    fn fixed_space_identity_is_full() {
        assert_eq!(fixed_space_dimension(&[M::identity(3)]).unwrap(), 3);
    }

    #[test]
    fn fixed_space_negated_identity_is_trivial() {
        let neg = mat(&[&[-1, 0], &[0, -1]]);
        assert_eq!(fixed_space_dimension(&[neg]).unwrap(), 0);
    }

    #[test]
    fn fixed_space_coordinate_swap_is_diagonal() {
        let swap = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(fixed_space_dimension(&[swap]).unwrap(), 1);
    }

    #[test]
    fn fixed_space_rejects_size_mismatch() {
        assert!(fixed_space_dimension(&[M::identity(2), M::identity(3)]).is_err());
    }

    #[test]
    fn unimodular_examples() {
        assert!(M::identity(4).is_unimodular().unwrap());
        assert!(!mat(&[&[2, 0], &[0, 1]]).is_unimodular().unwrap());
        assert!(mat(&[&[1, 1], &[0, 1]]).is_unimodular().unwrap());
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        // Rows span a plane in Q^3; kernel is one primitive direction.
        let m = mat(&[&[1, 0, -1], &[0, 1, -1]]);
        let ns = m.nullspace_primitive();
        assert_eq!(ns.len(), 1);
        let k = &ns[0];
        assert!(m.row(0).dot(k).is_zero());
        assert!(m.row(1).dot(k).is_zero());
        assert!(k.is_primitive());
    }

    #[test]
    fn inverse_of_unimodular_matrix_is_integral() {
        let m = mat(&[&[1, 1], &[0, 1]]);
        let inv = inverse_rational(&m).unwrap();
        assert!(inv.map(|e| e.denom().clone()).entries_all_one());
    }

    impl Matrix<BigInt> {
        fn entries_all_one(&self) -> bool {
            (0..self.nrows()).all(|i| (0..self.ncols()).all(|j| self.get(i, j).is_one()))
        }
    }

    /// Permutation matrix fixed-space dimension equals the cycle count.
    fn cycle_count(perm: &[usize]) -> usize {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for mut i in 0..n {
            if seen[i] {
                continue;
            }
            cycles += 1;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a_vals in proptest::collection::vec(-5i64..=5, 9),
                                 b_vals in proptest::collection::vec(-5i64..=5, 9)) {
            let a = Matrix::from_fn(3, 3, |i, j| BigInt::from(a_vals[3 * i + j]));
            let b = Matrix::from_fn(3, 3, |i, j| BigInt::from(b_vals[3 * i + j]));
            let lhs = a.mul(&b).determinant().unwrap();
            let rhs = a.determinant().unwrap() * b.determinant().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hnf_is_idempotent_and_u_unimodular(vals in proptest::collection::vec(-9i64..=9, 12)) {
            let m = Matrix::from_fn(3, 4, |i, j| BigInt::from(vals[4 * i + j]));
            let (h, u) = m.hermite_normal_form();
            prop_assert!(u.is_unimodular().unwrap());
            prop_assert_eq!(u.mul(&m), h.clone());
            let (h2, _) = h.hermite_normal_form();
            prop_assert_eq!(h2, h);
        }

        #[test]
        fn permutation_fixed_space_counts_cycles(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let n = perm.len();
            let m = Matrix::from_fn(n, n, |i, j| {
                if perm[j] == i { BigInt::from(1) } else { BigInt::from(0) }
            });
            prop_assert_eq!(fixed_space_dimension(&[m]).unwrap(), cycle_count(&perm));
        }
    }
}

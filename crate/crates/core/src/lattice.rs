//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision: integers are [`BigInt`] and
//! fractions are [`BigRational`], which keeps them reduced with a positive
//! denominator. No routine in this module touches floating point.

#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact fraction; always reduced, denominator positive, zero is `0/1`.
pub type Rational = BigRational;
/// Lattice point, divisor class or ray generator.
pub type IntVector = Vec<BigInt>;
/// Vector of exact fractions.
pub type RatVector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows have unequal lengths")]
    Ragged,
}

/// Dense row-major matrix over a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LatticeError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(LatticeError::Ragged);
        }
        Ok(Self {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T>,
{
    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LatticeError> {
        if v.len() != self.cols {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `x^T A y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> Result<T, LatticeError> {
        if x.len() != self.rows {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rows,
                got: x.len(),
            });
        }
        let ay = self.mul_vec(y)?;
        Ok(dot(x, &ay))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero + for<'a> std::ops::Mul<&'a T, Output = T>,
{
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y)
}

pub fn int_vec(values: &[i64]) -> IntVector {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    Matrix::from_rows(rows.iter().map(|r| int_vec(r)).collect()).expect("rectangular literal")
}

pub fn to_rational(v: &[BigInt]) -> RatVector {
    v.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Returns the integer vector if every entry is integral.
pub fn to_integral(v: &[Rational]) -> Option<IntVector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Solves `A x = b` exactly for square nonsingular `A`.
pub fn solve_exact(a: &RatMatrix, b: &[Rational]) -> Result<RatVector, LatticeError> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if b.len() != a.rows {
        return Err(LatticeError::DimensionMismatch {
            expected: a.rows,
            got: b.len(),
        });
    }
    match solve_consistent(a, b)? {
        Some((x, rank)) if rank == a.rows => Ok(x),
        _ => Err(LatticeError::SingularMatrix),
    }
}

/// Row-reduces the (possibly non-square) system `A x = b`.
///
/// Returns `None` when the system is inconsistent, otherwise one solution
/// (free variables set to zero) together with the rank of `A`.
pub fn solve_consistent(
    a: &RatMatrix,
    b: &[Rational],
) -> Result<Option<(RatVector, usize)>, LatticeError> {
    if b.len() != a.rows {
        return Err(LatticeError::DimensionMismatch {
            expected: a.rows,
            got: b.len(),
        });
    }
    let (n, m) = (a.rows, a.cols);
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..=m {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[m].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][m].clone();
    }
    Ok(Some((x, pivots.len())))
}

/// Fraction-free (Bareiss) elimination without pivoting.
///
/// Returns the leading principal minors `D_1, ..., D_k` up to and including
/// the first zero one.
fn bareiss_leading_minors(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows;
    let mut m = a.clone();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = m.get(k, k).clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * m.get(i, j) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
        }
        prev = pivot;
    }
    minors
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(a: &IntMatrix) -> Result<BigInt, LatticeError> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut m = a.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(if n == 0 { BigInt::one() } else { sign * prev })
}

/// Leading-principal-minor test: `(-1)^k D_k > 0` for every `k`.
pub fn is_negative_definite(a: &IntMatrix) -> Result<bool, LatticeError> {
    if !a.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let minors = bareiss_leading_minors(a);
    if minors.len() < a.rows {
        return Ok(false);
    }
    Ok(minors.iter().enumerate().all(|(k, d)| {
        if k % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    }))
}

pub fn is_positive_definite(a: &IntMatrix) -> Result<bool, LatticeError> {
    if !a.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let minors = bareiss_leading_minors(a);
    Ok(minors.len() == a.rows && minors.iter().all(Signed::is_positive))
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, by exact
/// congruence diagonalisation.
pub fn signature(a: &IntMatrix) -> Result<(usize, usize, usize), LatticeError> {
    if !a.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let mut m: Vec<Vec<Rational>> = a.to_rows().into_iter().map(|r| to_rational(&r)).collect();
    let mut active: Vec<usize> = (0..a.rows).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                // e_i <- e_i + e_j makes the diagonal entry 2 m_ij.
                for k in 0..m.len() {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..m.len() {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
                i
            }
        };
        let d = m[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = &m[i][p] / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let delta = &f * &m[p][j];
                m[i][j] -= delta;
            }
        }
        for &i in &active {
            m[i][p] = Rational::zero();
            m[p][i] = Rational::zero();
        }
    }
    Ok((pos, neg, a.rows - pos - neg))
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    let zero = vec![Rational::zero(); a.rows];
    solve_consistent(&a.map(|x| Rational::from_integer(x.clone())), &zero)
        .expect("dimensions agree")
        .map_or(0, |(_, r)| r)
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (nonzero ones only).
pub fn smith_normal_form(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.to_rows();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let delta = &q * &m[t][j];
                    m[i][j] -= delta;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Result<IntVector, LatticeError> {
    let g = content(v);
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Gcd of the entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

/// Row-style Hermite normal form of the row lattice of `a`, with zero rows
/// dropped. Pivots are positive and entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut m = a.to_rows();
    let cols = a.cols;
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let Some(p) = best else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                for j in c..cols {
                    let delta = &q * &m[r][j];
                    m[i][j] -= delta;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if q.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let delta = &q * &m[r][j];
                    m[i][j] -= delta;
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    Matrix::from_rows(m).unwrap_or_else(|_| Matrix::zeros(0, cols))
}

/// Basis (as rows, in Hermite normal form) of `{ x in Z^n : A x = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (rows, n) = (a.rows, a.cols);
    // Reduce [A^T | I]; rows whose A^T part vanishes span the kernel.
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigInt> = (0..rows).map(|k| a.get(k, i).clone()).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..rows {
        loop {
            let best = (r..n)
                .filter(|&i| !aug[i][c].is_zero())
                .min_by(|&i, &j| aug[i][c].abs().cmp(&aug[j][c].abs()));
            let Some(p) = best else { break };
            aug.swap(r, p);
            let mut done = true;
            for i in r + 1..n {
                if aug[i][c].is_zero() {
                    continue;
                }
                let q = aug[i][c].div_floor(&aug[r][c]);
                for j in 0..rows + n {
                    let delta = &q * &aug[r][j];
                    aug[i][j] -= delta;
                }
                if !aug[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = aug
        .into_iter()
        .filter(|row| row[..rows].iter().all(Zero::is_zero))
        .map(|row| row[rows..].to_vec())
        .collect();
    if basis.is_empty() {
        return Matrix::zeros(0, n);
    }
    hermite_normal_form(&Matrix::from_rows(basis).expect("rectangular"))
}

/// Coordinates of `v` in the row basis `basis`, if `v` lies in its integer span.
pub fn coordinates_in_basis(basis: &IntMatrix, v: &[BigInt]) -> Option<IntVector> {
    let a = basis.transpose().map(|x| Rational::from_integer(x.clone()));
    let (x, r) = solve_consistent(&a, &to_rational(v)).ok()??;
    if r != basis.rows {
        return None;
    }
    to_integral(&x)
}

/// Least common multiple of the denominators.
pub fn denominator_lcm(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        int_matrix(rows).map(|x| Rational::from_integer(x.clone()))
    }

    fn rv(v: &[i64]) -> RatVector {
        to_rational(&int_vec(v))
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_exact(&rm(&[&[-2]]), &rv(&[0])).unwrap(), rv(&[0]));
        let id = RatMatrix::identity(3);
        assert_eq!(solve_exact(&id, &rv(&[1, 2, 3])).unwrap(), rv(&[1, 2, 3]));
        let x = solve_exact(&rm(&[&[-2, 1], &[1, -2]]), &rv(&[-1, 0])).unwrap();
        assert_eq!(x, vec![rat(2, 3), rat(1, 3)]);
    }

    #[test]
    fn solve_singular() {
        let err = solve_exact(&rm(&[&[1, 2], &[2, 4]]), &rv(&[1, 2])).unwrap_err();
        assert_eq!(err, LatticeError::SingularMatrix);
    }

    #[test]
    fn negative_definite_examples() {
        assert!(is_negative_definite(&int_matrix(&[&[-2, 1], &[1, -2]])).unwrap());
        assert!(!is_negative_definite(&int_matrix(&[&[-1, 0], &[0, 0]])).unwrap());
        assert!(!is_negative_definite(&int_matrix(&[&[1]])).unwrap());
        assert_eq!(
            is_negative_definite(&int_matrix(&[&[-2, 1], &[0, -2]])),
            Err(LatticeError::NotSymmetric)
        );
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)), int_vec(&[1, 1]));
        assert_eq!(
            smith_normal_form(&int_matrix(&[&[2, 4], &[6, 8]])),
            int_vec(&[2, 4])
        );
        assert!(smith_normal_form(&int_matrix(&[&[0, 0], &[0, 0]])).is_empty());
        assert_eq!(
            smith_normal_form(&int_matrix(&[&[2, 0, 0], &[0, 3, 0]])),
            int_vec(&[1, 6])
        );
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&int_vec(&[2, 4])).unwrap(), int_vec(&[1, 2]));
        assert_eq!(primitive(&int_vec(&[3, -5])).unwrap(), int_vec(&[3, -5]));
        assert_eq!(primitive(&int_vec(&[0, 0])), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn determinant_and_signature() {
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m).unwrap(), BigInt::from(-1));
        assert_eq!(signature(&m).unwrap(), (1, 1, 0));
        let g = int_matrix(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        assert_eq!(signature(&g).unwrap(), (1, 2, 0));
        assert_eq!(
            signature(&int_matrix(&[&[0, 0], &[0, 0]])).unwrap(),
            (0, 0, 2)
        );
        assert_eq!(
            determinant(&int_matrix(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]])).unwrap(),
            BigInt::from(-4)
        );
    }

    #[test]
    fn kernel_and_hnf() {
        let k = integer_kernel(&int_matrix(&[&[0, 1]]));
        assert_eq!(k.to_rows(), vec![int_vec(&[1, 0])]);
        let k = integer_kernel(&int_matrix(&[&[2, 3, 5]]));
        assert_eq!(k.rows(), 2);
        for row in k.to_rows() {
            assert!(dot(&row, &int_vec(&[2, 3, 5])).is_zero());
        }
        // saturated: the kernel lattice has index 1 in its rational span
        assert_eq!(smith_normal_form(&k), int_vec(&[1, 1]));
        assert_eq!(
            coordinates_in_basis(&k, &int_vec(&[5, 0, -2])),
            coordinates_in_basis(&k, &int_vec(&[5, 0, -2]))
        );
        assert!(coordinates_in_basis(&k, &int_vec(&[1, 1, 1])).is_none());
    }

    #[test]
    fn rank_of_matrices() {
        assert_eq!(rank(&int_matrix(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&int_matrix(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
        assert_eq!(rank(&int_matrix(&[&[0, 0]])), 0);
    }
}

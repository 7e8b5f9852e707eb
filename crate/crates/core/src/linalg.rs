//! Elimination-based linear algebra: determinant, rank, inverse, nullspace
//! and linear solves.
//!
//! Rational determinants use Bareiss fraction-free elimination on rows
//! cleared of denominators. Everything else is Gauss-Jordan elimination,
//! exact over the rationals and partially pivoted over floats, where a pivot
//! counts only if its modulus exceeds `tol × max |initial entry|`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

/// Default relative pivot tolerance for float kinds.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

pub fn det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(T::determinant(m))
}

pub(crate) fn pivoted_det<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.rows();
    let mut a: Vec<T> = m.as_slice().to_vec();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| {
                a[r * n + col]
                    .modulus()
                    .partial_cmp(&a[s * n + col].modulus())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[pivot * n + col].is_zero() {
            return T::zero();
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            let f = a[r * n + col].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let v = a[col * n + j].clone() * f.clone();
                a[r * n + j] = a[r * n + j].clone() - v;
            }
        }
    }
    det
}

/// Clears denominators row by row, returning integer rows and the product of
/// the row multipliers.
pub fn integer_rows(m: &Matrix<Rational>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (rows, scale)
}

pub fn rational_det(m: &Matrix<Rational>) -> Rational {
    let (rows, scale) = integer_rows(m);
    Rational::new(bareiss_det(rows), scale)
}

/// Fraction-free Bareiss elimination; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Bareiss determinant in `i128`, `None` on overflow.
pub fn bareiss_det_i128(a: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let akk = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(akk)?
                    .checked_sub(aik.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + k] = 0;
        }
        prev = akk;
    }
    sign.checked_mul(a[n * n - 1])
}

pub(crate) fn small_det_is_zero(a: &[i128], n: usize) -> bool {
    let mut work = a.to_vec();
    match bareiss_det_i128(&mut work, n) {
        Some(d) => d == 0,
        None => {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(a[i * n + j])).collect())
                .collect();
            bareiss_det(rows).is_zero()
        }
    }
}

/// Reduced row echelon form with the pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

pub fn rref<T: Scalar>(m: &Matrix<T>, tol: f64) -> Echelon<T> {
    let rows = m.rows();
    let cols = m.cols();
    let threshold = if T::EXACT { 0.0 } else { tol * m.max_modulus() };
    let mut a: Vec<T> = m.as_slice().to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = if T::EXACT {
            (r..rows).find(|&i| !a[i * cols + c].is_zero())
        } else {
            (r..rows)
                .map(|i| (i, a[i * cols + c].modulus()))
                .filter(|&(_, v)| v > threshold)
                .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(i, _)| i)
        };
        let Some(p) = pivot else {
            if !T::EXACT {
                for i in r..rows {
                    a[i * cols + c] = T::zero();
                }
            }
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = T::one() / a[r * cols + c].clone();
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j].clone() * inv.clone();
        }
        a[r * cols + c] = T::one();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = a[r * cols + j].clone() * f.clone();
                a[i * cols + j] = a[i * cols + j].clone() - v;
            }
            a[i * cols + c] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        reduced: Matrix::from_vec(rows, cols, a).expect("shape preserved"),
        pivots,
    }
}

pub fn rank<T: Scalar>(m: &Matrix<T>, tol: f64) -> usize {
    rref(m, tol).pivots.len()
}

/// Basis of `{v : M v = 0}` as column vectors.
pub fn nullspace<T: Scalar>(m: &Matrix<T>, tol: f64) -> Vec<Matrix<T>> {
    let cols = m.cols();
    let ech = rref(m, tol);
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Matrix::zeros(cols, 1);
            v[(f, 0)] = T::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[(p, 0)] = -ech.reduced[(r, f)].clone();
            }
            v
        })
        .collect()
}

pub fn inverse<T: Scalar>(m: &Matrix<T>, tol: f64) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            T::one()
        } else {
            T::zero()
        }
    });
    // Scale the tolerance to the left block only.
    let rel = if T::EXACT || aug.max_modulus() == 0.0 {
        tol
    } else {
        tol * m.max_modulus() / aug.max_modulus()
    };
    let ech = rref(&aug, rel);
    if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| ech.reduced[(i, n + j)].clone()))
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &[T], tol: f64) -> Result<Option<Vec<T>>> {
    if a.rows() != b.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} equations but {} right-hand sides",
            a.rows(),
            b.len()
        )));
    }
    let cols = a.cols();
    let aug = Matrix::from_fn(a.rows(), cols + 1, |i, j| {
        if j < cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let ech = rref(&aug, tol);
    if ech.pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); cols];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.reduced[(r, cols)].clone();
    }
    Ok(Some(x))
}

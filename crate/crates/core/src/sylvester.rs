//! Sylvester's equation `A·X - X·B = C`.
//!
//! Unique solvability for every `C` is decided from traces alone:
//! characteristic polynomials come from the power sums `tr(A^k)` through
//! Newton's identities, and a nonzero resultant certifies disjoint spectra.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, DEFAULT_RANK_TOL};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Polynomial in `t` with ascending coefficients and no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

fn square_dim<T: Scalar>(m: &Matrix<T>) -> Result<usize> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// The `n·m × n·m` matrix of `X ↦ A·X - X·B` on row-major `vec(X)`.
pub fn sylvester_operator<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let n = square_dim(a)?;
    let m = square_dim(b)?;
    let mut op: Matrix<T> = Matrix::zeros(n * m, n * m);
    for r in 0..n {
        for c in 0..m {
            let row = r * m + c;
            for k in 0..n {
                let slot = &mut op[(row, k * m + c)];
                *slot = slot.clone() + a[(r, k)].clone();
            }
            for k in 0..m {
                let slot = &mut op[(row, r * m + k)];
                *slot = slot.clone() - b[(k, c)].clone();
            }
        }
    }
    Ok(op)
}

/// Some solution of `A·X - X·B = C`, or `None` when inconsistent.
pub fn sylvester_solve<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
) -> Result<Option<Matrix<T>>> {
    let op = sylvester_operator(a, b)?;
    let (n, m) = (a.rows(), b.rows());
    if (c.rows(), c.cols()) != (n, m) {
        return Err(Error::ShapeMismatch(format!(
            "C is {}x{}, expected {n}x{m}",
            c.rows(),
            c.cols()
        )));
    }
    Ok(linalg::solve(&op, c.as_slice(), DEFAULT_RANK_TOL)?
        .map(|x| Matrix::from_vec(n, m, x).expect("n*m unknowns")))
}

/// `det(t·I - A)` from the power sums `tr(A^k)` via Newton's identities.
pub fn char_poly_from_traces<T: Scalar>(a: &Matrix<T>) -> Result<Polynomial<T>> {
    let n = square_dim(a)?;
    let mut power_sums = Vec::with_capacity(n);
    let mut power = Matrix::identity(n);
    for _ in 0..n {
        power = &power * a;
        power_sums.push(power.trace()?);
    }
    // k·e_k = Σ_{i=1..k} (-1)^(i-1)·e_(k-i)·p_i
    let mut e = vec![T::one()];
    for k in 1..=n {
        let mut acc = T::zero();
        for i in 1..=k {
            let term = e[k - i].clone() * power_sums[i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        e.push(acc / T::from_i64(k as i64));
    }
    // coefficient of t^(n-k) is (-1)^k·e_k
    let coeffs = (0..=n)
        .map(|j| {
            let k = n - j;
            if k % 2 == 0 {
                e[k].clone()
            } else {
                -e[k].clone()
            }
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

/// Determinant of the Sylvester matrix of `p` and `q`.
pub fn resultant<T: Scalar>(p: &Polynomial<T>, q: &Polynomial<T>) -> Result<T> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let size = dp + dq;
    if size == 0 {
        return Ok(T::one());
    }
    let mut s: Matrix<T> = Matrix::zeros(size, size);
    for row in 0..dq {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            s[(row, row + j)] = c.clone();
        }
    }
    for row in 0..dp {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            s[(dq + row, row + j)] = c.clone();
        }
    }
    linalg::det(&s)
}

/// Default float threshold `1e-8·scale^(n+m)`, `scale` the largest entry.
pub fn default_resultant_tol<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> f64 {
    let scale = a.max_modulus().max(b.max_modulus());
    1e-8 * scale.powi((a.rows() + b.rows()) as i32)
}

/// Whether `A·X - X·B = C` has exactly one solution for every `C`, i.e. the
/// spectra of `A` and `B` are disjoint. `tol` applies to float kinds only.
pub fn sylvester_unique<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, tol: Option<f64>) -> Result<bool> {
    let res = resultant(&char_poly_from_traces(a)?, &char_poly_from_traces(b)?)?;
    if T::EXACT {
        Ok(!res.is_zero())
    } else {
        Ok(res.modulus() > tol.unwrap_or_else(|| default_resultant_tol(a, b)))
    }
}

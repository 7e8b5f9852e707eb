//! Matrix-unit systems `a_ij` with `a_ij·a_st = δ_js·a_it`, the algebra
//! embedding `Σ c_ij·a_ij` they induce, commutants, and sampled coefficient
//! subrings.
//!
//! Accessors take 0-based indices; reports use 1-based indices to match the
//! usual `E_12` notation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::intertwiner::intertwiner_basis;
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalar::{Rational, Scalar};

/// Relative tolerance for float relation checks.
pub const DEFAULT_UNIT_TOL: f64 = 1e-9;
pub const DEFAULT_SUBRING_DEPTH: usize = 3;

/// A square family of `N²` matrices of size `n`, indexed row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSystem<T> {
    big_n: usize,
    n: usize,
    units: Vec<Matrix<T>>,
}

fn family_size(len: usize) -> Result<usize> {
    if len == 0 {
        return Err(Error::Empty("unit family"));
    }
    let big_n = (len as f64).sqrt().round() as usize;
    if big_n * big_n != len {
        return Err(Error::NotASquareFamily(len));
    }
    Ok(big_n)
}

impl<T: Scalar> UnitSystem<T> {
    /// Wraps a family without checking the unit relations.
    pub fn new(units: Vec<Matrix<T>>) -> Result<Self> {
        let big_n = family_size(units.len())?;
        let n = units[0].rows();
        if let Some(m) = units.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::ShapeMismatch(format!(
                "unit of shape {}x{} in a family of {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(UnitSystem { big_n, n, units })
    }

    /// The standard units `E_ij` of `M_n`.
    pub fn standard(n: usize) -> Self {
        let units = (0..n * n).map(|k| Matrix::unit(n, k / n, k % n)).collect();
        UnitSystem { big_n: n, n, units }
    }

    /// `P·a_ij·P⁻¹` for every unit.
    pub fn conjugate(&self, p: &Matrix<T>, p_inv: &Matrix<T>) -> Self {
        UnitSystem {
            big_n: self.big_n,
            n: self.n,
            units: self.units.iter().map(|a| &(p * a) * p_inv).collect(),
        }
    }

    /// Number of indices `N`.
    pub fn order(&self) -> usize {
        self.big_n
    }

    /// Matrix size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn units(&self) -> &[Matrix<T>] {
        &self.units
    }

    pub fn get(&self, i: usize, j: usize) -> &Matrix<T> {
        &self.units[i * self.big_n + j]
    }

    fn abs_tol(&self, rel: f64) -> f64 {
        if T::EXACT {
            0.0
        } else {
            let scale = self.units.iter().map(Matrix::max_modulus).fold(0.0, f64::max);
            rel * scale.max(f64::MIN_POSITIVE)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EpsilonViolation<T> {
    /// `a_ij·a_st` differs from `δ_js·a_it` (1-based indices).
    Relation {
        i: usize,
        j: usize,
        s: usize,
        t: usize,
        expected: Matrix<T>,
        got: Matrix<T>,
    },
    /// `a_ij` vanishes (1-based indices).
    ZeroUnit { i: usize, j: usize },
}

/// Checks every product relation in `(i, j, s, t)` lexicographic order,
/// then that no unit is zero. `None` means the family is a unit system.
pub fn check_epsilon<T: Scalar>(
    system: &UnitSystem<T>,
    tol: Option<f64>,
) -> Option<EpsilonViolation<T>> {
    let big_n = system.order();
    let tol = system.abs_tol(tol.unwrap_or(DEFAULT_UNIT_TOL));
    let zero = Matrix::zeros(system.n(), system.n());
    for i in 0..big_n {
        for j in 0..big_n {
            for s in 0..big_n {
                for t in 0..big_n {
                    let got = system.get(i, j) * system.get(s, t);
                    let expected = if j == s { system.get(i, t) } else { &zero };
                    if !got.approx_eq(expected, tol) {
                        return Some(EpsilonViolation::Relation {
                            i: i + 1,
                            j: j + 1,
                            s: s + 1,
                            t: t + 1,
                            expected: expected.clone(),
                            got,
                        });
                    }
                }
            }
        }
    }
    (0..big_n * big_n)
        .find(|&k| system.units()[k].approx_eq(&zero, tol))
        .map(|k| EpsilonViolation::ZeroUnit {
            i: k / big_n + 1,
            j: k % big_n + 1,
        })
}

/// Whether `v` commutes with every unit.
pub fn check_delta<T: Scalar>(v: &Matrix<T>, system: &UnitSystem<T>, tol: Option<f64>) -> bool {
    let tol = system.abs_tol(tol.unwrap_or(DEFAULT_UNIT_TOL)) * v.max_modulus().max(1.0);
    system.units().iter().all(|a| v.commutes_with(a, tol))
}

/// `Σ c_ij·a_ij` for coefficients central relative to the system.
pub fn theta_embedding<T: Scalar>(
    system: &UnitSystem<T>,
    coeffs: &[Matrix<T>],
    tol: Option<f64>,
) -> Result<Matrix<T>> {
    let big_n = system.order();
    if coeffs.len() != big_n * big_n {
        return Err(Error::ShapeMismatch(format!(
            "{} coefficients for {} units",
            coeffs.len(),
            big_n * big_n
        )));
    }
    let n = system.n();
    let mut out = Matrix::zeros(n, n);
    for (k, (c, a)) in coeffs.iter().zip(system.units()).enumerate() {
        if c.rows() != n || c.cols() != n {
            return Err(Error::ShapeMismatch(format!("coefficient {} is not {n}x{n}", k + 1)));
        }
        if !check_delta(c, system, tol) {
            return Err(Error::NonCentralCoefficient {
                i: k / big_n + 1,
                j: k % big_n + 1,
            });
        }
        out = &out + &(c * a);
    }
    Ok(out)
}

/// Coefficient family `m_ij·I_n` for an `N×N` matrix `m`.
pub fn scalar_lift<T: Scalar>(m: &Matrix<T>, n: usize) -> Vec<Matrix<T>> {
    m.as_slice()
        .iter()
        .map(|c| Matrix::identity(n).scale(c))
        .collect()
}

/// Basis of `{v : v·s = s·v for all s}`; the full matrix algebra when the
/// set is empty.
pub fn commutant<T: Scalar>(set: &[Matrix<T>], n: usize) -> Result<Vec<Matrix<T>>> {
    if set.is_empty() {
        return Ok(UnitSystem::standard(n).units);
    }
    let tuple = MatrixTuple::with_default_star(set.to_vec())?;
    if tuple.n() != n {
        return Err(Error::ShapeMismatch(format!(
            "matrices are {0}x{0}, expected {n}x{n}",
            tuple.n()
        )));
    }
    Ok(intertwiner_basis(&tuple, &tuple, false)?.basis().to_vec())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubringReport {
    pub depth: usize,
    /// Distinct ring elements sampled (products of at most `depth` generators).
    pub sampled: usize,
    /// Distinct `(1,1)` entries seen, ascending.
    pub entries: Vec<Rational>,
    pub closure_violations: usize,
    pub reconstruction_failures: usize,
}

impl SubringReport {
    pub fn is_ok(&self) -> bool {
        self.closure_violations == 0 && self.reconstruction_failures == 0
    }
}

/// Samples the ring generated by `generators` and checks that the `(1,1)`
/// entries of its elements are closed under `+` and `×`, and that every
/// sampled `X` equals `Σ E_i1·Y_ij·E_1j` with `Y_ij = E_1i·X·E_j1`.
pub fn extract_subring_coefficients(
    generators: &[Matrix<Rational>],
    depth: Option<usize>,
) -> Result<SubringReport> {
    let depth = depth.unwrap_or(DEFAULT_SUBRING_DEPTH);
    let first = generators.first().ok_or(Error::Empty("generators"))?;
    let n = first.rows();
    if generators.iter().any(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::ShapeMismatch("generators must share a square shape".into()));
    }
    let e = |i: usize, j: usize| Matrix::<Rational>::unit(n, i, j);
    if !(0..n * n).all(|k| generators.contains(&e(k / n, k % n))) {
        return Err(Error::MissingStandardUnits);
    }

    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut sample: Vec<Matrix<Rational>> = Vec::new();
    let mut layer: Vec<Matrix<Rational>> = Vec::new();
    for g in generators {
        if seen.insert(g.as_slice().to_vec()) {
            sample.push(g.clone());
            layer.push(g.clone());
        }
    }
    for _ in 1..depth {
        let mut next = Vec::new();
        for w in &layer {
            for g in generators {
                let p = w * g;
                if seen.insert(p.as_slice().to_vec()) {
                    sample.push(p.clone());
                    next.push(p);
                }
            }
        }
        layer = next;
    }

    let e11 = e(0, 0);
    let corner = |m: &Matrix<Rational>| m[(0, 0)].clone();
    let mut entries: BTreeSet<Rational> = sample.iter().map(corner).collect();
    let mut closure_violations = 0;
    for y in &sample {
        for z in &sample {
            let (a, b) = (corner(y), corner(z));
            let sum = y + z;
            let prod = &(&(y * &e11) * z) * &e11;
            if corner(&sum) != a.clone() + b.clone() || corner(&prod) != a * b {
                closure_violations += 1;
            }
            entries.insert(corner(&sum));
            entries.insert(corner(&prod));
        }
    }

    let reconstruction_failures = sample
        .iter()
        .filter(|x| {
            let mut rebuilt = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let y = &(&e(0, i) * x) * &e(j, 0);
                    rebuilt = &rebuilt + &(&(&e(i, 0) * &y) * &e(0, j));
                }
            }
            &rebuilt != *x
        })
        .count();

    Ok(SubringReport {
        depth,
        sampled: sample.len(),
        entries: entries.into_iter().collect(),
        closure_violations,
        reconstruction_failures,
    })
}

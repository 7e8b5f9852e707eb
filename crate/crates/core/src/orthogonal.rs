//! Orthogonal (unitary) similarity: `O·X_i·O* = Y_i` with `O·O* = I`.
//!
//! Construction: find an invertible `P` with `P·X_i = Y_i·P` and
//! `P·X_i* = Y_i*·P`. Taking stars of the second family gives
//! `X_i·P* = P*·Y_i`, so `P·P*·Y_i = P·X_i·P* = Y_i·P·P*`; likewise `P·P*`
//! commutes with every `Y_i*`. Its positive square root `H` is a polynomial
//! in `P·P*` and commutes with the same matrices. With `O = H⁻¹·P`:
//!
//! * `O·O* = H⁻¹·P·P*·H⁻¹ = H⁻¹·H²·H⁻¹ = I`
//! * `O·X_i·O* = H⁻¹·P·X_i·P*·H⁻¹ = H⁻¹·Y_i·P·P*·H⁻¹ = H⁻¹·Y_i·H = Y_i`

use crate::error::{Error, Result};
use crate::intertwiner::{
    find_invertible, intertwiner_basis, Combination, IntertwinerBasis, SearchConfig, WITNESS_TOL,
};
use crate::linalg::{self, DEFAULT_RANK_TOL};
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalar::{rational_sqrt, Complex, FloatScalar, Rational, Scalar, ScalarKind, StarMode};
use crate::words::{fingerprint, fingerprints_equal, Comparison, Word};

pub const DEFAULT_JACOBI_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
/// Relative eigenvalue floor for positive definiteness in witness building.
const SPD_TOL: f64 = 1e-14;
/// Degree of the trace filter run before the intertwiner search.
const FILTER_DEGREE: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<T> {
    /// Orthonormal eigenvectors as columns.
    pub vectors: Matrix<T>,
    /// Ascending real eigenvalues.
    pub values: Vec<f64>,
}

fn hermitian_deviation<T: FloatScalar>(s: &Matrix<T>) -> f64 {
    s.max_abs_diff(&s.star(StarMode::ConjugateTranspose))
}

/// Cyclic Jacobi eigen-decomposition of a real symmetric or complex
/// Hermitian matrix.
pub fn jacobi_eig<T: FloatScalar>(s: &Matrix<T>, tol: f64, max_sweeps: usize) -> Result<Eigen<T>> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    let n = s.rows();
    let deviation = hermitian_deviation(s);
    if deviation > tol.max(1e-12) * s.max_modulus().max(1.0) {
        return Err(Error::NotSymmetric { deviation });
    }
    let mut a = s.clone();
    let mut v = Matrix::<T>::identity(n);
    let norm = s.frobenius_norm();
    let mut converged = false;
    for _ in 0..=max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].modulus().powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= tol * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: max_sweeps });
    }
    let mut order: Vec<(f64, usize)> = (0..n).map(|i| (a[(i, i)].re(), i)).collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j].1)]);
    Ok(Eigen {
        vectors,
        values: order.into_iter().map(|(l, _)| l).collect(),
    })
}

/// One Jacobi rotation zeroing `a[p][q]`: `A ← G*·A·G`, `V ← V·G`.
fn rotate<T: FloatScalar>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let abs = apq.modulus();
    if abs == 0.0 {
        return;
    }
    // Phase shift on q makes the pivot real, then a real rotation kills it.
    let u = apq.phase().conj();
    let theta = (a[(q, q)].re() - a[(p, p)].re()) / (2.0 * abs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let g_pp = T::from_real(c);
    let g_pq = T::from_real(s);
    let g_qp = u * T::from_real(-s);
    let g_qq = u * T::from_real(c);
    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();
    a[(p, p)] = T::from_real(a[(p, p)].re());
    a[(q, q)] = T::from_real(a[(q, q)].re());
}

/// Positive square root `H = V·diag(√λ)·V*` of a positive definite matrix.
pub fn sqrt_spd<T: FloatScalar>(s: &Matrix<T>, tol: f64) -> Result<Matrix<T>> {
    let eig = jacobi_eig(s, DEFAULT_JACOBI_TOL, DEFAULT_MAX_SWEEPS)?;
    let max = eig.values.last().copied().unwrap_or(0.0);
    let min = eig.values.first().copied().unwrap_or(0.0);
    if max <= 0.0 || min <= tol * max {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    let roots: Vec<T> = eig.values.iter().map(|l| T::from_real(l.sqrt())).collect();
    let v = &eig.vectors;
    let scaled = Matrix::from_fn(v.rows(), v.cols(), |i, j| v[(i, j)] * roots[j]);
    Ok(&scaled * &v.star(StarMode::ConjugateTranspose))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalWitness<T> {
    pub o: Matrix<T>,
    /// `max |O·O* - I|`
    pub residual_orth: f64,
    /// `max_i max |O·X_i·O* - Y_i|`
    pub residual_conj: f64,
}

fn residuals<T: Scalar>(o: &Matrix<T>, x: &MatrixTuple<T>, y: &MatrixTuple<T>) -> (f64, f64) {
    let os = o.star(x.star_mode());
    let orth = (o * &os).max_abs_diff(&Matrix::identity(o.rows()));
    let conj = x
        .iter()
        .zip(y.iter())
        .map(|(xi, yi)| (&(o * xi) * &os).max_abs_diff(yi))
        .fold(0.0, f64::max);
    (orth, conj)
}

/// Float tolerance for `residual_conj`, scaled to the target tuple.
pub fn conj_tolerance<T: Scalar>(y: &MatrixTuple<T>) -> f64 {
    WITNESS_TOL * y.max_modulus().max(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrthogonalVerdict<T> {
    Equivalent(OrthogonalWitness<T>),
    NotEquivalent,
    /// Monte Carlo found no invertible star-intertwiner; not a proof.
    NotEquivalentProbable,
    /// Orthogonally equivalent over the reals (certified by `intertwiner`),
    /// but no rational witness was found; `float_witness` approximates one.
    ExactWitnessUnavailable {
        intertwiner: Matrix<T>,
        float_witness: OrthogonalWitness<f64>,
    },
}

impl<T> OrthogonalVerdict<T> {
    pub fn is_equivalent(&self) -> bool {
        matches!(
            self,
            OrthogonalVerdict::Equivalent(_) | OrthogonalVerdict::ExactWitnessUnavailable { .. }
        )
    }

    pub fn label(&self) -> &'static str {
        match self {
            OrthogonalVerdict::Equivalent(_) | OrthogonalVerdict::ExactWitnessUnavailable { .. } => {
                "similar"
            }
            OrthogonalVerdict::NotEquivalent => "not-similar",
            OrthogonalVerdict::NotEquivalentProbable => "not-similar-probable",
        }
    }
}

/// Turns an invertible star-intertwiner into an orthogonal witness.
pub trait Orthogonalize: Combination {
    fn orthogonalize(
        p: &Matrix<Self>,
        x: &MatrixTuple<Self>,
        y: &MatrixTuple<Self>,
    ) -> Result<OrthogonalVerdict<Self>>;
}

fn float_witness<T: FloatScalar>(
    p: &Matrix<T>,
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
) -> Result<OrthogonalWitness<T>> {
    if T::KIND == ScalarKind::Complex128 && x.star_mode() == StarMode::Transpose {
        return Err(Error::UnsupportedStarMode);
    }
    let s = p.max_modulus();
    let p = p.scale(&T::from_real(1.0 / s));
    let pps = &p * &p.star(StarMode::ConjugateTranspose);
    let h = sqrt_spd(&pps, SPD_TOL)?;
    let o = &linalg::inverse(&h, DEFAULT_RANK_TOL)? * &p;
    let (residual_orth, residual_conj) = residuals(&o, x, y);
    if residual_orth > WITNESS_TOL || residual_conj > conj_tolerance(y) {
        return Err(Error::WitnessVerification(format!(
            "orthogonality residual {residual_orth:e}, conjugation residual {residual_conj:e}"
        )));
    }
    Ok(OrthogonalWitness {
        o,
        residual_orth,
        residual_conj,
    })
}

impl Orthogonalize for f64 {
    fn orthogonalize(
        p: &Matrix<f64>,
        x: &MatrixTuple<f64>,
        y: &MatrixTuple<f64>,
    ) -> Result<OrthogonalVerdict<f64>> {
        float_witness(p, x, y).map(OrthogonalVerdict::Equivalent)
    }
}

impl Orthogonalize for Complex {
    fn orthogonalize(
        p: &Matrix<Complex>,
        x: &MatrixTuple<Complex>,
        y: &MatrixTuple<Complex>,
    ) -> Result<OrthogonalVerdict<Complex>> {
        float_witness(p, x, y).map(OrthogonalVerdict::Equivalent)
    }
}

/// `P / √λ` when `P·Pᵗ = λ·I` with `λ` a rational square.
fn exact_orthogonal(p: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let ppt = p * &p.transpose();
    let lambda = ppt[(0, 0)].clone();
    if ppt != Matrix::identity(p.rows()).scale(&lambda) {
        return None;
    }
    let root = rational_sqrt(&lambda)?;
    Some(p.scale(&(Rational::from_i64(1) / root)))
}

impl Orthogonalize for Rational {
    fn orthogonalize(
        p: &Matrix<Rational>,
        x: &MatrixTuple<Rational>,
        y: &MatrixTuple<Rational>,
    ) -> Result<OrthogonalVerdict<Rational>> {
        if let Some(o) = exact_orthogonal(p) {
            let (residual_orth, residual_conj) = residuals(&o, x, y);
            if residual_orth != 0.0 || residual_conj != 0.0 {
                return Err(Error::WitnessVerification("exact witness residual".into()));
            }
            return Ok(OrthogonalVerdict::Equivalent(OrthogonalWitness {
                o,
                residual_orth,
                residual_conj,
            }));
        }
        let to_f = |m: &Matrix<Rational>| m.map(|q| q.to_complex().re);
        let xf = x.map(StarMode::Transpose, |q| q.to_complex().re)?;
        let yf = y.map(StarMode::Transpose, |q| q.to_complex().re)?;
        let float_witness = float_witness(&to_f(p), &xf, &yf)?;
        Ok(OrthogonalVerdict::ExactWitnessUnavailable {
            intertwiner: p.clone(),
            float_witness,
        })
    }
}

/// Tolerance for comparing float fingerprints up to degree `degree`.
pub fn fingerprint_tolerance<T: Scalar>(x: &MatrixTuple<T>, y: &MatrixTuple<T>, degree: usize) -> f64 {
    let scale = x.max_modulus().max(y.max_modulus()).max(1.0);
    1e-8 * (x.n() as f64) * scale.powi(degree as i32)
}

/// Outcome of the invertible star-intertwiner search.
#[derive(Debug, Clone, PartialEq)]
pub enum StarSearch<T> {
    Found(Matrix<T>),
    /// The quick trace filter found a differing word.
    FilteredOut(Word),
    Absent,
    AbsentProbable,
}

/// Searches for an invertible `P` intertwining both `X, Y` and `X*, Y*`.
pub fn star_intertwiner<T: Combination>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    config: &SearchConfig,
) -> Result<StarSearch<T>> {
    x.check_compatible(y)?;
    let fx = fingerprint(x, FILTER_DEGREE, true)?;
    let fy = fingerprint(y, FILTER_DEGREE, true)?;
    if let Comparison::Differs { word, .. } =
        fingerprints_equal(&fx, &fy, fingerprint_tolerance(x, y, FILTER_DEGREE))?
    {
        return Ok(StarSearch::FilteredOut(word));
    }
    let basis = intertwiner_basis(x, y, true)?;
    if basis.dim() == 0 {
        return Ok(StarSearch::Absent);
    }
    if T::EXACT {
        if let Some(p) = preferred_candidate(&basis, x, y) {
            return Ok(StarSearch::Found(p));
        }
    }
    Ok(match find_invertible(&basis, config)? {
        Some(p) => StarSearch::Found(p),
        None if config.is_deterministic() => StarSearch::Absent,
        None => StarSearch::AbsentProbable,
    })
}

/// Identity or a single basis element that is already a scaled orthogonal
/// matrix; these give exact rational witnesses.
fn preferred_candidate<T: Scalar>(
    basis: &IntertwinerBasis<T>,
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
) -> Option<Matrix<T>> {
    let n = basis.n();
    let identity = (x == y).then(|| Matrix::identity(n));
    identity
        .into_iter()
        .chain(basis.basis().iter().cloned())
        .find(|p| {
            let pps = p * &p.star(x.star_mode());
            let lambda = pps[(0, 0)].clone();
            !lambda.is_zero() && pps == Matrix::identity(n).scale(&lambda)
        })
}

/// Decides orthogonal (unitary) similarity and builds the witness `O`.
pub fn orthogonal_witness<T: Orthogonalize>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    config: &SearchConfig,
) -> Result<OrthogonalVerdict<T>> {
    match star_intertwiner(x, y, config)? {
        StarSearch::Found(p) => T::orthogonalize(&p, x, y),
        StarSearch::FilteredOut(_) | StarSearch::Absent => Ok(OrthogonalVerdict::NotEquivalent),
        StarSearch::AbsentProbable => Ok(OrthogonalVerdict::NotEquivalentProbable),
    }
}

/// Fingerprint equality with starred letters at degree `degree`
/// (default `n²`). Necessary for orthogonal similarity at every degree.
pub fn specht_equivalent<T: Scalar>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    degree: Option<usize>,
    tol: Option<f64>,
) -> Result<Comparison<T>> {
    x.check_compatible(y)?;
    let degree = degree.unwrap_or(x.n() * x.n());
    let tol = tol.unwrap_or_else(|| fingerprint_tolerance(x, y, degree));
    let fx = fingerprint(x, degree, true)?;
    let fy = fingerprint(y, degree, true)?;
    fingerprints_equal(&fx, &fy, tol)
}

#[derive(Debug, Clone, PartialEq)]
pub enum FingerprintStatus {
    Equal,
    Differs(Word),
    SkippedBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    Exists,
    Absent,
    AbsentProbable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpechtReport {
    pub degree: usize,
    pub fingerprints: FingerprintStatus,
    pub witness: WitnessStatus,
    /// Necessity (witness ⟹ equal fingerprints) and, at `degree ≥ n²`,
    /// sufficiency (equal fingerprints ⟹ witness) both hold.
    pub consistent: bool,
    /// Sufficiency failed for complex matrices under the plain transpose,
    /// where equal trace words do not force orthogonal similarity.
    pub transpose_failure: bool,
}

pub fn specht_property_check<T: Combination>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    degree: usize,
    config: &SearchConfig,
) -> Result<SpechtReport> {
    let fingerprints = match specht_equivalent(x, y, Some(degree), None) {
        Ok(Comparison::Equal) => FingerprintStatus::Equal,
        Ok(Comparison::Differs { word, .. }) => FingerprintStatus::Differs(word),
        Err(Error::EnumerationBudget { .. }) => FingerprintStatus::SkippedBudget,
        Err(e) => return Err(e),
    };
    let witness = match star_intertwiner(x, y, config)? {
        StarSearch::Found(_) => WitnessStatus::Exists,
        StarSearch::FilteredOut(_) | StarSearch::Absent => WitnessStatus::Absent,
        StarSearch::AbsentProbable => WitnessStatus::AbsentProbable,
    };
    let necessity = witness != WitnessStatus::Exists
        || matches!(fingerprints, FingerprintStatus::Equal | FingerprintStatus::SkippedBudget);
    let sufficiency = degree < x.n() * x.n()
        || fingerprints != FingerprintStatus::Equal
        || witness == WitnessStatus::Exists;
    let transpose_failure =
        !sufficiency && T::KIND == ScalarKind::Complex128 && x.star_mode() == StarMode::Transpose;
    Ok(SpechtReport {
        degree,
        fingerprints,
        witness,
        consistent: necessity && sufficiency,
        transpose_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_traits::Zero;

    fn f(rows: &[&[f64]]) -> Matrix<f64> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn jacobi_examples() {
        let e = jacobi_eig(&Matrix::<f64>::identity(3), 1e-14, 100).unwrap();
        assert_eq!(e.values, vec![1.0; 3]);

        let s = f(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let e = jacobi_eig(&s, 1e-14, 100).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] - 3.0).abs() < 1e-14);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.vectors[(0, 0)].abs() - r).abs() < 1e-14);
        assert!((e.vectors[(0, 0)] + e.vectors[(1, 0)]).abs() < 1e-14);
        assert!((e.vectors[(0, 1)] - e.vectors[(1, 1)]).abs() < 1e-14);

        let e = jacobi_eig(&f(&[&[4.0, 0.0], &[0.0, 9.0]]), 1e-14, 100).unwrap();
        assert_eq!(e.values, vec![4.0, 9.0]);
        assert_eq!(e.vectors.max_abs_diff(&Matrix::identity(2)), 0.0);
    }

    #[test]
    fn jacobi_rejects_asymmetric() {
        let s = f(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(jacobi_eig(&s, 1e-14, 100), Err(Error::NotSymmetric { .. })));
        let s = f(&[&[1.0, 2.0], &[2.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(jacobi_eig(&s, 1e-14, 100), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn jacobi_reports_non_convergence() {
        let s = f(&[&[1.0, 2.0, 3.0], &[2.0, 5.0, 4.0], &[3.0, 4.0, 9.0]]);
        assert_eq!(jacobi_eig(&s, 1e-14, 0), Err(Error::NoConvergence { sweeps: 0 }));
    }

    #[test]
    fn jacobi_hermitian() {
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        let s = Matrix::from_rows(vec![vec![one * 2.0, i], vec![-i, one * 2.0]]).unwrap();
        let e = jacobi_eig(&s, 1e-14, 100).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-13 && (e.values[1] - 3.0).abs() < 1e-13);
        let v = &e.vectors;
        let vs = v.star(StarMode::ConjugateTranspose);
        assert!((v * &vs).max_abs_diff(&Matrix::identity(2)) < 1e-13);
        let d = &(&vs * &s) * v;
        assert!(d[(0, 1)].norm() < 1e-13);
    }

    #[test]
    fn sqrt_examples() {
        let i = Matrix::<f64>::identity(3);
        assert!(sqrt_spd(&i, 1e-12).unwrap().max_abs_diff(&i) < 1e-15);
        let h = sqrt_spd(&f(&[&[4.0, 0.0], &[0.0, 9.0]]), 1e-12).unwrap();
        assert!(h.max_abs_diff(&f(&[&[2.0, 0.0], &[0.0, 3.0]])) < 1e-15);
        let s = f(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let h = sqrt_spd(&s, 1e-12).unwrap();
        assert!((&h * &h).max_abs_diff(&s) < 1e-12);
        assert!(matches!(
            sqrt_spd(&f(&[&[1.0, 0.0], &[0.0, -1.0]]), 1e-12),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            sqrt_spd(&f(&[&[1.0, 0.0], &[0.0, 0.0]]), 1e-12),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn witness_identity() {
        let x = MatrixTuple::single(Matrix::<f64>::identity(2)).unwrap();
        match orthogonal_witness(&x, &x, &SearchConfig::monte_carlo(0)).unwrap() {
            OrthogonalVerdict::Equivalent(w) => {
                assert!(w.residual_orth <= 1e-8 && w.residual_conj <= 1e-8);
            }
            v => panic!("unexpected {v:?}"),
        }
        let q = MatrixTuple::single(Matrix::<Rational>::identity(2)).unwrap();
        match orthogonal_witness(&q, &q, &SearchConfig::monte_carlo(0)).unwrap() {
            OrthogonalVerdict::Equivalent(w) => assert_eq!(w.o, Matrix::identity(2)),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn witness_for_rotated_diagonal() {
        let x = MatrixTuple::single(f(&[&[1.0, 0.0], &[0.0, 2.0]])).unwrap();
        let y = MatrixTuple::single(f(&[&[1.5, 0.5], &[0.5, 1.5]])).unwrap();
        match orthogonal_witness(&x, &y, &SearchConfig::monte_carlo(0)).unwrap() {
            OrthogonalVerdict::Equivalent(w) => {
                assert!(w.residual_orth <= 1e-10 && w.residual_conj <= 1e-10);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn nilpotent_pair_is_filtered() {
        let mut a = Matrix::<Rational>::zeros(4, 4);
        a[(0, 1)] = rational(1, 1);
        a[(2, 3)] = rational(1, 1);
        let x = MatrixTuple::single(a).unwrap();
        let y = MatrixTuple::single(Matrix::unit(4, 0, 1)).unwrap();
        let cfg = SearchConfig::deterministic(0);
        assert_eq!(orthogonal_witness(&x, &y, &cfg).unwrap(), OrthogonalVerdict::NotEquivalent);
        assert_eq!(
            star_intertwiner(&x, &y, &cfg).unwrap(),
            StarSearch::FilteredOut("x1 x1*".parse().unwrap())
        );
    }

    #[test]
    fn rational_exact_and_float_fallback() {
        // Pythagorean rotation gives an exact rational witness.
        let o = Matrix::<Rational>::from_rows(vec![
            vec![rational(3, 5), rational(-4, 5)],
            vec![rational(4, 5), rational(3, 5)],
        ])
        .unwrap();
        let x = MatrixTuple::single(Matrix::from_i64(&[&[1, 2], &[0, 3]])).unwrap();
        let y = x.sandwich(&o, &o.transpose());
        match orthogonal_witness(&x, &y, &SearchConfig::monte_carlo(5)).unwrap() {
            OrthogonalVerdict::Equivalent(w) => {
                assert_eq!(w.residual_orth, 0.0);
                assert_eq!(w.residual_conj, 0.0);
            }
            v => panic!("unexpected {v:?}"),
        }
        // Rotation by 45 degrees of diag(1, 2): the witness needs √2.
        let x = MatrixTuple::single(Matrix::<Rational>::diag(&[rational(1, 1), rational(2, 1)])).unwrap();
        let y = MatrixTuple::single(Matrix::from_rows(vec![
            vec![rational(3, 2), rational(1, 2)],
            vec![rational(1, 2), rational(3, 2)],
        ])
        .unwrap())
        .unwrap();
        match orthogonal_witness(&x, &y, &SearchConfig::monte_carlo(5)).unwrap() {
            OrthogonalVerdict::ExactWitnessUnavailable { intertwiner, float_witness } => {
                assert!(!linalg::det(&intertwiner).unwrap().is_zero());
                assert!(float_witness.residual_orth < 1e-10);
                assert!(float_witness.residual_conj < 1e-10);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn complex_transpose_mode_is_unsupported_for_witnesses() {
        let one = Complex::new(1.0, 0.0);
        let x = MatrixTuple::new(vec![Matrix::diag(&[one, one * 2.0])], StarMode::Transpose).unwrap();
        assert_eq!(
            orthogonal_witness(&x, &x, &SearchConfig::monte_carlo(0)),
            Err(Error::UnsupportedStarMode)
        );
    }

    #[test]
    fn unitary_witness() {
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        let x = MatrixTuple::with_default_star(vec![Matrix::from_rows(vec![
            vec![one, i * 2.0],
            vec![one * 0.5, -one],
        ])
        .unwrap()])
        .unwrap();
        // Unitary U = diag(1, i) times a rotation.
        let c = 0.6;
        let s = 0.8;
        let u = &Matrix::diag(&[one, i]) * &Matrix::from_rows(vec![vec![one * c, -one * s], vec![one * s, one * c]]).unwrap();
        let y = x.sandwich(&u, &u.star(StarMode::ConjugateTranspose));
        match orthogonal_witness(&x, &y, &SearchConfig::monte_carlo(2)).unwrap() {
            OrthogonalVerdict::Equivalent(w) => {
                assert!(w.residual_orth < 1e-10 && w.residual_conj < 1e-10);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn specht_examples() {
        let d = |v: &[i64]| {
            MatrixTuple::single(Matrix::<Rational>::diag(
                &v.iter().map(|&k| rational(k, 1)).collect::<Vec<_>>(),
            ))
            .unwrap()
        };
        let x = d(&[1, 2, 2]);
        let y = d(&[1, 1, 2]);
        assert!(specht_equivalent(&x, &x, None, None).unwrap().is_equal());
        assert_eq!(
            specht_equivalent(&x, &y, Some(1), None).unwrap(),
            Comparison::Differs {
                word: "x1".parse().unwrap(),
                left: rational(5, 1),
                right: rational(4, 1)
            }
        );
        let report = specht_property_check(&x, &y, 1, &SearchConfig::deterministic(0)).unwrap();
        assert_eq!(report.fingerprints, FingerprintStatus::Differs("x1".parse().unwrap()));
        assert_eq!(report.witness, WitnessStatus::Absent);
        assert!(report.consistent && !report.transpose_failure);
    }
}

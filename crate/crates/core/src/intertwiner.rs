//! Intertwiner spaces `{P : P·X_i = Y_i·P}` and the search for an invertible
//! element in them.
//!
//! Witness convention: `P·X_i = Y_i·P`, i.e. `Y_i = P·X_i·P⁻¹`.
//!
//! The determinant restricted to a k-dimensional intertwiner space is a
//! polynomial of total degree at most `n` in the k coordinates. Random integer
//! coordinates in `[-S, S]` therefore hit a nonzero value with probability at
//! least `1 - n/(2S+1)` per trial when one exists (Schwartz–Zippel), and
//! vanishing on the whole grid `{0..n}^k` proves it is identically zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{self, bareiss_det, small_det_is_zero, DEFAULT_RANK_TOL};
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalar::{Complex, Rational, Scalar};

pub const DEFAULT_SAMPLE_BOUND: u64 = 1_000_000;
pub const DEFAULT_TRIALS: u32 = 20;
pub const DEFAULT_GRID_BUDGET: u128 = 10_000_000;
/// Random draws tried before a deterministic grid scan.
const GRID_PROBES: u32 = 8;
/// Residual tolerance for float witnesses, relative to the tuple scale.
pub const WITNESS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct IntertwinerBasis<T> {
    n: usize,
    with_star: bool,
    basis: Vec<Matrix<T>>,
}

impl<T: Scalar> IntertwinerBasis<T> {
    /// Wraps an arbitrary family of n×n matrices, e.g. for testing the search.
    pub fn from_matrices(n: usize, basis: Vec<Matrix<T>>) -> Result<Self> {
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::ShapeMismatch(format!("basis elements must be {n}x{n}")));
        }
        Ok(IntertwinerBasis {
            n,
            with_star: false,
            basis,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn with_star(&self) -> bool {
        self.with_star
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    pub fn combine(&self, coeffs: &[T]) -> Matrix<T> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = Matrix::zeros(self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            acc = &acc + &b.scale(c);
        }
        acc
    }
}

/// Pairs `(A, B)` whose equations `P·A = B·P` define the space.
fn equation_pairs<T: Scalar>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    with_star: bool,
) -> Vec<(Matrix<T>, Matrix<T>)> {
    let mut pairs: Vec<_> = x.iter().cloned().zip(y.iter().cloned()).collect();
    if with_star {
        let mode = x.star_mode();
        pairs.extend(x.iter().zip(y.iter()).map(|(a, b)| (a.star(mode), b.star(mode))));
    }
    pairs
}

pub fn intertwiner_basis<T: Scalar>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    with_star: bool,
) -> Result<IntertwinerBasis<T>> {
    intertwiner_basis_tol(x, y, with_star, DEFAULT_RANK_TOL)
}

pub fn intertwiner_basis_tol<T: Scalar>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    with_star: bool,
    tol: f64,
) -> Result<IntertwinerBasis<T>> {
    x.check_compatible(y)?;
    let n = x.n();
    let pairs = equation_pairs(x, y, with_star);
    let nn = n * n;
    let mut system: Matrix<T> = Matrix::zeros(pairs.len() * nn, nn);
    for (e, (a, b)) in pairs.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let row = e * nn + r * n + c;
                // (P·A - B·P)[r][c] = Σ_k P[r][k]·A[k][c] - Σ_k B[r][k]·P[k][c]
                for k in 0..n {
                    let slot = &mut system[(row, r * n + k)];
                    *slot = slot.clone() + a[(k, c)].clone();
                    let slot = &mut system[(row, k * n + c)];
                    *slot = slot.clone() - b[(r, k)].clone();
                }
            }
        }
    }
    let basis = linalg::nullspace(&system, tol)
        .into_iter()
        .map(|v| {
            let m = Matrix::from_vec(n, n, v.into_vec()).expect("n*n unknowns");
            if T::EXACT {
                m
            } else {
                normalized(&m)
            }
        })
        .collect();
    Ok(IntertwinerBasis {
        n,
        with_star,
        basis,
    })
}

/// Float matrices rescaled so the largest entry has modulus one.
fn normalized<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let s = m.max_modulus();
    if s == 0.0 {
        m.clone()
    } else {
        m.scale(&T::from_f64(1.0 / s))
    }
}

/// Largest entry of `P·A - B·P` over the defining equations.
pub fn intertwining_residual<T: Scalar>(
    p: &Matrix<T>,
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    with_star: bool,
) -> f64 {
    equation_pairs(x, y, with_star)
        .iter()
        .map(|(a, b)| (p * a).max_abs_diff(&(b * p)))
        .fold(0.0, f64::max)
}

fn intertwines<T: Scalar>(
    p: &Matrix<T>,
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    with_star: bool,
) -> bool {
    if T::EXACT {
        equation_pairs(x, y, with_star)
            .iter()
            .all(|(a, b)| p * a == b * p)
    } else {
        let scale = x.max_modulus().max(y.max_modulus()).max(1.0) * p.max_modulus().max(1.0);
        intertwining_residual(p, x, y, with_star) <= WITNESS_TOL * scale
    }
}

/// Integer combinations of a basis, specialised per scalar kind.
pub trait Combination: Scalar {
    type Prepared: Send + Sync;

    fn prepare(basis: &[Matrix<Self>]) -> Self::Prepared;

    /// `Σ coeffs_j · B_j` if that matrix is invertible.
    fn invertible_combination(prep: &Self::Prepared, coeffs: &[i64]) -> Option<Matrix<Self>>;
}

/// Rational basis rescaled to integer matrices (same span).
pub struct IntegerLattice {
    n: usize,
    big: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i128>>>,
}

impl Combination for Rational {
    type Prepared = IntegerLattice;

    fn prepare(basis: &[Matrix<Rational>]) -> IntegerLattice {
        let n = basis.first().map_or(0, Matrix::rows);
        let big: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|b| {
                let l = b
                    .as_slice()
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                b.as_slice()
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect();
        let small = big
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        IntegerLattice { n, big, small }
    }

    fn invertible_combination(prep: &IntegerLattice, coeffs: &[i64]) -> Option<Matrix<Rational>> {
        let nn = prep.n * prep.n;
        let small_combo = prep.small.as_ref().and_then(|small| {
            let mut acc = vec![0i128; nn];
            for (c, b) in coeffs.iter().zip(small) {
                let c = i128::from(*c);
                if c == 0 {
                    continue;
                }
                for (slot, v) in acc.iter_mut().zip(b) {
                    *slot = slot.checked_add(c.checked_mul(*v)?)?;
                }
            }
            Some(acc)
        });
        let entries: Vec<BigInt> = match small_combo {
            Some(acc) => {
                if small_det_is_zero(&acc, prep.n) {
                    return None;
                }
                acc.into_iter().map(BigInt::from).collect()
            }
            None => {
                let mut acc = vec![BigInt::zero(); nn];
                for (c, b) in coeffs.iter().zip(&prep.big) {
                    if *c == 0 {
                        continue;
                    }
                    let c = BigInt::from(*c);
                    for (slot, v) in acc.iter_mut().zip(b) {
                        *slot += &c * v;
                    }
                }
                let rows = acc.chunks(prep.n).map(<[BigInt]>::to_vec).collect();
                if bareiss_det(rows).is_zero() {
                    return None;
                }
                acc
            }
        };
        Some(
            Matrix::from_vec(prep.n, prep.n, entries.into_iter().map(Rational::from_integer).collect())
                .expect("n*n entries"),
        )
    }
}

macro_rules! float_combination {
    ($t:ty) => {
        impl Combination for $t {
            type Prepared = Vec<Matrix<$t>>;

            fn prepare(basis: &[Matrix<$t>]) -> Vec<Matrix<$t>> {
                basis.to_vec()
            }

            fn invertible_combination(prep: &Vec<Matrix<$t>>, coeffs: &[i64]) -> Option<Matrix<$t>> {
                let n = prep.first()?.rows();
                let mut acc = Matrix::<$t>::zeros(n, n);
                for (c, b) in coeffs.iter().zip(prep) {
                    if *c != 0 {
                        acc = &acc + &b.scale(&<$t as Scalar>::from_i64(*c));
                    }
                }
                (linalg::rank(&acc, DEFAULT_RANK_TOL) == n).then_some(acc)
            }
        }
    };
}

float_combination!(f64);
float_combination!(Complex);

/// Parameters of the invertible-element search. `trials == 0` selects the
/// deterministic grid scan, whose negative answers are proofs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: u32,
    pub sample_bound: u64,
    pub grid_budget: u128,
    pub exec: Execution,
}

impl SearchConfig {
    pub fn monte_carlo(seed: u64) -> Self {
        SearchConfig {
            seed,
            trials: DEFAULT_TRIALS,
            sample_bound: DEFAULT_SAMPLE_BOUND,
            grid_budget: DEFAULT_GRID_BUDGET,
            exec: Execution::default(),
        }
    }

    pub fn deterministic(seed: u64) -> Self {
        SearchConfig {
            trials: 0,
            ..SearchConfig::monte_carlo(seed)
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.trials == 0
    }

    pub fn with_exec(self, exec: Execution) -> Self {
        SearchConfig { exec, ..self }
    }
}

/// Coefficients for trial `t`: ChaCha stream `t` of the seed, so each trial is
/// reproducible on its own.
fn trial_coeffs(seed: u64, trial: u64, k: usize, bound: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let b = bound.min(i64::MAX as u64 / 2) as i64;
    (0..k).map(|_| rng.gen_range(-b..=b)).collect()
}

fn random_search<T: Combination>(
    prep: &T::Prepared,
    k: usize,
    seed: u64,
    trials: u32,
    bound: u64,
    exec: Execution,
) -> Option<Matrix<T>> {
    exec.find_first(u64::from(trials), |t| {
        T::invertible_combination(prep, &trial_coeffs(seed, t, k, bound))
    })
}

pub fn find_invertible<T: Combination>(
    basis: &IntertwinerBasis<T>,
    config: &SearchConfig,
) -> Result<Option<Matrix<T>>> {
    let k = basis.dim();
    if k == 0 {
        return Ok(None);
    }
    let prep = T::prepare(basis.basis());
    let bound = config.sample_bound.max(1);
    if !config.is_deterministic() {
        return Ok(random_search::<T>(
            &prep,
            k,
            config.seed,
            config.trials,
            bound,
            config.exec,
        ));
    }
    // A successful probe is as good as a grid hit and skips the budget check.
    if let Some(p) = random_search::<T>(&prep, k, config.seed, GRID_PROBES, bound, config.exec) {
        return Ok(Some(p));
    }
    let base = (basis.n() + 1) as u128;
    let mut required: u128 = 1;
    for _ in 0..k {
        required = required.saturating_mul(base);
    }
    if required > config.grid_budget {
        return Err(Error::GridBudget {
            required,
            budget: config.grid_budget,
        });
    }
    let base = base as u64;
    Ok(config.exec.find_first(required as u64, |idx| {
        let mut rest = idx;
        let coeffs: Vec<i64> = (0..k)
            .map(|_| {
                let digit = rest % base;
                rest /= base;
                digit as i64
            })
            .collect();
        T::invertible_combination(&prep, &coeffs)
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub enum GlVerdict<T> {
    /// `witness · X_i = Y_i · witness` for every i, verified.
    Similar { witness: Matrix<T> },
    NotSimilar,
    /// Monte Carlo found no invertible intertwiner; not a proof.
    NotSimilarProbable,
}

impl<T> GlVerdict<T> {
    pub fn is_similar(&self) -> bool {
        matches!(self, GlVerdict::Similar { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            GlVerdict::Similar { .. } => "similar",
            GlVerdict::NotSimilar => "not-similar",
            GlVerdict::NotSimilarProbable => "not-similar-probable",
        }
    }
}

/// Decides simultaneous similarity `Y_i = P·X_i·P⁻¹`.
pub fn gl_similar<T: Combination>(
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    config: &SearchConfig,
) -> Result<GlVerdict<T>> {
    let basis = intertwiner_basis(x, y, false)?;
    search_verdict(&basis, x, y, config)
}

pub(crate) fn search_verdict<T: Combination>(
    basis: &IntertwinerBasis<T>,
    x: &MatrixTuple<T>,
    y: &MatrixTuple<T>,
    config: &SearchConfig,
) -> Result<GlVerdict<T>> {
    if basis.dim() == 0 {
        return Ok(GlVerdict::NotSimilar);
    }
    match find_invertible(basis, config)? {
        Some(p) => {
            let p = if T::EXACT { p } else { normalized(&p) };
            if !intertwines(&p, x, y, basis.with_star()) {
                return Err(Error::WitnessVerification(format!(
                    "intertwiner residual {:e}",
                    intertwining_residual(&p, x, y, basis.with_star())
                )));
            }
            Ok(GlVerdict::Similar { witness: p })
        }
        None if config.is_deterministic() => Ok(GlVerdict::NotSimilar),
        None => Ok(GlVerdict::NotSimilarProbable),
    }
}

//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tracesim::linalg;
use tracesim::scalar::rational;
use tracesim::{Matrix, MatrixTuple, Rational, Scalar, StarMode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_matrix<T: Scalar>(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| T::from_i64(rng.gen_range(-bound..=bound)))
}

pub fn int_tuple<T: Scalar>(rng: &mut ChaCha8Rng, n: usize, d: usize, bound: i64) -> MatrixTuple<T> {
    MatrixTuple::new(
        (0..d).map(|_| int_matrix(rng, n, n, bound)).collect(),
        StarMode::Transpose,
    )
    .unwrap()
}

pub fn float_tuple(rng: &mut ChaCha8Rng, n: usize, d: usize) -> MatrixTuple<f64> {
    MatrixTuple::new(
        (0..d)
            .map(|_| Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)))
            .collect(),
        StarMode::Transpose,
    )
    .unwrap()
}

/// Random integer matrix with nonzero determinant, and its exact inverse.
pub fn invertible_int(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> (Matrix<Rational>, Matrix<Rational>) {
    loop {
        let p: Matrix<Rational> = int_matrix(rng, n, n, bound);
        if !linalg::det(&p).unwrap().is_zero() {
            let inv = linalg::inverse(&p, 0.0).unwrap();
            return (p, inv);
        }
    }
}

/// Product of `count` random plane rotations.
pub fn givens_product(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Matrix<f64> {
    let mut o = Matrix::identity(n);
    if n < 2 {
        return o;
    }
    for _ in 0..count {
        let p = rng.gen_range(0..n);
        let mut q = rng.gen_range(0..n - 1);
        if q >= p {
            q += 1;
        }
        let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut g = Matrix::identity(n);
        g[(p, p)] = angle.cos();
        g[(q, q)] = angle.cos();
        g[(p, q)] = -angle.sin();
        g[(q, p)] = angle.sin();
        o = &g * &o;
    }
    o
}

/// Letters as `(index, starred)`, index one-based.
pub type RawWord = Vec<(usize, bool)>;

pub fn raw_words(d: usize, max_degree: usize, include_star: bool) -> Vec<RawWord> {
    let letters: Vec<(usize, bool)> = (1..=d)
        .flat_map(|i| {
            let starred = if include_star { vec![false, true] } else { vec![false] };
            starred.into_iter().map(move |s| (i, s))
        })
        .collect();
    let mut all = Vec::new();
    let mut layer: Vec<RawWord> = vec![Vec::new()];
    for _ in 0..max_degree {
        let next: Vec<RawWord> = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Smallest word among all rotations of `w` and of its reversed,
/// star-toggled form (the latter only when stars are in play).
pub fn naive_canonical(w: &RawWord, include_star: bool) -> RawWord {
    let mut family = vec![w.clone()];
    if include_star {
        family.push(w.iter().rev().map(|&(i, s)| (i, !s)).collect());
    }
    let mut best: Option<RawWord> = None;
    for base in family {
        for k in 0..base.len() {
            let mut r = base[k..].to_vec();
            r.extend_from_slice(&base[..k]);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap()
}

/// Canonical representatives by brute-force dedup, sorted by degree then
/// lexicographically.
pub fn brute_force_canonical(d: usize, max_degree: usize, include_star: bool) -> Vec<RawWord> {
    let set: BTreeSet<(usize, RawWord)> = raw_words(d, max_degree, include_star)
        .iter()
        .map(|w| {
            let c = naive_canonical(w, include_star);
            (c.len(), c)
        })
        .collect();
    set.into_iter().map(|(_, w)| w).collect()
}

pub type Poly = Vec<Rational>;

pub fn poly_trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    poly_trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(Rational::zero)
                    + b.get(i).cloned().unwrap_or_else(Rational::zero)
            })
            .collect(),
    )
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    poly_trim(out)
}

fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c.clone()).collect()
}

/// `det(t·I - A)` by Laplace expansion along the first row.
pub fn cofactor_char_poly(a: &Matrix<Rational>) -> Poly {
    let n = a.rows();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -a[(i, j)].clone();
                    if i == j {
                        poly_trim(vec![c, Rational::one()])
                    } else {
                        poly_trim(vec![c])
                    }
                })
                .collect()
        })
        .collect();
    laplace(&entries)
}

fn laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![Rational::one()];
    }
    let mut acc = Vec::new();
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(&m[0][j], &laplace(&minor));
        acc = if j % 2 == 0 {
            poly_add(&acc, &term)
        } else {
            poly_add(&acc, &poly_neg(&term))
        };
    }
    acc
}

/// Remainder of `a` modulo nonzero `b`.
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap().clone() / lead.clone();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - factor.clone() * c.clone();
        }
        r = poly_trim(r);
    }
    r
}

/// Monic-free Euclidean gcd over the rationals.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (poly_trim(a.clone()), poly_trim(b.clone()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

pub fn q(p: i64) -> Rational {
    rational(p, 1)
}

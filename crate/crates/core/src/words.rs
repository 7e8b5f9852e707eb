//! Trace words in the letters `x_1..x_d, x_1*..x_d*`.
//!
//! The trace of a word is unchanged by cyclic rotation, and reversing a word
//! while toggling every star conjugates it. A word's canonical form is the
//! smallest member of that orbit under the degree-lexicographic order, so a
//! fingerprint only needs one entry per orbit.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalar::Scalar;

/// Cap on the raw `alphabet^D` word count an enumeration may touch.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// A letter `x_i` or `x_i*`. Ordered by index, then unstarred before starred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: usize,
    starred: bool,
}

impl Letter {
    /// `index` is one-based.
    pub fn new(index: usize, starred: bool) -> Self {
        assert!(index >= 1, "letter indices start at 1");
        Letter { index, starred }
    }

    pub fn plain(index: usize) -> Self {
        Letter::new(index, false)
    }

    pub fn starred(index: usize) -> Self {
        Letter::new(index, true)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_starred(&self) -> bool {
        self.starred
    }

    fn toggled(self) -> Self {
        Letter {
            starred: !self.starred,
            ..self
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.index, if self.starred { "*" } else { "" })
    }
}

/// A nonempty word. Ordered by degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Empty("word"));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.0.iter().all(|l| !l.starred)
    }

    /// Left rotation by `k` letters.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        let len = v.len();
        v.rotate_left(k % len);
        Word(v)
    }

    /// Reverses the letters and toggles every star: the word of `w(X)*`.
    pub fn star_reverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.toggled()).collect())
    }

    pub fn canonicalize(&self) -> Word {
        let rev = self.star_reverse();
        let len = self.degree();
        let mut best = self.clone();
        for k in 0..len {
            for cand in [self.rotate(k), rev.rotate(k)] {
                if cand < best {
                    best = cand;
                }
            }
        }
        best
    }

    pub fn is_canonical(&self) -> bool {
        is_canonical_slice(&self.0)
    }
}

/// Compares the rotation of `w` starting at `k` against `w` itself; when
/// `reversed`, the rotation is taken of the star-reversal instead.
fn rotation_cmp(w: &[Letter], k: usize, reversed: bool) -> Ordering {
    let len = w.len();
    for (pos, &orig) in w.iter().enumerate() {
        let letter = if reversed {
            w[len - 1 - (k + pos) % len].toggled()
        } else {
            w[(k + pos) % len]
        };
        match letter.cmp(&orig) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn is_canonical_slice(w: &[Letter]) -> bool {
    let len = w.len();
    (1..len).all(|k| rotation_cmp(w, k, false) != Ordering::Less)
        && (0..len).all(|k| rotation_cmp(w, k, true) != Ordering::Less)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `x1 x2* x1`.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|tok| {
                let (body, starred) = match tok.strip_suffix('*') {
                    Some(b) => (b, true),
                    None => (tok, false),
                };
                let index: usize = body
                    .strip_prefix('x')
                    .and_then(|d| d.parse().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad letter {tok:?}")))?;
                Ok(Letter::new(index, starred))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

fn alphabet_size(d: usize, include_star: bool) -> usize {
    if include_star {
        2 * d
    } else {
        d
    }
}

fn check_budget(d: usize, max_degree: usize, include_star: bool, budget: u128) -> Result<()> {
    let a = alphabet_size(d, include_star) as u128;
    let mut required: u128 = 1;
    for _ in 0..max_degree {
        required = required.saturating_mul(a);
    }
    if required > budget {
        return Err(Error::EnumerationBudget { required, budget });
    }
    Ok(())
}

/// Sorted canonical representatives of all words of degree `1..=max_degree`.
pub fn enumerate_canonical(d: usize, max_degree: usize, include_star: bool) -> Result<Vec<Word>> {
    enumerate_canonical_with(
        d,
        max_degree,
        include_star,
        DEFAULT_ENUMERATION_BUDGET,
        Execution::default(),
    )
}

pub fn enumerate_canonical_with(
    d: usize,
    max_degree: usize,
    include_star: bool,
    budget: u128,
    exec: Execution,
) -> Result<Vec<Word>> {
    if d == 0 || max_degree == 0 {
        return Err(Error::Empty("alphabet or degree bound"));
    }
    check_budget(d, max_degree, include_star, budget)?;
    let a = alphabet_size(d, include_star) as u64;
    let decode = |code: u64| -> Letter {
        if include_star {
            Letter::new((code / 2) as usize + 1, code % 2 == 1)
        } else {
            Letter::plain(code as usize + 1)
        }
    };
    const CHUNK: u64 = 4096;
    let mut out = Vec::new();
    for k in 1..=max_degree {
        let total = a.pow(k as u32);
        let chunks = total.div_ceil(CHUNK);
        let words = exec.flat_map_range(chunks, |c| {
            let mut found = Vec::new();
            let mut letters = vec![Letter::plain(1); k];
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                // Most significant digit first, so index order is lexicographic.
                let mut rest = idx;
                for pos in (0..k).rev() {
                    letters[pos] = decode(rest % a);
                    rest /= a;
                }
                if is_canonical_slice(&letters) {
                    found.push(Word(letters.clone()));
                }
            }
            found
        });
        out.extend(words);
    }
    Ok(out)
}

/// Evaluates `w(X, X*)`, multiplying factors in letter order.
pub fn eval_word<T: Scalar>(w: &Word, x: &MatrixTuple<T>) -> Result<Matrix<T>> {
    if w.max_index() > x.d() {
        return Err(Error::IndexOutOfRange {
            index: w.max_index(),
            d: x.d(),
        });
    }
    let stars: Vec<Option<Matrix<T>>> = (1..=x.d())
        .map(|i| {
            w.letters()
                .iter()
                .any(|l| l.index == i && l.starred)
                .then(|| x.get(i - 1).star(x.star_mode()))
        })
        .collect();
    Ok(eval_with_factors(w, x.matrices(), &stars))
}

fn eval_with_factors<T: Scalar>(
    w: &Word,
    plain: &[Matrix<T>],
    stars: &[Option<Matrix<T>>],
) -> Matrix<T> {
    let factor = |l: &Letter| -> &Matrix<T> {
        if l.starred {
            stars[l.index - 1].as_ref().expect("star factor prepared")
        } else {
            &plain[l.index - 1]
        }
    };
    let mut letters = w.letters().iter();
    let first = factor(letters.next().expect("words are nonempty")).clone();
    letters.fold(first, |acc, l| &acc * factor(l))
}

/// Trace values of every canonical word up to a degree bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Fingerprint<T> {
    d: usize,
    max_degree: usize,
    include_star: bool,
    entries: Vec<(Word, T)>,
}

impl<T: Scalar> Fingerprint<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn include_star(&self) -> bool {
        self.include_star
    }

    pub fn entries(&self) -> &[(Word, T)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, w: &Word) -> Option<&T> {
        self.entries
            .binary_search_by(|(k, _)| k.cmp(w))
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

pub fn fingerprint<T: Scalar>(
    x: &MatrixTuple<T>,
    max_degree: usize,
    include_star: bool,
) -> Result<Fingerprint<T>> {
    fingerprint_with(
        x,
        max_degree,
        include_star,
        DEFAULT_ENUMERATION_BUDGET,
        Execution::default(),
    )
}

pub fn fingerprint_with<T: Scalar>(
    x: &MatrixTuple<T>,
    max_degree: usize,
    include_star: bool,
    budget: u128,
    exec: Execution,
) -> Result<Fingerprint<T>> {
    let words = enumerate_canonical_with(x.d(), max_degree, include_star, budget, exec)?;
    let stars: Vec<Option<Matrix<T>>> = x
        .iter()
        .map(|m| include_star.then(|| m.star(x.star_mode())))
        .collect();
    let values = exec.map(&words, |w| {
        eval_with_factors(w, x.matrices(), &stars)
            .trace()
            .expect("tuple members are square")
    });
    Ok(Fingerprint {
        d: x.d(),
        max_degree,
        include_star,
        entries: words.into_iter().zip(values).collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Comparison<T> {
    Equal,
    /// The first differing word in canonical order, with both trace values.
    Differs { word: Word, left: T, right: T },
}

impl<T> Comparison<T> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

/// Exact comparison for rationals; absolute tolerance `tol` for floats.
pub fn fingerprints_equal<T: Scalar>(
    a: &Fingerprint<T>,
    b: &Fingerprint<T>,
    tol: f64,
) -> Result<Comparison<T>> {
    if (a.d, a.max_degree, a.include_star) != (b.d, b.max_degree, b.include_star) {
        return Err(Error::ShapeMismatch(format!(
            "fingerprints (d={}, D={}, star={}) and (d={}, D={}, star={})",
            a.d, a.max_degree, a.include_star, b.d, b.max_degree, b.include_star
        )));
    }
    for ((w, va), (_, vb)) in a.entries.iter().zip(&b.entries) {
        if !(va.clone() - vb.clone()).is_negligible(tol) {
            return Ok(Comparison::Differs {
                word: w.clone(),
                left: va.clone(),
                right: vb.clone(),
            });
        }
    }
    Ok(Comparison::Equal)
}

//! Bundled fixtures: separating examples and positive controls.
//!
//! Each fixture is a pair of tuple files under `fixtures/<name>/` in the
//! format read by the command-line tool, with expectations listed in
//! `fixtures/manifest.json`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intertwiner::{gl_similar, Combination, SearchConfig};
use crate::io::{Entry, FieldName, TupleFile};
use crate::orthogonal::{fingerprint_tolerance, star_intertwiner, StarSearch};
use crate::scalar::{Complex, Rational};
use crate::words::{fingerprint, fingerprints_equal};

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

macro_rules! fixture_files {
    ($($name:literal),* $(,)?) => {
        &[$((
            $name,
            include_str!(concat!("../fixtures/", $name, "/x.json")),
            include_str!(concat!("../fixtures/", $name, "/y.json")),
        )),*]
    };
}

const FILES: &[(&str, &str, &str)] = fixture_files!(
    "no_trace",
    "no_transpose",
    "complex_transpose",
    "pythagorean_rotation",
    "unimodular_conjugate",
    "givens_rotation",
);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintExpectation {
    pub degree: usize,
    pub include_star: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub gl_similar: bool,
    pub orth_similar: bool,
    pub fingerprints: Vec<FingerprintExpectation>,
}

impl Expected {
    /// Orthogonal similarity implies similarity and equal fingerprints.
    pub fn is_consistent(&self) -> bool {
        !self.orth_similar || (self.gl_similar && self.fingerprints.iter().all(|f| f.equal))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub citation: String,
    pub x: TupleFile,
    pub y: TupleFile,
    pub expected: Expected,
}

#[derive(Deserialize)]
struct ManifestEntry {
    name: String,
    citation: String,
    expected: Expected,
}

pub fn load_corpus() -> Vec<Fixture> {
    let manifest: Vec<ManifestEntry> =
        serde_json::from_str(MANIFEST).expect("bundled manifest is valid");
    manifest
        .into_iter()
        .map(|entry| {
            let (_, x, y) = FILES
                .iter()
                .find(|(name, _, _)| *name == entry.name)
                .expect("every manifest entry has files");
            Fixture {
                name: entry.name,
                citation: entry.citation,
                x: TupleFile::parse(x).expect("bundled tuple file is valid"),
                y: TupleFile::parse(y).expect("bundled tuple file is valid"),
                expected: entry.expected,
            }
        })
        .collect()
}

pub fn find_fixture(name: &str) -> Option<Fixture> {
    load_corpus().into_iter().find(|f| f.name == name)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FingerprintOutcome {
    pub degree: usize,
    pub include_star: bool,
    pub expected: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    /// Verdict label of the similarity search.
    pub gl: &'static str,
    pub gl_similar: bool,
    pub orth_similar: bool,
    pub fingerprints: Vec<FingerprintOutcome>,
    pub passed: bool,
}

/// Runs the live decision procedures on a fixture.
pub fn run_fixture(fixture: &Fixture, config: &SearchConfig) -> Result<FixtureOutcome> {
    if fixture.x.field != fixture.y.field {
        return Err(Error::KindMismatch {
            left: fixture.x.field.kind(),
            right: fixture.y.field.kind(),
        });
    }
    match fixture.x.field {
        FieldName::Rational => run_typed::<Rational>(fixture, config),
        FieldName::Float64 => run_typed::<f64>(fixture, config),
        FieldName::Complex128 => run_typed::<Complex>(fixture, config),
    }
}

fn run_typed<T: Combination + Entry>(
    fixture: &Fixture,
    config: &SearchConfig,
) -> Result<FixtureOutcome> {
    let x = fixture.x.to_tuple::<T>()?;
    let y = fixture.y.to_tuple::<T>()?;
    let gl = gl_similar(&x, &y, config)?;
    let orth_similar = matches!(star_intertwiner(&x, &y, config)?, StarSearch::Found(_));
    let fingerprints = fixture
        .expected
        .fingerprints
        .iter()
        .map(|check| {
            let fx = fingerprint(&x, check.degree, check.include_star)?;
            let fy = fingerprint(&y, check.degree, check.include_star)?;
            let tol = fingerprint_tolerance(&x, &y, check.degree);
            Ok(FingerprintOutcome {
                degree: check.degree,
                include_star: check.include_star,
                expected: check.equal,
                equal: fingerprints_equal(&fx, &fy, tol)?.is_equal(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = gl.is_similar() == fixture.expected.gl_similar
        && orth_similar == fixture.expected.orth_similar
        && fingerprints.iter().all(|f| f.equal == f.expected);
    Ok(FixtureOutcome {
        name: fixture.name.clone(),
        gl: gl.label(),
        gl_similar: gl.is_similar(),
        orth_similar,
        fingerprints,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::rational;

    #[test]
    fn corpus_loads() {
        let corpus = load_corpus();
        assert!(corpus.len() >= 4);
        assert_eq!(corpus.len(), FILES.len());
        assert!(corpus.iter().all(|f| f.expected.is_consistent()));
    }

    #[test]
    fn separating_examples_match_their_definitions() {
        let f = find_fixture("no_trace").unwrap();
        let d = |v: &[i64]| Matrix::diag(&v.iter().map(|&k| rational(k, 1)).collect::<Vec<_>>());
        assert_eq!(f.x.to_matrices::<Rational>().unwrap(), vec![d(&[1, 2, 2])]);
        assert_eq!(f.y.to_matrices::<Rational>().unwrap(), vec![d(&[1, 1, 2])]);

        let f = find_fixture("complex_transpose").unwrap();
        let c = |re: f64, im: f64| Complex::new(re, im);
        let (o, i, z) = (c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0));
        let n2 = Matrix::from_rows(vec![
            vec![z, o, z, -i],
            vec![o, z, -i, z],
            vec![z, -i, z, -o],
            vec![-i, z, -o, z],
        ])
        .unwrap();
        assert_eq!(f.y.to_matrices::<Complex>().unwrap(), vec![n2]);
        let u = Matrix::from_rows(vec![vec![o], vec![i], vec![z], vec![z]]).unwrap();
        assert_eq!(f.x.to_matrices::<Complex>().unwrap(), vec![&u * &u.transpose()]);
    }
}

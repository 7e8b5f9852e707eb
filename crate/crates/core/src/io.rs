//! JSON tuple files.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "star": "transpose",
//!   "n": 2,
//!   "d": 1,
//!   "matrices": [["1", "1/2", "0", "-3"]]
//! }
//! ```
//!
//! Matrices are row-major with `n·n` entries, or `n·m` when the optional `m`
//! (column count) is present. Rational entries are `"p/q"` or `"p"` strings
//! with `q > 0`, `float64` entries are JSON numbers and `complex128` entries
//! are `[re, im]` pairs. `star` defaults to `conjugate` for complex files and
//! `transpose` otherwise.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalar::{parse_rational, Complex, FieldKind, Rational, Scalar, ScalarKind, StarMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldName {
    Rational,
    Float64,
    Complex128,
}

impl FieldName {
    pub fn kind(self) -> ScalarKind {
        match self {
            FieldName::Rational => ScalarKind::Rational,
            FieldName::Float64 => ScalarKind::Real64,
            FieldName::Complex128 => ScalarKind::Complex128,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StarName {
    Transpose,
    Conjugate,
}

impl From<StarMode> for StarName {
    fn from(s: StarMode) -> Self {
        match s {
            StarMode::Transpose => StarName::Transpose,
            StarMode::ConjugateTranspose => StarName::Conjugate,
        }
    }
}

impl From<StarName> for StarMode {
    fn from(s: StarName) -> Self {
        match s {
            StarName::Transpose => StarMode::Transpose,
            StarName::Conjugate => StarMode::ConjugateTranspose,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleFile {
    pub field: FieldName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<StarName>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub d: usize,
    pub matrices: Vec<Vec<Value>>,
}

/// Scalars with a tuple-file entry syntax.
pub trait Entry: Scalar {
    const FIELD: FieldName;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    /// Entry syntax without JSON string quotes.
    fn display(&self) -> String {
        self.to_json().to_string()
    }
}

impl Entry for Rational {
    const FIELD: FieldName = FieldName::Rational;

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => {
                if s.split_once('/').is_some_and(|(_, q)| q.trim().starts_with('-')) {
                    return Err(Error::Parse(format!("denominator must be positive in {s:?}")));
                }
                parse_rational(s)
            }
            Value::Number(k) if k.is_i64() => Ok(Rational::from_i64(k.as_i64().unwrap_or(0))),
            other => Err(Error::Parse(format!("expected a \"p/q\" string, got {other}"))),
        }
    }

    fn display(&self) -> String {
        self.to_string()
    }
}

fn json_f64(v: &Value) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Parse(format!("expected a number, got {v}")))
}

impl Entry for f64 {
    const FIELD: FieldName = FieldName::Float64;

    fn to_json(&self) -> Value {
        Value::from(*self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        json_f64(v)
    }
}

impl Entry for Complex {
    const FIELD: FieldName = FieldName::Complex128;

    fn to_json(&self) -> Value {
        Value::Array(vec![Value::from(self.re), Value::from(self.im)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([re, im]) => Ok(Complex::new(json_f64(re)?, json_f64(im)?)),
            _ => Err(Error::Parse(format!("expected [re, im], got {v}"))),
        }
    }
}

/// `[[a,b],[c,d]]` in entry syntax.
pub fn format_matrix<T: Entry>(m: &Matrix<T>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(Entry::display).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

impl TupleFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("tuple files always serialize")
    }

    pub fn cols(&self) -> usize {
        self.m.unwrap_or(self.n)
    }

    pub fn field_kind(&self) -> Result<FieldKind> {
        let kind = self.field.kind();
        match self.star {
            Some(s) => FieldKind::new(kind, s.into()),
            None => Ok(FieldKind::with_default_star(kind)),
        }
    }

    /// Writes matrices of a common shape.
    pub fn from_matrices<T: Entry>(matrices: &[Matrix<T>], star: StarMode) -> Result<Self> {
        let first = matrices.first().ok_or(Error::Empty("matrix list"))?;
        let (n, m) = (first.rows(), first.cols());
        if matrices.iter().any(|x| (x.rows(), x.cols()) != (n, m)) {
            return Err(Error::ShapeMismatch("matrices must share one shape".into()));
        }
        FieldKind::new(T::KIND, star)?;
        Ok(TupleFile {
            field: T::FIELD,
            star: Some(star.into()),
            n,
            m: (m != n).then_some(m),
            d: matrices.len(),
            matrices: matrices
                .iter()
                .map(|x| x.as_slice().iter().map(Entry::to_json).collect())
                .collect(),
        })
    }

    pub fn from_tuple<T: Entry>(tuple: &MatrixTuple<T>) -> Self {
        Self::from_matrices(tuple.matrices(), tuple.star_mode()).expect("tuples are valid")
    }

    pub fn to_matrices<T: Entry>(&self) -> Result<Vec<Matrix<T>>> {
        self.field_kind()?;
        if self.field != T::FIELD {
            return Err(Error::KindMismatch {
                left: self.field.kind(),
                right: T::KIND,
            });
        }
        if self.matrices.len() != self.d {
            return Err(Error::Parse(format!(
                "d = {} but {} matrices given",
                self.d,
                self.matrices.len()
            )));
        }
        let (n, m) = (self.n, self.cols());
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, entries)| {
                if entries.len() != n * m {
                    return Err(Error::Parse(format!(
                        "matrix {} has {} entries, expected {}",
                        k + 1,
                        entries.len(),
                        n * m
                    )));
                }
                let data = entries.iter().map(T::from_json).collect::<Result<Vec<T>>>()?;
                Matrix::from_vec(n, m, data)
            })
            .collect()
    }

    pub fn to_tuple<T: Entry>(&self) -> Result<MatrixTuple<T>> {
        if self.cols() != self.n {
            return Err(Error::NotSquare {
                rows: self.n,
                cols: self.cols(),
            });
        }
        MatrixTuple::new(self.to_matrices()?, self.field_kind()?.star())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn rational_round_trip() {
        let text = r#"{"field":"rational","star":"transpose","n":2,"d":1,
                      "matrices":[["1","1/2","0","-3/4"]]}"#;
        let file = TupleFile::parse(text).unwrap();
        let t: MatrixTuple<Rational> = file.to_tuple().unwrap();
        assert_eq!(t.get(0)[(0, 1)], rational(1, 2));
        assert_eq!(t.get(0)[(1, 1)], rational(-3, 4));
        let again = TupleFile::parse(&TupleFile::from_tuple(&t).to_json_string()).unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn complex_default_star() {
        let text = r#"{"field":"complex128","n":1,"d":1,"matrices":[[[0,1]]]}"#;
        let t: MatrixTuple<Complex> = TupleFile::parse(text).unwrap().to_tuple().unwrap();
        assert_eq!(t.star_mode(), StarMode::ConjugateTranspose);
        assert_eq!(t.get(0)[(0, 0)], Complex::new(0.0, 1.0));
    }

    #[test]
    fn rejects_bad_files() {
        let bad = [
            r#"{"field":"rational","n":2,"d":1,"matrices":[["1","2","3"]]}"#,
            r#"{"field":"rational","n":1,"d":2,"matrices":[["1"]]}"#,
            r#"{"field":"rational","n":1,"d":1,"matrices":[["1/0"]]}"#,
            r#"{"field":"rational","n":1,"d":1,"matrices":[["1/-2"]]}"#,
            r#"{"field":"rational","star":"conjugate","n":1,"d":1,"matrices":[["1"]]}"#,
            r#"{"field":"float64","n":1,"d":1,"matrices":[["x"]]}"#,
            r#"{"field":"quaternion","n":1,"d":1,"matrices":[[1]]}"#,
            r#"{"field":"float64","n":1,"d":1,"matrices":[[1]],"extra":0}"#,
        ];
        for text in bad {
            let parsed = TupleFile::parse(text).and_then(|f| match f.field {
                FieldName::Rational => f.to_tuple::<Rational>().map(|_| ()),
                _ => f.to_tuple::<f64>().map(|_| ()),
            });
            assert!(parsed.is_err(), "{text}");
        }
        let f = TupleFile::parse(r#"{"field":"float64","n":1,"d":1,"matrices":[[1]]}"#).unwrap();
        assert!(matches!(f.to_tuple::<Rational>(), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn rectangular_matrices() {
        let m = Matrix::<Rational>::from_i64(&[&[1], &[1]]);
        let file = TupleFile::from_matrices(std::slice::from_ref(&m), StarMode::Transpose).unwrap();
        assert_eq!(file.m, Some(1));
        assert_eq!(file.to_matrices::<Rational>().unwrap(), vec![m]);
        assert!(file.to_tuple::<Rational>().is_err());
    }

    #[test]
    fn formatting() {
        let m = Matrix::from_rows(vec![vec![rational(-1, 2)], vec![rational(-1, 1)]]).unwrap();
        assert_eq!(format_matrix(&m), "[[-1/2],[-1]]");
        assert_eq!(format_matrix(&Matrix::<f64>::diag(&[0.5, 2.0])), "[[0.5,0.0],[0.0,2.0]]");
        assert_eq!(format_matrix(&Matrix::diag(&[Complex::new(0.0, -1.0)])), "[[[0.0,-1.0]]]");
    }
}

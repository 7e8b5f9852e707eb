//! Subcommand bodies. Each returns the text to print; verdicts never fail.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;
use tracesim::corpus::{find_fixture, load_corpus, run_fixture, FixtureOutcome};
use tracesim::intertwiner::{gl_similar, Combination, GlVerdict, SearchConfig};
use tracesim::io::{format_matrix, Entry, FieldName, TupleFile};
use tracesim::orthogonal::{
    orthogonal_witness, star_intertwiner, OrthogonalVerdict, OrthogonalWitness, Orthogonalize,
    StarSearch,
};
use tracesim::sylvester::{sylvester_solve, sylvester_unique};
use tracesim::units::{check_epsilon, commutant, EpsilonViolation, UnitSystem};
use tracesim::words::fingerprint_with;
use tracesim::{Complex, Execution, Matrix, Rational, StarMode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: String,
        source: tracesim::Error,
    },
    #[error(transparent)]
    Core(#[from] tracesim::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

pub struct Output {
    pub text: String,
    /// False only when a corpus run disagrees with its expectations.
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            success: true,
        }
    }

    fn json(value: Value) -> Self {
        Output::ok(format!("{value:#}\n"))
    }
}

fn read_file(path: &Path) -> CliResult<TupleFile> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: name.clone(),
        source,
    })?;
    TupleFile::parse(&text).map_err(|source| CliError::File { path: name, source })
}

macro_rules! by_field {
    ($field:expr, $f:ident($($arg:expr),*)) => {
        match $field {
            FieldName::Rational => $f::<Rational>($($arg),*),
            FieldName::Float64 => $f::<f64>($($arg),*),
            FieldName::Complex128 => $f::<Complex>($($arg),*),
        }
    };
}

pub fn fingerprint(path: &Path, degree: usize, star: bool, budget: u128, json: bool) -> CliResult<Output> {
    let file = read_file(path)?;
    by_field!(file.field, fingerprint_typed(&file, degree, star, budget, json))
}

fn fingerprint_typed<T: Entry>(
    file: &TupleFile,
    degree: usize,
    star: bool,
    budget: u128,
    json: bool,
) -> CliResult<Output> {
    let tuple = file.to_tuple::<T>()?;
    let fp = fingerprint_with(&tuple, degree, star, budget, Execution::default())?;
    if json {
        let entries: Vec<Value> = fp
            .entries()
            .iter()
            .map(|(w, v)| json!({ "word": w.to_string(), "value": v.to_json() }))
            .collect();
        return Ok(Output::json(json!({
            "degree": degree,
            "include_star": star,
            "entries": entries,
        })));
    }
    let mut text = String::new();
    for (w, v) in fp.entries() {
        let _ = writeln!(text, "{w} = {}", v.display());
    }
    Ok(Output::ok(text))
}

pub fn similar(
    x: &Path,
    y: &Path,
    orthogonal: bool,
    config: &SearchConfig,
    witness: bool,
    json: bool,
) -> CliResult<Output> {
    let fx = read_file(x)?;
    let fy = read_file(y)?;
    if fx.field != fy.field {
        return Err(tracesim::Error::KindMismatch {
            left: fx.field.kind(),
            right: fy.field.kind(),
        }
        .into());
    }
    if orthogonal {
        by_field!(fx.field, orthogonal_typed(&fx, &fy, config, witness, json))
    } else {
        by_field!(fx.field, gl_typed(&fx, &fy, config, witness, json))
    }
}

fn witness_file<T: Entry>(m: &Matrix<T>, star: StarMode) -> TupleFile {
    TupleFile::from_matrices(std::slice::from_ref(m), star).expect("witness is square")
}

fn verdict_output(verdict: &str, note: Option<&str>, witness: Option<(TupleFile, Value)>, json: bool) -> Output {
    if json {
        let mut obj = json!({ "verdict": verdict });
        if let Some(note) = note {
            obj["note"] = json!(note);
        }
        if let Some((file, extra)) = witness {
            obj["witness"] = serde_json::to_value(&file).expect("tuple files serialize");
            if let Value::Object(fields) = extra {
                obj.as_object_mut().expect("object").extend(fields);
            }
        }
        return Output::json(obj);
    }
    let mut text = format!("{verdict}\n");
    if let Some(note) = note {
        let _ = writeln!(text, "note: {note}");
    }
    if let Some((file, extra)) = witness {
        if let Value::Object(fields) = extra {
            for (k, v) in fields {
                let _ = writeln!(text, "{k}: {v}");
            }
        }
        text.push_str(&file.to_json_string());
        text.push('\n');
    }
    Output::ok(text)
}

fn gl_typed<T: Combination + Entry>(
    fx: &TupleFile,
    fy: &TupleFile,
    config: &SearchConfig,
    witness: bool,
    json: bool,
) -> CliResult<Output> {
    let x = fx.to_tuple::<T>()?;
    let y = fy.to_tuple::<T>()?;
    let verdict = gl_similar(&x, &y, config)?;
    let shown = match (&verdict, witness) {
        (GlVerdict::Similar { witness: p }, true) => {
            Some((witness_file(p, x.star_mode()), Value::Null))
        }
        _ => None,
    };
    Ok(verdict_output(verdict.label(), None, shown, json))
}

fn residuals<T>(w: &OrthogonalWitness<T>) -> Value {
    json!({ "residual_orth": w.residual_orth, "residual_conj": w.residual_conj })
}

fn orthogonal_typed<T: Orthogonalize + Entry>(
    fx: &TupleFile,
    fy: &TupleFile,
    config: &SearchConfig,
    witness: bool,
    json: bool,
) -> CliResult<Output> {
    let x = fx.to_tuple::<T>()?;
    let y = fy.to_tuple::<T>()?;
    if !witness {
        let label = match star_intertwiner(&x, &y, config)? {
            StarSearch::Found(_) => "similar",
            StarSearch::FilteredOut(_) | StarSearch::Absent => "not-similar",
            StarSearch::AbsentProbable => "not-similar-probable",
        };
        return Ok(verdict_output(label, None, None, json));
    }
    let verdict = orthogonal_witness(&x, &y, config)?;
    let out = match &verdict {
        OrthogonalVerdict::Equivalent(w) => verdict_output(
            verdict.label(),
            None,
            Some((witness_file(&w.o, x.star_mode()), residuals(w))),
            json,
        ),
        OrthogonalVerdict::ExactWitnessUnavailable { float_witness, .. } => verdict_output(
            verdict.label(),
            Some("exact-witness-unavailable"),
            Some((
                witness_file(&float_witness.o, StarMode::Transpose),
                residuals(float_witness),
            )),
            json,
        ),
        _ => verdict_output(verdict.label(), None, None, json),
    };
    Ok(out)
}

pub fn units(path: &Path, center: bool, json: bool) -> CliResult<Output> {
    let file = read_file(path)?;
    by_field!(file.field, units_typed(&file, center, json))
}

fn units_typed<T: Entry>(file: &TupleFile, center: bool, json: bool) -> CliResult<Output> {
    let system = UnitSystem::new(file.to_matrices::<T>()?)?;
    let violation = check_epsilon(&system, None);
    let basis = if center {
        Some(commutant(system.units(), system.n())?)
    } else {
        None
    };
    if json {
        let epsilon = match &violation {
            None => json!({ "ok": true }),
            Some(EpsilonViolation::Relation { i, j, s, t, .. }) => {
                json!({ "ok": false, "relation": [i, j, s, t] })
            }
            Some(EpsilonViolation::ZeroUnit { i, j }) => json!({ "ok": false, "zero_unit": [i, j] }),
        };
        let mut obj = json!({ "epsilon": epsilon });
        if let Some(basis) = &basis {
            let star = file.field_kind()?.star();
            obj["center"] = basis
                .iter()
                .map(|m| serde_json::to_value(witness_file(m, star)).expect("serializable"))
                .collect();
        }
        return Ok(Output::json(obj));
    }
    let mut text = match violation {
        None => "epsilon: ok\n".to_string(),
        Some(EpsilonViolation::Relation { i, j, s, t, .. }) => {
            format!("epsilon: violated at (i,j,s,t)=({i},{j},{s},{t})\n")
        }
        Some(EpsilonViolation::ZeroUnit { i, j }) => format!("epsilon: zero unit at (i,j)=({i},{j})\n"),
    };
    if let Some(basis) = basis {
        let _ = writeln!(text, "center: dimension {}", basis.len());
        for m in &basis {
            let _ = writeln!(text, "{}", format_matrix(m));
        }
    }
    Ok(Output::ok(text))
}

pub fn sylvester(a: &Path, b: &Path, c: Option<&Path>, unique: bool, json: bool) -> CliResult<Output> {
    if c.is_none() && !unique {
        return Err(CliError::Usage("give a right-hand side C or --unique".into()));
    }
    let fa = read_file(a)?;
    let fb = read_file(b)?;
    let fc = c.map(read_file).transpose()?;
    by_field!(fa.field, sylvester_typed(&fa, &fb, fc.as_ref(), unique, json))
}

fn single<T: Entry>(file: &TupleFile, what: &str) -> CliResult<Matrix<T>> {
    let mut ms = file.to_matrices::<T>()?;
    if ms.len() != 1 {
        return Err(CliError::Usage(format!("{what} must hold exactly one matrix")));
    }
    Ok(ms.remove(0))
}

fn sylvester_typed<T: Entry>(
    fa: &TupleFile,
    fb: &TupleFile,
    fc: Option<&TupleFile>,
    unique: bool,
    json: bool,
) -> CliResult<Output> {
    let a = single::<T>(fa, "A")?;
    let b = single::<T>(fb, "B")?;
    let solution = match fc {
        Some(fc) => Some(sylvester_solve(&a, &b, &single::<T>(fc, "C")?)?),
        None => None,
    };
    let is_unique = if unique {
        Some(sylvester_unique(&a, &b, None)?)
    } else {
        None
    };
    if json {
        let mut obj = json!({});
        if let Some(sol) = &solution {
            obj["solution"] = match sol {
                Some(x) => json!((0..x.rows())
                    .map(|i| x.row(i).iter().map(Entry::to_json).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
                None => Value::Null,
            };
        }
        if let Some(u) = is_unique {
            obj["unique"] = json!(u);
        }
        return Ok(Output::json(obj));
    }
    let mut text = String::new();
    match solution {
        Some(Some(x)) => {
            let _ = writeln!(text, "X = {}", format_matrix(&x));
        }
        Some(None) => text.push_str("X: no solution\n"),
        None => {}
    }
    if let Some(u) = is_unique {
        let _ = writeln!(text, "unique: {u}");
    }
    Ok(Output::ok(text))
}

pub fn corpus_list(json: bool) -> CliResult<Output> {
    let corpus = load_corpus();
    if json {
        let items: Vec<Value> = corpus
            .iter()
            .map(|f| {
                json!({
                    "name": f.name,
                    "field": f.x.field,
                    "citation": f.citation,
                    "expected": f.expected,
                    "x": f.x,
                    "y": f.y,
                })
            })
            .collect();
        return Ok(Output::json(Value::Array(items)));
    }
    let width = corpus.iter().map(|f| f.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for f in &corpus {
        let field = serde_json::to_value(f.x.field).expect("serializable");
        let _ = writeln!(
            text,
            "{:width$}  {:10}  {}",
            f.name,
            field.as_str().unwrap_or_default(),
            f.citation
        );
    }
    Ok(Output::ok(text))
}

fn describe(o: &FixtureOutcome) -> String {
    let fps: Vec<String> = o
        .fingerprints
        .iter()
        .map(|f| {
            format!(
                "D={}{}:{}",
                f.degree,
                if f.include_star { "*" } else { "" },
                if f.equal { "equal" } else { "differ" }
            )
        })
        .collect();
    format!(
        "{}: {} (gl={}, orth={}, {})",
        o.name,
        if o.passed { "pass" } else { "FAIL" },
        o.gl,
        if o.orth_similar { "similar" } else { "not-similar" },
        fps.join(" ")
    )
}

pub fn corpus_run(name: Option<&str>, config: &SearchConfig, json: bool) -> CliResult<Output> {
    let fixtures = match name {
        Some(name) => vec![find_fixture(name)
            .ok_or_else(|| CliError::Usage(format!("no fixture named {name:?}")))?],
        None => load_corpus(),
    };
    let outcomes = fixtures
        .iter()
        .map(|f| run_fixture(f, config))
        .collect::<Result<Vec<_>, _>>()?;
    let success = outcomes.iter().all(|o| o.passed);
    let text = if json {
        format!("{:#}\n", serde_json::to_value(&outcomes).expect("serializable"))
    } else {
        outcomes.iter().map(|o| describe(o) + "\n").collect()
    };
    Ok(Output { text, success })
}

//! Machine-readable output documents.
//!
//! Scalars serialize as canonical rational strings over `R` and as
//! `{"re", "im"}` objects over `C`; matrices as
//! `{"rows", "cols", "entries": [...]}` with row-major entries. Documents
//! are plain JSON objects built field by field, so identical inputs yield
//! byte-identical output.

use serde_json::{json, Map, Value};

use miniversal::canonical::CanonicalStructure;
use miniversal::exact::{ExactMatrix, Field, GaussianRational, Scalar};
use miniversal::quiver::{Representation, StarPattern, VerificationReport, VertexTuple};

use crate::spec::{arrow_names, parse_rational};
use crate::CliError;

pub fn scalar_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(q) => json!(q.to_string()),
        Scalar::Gaussian(g) => json!({ "re": g.re.to_string(), "im": g.im.to_string() }),
    }
}

pub fn matrix_value(m: &ExactMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(scalar_value).collect::<Vec<_>>(),
    })
}

/// Parse one serialized scalar in the given field model.
pub fn scalar_from_value(field: Field, v: &Value) -> Result<Scalar, CliError> {
    match (field, v) {
        (Field::Real, Value::String(s)) => Ok(Scalar::Rational(parse_rational(s)?)),
        (Field::Complex, Value::Object(o)) => {
            let part = |key: &str| -> Result<_, CliError> {
                let s = o
                    .get(key)
                    .and_then(Value::as_str)
                    .ok_or_else(|| CliError::Parse(format!("scalar missing {key:?}")))?;
                parse_rational(s)
            };
            Ok(Scalar::Gaussian(GaussianRational::new(
                part("re")?,
                part("im")?,
            )))
        }
        _ => Err(CliError::Parse(format!(
            "scalar {v} does not match the {field} field model"
        ))),
    }
}

pub fn matrix_from_value(field: Field, v: &Value) -> Result<ExactMatrix, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::Parse("matrix must be an object".into()))?;
    let dim = |key: &str| -> Result<usize, CliError> {
        obj.get(key)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| CliError::Parse(format!("matrix missing {key:?}")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let raw = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("matrix missing \"entries\"".into()))?;
    if raw.len() != rows * cols {
        return Err(CliError::Parse(format!(
            "matrix has {} entries, expected {}",
            raw.len(),
            rows * cols
        )));
    }
    let mut entries = Vec::with_capacity(raw.len());
    for e in raw {
        entries.push(scalar_from_value(field, e)?);
    }
    Ok(ExactMatrix::from_entries(field, rows, cols, entries))
}

fn arrows_value(s: &CanonicalStructure, rep: &Representation) -> Value {
    let names = arrow_names(s.problem());
    Value::Array(
        rep.quiver()
            .arrows()
            .iter()
            .zip(rep.mats())
            .enumerate()
            .map(|(idx, (arrow, m))| {
                let mut o = Map::new();
                o.insert("name".into(), json!(names[idx]));
                o.insert("source".into(), json!(arrow.source));
                o.insert("target".into(), json!(arrow.target));
                o.insert("rows".into(), json!(m.rows()));
                o.insert("cols".into(), json!(m.cols()));
                o.insert(
                    "entries".into(),
                    Value::Array(m.entries().iter().map(scalar_value).collect()),
                );
                Value::Object(o)
            })
            .collect(),
    )
}

fn header(s: &CanonicalStructure) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("problem".into(), json!(s.problem().to_string()));
    o.insert("field".into(), json!(s.field().to_string()));
    o
}

pub fn build_document(s: &CanonicalStructure, rep: &Representation) -> Value {
    let mut o = header(s);
    o.insert("dims".into(), json!(rep.dims()));
    o.insert("arrows".into(), arrows_value(s, rep));
    Value::Object(o)
}

fn stars_value(p: &StarPattern) -> Value {
    Value::Array(
        p.stars()
            .iter()
            .enumerate()
            .map(|(idx, s)| {
                json!({
                    "param_index": idx,
                    "arrow": s.arrow,
                    "row": s.row,
                    "col": s.col,
                })
            })
            .collect(),
    )
}

fn verification_value(r: &VerificationReport) -> Value {
    json!({
        "ambient_dim": r.ambient_dim,
        "tangent_rank": r.tangent_rank,
        "pattern_size": r.pattern_size,
        "combined_rank": r.combined_rank,
        "is_direct_sum": r.is_direct_sum,
        "is_miniversal": r.is_miniversal,
    })
}

pub struct PatternDocument<'a> {
    pub structure: &'a CanonicalStructure,
    pub rep: &'a Representation,
    pub pattern: &'a StarPattern,
    pub codimension: usize,
    pub verification: Option<&'a VerificationReport>,
    /// Entry-order name, present for greedy-constructed patterns.
    pub order: Option<&'a str>,
}

pub fn pattern_document(doc: &PatternDocument) -> Value {
    let mut o = header(doc.structure);
    o.insert("canonical".into(), arrows_value(doc.structure, doc.rep));
    o.insert("stars".into(), stars_value(doc.pattern));
    o.insert("star_count".into(), json!(doc.pattern.len()));
    o.insert("codimension".into(), json!(doc.codimension));
    if let Some(order) = doc.order {
        o.insert("order".into(), json!(order));
    }
    if let Some(report) = doc.verification {
        o.insert("verification".into(), verification_value(report));
    }
    Value::Object(o)
}

pub fn orthogonal_document(
    s: &CanonicalStructure,
    basis: &[Representation],
) -> Value {
    let mut o = header(s);
    o.insert("codimension".into(), json!(basis.len()));
    o.insert(
        "basis".into(),
        Value::Array(
            basis
                .iter()
                .map(|rep| Value::Array(rep.mats().iter().map(matrix_value).collect()))
                .collect(),
        ),
    );
    Value::Object(o)
}

pub fn decompose_document(
    s: &CanonicalStructure,
    coefficients: &[Scalar],
    witness: &VertexTuple,
    residual_is_zero: bool,
) -> Value {
    let mut o = header(s);
    o.insert(
        "coefficients".into(),
        Value::Array(coefficients.iter().map(scalar_value).collect()),
    );
    o.insert("residual_is_zero".into(), json!(residual_is_zero));
    o.insert(
        "witness".into(),
        Value::Array(witness.blocks().iter().map(matrix_value).collect()),
    );
    Value::Object(o)
}

//! Structure file parsing and serialization.
//!
//! A spec file is a JSON object with a `problem` tag, a `field` tag (`"C"`
//! or `"R"`), and a problem-specific `structure`. Eigenvalues are rational
//! strings (`"3/2"`, `"-1"`, `"0"`) or `{"re": "...", "im": "..."}` objects;
//! partitions are integer arrays.

use serde::Deserialize;
use serde_json::{json, Value};

use miniversal::canonical::{
    CanonicalStructure, ContragredientStructure, EigSpec, JordanStructure, PencilStructure,
    Problem,
};
use miniversal::exact::{Field, Rational};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    problem: String,
    field: String,
    structure: Value,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawEig {
    Str(String),
    Parts { re: String, im: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEigenblock {
    eig: RawEig,
    partition: Vec<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawJordan {
    eigenblocks: Vec<RawEigenblock>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawPencil {
    left_minimal: Vec<usize>,
    finite: Vec<RawEigenblock>,
    infinite: Vec<usize>,
    right_minimal: Vec<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawContragredient {
    nonsingular: Vec<RawEigenblock>,
    type1: Vec<usize>,
    type2: Vec<usize>,
    type3: Vec<usize>,
    type4: Vec<usize>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse::<Rational>()
        .map_err(|e| CliError::Parse(format!("bad rational {s:?}: {e}")))
}

fn parse_field(s: &str) -> Result<Field, CliError> {
    match s {
        "C" => Ok(Field::Complex),
        "R" => Ok(Field::Real),
        other => Err(CliError::Parse(format!(
            "unknown field {other:?} (expected \"C\" or \"R\")"
        ))),
    }
}

fn resolve_eig(field: Field, raw: &RawEig) -> Result<EigSpec, CliError> {
    let (re, im) = match raw {
        RawEig::Str(s) => (parse_rational(s)?, Rational::from_integer(0.into())),
        RawEig::Parts { re, im } => (parse_rational(re)?, parse_rational(im)?),
    };
    EigSpec::from_parts(field, re, im).map_err(|e| CliError::Validation(e.to_string()))
}

fn resolve_eigenblocks(
    field: Field,
    raw: &[RawEigenblock],
) -> Result<JordanStructure, CliError> {
    let mut eigenblocks = Vec::with_capacity(raw.len());
    for block in raw {
        eigenblocks.push((resolve_eig(field, &block.eig)?, block.partition.clone()));
    }
    Ok(JordanStructure::new(field, eigenblocks))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Parse(format!("bad structure: {e}")))
}

/// Parse and validate a structure file body.
pub fn parse_spec(text: &str) -> Result<CanonicalStructure, CliError> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("bad spec file: {e}")))?;
    let field = parse_field(&raw.field)?;
    let structure = match raw.problem.as_str() {
        "similarity" => {
            let j: RawJordan = from_value(raw.structure)?;
            CanonicalStructure::Similarity(resolve_eigenblocks(field, &j.eigenblocks)?)
        }
        "pencil" => {
            let p: RawPencil = from_value(raw.structure)?;
            CanonicalStructure::Pencil(PencilStructure {
                field,
                left_minimal: p.left_minimal,
                finite: resolve_eigenblocks(field, &p.finite)?,
                infinite: p.infinite,
                right_minimal: p.right_minimal,
            })
        }
        "contragredient" => {
            let c: RawContragredient = from_value(raw.structure)?;
            CanonicalStructure::Contragredient(ContragredientStructure {
                field,
                nonsingular: resolve_eigenblocks(field, &c.nonsingular)?,
                type1: c.type1,
                type2: c.type2,
                type3: c.type3,
                type4: c.type4,
            })
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown problem {other:?} (expected similarity, pencil, or contragredient)"
            )))
        }
    };
    structure
        .validate()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(structure)
}

fn eig_value(eig: &EigSpec) -> Value {
    let (re, im) = eig.parts();
    if num_traits::Zero::is_zero(&im) {
        json!(re.to_string())
    } else {
        json!({ "re": re.to_string(), "im": im.to_string() })
    }
}

fn eigenblocks_value(j: &JordanStructure) -> Value {
    Value::Array(
        j.eigenblocks
            .iter()
            .map(|(eig, p)| json!({ "eig": eig_value(eig), "partition": p }))
            .collect(),
    )
}

/// Serialize a structure back into the spec file format; parsing the result
/// reproduces the structure exactly.
pub fn spec_value(s: &CanonicalStructure) -> Value {
    let field = s.field().to_string();
    match s {
        CanonicalStructure::Similarity(j) => json!({
            "problem": "similarity",
            "field": field,
            "structure": { "eigenblocks": eigenblocks_value(j) },
        }),
        CanonicalStructure::Pencil(p) => json!({
            "problem": "pencil",
            "field": field,
            "structure": {
                "left_minimal": p.left_minimal,
                "finite": eigenblocks_value(&p.finite),
                "infinite": p.infinite,
                "right_minimal": p.right_minimal,
            },
        }),
        CanonicalStructure::Contragredient(c) => json!({
            "problem": "contragredient",
            "field": field,
            "structure": {
                "nonsingular": eigenblocks_value(&c.nonsingular),
                "type1": c.type1,
                "type2": c.type2,
                "type3": c.type3,
                "type4": c.type4,
            },
        }),
    }
}

/// Arrow names for the output documents.
pub fn arrow_names(problem: Problem) -> &'static [&'static str] {
    match problem {
        Problem::Similarity => &["A"],
        Problem::Pencil | Problem::Contragredient => &["A", "B"],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reserialize_round_trips() {
        let text = r#"{
            "problem": "pencil",
            "field": "R",
            "structure": {
                "left_minimal": [1, 2],
                "finite": [
                    {"eig": "0", "partition": [2]},
                    {"eig": {"re": "1", "im": "1"}, "partition": [1]}
                ],
                "infinite": [1],
                "right_minimal": [2]
            }
        }"#;
        let s = parse_spec(text).unwrap();
        let round = parse_spec(&spec_value(&s).to_string()).unwrap();
        assert_eq!(s, round);
    }

    #[test]
    fn unknown_problem_is_a_parse_error() {
        let text = r#"{"problem": "nope", "field": "C", "structure": {}}"#;
        assert!(matches!(parse_spec(text), Err(CliError::Parse(_))));
    }

    #[test]
    fn invalid_structure_is_a_validation_error() {
        let text = r#"{
            "problem": "similarity",
            "field": "C",
            "structure": {"eigenblocks": [{"eig": "0", "partition": [1, 2]}]}
        }"#;
        assert!(matches!(parse_spec(text), Err(CliError::Validation(_))));
    }
}

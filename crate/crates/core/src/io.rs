//! JSON file formats. Coordinates are fraction strings such as `"3/2"`;
//! floating-point input is rejected.
//!
//! ```json
//! {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]]}
//! {"components": [{"basis": [["1","0"],["0","1"]], "offset": ["0","0"], "multiplicity": 1}]}
//! ```

use std::path::Path;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{LatticeComponent, TranslationMultiset};
use crate::polytope::RationalPolytope;
use crate::rational::{format_scalar, parse_scalar, Scalar, Vector};

fn scalar_at(v: &Value, field: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(field, message),
            other => other,
        }),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_integer(n.as_i64().unwrap().into())),
        Value::Number(_) => Err(Error::parse(
            field,
            "floating-point numbers are not accepted; use a fraction string like \"3/2\"",
        )),
        _ => Err(Error::parse(field, "expected a fraction string")),
    }
}

fn vector_at(v: &Value, field: &str, dim: Option<usize>) -> Result<Vector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::parse(field, "expected an array of coordinates"))?;
    if let Some(d) = dim {
        if items.len() != d {
            return Err(Error::parse(
                field,
                format!("expected {d} coordinates, found {}", items.len()),
            ));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_at(x, &format!("{field}[{i}]")))
        .collect()
}

fn array_at<'a>(obj: &'a Value, key: &str, field: &str) -> Result<&'a Vec<Value>> {
    obj.get(key)
        .ok_or_else(|| Error::parse(field, "missing field"))?
        .as_array()
        .ok_or_else(|| Error::parse(field, "expected an array"))
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse("<document>", e.to_string()))
}

/// Reads a polytope from its JSON text. The hull is computed from the listed
/// points, so interior points are allowed and dropped.
pub fn parse_polytope(text: &str) -> Result<RationalPolytope> {
    let doc = parse_value(text)?;
    if !doc.is_object() {
        return Err(Error::parse("<document>", "expected an object"));
    }
    let dim = doc
        .get("dim")
        .ok_or_else(|| Error::parse("dim", "missing field"))?
        .as_u64()
        .ok_or_else(|| Error::parse("dim", "expected a positive integer"))? as usize;
    let vertices = array_at(&doc, "vertices", "vertices")?
        .iter()
        .enumerate()
        .map(|(i, v)| vector_at(v, &format!("vertices[{i}]"), Some(dim)))
        .collect::<Result<Vec<_>>>()?;
    if vertices.is_empty() {
        return Err(Error::parse("vertices", "no points given"));
    }
    RationalPolytope::from_points(vertices)
}

/// Reads a translation multiset from its JSON text.
pub fn parse_multiset(text: &str) -> Result<TranslationMultiset> {
    let doc = parse_value(text)?;
    let comps = array_at(&doc, "components", "components")?;
    if comps.is_empty() {
        return Err(Error::parse("components", "no components given"));
    }
    let mut out = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let field = format!("components[{i}]");
        let basis = array_at(c, "basis", &format!("{field}.basis"))?
            .iter()
            .enumerate()
            .map(|(j, row)| vector_at(row, &format!("{field}.basis[{j}]"), None))
            .collect::<Result<Vec<_>>>()?;
        let offset = vector_at(
            c.get("offset")
                .ok_or_else(|| Error::parse(format!("{field}.offset"), "missing field"))?,
            &format!("{field}.offset"),
            None,
        )?;
        let multiplicity = match c.get("multiplicity") {
            None => 1,
            Some(m) => m.as_u64().filter(|&m| m > 0).ok_or_else(|| {
                Error::parse(
                    format!("{field}.multiplicity"),
                    "expected a positive integer",
                )
            })?,
        };
        let comp = LatticeComponent::new(basis, offset, multiplicity).map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::parse(field.clone(), other.to_string()),
        })?;
        out.push(comp);
    }
    TranslationMultiset::new(out).map_err(|e| Error::parse("components", e.to_string()))
}

fn vector_json(v: &Vector) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_scalar(x))).collect())
}

pub fn polytope_json(p: &RationalPolytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(vector_json).collect::<Vec<_>>(),
    })
}

pub fn multiset_json(m: &TranslationMultiset) -> Value {
    let comps: Vec<Value> = m
        .components()
        .iter()
        .map(|c| {
            json!({
                "basis": c.basis().iter().map(vector_json).collect::<Vec<_>>(),
                "offset": vector_json(c.offset()),
                "multiplicity": c.multiplicity(),
            })
        })
        .collect();
    json!({ "components": comps })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn read_polytope(path: &Path) -> Result<RationalPolytope> {
    parse_polytope(&std::fs::read_to_string(path)?)
}

pub fn read_multiset(path: &Path) -> Result<TranslationMultiset> {
    parse_multiset(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn polytope_round_trip() {
        for f in fixtures::all() {
            let text = to_pretty(&polytope_json(&f.polytope));
            let back = parse_polytope(&text).unwrap();
            assert_eq!(back.vertices(), f.polytope.vertices(), "{}", f.name);
            assert_eq!(to_pretty(&polytope_json(&back)), text);
        }
    }

    #[test]
    fn multiset_round_trip() {
        let m = TranslationMultiset::integer_lattice(3);
        let text = to_pretty(&multiset_json(&m));
        let back = parse_multiset(&text).unwrap();
        assert_eq!(to_pretty(&multiset_json(&back)), text);
    }

    fn field_of(e: Error) -> String {
        match e {
            Error::Parse { field, .. } => field,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_floats_with_field_path() {
        let e = parse_polytope(r#"{"dim":2,"vertices":[["0","0"],["1","0"],["0","1.5"]]}"#)
            .unwrap_err();
        assert_eq!(field_of(e), "vertices[2][1]");
        let e =
            parse_polytope(r#"{"dim":2,"vertices":[["0","0"],["1","0"],[0, 0.5]]}"#).unwrap_err();
        assert_eq!(field_of(e), "vertices[2][1]");
    }

    #[test]
    fn reports_missing_and_malformed_fields() {
        assert_eq!(
            field_of(parse_polytope(r#"{"vertices":[]}"#).unwrap_err()),
            "dim"
        );
        assert_eq!(
            field_of(parse_polytope(r#"{"dim":2,"vertices":[["0"]]}"#).unwrap_err()),
            "vertices[0]"
        );
        let e = parse_multiset(
            r#"{"components":[{"basis":[["1","0"],["0","x"]],"offset":["0","0"]}]}"#,
        )
        .unwrap_err();
        assert_eq!(field_of(e), "components[0].basis[1][1]");
        let e = parse_multiset(
            r#"{"components":[{"basis":[["1","0"],["0","1"]],"offset":["0","0"],"multiplicity":0}]}"#,
        )
        .unwrap_err();
        assert_eq!(field_of(e), "components[0].multiplicity");
    }

    #[test]
    fn integer_numbers_are_accepted() {
        let p = parse_polytope(r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(p.vertices().len(), 3);
    }
}

//! JSON forms of matrices, matrix tuples and refutation witnesses.
//!
//! A tuple is `{"size": k, "field": "...", "matrices": [[[entry, ...], ...], ...]}`
//! with every entry an exact scalar written as a string.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::eval::{Discrepancy, JordanProfile, MatrixTuple, RefutationWitness};
use crate::linalg::Matrix;
use crate::pencils::LinearPencil;
use crate::parse::{parse_field, parse_scalar};
use crate::scalar::{common_field, Field, Scalar};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, col: 1, msg: msg.into() }
}

/// Smallest declared field containing every entry.
pub fn field_of<'a>(entries: impl IntoIterator<Item = &'a Scalar>) -> Field {
    entries.into_iter().fold(Field::rationals(), |acc, s| match s.field() {
        Some(f) => common_field(&acc, f).unwrap_or(acc),
        None => acc,
    })
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array(m.row(i).iter().map(|e| Value::String(e.clone().simplify().to_string())).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, field: &Field) -> Result<Matrix> {
    let m = rect_matrix_from_json(v, field)?;
    if !m.is_square() {
        return Err(Error::SizeMismatch("matrices must be square".into()));
    }
    Ok(m)
}

/// A matrix whose rows all have the same, possibly different from the row count, length.
pub fn rect_matrix_from_json(v: &Value, field: &Field) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    let parsed: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("matrix row must be an array"))?
                .iter()
                .map(|e| match e {
                    Value::String(s) => parse_scalar(s, field),
                    Value::Number(n) => parse_scalar(&n.to_string(), field),
                    _ => Err(bad("matrix entries must be strings or integers")),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let width = parsed.first().map_or(0, Vec::len);
    if parsed.is_empty() || width == 0 || parsed.iter().any(|r| r.len() != width) {
        return Err(Error::SizeMismatch("matrix rows must be nonempty and of equal length".into()));
    }
    Ok(Matrix::from_rows(parsed))
}

pub fn tuple_to_json(x: &MatrixTuple) -> Value {
    let field = field_of(x.matrices().iter().flat_map(|m| m.entries()));
    json!({
        "size": x.size(),
        "field": field.describe(),
        "matrices": x.matrices().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn tuple_from_json(v: &Value) -> Result<MatrixTuple> {
    let field = declared_field(v)?;
    let mats = v.get("matrices").and_then(Value::as_array).ok_or_else(|| bad("missing `matrices` array"))?;
    let matrices = mats.iter().map(|m| matrix_from_json(m, &field)).collect::<Result<Vec<_>>>()?;
    let x = MatrixTuple::new(matrices)?;
    if let Some(k) = v.get("size").and_then(Value::as_u64) {
        if k as usize != x.size() && !x.is_empty() {
            return Err(Error::SizeMismatch(format!("declared size {k}, matrices are {}x{}", x.size(), x.size())));
        }
    }
    Ok(x)
}

fn declared_field(v: &Value) -> Result<Field> {
    match v.get("field") {
        Some(Value::String(s)) => parse_field(s),
        None => Ok(Field::rationals()),
        _ => Err(bad("`field` must be a string")),
    }
}

/// Rectangular matrices `{"field": ..., "matrices": [...]}`, all of one shape.
pub fn rect_tuple_from_json(v: &Value) -> Result<Vec<Matrix>> {
    let field = declared_field(v)?;
    let mats = v.get("matrices").and_then(Value::as_array).ok_or_else(|| bad("missing `matrices` array"))?;
    let out = mats.iter().map(|m| rect_matrix_from_json(m, &field)).collect::<Result<Vec<_>>>()?;
    if out.windows(2).any(|w| (w[0].nrows(), w[0].ncols()) != (w[1].nrows(), w[1].ncols())) {
        return Err(Error::SizeMismatch("matrices must share one shape".into()));
    }
    Ok(out)
}

/// `{"homogeneous": bool, "field": ..., "matrices": [...]}`; an affine
/// pencil lists its constant term first.
pub fn pencil_to_json(l: &LinearPencil) -> Value {
    let mats: Vec<&Matrix> = l.constant.iter().chain(&l.coeffs).collect();
    json!({
        "homogeneous": l.is_homogeneous(),
        "field": field_of(mats.iter().flat_map(|m| m.entries())).describe(),
        "matrices": mats.into_iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn pencil_from_json(v: &Value) -> Result<LinearPencil> {
    let homogeneous = match v.get("homogeneous") {
        Some(Value::Bool(b)) => *b,
        None => true,
        _ => return Err(bad("`homogeneous` must be a boolean")),
    };
    let field = declared_field(v)?;
    let mats = v.get("matrices").and_then(Value::as_array).ok_or_else(|| bad("missing `matrices` array"))?;
    let mut mats = mats.iter().map(|m| matrix_from_json(m, &field)).collect::<Result<Vec<_>>>()?;
    let constant = if homogeneous {
        None
    } else if mats.is_empty() {
        return Err(bad("affine pencil without constant term"));
    } else {
        Some(mats.remove(0))
    };
    LinearPencil::new(constant, mats)
}

fn profile_to_json(p: &JordanProfile) -> Value {
    json!({
        "char_poly": p.char_poly.to_string(),
        "eigenvalues": p.eigen.iter().map(|(l, r)| json!({"lambda": l.to_string(), "ranks": r})).collect::<Vec<_>>(),
        "clusters": p.clusters.iter().map(|(s, r)| json!({"factor": s.to_string(), "ranks": r})).collect::<Vec<_>>(),
    })
}

pub fn witness_to_json(w: &RefutationWitness) -> Value {
    let mut v = tuple_to_json(&w.tuple);
    let details = match &w.discrepancy {
        Discrepancy::Rank { f, g } => json!({"rank_f": f, "rank_g": g}),
        Discrepancy::Charpoly { f, g } => json!({"char_poly_f": f.to_string(), "char_poly_g": g.to_string()}),
        Discrepancy::Jordan { f, g } => json!({"jordan_f": profile_to_json(f), "jordan_g": profile_to_json(g)}),
        Discrepancy::Norm { frobenius, operator } => json!({
            "frobenius_f": frobenius.0, "frobenius_g": frobenius.1,
            "operator_f": operator.0, "operator_g": operator.1,
        }),
    };
    v["kind"] = json!(w.kind.name());
    v["discrepancy"] = details;
    v["attempts"] = json!(w.attempts);
    v
}

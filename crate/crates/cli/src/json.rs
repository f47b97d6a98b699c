//! Conversions between kernel values and JSON.
//!
//! Rationals go out as reduced strings (`"3"`, `"-2/5"`). On input a rational
//! may be a JSON number or such a string; decimals are read exactly.

use klein33::linalg::QMatrix;
use klein33::lines::{Coords6, ORDER};
use klein33::{rational, Multivector, Rational};
use serde_json::{json, Map, Value};

use crate::Failure;

pub fn rational(v: &Value, what: &str) -> Result<Rational, Failure> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => {
            return Err(Failure::schema(format!(
                "{what}: expected a rational, found {v}"
            )))
        }
    };
    rational::parse(&text).map_err(|e| Failure::schema(format!("{what}: {e}")))
}

pub fn rationals<const N: usize>(v: &Value, what: &str) -> Result<[Rational; N], Failure> {
    let items = v
        .as_array()
        .filter(|a| a.len() == N)
        .ok_or_else(|| Failure::schema(format!("{what}: expected an array of {N} rationals")))?;
    let parsed = items
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{what}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

pub fn coords_list(v: &Value, what: &str) -> Result<Vec<Coords6>, Failure> {
    v.as_array()
        .ok_or_else(|| Failure::schema(format!("{what}: expected an array of 6-tuples")))?
        .iter()
        .enumerate()
        .map(|(i, x)| rationals::<6>(x, &format!("{what}[{i}]")))
        .collect()
}

pub fn matrix(v: &Value, n: usize, what: &str) -> Result<QMatrix, Failure> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == n)
        .ok_or_else(|| Failure::schema(format!("{what}: expected {n} rows")))?;
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .filter(|c| c.len() == n)
            .ok_or_else(|| Failure::schema(format!("{what}[{i}]: expected {n} entries")))?;
        out.push(
            cells
                .iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("{what}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(QMatrix::from_rows(out))
}

/// A map from blade labels to coefficients.
pub fn multivector(v: &Value, what: &str) -> Result<Multivector, Failure> {
    let map = v.as_object().ok_or_else(|| {
        Failure::schema(format!(
            "{what}: expected a map from blade labels to rationals"
        ))
    })?;
    let terms = map
        .iter()
        .map(|(label, c)| Ok((label.as_str(), rational(c, &format!("{what}.{label}"))?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    Multivector::from_labels(terms).map_err(|e| Failure::schema(format!("{what}: {e}")))
}

pub fn rat(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn vectors(vs: &[Coords6]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

pub fn mat(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

/// Nonzero terms in canonical blade order.
pub fn mv(m: &Multivector) -> Value {
    let mut map = Map::new();
    for (blade, c) in m.terms() {
        map.insert(blade.label(), rat(c));
    }
    Value::Object(map)
}

pub fn order() -> Value {
    json!(ORDER)
}

//! JSON module files:
//! `{"q": 3, "m": 2, "n": 3, "field": "Q" | {"p": 2}, "entries": [[[..]]]}`
//! with entries as integers or `"a/b"` strings.

use serde_json::{json, Value};

use super::field::{Field, PrimeField};
use super::{FieldKind, KroneckerModule, KroneckerShape};
use crate::arith::parse_rational;
use crate::{BigInt, Error, Rational, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn dim(obj: &Value, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| bad(format!("missing or invalid \"{key}\"")))
}

fn entry(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| Rational::from_integer(BigInt::from(k)))
            .ok_or_else(|| bad(format!("entry {n} is not an integer"))),
        Value::String(s) => parse_rational(s),
        other => Err(bad(format!("entry {other} is neither an integer nor \"a/b\""))),
    }
}

pub fn module_from_json(text: &str) -> Result<KroneckerModule> {
    let obj: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let shape = KroneckerShape::new(dim(&obj, "q")?, dim(&obj, "m")?, dim(&obj, "n")?)?;
    let field = match obj.get("field") {
        Some(Value::String(s)) if s == "Q" => FieldKind::Rationals,
        Some(Value::Object(o)) => {
            let p = o.get("p").and_then(Value::as_u64).ok_or_else(|| bad("field.p must be a prime"))?;
            FieldKind::Prime(PrimeField::new(p)?.order())
        }
        _ => return Err(bad("\"field\" must be \"Q\" or {\"p\": prime}")),
    };
    let array = |v: &Value, len: usize, what: &str| -> Result<Vec<Value>> {
        match v.as_array() {
            Some(a) if a.len() == len => Ok(a.clone()),
            _ => Err(bad(format!("{what} must be an array of length {len}"))),
        }
    };
    let raw = obj.get("entries").ok_or_else(|| bad("missing \"entries\""))?;
    let entries = array(raw, shape.q, "entries")?
        .iter()
        .map(|slice| {
            array(slice, shape.m, "entries[l]")?
                .iter()
                .map(|row| array(row, shape.n, "entries[l][i]")?.iter().map(entry).collect())
                .collect()
        })
        .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
    if let FieldKind::Prime(p) = field {
        let f = PrimeField::new(p)?;
        for x in entries.iter().flatten().flatten() {
            f.embed(x)?;
        }
    }
    KroneckerModule::new(shape, field, entries)
}

pub fn module_to_json(module: &KroneckerModule) -> Value {
    let field = match module.field {
        FieldKind::Rationals => json!("Q"),
        FieldKind::Prime(p) => json!({ "p": p }),
    };
    let entry = |x: &Rational| -> Value {
        match (x.is_integer(), i64::try_from(x.to_integer())) {
            (true, Ok(k)) => json!(k),
            _ => json!(x.to_string()),
        }
    };
    let entries: Vec<Vec<Vec<Value>>> = module
        .entries
        .iter()
        .map(|slice| slice.iter().map(|row| row.iter().map(entry).collect()).collect())
        .collect();
    json!({
        "q": module.shape.q,
        "m": module.shape.m,
        "n": module.shape.n,
        "field": field,
        "entries": entries,
    })
}

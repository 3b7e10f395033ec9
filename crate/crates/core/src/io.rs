//! JSON form of modules and field elements.
//!
//! A field element is an array of `phi(l)` rational strings, constant term
//! first. A module is
//! `{l, presentation, dim, labels, matrices: {generator: [entry, ...]}}`
//! with each matrix flattened row-major.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::cyclo::{parse_rational, rational_to_string, CycloNum};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pbw::{Generator, Presentation};
use crate::rep::MatrixModule;

pub fn cyclo_to_json(c: &CycloNum) -> Value {
    Value::Array(c.coeffs().iter().map(|r| Value::String(rational_to_string(r))).collect())
}

/// Accepts the coefficient-array form or a literal string.
pub fn cyclo_from_json(l: u32, v: &Value) -> Result<CycloNum> {
    match v {
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
                    _ => Err(Error::InvalidInput(format!("bad coefficient {x}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            CycloNum::from_coeffs(l, coeffs)
        }
        Value::String(s) => crate::parse::parse_cyclo(l, s),
        Value::Number(n) if n.is_i64() => Ok(CycloNum::from_int(l, n.as_i64().expect("i64"))),
        _ => Err(Error::InvalidInput(format!("bad field element {v}"))),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.entries().iter().map(cyclo_to_json).collect())
}

pub fn module_to_json(m: &MatrixModule) -> Value {
    let mats: Map<String, Value> = m
        .matrices()
        .iter()
        .map(|(g, a)| (g.name().to_string(), matrix_to_json(a)))
        .collect();
    json!({
        "l": m.order(),
        "presentation": m.presentation().name(),
        "dim": m.dim(),
        "labels": m.labels(),
        "matrices": mats,
    })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::InvalidInput(format!("module JSON lacks '{key}'")))
}

/// Reads a module; relations are checked unless `check` is false.
pub fn module_from_json(v: &Value, check: bool) -> Result<MatrixModule> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("module JSON must be an object".into()))?;
    let l = field(obj, "l")?
        .as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::InvalidInput("'l' must be a positive integer".into()))?;
    let pres: Presentation = field(obj, "presentation")?
        .as_str()
        .ok_or_else(|| Error::InvalidInput("'presentation' must be a string".into()))?
        .parse()?;
    let dim = field(obj, "dim")?
        .as_u64()
        .ok_or_else(|| Error::InvalidInput("'dim' must be an integer".into()))? as usize;
    let labels: Vec<String> = match obj.get("labels") {
        Some(Value::Array(a)) => a
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::InvalidInput("labels must be strings".into()))
            })
            .collect::<Result<_>>()?,
        None => (0..dim).map(|i| format!("v{i}")).collect(),
        Some(_) => return Err(Error::InvalidInput("'labels' must be an array".into())),
    };
    if labels.len() != dim {
        return Err(Error::InvalidInput(format!("{} labels for dimension {dim}", labels.len())));
    }
    let mats_obj = field(obj, "matrices")?
        .as_object()
        .ok_or_else(|| Error::InvalidInput("'matrices' must be an object".into()))?;
    let mut mats = BTreeMap::new();
    for (name, data) in mats_obj {
        let g: Generator = name.parse()?;
        let entries = data
            .as_array()
            .ok_or_else(|| Error::InvalidInput(format!("matrix {name} must be an array")))?;
        if entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "matrix {name} has {} entries, expected {}",
                entries.len(),
                dim * dim
            )));
        }
        let vals = entries
            .iter()
            .map(|e| cyclo_from_json(l, e))
            .collect::<Result<Vec<_>>>()?;
        mats.insert(g, Matrix::from_flat(l, dim, dim, vals)?);
    }
    if check {
        MatrixModule::new(l, pres, labels, mats)
    } else {
        MatrixModule::new_unchecked(l, pres, labels, mats)
    }
}

pub fn module_from_str(s: &str, check: bool) -> Result<MatrixModule> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    module_from_json(&v, check)
}

//! Text and JSON forms of matrices, ideals, groups and reports.
//!
//! Matrix text: first line `n`, then `n` lines of `n` integers. Matrix
//! JSON: `{"n":3,"rows":[[..],..]}`. Ideal JSON:
//! `{"field":"x^3-23x^2+7x-1","denom":1,"basis_columns":[[8,0,0],[7,1,0],[7,0,1]]}`,
//! the canonical Hermite columns over `denom`. Integers of any size are
//! written as plain JSON numbers.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::group::AbelianGroup;
use crate::ideals::ZLattice;
use crate::invariants::{EquivalenceVerdict, PeriodicStructure, VerdictKind};
use crate::numberfield::NumberField;
use crate::orders::OrderLattice;
use crate::polyring::{parse_poly, RatPoly};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(k: &BigInt) -> Value {
    Value::Number(Number::from_str(&k.to_string()).expect("decimal integer"))
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| perr(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| perr(format!("not an integer: {s:?}"))),
        _ => Err(perr(format!("expected an integer, got {v}"))),
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_to_json(q.numer())
    } else {
        Value::String(q.to_string())
    }
}

fn int_array(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array().ok_or_else(|| perr("expected an array"))?.iter().map(int_from_json).collect()
}

/// Text or JSON; JSON is recognized by a leading `{`.
pub fn parse_matrix(s: &str) -> Result<IntMatrix> {
    if s.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
        matrix_from_json(&v)
    } else {
        parse_matrix_text(s)
    }
}

/// Also accepts literals: `[[0,1],[1,1]]`, `0 1; 1 1`, or rows on lines without a header.
pub fn parse_matrix_loose(s: &str) -> Result<IntMatrix> {
    let t = s.trim();
    if t.starts_with('[') {
        let rows: Value = serde_json::from_str(t).map_err(|e| perr(format!("matrix literal: {e}")))?;
        let n = rows.as_array().map_or(0, Vec::len);
        return matrix_from_json(&json!({ "n": n, "rows": rows }));
    }
    if t.starts_with('{') {
        return parse_matrix(t);
    }
    // a lone number on the first line is a dimension header
    let first = t.lines().next().unwrap_or("");
    if t.contains('\n') && first.split_whitespace().count() == 1 && !first.contains(';') {
        return parse_matrix_text(t);
    }
    let rows: Vec<&str> = t.split([';', '\n']).map(str::trim).filter(|r| !r.is_empty()).collect();
    let mut text = format!("{}\n", rows.len());
    for r in rows {
        text.push_str(r);
        text.push('\n');
    }
    parse_matrix_text(&text)
}

pub fn parse_matrix_text(s: &str) -> Result<IntMatrix> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| perr("empty matrix file"))?
        .parse()
        .map_err(|_| perr("first line must be the dimension"))?;
    if n == 0 {
        return Err(perr("dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines.next().ok_or_else(|| perr(format!("expected {n} rows, found {i}")))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| perr(format!("bad entry {t:?} in row {}", i + 1))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(perr(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(perr(format!("unexpected trailing line {extra:?}")));
    }
    IntMatrix::from_rows(rows)
}

pub fn matrix_to_text(a: &IntMatrix) -> String {
    let mut out = format!("{}\n", a.rows());
    for r in a.to_rows() {
        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(a: &IntMatrix) -> Value {
    let rows: Vec<Value> = a.to_rows().iter().map(|r| Value::Array(r.iter().map(int_to_json).collect())).collect();
    json!({ "n": a.rows(), "rows": rows })
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| perr("matrix JSON needs \"n\""))? as usize;
    let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| perr("matrix JSON needs \"rows\""))?;
    if n == 0 || rows.len() != n {
        return Err(perr(format!("expected {n} rows, found {}", rows.len())));
    }
    let rows: Vec<Vec<BigInt>> = rows.iter().map(int_array).collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != n) {
        return Err(perr("every row must have n entries"));
    }
    IntMatrix::from_rows(rows)
}

pub fn ideal_to_json(l: &ZLattice) -> Value {
    let cols: Vec<Value> = l.basis().columns().iter().map(|c| Value::Array(c.iter().map(int_to_json).collect())).collect();
    json!({
        "field": l.field().poly().to_string(),
        "denom": int_to_json(l.denom()),
        "basis_columns": cols,
    })
}

/// Accepts any full-rank basis; the result is in canonical form.
pub fn ideal_from_json(v: &Value) -> Result<ZLattice> {
    let field = v.get("field").and_then(Value::as_str).ok_or_else(|| perr("ideal JSON needs \"field\""))?;
    let field = NumberField::parse(field)?;
    ideal_from_json_in(&field, v)
}

pub fn ideal_from_json_in(field: &Arc<NumberField>, v: &Value) -> Result<ZLattice> {
    if let Some(f) = v.get("field").and_then(Value::as_str) {
        if NumberField::parse(f)?.poly() != field.poly() {
            return Err(Error::FieldMismatch);
        }
    }
    let denom = int_from_json(v.get("denom").ok_or_else(|| perr("ideal JSON needs \"denom\""))?)?;
    let cols = v
        .get("basis_columns")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("ideal JSON needs \"basis_columns\""))?;
    let n = field.degree();
    let cols: Vec<Vec<BigInt>> = cols.iter().map(int_array).collect::<Result<_>>()?;
    if cols.len() != n || cols.iter().any(|c| c.len() != n) {
        return Err(perr(format!("basis_columns must be {n} columns of length {n}")));
    }
    ZLattice::from_parts(field, denom, &IntMatrix::from_columns(&cols)?)
}

pub fn group_to_json(g: &AbelianGroup) -> Value {
    Value::String(g.to_string())
}

fn opt_group_json(g: &Option<AbelianGroup>) -> Value {
    g.as_ref().map_or(Value::Null, group_to_json)
}

fn opt_group_from_json(v: &Value) -> Result<Option<AbelianGroup>> {
    match v {
        Value::Null => Ok(None),
        Value::String(s) => Ok(Some(s.parse()?)),
        _ => Err(perr("group must be a string or null")),
    }
}

/// `{"verdict":..,"witness":..,"groups":{"A":..,"B":..},"reason":..,"bound":..}`,
/// absent fields omitted; a `null` group means `g(·)` is not integral.
pub fn verdict_to_json(v: &EquivalenceVerdict) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), Value::String(v.kind.as_str().into()));
    if let Some(w) = &v.witness {
        m.insert("witness".into(), Value::String(w.to_string()));
    }
    if let Some((a, b)) = &v.groups {
        m.insert("groups".into(), json!({ "A": opt_group_json(a), "B": opt_group_json(b) }));
    }
    if let Some(r) = &v.reason {
        m.insert("reason".into(), Value::String(r.clone()));
    }
    if let Some(b) = v.bound {
        m.insert("bound".into(), Value::from(b));
    }
    Value::Object(m)
}

pub fn verdict_from_json(v: &Value) -> Result<EquivalenceVerdict> {
    let kind_str = v.get("verdict").and_then(Value::as_str).ok_or_else(|| perr("verdict JSON needs \"verdict\""))?;
    let kind = [
        VerdictKind::LEquivalent,
        VerdictKind::NotLEquivalent,
        VerdictKind::BfDistinguished,
        VerdictKind::BfCertified,
        VerdictKind::StrongBfCertified,
        VerdictKind::StrongBfRefuted,
        VerdictKind::Inconclusive,
    ]
    .into_iter()
    .find(|k| k.as_str() == kind_str)
    .ok_or_else(|| perr(format!("unknown verdict {kind_str:?}")))?;
    let witness = match v.get("witness") {
        Some(Value::String(s)) => Some(parse_poly(s, "x")?),
        None | Some(Value::Null) => None,
        _ => return Err(perr("witness must be a string")),
    };
    let groups = match v.get("groups") {
        Some(g) => Some((
            opt_group_from_json(g.get("A").unwrap_or(&Value::Null))?,
            opt_group_from_json(g.get("B").unwrap_or(&Value::Null))?,
        )),
        None => None,
    };
    let reason = v.get("reason").and_then(Value::as_str).map(String::from);
    let bound = v.get("bound").and_then(Value::as_u64);
    Ok(EquivalenceVerdict { kind, witness, groups, reason, bound })
}

pub fn lattice_to_json(lat: &OrderLattice) -> Value {
    let nodes: Vec<Value> = lat
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "id": i,
                "index": int_to_json(&r.index()),
                "basis": r.to_string(),
                "ideal": ideal_to_json(r),
            })
        })
        .collect();
    let edges: Vec<Value> = lat.edges().iter().map(|&(a, b)| json!([a, b])).collect();
    json!({
        "field": lat.field().poly().to_string(),
        "nodes": nodes,
        "edges": edges,
        "min": lat.min_index(),
        "max": lat.max_index(),
    })
}

pub fn periodic_to_json(s: &PeriodicStructure) -> Value {
    let gens: Vec<Value> = s.generators.iter().map(|g| Value::Array(g.iter().map(rational_to_json).collect())).collect();
    json!({
        "k": s.k,
        "group": group_to_json(&s.group),
        "orders": s.orders.iter().map(int_to_json).collect::<Vec<_>>(),
        "generators": gens,
    })
}

/// Polynomial in `x` with rational coefficients.
pub fn parse_x_poly(s: &str) -> Result<RatPoly> {
    parse_poly(s, "x")
}

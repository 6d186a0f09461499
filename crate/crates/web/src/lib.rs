//! Browser bindings. Each export takes plain strings and returns a JSON
//! string: the result, or `{"error": name, "message": text}`.

use bftorus::formats::{group_to_json, int_to_json, lattice_to_json, parse_matrix_loose, parse_x_poly, rational_to_json};
use bftorus::invariants::{bf_group, periodic_structure};
use bftorus::numberfield::NumberField;
use bftorus::orders::enumerate_order_lattice;
use bftorus::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest field degree accepted by the lattice view.
pub const MAX_LATTICE_DEGREE: usize = 4;

fn respond(r: Result<Value>) -> String {
    let v = r.unwrap_or_else(|e| json!({ "error": e.name(), "message": e.to_string() }));
    serde_json::to_string(&v).expect("serializable")
}

fn to_f64(q: &bftorus::BigRational) -> f64 {
    // coordinates lie in [0, 1) and have small denominators in practice
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

pub fn periodic_points_json(matrix: &str, k: u64, limit: usize) -> Result<Value> {
    let a = parse_matrix_loose(matrix)?;
    if a.rows() != 2 {
        return Err(Error::DimensionMismatch("the torus view needs a 2x2 matrix".into()));
    }
    let s = periodic_structure(&a, k)?;
    let gens: Vec<Value> = s.generators.iter().map(|g| Value::Array(g.iter().map(rational_to_json).collect())).collect();
    let (points, exact) = match s.points(limit) {
        Some(pts) => (
            Value::Array(pts.iter().map(|p| json!([to_f64(&p[0]), to_f64(&p[1])])).collect()),
            Value::Array(pts.iter().map(|p| json!([p[0].to_string(), p[1].to_string()])).collect()),
        ),
        None => (Value::Null, Value::Null),
    };
    Ok(json!({
        "k": k,
        "group": group_to_json(&s.group),
        "count": s.group.order().map(|o| int_to_json(&o)),
        "orders": s.orders.iter().map(int_to_json).collect::<Vec<_>>(),
        "generators": gens,
        "points": points,
        "exact": exact,
    }))
}

pub fn order_lattice_json(poly: &str) -> Result<Value> {
    let p = parse_x_poly(poly)?.to_integer().ok_or_else(|| Error::Parse("coefficients must be integers".into()))?;
    let k = NumberField::new(p)?;
    if k.degree() > MAX_LATTICE_DEGREE {
        return Err(Error::UnsupportedDegree(k.degree()));
    }
    let lat = enumerate_order_lattice(&k)?;
    let mut v = lattice_to_json(&lat);
    v["levels"] = json!(lat.levels());
    v["hasse"] = Value::String(lat.render_ascii());
    Ok(v)
}

pub fn bf_group_json(matrix: &str, poly: &str) -> Result<Value> {
    let a = parse_matrix_loose(matrix)?;
    let g = parse_x_poly(poly)?;
    let grp = bf_group(&a, &g)?;
    Ok(json!({
        "n": a.rows(),
        "char_poly": a.char_poly()?.to_string(),
        "g": g.to_string(),
        "group": group_to_json(&grp),
        "order": grp.order().map(|o| int_to_json(&o)),
        "free_rank": grp.free_rank(),
    }))
}

#[wasm_bindgen]
pub fn periodic_points(matrix: &str, k: u32, limit: u32) -> String {
    respond(periodic_points_json(matrix, u64::from(k), limit as usize))
}

#[wasm_bindgen]
pub fn order_lattice(poly: &str) -> String {
    respond(order_lattice_json(poly))
}

#[wasm_bindgen]
pub fn bf_calculator(matrix: &str, poly: &str) -> String {
    respond(bf_group_json(matrix, poly))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn torus_points() {
        let v = parse(&periodic_points("2 1; 1 1", 2, 100));
        assert_eq!(v["group"], "Z5");
        assert_eq!(v["points"].as_array().unwrap().len(), 5);
        assert_eq!(v["exact"][1], json!(["1/5", "2/5"]));
        let v = parse(&periodic_points("2 1; 1 1", 4, 10));
        assert_eq!(v["count"], 45);
        assert!(v["points"].is_null());
        assert_eq!(parse(&periodic_points("0 1; 1 0", 2, 10))["error"], "DegeneratePeriod");
        assert_eq!(parse(&periodic_points("1", 1, 10))["error"], "DimensionMismatch");
    }

    #[test]
    fn lattice_view() {
        let v = parse(&order_lattice("x^2-34x+1"));
        assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
        assert_eq!(v["levels"], json!([0, 1, 1, 2, 2, 3]));
        assert_eq!(parse(&order_lattice("x^2-1"))["error"], "ReduciblePolynomial");
        assert_eq!(parse(&order_lattice("x^5-x-1"))["error"], "UnsupportedDegree");
    }

    #[test]
    fn calculator() {
        let v = parse(&bf_calculator("0 1 0\n0 0 1\n1 -7 23", "x-1"));
        assert_eq!(v["group"], "Z16");
        assert_eq!(v["char_poly"], "x^3-23x^2+7x-1");
        let v = parse(&bf_calculator("[[1,0],[0,1]]", "x-1"));
        assert_eq!(v["group"], "Z^2");
        assert_eq!(v["free_rank"], 2);
        assert_eq!(parse(&bf_calculator("0 -1; 1 1", "(x^2+1)/2"))["error"], "NonIntegralResult");
        assert_eq!(parse(&bf_calculator("1 2; 3", "x"))["error"], "ParseError");
    }
}

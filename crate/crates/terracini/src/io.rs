//! JSON formats for cones, polynomials, point sets and ray lists, and input sources.

use std::io::Read;
use std::path::Path;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use terracini_core::cones::ConeModel;
use terracini_core::hyperbolic::HyperbolicPoly;
use terracini_core::neighborly::builtin_points;
use terracini_core::poly::{rational, SparsePoly};
use terracini_core::{Error, Result};

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// Reads an argument that is `-` (stdin), a path to an existing file, or literal text.
pub fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    let p = Path::new(arg);
    if p.is_file() {
        return std::fs::read_to_string(p).map_err(|e| usage(format!("reading {arg}: {e}")));
    }
    Ok(arg.to_string())
}

/// Parses JSON text.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| usage(format!("malformed JSON: {e}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| usage(format!("'{what}' must be a nonnegative integer")))
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| usage(format!("'{what}' must be a number")))
}

/// A JSON array of numbers.
pub fn vector_from_json(v: &Value, what: &str) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| usage(format!("'{what}' must be an array of numbers")))?
        .iter()
        .map(|x| as_f64(x, what))
        .collect()
}

/// A JSON array of arrays of numbers.
pub fn vectors_from_json(v: &Value, what: &str) -> Result<Vec<Vec<f64>>> {
    v.as_array()
        .ok_or_else(|| usage(format!("'{what}' must be an array of arrays")))?
        .iter()
        .map(|r| vector_from_json(r, what))
        .collect()
}

/// Comma-separated numbers such as `1,1,1`.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let t = text.trim();
    if t.starts_with('[') {
        return vector_from_json(&parse_json(t)?, "vector");
    }
    t.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| usage(format!("bad number '{s}' in '{text}'"))))
        .collect()
}

fn int_from_json(v: &Value, what: &str) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(s) = v.as_str() {
        return s.trim().parse::<BigInt>().map_err(|_| usage(format!("bad integer '{s}' in '{what}'")));
    }
    Err(usage(format!("'{what}' must be an integer or a decimal string")))
}

fn coef_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else {
                rational(n.as_f64().ok_or_else(|| usage("bad coefficient"))?)
            }
        }
        Value::Object(o) => {
            let num = int_from_json(o.get("num").ok_or_else(|| usage("coefficient object needs 'num'"))?, "num")?;
            let den = match o.get("den") {
                Some(d) => int_from_json(d, "den")?,
                None => BigInt::one(),
            };
            if den == BigInt::from(0) {
                return Err(usage("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        _ => Err(usage("coefficient must be a number or {\"num\", \"den\"}")),
    }
}

/// `{"num_vars": n, "terms": [{"exps": [...], "coef": number | {"num", "den"}}]}`.
pub fn poly_from_json(v: &Value) -> Result<SparsePoly> {
    let n = as_usize(v.get("num_vars").ok_or_else(|| usage("polynomial needs 'num_vars'"))?, "num_vars")?;
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| usage("polynomial needs a 'terms' array"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let exps = t
            .get("exps")
            .and_then(Value::as_array)
            .ok_or_else(|| usage("term needs an 'exps' array"))?
            .iter()
            .map(|e| e.as_u64().map(|x| x as u32).ok_or_else(|| usage("exponents must be nonnegative integers")))
            .collect::<Result<Vec<u32>>>()?;
        let coef = coef_from_json(t.get("coef").ok_or_else(|| usage("term needs 'coef'"))?)?;
        out.push((exps, coef));
    }
    SparsePoly::from_terms(n, out)
}

fn int_to_json(i: &BigInt) -> Value {
    match i.to_i64() {
        Some(x) => json!(x),
        None => json!(i.to_string()),
    }
}

/// Inverse of [`poly_from_json`]; integer coefficients are plain numbers.
pub fn poly_to_json(p: &SparsePoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| {
            let coef = if c.is_integer() {
                int_to_json(c.numer())
            } else {
                json!({"num": int_to_json(c.numer()), "den": int_to_json(c.denom())})
            };
            json!({"exps": e, "coef": coef})
        })
        .collect();
    json!({"num_vars": p.num_vars(), "terms": terms})
}

/// A polynomial given as JSON, as monomial text, or via a file or stdin holding either.
pub fn read_poly(arg: &str, num_vars: Option<usize>) -> Result<SparsePoly> {
    let text = read_source(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        let p = poly_from_json(&parse_json(t)?)?;
        if let Some(n) = num_vars {
            if n != p.num_vars() {
                return Err(usage(format!("polynomial has {} variables, expected {}", p.num_vars(), n)));
            }
        }
        Ok(p)
    } else {
        SparsePoly::parse(t, num_vars)
    }
}

fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(usage("matrix rows have different lengths"));
    }
    Ok(DMatrix::from_fn(m, n, |i, j| rows[i][j]))
}

/// Cone JSON: `{"type": "polyhedral" | "psd" | "linear_image" | "hyperbolicity" | "veronese", ...}`.
pub fn cone_from_json(v: &Value) -> Result<ConeModel> {
    let ty = v.get("type").and_then(Value::as_str).ok_or_else(|| usage("cone needs a string 'type'"))?;
    let field = |name: &str| v.get(name).ok_or_else(|| usage(format!("{ty} cone needs '{name}'")));
    match ty {
        "polyhedral" => ConeModel::polyhedral(vectors_from_json(field("generators")?, "generators")?),
        "psd" => Ok(ConeModel::psd(as_usize(field("d")?, "d")?)),
        "linear_image" => {
            let base = cone_from_json(field("base")?)?;
            let map = matrix_from_rows(&vectors_from_json(field("map")?, "map")?)?;
            ConeModel::linear_image(base, map)
        }
        "hyperbolicity" => {
            let p = match field("poly")? {
                Value::String(s) => SparsePoly::parse(s, None)?,
                other => poly_from_json(other)?,
            };
            let e = vector_from_json(field("e")?, "e")?;
            Ok(ConeModel::Hyperbolicity(HyperbolicPoly::new(p, e)?))
        }
        "veronese" => ConeModel::veronese(as_usize(field("n")?, "n")?, as_usize(field("two_d")?, "two_d")?),
        "builtin" => ConeModel::builtin(field("name")?.as_str().ok_or_else(|| usage("'name' must be a string"))?),
        other => Err(usage(format!("unknown cone type '{other}'"))),
    }
}

/// Inverse of [`cone_from_json`].
pub fn cone_to_json(c: &ConeModel) -> Value {
    match c {
        ConeModel::Polyhedral { generators, .. } => json!({"type": "polyhedral", "generators": generators}),
        ConeModel::Psd { d } => json!({"type": "psd", "d": d}),
        ConeModel::LinearImage { base, map } => {
            let rows: Vec<Vec<f64>> = (0..map.nrows()).map(|i| map.row(i).iter().copied().collect()).collect();
            json!({"type": "linear_image", "base": cone_to_json(base), "map": rows})
        }
        ConeModel::Hyperbolicity(h) => json!({"type": "hyperbolicity", "poly": poly_to_json(h.poly()), "e": h.e()}),
        ConeModel::Veronese { n, two_d } => json!({"type": "veronese", "n": n, "two_d": two_d}),
    }
}

/// A cone given by built-in name, inline JSON, or a file or stdin holding JSON.
pub fn read_cone(arg: &str) -> Result<ConeModel> {
    let text = read_source(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        cone_from_json(&parse_json(t)?)
    } else {
        ConeModel::builtin(t)
    }
}

/// Points or rays: a built-in point-set name, or JSON (an array of arrays, or an
/// object with a `points` or `rays` array) inline, in a file, or on stdin.
pub fn read_vectors(arg: &str) -> Result<Vec<Vec<f64>>> {
    let text = read_source(arg)?;
    let t = text.trim();
    if !(t.starts_with('[') || t.starts_with('{')) {
        return builtin_points(t);
    }
    let v = parse_json(t)?;
    let arr = match &v {
        Value::Object(o) => o.get("points").or_else(|| o.get("rays")).ok_or_else(|| usage("expected a 'points' or 'rays' array"))?,
        other => other,
    };
    vectors_from_json(arr, "points")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let p = SparsePoly::parse("2 x1^2 x3 - 1/3 x2 x3^2", None).unwrap();
        let v = poly_to_json(&p);
        assert_eq!(poly_from_json(&v).unwrap(), p);
        let q = poly_from_json(&json!({"num_vars": 2, "terms": [{"exps": [1, 1], "coef": {"num": 1, "den": 2}}]})).unwrap();
        assert_eq!(q, SparsePoly::parse("1/2 x1 x2", Some(2)).unwrap());
    }

    #[test]
    fn cone_round_trip() {
        for name in ["psd:3", "square-cone", "veronese:2:4", "esym:3:1"] {
            let c = ConeModel::builtin(name).unwrap();
            let v = cone_to_json(&c);
            assert_eq!(cone_to_json(&cone_from_json(&v).unwrap()), v);
        }
        let img = json!({"type": "linear_image", "base": {"type": "psd", "d": 2}, "map": [[1.0, 0.0, 1.0], [1.0, 0.0, 0.0]]});
        assert_eq!(cone_to_json(&cone_from_json(&img).unwrap()), img);
    }

    #[test]
    fn malformed_inputs_are_usage_errors() {
        assert_eq!(read_cone("{\"type\": ").unwrap_err().kind(), "usage");
        assert_eq!(read_cone("{\"type\": \"cube\"}").unwrap_err().kind(), "usage");
        assert_eq!(parse_vector("1,x").unwrap_err().kind(), "usage");
    }

    #[test]
    fn vectors_from_names_and_json() {
        assert_eq!(read_vectors("blekherman-s").unwrap().len(), 7);
        assert_eq!(read_vectors("{\"rays\": [[1, 0], [0, 1]]}").unwrap(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }
}

//! Product spec files: `{"phase": [re, im], "zeros": [[re, im, mult], ...]}`.
//!
//! `phase` may be omitted (defaults to 1) and a zero may be written `[re, im]` for
//! multiplicity one. Every error names the offending field or zero index.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::blaschke::BlaschkeProduct;
use crate::hyperbolic::ComplexPoint;

fn number(value: &Value, field: &str) -> Result<f64, String> {
    match value.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(format!("{field}: expected a finite number, found {value}")),
    }
}

fn zero_entry(value: &Value, index: usize) -> Result<(ComplexPoint, u32), String> {
    let field = format!("zeros[{index}]");
    let items = value.as_array().ok_or_else(|| format!("{field}: expected [re, im, mult], found {value}"))?;
    if !(items.len() == 2 || items.len() == 3) {
        return Err(format!("{field}: expected [re, im] or [re, im, mult], found {} entries", items.len()));
    }
    let z = ComplexPoint::new(number(&items[0], &format!("{field}[0]"))?, number(&items[1], &format!("{field}[1]"))?);
    if z.norm() >= 1.0 - crate::hyperbolic::BOUNDARY_TOLERANCE {
        return Err(format!("{field}: |z| = {} is not inside the unit disk", z.norm()));
    }
    let multiplicity = match items.get(2) {
        None => 1,
        Some(m) => match m.as_u64() {
            Some(m) if m >= 1 && m <= u32::MAX as u64 => m as u32,
            _ => return Err(format!("{field}[2]: multiplicity must be a positive integer, found {m}")),
        },
    };
    Ok((z, multiplicity))
}

/// Parses spec JSON text into a product.
pub fn parse_product(text: &str) -> Result<BlaschkeProduct, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let object = value.as_object().ok_or("expected a JSON object with fields `phase` and `zeros`")?;
    if let Some(unknown) = object.keys().find(|k| *k != "phase" && *k != "zeros") {
        return Err(format!("{unknown}: unknown field"));
    }
    let phase = match object.get("phase") {
        None => ComplexPoint::new(1.0, 0.0),
        Some(p) => {
            let items = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| format!("phase: expected [re, im], found {p}"))?;
            let phase = ComplexPoint::new(number(&items[0], "phase[0]")?, number(&items[1], "phase[1]")?);
            if (phase.norm() - 1.0).abs() > 1e-9 {
                return Err(format!("phase: |phase| = {} is not 1", phase.norm()));
            }
            // Renormalize so that spec files written to a few digits are accepted.
            phase / phase.norm()
        }
    };
    let zeros = object.get("zeros").ok_or("zeros: missing field")?;
    let zeros = zeros.as_array().ok_or_else(|| format!("zeros: expected an array, found {zeros}"))?;
    if zeros.is_empty() {
        return Err("zeros: at least one zero is required".into());
    }
    let zeros = zeros.iter().enumerate().map(|(i, z)| zero_entry(z, i)).collect::<Result<Vec<_>, _>>()?;
    BlaschkeProduct::new(phase, zeros).map_err(|e| e.to_string())
}

pub fn read_product(path: &Path) -> Result<BlaschkeProduct, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_product(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// The spec form of a product.
pub fn product_to_json(b: &BlaschkeProduct) -> Value {
    let mut object = Map::new();
    object.insert("phase".into(), json!([b.phase().re, b.phase().im]));
    object.insert(
        "zeros".into(),
        Value::Array(b.zeros().iter().map(|z| json!([z.location.re, z.location.im, z.multiplicity])).collect()),
    );
    Value::Object(object)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let b = parse_product(r#"{"phase": [0, 1], "zeros": [[0.6, 0, 1], [-0.6, 0]]}"#).unwrap();
        assert_eq!(b.degree(), 2);
        assert_eq!(b.phase(), ComplexPoint::new(0.0, 1.0));
        let again = parse_product(&product_to_json(&b).to_string()).unwrap();
        assert_eq!(again, b);
        assert_eq!(parse_product(r#"{"zeros": [[0.5, 0, 2]]}"#).unwrap().degree(), 2);
    }

    #[test]
    fn errors_name_the_field() {
        let cases = [
            (r#"{"zeros": [[0.1, 0, 1], [0.2, "x", 1]]}"#, "zeros[1][1]"),
            (r#"{"zeros": [[0.1, 0, 1], [0.2]]}"#, "zeros[1]"),
            (r#"{"zeros": [[1.5, 0, 1]]}"#, "zeros[0]"),
            (r#"{"zeros": [[0.1, 0, 0]]}"#, "zeros[0][2]"),
            (r#"{"zeros": []}"#, "zeros"),
            (r#"{"phase": [2, 0], "zeros": [[0.1, 0]]}"#, "phase"),
            (r#"{"phase": 1, "zeros": [[0.1, 0]]}"#, "phase"),
            (r#"{"zeros": [[0.1, 0]], "extra": 1}"#, "extra"),
            (r#"{"phase": [1, 0]}"#, "zeros"),
            ("[1, 2]", "object"),
            ("{", "invalid JSON"),
        ];
        for (text, needle) in cases {
            let message = parse_product(text).unwrap_err();
            assert!(message.contains(needle), "{text}: {message}");
        }
    }
}

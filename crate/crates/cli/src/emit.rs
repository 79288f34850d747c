//! Deterministic JSON and CSV encoders.
//!
//! Every real is written as `{:.16e}` (17 significant digits), which parses
//! back to the identical double. JSON numbers go through the same path via a
//! custom `serde_json` formatter.

use std::io;

use multihead::analytic::StateSpec;
use multihead::grid::{GridRequest, WignerGrid};
use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(real(value).as_bytes())
    }
}

/// Compact JSON with a trailing newline.
pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("serializing a JSON value into memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Non-finite values have no JSON encoding and become `null`; `-0` is
/// written as `0`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x + 0.0).map_or(Value::Null, Value::Number)
}

pub fn complex(z: C64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn spec_json(spec: &StateSpec) -> Value {
    let a = spec.alpha();
    json!({
        "alpha": complex(a.to_complex()),
        "modulus": num(a.r()),
        "theta_p": num(a.theta_p()),
        "n_heads": spec.n_heads(),
        "family": spec.family().to_string(),
    })
}

/// Common envelope for every JSON document.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut doc = json!({ "command": command, "version": VERSION });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    doc
}

pub const WIGNER_HEADER: &str = "x,y,w";

pub fn wigner_csv(grid: &WignerGrid) -> String {
    let mut out = String::with_capacity(64 * grid.values().len() + 8);
    write_rows(&mut out, grid.rows());
    out
}

fn write_rows(out: &mut String, rows: impl Iterator<Item = (f64, f64, f64)>) {
    out.push_str(WIGNER_HEADER);
    out.push('\n');
    for (x, y, w) in rows {
        out.push_str(&real(x));
        out.push(',');
        out.push_str(&real(y));
        out.push(',');
        out.push_str(&real(w));
        out.push('\n');
    }
}

/// Reads `x,y,w` rows back.
pub fn parse_wigner_csv(text: &str) -> Result<Vec<(f64, f64, f64)>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(WIGNER_HEADER) {
        return Err(format!("missing '{WIGNER_HEADER}' header"));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(format!("line {}: expected 3 columns", i + 2));
            }
            let mut v = [0.0; 3];
            for (slot, c) in v.iter_mut().zip(&cols) {
                *slot = c.parse().map_err(|_| format!("line {}: bad number '{c}'", i + 2))?;
            }
            Ok((v[0], v[1], v[2]))
        })
        .collect()
}

/// Re-emits parsed rows in the same layout as [`wigner_csv`].
pub fn rows_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::new();
    write_rows(&mut out, rows.iter().copied());
    out
}

pub fn wigner_json(grid: &WignerGrid) -> Value {
    let r: &GridRequest = &grid.request;
    envelope(
        "wigner",
        json!({
            "spec": spec_json(&r.spec),
            "grid": {
                "x_min": num(r.x_min), "x_max": num(r.x_max), "nx": r.nx,
                "y_min": num(r.y_min), "y_max": num(r.y_max), "ny": r.ny,
                "order": "y-major",
                "beta": "(x + iy)/sqrt(2)",
            },
            "min": num(grid.min()),
            "max": num(grid.max()),
            "values": grid.values().iter().map(|&w| num(w)).collect::<Vec<_>>(),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02e23, 0.0, -0.0, f64::MIN_POSITIVE] {
            let s = real(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_uses_scientific_reals() {
        let s = to_json(&json!({ "a": num(0.5), "b": 3, "z": complex(C64::new(1.0, -2.0)) }));
        assert_eq!(
            s,
            "{\"a\":5.0000000000000000e-1,\"b\":3,\"z\":{\"im\":-2.0000000000000000e0,\"re\":1.0000000000000000e0}}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["z"]["im"].as_f64(), Some(-2.0));
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![(0.0, -1.5, 1.0 / 7.0), (1e-20, 2.0, -3.3e-5)];
        let text = rows_csv(&rows);
        assert_eq!(parse_wigner_csv(&text).unwrap(), rows);
        assert_eq!(rows_csv(&parse_wigner_csv(&text).unwrap()), text);
        assert!(parse_wigner_csv("x,y\n").is_err());
        assert!(parse_wigner_csv("x,y,w\n1,2\n").is_err());
    }
}

//! File formats: edge lists, weight files and JSON report helpers.
//!
//! A weight file is either `{"preset": name, "params": {...}}` or
//! `{"preset": "custom", "tau": [...], "upsilon": [...]}`. Complex numbers are
//! written as `[re, im]`; a bare number is read as real.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, SymmetricDigraph};
use crate::zeta::{make_weights, Preset, WeightParams, WeightScheme};

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn load_graph(path: &Path) -> Result<Multigraph> {
    Multigraph::parse(&read_text(path)?)
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum ComplexRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexRepr> for Complex64 {
    fn from(z: ComplexRepr) -> Self {
        match z {
            ComplexRepr::Real(x) => Complex64::new(x, 0.0),
            ComplexRepr::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

fn to_complex(v: Option<Vec<ComplexRepr>>) -> Option<Vec<Complex64>> {
    v.map(|xs| xs.into_iter().map(Into::into).collect())
}

#[derive(Debug, Default, Deserialize)]
struct ParamsRepr {
    q: Option<ComplexRepr>,
    tau: Option<Vec<ComplexRepr>>,
    upsilon: Option<Vec<ComplexRepr>>,
}

#[derive(Debug, Deserialize)]
struct WeightFile {
    preset: String,
    #[serde(default)]
    params: ParamsRepr,
    tau: Option<Vec<ComplexRepr>>,
    upsilon: Option<Vec<ComplexRepr>>,
}

/// Parses a weight document against the arc indexing of `d`.
pub fn parse_weights(text: &str, d: &SymmetricDigraph) -> Result<WeightScheme> {
    let file: WeightFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let preset: Preset = file.preset.parse()?;
    let params = WeightParams {
        q: file.params.q.map(Into::into),
        tau: to_complex(file.tau.or(file.params.tau)),
        upsilon: to_complex(file.upsilon.or(file.params.upsilon)),
    };
    make_weights(d, preset, &params)
}

pub fn load_weights(path: &Path, d: &SymmetricDigraph) -> Result<WeightScheme> {
    parse_weights(&read_text(path)?, d)
}

/// Custom-preset weight document for `w`.
pub fn weights_to_json(w: &WeightScheme) -> Value {
    let mut m = Map::new();
    m.insert("preset".into(), json!("custom"));
    m.insert("tau".into(), complex_list(w.tau()));
    m.insert("upsilon".into(), complex_list(w.upsilon()));
    Value::Object(m)
}

/// Rounds to 15 significant digits; the shortest round-trip form of the
/// result never needs more. Non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    // Avoid emitting -0.
    json!(if rounded == 0.0 { 0.0 } else { rounded })
}

pub fn complex(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

pub fn real_list(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Formats a float for CSV output under the same 15-digit rule.
pub fn csv_num(x: f64) -> String {
    match num(x) {
        Value::Number(n) => n.to_string(),
        _ => "nan".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn number_formatting() {
        assert_eq!(num(0.1 + 0.2).to_string(), "0.3");
        assert_eq!(num(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(num(-0.0).to_string(), "0.0");
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(csv_num(2.5), "2.5");
        assert_eq!(num(1e-20).to_string(), "1e-20");
    }

    #[test]
    fn weight_documents() {
        let d = SymmetricDigraph::new(families::cycle(3));
        let w = parse_weights(r#"{"preset": "grover"}"#, &d).unwrap();
        assert_eq!(w.preset(), Preset::Grover);
        let w = parse_weights(r#"{"preset": "bartholdi", "params": {"q": [2, 0.5]}}"#, &d).unwrap();
        assert_eq!(w.upsilon()[0], Complex64::new(1.0, 0.5));
        let w = parse_weights(
            r#"{"preset": "custom", "tau": [1, 2, 3, 4, 5, [0, 6]], "upsilon": [0, 0, 0, 0, 0, 0]}"#,
            &d,
        )
        .unwrap();
        assert_eq!(w.tau()[5], Complex64::new(0.0, 6.0));
        assert!(matches!(parse_weights(r#"{"preset": "custom", "tau": [1]}"#, &d), Err(Error::Input(_))));
        assert!(matches!(parse_weights("{", &d), Err(Error::Parse { .. })));
        assert!(parse_weights(r#"{"preset": "nope"}"#, &d).is_err());
    }

    #[test]
    fn weights_round_trip() {
        let d = SymmetricDigraph::new(families::complete(4));
        let w = make_weights(&d, Preset::Grover, &WeightParams::default()).unwrap();
        let text = to_json_string(&weights_to_json(&w));
        let back = parse_weights(&text, &d).unwrap();
        for (a, b) in back.tau().iter().zip(w.tau()) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}

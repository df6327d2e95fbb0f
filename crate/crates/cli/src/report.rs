//! Deterministic JSON and CSV emission. Numbers carry 12 significant digits;
//! infinite multiplicities are the string `"inf"`.

use std::collections::BTreeMap;

use boxspec_core::domains::{cardinal_json, multiplicity_json};
use boxspec_core::{Bidegree, HarmonicDims, Multiplicity, TruncatedSpectrum};
use serde_json::{json, Map, Value};

pub const CSV_HEADER: &str = "value,multiplicity,kind,J,k";

/// `v` rounded to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted floats parse")
}

pub fn number(v: f64) -> Value {
    Value::from(round12(v))
}

pub fn rows(s: &TruncatedSpectrum) -> Value {
    Value::Array(
        s.points()
            .iter()
            .map(|p| json!([number(p.value), multiplicity_json(p.multiplicity)]))
            .collect(),
    )
}

/// A report that is also a custom factor descriptor: it can be fed back
/// through the custom-spectrum loader.
pub fn spectrum_descriptor(
    dim: usize,
    spectra: &BTreeMap<Bidegree, TruncatedSpectrum>,
    harmonic: Option<&HarmonicDims>,
) -> Map<String, Value> {
    let mut out = Map::new();
    let cutoff = spectra
        .values()
        .map(|s| s.cutoff())
        .fold(f64::INFINITY, f64::min);
    out.insert("type".into(), Value::from("custom"));
    out.insert("dim".into(), Value::from(dim));
    out.insert(
        "pure_point".into(),
        Value::from(spectra.values().all(|s| s.is_pure_point())),
    );
    out.insert(
        "complete".into(),
        Value::from(spectra.values().all(|s| s.is_complete())),
    );
    if cutoff.is_finite() {
        out.insert("cutoff".into(), Value::from(cutoff));
    }
    out.insert(
        "spectra".into(),
        Value::Object(
            spectra
                .iter()
                .map(|(bd, s)| (bd.to_string(), rows(s)))
                .collect(),
        ),
    );
    if let Some(h) = harmonic {
        out.insert("harmonic".into(), harmonic_json(h));
    }
    out
}

pub fn harmonic_json(h: &HarmonicDims) -> Value {
    Value::Object(
        h.table
            .iter()
            .map(|(bd, d)| (bd.to_string(), cardinal_json(*d)))
            .collect(),
    )
}

pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn multiplicity_text(m: Multiplicity) -> String {
    m.to_string()
}

/// Quotes a CSV field when it holds a comma, quote or newline.
pub fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Csv {
    lines: Vec<String>,
}

impl Csv {
    pub fn row(&mut self, value: f64, multiplicity: Multiplicity, kind: &str, j: &str, k: &str) {
        self.lines.push(
            [
                round12(value).to_string(),
                multiplicity_text(multiplicity),
                csv_field(kind),
                csv_field(j),
                csv_field(k),
            ]
            .join(","),
        );
    }

    pub fn spectrum(&mut self, s: &TruncatedSpectrum, kind: &str) {
        for p in s.points() {
            self.row(p.value, p.multiplicity, kind, "", "");
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

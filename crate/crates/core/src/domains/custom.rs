//! JSON descriptors for factor domains.
//!
//! ```text
//! {"type":"disc","radius":R}
//! {"type":"rectangle","a":A,"b":B}
//! {"type":"custom","dim":D,"pure_point":BOOL,
//!  "spectra":{"P,Q":[[value,mult],...]},"harmonic":{"P,Q":mult},
//!  "cutoff":X,"complete":BOOL}
//! ```
//!
//! Multiplicities are positive integers or `"inf"`; harmonic dimensions may
//! also be `0`. `cutoff` and `complete` are optional: without a cutoff the
//! tables are taken as complete below whatever cutoff the job uses.

use std::io::Read;
use std::path::Path;

use serde_json::{Map, Value};

use super::PlanarDomain;
use crate::error::{Error, Result};
use crate::spectrum::{
    values_close, Bidegree, BidegreeSpectrum, ExtendedCardinal, HarmonicDims, Multiplicity,
    SpectralPoint, TruncatedSpectrum, DEFAULT_MERGE_TOL,
};

/// Cutoff recorded for custom tables that do not declare one.
pub const UNBOUNDED_CUTOFF: f64 = f64::MAX;

/// Reads a custom factor descriptor (or any report that embeds one at the
/// top level).
pub fn load_custom_spectrum<R: Read>(reader: R) -> Result<PlanarDomain> {
    let value: Value =
        serde_json::from_reader(reader).map_err(|e| Error::schema("", e.to_string()))?;
    parse_custom(&value, "", DEFAULT_MERGE_TOL)
}

pub fn load_custom_spectrum_path(path: impl AsRef<Path>) -> Result<PlanarDomain> {
    let file = std::fs::File::open(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    load_custom_spectrum(std::io::BufReader::new(file))
}

/// Escapes one JSON pointer reference token.
pub fn pointer_token(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn child(pointer: &str, token: impl std::fmt::Display) -> String {
    format!("{pointer}/{}", pointer_token(&token.to_string()))
}

fn as_object<'a>(value: &'a Value, pointer: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::schema(pointer, "expected an object"))
}

fn positive_number(obj: &Map<String, Value>, key: &str, pointer: &str) -> Result<f64> {
    let at = child(pointer, key);
    let v = obj
        .get(key)
        .ok_or_else(|| Error::schema(&at, format!("missing field \"{key}\"")))?
        .as_f64()
        .ok_or_else(|| Error::schema(&at, "expected a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::schema(at, format!("{key} must be positive")))
    }
}

/// Parses one factor descriptor. `pointer` locates `value` in the enclosing
/// document for error messages.
pub fn parse_factor(value: &Value, pointer: &str, merge_tol: f64) -> Result<PlanarDomain> {
    let obj = as_object(value, pointer)?;
    let kind = obj
        .get("type")
        .ok_or_else(|| Error::schema(child(pointer, "type"), "missing field \"type\""))?
        .as_str()
        .ok_or_else(|| Error::schema(child(pointer, "type"), "expected a string"))?;
    match kind {
        "disc" => Ok(PlanarDomain::Disc {
            radius: positive_number(obj, "radius", pointer)?,
        }),
        "rectangle" => Ok(PlanarDomain::Rectangle {
            a: positive_number(obj, "a", pointer)?,
            b: positive_number(obj, "b", pointer)?,
        }),
        "custom" => parse_custom(value, pointer, merge_tol),
        other => Err(Error::schema(
            child(pointer, "type"),
            format!("unknown factor type \"{other}\""),
        )),
    }
}

fn parse_custom(value: &Value, pointer: &str, merge_tol: f64) -> Result<PlanarDomain> {
    let obj = as_object(value, pointer)?;
    if let Some(kind) = obj.get("type") {
        if kind.as_str() != Some("custom") {
            return Err(Error::schema(child(pointer, "type"), "expected \"custom\""));
        }
    }
    let dim_at = child(pointer, "dim");
    let dim = obj
        .get("dim")
        .ok_or_else(|| Error::schema(&dim_at, "missing field \"dim\""))?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::schema(&dim_at, "dim must be a positive integer"))?
        as usize;

    let pure_point = match obj.get("pure_point") {
        None => true,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| Error::schema(child(pointer, "pure_point"), "expected a boolean"))?,
    };
    let complete = match obj.get("complete") {
        None => true,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| Error::schema(child(pointer, "complete"), "expected a boolean"))?,
    };
    let cutoff = match obj.get("cutoff") {
        None => UNBOUNDED_CUTOFF,
        Some(_) => positive_number(obj, "cutoff", pointer)?,
    };

    let spectra_at = child(pointer, "spectra");
    let spectra_obj = as_object(
        obj.get("spectra")
            .ok_or_else(|| Error::schema(&spectra_at, "missing field \"spectra\""))?,
        &spectra_at,
    )?;
    let mut spectra = BidegreeSpectrum::new(dim);
    for (key, table) in spectra_obj {
        let at = child(&spectra_at, key);
        let bidegree = parse_bidegree(key, dim, &at)?;
        let spectrum = parse_table(table, &at, cutoff, complete, merge_tol)?;
        spectra
            .table
            .insert(bidegree, spectrum.with_pure_point(pure_point));
    }

    let harmonic = match obj.get("harmonic") {
        None => None,
        Some(h) => {
            let at = child(pointer, "harmonic");
            let mut dims = HarmonicDims::new(dim);
            for (key, v) in as_object(h, &at)? {
                let cell_at = child(&at, key);
                let bidegree = parse_bidegree(key, dim, &cell_at)?;
                dims.table.insert(bidegree, parse_cardinal(v, &cell_at)?);
            }
            Some(dims)
        }
    };

    Ok(PlanarDomain::Custom {
        complex_dim: dim,
        spectra,
        harmonic,
        pure_point,
    })
}

fn parse_bidegree(key: &str, dim: usize, pointer: &str) -> Result<Bidegree> {
    let bd: Bidegree = key.parse().map_err(|_| {
        Error::schema(
            pointer,
            format!("bidegree key must look like \"P,Q\", got \"{key}\""),
        )
    })?;
    if bd.p > dim || bd.q > dim {
        return Err(Error::schema(
            pointer,
            format!("bidegree ({bd}) exceeds the complex dimension {dim}"),
        ));
    }
    Ok(bd)
}

fn parse_table(
    table: &Value,
    pointer: &str,
    cutoff: f64,
    complete: bool,
    merge_tol: f64,
) -> Result<TruncatedSpectrum> {
    let rows = table.as_array().ok_or_else(|| {
        Error::schema(pointer, "expected an array of [value, multiplicity] pairs")
    })?;
    let mut points = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let at = child(pointer, i);
        let pair = row
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| Error::schema(&at, "expected a [value, multiplicity] pair"))?;
        let value_at = child(&at, 0);
        let value = pair[0]
            .as_f64()
            .ok_or_else(|| Error::schema(&value_at, "expected a number"))?;
        if value < 0.0 {
            return Err(Error::schema(
                value_at,
                format!("negative spectral value {value}"),
            ));
        }
        if value >= cutoff {
            return Err(Error::schema(
                value_at,
                format!("value {value} is not below the cutoff {cutoff}"),
            ));
        }
        if let Some(prev) = points.last().map(|p: &SpectralPoint| p.value) {
            if value <= prev {
                return Err(Error::schema(value_at, "values must be strictly ascending"));
            }
            if values_close(prev, value, merge_tol) {
                return Err(Error::schema(
                    value_at,
                    format!("value {value} is within the merge tolerance of {prev}"),
                ));
            }
        }
        let mult_at = child(&at, 1);
        let multiplicity = parse_cardinal(&pair[1], &mult_at)?
            .as_multiplicity()
            .ok_or_else(|| Error::schema(&mult_at, "multiplicity must be positive"))?;
        points.push(SpectralPoint::new(value, multiplicity));
    }
    TruncatedSpectrum::try_new(points, cutoff, complete, merge_tol)
        .map_err(|e| Error::schema(pointer, e.to_string()))
}

/// A nonnegative integer, a decimal string of one, or `"inf"`.
fn parse_cardinal(value: &Value, pointer: &str) -> Result<ExtendedCardinal> {
    let count = match value {
        Value::Number(n) => n.as_u64(),
        Value::String(s) if s == "inf" => return Ok(ExtendedCardinal::Infinite),
        Value::String(s) => s.parse::<u64>().ok(),
        _ => None,
    };
    count
        .map(ExtendedCardinal::from_count)
        .ok_or_else(|| Error::schema(pointer, "expected a nonnegative integer or \"inf\""))
}

/// `"inf"` or the count, as it appears in JSON.
pub fn multiplicity_json(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(c) => Value::from(c),
        Multiplicity::Infinite => Value::from("inf"),
    }
}

pub fn cardinal_json(c: ExtendedCardinal) -> Value {
    match c {
        ExtendedCardinal::Zero => Value::from(0u64),
        ExtendedCardinal::Finite(n) => Value::from(n),
        ExtendedCardinal::Infinite => Value::from("inf"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<PlanarDomain> {
        load_custom_spectrum(text.as_bytes())
    }

    fn pointer_of(err: Error) -> String {
        match err {
            Error::Schema { pointer, .. } => pointer,
            other => panic!("expected a schema error, got {other:?}"),
        }
    }

    #[test]
    fn accepts_well_formed_custom() {
        let d = load(
            r#"{"type":"custom","dim":1,"pure_point":true,"spectra":{"0,0":[[0,"inf"],[2.5,1]]}}"#,
        )
        .unwrap();
        match d {
            PlanarDomain::Custom {
                complex_dim,
                spectra,
                ..
            } => {
                assert_eq!(complex_dim, 1);
                let s = spectra.get(Bidegree::new(0, 0)).unwrap();
                assert_eq!(s.points()[0].multiplicity, Multiplicity::Infinite);
                assert_eq!(
                    s.points()[1],
                    SpectralPoint::new(2.5, Multiplicity::Finite(1))
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_negative_value() {
        let err = load(r#"{"dim":1,"spectra":{"0,1":[[1,1],[-1,1]]}}"#).unwrap_err();
        assert_eq!(pointer_of(err), "/spectra/0,1/1/0");
    }

    #[test]
    fn rejects_zero_multiplicity() {
        let err = load(r#"{"dim":1,"spectra":{"0,0":[[0,"0"]]}}"#).unwrap_err();
        assert_eq!(pointer_of(err), "/spectra/0,0/0/1");
        let err = load(r#"{"dim":1,"spectra":{"0,0":[[0,0]]}}"#).unwrap_err();
        assert_eq!(pointer_of(err), "/spectra/0,0/0/1");
    }

    #[test]
    fn rejects_unsorted_table() {
        let err = load(r#"{"dim":1,"spectra":{"0,0":[[2,1],[1,1]]}}"#).unwrap_err();
        assert_eq!(pointer_of(err), "/spectra/0,0/1/0");
    }

    #[test]
    fn rejects_bad_bidegree_and_type() {
        let err = load(r#"{"dim":1,"spectra":{"2,0":[]}}"#).unwrap_err();
        assert_eq!(pointer_of(err), "/spectra/2,0");
        let err = load(r#"{"type":"disc","dim":1,"spectra":{}}"#).unwrap_err();
        assert_eq!(pointer_of(err), "/type");
        let err = load(r#"{"dim":0,"spectra":{}}"#).unwrap_err();
        assert_eq!(pointer_of(err), "/dim");
    }

    #[test]
    fn harmonic_dims_accept_zero() {
        let d = load(r#"{"dim":1,"spectra":{},"harmonic":{"0,0":"inf","0,1":0,"1,1":3}}"#).unwrap();
        let PlanarDomain::Custom {
            harmonic: Some(h), ..
        } = d
        else {
            panic!("missing harmonic table")
        };
        assert_eq!(h.get(Bidegree::new(0, 0)), Some(ExtendedCardinal::Infinite));
        assert_eq!(h.get(Bidegree::new(0, 1)), Some(ExtendedCardinal::Zero));
        assert_eq!(
            h.get(Bidegree::new(1, 1)),
            Some(ExtendedCardinal::Finite(3))
        );
    }

    #[test]
    fn factor_descriptors() {
        let v: Value = serde_json::from_str(r#"{"type":"rectangle","a":-1,"b":1}"#).unwrap();
        let err = parse_factor(&v, "/factors/0", DEFAULT_MERGE_TOL).unwrap_err();
        assert_eq!(pointer_of(err), "/factors/0/a");
        let v: Value = serde_json::from_str(r#"{"type":"disc","radius":2}"#).unwrap();
        assert_eq!(
            parse_factor(&v, "", DEFAULT_MERGE_TOL).unwrap(),
            PlanarDomain::Disc { radius: 2.0 }
        );
    }

    #[test]
    fn pointer_escaping() {
        assert_eq!(pointer_token("a/b~c"), "a~1b~0c");
    }
}

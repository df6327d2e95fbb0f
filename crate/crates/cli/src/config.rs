use boxspec_core::domains::{parse_factor, PlanarDomain};
use boxspec_core::{DEFAULT_MERGE_TOL, DEFAULT_ZERO_TOL};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format \"{other}\" (expected json or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub factors: Vec<PlanarDomain>,
    pub cutoff: f64,
    pub merge_tol: f64,
    pub zero_tol: f64,
    pub format: Format,
}

const KEYS: [&str; 5] = ["factors", "cutoff", "merge_tol", "zero_tol", "format"];

pub fn parse_config(text: &str) -> Result<JobConfig, CliError> {
    parse_config_with(text, None)
}

/// `cutoff` overrides (or supplies) the config's cutoff.
pub fn parse_config_with(text: &str, cutoff: Option<f64>) -> Result<JobConfig, CliError> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| CliError::at("", format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| CliError::at("", "config must be a JSON object"))?;
    if let Some(key) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(CliError::at(
            format!("/{key}"),
            format!("unknown field \"{key}\""),
        ));
    }
    let merge_tol = tolerance(obj, "merge_tol", DEFAULT_MERGE_TOL)?;
    let zero_tol = tolerance(obj, "zero_tol", DEFAULT_ZERO_TOL)?;

    let list = obj
        .get("factors")
        .ok_or_else(|| CliError::at("/factors", "missing field \"factors\""))?
        .as_array()
        .ok_or_else(|| CliError::at("/factors", "factors must be an array"))?;
    if list.is_empty() {
        return Err(CliError::at("/factors", "factors must be nonempty"));
    }
    let factors = list
        .iter()
        .enumerate()
        .map(|(i, f)| parse_factor(f, &format!("/factors/{i}"), merge_tol).map_err(CliError::from))
        .collect::<Result<Vec<_>, _>>()?;

    let cutoff = match (cutoff, obj.get("cutoff")) {
        (Some(c), _) => positive(c, "/cutoff")?,
        (None, Some(v)) => positive(
            v.as_f64()
                .ok_or_else(|| CliError::at("/cutoff", "cutoff must be a number"))?,
            "/cutoff",
        )?,
        (None, None) => return Err(CliError::at("/cutoff", "missing field \"cutoff\"")),
    };
    let format = match obj.get("format") {
        None => Format::Json,
        Some(v) => v
            .as_str()
            .ok_or_else(|| CliError::at("/format", "format must be a string"))?
            .parse()
            .map_err(|e: String| CliError::at("/format", e))?,
    };
    Ok(JobConfig {
        factors,
        cutoff,
        merge_tol,
        zero_tol,
        format,
    })
}

fn positive(v: f64, pointer: &str) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::at(pointer, "cutoff must be positive"))
    }
}

fn tolerance(obj: &Map<String, Value>, key: &str, default: f64) -> Result<f64, CliError> {
    let pointer = format!("/{key}");
    match obj.get(key) {
        None => Ok(default),
        Some(v) => match v.as_f64() {
            Some(t) if t >= 0.0 && t.is_finite() => Ok(t),
            _ => Err(CliError::at(
                pointer,
                format!("{key} must be a nonnegative number"),
            )),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_filled() {
        let c = parse_config(r#"{"factors":[{"type":"disc","radius":1.0}],"cutoff":2.0}"#).unwrap();
        assert_eq!(c.factors, vec![PlanarDomain::Disc { radius: 1.0 }]);
        assert_eq!((c.cutoff, c.merge_tol, c.zero_tol), (2.0, 1e-9, 1e-12));
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn empty_factor_list() {
        let e = parse_config(r#"{"factors":[],"cutoff":1.0}"#).unwrap_err();
        assert_eq!(e.message, "factors must be nonempty");
        assert_eq!(e.code, 2);
    }

    #[test]
    fn bad_rectangle_side_is_located() {
        let e = parse_config(r#"{"factors":[{"type":"rectangle","a":-1,"b":1}],"cutoff":1}"#)
            .unwrap_err();
        assert_eq!(e.pointer.as_deref(), Some("/factors/0/a"));
    }

    #[test]
    fn cutoff_override_and_requirement() {
        let text = r#"{"factors":[{"type":"disc","radius":1.0}]}"#;
        assert_eq!(
            parse_config(text).unwrap_err().pointer.as_deref(),
            Some("/cutoff")
        );
        assert_eq!(parse_config_with(text, Some(3.0)).unwrap().cutoff, 3.0);
    }

    #[test]
    fn unknown_fields_and_bad_tolerances() {
        let e = parse_config(r#"{"factors":[{"type":"disc","radius":1}],"cutoff":1,"cutof":2}"#)
            .unwrap_err();
        assert_eq!(e.pointer.as_deref(), Some("/cutof"));
        let e =
            parse_config(r#"{"factors":[{"type":"disc","radius":1}],"cutoff":1,"merge_tol":-1}"#)
                .unwrap_err();
        assert_eq!(e.pointer.as_deref(), Some("/merge_tol"));
        let e =
            parse_config(r#"{"factors":[{"type":"disc","radius":1}],"cutoff":1,"format":"xml"}"#)
                .unwrap_err();
        assert_eq!(e.pointer.as_deref(), Some("/format"));
    }
}

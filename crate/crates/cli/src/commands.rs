use std::collections::BTreeMap;

use boxspec_core::domains::multiplicity_json;
use boxspec_core::polydomain::EigenLabel;
use boxspec_core::spectrum::{bidegree_product_at, gap_report_with_tol, GapReport};
use boxspec_core::{
    bessel_zero, bidegree_product, compactness_verdict, enumerate_box_q, factor_bidegree,
    kunneth_product, Bidegree, FactorData, GapVerdict, HarmonicDims, TruncatedSpectrum,
};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::config::{Format, JobConfig};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY};
use crate::report::{self, number, render_json, Csv};
use crate::verify::{run_suite, Suite, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Spectrum,
    Bidegree,
    Gap,
    Kunneth,
    Enumerate,
    Bessel,
    Verify,
}

impl Command {
    pub fn needs_config(self) -> bool {
        !matches!(self, Command::Bessel | Command::Verify)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub pq: Option<Bidegree>,
    pub q: Option<usize>,
    pub n: Option<u32>,
    pub k: Option<u32>,
    /// Overrides the config's format.
    pub format: Option<Format>,
    pub seed: u64,
    pub suite: Suite,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            pq: None,
            q: None,
            n: None,
            k: None,
            format: None,
            seed: DEFAULT_SEED,
            suite: Suite::All,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            code: EXIT_OK,
        }
    }
}

pub fn run_command(
    command: Command,
    config: Option<&JobConfig>,
    options: &Options,
) -> Result<Outcome, CliError> {
    let format = options
        .format
        .or(config.map(|c| c.format))
        .unwrap_or(Format::Json);
    if format == Format::Csv
        && !matches!(
            command,
            Command::Spectrum | Command::Bidegree | Command::Enumerate
        )
    {
        return Err(CliError::usage(
            "csv output is available for the spectrum, bidegree and enumerate tables only",
        ));
    }
    let need = || {
        config.ok_or_else(|| CliError::usage(format!("{command:?} needs --config").to_lowercase()))
    };
    match command {
        Command::Spectrum => spectrum(need()?, format),
        Command::Bidegree => {
            let pq = options
                .pq
                .ok_or_else(|| CliError::usage("bidegree needs --pq P,Q"))?;
            bidegree(need()?, pq, format)
        }
        Command::Gap => gap(need()?),
        Command::Kunneth => kunneth(need()?),
        Command::Enumerate => {
            let q = options
                .q
                .ok_or_else(|| CliError::usage("enumerate needs --q Q"))?;
            enumerate(need()?, q, format)
        }
        Command::Bessel => {
            let (n, k) = options
                .n
                .zip(options.k)
                .ok_or_else(|| CliError::usage("bessel needs --n N and --k K"))?;
            let value = bessel_zero(n, k)?;
            Ok(Outcome::ok(render_json(
                &json!({"n": n, "k": k, "value": number(value)}),
            )))
        }
        Command::Verify => Ok(verify(options.suite, options.seed)),
    }
}

fn factor_data(config: &JobConfig) -> Result<Vec<FactorData>, CliError> {
    config
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            factor_bidegree(f, config.cutoff, config.merge_tol, config.zero_tol)
                .map_err(|e| CliError::from(e).with_prefix(&format!("factor {}", i + 1)))
        })
        .collect()
}

fn notes(data: &[FactorData]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for note in data.iter().flat_map(|d| &d.notes) {
        if !out.contains(note) {
            out.push(note.clone());
        }
    }
    out
}

fn complex_dim(data: &[FactorData]) -> usize {
    data.iter().map(|d| d.spectra.complex_dim).sum()
}

fn product_harmonic(data: &[FactorData]) -> Result<Option<HarmonicDims>, CliError> {
    let dims: Vec<HarmonicDims> = data.iter().map(|d| d.harmonic.clone()).collect();
    let product = kunneth_product(&dims)?;
    if !product.is_fully_available() {
        return Ok(None);
    }
    let mut h = HarmonicDims::new(product.complex_dim);
    for (bd, cell) in &product.table {
        if let Ok(d) = cell {
            h.table.insert(*bd, *d);
        }
    }
    Ok(Some(h))
}

fn spectrum(config: &JobConfig, format: Format) -> Result<Outcome, CliError> {
    let data = factor_data(config)?;
    let tables: Vec<_> = data.iter().map(|d| d.spectra.clone()).collect();
    let product = bidegree_product(&tables)?;
    if let Some((_, u)) = product.unavailable().next() {
        return Err(CliError::unavailable(u.to_string()));
    }
    let total = product
        .total()
        .map_err(|u| CliError::unavailable(u.to_string()))?;
    if format == Format::Csv {
        let mut csv = Csv::default();
        csv.spectrum(&total, "total");
        return Ok(Outcome::ok(csv.render()));
    }
    let spectra = product.available().table;
    let harmonic = product_harmonic(&data)?;
    let mut out = report::spectrum_descriptor(complex_dim(&data), &spectra, harmonic.as_ref());
    out.insert("total".into(), report::rows(&total));
    out.insert("notes".into(), json!(notes(&data)));
    Ok(Outcome::ok(render_json(&Value::Object(out))))
}

fn bidegree(config: &JobConfig, pq: Bidegree, format: Format) -> Result<Outcome, CliError> {
    let data = factor_data(config)?;
    let tables: Vec<_> = data.iter().map(|d| d.spectra.clone()).collect();
    let cell =
        bidegree_product_at(&tables, pq)?.map_err(|u| CliError::unavailable(u.to_string()))?;
    if format == Format::Csv {
        let mut csv = Csv::default();
        csv.spectrum(&cell, &pq.to_string());
        return Ok(Outcome::ok(csv.render()));
    }
    let spectra: BTreeMap<Bidegree, TruncatedSpectrum> = [(pq, cell)].into();
    let mut out = report::spectrum_descriptor(complex_dim(&data), &spectra, None);
    out.insert("bidegree".into(), Value::from(pq.to_string()));
    out.insert("notes".into(), json!(notes(&data)));
    Ok(Outcome::ok(render_json(&Value::Object(out))))
}

fn gap_json(g: &GapReport, cutoff: f64) -> Value {
    let verdict = match g.verdict {
        GapVerdict::ClosedRange => "ClosedRange",
        GapVerdict::NotClosedRange => "NotClosedRange",
        GapVerdict::Unknown => "Unknown",
    };
    json!({
        "verdict": verdict,
        "gap": g.gap.map(number),
        "gap_at_least": g.gap_at_least,
        "bound_constant": g.bound_constant.map(number),
        "cutoff": cutoff,
    })
}

fn gap(config: &JobConfig) -> Result<Outcome, CliError> {
    let data = factor_data(config)?;
    let tables: Vec<_> = data.iter().map(|d| d.spectra.clone()).collect();
    let product = bidegree_product(&tables)?;
    let mut per = Map::new();
    for (bd, cell) in &product.table {
        if let Ok(s) = cell {
            per.insert(
                bd.to_string(),
                gap_json(&gap_report_with_tol(s, config.zero_tol), s.cutoff()),
            );
        }
    }
    let total = product
        .total()
        .map_err(|u| CliError::unavailable(u.to_string()))?;
    let mut out = match gap_json(
        &gap_report_with_tol(&total, config.zero_tol),
        total.cutoff(),
    ) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    out.insert("bidegrees".into(), Value::Object(per));
    out.insert("notes".into(), json!(notes(&data)));
    Ok(Outcome::ok(render_json(&Value::Object(out))))
}

fn kunneth(config: &JobConfig) -> Result<Outcome, CliError> {
    let data = factor_data(config)?;
    let dims: Vec<HarmonicDims> = data.iter().map(|d| d.harmonic.clone()).collect();
    let product = kunneth_product(&dims)?;
    if let Some((_, u)) = product.unavailable().next() {
        return Err(CliError::unavailable(u.to_string()));
    }
    let mut h = HarmonicDims::new(product.complex_dim);
    for (bd, cell) in &product.table {
        if let Ok(d) = cell {
            h.table.insert(*bd, *d);
        }
    }
    let factors: Vec<Value> = dims.iter().map(report::harmonic_json).collect();
    Ok(Outcome::ok(render_json(&json!({
        "dim": product.complex_dim,
        "harmonic": report::harmonic_json(&h),
        "factors": factors,
    }))))
}

fn label_json(l: &EigenLabel) -> Value {
    let k: Map<String, Value> =
        l.k.iter()
            .map(|(f, r)| (f.to_string(), Value::from(*r)))
            .collect();
    json!({"kind": l.kind.to_string(), "J": l.j, "k": k})
}

fn enumerate(config: &JobConfig, q: usize, format: Format) -> Result<Outcome, CliError> {
    let e = enumerate_box_q(&config.factors, q, config.cutoff, config.merge_tol)?;
    if format == Format::Csv {
        let mut csv = Csv::default();
        for entry in &e.entries {
            let mut kinds: Vec<String> = entry.labels.iter().map(|l| l.kind.to_string()).collect();
            kinds.dedup();
            let first = &entry.labels[0];
            let j = format!(
                "[{}]",
                first
                    .j
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let k = format!(
                "{{{}}}",
                first
                    .k
                    .iter()
                    .map(|(f, r)| format!("{f}:{r}"))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            csv.row(entry.value, entry.multiplicity, &kinds.join("+"), &j, &k);
        }
        return Ok(Outcome::ok(csv.render()));
    }
    let verdict = compactness_verdict(q, config.factors.len())?;
    let entries: Vec<Value> = e
        .entries
        .iter()
        .map(|entry| {
            json!({
                "value": number(entry.value),
                "multiplicity": multiplicity_json(entry.multiplicity),
                "labels": entry.labels.iter().map(label_json).collect::<Vec<_>>(),
                "label_count": entry.label_count,
            })
        })
        .collect();
    Ok(Outcome::ok(render_json(&json!({
        "q": e.q,
        "n": e.n,
        "cutoff": e.cutoff,
        "complete": e.complete,
        "compactness": {"verdict": verdict.to_string(), "reason": verdict.reason()},
        "notes": e.notes,
        "entries": entries,
    }))))
}

fn verify(suite: Suite, seed: u64) -> Outcome {
    let checks = run_suite(suite, seed);
    let pass = checks.iter().all(|c| c.pass);
    let stdout = render_json(&json!({
        "suite": suite.name(),
        "seed": seed,
        "pass": pass,
        "checks": checks,
    }));
    Outcome {
        stdout,
        code: if pass { EXIT_OK } else { EXIT_VERIFY },
    }
}

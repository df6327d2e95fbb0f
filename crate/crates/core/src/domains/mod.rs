//! Spectrum providers for planar factor domains.

pub mod bessel;
pub mod custom;
pub mod planar;

pub use bessel::{asymptotic_crossover, bessel_j, bessel_zero, BesselZero, ZeroFinder};
pub use custom::{
    cardinal_json, load_custom_spectrum, load_custom_spectrum_path, multiplicity_json,
    parse_factor, UNBOUNDED_CUTOFF,
};
pub use planar::{disc_sigma01, disc_sigma01_with, rect_sigma01, rect_sigma01_with};

use crate::error::{Error, Result};
use crate::spectrum::{
    Bidegree, BidegreeSpectrum, ExtendedCardinal, HarmonicDims, Multiplicity, SpectralPoint,
    TruncatedSpectrum,
};

#[derive(Debug, Clone, PartialEq)]
pub enum PlanarDomain {
    Disc {
        radius: f64,
    },
    Rectangle {
        a: f64,
        b: f64,
    },
    /// Externally supplied tables, e.g. for annuli.
    Custom {
        complex_dim: usize,
        spectra: BidegreeSpectrum,
        harmonic: Option<HarmonicDims>,
        pure_point: bool,
    },
}

impl PlanarDomain {
    pub fn complex_dim(&self) -> usize {
        match self {
            PlanarDomain::Custom { complex_dim, .. } => *complex_dim,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PlanarDomain::Disc { .. } => "disc",
            PlanarDomain::Rectangle { .. } => "rectangle",
            PlanarDomain::Custom { .. } => "custom",
        }
    }

    /// Euclidean area, for the analytic factors.
    pub fn area(&self) -> Option<f64> {
        match self {
            PlanarDomain::Disc { radius } => Some(std::f64::consts::PI * radius * radius),
            PlanarDomain::Rectangle { a, b } => Some(a * b),
            PlanarDomain::Custom { .. } => None,
        }
    }

    /// □ on (0,1)-forms below the cutoff (analytic factors only).
    pub fn sigma01(&self, cutoff: f64, merge_tol: f64) -> Result<TruncatedSpectrum> {
        match self {
            PlanarDomain::Disc { radius } => disc_sigma01_with(*radius, cutoff, merge_tol),
            PlanarDomain::Rectangle { a, b } => rect_sigma01_with(*a, *b, cutoff, merge_tol),
            PlanarDomain::Custom { .. } => Err(Error::Unsupported(
                "custom factors carry their own tables".into(),
            )),
        }
    }
}

/// Per-bidegree spectra and kernel dimensions of one factor, plus notes on
/// how the tables were obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorData {
    pub spectra: BidegreeSpectrum,
    pub harmonic: HarmonicDims,
    pub notes: Vec<String>,
}

pub const NOTE_POSITIVE_00: &str =
    "positive part of sigma(0,0) identified with sigma(0,1) via u -> du/dzbar";
pub const NOTE_FLAT_FRAME: &str =
    "sigma(1,q) = sigma(0,q): the dz frame is parallel on a planar domain";
pub const NOTE_NOT_PURE_POINT: &str =
    "custom factor is not pure point: multiplicities and kernel dimensions are unavailable";

/// All bidegree spectra of a factor below `cutoff`.
///
/// For a disc or rectangle: σ01 from the Dirichlet provider,
/// σ00 = {0 (×∞)} ∪ σ01, σ10 = σ00, σ11 = σ01, and harmonic dimensions
/// ∞, 0, ∞, 0. Custom tables are truncated to `cutoff` and kept otherwise;
/// a table with a smaller declared cutoff keeps it.
pub fn factor_bidegree(
    domain: &PlanarDomain,
    cutoff: f64,
    merge_tol: f64,
    zero_tol: f64,
) -> Result<FactorData> {
    match domain {
        PlanarDomain::Custom {
            complex_dim,
            spectra,
            harmonic,
            pure_point,
        } => {
            let mut table = BidegreeSpectrum::new(*complex_dim);
            for (bd, s) in &spectra.table {
                table.table.insert(*bd, s.truncate(cutoff));
            }
            let harmonic = match harmonic {
                Some(h) => h.clone(),
                None => HarmonicDims::from_spectra(&table, zero_tol),
            };
            let mut notes = Vec::new();
            if !pure_point {
                notes.push(NOTE_NOT_PURE_POINT.to_string());
            }
            Ok(FactorData {
                spectra: table,
                harmonic,
                notes,
            })
        }
        analytic => {
            let s01 = analytic.sigma01(cutoff, merge_tol)?;
            let bergman = TruncatedSpectrum::collect(
                [SpectralPoint::new(0.0, Multiplicity::Infinite)],
                cutoff,
                merge_tol,
            )?;
            let s00 = TruncatedSpectrum::union([&bergman, &s01])?;
            let spectra = BidegreeSpectrum::new(1)
                .with(Bidegree::new(0, 0), s00.clone())
                .with(Bidegree::new(0, 1), s01.clone())
                .with(Bidegree::new(1, 0), s00)
                .with(Bidegree::new(1, 1), s01);
            Ok(FactorData {
                spectra,
                harmonic: planar_harmonic_dims(),
                notes: vec![NOTE_POSITIVE_00.to_string(), NOTE_FLAT_FRAME.to_string()],
            })
        }
    }
}

/// Kernel dimensions of □ on a bounded planar domain: the Bergman space in
/// degree (p,0), nothing in degree (p,1).
pub fn planar_harmonic_dims() -> HarmonicDims {
    HarmonicDims::new(1)
        .with(Bidegree::new(0, 0), ExtendedCardinal::Infinite)
        .with(Bidegree::new(0, 1), ExtendedCardinal::Zero)
        .with(Bidegree::new(1, 0), ExtendedCardinal::Infinite)
        .with(Bidegree::new(1, 1), ExtendedCardinal::Zero)
}

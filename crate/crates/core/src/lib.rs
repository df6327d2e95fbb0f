//! Spectra of the complex (∂̄-Neumann) Laplacian □ on product domains.
//!
//! The spectrum of □ on a product is the Minkowski sum of the factor spectra,
//! bidegree by bidegree. This crate works with truncated, pure-point spectra
//! ("every eigenvalue below Λ, with multiplicity") and provides:
//!
//! * [`spectrum`]: exact multiset calculus (Minkowski sums, bidegree
//!   products, spectral-gap verdicts, kernel dimensions, Künneth arithmetic);
//! * [`domains`]: analytic providers for planar factors (disc, rectangle)
//!   backed by a Bessel evaluation and zero-finding kernel, plus ingestion of
//!   custom factor spectra from JSON;
//! * [`polydomain`]: the labeled eigenstructure of □_q on products of planar
//!   domains;
//! * [`oracle`]: brute-force finite-difference and dense-eigensolver checks.

pub mod domains;
pub mod error;
pub mod oracle;
pub mod polydomain;
pub mod spectrum;

pub use error::{Error, Result};

pub use domains::{
    bessel_j, bessel_zero, disc_sigma01, factor_bidegree, load_custom_spectrum, rect_sigma01,
    FactorData, PlanarDomain,
};
pub use polydomain::{
    compactness_verdict, counting_function, eigenform_sample, enumerate_box_q, CompactnessVerdict,
    EigenEntry, EigenLabel, Enumeration, LabelKind,
};
pub use spectrum::{
    bidegree_product, gap_report, kernel_dim, kunneth_product, minkowski_sum, minkowski_sum_many,
    Bidegree, BidegreeProduct, BidegreeSpectrum, ExtendedCardinal, GapReport, GapVerdict,
    HarmonicDims, Multiplicity, SpectralPoint, TruncatedSpectrum, Unavailable, DEFAULT_MERGE_TOL,
    DEFAULT_ZERO_TOL,
};

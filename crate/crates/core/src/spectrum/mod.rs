//! Multiset calculus on truncated pure-point spectra.

mod bidegree;
mod cardinal;
mod gap;
mod harmonic;
mod minkowski;
mod truncated;

pub use bidegree::{
    bidegree_product, bidegree_product_at, Bidegree, BidegreeProduct, BidegreeSpectrum,
    ProductTable, Unavailable,
};
pub use cardinal::{ExtendedCardinal, Multiplicity};
pub use gap::{gap_report, gap_report_with_tol, GapReport, GapVerdict};
pub use harmonic::{kernel_dim, kunneth_product, HarmonicDims, KunnethProduct};
pub use minkowski::{minkowski_sum, minkowski_sum_many};
pub use truncated::{
    values_close, SpectralPoint, TruncatedSpectrum, DEFAULT_MERGE_TOL, DEFAULT_ZERO_TOL,
};

use std::collections::BTreeMap;

use super::bidegree::{product_cell, Bidegree, BidegreeSpectrum, ProductTable};
use super::cardinal::ExtendedCardinal;
use super::truncated::TruncatedSpectrum;
use crate::error::{Error, Result};

/// Dimensions of the harmonic spaces ker(□_{p,q}), i.e. of L² Dolbeault
/// cohomology when ∂̄ has closed range. An absent bidegree is unknown; a
/// trivial one is stored as `Zero`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicDims {
    pub complex_dim: usize,
    pub table: BTreeMap<Bidegree, ExtendedCardinal>,
}

impl HarmonicDims {
    pub fn new(complex_dim: usize) -> Self {
        Self {
            complex_dim,
            table: BTreeMap::new(),
        }
    }

    pub fn with(mut self, bidegree: Bidegree, dim: ExtendedCardinal) -> Self {
        self.table.insert(bidegree, dim);
        self
    }

    pub fn get(&self, bidegree: Bidegree) -> Option<ExtendedCardinal> {
        self.table.get(&bidegree).copied()
    }

    /// Kernel dimensions read off every complete bidegree spectrum; bidegrees
    /// whose kernel cannot be decided are left out.
    pub fn from_spectra(spectra: &BidegreeSpectrum, zero_tol: f64) -> Self {
        let table = spectra
            .table
            .iter()
            .filter(|(_, s)| s.is_complete())
            .filter_map(|(bd, s)| kernel_dim(s, zero_tol).ok().map(|d| (*bd, d)))
            .collect();
        Self {
            complex_dim: spectra.complex_dim,
            table,
        }
    }
}

pub type KunnethProduct = ProductTable<ExtendedCardinal>;

/// Dimension of the eigenspace at 0.
pub fn kernel_dim(s: &TruncatedSpectrum, zero_tol: f64) -> Result<ExtendedCardinal> {
    if !s.is_pure_point() {
        return Err(Error::MultiplicityUnknown);
    }
    let mut near_zero = s.points().iter().take_while(|p| p.value <= zero_tol);
    let kernel = near_zero.next();
    if let Some(extra) = near_zero.next() {
        return Err(Error::AmbiguousKernel {
            zero_tol,
            value: extra.value,
        });
    }
    Ok(kernel.map_or(ExtendedCardinal::Zero, |p| p.multiplicity.into()))
}

/// Künneth bookkeeping: the harmonic space of the product at `(p, q)` is the
/// direct sum over splits of tensor products of factor harmonic spaces.
pub fn kunneth_product(factors: &[HarmonicDims]) -> Result<KunnethProduct> {
    if factors.is_empty() {
        return Err(Error::EmptyList {
            what: "kunneth_product",
        });
    }
    let dims: Vec<usize> = factors.iter().map(|f| f.complex_dim).collect();
    let complex_dim = dims.iter().sum();
    let table = Bidegree::all(complex_dim)
        .map(|bd| {
            let cell = product_cell(
                factors,
                &dims,
                |f: &HarmonicDims, b| f.table.get(&b),
                bd,
                |cells| {
                    cells
                        .iter()
                        .fold(ExtendedCardinal::Finite(1), |acc, &&d| acc * d)
                },
                |parts| parts.into_iter().sum(),
            );
            (bd, cell)
        })
        .collect();
    Ok(ProductTable { complex_dim, table })
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::minkowski::minkowski_sum_many;
use super::truncated::TruncatedSpectrum;
use crate::error::{Error, Result};

/// Form bidegree `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub p: usize,
    pub q: usize,
}

impl Bidegree {
    pub const fn new(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    /// All bidegrees of a complex manifold of dimension `dim`, in
    /// lexicographic order.
    pub fn all(dim: usize) -> impl Iterator<Item = Bidegree> {
        (0..=dim).flat_map(move |p| (0..=dim).map(move |q| Bidegree::new(p, q)))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for Bidegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bidegree must look like \"P,Q\", got {s:?}"));
        let (p, q) = s.split_once(',').ok_or_else(bad)?;
        Ok(Bidegree::new(
            p.trim().parse().map_err(|_| bad())?,
            q.trim().parse().map_err(|_| bad())?,
        ))
    }
}

/// Marks a product bidegree that cannot be computed because a factor does
/// not provide one of the bidegrees some split needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unavailable {
    /// 1-based factor index.
    pub factor: usize,
    pub bidegree: Bidegree,
}

impl fmt::Display for Unavailable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "factor {} does not provide bidegree ({})",
            self.factor, self.bidegree
        )
    }
}

/// Per-bidegree spectra of one manifold. A missing bidegree means "not
/// provided", never "empty spectrum".
#[derive(Debug, Clone, PartialEq)]
pub struct BidegreeSpectrum {
    pub complex_dim: usize,
    pub table: BTreeMap<Bidegree, TruncatedSpectrum>,
}

impl BidegreeSpectrum {
    pub fn new(complex_dim: usize) -> Self {
        Self {
            complex_dim,
            table: BTreeMap::new(),
        }
    }

    pub fn with(mut self, bidegree: Bidegree, spectrum: TruncatedSpectrum) -> Self {
        self.table.insert(bidegree, spectrum);
        self
    }

    pub fn get(&self, bidegree: Bidegree) -> Option<&TruncatedSpectrum> {
        self.table.get(&bidegree)
    }

    /// Spectrum of □ on all forms: the union over every bidegree.
    pub fn total(&self) -> Result<TruncatedSpectrum, Unavailable> {
        let mut parts = Vec::new();
        for bd in Bidegree::all(self.complex_dim) {
            parts.push(self.table.get(&bd).ok_or(Unavailable {
                factor: 1,
                bidegree: bd,
            })?);
        }
        Ok(TruncatedSpectrum::union(parts).expect("a manifold has at least one bidegree"))
    }
}

/// A per-bidegree table over a product, each cell either computed or
/// unavailable.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTable<T> {
    pub complex_dim: usize,
    pub table: BTreeMap<Bidegree, Result<T, Unavailable>>,
}

impl<T> ProductTable<T> {
    pub fn get(&self, bidegree: Bidegree) -> Option<&Result<T, Unavailable>> {
        self.table.get(&bidegree)
    }

    pub fn unavailable(&self) -> impl Iterator<Item = (Bidegree, &Unavailable)> {
        self.table
            .iter()
            .filter_map(|(bd, cell)| cell.as_ref().err().map(|u| (*bd, u)))
    }

    pub fn is_fully_available(&self) -> bool {
        self.table.values().all(Result::is_ok)
    }
}

pub type BidegreeProduct = ProductTable<TruncatedSpectrum>;

impl BidegreeProduct {
    /// The computed cells as a plain [`BidegreeSpectrum`].
    pub fn available(&self) -> BidegreeSpectrum {
        BidegreeSpectrum {
            complex_dim: self.complex_dim,
            table: self
                .table
                .iter()
                .filter_map(|(bd, cell)| cell.as_ref().ok().map(|s| (*bd, s.clone())))
                .collect(),
        }
    }

    /// Spectrum of □ on all forms of the product.
    pub fn total(&self) -> Result<TruncatedSpectrum, Unavailable> {
        let mut parts = Vec::new();
        for cell in self.table.values() {
            parts.push(cell.as_ref().map_err(|u| *u)?);
        }
        Ok(TruncatedSpectrum::union(parts).expect("a product has at least one bidegree"))
    }
}

/// All splits `(p_1, q_1), ..., (p_N, q_N)` of `target` with
/// `0 <= p_j, q_j <= dims[j]`.
pub(crate) fn splits(dims: &[usize], target: Bidegree) -> Vec<Vec<Bidegree>> {
    fn go(
        dims: &[usize],
        p: usize,
        q: usize,
        prefix: &mut Vec<Bidegree>,
        out: &mut Vec<Vec<Bidegree>>,
    ) {
        let Some((&dim, rest)) = dims.split_first() else {
            if p == 0 && q == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let rest_dim: usize = rest.iter().sum();
        for pj in 0..=dim.min(p) {
            if p - pj > rest_dim {
                continue;
            }
            for qj in 0..=dim.min(q) {
                if q - qj > rest_dim {
                    continue;
                }
                prefix.push(Bidegree::new(pj, qj));
                go(rest, p - pj, q - qj, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(dims, target.p, target.q, &mut Vec::new(), &mut out);
    out
}

/// Generic product over splits: `combine` builds the contribution of one
/// split from per-factor cells, `gather` merges the contributions.
pub(crate) fn product_cell<'a, F, T, C, G>(
    factors: &'a [F],
    dims: &[usize],
    lookup: impl Fn(&'a F, Bidegree) -> Option<&'a T>,
    target: Bidegree,
    combine: C,
    gather: G,
) -> Result<T, Unavailable>
where
    T: 'a,
    C: Fn(&[&'a T]) -> T,
    G: FnOnce(Vec<T>) -> T,
{
    let mut contributions = Vec::new();
    for split in splits(dims, target) {
        let mut cells = Vec::with_capacity(split.len());
        for (j, (factor, bd)) in factors.iter().zip(&split).enumerate() {
            cells.push(lookup(factor, *bd).ok_or(Unavailable {
                factor: j + 1,
                bidegree: *bd,
            })?);
        }
        contributions.push(combine(&cells));
    }
    Ok(gather(contributions))
}

/// σ_{p,q} of the product at one bidegree: the union over all splits of the
/// Minkowski sums of factor spectra.
pub fn bidegree_product_at(
    factors: &[BidegreeSpectrum],
    target: Bidegree,
) -> Result<Result<TruncatedSpectrum, Unavailable>> {
    if factors.is_empty() {
        return Err(Error::EmptyList {
            what: "bidegree_product",
        });
    }
    let dims: Vec<usize> = factors.iter().map(|f| f.complex_dim).collect();
    let total: usize = dims.iter().sum();
    if target.p > total || target.q > total {
        return Err(Error::InvalidArgument(format!(
            "bidegree ({target}) exceeds the product dimension {total}"
        )));
    }
    Ok(product_cell(
        factors,
        &dims,
        |f: &BidegreeSpectrum, bd| f.get(bd),
        target,
        |cells| minkowski_sum_many(cells.iter().copied()).expect("splits are nonempty"),
        |parts| TruncatedSpectrum::union(&parts).expect("every bidegree has a split"),
    ))
}

/// Every bidegree of the product of `factors`.
pub fn bidegree_product(factors: &[BidegreeSpectrum]) -> Result<BidegreeProduct> {
    if factors.is_empty() {
        return Err(Error::EmptyList {
            what: "bidegree_product",
        });
    }
    let complex_dim = factors.iter().map(|f| f.complex_dim).sum();
    let mut table = BTreeMap::new();
    for bd in Bidegree::all(complex_dim) {
        table.insert(bd, bidegree_product_at(factors, bd)?);
    }
    Ok(ProductTable { complex_dim, table })
}

use super::truncated::{SpectralPoint, TruncatedSpectrum};
use crate::error::{Error, Result};

/// Spectrum of `A ⊗ I + I ⊗ B` from the spectra of `A` and `B`.
///
/// Every pairwise sum below the smaller cutoff is listed with the product
/// multiplicity (eigenspaces tensor), and coincident sums merge additively.
/// The result stays complete when both inputs are: values are nonnegative, so
/// a sum below the cutoff only uses addends below it. No closure step is
/// needed either, since for closed E, F ⊂ [0, ∞) the set E+F is also a
/// closed set.
pub fn minkowski_sum(s: &TruncatedSpectrum, t: &TruncatedSpectrum) -> TruncatedSpectrum {
    let cutoff = s.cutoff().min(t.cutoff());
    let merge_tol = s.merge_tol().max(t.merge_tol());
    let pure_point = s.is_pure_point() && t.is_pure_point();

    let mut raw = Vec::new();
    for a in s.points() {
        if a.value >= cutoff {
            break;
        }
        for b in t.points() {
            let value = a.value + b.value;
            if value >= cutoff {
                break;
            }
            raw.push(SpectralPoint::new(value, a.multiplicity * b.multiplicity));
        }
    }
    TruncatedSpectrum::from_raw(
        raw,
        cutoff,
        merge_tol,
        s.is_complete() && t.is_complete(),
        pure_point,
    )
}

/// Left fold of [`minkowski_sum`] in input order.
pub fn minkowski_sum_many<'a, I>(spectra: I) -> Result<TruncatedSpectrum>
where
    I: IntoIterator<Item = &'a TruncatedSpectrum>,
{
    let mut iter = spectra.into_iter();
    let first = iter.next().ok_or(Error::EmptyList {
        what: "minkowski_sum_many",
    })?;
    Ok(iter.fold(first.clone(), |acc, s| minkowski_sum(&acc, s)))
}

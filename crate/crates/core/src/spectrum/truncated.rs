use super::cardinal::Multiplicity;
use crate::error::{Error, Result};

/// Default relative tolerance under which two spectral values are the same
/// eigenvalue.
pub const DEFAULT_MERGE_TOL: f64 = 1e-9;

/// Default absolute tolerance for recognizing the eigenvalue 0.
pub const DEFAULT_ZERO_TOL: f64 = 1e-12;

/// `a` and `b` merge iff `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn values_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub value: f64,
    pub multiplicity: Multiplicity,
}

impl SpectralPoint {
    pub fn new(value: f64, multiplicity: Multiplicity) -> Self {
        Self {
            value,
            multiplicity,
        }
    }
}

impl From<(f64, Multiplicity)> for SpectralPoint {
    fn from((value, multiplicity): (f64, Multiplicity)) -> Self {
        Self {
            value,
            multiplicity,
        }
    }
}

/// A finite piece of a nonnegative spectrum: every listed point lies below
/// `cutoff`, values ascend strictly and are pairwise separated by more than
/// `merge_tol` (relative).
///
/// When `complete` is set, the operator has no spectrum in `[0, cutoff)`
/// other than the listed points. When `pure_point` is cleared the value set
/// is meaningful but multiplicities are not; they are carried as `1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSpectrum {
    points: Vec<SpectralPoint>,
    cutoff: f64,
    complete: bool,
    merge_tol: f64,
    pure_point: bool,
}

impl TruncatedSpectrum {
    /// Builds a spectrum from arbitrary points: sorts, drops values at or above
    /// the cutoff and merges values within `merge_tol` additively. The result
    /// is complete and pure point; see [`with_complete`](Self::with_complete).
    pub fn collect<I, P>(points: I, cutoff: f64, merge_tol: f64) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<SpectralPoint>,
    {
        check_parameters(cutoff, merge_tol)?;
        let mut raw = Vec::new();
        for p in points {
            let p: SpectralPoint = p.into();
            check_value(p.value)?;
            if p.value < cutoff {
                raw.push(p);
            }
        }
        Ok(Self::from_raw(raw, cutoff, merge_tol, true, true))
    }

    /// Strict constructor: the points must already satisfy every invariant.
    pub fn try_new(
        points: Vec<SpectralPoint>,
        cutoff: f64,
        complete: bool,
        merge_tol: f64,
    ) -> Result<Self> {
        check_parameters(cutoff, merge_tol)?;
        for (i, p) in points.iter().enumerate() {
            check_value(p.value)?;
            if p.value >= cutoff {
                return Err(Error::InvalidSpectrum(format!(
                    "value {} is not below the cutoff {cutoff}",
                    p.value
                )));
            }
            if i > 0 {
                let prev = points[i - 1].value;
                if p.value <= prev {
                    return Err(Error::InvalidSpectrum(format!(
                        "values are not strictly ascending at index {i}"
                    )));
                }
                if values_close(prev, p.value, merge_tol) {
                    return Err(Error::InvalidSpectrum(format!(
                        "values {prev} and {} are within the merge tolerance",
                        p.value
                    )));
                }
            }
        }
        Ok(Self {
            points,
            cutoff,
            complete,
            merge_tol,
            pure_point: true,
        })
    }

    pub fn empty(cutoff: f64, merge_tol: f64) -> Result<Self> {
        Self::try_new(Vec::new(), cutoff, true, merge_tol)
    }

    pub fn with_complete(mut self, complete: bool) -> Self {
        self.complete = complete;
        self
    }

    /// Clearing the flag drops all multiplicity claims.
    pub fn with_pure_point(mut self, pure_point: bool) -> Self {
        if !pure_point {
            for p in &mut self.points {
                p.multiplicity = Multiplicity::ONE;
            }
        }
        self.pure_point = pure_point;
        self
    }

    /// Sorts and merges already validated points (nonnegative, below cutoff).
    pub(crate) fn from_raw(
        mut raw: Vec<SpectralPoint>,
        cutoff: f64,
        merge_tol: f64,
        complete: bool,
        pure_point: bool,
    ) -> Self {
        raw.sort_by(|a, b| a.value.total_cmp(&b.value));
        let mut points: Vec<SpectralPoint> = Vec::with_capacity(raw.len());
        for p in raw {
            match points.last_mut() {
                Some(last) if values_close(last.value, p.value, merge_tol) => {
                    if pure_point {
                        last.multiplicity = last.multiplicity + p.multiplicity;
                    }
                }
                _ => points.push(SpectralPoint {
                    value: p.value,
                    multiplicity: if pure_point {
                        p.multiplicity
                    } else {
                        Multiplicity::ONE
                    },
                }),
            }
        }
        Self {
            points,
            cutoff,
            complete,
            merge_tol,
            pure_point,
        }
    }

    /// Union of spectra with additive merging of coincident points. The
    /// cutoff is the smallest cutoff, completeness and pure-pointness are
    /// conjunctions.
    pub fn union<'a, I>(parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a TruncatedSpectrum>,
    {
        let parts: Vec<&TruncatedSpectrum> = parts.into_iter().collect();
        if parts.is_empty() {
            return Err(Error::EmptyList { what: "union" });
        }
        let cutoff = parts.iter().map(|s| s.cutoff).fold(f64::INFINITY, f64::min);
        let merge_tol = parts.iter().map(|s| s.merge_tol).fold(0.0, f64::max);
        let complete = parts.iter().all(|s| s.complete);
        let pure_point = parts.iter().all(|s| s.pure_point);
        let raw = parts
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|p| p.value < cutoff)
            .collect();
        Ok(Self::from_raw(raw, cutoff, merge_tol, complete, pure_point))
    }

    pub fn points(&self) -> &[SpectralPoint] {
        &self.points
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn merge_tol(&self) -> f64 {
        self.merge_tol
    }

    pub fn is_pure_point(&self) -> bool {
        self.pure_point
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.value)
    }

    pub fn total_multiplicity(&self) -> Multiplicity {
        self.points
            .iter()
            .map(|p| p.multiplicity)
            .fold(Multiplicity::Finite(0), |a, b| a + b)
    }

    /// Values repeated according to multiplicity, or `None` if some point
    /// has infinite multiplicity.
    pub fn expanded(&self) -> Option<Vec<f64>> {
        let mut out = Vec::new();
        for p in &self.points {
            let count = p.multiplicity.count()?;
            out.extend(std::iter::repeat_n(p.value, count as usize));
        }
        Some(out)
    }

    /// Restriction to `[0, cutoff)` for a smaller cutoff.
    pub fn truncate(&self, cutoff: f64) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        Self {
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.value < cutoff)
                .collect(),
            cutoff,
            ..self.clone()
        }
    }

    /// The points strictly above `zero_tol`.
    pub fn positive_part(&self, zero_tol: f64) -> Self {
        Self {
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.value > zero_tol)
                .collect(),
            ..self.clone()
        }
    }

    /// Point-by-point equality: same length, values within the larger merge
    /// tolerance, identical multiplicities.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let tol = self.merge_tol.max(other.merge_tol);
        self.points.len() == other.points.len()
            && self.points.iter().zip(&other.points).all(|(a, b)| {
                values_close(a.value, b.value, tol) && a.multiplicity == b.multiplicity
            })
    }
}

fn check_value(value: f64) -> Result<()> {
    if value.is_nan() || value.is_infinite() {
        return Err(Error::InvalidSpectrum(format!("non-finite value {value}")));
    }
    if value < 0.0 {
        return Err(Error::NegativeValue(value));
    }
    Ok(())
}

fn check_parameters(cutoff: f64, merge_tol: f64) -> Result<()> {
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(Error::InvalidSpectrum(format!(
            "cutoff must be positive and finite, got {cutoff}"
        )));
    }
    if !(merge_tol >= 0.0) || !merge_tol.is_finite() {
        return Err(Error::InvalidSpectrum(format!(
            "merge tolerance must be nonnegative, got {merge_tol}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Multiplicity::{Finite, Infinite};

    #[test]
    fn collect_sorts_merges_and_truncates() {
        let s = TruncatedSpectrum::collect(
            [
                (3.0, Finite(1)),
                (1.0, Finite(2)),
                (1.0 + 1e-12, Finite(1)),
                (7.0, Finite(1)),
            ],
            5.0,
            DEFAULT_MERGE_TOL,
        )
        .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.points()[0], SpectralPoint::new(1.0, Finite(3)));
        assert_eq!(s.points()[1], SpectralPoint::new(3.0, Finite(1)));
        assert!(s.is_complete());
    }

    #[test]
    fn negative_values_are_rejected() {
        let err =
            TruncatedSpectrum::collect([(-1.0, Finite(1))], 5.0, DEFAULT_MERGE_TOL).unwrap_err();
        assert_eq!(err, Error::NegativeValue(-1.0));
        let err =
            TruncatedSpectrum::try_new(vec![SpectralPoint::new(-0.5, Infinite)], 1.0, true, 0.0)
                .unwrap_err();
        assert_eq!(err, Error::NegativeValue(-0.5));
    }

    #[test]
    fn strict_constructor_rejects_unsorted_and_close_values() {
        let pts = vec![
            SpectralPoint::new(2.0, Finite(1)),
            SpectralPoint::new(1.0, Finite(1)),
        ];
        assert!(TruncatedSpectrum::try_new(pts, 5.0, true, 1e-9).is_err());
        let pts = vec![
            SpectralPoint::new(1.0, Finite(1)),
            SpectralPoint::new(1.0 + 1e-12, Finite(1)),
        ];
        assert!(TruncatedSpectrum::try_new(pts, 5.0, true, 1e-9).is_err());
        let pts = vec![SpectralPoint::new(6.0, Finite(1))];
        assert!(TruncatedSpectrum::try_new(pts, 5.0, true, 1e-9).is_err());
    }

    #[test]
    fn bad_cutoff() {
        assert!(TruncatedSpectrum::empty(0.0, 1e-9).is_err());
        assert!(TruncatedSpectrum::empty(f64::NAN, 1e-9).is_err());
        assert!(TruncatedSpectrum::empty(1.0, -1.0).is_err());
    }

    #[test]
    fn union_adds_multiplicities_and_takes_smallest_cutoff() {
        let a =
            TruncatedSpectrum::collect([(0.0, Infinite), (2.0, Finite(1))], 10.0, 1e-9).unwrap();
        let b =
            TruncatedSpectrum::collect([(2.0, Finite(3)), (6.0, Finite(1))], 5.0, 1e-9).unwrap();
        let u = TruncatedSpectrum::union([&a, &b]).unwrap();
        assert_eq!(u.cutoff(), 5.0);
        assert_eq!(
            u.points(),
            &[
                SpectralPoint::new(0.0, Infinite),
                SpectralPoint::new(2.0, Finite(4))
            ]
        );
    }

    #[test]
    fn dropping_pure_point_resets_multiplicities() {
        let s = TruncatedSpectrum::collect([(1.0, Finite(5))], 2.0, 0.0)
            .unwrap()
            .with_pure_point(false);
        assert_eq!(s.points()[0].multiplicity, Multiplicity::ONE);
        assert!(!s.is_pure_point());
    }
}

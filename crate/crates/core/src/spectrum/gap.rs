use super::truncated::{TruncatedSpectrum, DEFAULT_ZERO_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapVerdict {
    ClosedRange,
    NotClosedRange,
    Unknown,
}

/// Closed-range verdict from the spectrum near 0.
///
/// `gap` is the largest `c` with `(0, c)` free of spectrum. For a closed
/// range the estimate `|Ax| >= C |x|` on the orthogonal complement of the
/// kernel holds with `C = gap`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub verdict: GapVerdict,
    pub gap: Option<f64>,
    /// The gap is only known to be at least `gap` (no positive point below
    /// the cutoff).
    pub gap_at_least: bool,
    pub bound_constant: Option<f64>,
}

impl GapReport {
    fn unknown() -> Self {
        Self {
            verdict: GapVerdict::Unknown,
            gap: None,
            gap_at_least: false,
            bound_constant: None,
        }
    }
}

/// [`gap_report_with_tol`] with the default zero tolerance.
pub fn gap_report(s: &TruncatedSpectrum) -> GapReport {
    gap_report_with_tol(s, DEFAULT_ZERO_TOL)
}

/// A finite complete listing cannot accumulate at 0, so it always yields
/// `ClosedRange`; an incomplete listing yields `Unknown`. `NotClosedRange`
/// is never produced from truncated data.
pub fn gap_report_with_tol(s: &TruncatedSpectrum, zero_tol: f64) -> GapReport {
    if !s.is_complete() {
        return GapReport::unknown();
    }
    let (gap, at_least) = match s.values().find(|&v| v > zero_tol) {
        Some(v) => (v, false),
        None => (s.cutoff(), true),
    };
    GapReport {
        verdict: GapVerdict::ClosedRange,
        gap: Some(gap),
        gap_at_least: at_least,
        bound_constant: Some(gap),
    }
}

use std::f64::consts::PI;

use super::bessel::{ZeroFinder, MAX_ORDER};
use crate::error::{Error, Result};
use crate::spectrum::{Multiplicity, SpectralPoint, TruncatedSpectrum, DEFAULT_MERGE_TOL};

/// □ on (0,1)-forms of the disc of the given radius: the Dirichlet
/// eigenvalues `j_{n,k}² / r²` divided by 4. Order 0 modes are simple, order
/// `n >= 1` modes come in cos/sin pairs.
pub fn disc_sigma01(radius: f64, cutoff: f64) -> Result<TruncatedSpectrum> {
    disc_sigma01_with(radius, cutoff, DEFAULT_MERGE_TOL)
}

pub fn disc_sigma01_with(radius: f64, cutoff: f64, merge_tol: f64) -> Result<TruncatedSpectrum> {
    check_positive("radius", radius)?;
    check_positive("cutoff", cutoff)?;
    // j²/(4r²) < cutoff  <=>  j < 2 r sqrt(cutoff)
    let limit = 2.0 * radius * cutoff.sqrt();
    let finder = ZeroFinder::default();

    let mut points = Vec::new();
    let mut previous: Option<Vec<f64>> = None;
    for order in 0u32.. {
        if f64::from(order) >= limit {
            break;
        }
        if order > MAX_ORDER {
            return Err(Error::CutoffBeyondEnvelope { order, k: 1 });
        }
        let zeros: Vec<f64> = finder
            .zeros_below(order, limit)?
            .into_iter()
            .map(|z| z.value)
            .collect();
        if let Some(prev) = &previous {
            check_interlacing(order - 1, prev, &zeros)?;
        }
        let multiplicity = if order == 0 {
            Multiplicity::ONE
        } else {
            Multiplicity::Finite(2)
        };
        points.extend(
            zeros
                .iter()
                .map(|j| SpectralPoint::new(j * j / (4.0 * radius * radius), multiplicity)),
        );
        previous = Some(zeros);
    }
    TruncatedSpectrum::collect(points, cutoff, merge_tol)
}

/// `j_{n,k} < j_{n+1,k} < j_{n,k+1}` wherever both sides were computed.
fn check_interlacing(order: u32, lower: &[f64], upper: &[f64]) -> Result<()> {
    for (k, &z) in upper.iter().enumerate() {
        let below_ok = lower.get(k).is_some_and(|&l| l < z);
        let above_ok = lower.get(k + 1).is_none_or(|&l| z < l);
        if !below_ok || !above_ok {
            return Err(Error::Interlacing {
                order,
                k: k as u32 + 1,
            });
        }
    }
    Ok(())
}

/// □ on (0,1)-forms of the `a × b` rectangle: `(π²/4)(m²/a² + n²/b²)` for
/// `m, n >= 1`.
pub fn rect_sigma01(a: f64, b: f64, cutoff: f64) -> Result<TruncatedSpectrum> {
    rect_sigma01_with(a, b, cutoff, DEFAULT_MERGE_TOL)
}

pub fn rect_sigma01_with(a: f64, b: f64, cutoff: f64, merge_tol: f64) -> Result<TruncatedSpectrum> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_positive("cutoff", cutoff)?;
    let points = rect_modes(a, b, cutoff)
        .into_iter()
        .map(|(_, _, value)| SpectralPoint::new(value, Multiplicity::ONE));
    TruncatedSpectrum::collect(points, cutoff, merge_tol)
}

/// Sine modes `(m, n, value)` below the cutoff, in ascending value (ties by
/// `m`).
pub(crate) fn rect_modes(a: f64, b: f64, cutoff: f64) -> Vec<(u32, u32, f64)> {
    let scale = PI * PI / 4.0;
    let mut modes = Vec::new();
    for m in 1u32.. {
        let x = scale * f64::from(m * m) / (a * a);
        if x + scale / (b * b) >= cutoff {
            break;
        }
        for n in 1u32.. {
            let value = x + scale * f64::from(n * n) / (b * b);
            if value >= cutoff {
                break;
            }
            modes.push((m, n, value));
        }
    }
    modes.sort_by(|p, q| p.2.total_cmp(&q.2).then(p.0.cmp(&q.0)));
    modes
}

/// Disc modes `(order, rank, j_{order,rank})` below the cutoff, ascending;
/// each order `>= 1` appears once here but carries two eigenfunctions.
pub(crate) fn disc_modes(radius: f64, cutoff: f64) -> Result<Vec<(u32, u32, f64)>> {
    let limit = 2.0 * radius * cutoff.sqrt();
    let finder = ZeroFinder::default();
    let mut modes = Vec::new();
    for order in 0u32.. {
        if f64::from(order) >= limit {
            break;
        }
        if order > MAX_ORDER {
            return Err(Error::CutoffBeyondEnvelope { order, k: 1 });
        }
        for (k, z) in finder.zeros_below(order, limit)?.into_iter().enumerate() {
            let value = z.value * z.value / (4.0 * radius * radius);
            if value < cutoff {
                modes.push((order, k as u32 + 1, z.value));
            }
        }
    }
    modes.sort_by(|p, q| p.2.total_cmp(&q.2).then(p.0.cmp(&q.0)));
    Ok(modes)
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

#![allow(dead_code)]

use boxspec_core::{Multiplicity, SpectralPoint, TruncatedSpectrum, DEFAULT_MERGE_TOL};
use proptest::prelude::*;

/// Finite spectra on a quarter-integer lattice (so sums collide), optionally
/// with a point at 0.
pub fn finite_spectrum(cutoff: f64) -> impl Strategy<Value = TruncatedSpectrum> {
    (
        prop::collection::vec((1u32..40, 1u64..4), 0..8),
        prop::option::of(1u64..3),
    )
        .prop_map(move |(pts, zero)| {
            let mut points: Vec<SpectralPoint> = pts
                .into_iter()
                .map(|(k, m)| SpectralPoint::new(f64::from(k) * 0.25, Multiplicity::Finite(m)))
                .collect();
            if let Some(m) = zero {
                points.push(SpectralPoint::new(0.0, Multiplicity::Finite(m)));
            }
            TruncatedSpectrum::collect(points, cutoff, DEFAULT_MERGE_TOL).unwrap()
        })
}

/// Every pairwise sum of the expanded multisets below the cutoff, sorted.
pub fn brute_sums(a: &[f64], b: &[f64], cutoff: f64) -> Vec<f64> {
    let mut out: Vec<f64> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| x + y))
        .filter(|v| *v < cutoff)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

pub fn assert_close_lists(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "lengths differ: {got:?} vs {want:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= tol * w.abs().max(1.0), "{g} vs {w}");
    }
}

/// `J_n(x) = (1/2π) ∫₀^{2π} cos(nτ − x sin τ) dτ` by the trapezoid rule,
/// which converges geometrically for this periodic integrand.
pub fn bessel_by_quadrature(n: u32, x: f64) -> f64 {
    let nodes = 2 * (x.ceil() as usize + n as usize) + 64;
    let h = 2.0 * std::f64::consts::PI / nodes as f64;
    let sum: f64 = (0..nodes)
        .map(|i| {
            let t = i as f64 * h;
            (f64::from(n) * t - x * t.sin()).cos()
        })
        .sum();
    sum / nodes as f64
}

/// Power series with exactly 200 terms.
pub fn bessel_by_series(n: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = (1..=n).fold(1.0, |t, i| t * half / f64::from(i));
    let mut sum = term;
    for k in 1..200u32 {
        term *= -half * half / (f64::from(k) * f64::from(k + n));
        sum += term;
    }
    sum
}

/// The k-th sign change of `f` on a fine scan from `start`, bisected to
/// machine precision.
pub fn kth_root(f: impl Fn(f64) -> f64, start: f64, step: f64, k: usize) -> f64 {
    let mut lo = start;
    let mut f_lo = f(lo);
    let mut found = 0;
    loop {
        let hi = lo + step;
        let f_hi = f(hi);
        if f_lo * f_hi <= 0.0 {
            found += 1;
            if found == k {
                let (mut a, mut b, mut fa) = (lo, hi, f_lo);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    let fm = f(m);
                    if (fm < 0.0) == (fa < 0.0) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                    if b - a <= 4.0 * f64::EPSILON * b {
                        break;
                    }
                }
                return 0.5 * (a + b);
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
}

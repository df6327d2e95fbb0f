//! Bessel functions of the first kind `J_n` for integer order and their
//! positive zeros.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 50;
pub const MAX_ARGUMENT: f64 = 1e4;

/// Largest argument evaluated by the power series.
const SERIES_MAX: f64 = 4.0;

/// Argument above which the large-argument expansion is used for order `n`.
pub fn asymptotic_crossover(n: u32) -> f64 {
    let n = f64::from(n);
    (25.0f64).max(n * n / 2.0 + 25.0)
}

/// `J_n(x)` to about `1e-12` absolute accuracy for `n <= 50`, `0 <= x <= 1e4`.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    if n > MAX_ORDER || !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::BesselEnvelope { order: n, x });
    }
    Ok(j_unchecked(n, x))
}

pub(crate) fn j_unchecked(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_MAX {
        series(n, x)
    } else if x < asymptotic_crossover(n) {
        miller(n, x)
    } else {
        hankel(n, x)
    }
}

/// `Σ_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)`.
pub(crate) fn series(n: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    for i in 1..=n {
        term *= half / f64::from(i);
    }
    let q = -half * half;
    let mut sum = term;
    for k in 1..200u32 {
        term *= q / (f64::from(k) * f64::from(k + n));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Backward recurrence `J_{k-1} = (2k/x) J_k - J_{k+1}` from far above the
/// turning point, normalized by `J_0 + 2 Σ J_{2k} = 1`.
pub(crate) fn miller(n: u32, x: f64) -> f64 {
    const BIG: f64 = 1e250;
    let reach = f64::from(n).max(x) + 10.0 * x.cbrt() + 30.0;
    let start = 2 * (reach.ceil() as u64).div_ceil(2);
    let (mut above, mut current) = (0.0f64, 1e-30f64);
    let mut even_sum = 0.0;
    let mut wanted = 0.0;
    let mut k = start;
    while k > 0 {
        let below = (2.0 * k as f64 / x) * current - above;
        above = current;
        current = below;
        k -= 1;
        // `current` now holds the unnormalized J_k.
        if current.abs() > BIG {
            current /= BIG;
            above /= BIG;
            even_sum /= BIG;
            wanted /= BIG;
        }
        if k == u64::from(n) {
            wanted = current;
        }
        if k % 2 == 0 && k > 0 {
            even_sum += current;
        }
    }
    let norm = current + 2.0 * even_sum;
    wanted / norm
}

/// Hankel's expansion `sqrt(2/(πx)) (P cos χ - Q sin χ)`, `χ = x - (n/2 + 1/4)π`,
/// summed up to its smallest term.
pub(crate) fn hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * f64::from(n) * f64::from(n);
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 0..400u32 {
        if term.abs() > last || term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        let odd = f64::from(2 * k + 1);
        term *= (mu - odd * odd) / (f64::from(k + 1) * 8.0 * x);
    }
    let chi = x - (f64::from(n) / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Settings of the sign-change scan and bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFinder {
    /// Bracket width at which bisection hands over to Newton, relative to
    /// the bracket position.
    pub bisection_tol: f64,
    /// Scan step; smaller than any gap between consecutive zeros.
    pub scan_step: f64,
    /// Extra scan steps allowed beyond the expected position of the zero.
    pub scan_slack: u32,
}

impl Default for ZeroFinder {
    fn default() -> Self {
        Self {
            bisection_tol: 1e-12,
            scan_step: FRAC_PI_4,
            scan_slack: 40,
        }
    }
}

/// A located zero together with the final bracket on which `J_n` changes
/// sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselZero {
    pub value: f64,
    pub bracket: (f64, f64),
}

/// `j_{n,k}`, the `k`-th positive zero of `J_n`.
pub fn bessel_zero(n: u32, k: u32) -> Result<f64> {
    ZeroFinder::default().zero(n, k).map(|z| z.value)
}

impl ZeroFinder {
    /// Locates `j_{n,k}` and checks `j_{n,k} < j_{n+1,k} < j_{n,k+1}`.
    pub fn zero(&self, n: u32, k: u32) -> Result<BesselZero> {
        if n > MAX_ORDER {
            return Err(Error::BesselEnvelope {
                order: n,
                x: f64::from(n),
            });
        }
        if k == 0 {
            return Err(Error::InvalidArgument(
                "zero rank k must be positive".into(),
            ));
        }
        let zero = self.nth(n, k)?;
        let next_order = self.nth(n + 1, k)?;
        let next_rank = self.nth(n, k + 1)?;
        if !(zero.value < next_order.value && next_order.value < next_rank.value) {
            return Err(Error::Interlacing { order: n, k });
        }
        Ok(zero)
    }

    /// All zeros of `J_n` below `limit`, in order, without the interlacing
    /// check.
    pub fn zeros_below(&self, n: u32, limit: f64) -> Result<Vec<BesselZero>> {
        let mut out = Vec::new();
        let mut lo = self.scan_start(n);
        let mut f_lo = j_unchecked(n, lo);
        while lo < limit {
            let hi = lo + self.scan_step;
            if hi > MAX_ARGUMENT {
                return Err(Error::CutoffBeyondEnvelope {
                    order: n,
                    k: out.len() as u32 + 1,
                });
            }
            let f_hi = j_unchecked(n, hi);
            if f_lo * f_hi < 0.0 || f_hi == 0.0 {
                let z = self.refine(n, lo, hi, f_lo)?;
                if z.value >= limit {
                    break;
                }
                out.push(z);
            }
            lo = hi;
            f_lo = f_hi;
        }
        Ok(out)
    }

    fn scan_start(&self, n: u32) -> f64 {
        // Zeros of J_n exceed n, and J_n > 0 on (0, j_{n,1}).
        f64::from(n)
    }

    fn nth(&self, n: u32, k: u32) -> Result<BesselZero> {
        let expected = (f64::from(k) + f64::from(n) / 2.0) * PI;
        let budget = (expected / self.scan_step).ceil() as u32 + self.scan_slack;
        let mut lo = self.scan_start(n);
        let mut f_lo = j_unchecked(n, lo);
        let mut found = 0;
        for _ in 0..budget {
            let hi = lo + self.scan_step;
            if hi > MAX_ARGUMENT {
                return Err(Error::BesselEnvelope { order: n, x: hi });
            }
            let f_hi = j_unchecked(n, hi);
            if f_lo * f_hi < 0.0 || f_hi == 0.0 {
                found += 1;
                if found == k {
                    return self.refine(n, lo, hi, f_lo);
                }
            }
            lo = hi;
            f_lo = f_hi;
        }
        Err(Error::BracketNotFound { order: n, k })
    }

    /// Bisection down to `bisection_tol`, then Newton steps with
    /// `J_n' = (J_{n-1} - J_{n+1}) / 2`, kept inside the bracket.
    fn refine(&self, n: u32, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<BesselZero> {
        let f_hi = j_unchecked(n, hi);
        if f_hi == 0.0 {
            return Ok(BesselZero {
                value: hi,
                bracket: (lo, hi),
            });
        }
        while hi - lo > self.bisection_tol * hi {
            let mid = 0.5 * (lo + hi);
            let f_mid = j_unchecked(n, mid);
            if f_mid == 0.0 {
                return Ok(BesselZero {
                    value: mid,
                    bracket: (lo, hi),
                });
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..4 {
            let f = j_unchecked(n, x);
            let below = if n == 0 {
                -j_unchecked(1, x)
            } else {
                j_unchecked(n - 1, x)
            };
            let derivative = 0.5 * (below - j_unchecked(n + 1, x));
            if derivative == 0.0 {
                break;
            }
            let next = x - f / derivative;
            if !(lo..=hi).contains(&next) {
                break;
            }
            x = next;
        }
        Ok(BesselZero {
            value: x,
            bracket: (lo, hi),
        })
    }
}

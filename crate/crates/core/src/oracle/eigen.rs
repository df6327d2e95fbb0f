use super::matrix::DenseSymMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;
const MAX_QL_ITERATIONS: usize = 64;

/// Orders above this go through Householder tridiagonalization in
/// [`symmetric_eigen_dense`]; Jacobi is O(n³) per sweep with a large constant.
pub const JACOBI_MAX_ORDER: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    /// Cyclic Jacobi rotations.
    Jacobi,
    /// Householder reduction to tridiagonal form, then implicit QL.
    Tridiagonal,
    /// Jacobi up to [`JACOBI_MAX_ORDER`], tridiagonal QL above.
    Auto,
}

/// All eigenvalues in ascending order.
pub fn symmetric_eigen_dense(m: &DenseSymMatrix) -> Result<Vec<f64>> {
    eigenvalues(m, EigenMethod::Auto)
}

pub fn eigenvalues(m: &DenseSymMatrix, method: EigenMethod) -> Result<Vec<f64>> {
    let mut values = match method {
        EigenMethod::Jacobi => jacobi(m)?,
        EigenMethod::Tridiagonal => tridiagonal_ql(m)?,
        EigenMethod::Auto if m.order() <= JACOBI_MAX_ORDER => jacobi(m)?,
        EigenMethod::Auto => tridiagonal_ql(m)?,
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Cyclic-by-row Jacobi: sweeps over every (p, q) with p < q in a fixed
/// order until the off-diagonal Frobenius norm drops below `1e-12 ‖M‖_F`.
fn jacobi(m: &DenseSymMatrix) -> Result<Vec<f64>> {
    let n = m.order();
    let mut a = m.entries().to_vec();
    let target = 1e-12 * m.frobenius_norm();

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= target {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    if off_norm(&a) <= target {
        return Ok((0..n).map(|i| a[i * n + i]).collect());
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Householder tridiagonalization followed by implicit QL with Wilkinson
/// shifts. Eigenvalues only.
fn tridiagonal_ql(m: &DenseSymMatrix) -> Result<Vec<f64>> {
    let (mut d, mut e) = tridiagonalize(m);
    ql_implicit(&mut d, &mut e)?;
    Ok(d)
}

/// Returns the diagonal `d` and subdiagonal `e` (`e[i]` couples `i-1` and
/// `i`, `e[0] = 0`). The full symmetric trailing block is updated so every
/// inner loop runs over contiguous rows.
fn tridiagonalize(m: &DenseSymMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.order();
    let mut a = m.entries().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut u = vec![0.0; n];
    let mut w = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i; // reflector acts on indices 0..l
        let row = &a[i * n..i * n + l];
        let scale: f64 = row.iter().map(|v| v.abs()).sum();
        if l == 1 || scale == 0.0 {
            e[i] = a[i * n + i - 1];
            continue;
        }
        let mut h = 0.0;
        for k in 0..l {
            u[k] = a[i * n + k] / scale;
            h += u[k] * u[k];
        }
        let f = u[l - 1];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        u[l - 1] = f - g;

        // w = A u / h on the leading l×l block.
        let mut k_dot = 0.0;
        for j in 0..l {
            let rowj = &a[j * n..j * n + l];
            let s: f64 = rowj.iter().zip(&u[..l]).map(|(x, y)| x * y).sum();
            w[j] = s / h;
            k_dot += w[j] * u[j];
        }
        let hh = k_dot / (2.0 * h);
        for j in 0..l {
            w[j] -= hh * u[j];
        }
        // A <- A - u wᵀ - w uᵀ
        for j in 0..l {
            let (uj, wj) = (u[j], w[j]);
            let rowj = &mut a[j * n..j * n + l];
            for ((x, &uk), &wk) in rowj.iter_mut().zip(&u[..l]).zip(&w[..l]) {
                *x -= uj * wk + wj * uk;
            }
        }
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    (d, e)
}

fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // Absolute deflation floor: near-null blocks never satisfy the relative
    // test.
    let norm = d
        .iter()
        .zip(e.iter())
        .map(|(a, b)| a.abs() + b.abs())
        .fold(0.0, f64::max);
    let floor = f64::EPSILON * norm;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { sweeps: iterations });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

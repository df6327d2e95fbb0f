use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::enumerate::EigenLabel;
use crate::domains::bessel::j_unchecked;
use crate::domains::planar::{disc_modes, rect_modes};
use crate::domains::PlanarDomain;
use crate::error::{Error, Result};
use crate::spectrum::{values_close, DEFAULT_MERGE_TOL};

/// Upper bound on grid points per factor.
pub const MAX_GRID_POINTS: usize = 4_000_000;

/// Eigenfunction family sampled on one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Dirichlet eigenfunction (coefficient of dz̄_j).
    Y,
    /// Positive □₀ eigenfunction, `∂Y/∂z`.
    Z,
    /// Bergman function `z^m`.
    H,
}

/// Uniform grid; point `(i, j)` sits at `origin + (i hx, j hy)` and has
/// linear index `i * ny + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub origin: (f64, f64),
    pub hx: f64,
    pub hy: f64,
    pub nx: usize,
    pub ny: usize,
    pub inside: Vec<bool>,
}

impl SampleGrid {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }

    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.origin.0 + i as f64 * self.hx,
            self.origin.1 + j as f64 * self.hy,
        )
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.inside.iter().all(|b| !b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorSample {
    /// 1-based factor index.
    pub factor: usize,
    pub family: Family,
    /// This factor's share of the eigenvalue.
    pub value: f64,
    pub grid: SampleGrid,
    /// Zero outside the domain.
    pub values: Vec<Complex64>,
}

impl FactorSample {
    /// `sqrt(Σ |v|² hx hy)` over the grid points inside the domain.
    pub fn discrete_norm(&self) -> f64 {
        let g = &self.grid;
        let sum: f64 = self
            .values
            .iter()
            .zip(&g.inside)
            .filter(|(_, &inside)| inside)
            .map(|(v, _)| v.norm_sqr())
            .sum();
        (sum * g.hx * g.hy).sqrt()
    }
}

/// A sampled eigenform `f dz̄^J`: the coefficient `f` is the product of the
/// per-factor samples.
#[derive(Debug, Clone, PartialEq)]
pub struct FormSample {
    pub label: EigenLabel,
    /// The multi-index `J` of `dz̄^J`.
    pub dzbar: Vec<usize>,
    pub value: f64,
    pub factors: Vec<FactorSample>,
}

impl FormSample {
    /// Coefficient at the product grid point with per-factor linear indices
    /// `idx`.
    pub fn coefficient(&self, idx: &[usize]) -> Complex64 {
        self.factors
            .iter()
            .zip(idx)
            .map(|(f, &i)| f.values[i])
            .product()
    }

    pub fn discrete_norm(&self) -> f64 {
        self.factors
            .iter()
            .map(FactorSample::discrete_norm)
            .product()
    }
}

/// Samples the eigenform named by `label` on grids of spacing about
/// `grid_step`. `holomorphic` gives the exponent `m` of the Bergman
/// function `z^m` on every complement factor without a rank in `label.k`.
/// Each factor sample has unit discrete L² norm.
pub fn eigenform_sample(
    factors: &[PlanarDomain],
    label: &EigenLabel,
    q: usize,
    holomorphic: &BTreeMap<usize, u32>,
    grid_step: f64,
) -> Result<FormSample> {
    let n = factors.len();
    label.validate(n, q)?;
    if !(grid_step > 0.0 && grid_step.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "grid step must be positive, got {grid_step}"
        )));
    }
    let h_factors = label.holomorphic_factors(n);
    for key in holomorphic.keys() {
        if !h_factors.contains(key) {
            return Err(Error::InvalidArgument(format!(
                "factor {key} carries no Bergman function in {label}"
            )));
        }
    }
    let mut samples = Vec::with_capacity(n);
    let mut value = 0.0;
    for (i, domain) in factors.iter().enumerate() {
        let factor = i + 1;
        let (family, rank, power) = if label.j.contains(&factor) {
            (Family::Y, label.k[&factor], 0)
        } else if let Some(&r) = label.k.get(&factor) {
            (Family::Z, r, 0)
        } else {
            let m = holomorphic.get(&factor).copied().ok_or_else(|| {
                Error::InvalidArgument(format!("factor {factor} needs a Bergman index"))
            })?;
            (Family::H, 0, m)
        };
        let sample = sample_factor(domain, factor, family, rank, power, grid_step)?;
        value += sample.value;
        samples.push(sample);
    }
    Ok(FormSample {
        label: label.clone(),
        dzbar: label.j.clone(),
        value,
        factors: samples,
    })
}

fn sample_factor(
    domain: &PlanarDomain,
    factor: usize,
    family: Family,
    rank: usize,
    power: u32,
    step: f64,
) -> Result<FactorSample> {
    let unsupported = |what: &str| Err(Error::Unsupported(format!("factor {factor}: {what}")));
    let (grid, value, f): (SampleGrid, f64, Box<dyn Fn(f64, f64) -> Complex64>) = match *domain {
        PlanarDomain::Custom { .. } => return unsupported("custom factors cannot be sampled"),
        PlanarDomain::Rectangle { a, b } => {
            if family == Family::H {
                return unsupported("no concrete Bergman basis on a rectangle");
            }
            let ((m, nn), value) = pick_mode(rank, |c| {
                Ok(rect_modes(a, b, c)
                    .into_iter()
                    .map(|(m, n, v)| ((m, n), v))
                    .collect())
            })?;
            let (kx, ky) = (f64::from(m) * PI / a, f64::from(nn) * PI / b);
            let f: Box<dyn Fn(f64, f64) -> Complex64> = match family {
                Family::Y => {
                    Box::new(move |x, y| Complex64::new((kx * x).sin() * (ky * y).sin(), 0.0))
                }
                _ => Box::new(move |x, y| {
                    // ∂/∂z = (∂x - i ∂y) / 2
                    Complex64::new(
                        0.5 * kx * (kx * x).cos() * (ky * y).sin(),
                        -0.5 * ky * (kx * x).sin() * (ky * y).cos(),
                    )
                }),
            };
            (rect_grid(a, b, step)?, value, f)
        }
        PlanarDomain::Disc { radius } => {
            let grid = disc_grid(radius, step)?;
            match family {
                Family::H => {
                    let f: Box<dyn Fn(f64, f64) -> Complex64> =
                        Box::new(move |x, y| Complex64::new(x, y).powu(power));
                    (grid, 0.0, f)
                }
                _ => {
                    let (order, zero, value) = pick_mode(rank, |c| {
                        Ok(disc_modes(radius, c)?
                            .into_iter()
                            .map(|(n, _, j)| ((n, j), j * j / (4.0 * radius * radius)))
                            .collect())
                    })
                    .map(|((n, j), v)| (n, j, v))?;
                    let kappa = zero / radius;
                    let n = order as i32;
                    let f: Box<dyn Fn(f64, f64) -> Complex64> = if family == Family::Y {
                        Box::new(move |x, y| {
                            let (rho, theta) = (x.hypot(y), y.atan2(x));
                            Complex64::from_polar(
                                j_unchecked(order, kappa * rho),
                                f64::from(n) * theta,
                            )
                        })
                    } else {
                        // ∂/∂z [J_n(κρ) e^{inθ}] = (κ/2) J_{n-1}(κρ) e^{i(n-1)θ}, J_{-1} = -J_1.
                        Box::new(move |x, y| {
                            let (rho, theta) = (x.hypot(y), y.atan2(x));
                            let radial = if order == 0 {
                                -j_unchecked(1, kappa * rho)
                            } else {
                                j_unchecked(order - 1, kappa * rho)
                            };
                            Complex64::from_polar(0.5 * kappa * radial, f64::from(n - 1) * theta)
                        })
                    };
                    (grid, value, f)
                }
            }
        }
    };
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for i in 0..grid.nx {
        for j in 0..grid.ny {
            let idx = grid.index(i, j);
            if grid.inside[idx] {
                let (x, y) = grid.point(i, j);
                values[idx] = f(x, y);
            }
        }
    }
    let mut sample = FactorSample {
        factor,
        family,
        value,
        grid,
        values,
    };
    let norm = sample.discrete_norm();
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "factor {factor}: sample vanishes on the grid; refine the grid step"
        )));
    }
    for v in &mut sample.values {
        *v /= norm;
    }
    Ok(sample)
}

/// The first mode (in the provider's order) of the `rank`-th distinct
/// eigenvalue. `modes(cutoff)` lists every mode below `cutoff` ascending.
fn pick_mode<M: Copy>(
    rank: usize,
    modes: impl Fn(f64) -> Result<Vec<(M, f64)>>,
) -> Result<(M, f64)> {
    let mut cutoff = 4.0;
    for _ in 0..40 {
        let list = modes(cutoff)?;
        let mut groups: Vec<(M, f64)> = Vec::new();
        for (mode, v) in list {
            match groups.last() {
                Some(&(_, first)) if values_close(first, v, DEFAULT_MERGE_TOL) => {}
                _ => groups.push((mode, v)),
            }
        }
        // A later group proves the rank-th group is complete below the cutoff.
        if groups.len() > rank {
            return Ok(groups[rank - 1]);
        }
        cutoff *= 2.0;
    }
    Err(Error::InvalidArgument(format!(
        "rank {rank} is beyond the provider range"
    )))
}

fn rect_grid(a: f64, b: f64, step: f64) -> Result<SampleGrid> {
    let nx = ((a / step).ceil() as usize).max(2);
    let ny = ((b / step).ceil() as usize).max(2);
    check_size((nx + 1) * (ny + 1))?;
    Ok(SampleGrid {
        origin: (0.0, 0.0),
        hx: a / nx as f64,
        hy: b / ny as f64,
        nx: nx + 1,
        ny: ny + 1,
        inside: vec![true; (nx + 1) * (ny + 1)],
    })
}

fn disc_grid(radius: f64, step: f64) -> Result<SampleGrid> {
    let half = ((radius / step).ceil() as usize).max(2);
    let h = radius / half as f64;
    let side = 2 * half + 1;
    check_size(side * side)?;
    let mut inside = vec![false; side * side];
    for i in 0..side {
        for j in 0..side {
            let (x, y) = ((i as f64 - half as f64) * h, (j as f64 - half as f64) * h);
            inside[i * side + j] = x * x + y * y < radius * radius;
        }
    }
    Ok(SampleGrid {
        origin: (-radius, -radius),
        hx: h,
        hy: h,
        nx: side,
        ny: side,
        inside,
    })
}

fn check_size(points: usize) -> Result<()> {
    if points > MAX_GRID_POINTS {
        return Err(Error::InvalidArgument(format!(
            "sampling grid of {points} points exceeds {MAX_GRID_POINTS}"
        )));
    }
    Ok(())
}

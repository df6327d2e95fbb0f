//! Finite-difference discretizations of the Dirichlet Laplacian and of the
//! ∂̄-Neumann form on functions.

use std::collections::HashMap;

use super::eigen::{symmetric_eigen_dense, EigenMethod};
use super::matrix::{DenseSymMatrix, MAX_ORDER};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    /// `points` interior nodes on `(0, length)`.
    Interval { length: f64, points: usize },
    /// `nx × ny` interior nodes on `(0, a) × (0, b)`.
    RectGrid {
        a: f64,
        b: f64,
        nx: usize,
        ny: usize,
    },
    /// Lattice nodes of spacing `step` strictly inside the disc.
    DiscGrid { radius: f64, step: f64 },
}

impl GridSpec {
    /// Eigenvalues of the 3- or 5-point −Δ with zero Dirichlet data.
    pub fn dirichlet_eigenvalues(&self) -> Result<Vec<f64>> {
        match *self {
            GridSpec::Interval { length, points } => fd_dirichlet_interval(length, points),
            GridSpec::RectGrid { a, b, nx, ny } => fd_dirichlet_rect(a, b, nx, ny),
            GridSpec::DiscGrid { radius, step } => fd_dirichlet_disc(radius, step),
        }
    }
}

fn check_length(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// Tridiagonal `(2, -1) / h²` with `h = length / (points + 1)`.
pub fn interval_operator(length: f64, points: usize) -> Result<DenseSymMatrix> {
    check_length("length", length)?;
    if points == 0 {
        return Err(Error::InvalidArgument(
            "an interval grid needs at least one point".into(),
        ));
    }
    let h = length / (points as f64 + 1.0);
    let (diag, off) = (2.0 / (h * h), -1.0 / (h * h));
    DenseSymMatrix::from_fn(points, |i, j| match i.abs_diff(j) {
        0 => diag,
        1 => off,
        _ => 0.0,
    })
}

/// Approximates the −Δ Dirichlet eigenvalues `(kπ/length)²`. Dividing by 4
/// gives □ eigenvalues.
pub fn fd_dirichlet_interval(length: f64, points: usize) -> Result<Vec<f64>> {
    symmetric_eigen_dense(&interval_operator(length, points)?)
}

/// Five-point −Δ on the interior nodes of a rectangle, assembled directly
/// from the stencil. Node `(i, j)` has index `i * ny + j`.
pub fn rect_dirichlet_operator(a: f64, b: f64, nx: usize, ny: usize) -> Result<DenseSymMatrix> {
    check_length("a", a)?;
    check_length("b", b)?;
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidArgument(
            "rectangle grid needs nx, ny >= 1".into(),
        ));
    }
    let order = nx * ny;
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    let hx = a / (nx as f64 + 1.0);
    let hy = b / (ny as f64 + 1.0);
    let (cx, cy) = (-1.0 / (hx * hx), -1.0 / (hy * hy));
    let diag = 2.0 / (hx * hx) + 2.0 / (hy * hy);
    let mut entries = vec![0.0; order * order];
    for i in 0..nx {
        for j in 0..ny {
            let row = i * ny + j;
            entries[row * order + row] = diag;
            if i > 0 {
                entries[row * order + row - ny] = cx;
            }
            if i + 1 < nx {
                entries[row * order + row + ny] = cx;
            }
            if j > 0 {
                entries[row * order + row - 1] = cy;
            }
            if j + 1 < ny {
                entries[row * order + row + 1] = cy;
            }
        }
    }
    DenseSymMatrix::new(order, entries)
}

pub fn fd_dirichlet_rect(a: f64, b: f64, nx: usize, ny: usize) -> Result<Vec<f64>> {
    symmetric_eigen_dense(&rect_dirichlet_operator(a, b, nx, ny)?)
}

/// Lattice points `(i, j)` with `(i h)² + (j h)² < r²`, in row order.
pub fn disc_nodes(radius: f64, step: f64) -> Vec<(i64, i64)> {
    let reach = (radius / step).ceil() as i64;
    let mut nodes = Vec::new();
    for i in -reach..=reach {
        for j in -reach..=reach {
            let (x, y) = (i as f64 * step, j as f64 * step);
            if x * x + y * y < radius * radius {
                nodes.push((i, j));
            }
        }
    }
    nodes
}

fn check_disc(radius: f64, step: f64) -> Result<Vec<(i64, i64)>> {
    check_length("radius", radius)?;
    check_length("step", step)?;
    if step > radius / 10.0 {
        return Err(Error::InvalidArgument(format!(
            "step {step} exceeds radius/10 = {}",
            radius / 10.0
        )));
    }
    let nodes = disc_nodes(radius, step);
    if nodes.len() < 5 {
        return Err(Error::InvalidArgument(format!(
            "only {} interior nodes",
            nodes.len()
        )));
    }
    Ok(nodes)
}

/// Five-point −Δ on the given lattice nodes; neighbors outside the node set
/// carry zero Dirichlet data.
pub fn lattice_dirichlet_operator(nodes: &[(i64, i64)], step: f64) -> Result<DenseSymMatrix> {
    let order = nodes.len();
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    let index: HashMap<(i64, i64), usize> =
        nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
    let inv_h2 = 1.0 / (step * step);
    let mut entries = vec![0.0; order * order];
    for (row, &(i, j)) in nodes.iter().enumerate() {
        entries[row * order + row] = 4.0 * inv_h2;
        for nb in [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)] {
            if let Some(&col) = index.get(&nb) {
                entries[row * order + col] = -inv_h2;
            }
        }
    }
    DenseSymMatrix::new(order, entries)
}

/// The full disc operator; only usable while the node count is below the
/// dense limit.
pub fn disc_dirichlet_operator(radius: f64, step: f64) -> Result<DenseSymMatrix> {
    let nodes = check_disc(radius, step)?;
    lattice_dirichlet_operator(&nodes, step)
}

/// Eigenvalues of the five-point −Δ on the disc grid. The node set is
/// symmetric under `x ↦ -x` and `y ↦ -y`, so the operator is block-diagonal
/// in the four parity sectors; each block is solved densely and the spectra
/// are concatenated.
pub fn fd_dirichlet_disc(radius: f64, step: f64) -> Result<Vec<f64>> {
    let nodes = check_disc(radius, step)?;
    let mut all = Vec::with_capacity(nodes.len());
    for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        if let Some(block) = parity_block(&nodes, step, sx, sy)? {
            all.extend(super::eigen::eigenvalues(&block, EigenMethod::Auto)?);
        }
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Restriction of the lattice operator to functions with
/// `u(-i, j) = sx u(i, j)` and `u(i, -j) = sy u(i, j)`, in an orthonormal
/// basis of orbit sums.
fn parity_block(
    nodes: &[(i64, i64)],
    step: f64,
    sx: f64,
    sy: f64,
) -> Result<Option<DenseSymMatrix>> {
    let inside: HashMap<(i64, i64), ()> = nodes.iter().map(|&n| (n, ())).collect();
    // Orbit representatives with i, j >= 0; basis vectors as sparse (node, coeff).
    let mut basis: Vec<Vec<((i64, i64), f64)>> = Vec::new();
    let mut coeff_of: HashMap<(i64, i64), (usize, f64)> = HashMap::new();
    for &(i, j) in nodes.iter().filter(|(i, j)| *i >= 0 && *j >= 0) {
        let mut terms: Vec<((i64, i64), f64)> = Vec::with_capacity(4);
        for (gx, gy) in [(1i64, 1i64), (-1, 1), (1, -1), (-1, -1)] {
            let chi = (if gx < 0 { sx } else { 1.0 }) * (if gy < 0 { sy } else { 1.0 });
            let image = (gx * i, gy * j);
            match terms.iter_mut().find(|(n, _)| *n == image) {
                Some((_, c)) => *c += chi,
                None => terms.push((image, chi)),
            }
        }
        terms.retain(|(_, c)| *c != 0.0);
        if terms.is_empty() {
            continue;
        }
        let norm = terms.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
        for (_, c) in &mut terms {
            *c /= norm;
        }
        let id = basis.len();
        for &(n, c) in &terms {
            coeff_of.insert(n, (id, c));
        }
        basis.push(terms);
    }
    let order = basis.len();
    if order == 0 {
        return Ok(None);
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    let inv_h2 = 1.0 / (step * step);
    let mut entries = vec![0.0; order * order];
    for (col, vector) in basis.iter().enumerate() {
        for &((i, j), c) in vector {
            let mut apply = |node: (i64, i64), v: f64| {
                if let Some(&(row, d)) = coeff_of.get(&node) {
                    entries[row * order + col] += d * v;
                }
            };
            apply((i, j), 4.0 * inv_h2 * c);
            for nb in [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)] {
                if inside.contains_key(&nb) {
                    apply(nb, -inv_h2 * c);
                }
            }
        }
    }
    for r in 0..order {
        for c in (r + 1)..order {
            let avg = 0.5 * (entries[r * order + c] + entries[c * order + r]);
            entries[r * order + c] = avg;
            entries[c * order + r] = avg;
        }
    }
    DenseSymMatrix::new(order, entries).map(Some)
}

/// Hermitian matrix `DᴴD` of the discrete ∂/∂z̄ on an `nx × ny` node grid
/// covering the closed rectangle, returned as the real symmetric matrix
/// `[[Re, -Im], [Im, Re]]` of order `2 nx ny`.
///
/// `D = (D_x + i D_y) / 2` uses forward differences on each cell, so no
/// boundary condition is imposed: the ∂̄-Neumann condition is natural for
/// the form `Σ |D u|²`. With uniform node weights the continuum limit is
/// −Δ/4 on functions.
pub fn box0_rectangle_operator(a: f64, b: f64, nx: usize, ny: usize) -> Result<DenseSymMatrix> {
    check_length("a", a)?;
    check_length("b", b)?;
    if nx < 4 || ny < 4 {
        return Err(Error::InvalidArgument("box0 grid needs nx, ny >= 4".into()));
    }
    let n = nx * ny;
    let order = 2 * n;
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    let hx = a / (nx as f64 - 1.0);
    let hy = b / (ny as f64 - 1.0);
    let idx = |i: usize, j: usize| i * ny + j;

    // Hermitian accumulation: re/im parts of DᴴD.
    let mut re = vec![0.0; n * n];
    let mut im = vec![0.0; n * n];
    for i in 0..nx - 1 {
        for j in 0..ny - 1 {
            // (node, real coeff, imaginary coeff) of one row of D.
            let row = [
                (idx(i, j), -0.5 / hx, -0.5 / hy),
                (idx(i + 1, j), 0.5 / hx, 0.0),
                (idx(i, j + 1), 0.0, 0.5 / hy),
            ];
            for &(p, pr, pi) in &row {
                for &(q, qr, qi) in &row {
                    // conj(r_p) * r_q
                    re[p * n + q] += pr * qr + pi * qi;
                    im[p * n + q] += pr * qi - pi * qr;
                }
            }
        }
    }
    let mut entries = vec![0.0; order * order];
    for p in 0..n {
        for q in 0..n {
            let (s, k) = (re[p * n + q], im[p * n + q]);
            entries[p * order + q] = s;
            entries[(p + n) * order + q + n] = s;
            entries[p * order + q + n] = -k;
            entries[(p + n) * order + q] = k;
        }
    }
    DenseSymMatrix::new(order, entries)
}

/// Eigenvalues of the discrete □ on functions (each complex eigenvalue once).
pub fn fd_box0_rectangle(a: f64, b: f64, nx: usize, ny: usize) -> Result<Vec<f64>> {
    let doubled = symmetric_eigen_dense(&box0_rectangle_operator(a, b, nx, ny)?)?;
    Ok(doubled.into_iter().step_by(2).collect())
}

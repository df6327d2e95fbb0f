//! Oracle checks exposed through `boxspec verify`.

use std::f64::consts::PI;

use boxspec_core::domains::ZeroFinder;
use boxspec_core::oracle::{
    fd_box0_rectangle, fd_dirichlet_disc, interval_operator, kronecker_sum,
    rect_dirichlet_operator, symmetric_eigen_dense, DenseSymMatrix,
};
use boxspec_core::{bessel_zero, minkowski_sum, Multiplicity, SpectralPoint, TruncatedSpectrum};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Kronecker,
    Fd,
    Bessel,
    Box0,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Kronecker => "kronecker",
            Suite::Fd => "fd",
            Suite::Bessel => "bessel",
            Suite::Box0 => "box0",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// The measured quantity compared against `tolerance`.
    pub metric: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &str, metric: f64, tolerance: f64, pass: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            pass,
            metric,
            tolerance,
            detail,
        }
    }

    fn error(name: &str, tolerance: f64, err: impl std::fmt::Display) -> Self {
        Self::new(name, f64::NAN, tolerance, false, err.to_string())
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Kronecker => vec![kronecker_identity(seed, 20)],
        Suite::Fd => vec![rect_product_identity(), disc_ground_state()],
        Suite::Bessel => vec![bessel_stability()],
        Suite::Box0 => vec![box0_ground_state()],
        Suite::All => [Suite::Kronecker, Suite::Fd, Suite::Bessel, Suite::Box0]
            .into_iter()
            .flat_map(|s| run_suite(s, seed))
            .collect(),
    }
}

/// Random symmetric matrix shifted by `n I`, hence positive semidefinite
/// (Gershgorin), so its eigenvalues form a valid spectrum.
fn random_psd(rng: &mut ChaCha8Rng, n: usize) -> DenseSymMatrix {
    let mut e = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = rng.gen_range(-1.0..1.0);
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
        e[i * n + i] += n as f64;
    }
    DenseSymMatrix::new(n, e).expect("valid random matrix")
}

fn simple_spectrum(values: &[f64]) -> TruncatedSpectrum {
    // Merge tolerance 0 keeps every eigenvalue as its own point.
    TruncatedSpectrum::collect(
        values
            .iter()
            .map(|&v| SpectralPoint::new(v.max(0.0), Multiplicity::ONE)),
        f64::MAX,
        0.0,
    )
    .expect("eigenvalues are finite")
}

/// Sorted eigenvalues of `A ⊗ I + I ⊗ B` against the Minkowski sum of the
/// factor eigenvalues, over `pairs` random pairs of order at most 6 and 5.
pub fn kronecker_identity(seed: u64, pairs: usize) -> Check {
    const TOL: f64 = 1e-8;
    let name = "kronecker-sum spectrum equals Minkowski sum";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (m, k) = (rng.gen_range(1..=6), rng.gen_range(1..=5));
        let (a, b) = (random_psd(&mut rng, m), random_psd(&mut rng, k));
        let result = (|| -> boxspec_core::Result<f64> {
            let direct = symmetric_eigen_dense(&kronecker_sum(&a, &b)?)?;
            let sum = minkowski_sum(
                &simple_spectrum(&symmetric_eigen_dense(&a)?),
                &simple_spectrum(&symmetric_eigen_dense(&b)?),
            );
            let sum = sum.expanded().expect("finite multiplicities");
            if sum.len() != direct.len() {
                return Ok(f64::INFINITY);
            }
            Ok(direct
                .iter()
                .zip(&sum)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max))
        })();
        match result {
            Ok(err) => worst = worst.max(err),
            Err(e) => return Check::error(name, TOL, e),
        }
    }
    Check::new(
        name,
        worst,
        TOL,
        worst <= TOL,
        format!("{pairs} pairs, seed {seed}, max abs error"),
    )
}

/// The 30×20 five-point operator is exactly the Kronecker sum of the 1D
/// operators, and its spectrum is the Minkowski sum of theirs.
pub fn rect_product_identity() -> Check {
    const TOL: f64 = 1e-9;
    let name = "30x20 grid operator equals Kronecker sum of intervals";
    let (a, b, nx, ny) = (PI, 2.0, 30, 20);
    let result = (|| -> boxspec_core::Result<(bool, f64)> {
        let (ax, ay) = (interval_operator(a, nx)?, interval_operator(b, ny)?);
        let grid = rect_dirichlet_operator(a, b, nx, ny)?;
        let equal = grid == kronecker_sum(&ax, &ay)?;
        let direct = symmetric_eigen_dense(&grid)?;
        let sum = minkowski_sum(
            &simple_spectrum(&symmetric_eigen_dense(&ax)?),
            &simple_spectrum(&symmetric_eigen_dense(&ay)?),
        )
        .expanded()
        .expect("finite multiplicities");
        if sum.len() != direct.len() {
            return Ok((equal, f64::INFINITY));
        }
        let err = direct
            .iter()
            .zip(&sum)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        Ok((equal, err))
    })();
    match result {
        Ok((equal, err)) => Check::new(
            name,
            err,
            TOL,
            equal && err <= TOL,
            format!("matrices equal: {equal}; max abs spectral error"),
        ),
        Err(e) => Check::error(name, TOL, e),
    }
}

/// Relative error of the smallest FD eigenvalue on the unit disc at step
/// 1/40 against `j_{0,1}²`.
pub fn disc_ground_state() -> Check {
    const TOL: f64 = 0.05;
    let name = "disc FD ground state near j01^2";
    match (fd_dirichlet_disc(1.0, 1.0 / 40.0), bessel_zero(0, 1)) {
        (Ok(v), Ok(j)) => {
            let rel = (v[0] / (j * j) - 1.0).abs();
            Check::new(
                name,
                rel,
                TOL,
                rel <= TOL,
                format!("fd {} vs {}", v[0], j * j),
            )
        }
        (Err(e), _) | (_, Err(e)) => Check::error(name, TOL, e),
    }
}

/// The three target zeros move by less than `1e-9` when the bisection
/// tolerance is halved.
pub fn bessel_stability() -> Check {
    const TOL: f64 = 1e-9;
    let name = "Bessel zeros stable under halved bisection tolerance";
    let coarse = ZeroFinder::default();
    let fine = ZeroFinder {
        bisection_tol: coarse.bisection_tol / 2.0,
        ..coarse
    };
    let mut worst = 0.0f64;
    for (n, k) in [(0, 1), (1, 1), (0, 2)] {
        match (coarse.zero(n, k), fine.zero(n, k)) {
            (Ok(a), Ok(b)) => worst = worst.max((a.value - b.value).abs()),
            (Err(e), _) | (_, Err(e)) => return Check::error(name, TOL, e),
        }
    }
    Check::new(
        name,
        worst,
        TOL,
        worst <= TOL,
        "j01, j11, j02; max abs change".into(),
    )
}

/// Smallest positive eigenvalue of the discrete □₀ on the π×π square
/// (40×40 nodes) against 0.5, the smallest Dirichlet □ value.
pub fn box0_ground_state() -> Check {
    const TOL: f64 = 0.10;
    const KERNEL_TOL: f64 = 1e-8;
    let name = "box0 smallest positive eigenvalue near 0.5";
    match fd_box0_rectangle(PI, PI, 40, 40) {
        Ok(v) => {
            let kernel = v.iter().filter(|x| x.abs() < KERNEL_TOL).count();
            match v.iter().copied().find(|&x| x >= KERNEL_TOL) {
                Some(first) => {
                    let rel = (first / 0.5 - 1.0).abs();
                    Check::new(
                        name,
                        rel,
                        TOL,
                        rel <= TOL && kernel > 0,
                        format!("smallest positive {first}, kernel dimension {kernel}"),
                    )
                }
                None => Check::new(
                    name,
                    f64::INFINITY,
                    TOL,
                    false,
                    "no positive eigenvalue".into(),
                ),
            }
        }
        Err(e) => Check::error(name, TOL, e),
    }
}

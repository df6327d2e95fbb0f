//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion compares library output against an independent
//! computation at the stated tolerance and, where one is given, within the
//! stated runtime budget.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use boxspec_cli::verify::{
    bessel_stability, box0_ground_state, disc_ground_state, kronecker_identity,
    rect_product_identity, Check,
};
use boxspec_cli::DEFAULT_SEED;
use boxspec_core::spectrum::values_close;
use boxspec_core::{
    bessel_zero, bidegree_product, compactness_verdict, counting_function, enumerate_box_q,
    factor_bidegree, gap_report, kernel_dim, kunneth_product, minkowski_sum_many, Bidegree,
    CompactnessVerdict, ExtendedCardinal, LabelKind, Multiplicity, PlanarDomain, TruncatedSpectrum,
    DEFAULT_MERGE_TOL, DEFAULT_ZERO_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, Option<Duration>, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

impl From<Check> for Verdict {
    fn from(c: Check) -> Self {
        Verdict::new(
            c.pass,
            format!(
                "{}: {} (metric {:e}, tolerance {:e})",
                c.name, c.detail, c.metric, c.tolerance
            ),
        )
    }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let elapsed = start.elapsed();
    v.detail = format!("{} [{:.2} s]", v.detail, elapsed.as_secs_f64());
    if let Some(b) = budget {
        if elapsed > b {
            v.pass = false;
            v.detail = format!("{} exceeds budget of {} s", v.detail, b.as_secs());
        }
    }
    v
}

fn all(checks: Vec<Check>) -> Verdict {
    let pass = checks.iter().all(|c| c.pass);
    let detail = checks
        .into_iter()
        .map(|c| Verdict::from(c).detail)
        .collect::<Vec<_>>()
        .join("; ");
    Verdict::new(pass, detail)
}

fn kronecker_sum_spectrum() -> Verdict {
    kronecker_identity(DEFAULT_SEED, 20).into()
}

fn fd_product_identity() -> Verdict {
    rect_product_identity().into()
}

fn bessel_targets() -> Verdict {
    all(vec![bessel_stability(), disc_ground_state()])
}

/// Dirichlet □ values of a factor with one entry per eigenfunction, by
/// direct loops over mode indices.
fn modes_by_index(factor: &PlanarDomain, cutoff: f64) -> Vec<f64> {
    let mut out = Vec::new();
    match *factor {
        PlanarDomain::Disc { radius } => {
            for n in 0u32.. {
                let mut any = false;
                for k in 1u32.. {
                    let j = bessel_zero(n, k).expect("zero in range");
                    let v = j * j / (4.0 * radius * radius);
                    if v >= cutoff {
                        break;
                    }
                    any = true;
                    // cos and sin modes for n > 0.
                    out.extend(std::iter::repeat_n(v, if n == 0 { 1 } else { 2 }));
                }
                if !any {
                    break;
                }
            }
        }
        PlanarDomain::Rectangle { a, b } => {
            for m in 1u32.. {
                let vm = PI * PI * f64::from(m * m) / (4.0 * a * a);
                if vm >= cutoff {
                    break;
                }
                for l in 1u32.. {
                    let v = vm + PI * PI * f64::from(l * l) / (4.0 * b * b);
                    if v >= cutoff {
                        break;
                    }
                    out.push(v);
                }
            }
        }
        PlanarDomain::Custom { .. } => unreachable!("analytic factors only"),
    }
    out
}

fn enumeration_vs_nested_loop() -> Verdict {
    const CUTOFF: f64 = 30.0;
    let mut details = Vec::new();
    let mut pass = true;
    for (name, factor) in [
        ("unit bidisc", PlanarDomain::Disc { radius: 1.0 }),
        (
            "pi x pi square bidomain",
            PlanarDomain::Rectangle { a: PI, b: PI },
        ),
    ] {
        let modes = modes_by_index(&factor, CUTOFF);
        let mut want: Vec<f64> = Vec::new();
        for &u in &modes {
            for &v in &modes {
                if u + v < CUTOFF {
                    want.push(u + v);
                }
            }
        }
        want.sort_by(f64::total_cmp);
        let e = match enumerate_box_q(&[factor.clone(), factor], 2, CUTOFF, DEFAULT_MERGE_TOL) {
            Ok(e) => e,
            Err(err) => return Verdict::new(false, format!("{name}: {err}")),
        };
        let got = e
            .to_spectrum(DEFAULT_MERGE_TOL)
            .ok()
            .and_then(|s| s.expanded())
            .unwrap_or_default();
        let same = got.len() == want.len()
            && got
                .iter()
                .zip(&want)
                .all(|(g, w)| values_close(*g, *w, DEFAULT_MERGE_TOL));
        let mut counts_agree = true;
        for i in 0..10 {
            let lambda = CUTOFF * (i as f64 + 0.37) / 10.0;
            let direct =
                ExtendedCardinal::from_count(want.iter().filter(|&&v| v <= lambda).count() as u64);
            counts_agree &= counting_function(&e, lambda).ok() == Some(direct);
        }
        pass &= same && counts_agree;
        details.push(format!(
            "{name}: {} vs {} eigenvalues, multisets equal {same}, counting functions agree {counts_agree}",
            got.len(),
            want.len()
        ));
    }
    Verdict::new(pass, details.join("; "))
}

fn infinite_multiplicity_and_compactness() -> Verdict {
    let factors = [
        PlanarDomain::Disc { radius: 1.0 },
        PlanarDomain::Rectangle { a: PI, b: PI },
    ];
    let run = || -> boxspec_core::Result<Verdict> {
        let e1 = enumerate_box_q(&factors, 1, 20.0, DEFAULT_MERGE_TOL)?;
        let w: Vec<_> = e1
            .entries
            .iter()
            .filter(|e| e.labels.iter().any(|l| l.kind == LabelKind::W))
            .collect();
        let w_infinite =
            !w.is_empty() && w.iter().all(|e| e.multiplicity == Multiplicity::Infinite);
        let v1 = compactness_verdict(1, 2)?;
        let e2 = enumerate_box_q(&factors, 2, 20.0, DEFAULT_MERGE_TOL)?;
        let finite =
            !e2.entries.is_empty() && e2.entries.iter().all(|e| !e.multiplicity.is_infinite());
        let v2 = compactness_verdict(2, 2)?;
        let pass = w_infinite
            && v1 == CompactnessVerdict::NonCompact
            && finite
            && v2 == CompactnessVerdict::Compact;
        Ok(Verdict::new(
            pass,
            format!(
                "q=1: {} W-entries all infinite {w_infinite}, verdict {v1}; q=2: {} entries all finite {finite}, verdict {v2}",
                w.len(),
                e2.entries.len()
            ),
        ))
    };
    run().unwrap_or_else(|e| Verdict::new(false, e.to_string()))
}

/// Complete spectrum containing 0, with random finite or infinite
/// multiplicities, below a cutoff of 50.
fn synthetic_spectrum(
    rng: &mut ChaCha8Rng,
    zero: Option<Multiplicity>,
) -> (TruncatedSpectrum, Vec<(f64, Multiplicity)>) {
    let mut points = Vec::new();
    if let Some(m) = zero {
        points.push((0.0, m));
    }
    let mut v = 0.0;
    for _ in 0..rng.gen_range(1..8) {
        v += rng.gen_range(0.05..4.0);
        let m = if rng.gen_bool(0.2) {
            Multiplicity::Infinite
        } else {
            Multiplicity::Finite(rng.gen_range(1..5))
        };
        points.push((v, m));
    }
    let s = TruncatedSpectrum::collect(points.clone(), 50.0, DEFAULT_MERGE_TOL)
        .expect("valid synthetic spectrum");
    (s, points)
}

fn gap_propagation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(2..=3);
        let mut spectra = Vec::new();
        let mut direct = f64::INFINITY;
        for _ in 0..n {
            let zero = if rng.gen_bool(0.5) {
                Multiplicity::Infinite
            } else {
                Multiplicity::Finite(rng.gen_range(1..4))
            };
            let (s, points) = synthetic_spectrum(&mut rng, Some(zero));
            // Smallest positive point of the raw listing.
            let g = points
                .iter()
                .map(|p| p.0)
                .filter(|&v| v > 0.0)
                .fold(f64::INFINITY, f64::min);
            direct = direct.min(g);
            spectra.push(s);
        }
        let product = match minkowski_sum_many(&spectra) {
            Ok(p) => p,
            Err(e) => return Verdict::new(false, e.to_string()),
        };
        let err = match gap_report(&product).gap {
            Some(g) => (g - direct).abs(),
            None => f64::INFINITY,
        };
        worst = worst.max(err);
    }
    Verdict::new(
        worst <= 1e-12,
        format!("50 cases, max abs gap error {worst:e}"),
    )
}

fn cardinal_product(dims: &[ExtendedCardinal]) -> ExtendedCardinal {
    if dims.iter().any(|d| d.is_zero()) {
        return ExtendedCardinal::Zero;
    }
    if dims.contains(&ExtendedCardinal::Infinite) {
        return ExtendedCardinal::Infinite;
    }
    let count: u64 = dims
        .iter()
        .map(|d| match d {
            ExtendedCardinal::Finite(c) => *c,
            _ => unreachable!(),
        })
        .product();
    ExtendedCardinal::from_count(count)
}

fn kunneth_bookkeeping() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0x6b75);
    let mut mismatches = 0;
    let mut seen = [0usize; 3];
    for _ in 0..50 {
        let n = rng.gen_range(2..=3);
        let mut spectra = Vec::new();
        let mut dims = Vec::new();
        for _ in 0..n {
            let (zero, dim) = match rng.gen_range(0..3) {
                0 => (None, ExtendedCardinal::Zero),
                1 => {
                    let c = rng.gen_range(1..5);
                    (Some(Multiplicity::Finite(c)), ExtendedCardinal::Finite(c))
                }
                _ => (Some(Multiplicity::Infinite), ExtendedCardinal::Infinite),
            };
            spectra.push(synthetic_spectrum(&mut rng, zero).0);
            dims.push(dim);
        }
        let want = cardinal_product(&dims);
        seen[match want {
            ExtendedCardinal::Zero => 0,
            ExtendedCardinal::Finite(_) => 1,
            ExtendedCardinal::Infinite => 2,
        }] += 1;
        let got = minkowski_sum_many(&spectra).and_then(|p| kernel_dim(&p, DEFAULT_ZERO_TOL));
        if got != Ok(want) {
            mismatches += 1;
        }
    }

    // Planar × planar: Künneth table against kernels of the product spectra.
    let planar = [
        PlanarDomain::Disc { radius: 1.0 },
        PlanarDomain::Rectangle { a: PI, b: 2.0 },
    ];
    let table_ok = (|| -> boxspec_core::Result<bool> {
        let data: Vec<_> = planar
            .iter()
            .map(|f| factor_bidegree(f, 12.0, DEFAULT_MERGE_TOL, DEFAULT_ZERO_TOL))
            .collect::<boxspec_core::Result<_>>()?;
        let k = kunneth_product(&data.iter().map(|d| d.harmonic.clone()).collect::<Vec<_>>())?;
        let spectra =
            bidegree_product(&data.iter().map(|d| d.spectra.clone()).collect::<Vec<_>>())?;
        let mut ok = true;
        for bd in Bidegree::all(2) {
            let expected = if bd.q == 0 {
                ExtendedCardinal::Infinite
            } else {
                ExtendedCardinal::Zero
            };
            let from_table = k.get(bd).and_then(|c| c.as_ref().ok()).copied();
            let from_spectrum = match spectra.get(bd) {
                Some(Ok(s)) => kernel_dim(s, DEFAULT_ZERO_TOL).ok(),
                _ => None,
            };
            ok &= from_table == Some(expected) && from_spectrum == Some(expected);
        }
        Ok(ok)
    })()
    .unwrap_or(false);
    Verdict::new(
        mismatches == 0 && table_ok && seen.iter().all(|&c| c > 0),
        format!(
            "50 cases ({} zero, {} finite, {} infinite), {mismatches} mismatches; planar x planar table matches: {table_ok}",
            seen[0], seen[1], seen[2]
        ),
    )
}

fn sigma0_identification() -> Verdict {
    box0_ground_state().into()
}

fn determinism() -> Verdict {
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => return Verdict::new(false, e.to_string()),
    };
    let path = dir.path().join("job.json");
    let config = r#"{"factors":[{"type":"disc","radius":1},{"type":"rectangle","a":3.141592653589793,"b":2}],"cutoff":25}"#;
    if let Err(e) = std::fs::write(&path, config) {
        return Verdict::new(false, e.to_string());
    }
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_boxspec"))
            .args(["enumerate", "--q", "1", "--config"])
            .arg(&path)
            .output()
    };
    match (run(), run()) {
        (Ok(a), Ok(b)) => {
            let same = a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status;
            Verdict::new(
                same && a.status.success() && !a.stdout.is_empty(),
                format!(
                    "{} bytes, identical {same}, status {}",
                    a.stdout.len(),
                    a.status
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => Verdict::new(false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 9] = [
        (
            "kronecker sum spectrum = Minkowski sum",
            secs(5),
            kronecker_sum_spectrum,
        ),
        (
            "FD rectangle = Kronecker sum of intervals",
            secs(30),
            fd_product_identity,
        ),
        (
            "Bessel targets and disc FD ground state",
            secs(60),
            bessel_targets,
        ),
        (
            "polydomain enumeration vs nested loop",
            None,
            enumeration_vs_nested_loop,
        ),
        (
            "infinite multiplicity and compactness",
            None,
            infinite_multiplicity_and_compactness,
        ),
        ("gap of product = min of factor gaps", None, gap_propagation),
        ("Kunneth kernel bookkeeping", None, kunneth_bookkeeping),
        (
            "box0 ground state near 0.5 with kernel",
            secs(120),
            sigma0_identification,
        ),
        ("enumerate output is byte-identical", None, determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let v = timed(budget, f);
        failed += usize::from(!v.pass);
        println!(
            "{} criterion {}: {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!("acceptance: {} of 9 passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

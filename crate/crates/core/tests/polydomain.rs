use std::collections::BTreeMap;
use std::f64::consts::PI;

use boxspec_core::polydomain::{label_stream, FormSample};
use boxspec_core::{
    bidegree_product, compactness_verdict, counting_function, disc_sigma01, eigenform_sample,
    enumerate_box_q, factor_bidegree, rect_sigma01, Bidegree, CompactnessVerdict, EigenLabel,
    ExtendedCardinal, LabelKind, Multiplicity, PlanarDomain, DEFAULT_MERGE_TOL, DEFAULT_ZERO_TOL,
};
use num_complex::Complex64;

fn disc(r: f64) -> PlanarDomain {
    PlanarDomain::Disc { radius: r }
}

fn rect(a: f64, b: f64) -> PlanarDomain {
    PlanarDomain::Rectangle { a, b }
}

#[test]
fn enumeration_equals_bidegree_product() {
    let cases = vec![
        (vec![disc(1.0), disc(1.0)], 12.0),
        (vec![disc(1.0), rect(PI, PI)], 10.0),
        (vec![rect(1.0, 2.0), disc(0.8), rect(PI, 1.5)], 14.0),
    ];
    for (factors, cutoff) in cases {
        let tables: Vec<_> = factors
            .iter()
            .map(|f| {
                factor_bidegree(f, cutoff, DEFAULT_MERGE_TOL, DEFAULT_ZERO_TOL)
                    .unwrap()
                    .spectra
            })
            .collect();
        let product = bidegree_product(&tables).unwrap();
        for q in 0..=factors.len() {
            let e = enumerate_box_q(&factors, q, cutoff, DEFAULT_MERGE_TOL).unwrap();
            let from_product = product.get(Bidegree::new(0, q)).unwrap().as_ref().unwrap();
            let from_enum = e.to_spectrum(DEFAULT_MERGE_TOL).unwrap();
            assert!(
                from_enum.approx_eq(from_product),
                "q={q}: {from_enum:?}\nvs {from_product:?}"
            );
        }
    }
}

/// Direct nested loop over Dirichlet mode indices of two rectangles.
#[test]
fn two_rectangles_top_degree_matches_quadruple_loop() {
    let (a1, b1, a2, b2, cutoff) = (PI, PI, 1.0, 1.7, 40.0);
    let mode = |a: f64, b: f64, m: u32, n: u32| {
        PI * PI / 4.0 * (f64::from(m * m) / (a * a) + f64::from(n * n) / (b * b))
    };
    let mut want = Vec::new();
    for m1 in 1..60 {
        for n1 in 1..60 {
            for m2 in 1..60 {
                for n2 in 1..60 {
                    let v = mode(a1, b1, m1, n1) + mode(a2, b2, m2, n2);
                    if v < cutoff {
                        want.push(v);
                    }
                }
            }
        }
    }
    want.sort_by(f64::total_cmp);
    let e = enumerate_box_q(&[rect(a1, b1), rect(a2, b2)], 2, cutoff, DEFAULT_MERGE_TOL).unwrap();
    let got = e
        .to_spectrum(DEFAULT_MERGE_TOL)
        .unwrap()
        .expanded()
        .unwrap();
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() <= 1e-9 * w.max(1.0), "{g} vs {w}");
    }
}

#[test]
fn labels_recompute_their_values() {
    let factors = [disc(1.0), rect(PI, 2.0), disc(0.6)];
    let cutoff = 20.0;
    let mu: Vec<Vec<f64>> = vec![
        disc_sigma01(1.0, cutoff).unwrap().values().collect(),
        rect_sigma01(PI, 2.0, cutoff).unwrap().values().collect(),
        disc_sigma01(0.6, cutoff).unwrap().values().collect(),
    ];
    for q in 0..=3 {
        let e = enumerate_box_q(&factors, q, cutoff, DEFAULT_MERGE_TOL).unwrap();
        for entry in &e.entries {
            for label in &entry.labels {
                label.validate(3, q).unwrap();
                // Positive □₀ values coincide with Dirichlet values.
                let v: f64 = label.k.iter().map(|(&f, &r)| mu[f - 1][r - 1]).sum();
                assert!((v - entry.value).abs() <= 1e-9 * entry.value.max(1.0));
            }
        }
        let terms = label_stream(&factors, q, cutoff, DEFAULT_MERGE_TOL)
            .unwrap()
            .count();
        assert_eq!(
            terms,
            e.entries.iter().map(|x| x.label_count).sum::<usize>()
        );
    }
}

#[test]
fn infinite_multiplicity_iff_bergman_factor() {
    let factors = [disc(1.0), rect(PI, PI), disc(1.3)];
    for q in 0..=3 {
        let e = enumerate_box_q(&factors, q, 15.0, DEFAULT_MERGE_TOL).unwrap();
        let terms: Vec<_> = label_stream(&factors, q, 15.0, DEFAULT_MERGE_TOL)
            .unwrap()
            .collect();
        for t in &terms {
            let bergman = !t.label.holomorphic_factors(3).is_empty();
            assert_eq!(t.multiplicity.is_infinite(), bergman, "{}", t.label);
        }
        for entry in &e.entries {
            let has_w = entry
                .labels
                .iter()
                .any(|l| l.kind == LabelKind::W && l.j.len() < 3);
            if has_w {
                assert_eq!(entry.multiplicity, Multiplicity::Infinite);
            }
            if q == 3 {
                assert!(!entry.multiplicity.is_infinite());
            }
        }
        let verdict = compactness_verdict(q, 3).unwrap();
        let expected = match q {
            0 => CompactnessVerdict::NotApplicable,
            3 => CompactnessVerdict::Compact,
            _ => CompactnessVerdict::NonCompact,
        };
        assert_eq!(verdict, expected);
    }
}

#[test]
fn counting_function_matches_expanded_count() {
    let factors = [rect(PI, PI), rect(PI, PI)];
    let e = enumerate_box_q(&factors, 2, 25.0, DEFAULT_MERGE_TOL).unwrap();
    let values = e
        .to_spectrum(DEFAULT_MERGE_TOL)
        .unwrap()
        .expanded()
        .unwrap();
    for lambda in [0.9, 1.0, 1.75, 5.0, 12.3, 24.9] {
        let want = values.iter().filter(|&&v| v <= lambda).count() as u64;
        assert_eq!(
            counting_function(&e, lambda).unwrap(),
            ExtendedCardinal::from_count(want)
        );
    }
}

/// `(−Δ_h/4) v` at `(i, j)` for a factor sample, where all four neighbours
/// lie inside the domain.
fn discrete_box(
    s: &boxspec_core::polydomain::FactorSample,
    i: usize,
    j: usize,
) -> Option<Complex64> {
    let g = &s.grid;
    if i == 0 || j == 0 || i + 1 >= g.nx || j + 1 >= g.ny {
        return None;
    }
    let at = |i: usize, j: usize| g.inside[g.index(i, j)].then(|| s.values[g.index(i, j)]);
    let c = at(i, j)?;
    let lap = (at(i - 1, j)? + at(i + 1, j)? - 2.0 * c) / (g.hx * g.hx)
        + (at(i, j - 1)? + at(i, j + 1)? - 2.0 * c) / (g.hy * g.hy);
    Some(-lap / 4.0)
}

/// Relative residual of the product coefficient under the discrete □ at
/// every product point where the stencil fits, using
/// `□(f⊗g) = (□f)⊗g + f⊗(□g)`.
fn product_residual(form: &FormSample) -> f64 {
    let [f, g] = &form.factors[..] else {
        panic!("two factors expected")
    };
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for i1 in 0..f.grid.nx {
        for j1 in 0..f.grid.ny {
            let Some(bf) = discrete_box(f, i1, j1) else {
                continue;
            };
            let p = f.grid.index(i1, j1);
            for i2 in (0..g.grid.nx).step_by(3) {
                for j2 in (0..g.grid.ny).step_by(3) {
                    let Some(bg) = discrete_box(g, i2, j2) else {
                        continue;
                    };
                    let q = g.grid.index(i2, j2);
                    let value = form.coefficient(&[p, q]);
                    let applied = bf * g.values[q] + f.values[p] * bg;
                    worst = worst.max((applied - form.value * value).norm());
                    scale = scale.max(value.norm());
                }
            }
        }
    }
    worst / (scale * form.value.max(1.0))
}

#[test]
fn bidisc_w_eigenform_residual() {
    let factors = [disc(1.0), disc(1.0)];
    let label = EigenLabel {
        j: vec![1],
        k: [(1, 1)].into(),
        kind: LabelKind::W,
    };
    let h: BTreeMap<usize, u32> = [(2, 0)].into();
    let form = eigenform_sample(&factors, &label, 1, &h, 1.0 / 40.0).unwrap();
    assert_eq!(form.dzbar, vec![1]);
    assert!((form.value - 1.445796).abs() < 1e-6);
    assert!((form.discrete_norm() - 1.0).abs() < 1e-9);
    let res = product_residual(&form);
    assert!(res < 1e-3, "residual {res}");
    let coarse = eigenform_sample(&factors, &label, 1, &h, 1.0 / 20.0).unwrap();
    assert!(product_residual(&coarse) > res);
}

#[test]
fn v_and_mixed_eigenform_residuals() {
    let factors = [rect(PI, PI), disc(1.0)];
    let label = EigenLabel {
        j: vec![1],
        k: [(1, 2), (2, 1)].into(),
        kind: LabelKind::V,
    };
    let form = eigenform_sample(&factors, &label, 1, &BTreeMap::new(), 1.0 / 30.0).unwrap();
    assert!((form.value - (1.25 + 1.445796)).abs() < 1e-6);
    assert!(product_residual(&form) < 2e-3);

    let label = EigenLabel {
        j: vec![2],
        k: [(1, 1), (2, 2)].into(),
        kind: LabelKind::V,
    };
    let form = eigenform_sample(&factors, &label, 1, &BTreeMap::new(), 1.0 / 30.0).unwrap();
    assert!(product_residual(&form) < 2e-3);

    let label = EigenLabel {
        j: vec![],
        k: [(1, 1)].into(),
        kind: LabelKind::Mixed,
    };
    let h: BTreeMap<usize, u32> = [(2, 3)].into();
    let form = eigenform_sample(&factors, &label, 0, &h, 1.0 / 30.0).unwrap();
    assert!((form.value - 0.5).abs() < 1e-12);
    assert!(product_residual(&form) < 2e-3);
}

use cosmic_horizon::conespace::*;
use cosmic_horizon::specfun::legendre_q;
use cosmic_horizon::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Flat-space images of `y` under rotation by `2π/n` about the axis.
fn flat_images(x: &ConePoint, y: &ConePoint, n: usize, dim4: bool) -> f64 {
    let a = x.to_cylindrical();
    let b = y.to_cylindrical();
    let alpha = 1.0 / n as f64;
    let dt = x.tau.unwrap_or(0.0) - y.tau.unwrap_or(0.0);
    (0..n)
        .map(|k| {
            let h = alpha * (a.phi - b.phi) + 2.0 * PI * k as f64 / n as f64;
            let d2 = dt * dt + (a.z - b.z).powi(2) + a.rho * a.rho + b.rho * b.rho - 2.0 * a.rho * b.rho * h.cos();
            if dim4 {
                1.0 / (4.0 * PI * PI * d2)
            } else {
                1.0 / (4.0 * PI * d2.sqrt())
            }
        })
        .sum()
}

fn pair() -> (ConePoint, ConePoint) {
    (
        ConePoint::spherical(1.0, 1.1, 0.3).unwrap(),
        ConePoint::spherical(1.6, 1.9, 2.2).unwrap(),
    )
}

type Rep = fn(&ConePoint, &ConePoint, f64, &Truncation) -> cosmic_horizon::Result<SumResult>;

const REPS: [(&str, Rep); 7] = [
    ("spherical", g3_spherical_sum),
    ("cylindrical_q", g3_cylindrical_qsum),
    ("cylindrical_k", g3_cylindrical_kintegral),
    ("axisymmetric", g3_axisym_integral),
    ("linet", g3_linet),
    ("toroidal", g3_toroidal_sum),
    ("spheroidal", g3_spheroidal_sum),
];

#[test]
fn g4_image_sums() {
    for n in [2usize, 3] {
        let alpha = 1.0 / n as f64;
        let x = ConePoint::cylindrical(0.8, 0.1, 0.4).unwrap().with_tau(0.3);
        let y = ConePoint::cylindrical(1.3, -0.2, 4.0).unwrap().with_tau(-0.1);
        let g = g4_closed(&x, &y, alpha).unwrap();
        assert!(rel(g, flat_images(&x, &y, n, true)) < 1e-10);
    }
}

#[test]
fn g4_symmetric_and_positive() {
    let (x, y) = pair();
    let (x, y) = (x.with_tau(0.2), y.with_tau(0.9));
    for alpha in [0.2, 0.55, 0.9, 1.0] {
        let g = g4_closed(&x, &y, alpha).unwrap();
        assert!(g > 0.0);
        assert!(rel(g4_closed(&y, &x, alpha).unwrap(), g) < 1e-14);
    }
}

#[test]
fn g4_small_chi_expansion() {
    // kernel at Δφ = 0 behaves as 2α/χ² + (1/(6α) − α/3) + O(χ²)
    for alpha in [0.4, 0.75] {
        let chis = [0.01, 0.02, 0.03, 0.04];
        let ys: Vec<f64> = chis.iter().map(|&c| heine_kernel(c, 0.0, alpha).unwrap() - 2.0 * alpha / (c * c)).collect();
        let xs: Vec<f64> = chis.iter().map(|c| c * c).collect();
        let (_, intercept) = cosmic_horizon::extrapolate::linear_fit(&xs, &ys);
        let expect = 1.0 / (6.0 * alpha) - alpha / 3.0;
        assert!((intercept - expect).abs() < 1e-6, "α={alpha}: {intercept} vs {expect}");
    }
}

#[test]
fn g4_mode_sum_matches_closed_form() {
    let (x, y) = pair();
    let (x, y) = (x.with_tau(0.3), y.with_tau(-0.2));
    for alpha in [1.0, 0.8, 0.35] {
        let s = g4_modesum_spherical(&x, &y, alpha, &Truncation::with_tol(1e-10)).unwrap();
        let c = g4_closed(&x, &y, alpha).unwrap();
        assert!((s.value - c).abs() < 1e-7 * c, "α={alpha}");
        assert!((s.value - c).abs() <= s.tail + 1e-12 * c, "α={alpha}: tail does not cover the error");
    }
}

#[test]
fn g4_mode_sum_rejects_near_unit_zeta() {
    let x = ConePoint::spherical(1.0, 1.0, 0.0).unwrap();
    let y = ConePoint::spherical(1.0 + 1e-4, 2.0, 1.0).unwrap();
    assert!(matches!(g4_modesum_spherical(&x, &y, 0.7, &Truncation::default()), Err(Error::Domain(_))));
}

#[test]
fn azimuthal_partial_sums_increase() {
    let t = Truncation::with_tol(1e-11);
    let half = PI / 2.0;
    for alpha in [0.3, 0.7, 1.0] {
        let zeta = 1.4;
        let chi = f64::acosh(zeta);
        let target = heine_kernel(chi, 0.0, alpha).unwrap();
        let mut partial = 0.0;
        for m in 0..40 {
            let b = heine_band(m as f64 / alpha, m, half, half, zeta, &t).unwrap();
            let next = partial + if m == 0 { b.value } else { 2.0 * b.value };
            assert!(next >= partial && next <= target * (1.0 + 1e-10));
            partial = next;
        }
        assert!(rel(partial, target) < 1e-8, "α={alpha}");
    }
}

#[test]
fn omega_integral_examples() {
    let est = bessel_integral_lhs(0.0, 1.0, 2.0, 0.0, 1e-10).unwrap();
    assert!((est.value - 0.5 * 9f64.ln() / (2.0 * 2f64.sqrt())).abs() < 1e-9);
    assert!((est.value - 0.3884).abs() < 1e-4);
    let zeta = (0.49 + 1.0 + 2.25) / 3.0;
    let est = bessel_integral_lhs(0.6, 1.0, 1.5, 0.7, 1e-10).unwrap();
    let expect = legendre_q(0.6, zeta).unwrap() / (2.0 * 1.5f64.sqrt());
    assert!((est.value - expect).abs() < 1e-8, "{} vs {expect}", est.value);
    // negative order below ½ still integrable
    let est = bessel_integral_lhs(-0.8, 1.0, 1.5, 0.7, 1e-9).unwrap();
    assert!(rel(est.value, legendre_q(-0.8, zeta).unwrap() / (2.0 * 1.5f64.sqrt())) < 1e-7);
    for lam in [-1.0, -1.5] {
        assert!(matches!(bessel_integral_lhs(lam, 1.0, 1.5, 0.7, 1e-8), Err(Error::Domain(_))));
    }
}

#[test]
fn flat_space_all_representations() {
    let (x, y) = pair();
    let t = Truncation::with_tol(1e-11);
    let c = coulomb(&x, &y);
    for (name, rep) in REPS {
        let v = rep(&x, &y, 1.0, &t).unwrap().value;
        assert!(rel(v, c) < 1e-8, "{name}: {v} vs {c}");
    }
}

#[test]
fn image_case_alpha_half() {
    let (x, y) = pair();
    let t = Truncation::with_tol(1e-11);
    let oracle = flat_images(&x, &y, 2, false);
    for (name, rep) in REPS.iter().filter(|(n, _)| *n != "linet") {
        let v = rep(&x, &y, 0.5, &t).unwrap().value;
        assert!(rel(v, oracle) < 1e-8, "{name}: {v} vs {oracle}");
    }
    assert!(matches!(g3_linet(&x, &y, 0.5, &t), Err(Error::Domain(_))));
}

#[test]
fn representations_agree_at_generic_alpha() {
    let t = Truncation::with_tol(1e-10);
    let pairs = [
        pair(),
        (ConePoint::cylindrical(0.6, 0.3, 0.1).unwrap(), ConePoint::cylindrical(1.4, -0.5, 0.6).unwrap()),
        // |Δφ| beyond 2π − π/α: two direct images
        (ConePoint::spherical(1.2, 0.7, 0.0).unwrap(), ConePoint::spherical(0.9, 1.3, 3.0).unwrap()),
    ];
    for (x, y) in pairs {
        let reference = g3_cylindrical_qsum(&x, &y, 0.7, &t).unwrap().value;
        for (name, rep) in REPS {
            let v = rep(&x, &y, 0.7, &t).unwrap().value;
            assert!(rel(v, reference) < 1e-6, "{name}: {v} vs {reference}");
        }
    }
}

#[test]
fn symmetry_and_scale_covariance() {
    let (x, y) = pair();
    let t = Truncation::with_tol(1e-12);
    for (name, rep) in REPS {
        let g = rep(&x, &y, 0.7, &t).unwrap().value;
        assert!(rel(rep(&y, &x, 0.7, &t).unwrap().value, g) < 1e-9, "{name} symmetry");
    }
    let (r1, t1) = x.spherical_parts();
    let (r2, t2) = y.spherical_parts();
    let g = g3_cylindrical_qsum(&x, &y, 0.7, &t).unwrap().value;
    for s in [0.5, 2.0, 10.0] {
        let xs = ConePoint::spherical(s * r1, t1, x.phi()).unwrap();
        let ys = ConePoint::spherical(s * r2, t2, y.phi()).unwrap();
        for rep in [g3_cylindrical_qsum as Rep, g3_spherical_sum, g3_linet] {
            let gs = rep(&xs, &ys, 0.7, &t).unwrap().value;
            assert!(rel(gs * s, g) < 1e-10, "s={s}");
        }
    }
}

#[test]
fn continuity_at_flat_space() {
    let (x, y) = pair();
    let t = Truncation::with_tol(1e-11);
    for (name, rep) in REPS {
        let g1 = rep(&x, &y, 1.0, &t).unwrap().value;
        let g0 = rep(&x, &y, 1.0 - 1e-6, &t).unwrap().value;
        assert!((g1 - g0).abs() < 1e-4 * g1, "{name}");
    }
    let (x, y) = (x.with_tau(0.1), y.with_tau(0.0));
    let g1 = g4_closed(&x, &y, 1.0).unwrap();
    assert!((g4_closed(&x, &y, 1.0 - 1e-6).unwrap() - g1).abs() < 1e-4 * g1);
}

#[test]
fn coincident_points_refused() {
    let x = ConePoint::spherical(1.0, 1.0, 1.0).unwrap();
    for (_, rep) in REPS {
        assert!(matches!(rep(&x, &x, 0.7, &Truncation::default()), Err(Error::Coincidence(_))));
    }
    assert!(matches!(g4_closed(&x, &x, 0.7), Err(Error::Coincidence(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn separation_triangle(
        r1 in 0.1f64..5.0, r2 in 0.1f64..5.0,
        t1 in 0.01f64..3.13, t2 in 0.01f64..3.13,
        p1 in 0.0f64..std::f64::consts::TAU, p2 in 0.0f64..std::f64::consts::TAU,
        dt in -2.0f64..2.0,
    ) {
        let x = ConePoint::spherical(r1, t1, p1).unwrap().with_tau(dt);
        let y = ConePoint::spherical(r2, t2, p2).unwrap();
        let s = SeparationInvariants::from_points(&x, &y);
        let z = s.zeta_from_chi(t1, t2, p1 - p2);
        prop_assert!((z - s.zeta).abs() <= 1e-12 * s.zeta.max(1.0) * 10.0);
        prop_assert!(s.cos_gamma.abs() <= 1.0 + 1e-15);
    }

    #[test]
    fn chart_round_trip(r in 0.05f64..20.0, t in 0.01f64..3.13, p in 0.0f64..std::f64::consts::TAU) {
        let x = ConePoint::spherical(r, t, p).unwrap();
        for chart in [Chart::Cylindrical, Chart::Toroidal, Chart::Spheroidal] {
            let back = x.convert(chart).unwrap().convert(Chart::Spherical).unwrap();
            for k in 0..3 {
                prop_assert!((back.coords[k] - x.coords[k]).abs() <= 1e-12 * x.coords[k].abs().max(1.0));
            }
        }
    }
}

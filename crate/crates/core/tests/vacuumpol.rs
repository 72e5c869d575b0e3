use cosmic_horizon::extrapolate::{linear_fit, richardson};
use cosmic_horizon::vacuumpol::*;
use cosmic_horizon::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

const CANDELAS: f64 = 1.0 / (192.0 * PI * PI);

#[test]
fn closed_form_examples() {
    for t in [0.3, 1.0, PI / 2.0, 2.9] {
        assert!((phi2_closed(t, 1.0, 1.0).unwrap() - CANDELAS).abs() < 1e-18);
    }
    // 1/(192π²) = 5.27714…e-4
    assert!((CANDELAS - 5.27714e-4).abs() < 1e-9);
    let eq = phi2_closed(PI / 2.0, 0.5, 1.0).unwrap();
    assert!((eq / CANDELAS - 4.0).abs() < 1e-12);
    // string term vanishes linearly as α → 1, with slope 2/sin²θ
    for x in [1e-4, 1e-6, 1e-8] {
        let string = phi2_closed(1.0, 1.0 - x, 1.0).unwrap() / CANDELAS - 1.0;
        assert!((string / x * 1f64.sin().powi(2) - 2.0).abs() < 1e-3);
    }
    assert!(matches!(phi2_closed(0.0, 0.5, 1.0), Err(Error::Domain(_))));
    assert!(matches!(phi2_closed(PI, 0.5, 1.0), Err(Error::Domain(_))));
    assert!(phi2_closed(1.0, 1.5, 1.0).is_err());
    assert!(phi2_closed(1.0, 0.5, 0.0).is_err());
}

#[test]
fn limit_route_candelas() {
    let eps: Vec<f64> = (0..7).map(|k| 1e-2 / 2f64.powi(k)).collect();
    let (v, err) = phi2_limit(PI / 2.0, 1.0, 1.0, &eps).unwrap();
    assert!((v - CANDELAS).abs() < 1e-8);
    assert!(err < 1e-8);
}

#[test]
fn limit_route_generic() {
    let r = phi2(PI / 3.0, 0.6, 1.0).unwrap();
    assert!(r.route_agreement < 1e-7);
    assert!(r.route_agreement <= r.extrapolation_error * 10.0);
}

#[test]
fn route_agreement_grid() {
    for a in [1.0, 0.9, 0.75, 0.5, 0.25] {
        for t in [PI / 6.0, PI / 3.0, PI / 2.0] {
            for m in [1.0, 3.5] {
                let r = phi2(t, a, m).unwrap();
                assert!(r.route_agreement * m * m < 1e-7, "α={a} θ={t}");
                assert!(r.route_agreement <= r.extrapolation_error, "α={a} θ={t} M={m}: {r:?}");
                assert!(r.value_closed > 0.0);
            }
        }
    }
}

#[test]
fn bracket_approaches_limit_linearly() {
    let (t, a) = (PI / 3.0, 0.6);
    let limit = phi2_closed(t, a, 1.0).unwrap();
    let es: Vec<f64> = (0..6).map(|k| 1e-3 / 2f64.powi(k)).collect();
    let slopes: Vec<f64> = es.iter().map(|&e| (phi2_bracket(t, a, 1.0, e).unwrap() - limit) / e).collect();
    let (s0, err) = richardson(&es, &slopes, 3).unwrap();
    assert!(s0.is_finite() && s0 != 0.0);
    assert!(err < 1e-6 * s0.abs(), "{s0} ± {err}");
}

#[test]
fn limit_rejects_bad_sequences() {
    let t = PI / 2.0;
    assert!(matches!(phi2_limit(t, 0.5, 1.0, &[1e-3, 2e-3]), Err(Error::Domain(_))));
    assert!(matches!(phi2_limit(t, 0.5, 1.0, &[0.5, 0.25]), Err(Error::Domain(_))));
    assert!(matches!(phi2_limit(t, 0.5, 1.0, &[1e-3]), Err(Error::Extrapolation(_))));
}

#[test]
fn near_axis_asymptote() {
    let t = 1e-3f64.asin();
    let ratio = phi2_closed(t, 0.9, 1.0).unwrap() / phi2_near_axis(t, 0.9, 1.0).unwrap();
    assert!((ratio - 1.0).abs() < 1e-3);
    assert!(matches!(phi2_near_axis(t, 1.0, 1.0), Err(Error::Domain(_))));
    assert!(phi2_near_axis(0.5, 0.9, 1.0).is_err());
    for k in [0.5, 2.0, 9.0] {
        let r = phi2_near_axis(t, 0.7, k).unwrap() * k * k / phi2_near_axis(t, 0.7, 1.0).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
    }
    // ratio tends to one as the axis is approached
    let mut prev = f64::INFINITY;
    for s in [5e-2, 1e-2, 1e-3, 1e-4] {
        let t = f64::asin(s);
        let dev = (phi2_closed(t, 0.5, 1.0).unwrap() / phi2_near_axis(t, 0.5, 1.0).unwrap() - 1.0).abs();
        assert!(dev < prev);
        prev = dev;
    }
}

#[test]
fn dominance_angle_examples() {
    for a in [0.5, 0.75, 0.9] {
        let d = dominance_angle(a).unwrap();
        let t2 = d.cos_theta.acos();
        let ratio = phi2_closed(t2, a, 1.0).unwrap() / phi2_closed(PI / 2.0, a, 1.0).unwrap();
        assert!((ratio - 2.0).abs() < 1e-10, "α={a}");
        assert!((d.gap - (1.0 - d.cos_theta)).abs() < 1e-15);
    }
    assert!((dominance_angle(0.9).unwrap().cos_theta - 0.91670).abs() < 1e-5);
    assert!(dominance_angle(1.0 - 1e-12).unwrap().cos_theta > 1.0 - 1e-11);
    assert!(dominance_angle(1.0).is_err());
    assert!(dominance_angle(0.0).is_err());
}

#[test]
fn dominance_gap_first_order() {
    // gap − (1 − α) = O((1 − α)²): log-log slope of the remainder is 2
    // 1 − α from 0.1 down to 0.001
    let xs: Vec<f64> = (0..12).map(|k| 0.1 * 0.01f64.powf(k as f64 / 11.0)).collect();
    let rem: Vec<f64> = xs.iter().map(|&x| {
        let d = dominance_angle(1.0 - x).unwrap();
        (d.gap - d.first_order_gap).abs()
    }).collect();
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let lr: Vec<f64> = rem.iter().map(|r| r.ln()).collect();
    let (slope, _) = linear_fit(&lx, &lr);
    assert!((slope - 2.0).abs() < 0.05, "{slope}");
    assert!((xs[xs.len() - 1] - 1e-3).abs() < 1e-15);
}

#[test]
fn figure_rows() {
    let alphas = [0.5, 1.0, 0.75, 0.9];
    let grid = cos_grid(41, DEFAULT_POLE_MARGIN).unwrap();
    let rows = figure1_data(&alphas, &grid, 1.0).unwrap();
    assert_eq!(rows.len(), alphas.len() * grid.len());
    // ordering: α descending, cos θ ascending
    for w in rows.windows(2) {
        assert!(w[0].alpha > w[1].alpha || (w[0].alpha == w[1].alpha && w[0].cos_theta < w[1].cos_theta));
    }
    let n = grid.len();
    for (ci, curve) in rows.chunks(n).enumerate() {
        for i in 0..n {
            assert_eq!(curve[i].phi2_m2, curve[n - 1 - i].phi2_m2);
        }
        // minimum at the equator, increasing toward the poles
        for i in n / 2..n - 1 {
            if curve[i].alpha < 1.0 {
                assert!(curve[i + 1].phi2_m2 > curve[i].phi2_m2);
            }
        }
        if ci > 0 {
            let above = &rows[(ci - 1) * n..ci * n];
            for i in 0..n {
                assert!(curve[i].phi2_m2 > above[i].phi2_m2);
            }
        }
    }
    for r in rows.iter().filter(|r| r.alpha == 1.0) {
        assert!((r.phi2_m2 - CANDELAS).abs() < 1e-15);
    }
    let eq = rows.iter().find(|r| r.alpha == 0.5 && r.cos_theta == 0.0).unwrap();
    assert!((eq.phi2_m2 - 4.0 * CANDELAS).abs() < 1e-15);
    assert!(figure1_data(&[0.5], &[1.0], 1.0).is_err());
}

proptest! {
    #[test]
    fn decreasing_in_alpha(t in 0.05f64..3.1, a1 in 0.05f64..=1.0, a2 in 0.05f64..=1.0) {
        let (v1, v2) = (phi2_closed(t, a1, 1.0).unwrap(), phi2_closed(t, a2, 1.0).unwrap());
        if a1 < a2 { prop_assert!(v1 > v2); }
        if a1 == a2 { prop_assert_eq!(v1, v2); }
        let string = v1 - phi2_closed(t, 1.0, 1.0).unwrap();
        prop_assert!(string >= 0.0);
        if a1 < 1.0 { prop_assert!(string > 0.0); } else { prop_assert_eq!(string, 0.0); }
    }

    #[test]
    fn equatorial_ratio_law(a in 0.01f64..=1.0) {
        let r = phi2_closed(PI / 2.0, a, 1.0).unwrap() / phi2_closed(PI / 2.0, 1.0, 1.0).unwrap();
        prop_assert!((r * a * a - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mass_scaling(t in 0.1f64..3.0, a in 0.1f64..=1.0, m in 0.1f64..50.0) {
        let r = phi2_closed(t, a, m).unwrap() * m * m / phi2_closed(t, a, 1.0).unwrap();
        prop_assert!((r - 1.0).abs() < 1e-13);
    }
}

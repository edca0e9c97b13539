use mlfrac::bounds::{a0_lower_bound, ak_upper_bound, front_track, FrontConfig};
use mlfrac::solution::{
    rescale, solve, u_gaussian, u_quadrature, FracParams, MethodChoice, SolutionMethod, Tolerance,
};
use mlfrac::Error;

#[test]
fn gaussian_limit_at_alpha_one() {
    for (d, a) in [(1.0, 0.0), (1.0, 1.0), (0.5, 2.0)] {
        let p = FracParams::new(1.0, d, a).unwrap();
        for x in [0.0, 0.7, 2.5, 5.0] {
            for t in [0.1, 1.0, 5.0] {
                let q = u_quadrature(x, t, &p, Tolerance::default()).unwrap();
                let g = u_gaussian(x, t, &p).unwrap();
                assert!(
                    (q.u - g.u).abs() <= 1e-6 * g.u.abs() + 1e-12,
                    "{d} {a} {x} {t}"
                );
            }
        }
    }
}

#[test]
fn rescaling_matches_direct_quadrature() {
    let p = FracParams::new(0.75, 0.5, 2.0).unwrap();
    let (xs, ts) = rescale(&p, 1.3, 0.8).unwrap();
    let unit = FracParams::normalized(0.75).unwrap();
    let scaled = u_quadrature(xs, ts, &unit, Tolerance::Absolute(1e-12))
        .unwrap()
        .u
        * (2.0f64 / 0.5).sqrt();
    let direct = u_quadrature(1.3, 0.8, &p, Tolerance::Absolute(1e-12))
        .unwrap()
        .u;
    assert!((scaled - direct).abs() < 1e-9, "{scaled} {direct}");
    let zero = FracParams::new(0.75, 1.0, 0.0).unwrap();
    assert!(matches!(
        rescale(&zero, 1.0, 1.0),
        Err(Error::NotRescalable)
    ));
}

#[test]
fn auto_choice_uses_series_for_normalized_parameters() {
    let p = FracParams::normalized(0.75).unwrap();
    let v = solve(&p, 5.0, 2.0, MethodChoice::Auto, Tolerance::default()).unwrap();
    assert_eq!(v.method, SolutionMethod::AlternatingSeries);
    let q = solve(&p, 5.0, 2.0, MethodChoice::Quadrature, Tolerance::default()).unwrap();
    assert!((v.u - q.u).abs() <= v.abs_error_bound + q.abs_error_bound);
}

#[test]
fn nonpositive_time_is_rejected() {
    let p = FracParams::normalized(0.75).unwrap();
    for t in [0.0, -1.0] {
        let err = solve(&p, 1.0, t, MethodChoice::Auto, Tolerance::default()).unwrap_err();
        assert!(err.to_string().contains("Dirac delta"));
    }
}

#[test]
fn bound_reports_hold_on_a_small_grid() {
    for alpha in [0.5, 0.75, 0.9] {
        for (x, t) in [(12.0, 1.0), (20.0, 3.0)] {
            let r = a0_lower_bound(x, t, alpha, 1.0).unwrap();
            assert!(r.satisfied, "a0 {alpha} {x} {t}: {r:?}");
            for k in 1..4 {
                let r = ak_upper_bound(k, x, t, alpha).unwrap();
                assert!(r.satisfied, "a{k} {alpha} {x} {t}: {r:?}");
            }
        }
    }
}

#[test]
fn front_grows_and_stays_above_its_lower_bound() {
    let ts: Vec<f64> = (0..8).map(|i| 5.0 * 8f64.powf(i as f64 / 7.0)).collect();
    let cfg = FrontConfig::new(0.75, 0.4, 2.0, ts).unwrap();
    let samples = front_track(&cfg).unwrap();
    for w in samples.windows(2) {
        assert!(w[1].log_u > w[0].log_u);
    }
    for s in &samples {
        assert!(s.log_lower_bound <= s.log_u);
    }
}

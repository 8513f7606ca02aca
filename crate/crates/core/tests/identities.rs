use std::f64::consts::PI;

use num_complex::Complex64 as C;
use pcf_core::hypergeom::SeriesControl;
use pcf_core::identities::{
    catalog, consistency_triangle, erf_kernel_with_sqrt_2pi_prefactor, series_sum_product, verify, verify_grid,
    GridOutcome, ParameterPoint, SeriesVariant, Triangle,
};
use pcf_core::Error;

const D_MINUS_HALF_AT_ONE_SQUARED: f64 = 0.426_503_072_057_212_07;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn r(x: f64) -> C {
    C::new(x, 0.0)
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / (a.norm() + b.norm() + 1e-300)
}

fn records(outcomes: Vec<GridOutcome>) -> Vec<pcf_core::identities::VerificationRecord> {
    outcomes
        .into_iter()
        .map(|o| match o {
            GridOutcome::Verified(r) => r,
            GridOutcome::Skipped { point, reason } => panic!("{point:?} skipped: {reason}"),
        })
        .collect()
}

#[test]
fn eq43_at_minus_half_matches_squared_pcf() {
    let rec = verify("eq43", &ParameterPoint::real(-0.5, 1.0), 1e-8).unwrap();
    assert!(rec.pass, "{rec:?}");
    assert!(rec.rel_err <= 1e-8);
    assert!((rec.lhs_value - r(D_MINUS_HALF_AT_ONE_SQUARED)).norm() <= 1e-12);
    assert!(rel(rec.rhs_value, r(D_MINUS_HALF_AT_ONE_SQUARED)) <= 1e-8);
}

#[test]
fn eq61p_at_origin_gives_half_pi() {
    let rec = verify("eq61p", &ParameterPoint::real(1.0, 0.0), 1e-8).unwrap();
    assert!(rec.pass, "{rec:?}");
    assert!((rec.lhs_value - r(PI / 2.0)).norm() <= 1e-12);
    assert!((rec.rhs_value - r(PI / 2.0)).norm() <= 1e-8 * PI);
}

#[test]
fn eq43_rejects_positive_order() {
    match verify("eq43", &ParameterPoint::real(0.5, 1.0), 1e-8) {
        Err(Error::OutOfDomain { reason, .. }) => assert!(reason.contains("ℜν < 0"), "{reason}"),
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn unknown_identity_is_an_error() {
    assert!(matches!(
        verify("eq999", &ParameterPoint::real(-0.5, 1.0), 1e-8),
        Err(Error::UnknownIdentity(_))
    ));
}

#[test]
fn connection_formula_grid_passes() {
    let grid: Vec<ParameterPoint> = (0..10)
        .map(|k| {
            let t = k as f64;
            ParameterPoint::new(
                c(-2.3 + 0.5 * t, 0.3 * (t - 4.0)),
                r(1.0),
                c(0.2 + 0.25 * t, 0.4 - 0.1 * t),
                r(1.0),
            )
        })
        .collect();
    let recs = records(verify_grid("eq24", &grid, 1e-9).unwrap());
    assert_eq!(recs.len(), 10);
    for (rec, p) in recs.iter().zip(&grid) {
        assert_eq!(&rec.point, p);
        assert!(rec.pass, "{rec:?}");
    }
}

#[test]
fn eq48_grid_passes_in_order() {
    let mut grid = Vec::new();
    for nu in [-0.4, -1.1] {
        for mu in [0.5, 1.5] {
            for z in [r(0.8), c(1.0, 0.5)] {
                grid.push(ParameterPoint::new(r(nu), r(mu), z, r(1.0)));
            }
        }
    }
    let recs = records(verify_grid("eq48", &grid, 1e-7).unwrap());
    assert_eq!(recs.len(), 8);
    for (rec, p) in recs.iter().zip(&grid) {
        assert_eq!(&rec.point, p);
        assert!(rec.pass, "{rec:?}");
    }
}

#[test]
fn empty_grid_gives_empty_list() {
    assert!(verify_grid("eq48", &[], 1e-7).unwrap().is_empty());
}

#[test]
fn grid_keeps_skipped_points_in_place() {
    let grid = [
        ParameterPoint::real(-0.5, 1.0),
        ParameterPoint::real(0.5, 1.0),
        ParameterPoint::real(-1.5, 0.7),
    ];
    let out = verify_grid("eq43", &grid, 1e-8).unwrap();
    assert!(matches!(&out[0], GridOutcome::Verified(r) if r.pass));
    assert!(matches!(&out[1], GridOutcome::Skipped { reason, .. } if reason.contains("ℜν < 0")));
    assert!(matches!(&out[2], GridOutcome::Verified(r) if r.pass));
}

#[test]
fn series_reproduce_half_pi_at_origin() {
    let ctl = SeriesControl::product_series();
    for v in [SeriesVariant::HermiteSquare, SeriesVariant::HermiteSquareAlternating] {
        let s = series_sum_product(v, &ParameterPoint::real(1.0, 0.0), &ctl).unwrap();
        assert!((s - r(PI / 2.0)).norm() <= 1e-8 * PI / 2.0, "{}: {s}", v.id());
    }
}

#[test]
fn eq59_at_unit_mu_reduces_to_eq61() {
    let ctl = SeriesControl::product_series();
    let p = ParameterPoint::real(0.5, 0.0);
    let general = series_sum_product(SeriesVariant::Hermite, &p, &ctl).unwrap();
    let special = series_sum_product(SeriesVariant::HermiteSquare, &p, &ctl).unwrap();
    assert!(rel(general, special) <= 1e-12, "{general} vs {special}");
}

#[test]
fn laguerre_series_matches_squared_pcf() {
    let s = series_sum_product(
        SeriesVariant::Laguerre,
        &ParameterPoint::real(0.5, 1.0),
        &SeriesControl::product_series(),
    )
    .unwrap();
    assert!(rel(s, r(D_MINUS_HALF_AT_ONE_SQUARED)) <= 1e-7, "{s}");
}

#[test]
fn series_grids_pass() {
    for id in ["eq59", "eq60"] {
        for nu in [0.5, 1.5] {
            for mu in [0.5, 1.0, 1.25] {
                for z in [0.0, 0.5, 1.5] {
                    let rec = verify(id, &ParameterPoint::real(nu, z).with_mu(r(mu)), 1e-7).unwrap();
                    assert!(rec.pass, "{rec:?}");
                }
            }
        }
    }
    for id in ["eq63", "eq64"] {
        for nu in [0.5, 1.5] {
            for z in [0.5, 1.0, 2.0] {
                let rec = verify(id, &ParameterPoint::real(nu, z), 1e-7).unwrap();
                assert!(rec.pass, "{rec:?}");
            }
        }
    }
}

#[test]
fn triangles_close() {
    let cases = [
        (
            Triangle::DurandMalyshev,
            vec![
                ParameterPoint::real(-0.3, 0.5),
                ParameterPoint::real(0.4, 1.2),
                ParameterPoint::real(1.6, 0.8),
            ],
        ),
        (
            Triangle::EvenOddRecombination,
            vec![
                ParameterPoint::real(-0.5, 1.0).with_mu(r(0.5)),
                ParameterPoint::real(-1.2, 0.7).with_mu(r(1.5)),
                ParameterPoint::new(r(-0.7), r(1.0), c(0.9, 0.3), r(1.0)),
            ],
        ),
        (
            Triangle::FourierRecombination,
            vec![
                ParameterPoint::real(0.0, 1.0).with_mu(r(0.5)),
                ParameterPoint::real(0.0, 2.0).with_mu(r(1.5)),
                ParameterPoint::real(0.0, 0.7).with_mu(r(0.75)).with_a(c(1.0, 0.5)),
            ],
        ),
        (
            Triangle::MuReduction,
            vec![
                ParameterPoint::real(-0.5, 1.0),
                ParameterPoint::real(-1.3, 0.4),
                ParameterPoint::real(-0.2, 2.0),
            ],
        ),
    ];
    for (kind, points) in cases {
        for p in points {
            let (a, b) = consistency_triangle(kind, &p).unwrap();
            assert!(rel(a, b) <= 1e-8, "{kind:?} at {p:?}: {a} vs {b}");
        }
    }
}

#[test]
fn real_points_give_real_sides() {
    let points = [
        ParameterPoint::real(-0.5, 1.0),
        ParameterPoint::real(-0.3, 0.5).with_mu(r(0.7)),
        ParameterPoint::real(0.5, 1.5).with_mu(r(1.25)),
        ParameterPoint::real(0.7, 0.4).with_mu(r(0.5)),
    ];
    for d in catalog() {
        for p in &points {
            let Ok(rec) = verify(d.id, p, d.default_tol) else {
                continue;
            };
            if rec.diagnostics.error.is_some() {
                continue;
            }
            // the Elbert–Muldoon combination carries an explicit factor i
            let phase = if d.id == "eq7" { c(0.0, -1.0) } else { r(1.0) };
            for v in [rec.lhs_value * phase, rec.rhs_value * phase] {
                assert!(v.im.abs() <= 1e-10 * v.norm().max(1e-300), "{} at {p:?}: {v}", d.id);
            }
        }
    }
}

#[test]
fn near_zero_values_use_absolute_tolerance() {
    let rec = verify("eq43", &ParameterPoint::real(-0.5, 8.0), 1e-8).unwrap();
    assert!(rec.lhs_value.norm() + rec.rhs_value.norm() < 1e-12, "{rec:?}");
    assert!(rec.abs_err <= 1e-8);
    assert!(rec.pass, "{rec:?}");
    let rec = verify("eq61m", &ParameterPoint::real(1.0, 0.0), 1e-300).unwrap();
    assert!(!rec.pass);
}

#[test]
fn cross_relation_holds() {
    for z in [0.5, 1.5] {
        for nu in [-0.3, 0.4, 1.6] {
            let rec = verify("eq6", &ParameterPoint::real(nu, z), 1e-8).unwrap();
            assert!(rec.pass, "{rec:?}");
        }
    }
}

#[test]
fn erf_kernel_needs_the_corrected_prefactor() {
    for (nu, z) in [(-0.5, 1.0), (0.3, 0.8), (1.2, 1.4)] {
        let p = ParameterPoint::real(nu, z);
        let rec = verify("eq7", &p, 1e-5).unwrap();
        assert!(rec.pass, "{rec:?}");
        let uncorrected = erf_kernel_with_sqrt_2pi_prefactor(&p).unwrap();
        let ratio = uncorrected / rec.rhs_value;
        assert!((ratio - r(1.0 / PI.sqrt())).norm() <= 1e-6, "ratio {ratio}");
    }
}

#[test]
fn derivative_identity_eq55_passes() {
    for nu in [-0.3, -0.7, -1.3] {
        for z in [0.5, 1.5] {
            let rec = verify("eq55", &ParameterPoint::real(nu, z), 1e-5).unwrap();
            assert!(rec.pass, "{rec:?}");
        }
    }
}

#[test]
fn report_only_eq56_completes() {
    for nu in [-0.3, -0.7, -1.3] {
        for z in [0.5, 1.5] {
            let rec = verify("eq56", &ParameterPoint::real(nu, z), 1e-5).unwrap();
            assert!(rec.report_only);
            assert!(rec.diagnostics.error.is_none(), "{rec:?}");
            assert!(rec.signed_discrepancy().is_finite());
        }
    }
}

#[test]
fn every_entry_rejects_non_finite_points() {
    let p = ParameterPoint::new(r(f64::NAN), r(1.0), r(1.0), r(1.0));
    for d in catalog() {
        assert!(verify(d.id, &p, d.default_tol).is_err(), "{}", d.id);
    }
}

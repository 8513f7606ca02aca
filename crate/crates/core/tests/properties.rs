use std::f64::consts::PI;

use num_complex::Complex64 as C;
use pcf_core::gammakit::{digamma, gamma, is_near_integer, principal_power};
use pcf_core::hypergeom::{laguerre, phi, phi_integral_oracle, psi, psi_integral_oracle, SeriesControl};
use pcf_core::pcf::{connection_defect, pcf_d, PcfEvalPolicy, PcfRoute};
use pcf_core::quad::{integrate_decay, QuadSpec};
use proptest::prelude::*;

fn cplx(r: f64) -> impl Strategy<Value = C> {
    (-r..r, -r..r).prop_map(|(a, b)| C::new(a, b))
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn off_poles(z: C) -> bool {
    !(z.im.abs() < 1e-3 && z.re < 0.5 && is_near_integer(z, 1e-3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_duplication(nu in cplx(10.0).prop_filter("off poles", |z| off_poles(*z) && off_poles(z + 0.5) && off_poles(z * 2.0))) {
        let lhs = gamma(nu * 2.0).unwrap();
        let rhs = (nu * 2.0 - 1.0).exp2() / PI.sqrt() * gamma(nu).unwrap() * gamma(nu + 0.5).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-11, "{nu}: {lhs} vs {rhs}");
    }

    #[test]
    fn gamma_reflection(z in cplx(10.0).prop_filter("off poles", |z| off_poles(*z) && off_poles(1.0 - z))) {
        let v = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (PI * z).sin() / PI;
        prop_assert!((v - 1.0).norm() <= 1e-11, "{z}: {v}");
    }

    #[test]
    fn digamma_recurrence(z in cplx(10.0).prop_filter("off poles", |z| off_poles(*z) && z.norm() > 1e-2)) {
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
        prop_assert!(d.norm() <= 1e-10, "{z}: {d}");
    }

    #[test]
    fn principal_power_unit_exponents(b in cplx(100.0).prop_filter("nonzero", |b| b.norm() > 0.0)) {
        prop_assert_eq!(principal_power(b, C::new(1.0, 0.0)).unwrap(), b);
        prop_assert_eq!(principal_power(b, C::new(0.0, 0.0)).unwrap(), C::new(1.0, 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn kummer_transformation(nu in cplx(3.0), mu in cplx(3.0).prop_filter("off poles", |m| off_poles(*m)), z in cplx(5.6)) {
        let k = SeriesControl::kummer();
        let lhs = phi(nu, mu, z, &k).unwrap();
        let rhs = z.exp() * phi(mu - nu, mu, -z, &k).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-10, "{nu} {mu} {z}: {lhs} vs {rhs}");
    }

    #[test]
    fn phi_matches_integral(nu_re in 0.05f64..3.9, gap in 0.05f64..1.0, nu_im in -1.0f64..1.0, z in cplx(3.5)) {
        let mu_re = (nu_re + gap * (4.0 - nu_re)).min(4.0);
        let nu = C::new(nu_re, nu_im);
        let mu = C::new(mu_re, 0.5 * nu_im);
        prop_assume!(mu.re > nu.re + 0.05);
        let series = phi(nu, mu, z, &SeriesControl::kummer()).unwrap();
        let oracle = phi_integral_oracle(nu, mu, z).unwrap();
        prop_assert!(rel(series, oracle) <= 1e-9, "{nu} {mu} {z}: {series} vs {oracle}");
    }

    #[test]
    fn psi_matches_integral(
        nu in (0.1f64..3.0, -1.0f64..1.0).prop_map(|(a, b)| C::new(a, b)),
        mu in (-2.0f64..3.0, -1.0f64..1.0).prop_map(|(a, b)| C::new(a, b)),
        z in (0.1f64..6.0, -3.0f64..3.0).prop_map(|(a, b)| C::new(a, b)),
    ) {
        prop_assume!(!is_near_integer(mu, 0.05));
        let two_term = psi(nu, mu, z, &SeriesControl::kummer()).unwrap();
        let oracle = psi_integral_oracle(nu, mu, z).unwrap();
        prop_assert!(rel(two_term, oracle) <= 1e-8, "{nu} {mu} {z}: {two_term} vs {oracle}");
    }

    #[test]
    fn connection_formula_holds(nu in cplx(3.0), z in cplx(3.0)) {
        prop_assume!((nu * 0.5).norm() < 3.0);
        let d = connection_defect(nu, z).unwrap();
        prop_assert!(d <= 1e-9, "{nu} {z}: {d}");
    }

    #[test]
    fn quadrature_is_linear(alpha in -2.0f64..2.0, beta in -2.0f64..2.0, c1 in 0.5f64..3.0, p in 0.0f64..2.0) {
        let spec = QuadSpec::default();
        let f = |t: f64| C::new((-c1 * t).exp() * (1.0 + t).powf(p), 0.0);
        let g = |t: f64| C::new(t.powf(p) * (-t * t - t).exp(), (-2.0 * t).exp());
        let qf = integrate_decay(f, &spec).unwrap();
        let qg = integrate_decay(g, &spec).unwrap();
        let qs = integrate_decay(|t| alpha * f(t) + beta * g(t), &spec).unwrap();
        let combined = alpha.abs() * qf.abs_error_estimate + beta.abs() * qg.abs_error_estimate + qs.abs_error_estimate;
        let defect = (qs.value - (alpha * qf.value + beta * qg.value)).norm();
        prop_assert!(defect <= combined + 4.0 * f64::EPSILON * qs.value.norm().max(1.0), "{defect:e} > {combined:e}");
    }
}

#[test]
fn pcf_routes_agree() {
    let phi_route = PcfEvalPolicy::default();
    let psi_route = PcfEvalPolicy::with_route(PcfRoute::PsiForm);
    for nu in [-1.7, -0.6, 0.4, 1.3] {
        for z in [0.3, 1.0, 2.5] {
            let (nu, z) = (C::new(nu, 0.0), C::new(z, 0.0));
            let a = pcf_d(nu, z, &phi_route).unwrap();
            let b = pcf_d(nu, z, &psi_route).unwrap();
            assert!(rel(a, b) <= 1e-9, "nu={nu} z={z}: {a} vs {b}");
        }
    }
}

#[test]
fn pcf_is_real_on_the_real_line() {
    let p = PcfEvalPolicy::default();
    for nu in [-3.3, -1.0, -0.5, 0.0, 0.7, 2.0, 3.6] {
        for z in [-4.0, -1.3, 0.0, 0.4, 2.2, 5.0] {
            let v = pcf_d(C::new(nu, 0.0), C::new(z, 0.0), &p).unwrap();
            assert!(v.im.abs() <= 1e-12 * v.norm(), "nu={nu} z={z}: {v}");
        }
    }
}

#[test]
fn laguerre_matches_psi_at_negative_integer_order() {
    let k = SeriesControl::kummer();
    for n in 0..=6u32 {
        for mu in [0.25, 0.5, 0.8, 1.3] {
            for x in [0.5, 1.0, 2.0] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let factorial: f64 = (1..=n).map(f64::from).product();
                let lhs = laguerre(n, mu - 1.0, C::new(x, 0.0)) * factorial * sign;
                let rhs = psi(C::new(-(n as f64), 0.0), C::new(mu, 0.0), C::new(x, 0.0), &k).unwrap();
                assert!(rel(lhs, rhs) <= 1e-9, "n={n} mu={mu} x={x}: {lhs} vs {rhs}");
            }
        }
    }
}

#[test]
fn laguerre_generating_function() {
    for t in [0.5f64, 1.0, 2.0] {
        for z in [0.5f64, 1.0, 2.0] {
            let x = C::new(z * z, 0.0);
            let w = (-2.0 * t).exp();
            let mut sum = C::new(0.0, 0.0);
            let mut wn = 1.0;
            let mut n = 0;
            loop {
                let term = laguerre(n, -1.0, x) * wn;
                sum += term;
                if term.norm() < 1e-18 * sum.norm() && n > 5 {
                    break;
                }
                n += 1;
                wn *= w;
                assert!(n < 2000);
            }
            let lhs = (-x * 0.5).exp() * sum;
            let rhs = (-(z * z / 2.0) / t.tanh()).exp();
            assert!((lhs.re - rhs).abs() <= 1e-8 * rhs, "t={t} z={z}: {lhs} vs {rhs}");
        }
    }
}

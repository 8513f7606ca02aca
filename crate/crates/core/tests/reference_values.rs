//! Fixed reference values computed with mpmath at 40 digits.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use pcf_core::gammakit::{digamma, gamma, log_gamma, pochhammer, principal_power};
use pcf_core::hypergeom::{
    laguerre, phi, phi_integral_oracle, psi, psi_integral_oracle, tricomi_psi_series, SeriesControl,
};
use pcf_core::pcf::{
    bessel_j_halforder, bessel_k_halforder, connection_defect, erf_via_pcf, hermite_case, pcf_d, pcf_d_dnu,
    PcfEvalPolicy, PcfRoute,
};
use pcf_core::quad::{
    convolution_identity_defect, integrate_decay, integrate_endpoint_singular, integrate_fourier_damped, QuadSpec,
    TrigKind,
};

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn r(x: f64) -> C {
    C::new(x, 0.0)
}

#[track_caller]
fn close(got: C, want: C, rel: f64) {
    let err = (got - want).norm() / want.norm().max(1e-300);
    assert!(err <= rel, "got {got}, want {want}, rel err {err:e} > {rel:e}");
}

// gamma family

#[test]
fn gamma_values() {
    close(gamma(r(1.0)).unwrap(), r(1.0), 1e-15);
    close(gamma(r(0.5)).unwrap(), r(1.772_453_850_905_516), 1e-15);
    close(
        gamma(c(0.5, 1.0)).unwrap(),
        c(0.300_694_617_260_655_82, -0.424_967_879_433_123_81),
        1e-13,
    );
}

#[test]
fn log_gamma_values() {
    assert!(log_gamma(r(1.0)).unwrap().norm() < 1e-14);
    close(log_gamma(r(10.0)).unwrap(), r(12.801_827_480_081_469), 1e-14);
    close(
        log_gamma(c(3.0, 4.0)).unwrap(),
        c(-1.756_626_784_603_784_1, 4.742_664_438_034_657_9),
        1e-13,
    );
}

#[test]
fn digamma_values() {
    let euler = 0.577_215_664_901_532_9;
    close(digamma(r(1.0)).unwrap(), r(-euler), 1e-14);
    close(digamma(r(2.0)).unwrap(), r(1.0 - euler), 1e-14);
    close(digamma(r(0.25)).unwrap(), r(-4.227_453_533_376_265_4), 1e-13);
}

#[test]
fn pochhammer_values() {
    assert_eq!(pochhammer(r(3.7), 0), r(1.0));
    assert_eq!(pochhammer(r(1.0), 5), r(120.0));
    close(pochhammer(r(-0.5), 3), r(-0.375), 1e-16);
}

#[test]
fn principal_power_values() {
    close(principal_power(r(4.0), r(0.5)).unwrap(), r(2.0), 1e-16);
    close(principal_power(c(0.0, 1.0), r(2.0)).unwrap(), r(-1.0), 1e-15);
    close(
        principal_power(c(0.0, -1.0), r(0.25)).unwrap(),
        c(0.923_879_532_511_286_76, -0.382_683_432_365_089_77),
        1e-15,
    );
}

// Kummer functions

#[test]
fn phi_values() {
    let k = SeriesControl::kummer();
    close(phi(r(2.3), r(0.7), r(0.0), &k).unwrap(), r(1.0), 0.0);
    close(
        phi(r(1.0), r(1.0), r(1.5), &k).unwrap(),
        r(4.481_689_070_338_065),
        1e-15,
    );
    close(
        phi(r(2.0), r(3.0), r(1.5), &k).unwrap(),
        r(2.880_750_697_928_028_8),
        1e-14,
    );
}

#[test]
fn phi_integral_oracle_values() {
    close(phi_integral_oracle(r(0.5), r(1.5), r(0.0)).unwrap(), r(1.0), 1e-12);
    close(
        phi_integral_oracle(r(1.0), r(2.0), r(1.0)).unwrap(),
        r(1.718_281_828_459_045),
        1e-12,
    );
    let oracle = phi_integral_oracle(r(0.8), r(2.1), r(-2.5)).unwrap();
    let series = phi(r(0.8), r(2.1), r(-2.5), &SeriesControl::kummer()).unwrap();
    close(oracle, series, 1e-9);
    close(series, r(0.475_350_062_005_704_13), 1e-13);
}

#[test]
fn psi_values() {
    let k = SeriesControl::kummer();
    let v = psi(r(0.7), r(1.7), r(2.0), &k).unwrap();
    close(v, psi_integral_oracle(r(0.7), r(1.7), r(2.0)).unwrap(), 1e-9);
    close(v, r(0.615_572_206_672_458_16), 1e-12);
    close(psi(r(0.5), r(1.5), r(1.0), &k).unwrap(), r(1.0), 1e-13);
    close(
        psi(r(1.2), r(0.4), r(3.0), &k).unwrap(),
        r(0.165_479_060_056_293_3),
        1e-12,
    );
}

#[test]
fn psi_integral_oracle_values() {
    close(psi_integral_oracle(r(1.0), r(2.0), r(1.0)).unwrap(), r(1.0), 1e-12);
    close(psi_integral_oracle(r(0.5), r(1.5), r(4.0)).unwrap(), r(0.5), 1e-12);
    close(
        psi_integral_oracle(r(1.5), r(0.8), r(2.2)).unwrap(),
        r(0.152_912_810_359_266_72),
        1e-11,
    );
}

#[test]
fn laguerre_values() {
    close(laguerre(0, -1.0, r(7.3)), r(1.0), 0.0);
    close(laguerre(1, 0.5, r(2.0)), r(-0.5), 1e-16);
    close(laguerre(3, -1.0, r(2.0)), r(2.0 / 3.0), 1e-15);
}

#[test]
fn tricomi_series_values() {
    let ctl = SeriesControl::tricomi();
    let s = tricomi_psi_series(r(0.5), r(0.75), 1.2, &ctl).unwrap();
    close(s, psi(r(0.5), r(0.75), r(1.2), &SeriesControl::kummer()).unwrap(), 1e-5);
    close(s, r(0.753_792_566_148_264_29), 1e-5);
    let near_pole = tricomi_psi_series(r(1.0), r(1.0 - 1e-3), 2.0, &ctl).unwrap();
    assert!(near_pole.re.is_finite() && near_pole.im.is_finite());
    close(
        tricomi_psi_series(r(2.5), r(1.2), 0.5, &ctl).unwrap(),
        r(0.257_426_693_873_008_81),
        1e-5,
    );
}

// parabolic cylinder functions

#[test]
fn pcf_values() {
    let p = PcfEvalPolicy::default();
    close(pcf_d(r(0.0), r(1.3), &p).unwrap(), r((-0.4225f64).exp()), 1e-15);
    close(pcf_d(r(-0.5), r(0.0), &p).unwrap(), r(1.216_280_214_257_520_3), 1e-14);
    close(pcf_d(r(-0.5), r(1.0), &p).unwrap(), r(0.653_072_026_699_361_91), 1e-13);
    let psi_form = pcf_d(r(-0.5), r(1.0), &PcfEvalPolicy::with_route(PcfRoute::PsiForm)).unwrap();
    close(psi_form, r(0.653_072_026_699_361_91), 1e-12);
    close(
        pcf_d(c(-1.5, 0.5), c(0.7, -0.4), &p).unwrap(),
        c(0.452_253_932_594_614_29, 0.409_857_096_769_436_42),
        1e-12,
    );
    close(pcf_d(r(2.5), r(3.0), &p).unwrap(), r(1.298_478_603_443_895_6), 1e-12);
}

#[test]
fn pcf_order_derivative_values() {
    let p = PcfEvalPolicy::default();
    let at_origin = pcf_d_dnu(r(0.0), r(0.0), &p).unwrap();
    let closed = (std::f64::consts::LN_2 + digamma(r(0.5)).unwrap()) * 0.5;
    close(at_origin, closed, 1e-9);
    close(at_origin, r(-0.635_181_422_730_739_09), 1e-9);
    close(
        pcf_d_dnu(r(-0.5), r(1.0), &p).unwrap(),
        r(0.280_007_040_534_344_9),
        1e-9,
    );
    let coarse = pcf_d_dnu(r(-1.0), r(0.5), &p).unwrap();
    let fine = pcf_d_dnu(
        r(-1.0),
        r(0.5),
        &PcfEvalPolicy::new(PcfRoute::PhiCombination, 5e-4, 4).unwrap(),
    )
    .unwrap();
    close(fine, coarse, 1e-6);
}

#[test]
fn connection_defect_values() {
    assert!(connection_defect(r(1.0), r(0.7)).unwrap() <= 1e-10);
    assert!(connection_defect(c(0.5, 0.3), c(1.2, -0.4)).unwrap() <= 1e-9);
    assert!(connection_defect(r(2.5), r(3.0)).unwrap() <= 1e-9);
}

#[test]
fn erf_values() {
    assert!(erf_via_pcf(r(0.0)).unwrap().norm() < 1e-15);
    assert!((erf_via_pcf(r(6.0)).unwrap() - 1.0).norm() < 1e-12);
    close(erf_via_pcf(r(1.0)).unwrap(), r(0.842_700_792_949_714_87), 1e-14);
}

#[test]
fn bessel_values() {
    let sqrt2 = 2f64.sqrt();
    close(
        bessel_j_halforder(r(1.0), sqrt2).unwrap(),
        r((2.0 / PI).sqrt() * 1f64.sin()),
        1e-13,
    );
    close(
        bessel_j_halforder(r(1.0), sqrt2).unwrap(),
        r(0.671_396_707_141_803_09),
        1e-13,
    );
    let x = 1e-4;
    let s = x * x / 2.0;
    close(
        bessel_j_halforder(r(1.0), x).unwrap(),
        r((2.0 * s / PI).sqrt() * (1.0 - s * s / 6.0)),
        1e-6,
    );
    close(
        bessel_j_halforder(r(2.3), 1.5).unwrap(),
        r(0.188_794_616_363_323_78),
        1e-12,
    );

    close(
        bessel_k_halforder(r(1.0), sqrt2).unwrap(),
        r((PI / 2.0).sqrt() * (-1f64).exp()),
        1e-12,
    );
    close(
        bessel_k_halforder(r(1.0), sqrt2).unwrap(),
        r(0.461_068_504_447_894_56),
        1e-12,
    );
    close(
        bessel_k_halforder(r(1.0), 2.0).unwrap(),
        r(0.119_937_771_968_061_45),
        1e-12,
    );
    close(
        bessel_k_halforder(r(0.75), 1.0).unwrap(),
        r(0.960_316_324_931_886_02),
        1e-12,
    );
}

#[test]
fn hermite_values() {
    close(hermite_case(0, r(2.0)), r(0.367_879_441_171_442_33), 1e-15);
    close(hermite_case(1, r(2.0)), r(2.0 * (-1f64).exp()), 1e-15);
    let d4 = pcf_d(r(4.0), r(0.8), &PcfEvalPolicy::default()).unwrap();
    close(hermite_case(4, r(0.8)), d4, 1e-10);
    close(d4, r(-0.366_762_686_771_057_64), 1e-12);
}

// quadrature

fn spec() -> QuadSpec {
    QuadSpec::default()
}

#[test]
fn decay_engine_values() {
    let q = integrate_decay(|t| r((-t).exp()), &spec()).unwrap();
    close(q.value, r(1.0), 1e-12);
    let q = integrate_decay(|t| r(t.sqrt() * (-t).exp()), &spec()).unwrap();
    close(q.value, r(PI.sqrt() / 2.0), 1e-10);
    let q = integrate_decay(|t| r(t.powf(1.3) * (-2.0 * t - t * t).exp()), &spec()).unwrap();
    close(q.value, r(0.097_781_116_648_869_234), 1e-11);
}

#[test]
fn endpoint_singular_values() {
    let q = integrate_endpoint_singular(|t| r(t.powf(-0.5) * (-t).exp()), -0.5, &spec()).unwrap();
    close(q.value, r(PI.sqrt()), 1e-10);
    let q = integrate_endpoint_singular(|t| r(if t <= 1.0 { t.powf(-0.9) } else { 0.0 }), -0.9, &spec()).unwrap();
    close(q.value, r(10.0), 1e-10);
    let q = integrate_endpoint_singular(
        |t| r(t.powf(-0.75) * (-3.0 * t).exp() * (1.0 + t).powf(0.4)),
        -0.75,
        &spec(),
    )
    .unwrap();
    close(q.value, r(2.838_091_125_005_711_5), 1e-10);
}

#[test]
fn fourier_engine_values() {
    let g = |x: f64| r((-x * x / 2.0).exp());
    let q = integrate_fourier_damped(g, 0.0, PI / 2.0, TrigKind::Sin, &spec()).unwrap();
    close(q.value, r((PI / 2.0).sqrt()), 1e-11);
    let q = integrate_fourier_damped(g, 1.0, 0.0, TrigKind::Cos, &spec()).unwrap();
    close(q.value, r(0.760_173_450_533_140_4), 1e-11);
    let q = integrate_fourier_damped(
        |x| r(x.powf(0.3) * (-x * x / 2.0).exp()),
        2.0,
        PI / 4.0,
        TrigKind::Sin,
        &spec(),
    )
    .unwrap();
    close(q.value, r(0.353_107_067_242_974_43), 1e-10);
}

#[test]
fn convolution_defects() {
    let s = spec();
    assert!(convolution_identity_defect(|t| r((-t).exp()), |t| r((-t).exp()), &s).unwrap() <= 1e-8);
    assert!(convolution_identity_defect(|t| r((-t).exp()), |t| r((-2.0 * t).exp()), &s).unwrap() <= 1e-8);
    let g = |t: f64| r(t.powf(0.2) * (-t * t / 2.0).exp());
    assert!(convolution_identity_defect(g, |t| r((-t).exp()), &s).unwrap() <= 1e-7);
}

//! Catalog of product identities for parabolic cylinder functions.
//!
//! Each entry pairs two evaluators that reach the same quantity by different
//! numerical routes: a product of D-values on one side and a quadrature or a
//! series on the other. Branches of every fractional power and square root
//! are principal.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gammakit::{
    digamma, gamma, is_near_integer, is_nonpositive_integer, pochhammer, principal_power, principal_sqrt, recip_gamma,
};
use crate::hypergeom::{phi, psi, SeriesControl};
use crate::pcf::{
    bessel_j_halforder, bessel_k_halforder, connection_sides, erf_via_pcf, pcf_d, pcf_d_dnu, PcfEvalPolicy,
};
use crate::quad::{
    try_integrate_damped, try_integrate_endpoint_singular, try_integrate_fourier_damped_singular, QuadSpec,
    QuadratureResult, TrigKind,
};
use crate::summation::{richardson, tapered_sums};
use crate::{Error, Result};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);
const SQRT_PI: f64 = 1.772_453_850_905_516;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const EXP_UNDERFLOW: f64 = -745.0;

/// Parameters (ν, μ, z, a) at which an identity is evaluated; slots an
/// identity does not use are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterPoint {
    pub nu: C,
    pub mu: C,
    pub z: C,
    pub a: C,
}

impl ParameterPoint {
    pub fn new(nu: C, mu: C, z: C, a: C) -> Self {
        Self { nu, mu, z, a }
    }

    /// Real-valued point with μ = 1 and a = 1.
    pub fn real(nu: f64, z: f64) -> Self {
        Self::new(C::new(nu, 0.0), ONE, C::new(z, 0.0), ONE)
    }

    pub fn with_mu(mut self, mu: C) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_a(mut self, a: C) -> Self {
        self.a = a;
        self
    }

    pub fn is_finite(&self) -> bool {
        [self.nu, self.mu, self.z, self.a]
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Statistics of one integral evaluated by a side of an identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadStats {
    pub side: String,
    pub value: C,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Side-channel filled by evaluators.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub quadrature: Vec<QuadStats>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
    #[serde(skip)]
    side: &'static str,
}

impl Diagnostics {
    fn record(&mut self, q: &QuadratureResult) {
        self.quadrature.push(QuadStats {
            side: self.side.to_string(),
            value: q.value,
            abs_error_estimate: q.abs_error_estimate,
            evaluations: q.evaluations,
            converged: q.converged,
        });
        for w in &q.warnings {
            self.warnings.push(format!("{}: {w}", self.side));
        }
    }
}

pub type Evaluator = fn(&ParameterPoint, &mut Diagnostics) -> Result<C>;
pub type DomainPredicate = fn(&ParameterPoint) -> std::result::Result<(), String>;

/// One catalog entry.
#[derive(Clone, Copy)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    /// Human-readable name of the relation.
    pub label: &'static str,
    /// Validity domain as text.
    pub domain_text: &'static str,
    /// Short distinctive fragment of the formula.
    pub anchor: &'static str,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    pub domain: DomainPredicate,
    pub default_tol: f64,
    /// Branch conventions and evaluation routes.
    pub notes: &'static str,
    /// Failures are reported but do not count against a run.
    pub report_only: bool,
}

impl std::fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("label", &self.label)
            .field("default_tol", &self.default_tol)
            .field("report_only", &self.report_only)
            .finish()
    }
}

/// Outcome of one identity at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub identity_id: String,
    pub point: ParameterPoint,
    pub lhs_value: C,
    pub rhs_value: C,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub report_only: bool,
    pub diagnostics: Diagnostics,
}

impl VerificationRecord {
    /// Re(lhs − rhs)/(|lhs| + |rhs|): a signed version of `rel_err` for real
    /// parameter points.
    pub fn signed_discrepancy(&self) -> f64 {
        (self.lhs_value - self.rhs_value).re / (self.lhs_value.norm() + self.rhs_value.norm() + 1e-300)
    }
}

/// Result of one grid element.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GridOutcome {
    Verified(VerificationRecord),
    Skipped { point: ParameterPoint, reason: String },
}

// ---------------------------------------------------------------------------
// shared numerics

fn d(nu: C, z: C) -> Result<C> {
    pcf_d(nu, z, &PcfEvalPolicy::default())
}

fn d_dnu(nu: C, z: C) -> Result<C> {
    pcf_d_dnu(nu, z, &PcfEvalPolicy::default())
}

fn pw(base: C, exponent: C) -> Result<C> {
    principal_power(base, exponent)
}

fn quad_spec() -> QuadSpec {
    QuadSpec {
        abs_tol: 1e-15,
        rel_tol: 1e-11,
        max_evaluations: 400_000,
        split_point: 1.0,
    }
}

/// ln sinh 2t without overflow.
fn ln_sinh_2t(t: f64) -> f64 {
    if t > 1.0 {
        2.0 * t - LN_2 + (-(-4.0 * t).exp()).ln_1p()
    } else {
        (2.0 * t).sinh().ln()
    }
}

/// ln cosh t without overflow.
fn ln_cosh(t: f64) -> f64 {
    t.abs() + (-2.0 * t.abs()).exp().ln_1p() - LN_2
}

fn t_integral<F>(diag: &mut Diagnostics, f: F, sigma: f64) -> Result<C>
where
    F: Fn(f64) -> Result<C>,
{
    let q = try_integrate_endpoint_singular(f, sigma, &quad_spec())?;
    diag.record(&q);
    Ok(q.value)
}

fn x_integral<F>(diag: &mut Diagnostics, f: F, sigma: f64, max_panel: f64) -> Result<C>
where
    F: Fn(f64) -> Result<C>,
{
    let q = try_integrate_damped(f, sigma, max_panel, &quad_spec())?;
    diag.record(&q);
    Ok(q.value)
}

/// ∫₀^∞ trig(zx + phase)·g(x)dx, through the real-frequency engine when z
/// and the phase are real.
fn trig_integral<G>(diag: &mut Diagnostics, g: G, z: C, phase: C, kind: TrigKind, sigma: f64) -> Result<C>
where
    G: Fn(f64) -> Result<C>,
{
    if z.im == 0.0 && phase.im == 0.0 {
        let q = try_integrate_fourier_damped_singular(g, z.re, phase.re, kind, sigma, &quad_spec())?;
        diag.record(&q);
        return Ok(q.value);
    }
    let f = |x: f64| -> Result<C> {
        let arg = z * x + phase;
        let t = match kind {
            TrigKind::Sin => arg.sin(),
            TrigKind::Cos => arg.cos(),
        };
        Ok(t * g(x)?)
    };
    let max_panel = if z.norm() == 0.0 { 1.0 } else { (PI / z.norm()).min(1.0) };
    x_integral(diag, f, sigma, max_panel)
}

/// exp(e) · g(), skipping g when the exponential underflows.
fn damped(e: C, g: impl FnOnce() -> Result<C>) -> Result<C> {
    if e.re < EXP_UNDERFLOW {
        return Ok(ZERO);
    }
    Ok(e.exp() * g()?)
}

// ---------------------------------------------------------------------------
// domain helpers

type DomainResult = std::result::Result<(), String>;

fn require(cond: bool, msg: &str) -> DomainResult {
    if cond {
        Ok(())
    } else {
        Err(format!("requires {msg}"))
    }
}

const INTEGER_TOL: f64 = 1e-9;
const REAL_TOL: f64 = 1e-14;

fn is_real(c: C) -> bool {
    c.im.abs() <= REAL_TOL
}

// ---------------------------------------------------------------------------
// Gaussian-weighted transforms of Φ and Ψ

fn dom_eq12(p: &ParameterPoint) -> DomainResult {
    require(
        p.a.re.abs() <= REAL_TOL && p.a != ZERO,
        "a purely imaginary and nonzero (ℜa = 0, a ≠ 0)",
    )?;
    require(p.mu.re > 0.0, "ℜμ > 0")?;
    require(p.z.re > 0.0, "ℜz > 0")
}

fn eq12_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z, a) = (p.nu, p.mu, p.z, p.a);
    let pref = pw(a, nu * 0.5 - mu * 0.5)? / pw(-a, nu * 0.5)?;
    Ok(pref * d(-nu, z / principal_sqrt(-a))? * d(nu - mu, z / principal_sqrt(a))?)
}

fn eq12_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z, a) = (p.nu, p.mu, p.z, p.a);
    let ctl = SeriesControl::kummer();
    let f = |x: f64| -> Result<C> {
        let e = (mu - 1.0) * x.ln() - z * x - a * (0.5 * x * x);
        damped(e, || phi(nu, mu, a * (x * x), &ctl))
    };
    let sigma = (mu.re - 1.0).min(0.0);
    Ok(recip_gamma(mu) * x_integral(diag, f, sigma, 0.5)?)
}

fn dom_mu_strip(p: &ParameterPoint) -> DomainResult {
    require(p.mu.re > 0.0 && p.mu.re < 2.0, "0 < ℜμ < 2")?;
    require(
        !is_near_integer(p.mu, INTEGER_TOL),
        "μ not an integer (Psi two-term form)",
    )
}

fn dom_eq19(p: &ParameterPoint) -> DomainResult {
    dom_mu_strip(p)?;
    require(p.a.re >= 0.0 && p.a != ZERO, "ℜa ≥ 0, a ≠ 0")?;
    if p.a.re == 0.0 {
        require(p.z.re > 0.0, "ℜz > 0 when ℜa = 0")?;
    }
    Ok(())
}

/// ∫₀^∞ w(x)·x^{μ−1}e^{−ax²/2}Ψ(ν,μ;ax²)dx with the x-dependent factor w
/// folded in by the caller.
fn psi_kernel(nu: C, mu: C, a: C, x: f64, extra: C) -> Result<C> {
    let e = (mu - 1.0) * x.ln() - a * (0.5 * x * x) + extra;
    damped(e, || psi(nu, mu, a * (x * x), &SeriesControl::kummer()))
}

fn psi_kernel_sigma(mu: C) -> f64 {
    -(mu.re - 1.0).abs()
}

fn eq19_lhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z, a) = (p.nu, p.mu, p.z, p.a);
    let f = |x: f64| psi_kernel(nu, mu, a, x, -z * x);
    let integral = x_integral(diag, f, psi_kernel_sigma(mu), 0.5)?;
    let pref = 2f64.sqrt() * pw(a, mu * 0.5)? * (PI * mu).sin() / SQRT_PI;
    Ok(pref * integral)
}

fn eq19_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z, a) = (p.nu, p.mu, p.z, p.a);
    let w = I * z / principal_sqrt(a);
    let e = (I * FRAC_PI_2 * mu).exp();
    Ok(e * d(-nu, w)? * d(mu - nu - 1.0, -w)? + d(-nu, -w)? * d(mu - nu - 1.0, w)? / e)
}

fn dom_eq20(p: &ParameterPoint) -> DomainResult {
    dom_mu_strip(p)?;
    require(p.a.re > 0.0, "ℜa > 0 (purely imaginary a is not verified)")?;
    require(is_real(p.z), "real z")
}

fn eq20_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let w = p.z / principal_sqrt(p.a);
    Ok(d(-p.nu, w)? * d(p.mu - p.nu - 1.0, -w)?)
}

fn eq20_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z, a) = (p.nu, p.mu, p.z, p.a);
    let g = |x: f64| psi_kernel(nu, mu, a, x, ZERO);
    let integral = trig_integral(diag, g, z, mu * FRAC_PI_2, TrigKind::Sin, psi_kernel_sigma(mu))?;
    Ok(2.0 * pw(a, mu * 0.5)? / SQRT_2PI * integral)
}

fn dom_eq26(p: &ParameterPoint) -> DomainResult {
    dom_mu_strip(p)?;
    require(p.a.re > 0.0, "ℜa > 0")
}

fn eq26_lhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z, a) = (p.nu, p.mu, p.z, p.a);
    let g = |x: f64| psi_kernel(nu, mu, a, x, ZERO);
    let integral = trig_integral(diag, g, z, ZERO, TrigKind::Cos, psi_kernel_sigma(mu))?;
    Ok(4.0 * pw(a, mu * 0.5)? / SQRT_2PI * (mu * FRAC_PI_2).sin() * integral)
}

fn fourier_pair(p: &ParameterPoint, sign: f64) -> Result<C> {
    let w = p.z / principal_sqrt(p.a);
    let k = p.mu - 1.0 - p.nu;
    Ok(d(-p.nu, w)? * d(k, -w)? + sign * d(-p.nu, -w)? * d(k, w)?)
}

fn eq26_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    fourier_pair(p, 1.0)
}

fn dom_eq27(p: &ParameterPoint) -> DomainResult {
    require(p.mu.re > -1.0 && p.mu.re < 3.0, "-1 < ℜμ < 3")?;
    require(
        !is_near_integer(p.mu, INTEGER_TOL),
        "μ not an integer (Psi two-term form)",
    )?;
    require(p.a.re > 0.0, "ℜa > 0")
}

fn eq27_lhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z, a) = (p.nu, p.mu, p.z, p.a);
    let g = |x: f64| psi_kernel(nu, mu, a, x, ZERO);
    let sigma = mu.re.min(2.0 - mu.re).min(0.0);
    let integral = trig_integral(diag, g, z, ZERO, TrigKind::Sin, sigma)?;
    Ok(4.0 * pw(a, mu * 0.5)? / SQRT_2PI * (mu * FRAC_PI_2).cos() * integral)
}

fn eq27_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    fourier_pair(p, -1.0)
}

// ---------------------------------------------------------------------------
// Bessel special cases and the Gaussian transforms with μ = ν + ½

fn dom_eq31(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re > 0.0, "ℜν > 0")?;
    require(p.z.re > 0.0, "ℜz > 0")
}

fn eq31_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let r = C::from_polar(1.0, FRAC_PI_4);
    Ok(d(-p.nu, p.z * r)? * d(-p.nu, p.z * r.conj())?)
}

fn eq31_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    let f = |x: f64| -> Result<C> { damped(-z * x, || bessel_j_halforder(nu, x)) };
    let sigma = (2.0 * nu.re - 1.0).min(0.0);
    Ok(SQRT_PI * recip_gamma(nu) * x_integral(diag, f, sigma, 0.5)?)
}

fn dom_eq32(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re > 0.0 && p.nu.re < 1.0, "0 < ℜν < 1")
}

fn eq32_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(d(-p.nu, p.z)? * d(p.nu - 1.0, -p.z)?)
}

fn eq32_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let nu = p.nu;
    let g = |x: f64| bessel_k_halforder(nu, x);
    let sigma = -(2.0 * nu.re - 1.0).abs();
    let integral = trig_integral(diag, g, p.z, PI * nu, TrigKind::Sin, sigma)?;
    Ok(2f64.sqrt() / PI * integral)
}

fn dom_eq34(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re > 0.0, "ℜν > 0")
}

fn eq34_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let dz = d(-p.nu, p.z)?;
    Ok((p.z * p.z * 0.5).exp() * dz * dz)
}

fn eq34_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    let ctl = SeriesControl::kummer();
    let f = |x: f64| -> Result<C> {
        let e = (2.0 * nu - 1.0) * x.ln() - 2.0 * z * x - 2.0 * x * x;
        damped(e, || phi(nu, nu + 0.5, C::new(x * x, 0.0), &ctl))
    };
    let sigma = (2.0 * nu.re - 1.0).min(0.0);
    let pref = (2.0 * nu * LN_2).exp() * recip_gamma(2.0 * nu);
    Ok(pref * x_integral(diag, f, sigma, 0.5)?)
}

fn dom_eq35(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re > 0.0, "ℜν > 0")?;
    require(
        !is_near_integer(p.nu + 0.5, INTEGER_TOL),
        "ν + 1/2 not an integer (Psi two-term form)",
    )
}

fn eq35_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok((p.z * p.z * 0.5).exp() * d(-p.nu, p.z)? * d(-p.nu, -p.z)?)
}

fn eq35_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    let ctl = SeriesControl::kummer();
    let f = |x: f64| -> Result<C> {
        let e = (2.0 * nu - 1.0) * x.ln() - 2.0 * x * x;
        damped(e, || {
            Ok((2.0 * z * x).cosh() * psi(nu, nu + 0.5, C::new(x * x, 0.0), &ctl)?)
        })
    };
    let sigma = (2.0 * nu.re - 1.0).min(0.0);
    Ok(2.0 * recip_gamma(nu) * x_integral(diag, f, sigma, 0.5)?)
}

fn dom_eq36(p: &ParameterPoint) -> DomainResult {
    require(!is_nonpositive_integer(p.nu + 0.5), "ν + 1/2 not a nonpositive integer")
}

fn eq36_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok((-p.z * p.z * 0.5).exp() * d(-p.nu, p.z)? * d(-p.nu, -p.z)?)
}

fn eq36_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let nu = p.nu;
    let ctl = SeriesControl::kummer();
    let g = |x: f64| -> Result<C> {
        damped(C::new(-2.0 * x * x, 0.0), || {
            phi(C::new(0.5, 0.0), nu + 0.5, C::new(x * x, 0.0), &ctl)
        })
    };
    let integral = trig_integral(diag, g, 2.0 * p.z, ZERO, TrigKind::Cos, 0.0)?;
    Ok(2.0 * recip_gamma(nu + 0.5) * integral)
}

// ---------------------------------------------------------------------------
// Nicholson-type integrals

fn dom_eq43(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re < 0.0, "ℜν < 0")?;
    require(p.z != ZERO && p.z.arg().abs() < FRAC_PI_4, "z ≠ 0 and |arg z| < π/4")
}

fn eq43_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(d(p.nu, p.z)? * d(p.nu + p.mu - 1.0, p.z)?)
}

fn eq43_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z) = (p.nu, p.mu, p.z);
    let z2 = z * z;
    let f = |t: f64| -> Result<C> {
        let coth = 1.0 / t.tanh();
        // both exponential factors carry e^{−z² coth t/4}
        if 0.5 * z2.re * coth > -EXP_UNDERFLOW + 50.0 {
            return Ok(ZERO);
        }
        let e = (2.0 * nu + mu) * t - z2 * (0.25 * coth) - mu * (0.5 * ln_sinh_2t(t));
        damped(e, || d(mu - 1.0, z * coth.sqrt()))
    };
    let pref = ((1.0 - mu * 0.5) * LN_2).exp() * recip_gamma(-nu);
    Ok(pref * t_integral(diag, f, 0.0)?)
}

fn dom_nu_negative(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re < 0.0, "ℜν < 0")
}

fn dom_eq48(p: &ParameterPoint) -> DomainResult {
    require(p.mu.re < 2.0, "ℜμ < 2")?;
    dom_nu_negative(p)
}

fn eq48_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(d(p.nu, -p.z)? * d(p.nu + p.mu - 1.0, p.z)?)
}

fn eq48_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z) = (p.nu, p.mu, p.z);
    let z2 = z * z;
    let f = |t: f64| -> Result<C> {
        let th = t.tanh();
        let e = (2.0 * nu + mu) * t - z2 * (0.25 * th) - mu * (0.5 * ln_sinh_2t(t));
        damped(e, || d(mu - 1.0, z * th.sqrt()))
    };
    let pref = ((1.0 - mu * 0.5) * LN_2).exp() * recip_gamma(-nu);
    Ok(pref * t_integral(diag, f, (-0.5 * mu.re).min(0.0))?)
}

fn dom_eq53(p: &ParameterPoint) -> DomainResult {
    require(p.mu.re < 2.0, "ℜμ < 2")?;
    dom_nu_negative(p)
}

fn parity_pair(p: &ParameterPoint, sign: f64) -> Result<C> {
    let k = p.nu + p.mu - 1.0;
    Ok(d(p.nu, p.z)? * d(k, -p.z)? + sign * d(p.nu, -p.z)? * d(k, p.z)?)
}

fn eq53_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    parity_pair(p, 1.0)
}

fn eq53_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z) = (p.nu, p.mu, p.z);
    let ctl = SeriesControl::kummer();
    let f = |t: f64| -> Result<C> {
        let e = (2.0 * nu + mu) * t - mu * (0.5 * ln_sinh_2t(t));
        damped(e, || phi(mu * 0.5, C::new(0.5, 0.0), -z * z * (0.5 * t.tanh()), &ctl))
    };
    let pref = 2.0 * SQRT_2PI * recip_gamma(-nu) * recip_gamma(1.0 - mu * 0.5);
    Ok(pref * t_integral(diag, f, (-0.5 * mu.re).min(0.0))?)
}

fn dom_eq54(p: &ParameterPoint) -> DomainResult {
    require(p.mu.re < 3.0, "ℜμ < 3")?;
    dom_nu_negative(p)
}

fn eq54_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    parity_pair(p, -1.0)
}

fn eq54_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, mu, z) = (p.nu, p.mu, p.z);
    let ctl = SeriesControl::kummer();
    let f = |t: f64| -> Result<C> {
        let th = t.tanh();
        let e = (2.0 * nu + mu) * t - mu * (0.5 * ln_sinh_2t(t)) + 0.5 * th.ln();
        damped(e, || phi(0.5 + mu * 0.5, C::new(1.5, 0.0), -z * z * (0.5 * th), &ctl))
    };
    let pref = 4.0 * z * SQRT_PI * recip_gamma(-nu) * recip_gamma(0.5 - mu * 0.5);
    Ok(pref * t_integral(diag, f, (0.5 - 0.5 * mu.re).min(0.0))?)
}

fn eq55_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    Ok(d(nu, z)? * d_dnu(nu, -z)? - d(nu, -z)? * d_dnu(nu, z)?)
}

fn tanh_phi_integral(diag: &mut Diagnostics, nu_shift: C, cosh_power: f64, z: C) -> Result<C> {
    let ctl = SeriesControl::kummer();
    let f = |t: f64| -> Result<C> {
        let e = nu_shift * t - cosh_power * ln_cosh(t);
        damped(e, || phi(ONE, C::new(1.5, 0.0), -z * z * (0.5 * t.tanh()), &ctl))
    };
    t_integral(diag, f, 0.0)
}

fn eq55_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    let integral = tanh_phi_integral(diag, 2.0 * nu + 1.0, 1.0, z)?;
    Ok(-SQRT_2PI * z * recip_gamma(-nu) * integral)
}

fn eq56_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    Ok(d(nu, z)? * d_dnu(nu + 1.0, -z)? + d(nu, -z)? * d_dnu(nu + 1.0, z)?)
}

fn eq56_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    let integral = tanh_phi_integral(diag, 2.0 * (nu + 1.0), 2.0, z)?;
    let rg = recip_gamma(-nu);
    let constant = SQRT_2PI * (LN_2 + digamma(-nu * 0.5)?) * 0.5 * rg;
    Ok(SQRT_2PI * z * z * 0.5 * rg * integral + constant)
}

// ---------------------------------------------------------------------------
// classical Nicholson-type relations

fn dom_eq4(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re > -1.0, "ℜν > -1")?;
    require(!is_near_integer(p.nu, INTEGER_TOL), "non-integer ν")
}

fn durand_lhs(nu: C, z: C) -> Result<C> {
    let dp = d(nu, z)?;
    let dm = d(nu, -z)?;
    let s = (PI * nu).sin();
    let q = ((PI * nu).cos() * dp - dm) / s;
    Ok(dp * dp + q * q)
}

fn eq4_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    durand_lhs(p.nu, p.z)
}

fn eq4_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    let z2 = z * z;
    let f = |t: f64| -> Result<C> {
        let e = -(2.0 * nu + 1.0) * t + z2 * (0.5 * t.tanh()) - 0.5 * ln_sinh_2t(t);
        damped(e, || Ok(ONE))
    };
    let pref = 2.0 * 2f64.sqrt() * gamma(nu + 1.0)? / PI;
    Ok(pref * t_integral(diag, f, -0.5)?)
}

fn dom_eq5p(p: &ParameterPoint) -> DomainResult {
    dom_nu_negative(p)?;
    require(p.z == ZERO || (p.z * p.z).re > 0.0, "ℜz² > 0 or z = 0")
}

fn malyshev_rhs(diag: &mut Diagnostics, nu: C, z: C, s: f64) -> Result<C> {
    let z2 = z * z;
    let f = |t: f64| -> Result<C> {
        let denom = if s > 0.0 {
            (2.0 * t).exp_m1()
        } else {
            (2.0 * t).exp() + 1.0
        };
        let e = (2.0 * nu + 1.0) * t - s * z2 * (1.0 / denom) - 0.5 * ln_sinh_2t(t);
        damped(e, || Ok(ONE))
    };
    let pref = 2f64.sqrt() * (-z2 * 0.5).exp() * recip_gamma(-nu);
    Ok(pref * t_integral(diag, f, -0.5)?)
}

fn eq5p_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let v = d(p.nu, p.z)?;
    Ok(v * v)
}

fn eq5p_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    malyshev_rhs(diag, p.nu, p.z, 1.0)
}

fn eq5m_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(d(p.nu, p.z)? * d(p.nu, -p.z)?)
}

fn eq5m_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    malyshev_rhs(diag, p.nu, p.z, -1.0)
}

fn dom_eq6(p: &ParameterPoint) -> DomainResult {
    require(!is_near_integer(p.nu, INTEGER_TOL), "non-integer ν")
}

fn eq6_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let (nu, z) = (p.nu, p.z);
    let g = gamma(nu + 1.0)?;
    let k = -1.0 - nu;
    Ok(2.0 * g * g / PI * d(k, I * z)? * d(k, -I * z)?)
}

fn dom_eq7(p: &ParameterPoint) -> DomainResult {
    require(p.nu.re > -1.0, "ℜν > -1")
}

fn eq7_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let k = -1.0 - p.nu;
    let w = I * p.z;
    // ∂/∂ν D_{−1−ν} = −∂D_κ/∂κ at κ = −1−ν
    Ok(-d(k, w)? * d_dnu(k, -w)? + d(k, -w)? * d_dnu(k, w)?)
}

/// Integral of the erf-weighted kernel shared by the corrected and the
/// uncorrected prefactor.
fn erf_kernel_integral(diag: &mut Diagnostics, nu: C, z: C) -> Result<C> {
    let z2 = z * z;
    let f = |t: f64| -> Result<C> {
        let th = t.tanh();
        let e = -(2.0 * nu + 1.0) * t + z2 * (0.5 * th) - 0.5 * ln_sinh_2t(t);
        damped(e, || erf_via_pcf(z * (0.5 * th).sqrt()))
    };
    t_integral(diag, f, 0.0)
}

fn eq7_rhs(p: &ParameterPoint, diag: &mut Diagnostics) -> Result<C> {
    let integral = erf_kernel_integral(diag, p.nu, p.z)?;
    Ok(2f64.sqrt() * PI * I * recip_gamma(p.nu + 1.0) * integral)
}

/// The erf-kernel integral with the prefactor √(2π)·i/Γ(ν+1). It differs
/// from the derivative combination by a factor √π; kept for that check.
pub fn erf_kernel_with_sqrt_2pi_prefactor(p: &ParameterPoint) -> Result<C> {
    let mut diag = Diagnostics::default();
    let integral = erf_kernel_integral(&mut diag, p.nu, p.z)?;
    Ok(SQRT_2PI * I * recip_gamma(p.nu + 1.0) * integral)
}

fn dom_any(_: &ParameterPoint) -> DomainResult {
    Ok(())
}

fn eq24_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    connection_sides(p.nu, p.z).map(|(l, _)| l)
}

fn eq24_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(SQRT_2PI * recip_gamma(p.nu) * d(p.nu - 1.0, p.z)?)
}

// ---------------------------------------------------------------------------
// product series

/// The series expansions of products of parabolic cylinder functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVariant {
    /// Σ D_n(z)D_{μ+n−1}(z)/(n!(n+ν)) = Γ(ν) D_{−ν}(−z)D_{μ−ν−1}(z)
    Hermite,
    /// alternating form, = Γ(ν) D_{−ν}(z)D_{μ−ν−1}(z)
    HermiteAlternating,
    /// μ = 1, alternating: D_{−ν}(z)²
    HermiteSquareAlternating,
    /// μ = 1: D_{−ν}(z)D_{−ν}(−z)
    HermiteSquare,
    /// Laguerre form of D_{−ν}(z)²
    Laguerre,
    /// alternating Laguerre form, D_{−ν}(z)D_{−ν}(−z)
    LaguerreAlternating,
}

impl SeriesVariant {
    pub const ALL: [SeriesVariant; 6] = [
        SeriesVariant::Hermite,
        SeriesVariant::HermiteAlternating,
        SeriesVariant::HermiteSquareAlternating,
        SeriesVariant::HermiteSquare,
        SeriesVariant::Laguerre,
        SeriesVariant::LaguerreAlternating,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SeriesVariant::Hermite => "eq59",
            SeriesVariant::HermiteAlternating => "eq60",
            SeriesVariant::HermiteSquareAlternating => "eq61p",
            SeriesVariant::HermiteSquare => "eq61m",
            SeriesVariant::Laguerre => "eq63",
            SeriesVariant::LaguerreAlternating => "eq64",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.id() == id)
    }

    fn domain(self) -> DomainPredicate {
        match self {
            SeriesVariant::Hermite => dom_eq59,
            SeriesVariant::HermiteAlternating => dom_eq60,
            SeriesVariant::HermiteSquareAlternating => dom_eq61p,
            SeriesVariant::HermiteSquare => dom_eq61m,
            SeriesVariant::Laguerre | SeriesVariant::LaguerreAlternating => dom_eq63,
        }
    }
}

const SERIES_LEVELS: u32 = 7;

fn levels(n_max: usize) -> Vec<usize> {
    (0..SERIES_LEVELS).rev().map(|k| (n_max >> k).max(1)).collect()
}

/// Evaluates a product series with tapered partial sums and Richardson
/// extrapolation in the cutoff.
pub fn series_sum_product(variant: SeriesVariant, point: &ParameterPoint, ctl: &SeriesControl) -> Result<C> {
    (variant.domain())(point).map_err(|reason| Error::OutOfDomain {
        id: variant.id().to_string(),
        reason,
    })?;
    let n_max = ctl.max_terms.max(1 << SERIES_LEVELS);
    let (nu, z) = (point.nu, point.z);
    let (mu, alternating) = match variant {
        SeriesVariant::Hermite => (point.mu, false),
        SeriesVariant::HermiteAlternating => (point.mu, true),
        SeriesVariant::HermiteSquareAlternating => (ONE, true),
        SeriesVariant::HermiteSquare => (ONE, false),
        SeriesVariant::Laguerre => return laguerre_series(nu, z, false, n_max, ctl),
        SeriesVariant::LaguerreAlternating => return laguerre_series(nu, z, true, n_max, ctl),
    };
    let terms = hermite_terms(nu, mu, z, alternating, n_max)?;
    let lv = levels(n_max);
    let sums = tapered_sums(&terms, &lv);
    let s0 = 1.0 - 0.5 * mu.re;
    let exponents: Vec<f64> = (0..SERIES_LEVELS - 2).map(|k| s0 + 0.5 * k as f64).collect();
    let best = richardson(&sums, &exponents);
    accept(variant, best.value, best.error_estimate, n_max, ctl).map(|s| recip_gamma(nu) * s)
}

fn accept(variant: SeriesVariant, value: C, err: f64, n_max: usize, ctl: &SeriesControl) -> Result<C> {
    if err <= ctl.rel_tol * value.norm() || value.norm() == 0.0 && err == 0.0 {
        Ok(value)
    } else {
        Err(Error::SeriesNonConvergence {
            what: match variant {
                SeriesVariant::Laguerre | SeriesVariant::LaguerreAlternating => "Laguerre product series",
                _ => "Hermite product series",
            },
            limit: n_max,
        })
    }
}

/// Terms D_n(z)D_{μ+n−1}(z)/(n!(n+ν)), with D_n/√n! and D_{μ+n−1}/√n! from
/// normalised three-term recurrences (the Hermite recurrence for integer
/// order, started at e^{−z²/4} and z e^{−z²/4}).
fn hermite_terms(nu: C, mu: C, z: C, alternating: bool, n_max: usize) -> Result<Vec<C>> {
    let mut h_prev = (-z * z * 0.25).exp();
    let mut h = z * h_prev;
    let mut e_prev = d(mu - 1.0, z)?;
    let mut e = d(mu, z)?;
    let mut terms = Vec::with_capacity(n_max);
    terms.push(h_prev * e_prev / nu);
    let sign = if alternating { -1.0 } else { 1.0 };
    let mut s = sign;
    for n in 1..n_max {
        terms.push(s * h * e / (nu + n as f64));
        s *= sign;
        let nf = n as f64;
        let r = (nf + 1.0).sqrt();
        let h_next = (z * h - nf.sqrt() * h_prev) / r;
        let e_next = (z * e - (mu + nf - 1.0) / nf.sqrt() * e_prev) / r;
        h_prev = h;
        h = h_next;
        e_prev = e;
        e = e_next;
    }
    Ok(terms)
}

fn laguerre_series(nu: C, z: C, alternating: bool, n_max: usize, ctl: &SeriesControl) -> Result<C> {
    let x = z * z;
    let pref = PI * (-x * 0.5).exp();
    let sign = if alternating { -1.0 } else { 1.0 };
    let coefficient = |n: u32| -> Result<C> {
        let half = (1.0 + n as f64 + nu) * 0.5;
        let r = recip_gamma(half);
        Ok((-(nu + n as f64) * LN_2).exp() * pochhammer(nu, n) * r * r)
    };
    if is_nonpositive_integer(nu) {
        // finite sum: (ν)_n vanishes beyond n = −ν
        let m = (-nu.re).round() as u32;
        let mut acc = ZERO;
        let mut s = 1.0;
        for n in 0..=m {
            acc += s * crate::hypergeom::laguerre(n, -1.0, x) * coefficient(n)?;
            s *= sign;
        }
        return Ok(pref * acc);
    }
    let mut c = [coefficient(0)?, coefficient(1)?];
    let mut l_prev = ONE;
    let mut l = -x;
    let mut terms = Vec::with_capacity(n_max);
    terms.push(l_prev * c[0]);
    let mut s = sign;
    for n in 1..n_max {
        terms.push(s * l * c[n % 2]);
        s *= sign;
        // c_{n+1} from c_{n−1}
        let m = (n - 1) as f64;
        c[(n + 1) % 2] = c[(n + 1) % 2] * (nu + m) / (nu + m + 1.0);
        let nf = n as f64;
        let l_next = ((2.0 * nf - x) * l - (nf - 1.0) * l_prev) / (nf + 1.0);
        l_prev = l;
        l = l_next;
    }
    let sums = tapered_sums(&terms, &levels(n_max));
    let best = richardson(&sums, &[]);
    let variant = if alternating {
        SeriesVariant::LaguerreAlternating
    } else {
        SeriesVariant::Laguerre
    };
    accept(variant, best.value, best.error_estimate, n_max, ctl).map(|s| pref * s)
}

fn dom_series_common(p: &ParameterPoint) -> DomainResult {
    require(!is_nonpositive_integer(p.nu), "ν not a nonpositive integer")?;
    require(is_real(p.z), "real z")
}

fn dom_eq59(p: &ParameterPoint) -> DomainResult {
    dom_series_common(p)?;
    require(is_real(p.mu) && p.mu.re < 1.5, "real μ < 3/2")
}

fn dom_eq60(p: &ParameterPoint) -> DomainResult {
    dom_eq59(p)?;
    require(p.z.re >= 0.0, "z ≥ 0")
}

fn dom_eq61p(p: &ParameterPoint) -> DomainResult {
    dom_series_common(p)?;
    require(p.z.re >= 0.0, "z ≥ 0")
}

fn dom_eq61m(p: &ParameterPoint) -> DomainResult {
    dom_series_common(p)
}

fn dom_eq63(p: &ParameterPoint) -> DomainResult {
    if is_nonpositive_integer(p.nu) {
        return Ok(());
    }
    require(is_real(p.z) && p.z.re > 0.0, "real z > 0 (or ν a nonpositive integer)")
}

fn series_rhs(variant: SeriesVariant, p: &ParameterPoint) -> Result<C> {
    series_sum_product(variant, p, &SeriesControl::product_series())
}

fn eq59_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(d(-p.nu, -p.z)? * d(p.mu - p.nu - 1.0, p.z)?)
}

fn eq59_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    series_rhs(SeriesVariant::Hermite, p)
}

fn eq60_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(d(-p.nu, p.z)? * d(p.mu - p.nu - 1.0, p.z)?)
}

fn eq60_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    series_rhs(SeriesVariant::HermiteAlternating, p)
}

fn square_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    let v = d(-p.nu, p.z)?;
    Ok(v * v)
}

fn reflected_lhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    Ok(d(-p.nu, p.z)? * d(-p.nu, -p.z)?)
}

fn eq61p_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    series_rhs(SeriesVariant::HermiteSquareAlternating, p)
}

fn eq61m_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    series_rhs(SeriesVariant::HermiteSquare, p)
}

fn eq63_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    series_rhs(SeriesVariant::Laguerre, p)
}

fn eq64_rhs(p: &ParameterPoint, _: &mut Diagnostics) -> Result<C> {
    series_rhs(SeriesVariant::LaguerreAlternating, p)
}

// ---------------------------------------------------------------------------
// catalog

const TOL_QUAD: f64 = 1e-8;
const TOL_SERIES: f64 = 1e-7;
const TOL_DERIVATIVE: f64 = 1e-5;
const TOL_CLOSED: f64 = 1e-9;

static CATALOG: [IdentityDescriptor; 28] = [
    IdentityDescriptor {
        id: "eq12",
        label: "Gaussian-weighted Laplace transform of Phi, purely imaginary a",
        domain_text: "Re a = 0, a != 0, Re mu > 0, Re z > 0",
        anchor: "a^{nu/2-mu/2}/(-a)^{nu/2} D_{-nu}(z/sqrt(-a)) D_{nu-mu}(z/sqrt(a))",
        lhs: eq12_lhs,
        rhs: eq12_rhs,
        domain: dom_eq12,
        default_tol: TOL_QUAD,
        notes: "principal a^{.}, (-a)^{.}, sqrt(a), sqrt(-a); rhs integrates the oscillatory Gaussian on envelope-truncated panels",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq19",
        label: "Gaussian-weighted Laplace transform of Psi",
        domain_text: "0 < Re mu < 2, mu non-integer, Re a >= 0, a != 0 (Re z > 0 when Re a = 0)",
        anchor: "sqrt(2) a^{mu/2} sin(pi mu)/sqrt(pi) int x^{mu-1} e^{-zx-ax^2/2} Psi(nu,mu;ax^2)",
        lhs: eq19_lhs,
        rhs: eq19_rhs,
        domain: dom_eq19,
        default_tol: TOL_QUAD,
        notes: "w = iz/sqrt(a) with principal sqrt",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq20",
        label: "sine transform with phase pi mu/2",
        domain_text: "0 < Re mu < 2, mu non-integer, Re a > 0, real z",
        anchor: "sin(zx + pi mu/2) x^{mu-1} e^{-ax^2/2} Psi(nu,mu;ax^2)",
        lhs: eq20_lhs,
        rhs: eq20_rhs,
        domain: dom_eq20,
        default_tol: TOL_QUAD,
        notes: "purely imaginary a rejected; z/sqrt(a) principal",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq26",
        label: "cosine transform",
        domain_text: "0 < Re mu < 2, mu non-integer, Re a > 0",
        anchor: "4 a^{mu/2}/sqrt(2 pi) sin(pi mu/2) int cos(zx) x^{mu-1} e^{-ax^2/2} Psi",
        lhs: eq26_lhs,
        rhs: eq26_rhs,
        domain: dom_eq26,
        default_tol: TOL_QUAD,
        notes: "lhs is the integral; rhs the even combination of D products",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq27",
        label: "sine transform",
        domain_text: "-1 < Re mu < 3, mu non-integer, Re a > 0",
        anchor: "4 a^{mu/2}/sqrt(2 pi) cos(pi mu/2) int sin(zx) x^{mu-1} e^{-ax^2/2} Psi",
        lhs: eq27_lhs,
        rhs: eq27_rhs,
        domain: dom_eq27,
        default_tol: TOL_QUAD,
        notes: "lhs is the integral; rhs the odd combination of D products",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq31",
        label: "Laplace transform of J_{nu-1/2}(x^2/2)",
        domain_text: "Re nu > 0, Re z > 0",
        anchor: "D_{-nu}(z e^{i pi/4}) D_{-nu}(z e^{-i pi/4}) = sqrt(pi)/Gamma(nu) int e^{-zx} J_{nu-1/2}(x^2/2)",
        lhs: eq31_lhs,
        rhs: eq31_rhs,
        domain: dom_eq31,
        default_tol: TOL_QUAD,
        notes: "J from Phi(nu, 2nu; i x^2); Re z = 0 excluded for absolute convergence",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq32",
        label: "sine transform of K_{nu-1/2}(x^2/2)",
        domain_text: "0 < Re nu < 1",
        anchor: "sqrt(2)/pi int sin(zx + pi nu) K_{nu-1/2}(x^2/2)",
        lhs: eq32_lhs,
        rhs: eq32_rhs,
        domain: dom_eq32,
        default_tol: TOL_QUAD,
        notes: "K from Psi(nu, 2nu; x^2); 2nu = 1 falls back to the Laplace integral of Psi",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq34",
        label: "Gaussian transform of Phi(nu, nu+1/2; x^2)",
        domain_text: "Re nu > 0",
        anchor: "e^{z^2/2} D_{-nu}(z)^2 = 2^{2nu}/Gamma(2nu) int x^{2nu-1} e^{-2zx-2x^2} Phi(nu,nu+1/2;x^2)",
        lhs: eq34_lhs,
        rhs: eq34_rhs,
        domain: dom_eq34,
        default_tol: TOL_QUAD,
        notes: "",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq35",
        label: "cosh-weighted Gaussian transform of Psi(nu, nu+1/2; x^2)",
        domain_text: "Re nu > 0, nu + 1/2 non-integer",
        anchor: "cosh(2zx) x^{2nu-1} e^{-2x^2} Psi(nu,nu+1/2;x^2)",
        lhs: eq35_lhs,
        rhs: eq35_rhs,
        domain: dom_eq35,
        default_tol: TOL_QUAD,
        notes: "integer nu + 1/2 rejected by the Psi two-term form",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq36",
        label: "cosine-weighted Gaussian transform of Phi(1/2, nu+1/2; x^2)",
        domain_text: "nu + 1/2 not a nonpositive integer",
        anchor: "cos(2zx) e^{-2x^2} Phi(1/2,nu+1/2;x^2)",
        lhs: eq36_lhs,
        rhs: eq36_rhs,
        domain: dom_eq36,
        default_tol: TOL_QUAD,
        notes: "",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq43",
        label: "Nicholson-type integral for D_nu(z) D_{nu+mu-1}(z)",
        domain_text: "Re nu < 0, |arg z| < pi/4",
        anchor: "D_{mu-1}(z sqrt(coth t)) (sinh 2t)^{-mu/2}",
        lhs: eq43_lhs,
        rhs: eq43_rhs,
        domain: dom_eq43,
        default_tol: TOL_QUAD,
        notes: "principal (sinh 2t)^{-mu/2}; z sqrt(coth t) keeps arg z",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq48",
        label: "Nicholson-type integral for D_nu(-z) D_{nu+mu-1}(z)",
        domain_text: "Re mu < 2, Re nu < 0",
        anchor: "D_{mu-1}(z sqrt(tanh t)) (sinh 2t)^{-mu/2}",
        lhs: eq48_lhs,
        rhs: eq48_rhs,
        domain: dom_eq48,
        default_tol: TOL_QUAD,
        notes: "integrand ~ t^{-mu/2} at 0, handled by tanh-sinh",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq53",
        label: "even part of the tanh-kernel integral",
        domain_text: "Re mu < 2, Re nu < 0",
        anchor: "Phi(mu/2, 1/2; -z^2 tanh(t)/2)",
        lhs: eq53_lhs,
        rhs: eq53_rhs,
        domain: dom_eq53,
        default_tol: TOL_QUAD,
        notes: "",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq54",
        label: "odd part of the tanh-kernel integral",
        domain_text: "Re mu < 3, Re nu < 0",
        anchor: "sqrt(tanh t) Phi(1/2 + mu/2, 3/2; -z^2 tanh(t)/2)",
        lhs: eq54_lhs,
        rhs: eq54_rhs,
        domain: dom_eq54,
        default_tol: TOL_QUAD,
        notes: "principal sqrt(tanh t)",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq55",
        label: "order-derivative Wronskian-type combination",
        domain_text: "Re nu < 0",
        anchor: "Phi(1, 3/2; -z^2 tanh(t)/2) e^{(2nu+1)t}/cosh t",
        lhs: eq55_lhs,
        rhs: eq55_rhs,
        domain: dom_nu_negative,
        default_tol: TOL_DERIVATIVE,
        notes: "lhs uses finite-difference derivatives in nu (step 1e-3, order 4, one Richardson level)",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq56",
        label: "order-derivative combination with a digamma constant",
        domain_text: "Re nu < 0",
        anchor: "ln 2 + psi(-nu/2)",
        lhs: eq56_lhs,
        rhs: eq56_rhs,
        domain: dom_nu_negative,
        default_tol: TOL_DERIVATIVE,
        notes: "report-only: discrepancies are recorded, not asserted",
        report_only: true,
    },
    IdentityDescriptor {
        id: "eq4",
        label: "Durand's Nicholson-type integral",
        domain_text: "Re nu > -1, non-integer nu",
        anchor: "cos(pi nu) D_nu(z) - D_nu(-z)",
        lhs: eq4_lhs,
        rhs: eq4_rhs,
        domain: dom_eq4,
        default_tol: TOL_QUAD,
        notes: "lhs divides by sin^2(pi nu); grids keep nu at least 0.1 from the integers",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq5p",
        label: "Malyshev integral for D_nu(z)^2",
        domain_text: "Re nu < 0, Re z^2 > 0 or z = 0",
        anchor: "z^2 (e^{2t} - 1)^{-1}",
        lhs: eq5p_lhs,
        rhs: eq5p_rhs,
        domain: dom_eq5p,
        default_tol: TOL_QUAD,
        notes: "Re z^2 > 0 needed for convergence at t = 0",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq5m",
        label: "Malyshev integral for D_nu(z) D_nu(-z)",
        domain_text: "Re nu < 0",
        anchor: "z^2 (e^{2t} + 1)^{-1}",
        lhs: eq5m_lhs,
        rhs: eq5m_rhs,
        domain: dom_eq5m,
        default_tol: TOL_QUAD,
        notes: "",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq6",
        label: "cross-relation between the Durand and Malyshev forms",
        domain_text: "non-integer nu",
        anchor: "2 Gamma(nu+1)^2/pi D_{-1-nu}(iz) D_{-1-nu}(-iz)",
        lhs: eq4_lhs,
        rhs: eq6_rhs,
        domain: dom_eq6,
        default_tol: TOL_QUAD,
        notes: "both sides closed form; lhs at z and -z, rhs at +-iz",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq7",
        label: "Elbert-Muldoon derivative identity",
        domain_text: "Re nu > -1",
        anchor: "erf(z (tanh(t)/2)^{1/2}) / sqrt(sinh 2t)",
        lhs: eq7_lhs,
        rhs: eq7_rhs,
        domain: dom_eq7,
        default_tol: TOL_DERIVATIVE,
        notes: "prefactor sqrt(2)*pi*i/Gamma(nu+1); lhs uses finite-difference derivatives in nu",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq24",
        label: "connection formula",
        domain_text: "all nu, z",
        anchor: "e^{i pi (nu-1)/2} D_{-nu}(iz) + e^{-i pi (nu-1)/2} D_{-nu}(-iz)",
        lhs: eq24_lhs,
        rhs: eq24_rhs,
        domain: dom_any,
        default_tol: TOL_CLOSED,
        notes: "closed form on both sides",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq59",
        label: "Hermite-product series",
        domain_text: "real z, real mu < 3/2, nu not a nonpositive integer",
        anchor: "D_n(z) D_{mu+n-1}(z) / (n! (n + nu))",
        lhs: eq59_lhs,
        rhs: eq59_rhs,
        domain: dom_eq59,
        default_tol: TOL_SERIES,
        notes: "tapered partial sums with Richardson extrapolation in the cutoff",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq60",
        label: "alternating Hermite-product series",
        domain_text: "real z >= 0, real mu < 3/2, nu not a nonpositive integer",
        anchor: "(-1)^n D_n(z) D_{mu+n-1}(z)",
        lhs: eq60_lhs,
        rhs: eq60_rhs,
        domain: dom_eq60,
        default_tol: TOL_SERIES,
        notes: "tapered partial sums with Richardson extrapolation in the cutoff",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq61p",
        label: "alternating Hermite-square series for D_{-nu}(z)^2",
        domain_text: "real z >= 0, nu not a nonpositive integer",
        anchor: "(-1)^n D_n(z)^2",
        lhs: square_lhs,
        rhs: eq61p_rhs,
        domain: dom_eq61p,
        default_tol: TOL_SERIES,
        notes: "mu = 1 case of the alternating series",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq61m",
        label: "Hermite-square series for D_{-nu}(z) D_{-nu}(-z)",
        domain_text: "real z, nu not a nonpositive integer",
        anchor: "D_n(z)^2 / (n! (n + nu))",
        lhs: reflected_lhs,
        rhs: eq61m_rhs,
        domain: dom_eq61m,
        default_tol: TOL_SERIES,
        notes: "mu = 1 case of the non-alternating series",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq63",
        label: "Laguerre series for D_{-nu}(z)^2",
        domain_text: "real z > 0, or nu a nonpositive integer",
        anchor: "L_n^{-1}(z^2) 2^{-nu-n} (nu)_n / Gamma((1+n+nu)/2)^2",
        lhs: square_lhs,
        rhs: eq63_rhs,
        domain: dom_eq63,
        default_tol: TOL_SERIES,
        notes: "finite sum for nonpositive integer nu",
        report_only: false,
    },
    IdentityDescriptor {
        id: "eq64",
        label: "alternating Laguerre series for D_{-nu}(z) D_{-nu}(-z)",
        domain_text: "real z > 0, or nu a nonpositive integer",
        anchor: "(-1)^n L_n^{-1}(z^2)",
        lhs: reflected_lhs,
        rhs: eq64_rhs,
        domain: dom_eq63,
        default_tol: TOL_SERIES,
        notes: "finite sum for nonpositive integer nu",
        report_only: false,
    },
];

fn dom_eq5m(p: &ParameterPoint) -> DomainResult {
    dom_nu_negative(p)
}

/// Every catalog entry, in a fixed order.
pub fn catalog() -> &'static [IdentityDescriptor] {
    &CATALOG
}

/// Looks up an entry by id.
pub fn descriptor(id: &str) -> Result<&'static IdentityDescriptor> {
    CATALOG
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Checks the domain predicate of `id` at `point`.
pub fn check_domain(id: &str, point: &ParameterPoint) -> Result<()> {
    let desc = descriptor(id)?;
    if !point.is_finite() {
        return Err(Error::OutOfDomain {
            id: id.to_string(),
            reason: "parameters must be finite".into(),
        });
    }
    (desc.domain)(point).map_err(|reason| Error::OutOfDomain {
        id: id.to_string(),
        reason,
    })
}

/// Evaluates both sides of `id` at `point` and compares them.
///
/// Evaluation failures inside a side (non-convergence, poles) produce a
/// failing record with the error in its diagnostics.
pub fn verify(id: &str, point: &ParameterPoint, tol: f64) -> Result<VerificationRecord> {
    let desc = descriptor(id)?;
    check_domain(id, point)?;
    let mut diag = Diagnostics {
        side: "lhs",
        ..Default::default()
    };
    let lhs = (desc.lhs)(point, &mut diag);
    diag.side = "rhs";
    let rhs = (desc.rhs)(point, &mut diag);
    let nan = C::new(f64::NAN, f64::NAN);
    let (lhs_value, rhs_value) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            let msg = [("lhs", l.as_ref().err()), ("rhs", r.as_ref().err())]
                .iter()
                .filter_map(|(s, e)| e.map(|e| format!("{s}: {e}")))
                .collect::<Vec<_>>()
                .join("; ");
            diag.error = Some(msg);
            (l.unwrap_or(nan), r.unwrap_or(nan))
        }
    };
    let abs_err = (lhs_value - rhs_value).norm();
    let scale = lhs_value.norm() + rhs_value.norm();
    let rel_err = abs_err / (scale + 1e-300);
    let pass = diag.error.is_none() && (rel_err <= tol || (scale < 1e-12 && abs_err <= tol));
    Ok(VerificationRecord {
        identity_id: id.to_string(),
        point: *point,
        lhs_value,
        rhs_value,
        abs_err,
        rel_err,
        tolerance: tol,
        pass,
        report_only: desc.report_only,
        diagnostics: diag,
    })
}

/// [`verify`] over a list of points, in parallel, preserving input order.
/// Out-of-domain points become [`GridOutcome::Skipped`].
pub fn verify_grid(id: &str, grid: &[ParameterPoint], tol: f64) -> Result<Vec<GridOutcome>> {
    descriptor(id)?;
    grid.par_iter()
        .map(|p| match verify(id, p, tol) {
            Ok(r) => Ok(GridOutcome::Verified(r)),
            Err(Error::OutOfDomain { reason, .. }) => Ok(GridOutcome::Skipped { point: *p, reason }),
            Err(e) => Err(e),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// cross-identity consistency

/// Pairs of independently computed quantities that must coincide when two
/// catalog entries are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Triangle {
    /// Durand integral scaled by π/(2Γ(ν+1)²) against the Malyshev
    /// integral for D_ν'(z')D_ν'(−z') at ν' = −1−ν, z' = iz.
    DurandMalyshev,
    /// Half the difference of the even and odd tanh-kernel integrals
    /// against the Nicholson-type tanh integral.
    EvenOddRecombination,
    /// Half the sum of the cosine and sine transforms against the phased
    /// sine transform.
    FourierRecombination,
    /// coth-kernel integral at μ = 1 against the Malyshev integral for D_ν(z)².
    MuReduction,
}

/// Evaluates both quantities of a triangle; the caller compares them.
pub fn consistency_triangle(kind: Triangle, p: &ParameterPoint) -> Result<(C, C)> {
    let mut diag = Diagnostics::default();
    let shared = |id: &str, q: &ParameterPoint| check_domain(id, q);
    match kind {
        Triangle::DurandMalyshev => {
            shared("eq4", p)?;
            let q = ParameterPoint {
                nu: -1.0 - p.nu,
                z: I * p.z,
                ..*p
            };
            shared("eq5m", &q)?;
            let g = gamma(p.nu + 1.0)?;
            let left = eq4_rhs(p, &mut diag)? * PI / (2.0 * g * g);
            Ok((left, eq5m_rhs(&q, &mut diag)?))
        }
        Triangle::EvenOddRecombination => {
            shared("eq53", p)?;
            shared("eq54", p)?;
            shared("eq48", p)?;
            let left = (eq53_rhs(p, &mut diag)? - eq54_rhs(p, &mut diag)?) * 0.5;
            Ok((left, eq48_rhs(p, &mut diag)?))
        }
        Triangle::FourierRecombination => {
            shared("eq26", p)?;
            shared("eq27", p)?;
            shared("eq20", p)?;
            let left = (eq26_lhs(p, &mut diag)? + eq27_lhs(p, &mut diag)?) * 0.5;
            Ok((left, eq20_rhs(p, &mut diag)?))
        }
        Triangle::MuReduction => {
            let q = p.with_mu(ONE);
            shared("eq43", &q)?;
            shared("eq5p", &q)?;
            Ok((eq43_rhs(&q, &mut diag)?, eq5p_rhs(&q, &mut diag)?))
        }
    }
}

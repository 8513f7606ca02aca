//! Parabolic cylinder functions D_ν(z) and derived quantities.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::gammakit::recip_gamma;
use crate::hypergeom::{phi, psi, SeriesControl};
use crate::quad::{try_integrate_decay, try_integrate_left_singular, QuadSpec};
use crate::{Error, Result};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const SQRT_PI: f64 = 1.772_453_850_905_516;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Which line of the defining formula evaluates D_ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PcfRoute {
    /// 2^{ν/2}e^{−z²/4}[√π/Γ(½−ν/2)·Φ(−ν/2,½;z²/2) − √(2π)z/Γ(−ν/2)·Φ(½−ν/2,3/2;z²/2)]
    PhiCombination,
    /// 2^{ν/2}e^{−z²/4}Ψ(−ν/2, ½; z²/2), valid for Re z > 0.
    PsiForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfEvalPolicy {
    pub route: PcfRoute,
    /// Step for differentiation in ν.
    pub deriv_step: f64,
    /// Finite-difference order, 2 or 4.
    pub deriv_order: u8,
}

impl Default for PcfEvalPolicy {
    fn default() -> Self {
        Self {
            route: PcfRoute::PhiCombination,
            deriv_step: 1e-3,
            deriv_order: 4,
        }
    }
}

impl PcfEvalPolicy {
    pub fn new(route: PcfRoute, deriv_step: f64, deriv_order: u8) -> Result<Self> {
        if !(deriv_step > 0.0 && deriv_step <= 0.1) {
            return Err(Error::Precondition("deriv_step must lie in (0, 0.1]".into()));
        }
        if deriv_order != 2 && deriv_order != 4 {
            return Err(Error::Precondition("deriv_order must be 2 or 4".into()));
        }
        Ok(Self {
            route,
            deriv_step,
            deriv_order,
        })
    }

    pub fn with_route(route: PcfRoute) -> Self {
        Self {
            route,
            ..Self::default()
        }
    }
}

/// The route actually taken by [`pcf_d_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteTaken {
    PhiCombination,
    PsiForm,
    /// Φ combination requested, but the point lies in the recessive sector
    /// where the two terms cancel; Ψ form used instead.
    PsiFallback,
}

/// Cancellation factor above which the Φ combination hands over to Ψ.
const CANCELLATION_LIMIT: f64 = 1e4;
/// Beyond this radius, inside the sector |arg z| < π/4 + 0.2, the Φ
/// combination is known to cancel and Ψ is used directly.
const RECESSIVE_RADIUS: f64 = 4.0;

/// D_ν(z).
pub fn pcf_d(nu: C, z: C, policy: &PcfEvalPolicy) -> Result<C> {
    pcf_d_traced(nu, z, policy).map(|(v, _)| v)
}

/// D_ν(z) together with the evaluation route.
pub fn pcf_d_traced(nu: C, z: C, policy: &PcfEvalPolicy) -> Result<(C, RouteTaken)> {
    match policy.route {
        PcfRoute::PsiForm => Ok((d_psi_form(nu, z)?, RouteTaken::PsiForm)),
        PcfRoute::PhiCombination => {
            let recessive = z.re > 0.0 && z.arg().abs() < FRAC_PI_4 + 0.2;
            if recessive && z.norm() > RECESSIVE_RADIUS {
                return Ok((d_psi_form(nu, z)?, RouteTaken::PsiFallback));
            }
            let (v, loss) = d_phi_combination(nu, z)?;
            if loss > CANCELLATION_LIMIT && z.re > 0.0 {
                return Ok((d_psi_form(nu, z)?, RouteTaken::PsiFallback));
            }
            Ok((v, RouteTaken::PhiCombination))
        }
    }
}

fn d_phi_combination(nu: C, z: C) -> Result<(C, f64)> {
    let ctl = SeriesControl::kummer();
    let x = z * z * 0.5;
    let r1 = recip_gamma(0.5 - nu * 0.5);
    let r2 = recip_gamma(-nu * 0.5);
    let t1 = if r1 == ZERO {
        ZERO
    } else {
        SQRT_PI * r1 * phi(-nu * 0.5, C::new(0.5, 0.0), x, &ctl)?
    };
    let t2 = if r2 == ZERO || z == ZERO {
        ZERO
    } else {
        SQRT_2PI * z * r2 * phi(0.5 - nu * 0.5, C::new(1.5, 0.0), x, &ctl)?
    };
    let bracket = t1 - t2;
    let loss = if bracket == ZERO {
        f64::INFINITY
    } else {
        (t1.norm() + t2.norm()) / bracket.norm()
    };
    let prefactor = (nu * (0.5 * LN_2) - z * z * 0.25).exp();
    Ok((prefactor * bracket, loss))
}

fn d_psi_form(nu: C, z: C) -> Result<C> {
    if !(z.re > 0.0) {
        return Err(Error::Precondition(
            "the Psi form of D_nu(z) represents D_nu only for Re z > 0".into(),
        ));
    }
    let ctl = SeriesControl::kummer();
    let u = psi(-nu * 0.5, C::new(0.5, 0.0), z * z * 0.5, &ctl)?;
    Ok((nu * (0.5 * LN_2) - z * z * 0.25).exp() * u)
}

/// ∂D_ν(z)/∂ν by central differences with one Richardson level.
pub fn pcf_d_dnu(nu: C, z: C, policy: &PcfEvalPolicy) -> Result<C> {
    let h = policy.deriv_step;
    let d = |h: f64| -> Result<C> {
        let f = |k: f64| pcf_d(nu + k * h, z, policy);
        match policy.deriv_order {
            2 => Ok((f(1.0)? - f(-1.0)?) / (2.0 * h)),
            _ => Ok((f(-2.0)? - 8.0 * f(-1.0)? + 8.0 * f(1.0)? - f(2.0)?) / (12.0 * h)),
        }
    };
    let coarse = d(h)?;
    let fine = d(0.5 * h)?;
    let r = if policy.deriv_order == 2 { 4.0 } else { 16.0 };
    Ok((r * fine - coarse) / (r - 1.0))
}

/// Relative defect of the connection formula
/// e^{iπ(ν−1)/2}D_{−ν}(iz) + e^{−iπ(ν−1)/2}D_{−ν}(−iz) = √(2π)/Γ(ν)·D_{ν−1}(z).
pub fn connection_defect(nu: C, z: C) -> Result<f64> {
    let (lhs, rhs) = connection_sides(nu, z)?;
    Ok((lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1e-300))
}

pub(crate) fn connection_sides(nu: C, z: C) -> Result<(C, C)> {
    let p = PcfEvalPolicy::default();
    let i = C::new(0.0, 1.0);
    let phase = (i * (0.5 * PI) * (nu - 1.0)).exp();
    let lhs = phase * pcf_d(-nu, i * z, &p)? + pcf_d(-nu, -i * z, &p)? / phase;
    let rhs = SQRT_2PI * recip_gamma(nu) * pcf_d(nu - 1.0, z, &p)?;
    Ok((lhs, rhs))
}

/// erf(z) = 1 − √(2/π)e^{−z²/2}D_{−1}(z√2).
pub fn erf_via_pcf(z: C) -> Result<C> {
    let d = pcf_d(C::new(-1.0, 0.0), z * 2f64.sqrt(), &PcfEvalPolicy::default())?;
    Ok(1.0 - (2.0 / PI).sqrt() * (-z * z * 0.5).exp() * d)
}

/// J_{ν−½}(x²/2) from its confluent hypergeometric form with argument ix².
pub fn bessel_j_halforder(nu: C, x: f64) -> Result<C> {
    if !(x > 0.0) {
        return Err(Error::Precondition("x must be positive".into()));
    }
    let x2 = x * x;
    let i = C::new(0.0, 1.0);
    let ph = phi(nu, 2.0 * nu, i * x2, &SeriesControl::kummer())?;
    let pref = ((1.0 - 2.0 * nu) * LN_2 + (2.0 * nu - 1.0) * x.ln() - i * (0.5 * x2)).exp();
    Ok(pref * recip_gamma(nu + 0.5) * ph)
}

/// K_{ν−½}(x²/2) = √π x^{2ν−1}e^{−x²/2}Ψ(ν, 2ν; x²). Integer 2ν goes
/// through the Laplace integral of Ψ, rescaled by t = s/x² so that small x
/// stays well conditioned.
pub fn bessel_k_halforder(nu: C, x: f64) -> Result<C> {
    if !(x > 0.0) {
        return Err(Error::Precondition("x must be positive".into()));
    }
    let x2 = x * x;
    match psi(nu, 2.0 * nu, C::new(x2, 0.0), &SeriesControl::kummer()) {
        Err(Error::IntegerMu(_)) => {}
        r => {
            let pref = ((2.0 * nu - 1.0) * x.ln() - 0.5 * x2).exp();
            return Ok(SQRT_PI * pref * r?);
        }
    }
    if !(nu.re > 0.0) {
        return Err(Error::Precondition("integer 2nu needs Re nu > 0".into()));
    }
    // √π e^{−x²/2} x^{1−2ν}/Γ(ν) ∫₀^∞ e^{−s} s^{ν−1}(s + x²)^{ν−1} ds, split
    // at s = x²: below as s = x²u, above as s = x²e^w
    let ln_x2 = x2.ln();
    let below = |u: f64| -> Result<C> { Ok(((nu - 1.0) * (u.ln() + u.ln_1p()) - x2 * u).exp()) };
    let above = |w: f64| -> Result<C> {
        let s = x2 * w.exp();
        if s > 2000.0 {
            return Ok(C::new(0.0, 0.0));
        }
        let e = nu * (ln_x2 + w) + (nu - 1.0) * (ln_x2 + w + (-w).exp().ln_1p()) - s;
        if e.re < -745.0 {
            return Ok(C::new(0.0, 0.0));
        }
        Ok(e.exp())
    };
    let spec = QuadSpec::new(1e-15, 1e-13, 400_000, (-ln_x2).max(0.0) + 4.0)?;
    let lower = try_integrate_left_singular(below, 1.0, (nu.re - 1.0).min(0.0), &spec)?.value;
    let upper = try_integrate_decay(above, &spec)?.value;
    let integral = (2.0 * (nu - 1.0) * ln_x2 + ln_x2).exp() * lower + upper;
    let pref = ((1.0 - 2.0 * nu) * x.ln() - 0.5 * x2).exp();
    Ok(SQRT_PI * pref * recip_gamma(nu) * integral)
}

/// D_n(z) for integer n via the Hermite recurrence He_{k+1} = z He_k − k He_{k−1}.
pub fn hermite_case(n: u32, z: C) -> C {
    let mut prev = C::new(1.0, 0.0);
    let mut cur = z;
    if n == 0 {
        cur = prev;
    }
    for k in 1..n {
        let next = z * cur - (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    (-z * z * 0.25).exp() * cur
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h <= 0.05 {
        Ok(())
    } else {
        Err(Error::Precondition(
            "finite-difference step must lie in (0, 0.05]".into(),
        ))
    }
}

/// Samples y(z + k·h) for k = −m..=m.
fn stencil<F>(y: F, z: C, h: f64, m: i32) -> Result<Vec<C>>
where
    F: Fn(C) -> Result<C>,
{
    (-m..=m).map(|k| y(z + k as f64 * h)).collect()
}

fn second_derivative(s: &[C], h: f64) -> C {
    // s holds samples at offsets −2..=2
    (-s[0] + 16.0 * s[1] - 30.0 * s[2] + 16.0 * s[3] - s[4]) / (12.0 * h * h)
}

/// |y'' + (ν + ½ − z²/4)y| / max(|y|, 1e−30) for y = D_ν.
pub fn ode_residual_single(nu: C, z: C, h: f64) -> Result<f64> {
    check_step(h)?;
    let p = PcfEvalPolicy::default();
    let y = |w: C| pcf_d(nu, w, &p);
    let coarse = stencil(y, z, h, 2)?;
    let fine = stencil(y, z, 0.5 * h, 2)?;
    let ypp = (16.0 * second_derivative(&fine, 0.5 * h) - second_derivative(&coarse, h)) / 15.0;
    let y0 = coarse[2];
    let r = ypp + (nu + 0.5 - z * z * 0.25) * y0;
    Ok(r.norm() / y0.norm().max(1e-30))
}

/// Residual of the fourth-order equation satisfied by y = D_ν(z)D_{ν+μ−1}(z),
/// normalised by the sum of the magnitudes of its four terms.
pub fn ode_residual_product(nu: C, mu: C, z: C, h: f64) -> Result<f64> {
    check_step(h)?;
    let p = PcfEvalPolicy::default();
    let y = |w: C| -> Result<C> { Ok(pcf_d(nu, w, &p)? * pcf_d(nu + mu - 1.0, w, &p)?) };
    let s = stencil(y, z, h, 3)?;
    let y0 = s[3];
    let y1 = (s[1] - 8.0 * s[2] + 8.0 * s[4] - s[5]) / (12.0 * h);
    let y2 = second_derivative(&s[1..6], h);
    let y4 = (-s[0] + 12.0 * s[1] - 39.0 * s[2] + 56.0 * s[3] - 39.0 * s[4] + 12.0 * s[5] - s[6]) / (6.0 * h.powi(4));
    let t2 = 4.0 * (nu + mu * 0.5 - z * z * 0.25) * y2;
    let t1 = -3.0 * z * y1;
    let t0 = mu * (mu - 2.0) * y0;
    let scale = y4.norm() + t2.norm() + t1.norm() + t0.norm();
    Ok((y4 + t2 + t1 + t0).norm() / scale.max(1e-300))
}

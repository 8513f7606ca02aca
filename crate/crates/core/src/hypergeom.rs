//! Kummer functions Φ(ν, μ; z) = ₁F₁ and Ψ(ν, μ; z) = U, Laguerre
//! polynomials and the Tricomi–Laguerre expansion of Ψ.
//!
//! Evaluation regimes for Φ: power series near the origin (Kummer transform
//! on the left half-plane), the two-term asymptotic expansion for large |z|,
//! and Taylor continuation of the Kummer ODE along a ray in between. Ψ uses
//! the two-Φ combination near the origin and, for larger |z| off the negative
//! axis, its asymptotic expansion continued inward along the ray.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gammakit::{gamma, is_near_integer, is_nonpositive_integer, principal_power, recip_gamma};
use crate::quad::{try_integrate_endpoint_singular, try_integrate_left_singular, QuadSpec};
use crate::summation::{tapered_sums, CompensatedSum};
use crate::{Error, Result};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// Truncation policy for a power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub consecutive_small: usize,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, consecutive_small: usize) -> Result<Self> {
        if max_terms < 1 || !(rel_tol > 0.0) || consecutive_small < 1 {
            return Err(Error::Precondition(
                "series control needs max_terms >= 1, rel_tol > 0, consecutive_small >= 1".into(),
            ));
        }
        Ok(Self {
            max_terms,
            rel_tol,
            consecutive_small,
        })
    }

    /// Defaults for the Kummer power series.
    pub const fn kummer() -> Self {
        Self {
            max_terms: 500,
            rel_tol: 1e-16,
            consecutive_small: 3,
        }
    }

    /// Defaults for the Tricomi–Laguerre expansion. The terms decay only
    /// algebraically, so the partial sums are tapered and `rel_tol` bounds
    /// the change between the sums at `max_terms / 2` and `max_terms`.
    pub const fn tricomi() -> Self {
        Self {
            max_terms: 20_000,
            rel_tol: 1e-6,
            consecutive_small: 3,
        }
    }
}

impl SeriesControl {
    /// Defaults for the product series of parabolic cylinder functions:
    /// tapered sums up to `max_terms`, accepted when the extrapolation error
    /// estimate is below `rel_tol` relative.
    pub const fn product_series() -> Self {
        Self {
            max_terms: 1 << 18,
            rel_tol: 1e-8,
            consecutive_small: 3,
        }
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self::kummer()
    }
}

// ---------------------------------------------------------------------------
// power series

struct SeriesValue {
    sum: C,
    /// Σ|term|, a bound on the rounding error scale.
    magnitude: f64,
}

impl SeriesValue {
    /// Estimated relative rounding error of the sum.
    fn loss(&self) -> f64 {
        let s = self.sum.norm();
        if s == 0.0 {
            f64::INFINITY
        } else {
            f64::EPSILON * self.magnitude / s
        }
    }
}

fn kummer_series(a: C, b: C, z: C, ctl: &SeriesControl) -> Result<SeriesValue> {
    let mut term = ONE;
    let mut acc = CompensatedSum::new();
    acc.add(term);
    let mut magnitude = 1.0;
    let mut small = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= (a + nf) / ((b + nf) * (nf + 1.0)) * z;
        if term == ZERO {
            return Ok(SeriesValue {
                sum: acc.value(),
                magnitude,
            });
        }
        acc.add(term);
        magnitude += term.norm();
        if term.norm() <= ctl.rel_tol * acc.value().norm() {
            small += 1;
            if small >= ctl.consecutive_small {
                return Ok(SeriesValue {
                    sum: acc.value(),
                    magnitude,
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::SeriesNonConvergence {
        what: "Kummer series",
        limit: ctl.max_terms,
    })
}

// ---------------------------------------------------------------------------
// asymptotic series Σ (p)_s (q)_s / s! · w^{-s}

const ASYMPTOTIC_MAX_TERMS: usize = 400;
const ASYMPTOTIC_TOL: f64 = 1e-17;

fn asymptotic_sum(p: C, q: C, w: C) -> Option<C> {
    let mut sum = ONE;
    let mut term = ONE;
    let mut prev = 1.0;
    for s in 0..ASYMPTOTIC_MAX_TERMS {
        let sf = s as f64;
        term *= (p + sf) * (q + sf) / ((sf + 1.0) * w);
        if term == ZERO {
            return Some(sum);
        }
        let t = term.norm();
        sum += term;
        if t <= ASYMPTOTIC_TOL * sum.norm() {
            return Some(sum);
        }
        if t > prev {
            return None;
        }
        prev = t;
    }
    None
}

/// Ψ(a, b; z) from its large-|z| expansion, when that reaches full precision.
fn psi_asymptotic(a: C, b: C, z: C) -> Option<C> {
    let s = asymptotic_sum(a, a - b + 1.0, -z)?;
    Some(principal_power(z, -a).ok()? * s)
}

/// Φ(a, b; z) from its large-|z| expansion, when that reaches full precision.
fn phi_asymptotic(a: C, b: C, z: C) -> Option<C> {
    let rg_ba = recip_gamma(b - a);
    let rg_a = recip_gamma(a);
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let mut total = ZERO;
    if rg_ba != ZERO {
        let s1 = asymptotic_sum(a, a - b + 1.0, -z)?;
        let phase = (C::new(0.0, sign * PI) * a).exp();
        total += phase * principal_power(z, -a).ok()? * rg_ba * s1;
    }
    if rg_a != ZERO {
        let s2 = asymptotic_sum(b - a, ONE - a, z)?;
        total += z.exp() * principal_power(z, a - b).ok()? * rg_a * s2;
    }
    Some(gamma(b).ok()? * total)
}

// ---------------------------------------------------------------------------
// Taylor continuation of z w'' + (b − z) w' − a w = 0

const CONTINUATION_STEP: f64 = 1.0;
const CONTINUATION_TERMS: usize = 200;

/// Carries (w, w') at `z0` to `target` along the straight segment. Steps stay
/// within half the distance to the singular point z = 0.
fn kummer_continue(a: C, b: C, mut z0: C, mut w: C, mut dw: C, target: C) -> Result<(C, C)> {
    loop {
        let d = target - z0;
        let dist = d.norm();
        if dist == 0.0 {
            return Ok((w, dw));
        }
        let max_step = (0.5 * z0.norm()).min(CONTINUATION_STEP);
        let last = dist <= max_step;
        let h = if last { d } else { d * (max_step / dist) };
        let mut c_prev = w;
        let mut c = dw;
        let mut sum = CompensatedSum::new();
        sum.add(w);
        sum.add(dw * h);
        let mut dsum = CompensatedSum::new();
        dsum.add(dw);
        let mut hp = h;
        let mut small = 0;
        let mut done = false;
        for m in 0..CONTINUATION_TERMS {
            let mf = m as f64;
            let c_next = ((z0 - b - mf) * (mf + 1.0) * c + (a + mf) * c_prev) / (z0 * (mf + 1.0) * (mf + 2.0));
            let dterm = c_next * (mf + 2.0) * hp;
            hp *= h;
            let term = c_next * hp;
            sum.add(term);
            dsum.add(dterm);
            if term.norm() <= 1e-17 * sum.value().norm() && dterm.norm() <= 1e-17 * dsum.value().norm() {
                small += 1;
                if small >= 3 {
                    done = true;
                    break;
                }
            } else {
                small = 0;
            }
            c_prev = c;
            c = c_next;
        }
        if !done {
            return Err(Error::SeriesNonConvergence {
                what: "Kummer ODE continuation",
                limit: CONTINUATION_TERMS,
            });
        }
        w = sum.value();
        dw = dsum.value();
        z0 = if last { target } else { z0 + h };
    }
}

// ---------------------------------------------------------------------------
// Φ

/// Relative rounding loss accepted from the power series.
const SERIES_LOSS_LIMIT: f64 = 1e-13;
const KUMMER_SWITCH: f64 = 10.0;
const PHI_SEED_RADIUS: f64 = 8.0;

/// Kummer's Φ(ν, μ; z) = Σ (ν)_n/(μ)_n zⁿ/n!.
pub fn phi(nu: C, mu: C, z: C, ctl: &SeriesControl) -> Result<C> {
    if is_nonpositive_integer(mu) {
        return Err(Error::ParameterPole { name: "mu", value: mu });
    }
    if z == ZERO {
        return Ok(ONE);
    }
    if z.re < 0.0 && z.norm() > KUMMER_SWITCH {
        return Ok(z.exp() * phi_right(mu - nu, mu, -z, ctl)?);
    }
    match kummer_series(nu, mu, z, ctl) {
        Ok(s) if s.loss() <= SERIES_LOSS_LIMIT || is_nonpositive_integer(nu) => return Ok(s.sum),
        Ok(_) | Err(Error::SeriesNonConvergence { .. }) => {}
        Err(e) => return Err(e),
    }
    if z.re < 0.0 {
        return Ok(z.exp() * phi_right(mu - nu, mu, -z, ctl)?);
    }
    phi_right(nu, mu, z, ctl)
}

// Φ for Re z ≥ 0.
fn phi_right(a: C, b: C, z: C, ctl: &SeriesControl) -> Result<C> {
    if z == ZERO {
        return Ok(ONE);
    }
    if let Ok(s) = kummer_series(a, b, z, ctl) {
        if s.loss() <= SERIES_LOSS_LIMIT || is_nonpositive_integer(a) {
            return Ok(s.sum);
        }
    }
    if let Some(v) = phi_asymptotic(a, b, z) {
        return Ok(v);
    }
    let r = z.norm();
    let seed = z * (PHI_SEED_RADIUS.min(r) / r);
    let ctl_seed = SeriesControl {
        max_terms: ctl.max_terms.max(500),
        ..*ctl
    };
    let w = kummer_series(a, b, seed, &ctl_seed)?.sum;
    let dw = a / b * kummer_series(a + 1.0, b + 1.0, seed, &ctl_seed)?.sum;
    Ok(kummer_continue(a, b, seed, w, dw, z)?.0)
}

/// Φ from the Euler integral Γ(μ)/(Γ(ν)Γ(μ−ν)) ∫₀¹ e^{zt} t^{ν−1}(1−t)^{μ−ν−1} dt.
pub fn phi_integral_oracle(nu: C, mu: C, z: C) -> Result<C> {
    if !(nu.re > 0.0 && mu.re > nu.re) {
        return Err(Error::Precondition("Euler integral needs 0 < Re nu < Re mu".into()));
    }
    let spec = QuadSpec::new(1e-15, 1e-13, 400_000, 0.5)?;
    let p = nu - 1.0;
    let q = mu - nu - 1.0;
    // t near 0 and u = 1 − t near 0, each as a left-singular integral on (0, ½]
    let left = |t: f64| -> Result<C> {
        let tc = C::new(t, 0.0);
        let uc = C::new(1.0 - t, 0.0);
        Ok((z * t + p * tc.ln() + q * uc.ln()).exp())
    };
    let right = |u: f64| -> Result<C> {
        let tc = C::new(1.0 - u, 0.0);
        let uc = C::new(u, 0.0);
        Ok((z * (1.0 - u) + p * tc.ln() + q * uc.ln()).exp())
    };
    let i1 = try_integrate_left_singular(left, 0.5, p.re.min(0.0), &spec)?;
    let i2 = try_integrate_left_singular(right, 0.5, q.re.min(0.0), &spec)?;
    let prefactor = gamma(mu)? * recip_gamma(nu) * recip_gamma(mu - nu);
    Ok(prefactor * (i1.value + i2.value))
}

// ---------------------------------------------------------------------------
// Ψ

const INTEGER_MU_TOL: f64 = 1e-9;
const PSI_DIRECT_RADIUS: f64 = 8.0;
const PSI_MAX_RADIUS: f64 = 1e4;

/// Kummer's second function Ψ(ν, μ; z) (Tricomi U), principal branch.
pub fn psi(nu: C, mu: C, z: C, ctl: &SeriesControl) -> Result<C> {
    if is_near_integer(mu, INTEGER_MU_TOL) {
        return Err(Error::IntegerMu(mu));
    }
    if z == ZERO {
        if mu.re < 1.0 {
            return Ok(gamma(ONE - mu)? * recip_gamma(nu + 1.0 - mu));
        }
        return Err(Error::Precondition("Psi(nu, mu; 0) diverges for Re mu >= 1".into()));
    }
    let mut fallback = None;
    if z.norm() <= PSI_DIRECT_RADIUS {
        let (v, loss) = psi_two_phi(nu, mu, z, ctl)?;
        if loss <= 1e3 {
            return Ok(v);
        }
        fallback = Some(v);
    }
    if let Some(v) = psi_asymptotic(nu, mu, z) {
        return Ok(v);
    }
    let far = if z.re >= 0.0 {
        psi_inward(nu, mu, z)
    } else {
        psi_reflected(nu, mu, z, ctl)
    };
    match (far, fallback) {
        (Ok(v), _) => Ok(v),
        (Err(_), Some(v)) => Ok(v),
        (Err(e), None) => Err(e),
    }
}

// Left half-plane: Ψ(a,b;z) = Γ(b−a)e^{∓iπa}[Φ(a,b;z)/Γ(b) − e^{∓iπ(b−a)}/Γ(a)·e^z Ψ(b−a,b;−z)],
// upper signs for Im z < 0, so that −z = e^{±iπ}z is the principal value.
fn psi_reflected(a: C, b: C, z: C, ctl: &SeriesControl) -> Result<C> {
    let sign = if z.im >= 0.0 { -1.0 } else { 1.0 };
    let i_pi = C::new(0.0, sign * PI);
    let m = phi(a, b, z, ctl)? * recip_gamma(b);
    let rg_a = recip_gamma(a);
    let second = if rg_a == ZERO {
        ZERO
    } else {
        (i_pi * (b - a)).exp() * rg_a * z.exp() * psi(b - a, b, -z, ctl)?
    };
    Ok(gamma(b - a)? * (i_pi * a).exp() * (m - second))
}

/// Two-Φ combination with its cancellation factor (|t1|+|t2|)/|t1+t2|.
fn psi_two_phi(nu: C, mu: C, z: C, ctl: &SeriesControl) -> Result<(C, f64)> {
    let g1 = gamma(ONE - mu)? * recip_gamma(nu + 1.0 - mu);
    let g2 = gamma(mu - 1.0)? * recip_gamma(nu);
    let t1 = if g1 == ZERO { ZERO } else { g1 * phi(nu, mu, z, ctl)? };
    let t2 = if g2 == ZERO {
        ZERO
    } else {
        g2 * principal_power(z, ONE - mu)? * phi(nu + 1.0 - mu, 2.0 - mu, z, ctl)?
    };
    let v = t1 + t2;
    let loss = (t1.norm() + t2.norm()) / v.norm();
    Ok((v, loss))
}

// Ψ from the asymptotic region at a larger radius on the same ray.
fn psi_inward(a: C, b: C, z: C) -> Result<C> {
    let r0 = z.norm();
    let dir = z / r0;
    let mut r = r0.max(20.0);
    loop {
        let zr = dir * r;
        if let (Some(w), Some(w1)) = (psi_asymptotic(a, b, zr), psi_asymptotic(a + 1.0, b + 1.0, zr)) {
            return Ok(kummer_continue(a, b, zr, w, -a * w1, z)?.0);
        }
        r *= 1.25;
        if r > PSI_MAX_RADIUS {
            return Err(Error::SeriesNonConvergence {
                what: "Psi asymptotic expansion",
                limit: ASYMPTOTIC_MAX_TERMS,
            });
        }
    }
}

/// Ψ from the Laplace integral (1/Γ(ν)) ∫₀^∞ e^{−zt} t^{ν−1}(1+t)^{μ−ν−1} dt.
pub fn psi_integral_oracle(nu: C, mu: C, z: C) -> Result<C> {
    if !(nu.re > 0.0 && z.re > 0.0) {
        return Err(Error::Precondition(
            "Laplace integral needs Re nu > 0 and Re z > 0".into(),
        ));
    }
    let spec = QuadSpec::new(1e-15, 1e-13, 400_000, 1.0)?;
    let p = nu - 1.0;
    let q = mu - nu - 1.0;
    // integrate along t = s·e^{−iθ}, θ = arg z, so that z·t = |z|·s
    let w = C::from_polar(1.0, -z.arg());
    let r = z.norm();
    let f = |s: f64| -> Result<C> {
        let e = -r * s + p * s.ln() + q * (ONE + w * s).ln();
        if e.re < -745.0 {
            return Ok(ZERO);
        }
        Ok(e.exp())
    };
    let i = try_integrate_endpoint_singular(f, p.re.min(0.0), &spec)?;
    Ok(recip_gamma(nu) * (nu * w.ln()).exp() * i.value)
}

// ---------------------------------------------------------------------------
// Laguerre

/// Generalized Laguerre polynomial L_n^α(x) by forward recurrence.
pub fn laguerre(n: u32, alpha: f64, x: C) -> C {
    let mut prev = ONE;
    if n == 0 {
        return prev;
    }
    let mut cur = ONE * (1.0 + alpha) - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Ψ(ν, μ; x) = (1/Γ(ν)) Σ L_n^{μ−1}(x)/(n+ν), tapered at `ctl.max_terms`.
pub fn tricomi_psi_series(nu: C, mu: C, x: f64, ctl: &SeriesControl) -> Result<C> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Precondition("Tricomi expansion needs real x > 0".into()));
    }
    if !(mu.re < 1.5) {
        return Err(Error::Precondition("Tricomi expansion needs Re mu < 3/2".into()));
    }
    if is_nonpositive_integer(nu) {
        return Err(Error::ParameterPole { name: "nu", value: nu });
    }
    let n_max = ctl.max_terms.max(2);
    let alpha = mu - 1.0;
    let xc = C::new(x, 0.0);
    let mut terms = Vec::with_capacity(n_max);
    let mut prev = ONE;
    let mut cur = alpha + 1.0 - xc;
    terms.push(prev / nu);
    for k in 1..n_max {
        terms.push(cur / (nu + k as f64));
        let kf = k as f64;
        let next = ((alpha + 2.0 * kf + 1.0 - xc) * cur - (alpha + kf) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    let sums = tapered_sums(&terms, &[n_max / 2, n_max]);
    let s = sums[1];
    if (s - sums[0]).norm() > ctl.rel_tol * s.norm() {
        return Err(Error::SeriesNonConvergence {
            what: "Tricomi-Laguerre series",
            limit: n_max,
        });
    }
    Ok(recip_gamma(nu) * s)
}

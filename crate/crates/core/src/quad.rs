//! Quadrature engines.
//!
//! * adaptive Gauss–Kronrod (10/21 points) on finite panels,
//! * one-sided tanh–sinh for algebraic endpoint singularities,
//! * a rational map t = s + u/(1−u) for exponentially decaying tails,
//! * envelope-truncated panels for damped oscillatory integrands.
//!
//! Panel values are always combined with compensated summation in ascending
//! panel order, so results do not depend on the refinement history beyond
//! the (deterministic) choice of panels.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::summation::CompensatedSum;
use crate::{Error, Result};

/// Tolerances and budget for one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
    /// Boundary between the endpoint region and the decaying tail.
    pub split_point: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_evaluations: 400_000,
            split_point: 1.0,
        }
    }
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_evaluations: usize, split_point: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::Precondition("quadrature tolerances must be positive".into()));
        }
        if max_evaluations < 100 {
            return Err(Error::Precondition("max_evaluations must be at least 100".into()));
        }
        if !(split_point > 0.0 && split_point.is_finite()) {
            return Err(Error::Precondition("split_point must be positive and finite".into()));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_evaluations,
            split_point,
        })
    }

    /// Same budget, tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }

    /// The tolerance a result with this value must meet.
    pub fn tolerance_for(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
}

impl QuadratureResult {
    fn from_partial(p: Partial, spec: &QuadSpec, warnings: Vec<String>) -> Result<Self> {
        let converged = p.converged && p.err <= spec.tolerance_for(p.value);
        if !converged {
            return Err(Error::QuadratureNonConvergence {
                estimate: p.err,
                evaluations: p.evals,
            });
        }
        Ok(Self {
            value: p.value,
            abs_error_estimate: p.err,
            evaluations: p.evals.max(1),
            converged,
            warnings,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    value: Complex64,
    err: f64,
    evals: usize,
    converged: bool,
}

impl Partial {
    fn join(self, other: Partial) -> Partial {
        Partial {
            value: self.value + other.value,
            err: self.err + other.err,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }
}

#[inline]
fn eval<F>(f: &F, x: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let v = f(x)?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand(x))
    }
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod 10/21

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_814_037,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk21<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut resk = fc * WGK[10];
    let mut resg = Complex64::new(0.0, 0.0);
    let mut resabs = WGK[10] * fc.norm();
    let mut fv = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv[j] = (f1, f2);
        resk += (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv[j].0 - mean).norm() + (fv[j].1 - mean).norm());
    }
    let h = half.abs();
    let resabs = resabs * h;
    let resasc = resasc * h;
    let mut err = ((resk - resg) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Panel {
        a,
        b,
        value: resk * half,
        err,
    })
}

const GK_EVALS: usize = 21;

/// Adaptive bisection over the initial panels given by `breaks`.
fn adaptive_gk<F>(f: &F, breaks: &[f64], abs_tol: f64, rel_tol: f64, budget: usize) -> Result<Partial>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut heap = BinaryHeap::new();
    let mut frozen = Vec::new();
    let mut evals = 0;
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let p = gk21(f, w[0], w[1])?;
            evals += GK_EVALS;
            total += p.value;
            total_err += p.err;
            heap.push(p);
        }
    }
    let mut converged = false;
    loop {
        let tol = abs_tol.max(rel_tol * total.norm());
        if total_err <= tol {
            converged = true;
            break;
        }
        if evals + 2 * GK_EVALS > budget {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-14 * worst.a.abs().max(worst.b.abs()) {
            frozen.push(worst);
            continue;
        }
        let l = gk21(f, worst.a, mid)?;
        let r = gk21(f, mid, worst.b)?;
        evals += 2 * GK_EVALS;
        total += l.value + r.value - worst.value;
        total_err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
    }
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for p in &panels {
        acc.add(p.value);
        err += p.err;
    }
    let value = acc.value();
    let converged = converged && err <= abs_tol.max(rel_tol * value.norm()) * (1.0 + 1e-12);
    Ok(Partial {
        value,
        err,
        evals,
        converged,
    })
}

// ---------------------------------------------------------------------------
// tanh–sinh on (0, width] with the singular endpoint at 0

const TS_T_RIGHT: f64 = 3.6;
const TS_MAX_LEVEL: u32 = 12;

fn ts_node(t: f64, width: f64) -> (f64, f64) {
    let s = 0.5 * PI * t.sinh();
    let q = (-2.0 * s.abs()).exp();
    let x = if s >= 0.0 {
        width / (1.0 + q)
    } else {
        width * q / (1.0 + q)
    };
    let w = width * PI * t.cosh() * q / ((1.0 + q) * (1.0 + q));
    (x, w)
}

/// Smallest abscissa kept for an integrand behaving like x^σ at 0: the
/// discarded piece ∫₀^{x_min} x^σ dx stays far below `abs_tol`.
fn truncation_point(sigma: f64, abs_tol: f64) -> f64 {
    let p = sigma + 1.0;
    (1e-3 * abs_tol * p).powf(1.0 / p).clamp(1e-150, 1e-6)
}

fn tanh_sinh_left<F>(f: &F, width: f64, sigma: f64, abs_tol: f64, rel_tol: f64, budget: usize) -> Result<Partial>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if sigma >= -0.5 {
        return tanh_sinh_core(f, width, sigma, abs_tol, rel_tol, budget);
    }
    // x = u^p with p = 1/(σ+1) turns x^σ dx into a bounded integrand in u
    let p = 1.0 / (sigma + 1.0);
    let g = |u: f64| -> Result<Complex64> {
        let x = u.powf(p);
        if x == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(eval(f, x.min(width))? * (p * x / u))
    };
    tanh_sinh_core(&g, width.powf(sigma + 1.0), 0.0, abs_tol, rel_tol, budget)
}

fn tanh_sinh_core<F>(f: &F, width: f64, sigma: f64, abs_tol: f64, rel_tol: f64, budget: usize) -> Result<Partial>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let x_min = truncation_point(sigma, abs_tol).min(1e-3 * width);
    let t_left = ((width / x_min).ln() / PI).asinh();
    let mut h = 0.5;
    let mut evals = 0;
    let mut sum = CompensatedSum::new();
    // two smallest nodes and their values
    let mut leftmost = [(f64::INFINITY, Complex64::new(0.0, 0.0)); 2];
    let mut visit = |t: f64, sum: &mut CompensatedSum, evals: &mut usize| -> Result<()> {
        let (x, w) = ts_node(t, width);
        if x <= 0.0 || x > width {
            return Ok(());
        }
        let v = eval(f, x)?;
        *evals += 1;
        if x < leftmost[0].0 {
            leftmost = [(x, v), leftmost[0]];
        } else if x < leftmost[1].0 && x != leftmost[0].0 {
            leftmost[1] = (x, v);
        }
        sum.add(v * w);
        Ok(())
    };
    let j_lo = (-t_left / h).ceil() as i64;
    let j_hi = (TS_T_RIGHT / h).floor() as i64;
    for j in j_lo..=j_hi {
        visit(j as f64 * h, &mut sum, &mut evals)?;
    }
    let mut estimate = sum.value() * h;
    let mut err = f64::INFINITY;
    let mut converged = false;
    for level in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let j_lo = ((-t_left / h - 1.0) / 2.0).ceil() as i64;
        let j_hi = ((TS_T_RIGHT / h - 1.0) / 2.0).floor() as i64;
        if evals + (j_hi - j_lo + 1).max(0) as usize > budget {
            break;
        }
        for j in j_lo..=j_hi {
            visit((2 * j + 1) as f64 * h, &mut sum, &mut evals)?;
        }
        let next = sum.value() * h;
        err = (next - estimate).norm();
        estimate = next;
        if level >= 3 && err <= abs_tol.max(rel_tol * estimate.norm()) {
            converged = true;
            break;
        }
    }
    // piece of the integral below the smallest node, modelled as c·x^σ and
    // charged with the spread against the exponent seen between the two
    // smallest nodes
    let [(x0, v0), (x1, v1)] = leftmost;
    if x0.is_finite() {
        let cut = v0 * x0 / (sigma + 1.0);
        let seen = if x1.is_finite() && v0.norm() > 0.0 && v1.norm() > 0.0 {
            (v1.norm() / v0.norm()).ln() / (x1 / x0).ln()
        } else {
            sigma
        };
        let spread = if seen > -1.0 {
            (cut - v0 * x0 / (seen + 1.0)).norm()
        } else {
            cut.norm()
        };
        estimate += cut;
        err += spread + 4.0 * f64::EPSILON * cut.norm();
    }
    converged = converged && err <= abs_tol.max(rel_tol * estimate.norm());
    Ok(Partial {
        value: estimate,
        err,
        evals,
        converged,
    })
}

// ---------------------------------------------------------------------------
// mapped tail on [s, ∞)

const TAIL_BREAKS: [f64; 7] = [0.0, 0.5, 0.75, 0.875, 0.9375, 0.96875, 1.0];

fn mapped_tail<F>(f: &F, s: f64, abs_tol: f64, rel_tol: f64, budget: usize) -> Result<Partial>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let g = |u: f64| -> Result<Complex64> {
        let v = 1.0 - u;
        let x = s + u / v;
        if !x.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let fx = eval(f, x)?;
        if fx.re == 0.0 && fx.im == 0.0 {
            return Ok(fx);
        }
        Ok(fx / (v * v))
    };
    adaptive_gk(&g, &TAIL_BREAKS, abs_tol, rel_tol, budget)
}

fn lift<F>(f: F) -> impl Fn(f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    move |x| Ok(f(x))
}

// ---------------------------------------------------------------------------
// public engines

/// ∫₀^∞ f for integrands regular on [0, split] with exponential or Gaussian
/// decay.
pub fn integrate_decay<F>(f: F, spec: &QuadSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    try_integrate_decay(lift(f), spec)
}

/// [`integrate_decay`] for integrands that can fail.
pub fn try_integrate_decay<F>(f: F, spec: &QuadSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let s = spec.split_point;
    let breaks = [0.0, 0.5 * s, s];
    let head = adaptive_gk(&f, &breaks, 0.5 * spec.abs_tol, spec.rel_tol, spec.max_evaluations)?;
    let budget = spec.max_evaluations.saturating_sub(head.evals);
    let tail = mapped_tail(&f, s, 0.5 * spec.abs_tol, spec.rel_tol, budget)?;
    QuadratureResult::from_partial(head.join(tail), spec, Vec::new())
}

/// ∫₀^w f for f ~ x^σ at 0 (σ > −1) and regular at w.
pub fn integrate_left_singular<F>(f: F, width: f64, singular_exponent: f64, spec: &QuadSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    try_integrate_left_singular(lift(f), width, singular_exponent, spec)
}

/// [`integrate_left_singular`] for integrands that can fail.
pub fn try_integrate_left_singular<F>(
    f: F,
    width: f64,
    singular_exponent: f64,
    spec: &QuadSpec,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    check_exponent(singular_exponent)?;
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::Precondition("interval width must be positive".into()));
    }
    let p = tanh_sinh_left(
        &f,
        width,
        singular_exponent,
        spec.abs_tol,
        spec.rel_tol,
        spec.max_evaluations,
    )?;
    QuadratureResult::from_partial(p, spec, Vec::new())
}

fn check_exponent(sigma: f64) -> Result<()> {
    if sigma > -1.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "singular exponent {sigma} must exceed -1 for integrability"
        )))
    }
}

/// ∫₀^∞ f where f ~ x^σ at 0 (σ > −1): tanh–sinh on (0, split], mapped
/// Gauss–Kronrod on the tail.
pub fn integrate_endpoint_singular<F>(f: F, singular_exponent: f64, spec: &QuadSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    try_integrate_endpoint_singular(lift(f), singular_exponent, spec)
}

/// [`integrate_endpoint_singular`] for integrands that can fail.
pub fn try_integrate_endpoint_singular<F>(f: F, singular_exponent: f64, spec: &QuadSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    check_exponent(singular_exponent)?;
    let s = spec.split_point;
    let head = tanh_sinh_left(
        &f,
        s,
        singular_exponent,
        0.5 * spec.abs_tol,
        spec.rel_tol,
        spec.max_evaluations,
    )?;
    let budget = spec.max_evaluations.saturating_sub(head.evals);
    let tail = mapped_tail(&f, s, 0.5 * spec.abs_tol, spec.rel_tol, budget)?;
    QuadratureResult::from_partial(head.join(tail), spec, Vec::new())
}

/// Trigonometric factor of a Fourier-type integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
}

const ENVELOPE_STEP: f64 = 0.5;
const ENVELOPE_FLOOR: f64 = 1e-18;
const ENVELOPE_RUN: usize = 4;
const ENVELOPE_LIMIT: f64 = 400.0;
const PERIOD_WARNING: f64 = 1e4;

/// Scans |envelope| on a uniform grid and returns the abscissa beyond which it
/// stays below `ENVELOPE_FLOOR` times its peak.
fn envelope_cutoff<E>(envelope: &E) -> Result<(f64, usize)>
where
    E: Fn(f64) -> Result<f64>,
{
    let mut peak: f64 = 0.0;
    let mut run = 0;
    let mut evals = 0;
    let mut x = 0.0;
    while x < ENVELOPE_LIMIT {
        x += ENVELOPE_STEP;
        let v = envelope(x)?;
        evals += 1;
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand(x));
        }
        peak = peak.max(v);
        if v <= ENVELOPE_FLOOR * peak {
            run += 1;
            if run >= ENVELOPE_RUN {
                return Ok((x, evals));
            }
        } else {
            run = 0;
        }
    }
    if peak == 0.0 {
        return Ok((ENVELOPE_STEP, evals));
    }
    Err(Error::Precondition(format!(
        "integrand envelope has not decayed by x = {ENVELOPE_LIMIT}"
    )))
}

fn damped_core<F, E>(
    f: &F,
    envelope: &E,
    singular_exponent: f64,
    max_panel: f64,
    spec: &QuadSpec,
) -> Result<(Partial, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
    E: Fn(f64) -> Result<f64>,
{
    check_exponent(singular_exponent)?;
    let (x_max, scan_evals) = envelope_cutoff(envelope)?;
    let head_width = spec.split_point.min(x_max);
    let head = tanh_sinh_left(
        f,
        head_width,
        singular_exponent,
        0.5 * spec.abs_tol,
        spec.rel_tol,
        spec.max_evaluations,
    )?;
    let mut p = head;
    p.evals += scan_evals;
    if x_max > head_width {
        let n = ((x_max - head_width) / max_panel).ceil().max(1.0) as usize;
        let step = (x_max - head_width) / n as f64;
        let breaks: Vec<f64> = (0..=n).map(|k| head_width + step * k as f64).collect();
        let budget = spec.max_evaluations.saturating_sub(p.evals);
        let body = adaptive_gk(f, &breaks, 0.5 * spec.abs_tol, spec.rel_tol, budget)?;
        p = p.join(body);
    }
    Ok((p, x_max))
}

/// ∫₀^∞ f for integrands with Gaussian or exponential decay that may
/// oscillate and may behave like x^σ at 0. The range is cut where |f| stays
/// below 1e−18 of its sampled peak; panels are at most `max_panel` wide.
pub fn integrate_damped<F>(f: F, singular_exponent: f64, max_panel: f64, spec: &QuadSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    try_integrate_damped(lift(f), singular_exponent, max_panel, spec)
}

/// [`integrate_damped`] for integrands that can fail.
pub fn try_integrate_damped<F>(
    f: F,
    singular_exponent: f64,
    max_panel: f64,
    spec: &QuadSpec,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(max_panel > 0.0) {
        return Err(Error::Precondition("max_panel must be positive".into()));
    }
    let envelope = |x: f64| f(x).map(|v| v.norm());
    let (p, _) = damped_core(&f, &envelope, singular_exponent, max_panel, spec)?;
    QuadratureResult::from_partial(p, spec, Vec::new())
}

/// ∫₀^∞ trig(zx + phase) g(x) dx for a Gaussian-damped amplitude g.
pub fn integrate_fourier_damped<G>(
    g: G,
    z: f64,
    phase: f64,
    kind: TrigKind,
    spec: &QuadSpec,
) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Complex64,
{
    try_integrate_fourier_damped(lift(g), z, phase, kind, spec)
}

/// [`integrate_fourier_damped`] for amplitudes that can fail.
pub fn try_integrate_fourier_damped<G>(
    g: G,
    z: f64,
    phase: f64,
    kind: TrigKind,
    spec: &QuadSpec,
) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Result<Complex64>,
{
    // amplitudes such as x^{μ−1} may be singular at 0; any σ > −1 is safe
    try_integrate_fourier_damped_singular(g, z, phase, kind, -0.9, spec)
}

/// [`try_integrate_fourier_damped`] with a known behaviour g ~ x^σ at 0.
pub fn try_integrate_fourier_damped_singular<G>(
    g: G,
    z: f64,
    phase: f64,
    kind: TrigKind,
    singular_exponent: f64,
    spec: &QuadSpec,
) -> Result<QuadratureResult>
where
    G: Fn(f64) -> Result<Complex64>,
{
    let trig = move |x: f64| match kind {
        TrigKind::Sin => (z * x + phase).sin(),
        TrigKind::Cos => (z * x + phase).cos(),
    };
    let f = |x: f64| g(x).map(|v| v * trig(x));
    let envelope = |x: f64| g(x).map(|v| v.norm());
    let max_panel = if z == 0.0 { 1.0 } else { (PI / z.abs()).min(1.0) };
    let (p, x_max) = damped_core(&f, &envelope, singular_exponent, max_panel, spec)?;
    let mut warnings = Vec::new();
    let periods = z.abs() * x_max / (2.0 * PI);
    if periods > PERIOD_WARNING {
        warnings.push(format!("{periods:.0} oscillation periods inside the truncated range"));
    }
    QuadratureResult::from_partial(p, spec, warnings)
}

/// Relative defect of ∫g·∫h = ∫₀^∞ g(x)∫₀^x h + ∫₀^∞ h(x)∫₀^x g, with the
/// double integrals computed as iterated one-dimensional integrals.
pub fn convolution_identity_defect<G, H>(g: G, h: H, spec: &QuadSpec) -> Result<f64>
where
    G: Fn(f64) -> Complex64,
    H: Fn(f64) -> Complex64,
{
    let ig = integrate_decay(&g, spec)?.value;
    let ih = integrate_decay(&h, spec)?.value;
    let inner_tol = spec.scaled(0.1);
    let cumulative = |k: &dyn Fn(f64) -> Complex64, x: f64| -> Result<Complex64> {
        if x <= 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let kk = |t: f64| Ok(k(t));
        let p = adaptive_gk(
            &kk,
            &[0.0, x],
            inner_tol.abs_tol,
            inner_tol.rel_tol,
            inner_tol.max_evaluations,
        )?;
        Ok(p.value)
    };
    let d1 = try_integrate_decay(|x| Ok(g(x) * cumulative(&h, x)?), spec)?.value;
    let d2 = try_integrate_decay(|x| Ok(h(x) * cumulative(&g, x)?), spec)?.value;
    let lhs = ig * ih;
    let rhs = d1 + d2;
    Ok((lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1e-300))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn kronrod_rule_is_exact_for_degree_31() {
        for deg in 0..=31 {
            let f = |x: f64| Ok(r(x.powi(deg)));
            let p = gk21(&f, -1.0, 1.0).unwrap();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((p.value.re - exact).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn gauss_rule_is_exact_for_degree_19() {
        for deg in (0..=19).step_by(2) {
            let mut s = 0.0;
            for j in 0..5 {
                s += 2.0 * WG[j] * XGK[2 * j + 1].powi(deg);
            }
            let exact = 2.0 / (deg as f64 + 1.0);
            assert!((s - exact).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn decay_exponential() {
        let q = integrate_decay(|t| r((-t).exp()), &QuadSpec::default()).unwrap();
        assert!((q.value.re - 1.0).abs() < 1e-12);
        assert!(q.converged);
    }

    #[test]
    fn singular_power_on_unit_interval() {
        let spec = QuadSpec::default();
        let q = integrate_endpoint_singular(|t| if t <= 1.0 { r(t.powf(-0.9)) } else { r(0.0) }, -0.9, &spec).unwrap();
        assert!((q.value.re - 10.0).abs() < 1e-10, "{}", q.value);
    }

    #[test]
    fn rejects_nonintegrable_exponent() {
        let e = integrate_endpoint_singular(|t| r(1.0 / t), -1.0, &QuadSpec::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn spec_validation() {
        assert!(QuadSpec::new(0.0, 1e-10, 1000, 1.0).is_err());
        assert!(QuadSpec::new(1e-10, 1e-10, 99, 1.0).is_err());
        assert!(QuadSpec::new(1e-10, 1e-10, 100, 1.0).is_ok());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let spec = QuadSpec::new(1e-15, 1e-15, 100, 1.0).unwrap();
        let e = integrate_decay(|t| r((t * 40.0).sin() * (-t).exp()), &spec);
        assert!(matches!(e, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn nan_integrand_is_reported() {
        let e = integrate_decay(
            |t| if t > 0.3 && t < 0.4 { r(f64::NAN) } else { r(0.0) },
            &QuadSpec::default(),
        );
        assert!(matches!(e, Err(Error::NonFiniteIntegrand(_))));
    }
}

//! Complex Gamma-family primitives.
//!
//! Γ and log Γ use a Lanczos approximation (g = 607/128, 15 terms) in the
//! right half-plane together with reflection; ψ uses upward recurrence and
//! the Bernoulli asymptotic series. All branch cuts are principal.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Absolute distance below which a point counts as a pole of Γ.
pub const POLE_TOL: f64 = 1e-12;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126_5e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162_4e-6,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// True when `z` lies within [`POLE_TOL`] of {0, −1, −2, …}.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    if z.im.abs() > POLE_TOL {
        return false;
    }
    let r = z.re.round();
    r <= 0.0 && (z.re - r).abs() <= POLE_TOL
}

/// True when `z` lies within `tol` of an integer.
pub fn is_near_integer(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol
}

/// Clears a negative zero imaginary part so that values on the negative real
/// axis sit on the upper side of the cut.
#[inline]
fn on_principal_side(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Principal logarithm, arg ∈ (−π, π].
pub fn principal_ln(z: Complex64) -> Complex64 {
    on_principal_side(z).ln()
}

/// Principal square root (branch cut on the negative real axis, upper side).
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    on_principal_side(z).sqrt()
}

/// exp(exponent · Log base) with Log the principal logarithm.
pub fn principal_power(base: Complex64, exponent: Complex64) -> Result<Complex64> {
    if base.re == 0.0 && base.im == 0.0 {
        return Err(Error::ZeroBase);
    }
    if exponent == Complex64::new(1.0, 0.0) {
        return Ok(base);
    }
    if exponent == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok((exponent * principal_ln(base)).exp())
}

/// sin(πz) with exact reduction of the real part.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let x = z.re - 2.0 * (z.re / 2.0).round();
    let (s, c) = reduced_sin_cos_pi(x);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// cos(πz) with exact reduction of the real part.
pub fn cos_pi(z: Complex64) -> Complex64 {
    let x = z.re - 2.0 * (z.re / 2.0).round();
    let (s, c) = reduced_sin_cos_pi(x);
    let y = PI * z.im;
    Complex64::new(c * y.cosh(), -s * y.sinh())
}

// x in [-1, 1]; returns (sin πx, cos πx) with exact zeros at half-integers.
fn reduced_sin_cos_pi(x: f64) -> (f64, f64) {
    if x == 0.0 || x.abs() == 1.0 {
        return ((PI * x).sin() * 0.0, if x == 0.0 { 1.0 } else { -1.0 });
    }
    if x.abs() == 0.5 {
        return (x.signum(), 0.0);
    }
    ((PI * x).sin(), (PI * x).cos())
}

// ln Γ(z) for Re z ≥ 0.5.
fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// Principal branch of log Γ(z): continuous off the negative real axis and
/// equal to the real log on the positive axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    let z = on_principal_side(z);
    if z.re >= 7.0 {
        return Ok(lanczos_ln_gamma(z));
    }
    let n = (7.0 - z.re).ceil() as usize;
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += principal_ln(z + k as f64);
    }
    Ok(lanczos_ln_gamma(z + n as f64) - shift)
}

/// Γ(z), with reflection for Re z < 0.5.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        let s = sin_pi(z);
        let g = gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(PI / (s * g));
    }
    if z.im == 0.0 && z.re == z.re.round() && z.re <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z.re {
            f *= k;
            k += 1.0;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    Ok(lanczos_ln_gamma(z).exp())
}

/// 1/Γ(z), exactly zero on the pole set.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    match gamma(z) {
        Ok(g) => g.inv(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        return Ok(digamma(one_minus)? - PI * cos_pi(z) / sin_pi(z));
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < 10.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let w = (z * z).inv();
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = w;
    for &c in DIGAMMA_ASYMPTOTIC.iter() {
        series += c * p;
        p *= w;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}

/// Rising factorial (ν)_n as a finite product.
pub fn pochhammer(nu: Complex64, n: u32) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for k in 0..n {
        p *= nu + k as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_small_values() {
        assert_eq!(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_relative_eq!(
            gamma(c(0.5, 0.0)).unwrap().re,
            1.772_453_850_905_516,
            max_relative = 1e-14
        );
        assert_relative_eq!(gamma(c(5.0, 0.0)).unwrap().re, 24.0);
        assert!(rel(gamma(c(-0.5, 0.0)).unwrap(), c(-3.544_907_701_811_032, 0.0)) < 1e-13);
    }

    #[test]
    fn gamma_rejects_poles() {
        assert!(matches!(gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma(c(-3.0, 1e-13)), Err(Error::Pole(_))));
        assert!(gamma(c(-3.0, 1e-9)).is_ok());
        assert_eq!(recip_gamma(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn log_gamma_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert_relative_eq!(
            log_gamma(c(10.0, 0.0)).unwrap().re,
            12.801_827_480_081_469,
            max_relative = 1e-14
        );
        // negative real axis sits on the upper side of the cut
        let v = log_gamma(c(-0.5, 0.0)).unwrap();
        assert!((v.im + PI).abs() < 1e-13);
    }

    #[test]
    fn digamma_values() {
        let em = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap() - c(-em, 0.0)).norm() < 1e-14);
        assert!((digamma(c(2.0, 0.0)).unwrap() - c(1.0 - em, 0.0)).norm() < 1e-14);
        assert!(digamma(c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn pochhammer_products() {
        assert_eq!(pochhammer(c(3.7, 1.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 0.0), 5), c(120.0, 0.0));
        assert_eq!(pochhammer(c(-0.5, 0.0), 3), c(-0.375, 0.0));
        assert_eq!(pochhammer(c(-2.0, 0.0), 4), c(0.0, 0.0));
    }

    #[test]
    fn principal_power_cases() {
        assert_eq!(principal_power(c(4.0, 0.0), c(0.5, 0.0)).unwrap(), c(2.0, 0.0));
        assert!((principal_power(c(0.0, 1.0), c(2.0, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(principal_power(c(0.0, 0.0), c(0.5, 0.0)), Err(Error::ZeroBase));
        // negative zero imaginary part does not flip the branch
        let a = principal_power(c(-4.0, -0.0), c(0.5, 0.0)).unwrap();
        assert!((a - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn trig_pi_exact_at_integers() {
        assert_eq!(sin_pi(c(3.0, 0.0)).re, 0.0);
        assert_eq!(cos_pi(c(2.5, 0.0)).re, 0.0);
        assert!((sin_pi(c(0.25, 0.0)).re - 0.5f64.sqrt()).abs() < 1e-15);
    }
}

//! Parabolic cylinder functions, Kummer confluent hypergeometric functions and
//! a catalog of product identities checked through independent numerical routes.
//!
//! Module map:
//!
//! * [`gammakit`]: complex Γ, log Γ, ψ, Pochhammer symbols, principal powers.
//! * [`hypergeom`]: Kummer Φ and Ψ, their integral oracles, Laguerre polynomials
//!   and the Tricomi–Laguerre expansion of Ψ.
//! * [`pcf`]: D_ν(z), its order derivative, the connection formula, erf,
//!   half-order Bessel functions and ODE residuals.
//! * [`quad`]: quadrature engines for decaying, endpoint-singular and
//!   oscillatory integrands.
//! * [`identities`]: the verification catalog.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gammakit;
pub mod hypergeom;
pub mod identities;
pub mod pcf;
pub mod quad;
mod summation;

pub use error::{Error, Result};

/// The universal value type: a complex number with two `f64` components.
pub type ComplexScalar = num_complex::Complex64;

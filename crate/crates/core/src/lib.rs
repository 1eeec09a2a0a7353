//! Quasi-interpolation on the unit sphere with scaled zonal kernels.
//!
//! The crate is organized bottom-up:
//!
//! * [`specfun`]: Legendre/Gegenbauer polynomials, real spherical harmonics,
//!   scaled half-integer Bessel functions, incomplete gamma, terminating ₂F₁.
//! * [`kernels`]: Poisson, restricted Gaussian, restricted compactly supported
//!   and high-order combination kernels with closed-form Fourier–Legendre
//!   coefficients.
//! * [`quadrature`]: positive quadrature rules on 𝕊².
//! * [`operators`]: the quasi-interpolant, the hyperinterpolation baseline and
//!   discrete error norms.
//! * [`harness`]: target functions, experiments, CSV output and the CLI.

pub mod error;
pub mod harness;
pub mod kernels;
pub mod operators;
pub mod point;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use point::SpherePoint;

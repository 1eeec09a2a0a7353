//! Scalar special functions behind the kernel coefficient formulas.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod hypergeom;
mod legendre;
mod sph_harm;

pub use bessel::bessel_i_scaled_half;
pub use gamma::{ln_gamma, pochhammer, reg_incomplete_gamma_p, reg_incomplete_gamma_q};
pub use hypergeom::hyp2f1_terminating;
pub use legendre::{dim_sph_harm, gegenbauer_ratio_normalized, legendre_p, legendre_p_sequence};
pub use sph_harm::{sph_harm_s2, SphHarmTable};

/// Spherical-harmonic / polynomial degree ℓ.
pub type Degree = usize;

/// Slack allowed on `|t| <= 1` before an argument is rejected; values inside
/// the slack are clamped.
pub const ARG_TOLERANCE: f64 = 1e-12;

/// Neumaier compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

use std::f64::consts::PI;

use super::Degree;
use crate::error::{domain, Result};

/// Exponentially scaled modified Bessel function `e^{-z} I_{ℓ+1/2}(z)`.
///
/// Seeded by the closed form `e^{-z} I_{1/2}(z) = √(2/(πz)) (1 - e^{-2z})/2`
/// and climbed with the ratios `I_{ν+1}/I_ν`, which are obtained by running
/// `I_{ν-1}/I_ν = 2ν/z + I_{ν+1}/I_ν` downward from a high starting order.
/// `I_ν` is the minimal solution of that recurrence, so the downward pass
/// forgets its seed geometrically. The unscaled `I_ν` is never formed.
pub fn bessel_i_scaled_half(ell: Degree, z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(domain("bessel_i_scaled_half", format!("z = {z} must be positive and finite")));
    }
    let base = (2.0 / (PI * z)).sqrt() * (-(-2.0 * z).exp_m1()) * 0.5;
    if ell == 0 {
        return Ok(base);
    }

    let ratios = ratio_table(ell, z);
    let mut value = base;
    for r in ratios {
        value *= r;
    }
    Ok(value)
}

/// Returns `[I_{3/2}/I_{1/2}, I_{5/2}/I_{3/2}, ..., I_{ℓ+1/2}/I_{ℓ-1/2}]`.
fn ratio_table(ell: usize, z: f64) -> Vec<f64> {
    // Seed error shrinks roughly like exp(-(N² - ℓ²)/z) on the way down.
    let lf = ell as f64;
    let start = ((lf * lf + 50.0 * z).sqrt().ceil() as usize).max(ell) + 20;

    // Upper Amos-type bound on I_{ν+1}/I_ν as a seed at ν = start + 1/2.
    let nu = start as f64 + 0.5;
    let mut r = z / (nu + 0.5 + ((nu + 0.5) * (nu + 0.5) + z * z).sqrt());

    let mut out = vec![0.0; ell];
    // r holds I_{k+3/2}/I_{k+1/2} after the step for index k.
    for k in (0..start).rev() {
        let nu_next = k as f64 + 1.5;
        r = 1.0 / (2.0 * nu_next / z + r);
        if k < ell {
            out[k] = r;
        }
    }
    out
}

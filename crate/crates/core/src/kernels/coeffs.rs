//! Closed-form Fourier–Legendre coefficients on 𝕊².

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::quadrature::gauss_legendre_1d;
use crate::specfun::{
    bessel_i_scaled_half, gegenbauer_ratio_normalized, hyp2f1_terminating, legendre_p, reg_incomplete_gamma_p, Degree,
};

/// Poisson coefficient `αˡ`.
pub fn poisson_flc(ell: Degree, alpha: f64) -> f64 {
    match i32::try_from(ell) {
        Ok(e) => alpha.powi(e),
        Err(_) => alpha.powf(ell as f64),
    }
}

fn check_d2(func: &'static str, d: usize) -> Result<()> {
    if d == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { func, d })
    }
}

fn check_rho(func: &'static str, rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(domain(func, format!("rho = {rho} must be positive")))
    }
}

/// Gaussian coefficient `√(2π)/ρ · e^{-z} I_{ℓ+1/2}(z)` with `z = 1/ρ²`.
pub fn gaussian_flc(ell: Degree, rho: f64, d: usize) -> Result<f64> {
    check_d2("gaussian_flc", d)?;
    check_rho("gaussian_flc", rho)?;
    let z = 1.0 / (rho * rho);
    Ok((2.0 * PI).sqrt() / rho * bessel_i_scaled_half(ell, z)?)
}

/// Gaussian coefficient from the finite incomplete-gamma expansion
/// `Σ_j a_j(ν) ρ^{2j} P(ν+j+1/2, 2/ρ²)`, `ν = ℓ + 1/2`.
///
/// Only evaluated when `ρν < 1`; beyond that the alternating terms cancel badly.
pub fn gaussian_flc_hadamard(ell: Degree, rho: f64, d: usize) -> Result<f64> {
    check_d2("gaussian_flc_hadamard", d)?;
    check_rho("gaussian_flc_hadamard", rho)?;
    let nu = ell as f64 + 0.5;
    if rho * nu >= 1.0 {
        return Err(Error::Precondition {
            func: "gaussian_flc_hadamard",
            msg: format!("rho * nu = {} must be < 1", rho * nu),
        });
    }
    let x = 2.0 / (rho * rho);
    let r2 = rho * rho;
    let mut a = 1.0;
    let mut rpow = 1.0;
    let mut sum = 0.0;
    for j in 0..=ell {
        let jf = j as f64;
        sum += a * rpow * reg_incomplete_gamma_p(nu + jf + 0.5, x)?;
        a *= (0.5 - nu + jf) * (0.5 + nu + jf) / (2.0 * (jf + 1.0));
        rpow *= r2;
    }
    Ok(sum)
}

/// `₂F₁(ℓ+1, -ℓ; m+2; ρ²/4)`, the compact-support coefficient for `ρ ≤ 2`.
pub fn cs_flc_hypergeometric(ell: Degree, rho: f64, m: u32) -> Result<f64> {
    check_rho("cs_flc", rho)?;
    hyp2f1_terminating(ell, ell as f64 + 1.0, m as f64 + 2.0, rho * rho / 4.0)
}

/// `(1-ρ²/4)^{m+1} D_{ℓ-m-1}(m+3/2; 1-ρ²/2)`, the compact-support coefficient
/// for `ℓ ≥ m+1` and `ρ ≤ 2`. Stable for large ℓ.
pub fn cs_flc_gegenbauer(ell: Degree, rho: f64, m: u32) -> Result<f64> {
    check_rho("cs_flc", rho)?;
    let m = m as usize;
    if ell < m + 1 {
        return Err(Error::Index { func: "cs_flc", msg: format!("degree {ell} below m+1 = {}", m + 1) });
    }
    let q = 1.0 - rho * rho / 4.0;
    let d = gegenbauer_ratio_normalized(ell - m - 1, m as f64 + 1.5, 1.0 - rho * rho / 2.0)?;
    Ok(q.powi(m as i32 + 1) * d)
}

/// Compact-support coefficient. Uses the hypergeometric form for `ℓ ≤ m+1`
/// and the Gegenbauer form above it. For `ρ ≥ 2` the support is the whole
/// sphere, the kernel is a degree-`m` polynomial in `t`, and the coefficient
/// is integrated exactly.
pub fn cs_flc(ell: Degree, rho: f64, m: u32, d: usize) -> Result<f64> {
    check_d2("cs_flc", d)?;
    check_rho("cs_flc", rho)?;
    if rho >= 2.0 {
        return cs_flc_full_support(ell, rho, m);
    }
    if ell <= m as usize + 1 {
        cs_flc_hypergeometric(ell, rho, m)
    } else {
        cs_flc_gegenbauer(ell, rho, m)
    }
}

fn cs_flc_full_support(ell: Degree, rho: f64, m: u32) -> Result<f64> {
    if ell > m as usize {
        return Ok(0.0);
    }
    let g = gauss_legendre_1d((m as usize + ell) / 2 + 2)?;
    let r2 = rho * rho;
    let mut acc = 0.0;
    for (t, w) in g.nodes.iter().zip(&g.weights) {
        let u = 1.0 - (2.0 - 2.0 * t) / r2;
        acc += w * u.powi(m as i32) * legendre_p(ell, 3, *t)?;
    }
    // 2π · (m+1)/(πρ²) · ∫
    Ok(2.0 * (m as f64 + 1.0) / r2 * acc)
}

/// Weights `λᵢ = Π_{j≠i} aⱼ²/(aⱼ² - aᵢ²)` of the high-order combination.
///
/// They satisfy `Σλᵢ = 1` and `Σλᵢ aᵢ^{2p} = 0` for `1 ≤ p < K`; both are
/// checked before returning.
pub fn highorder_weights(k: usize, a: &[f64]) -> Result<Vec<f64>> {
    if k == 0 || a.len() != k {
        return Err(domain("highorder_weights", format!("expected K = {k} >= 1 scales, got {}", a.len())));
    }
    for &ai in a {
        if !ai.is_finite() || ai <= 0.0 {
            return Err(domain("highorder_weights", format!("scale {ai} must be positive")));
        }
    }
    let sq: Vec<f64> = a.iter().map(|x| x * x).collect();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (sq[i] - sq[j]).abs() <= 1e-12 * sq[i].max(sq[j]) {
                return Err(Error::DuplicateScale { i, j, a_i: a[i], a_j: a[j] });
            }
        }
    }
    if a.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain("highorder_weights", "scales must be strictly increasing"));
    }
    let lambda: Vec<f64> =
        (0..a.len()).map(|i| (0..a.len()).filter(|&j| j != i).map(|j| sq[j] / (sq[j] - sq[i])).product()).collect();

    for p in 0..a.len() {
        let mut s = 0.0;
        let mut scale = 0.0;
        for (l, q) in lambda.iter().zip(&sq) {
            let term = l * q.powi(p as i32);
            s += term;
            scale += term.abs();
        }
        let want = if p == 0 { 1.0 } else { 0.0 };
        if (s - want).abs() > 1e-9 * scale.max(1.0) {
            return Err(Error::Numeric(format!("high-order moment {p} is {s}, expected {want}")));
        }
    }
    Ok(lambda)
}

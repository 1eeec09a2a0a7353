//! Numerical checks of the coefficient conditions behind the error bounds.
//!
//! With `N_ρ = ⌊1/ρ - 1⌋` the checks look at
//!
//! * low band: `sup_{1≤ℓ≤N_ρ} |1 - φ̂_ρ(ℓ)| / (ℓρ)^s`
//! * high band: `sup_{N_ρ<ℓ≤L} |φ̂_ρ(ℓ)|`, and for the decay condition
//!   `sup_{N_ρ<ℓ≤L} |φ̂_ρ(ℓ)| (1+ρℓ)^{2σ}`
//!
//! on a grid of scales. A supremum counts as bounded when it grows by at most
//! [`GROWTH_LIMIT`] between successive scales of the grid (which should halve
//! `ρ` or shrink it faster). If `s` is one too large the low-band ratio
//! doubles with every halving.

use crate::error::{Error, Result};
use crate::specfun::Degree;

use super::ZonalKernel;

/// Largest allowed factor between suprema at successive scales.
pub const GROWTH_LIMIT: f64 = 1.25;

/// The high band of the first check extends to this multiple of `N_ρ + 1`.
pub const HIGH_BAND_FACTOR: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct RhoSweep {
    pub rho: f64,
    pub n_rho: usize,
    /// Low-band ratio, `NaN` when the band is empty.
    pub low: f64,
    /// High-band supremum.
    pub high: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assumption1Report {
    pub s: f64,
    pub sweeps: Vec<RhoSweep>,
    /// Largest low-band ratio over the grid.
    pub ratio_sup: f64,
    /// Largest high-band coefficient over the grid.
    pub tail_sup: f64,
    /// Largest growth of the low-band ratio between successive scales.
    pub low_growth: f64,
    /// Largest growth of the high-band supremum between successive scales.
    pub high_growth: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assumption2Report {
    pub sigma: f64,
    pub rho: f64,
    pub ellmax: Degree,
    pub sup: f64,
    /// Degree attaining `sup` (0 when the band is empty).
    pub argmax: Degree,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assumption2Sweep {
    pub reports: Vec<Assumption2Report>,
    pub growth: f64,
    pub pass: bool,
}

fn sorted_grid(rho_grid: &[f64]) -> Result<Vec<f64>> {
    if rho_grid.len() < 2 {
        return Err(Error::Precondition { func: "verify_assumption", msg: "need at least two scales".into() });
    }
    let mut g = rho_grid.to_vec();
    g.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok(g)
}

fn n_rho(rho: f64) -> usize {
    (1.0 / rho - 1.0).floor().max(0.0) as usize
}

fn max_growth(values: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.filter(|x| x.is_finite() && *x > 0.0).collect();
    v.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max)
}

/// Checks `|1 - φ̂_ρ(ℓ)| ≲ (ℓρ)^s` on the low band and `|φ̂_ρ(ℓ)| ≲ 1` on
/// the high band, for `kernel` rescaled to each `ρ` of the grid.
pub fn verify_assumption1(kernel: &ZonalKernel, s: f64, rho_grid: &[f64]) -> Result<Assumption1Report> {
    let grid = sorted_grid(rho_grid)?;
    let mut sweeps = Vec::with_capacity(grid.len());
    for rho in grid {
        let k = ZonalKernel::new(kernel.spec().clone().with_rho(rho))?;
        let n = n_rho(rho);
        let table = k.coeff_table(HIGH_BAND_FACTOR * (n + 1))?.values;
        let low = if n == 0 {
            f64::NAN
        } else {
            (1..=n).map(|l| (1.0 - table[l]).abs() / (l as f64 * rho).powf(s)).fold(0.0, f64::max)
        };
        let high = table[n + 1..].iter().map(|v| v.abs()).fold(0.0, f64::max);
        sweeps.push(RhoSweep { rho, n_rho: n, low, high });
    }
    let ratio_sup = sweeps.iter().map(|s| s.low).filter(|x| !x.is_nan()).fold(0.0, f64::max);
    let tail_sup = sweeps.iter().map(|s| s.high).fold(0.0, f64::max);
    let low_growth = max_growth(sweeps.iter().map(|s| s.low));
    let high_growth = max_growth(sweeps.iter().map(|s| s.high));
    let pass =
        ratio_sup.is_finite() && tail_sup.is_finite() && low_growth <= GROWTH_LIMIT && high_growth <= GROWTH_LIMIT;
    Ok(Assumption1Report { s, sweeps, ratio_sup, tail_sup, low_growth, high_growth, pass })
}

/// `sup_{N_ρ<ℓ≤ellmax} φ̂_ρ(ℓ)(1+ρℓ)^{2σ}` for one kernel; passes when finite.
pub fn verify_assumption2(kernel: &ZonalKernel, sigma: f64, ellmax: Degree) -> Result<Assumption2Report> {
    let rho = kernel.rho();
    let n = n_rho(rho);
    let mut sup = 0.0;
    let mut argmax = 0;
    for ell in n + 1..=ellmax {
        let v = kernel.flc(ell)?.abs() * (1.0 + rho * ell as f64).powf(2.0 * sigma);
        if v > sup || v.is_nan() {
            sup = v;
            argmax = ell;
        }
    }
    Ok(Assumption2Report { sigma, rho, ellmax, sup, argmax, pass: sup.is_finite() })
}

/// Runs [`verify_assumption2`] over a grid of scales with
/// `ellmax = 20 (N_ρ + 1)` and checks that the supremum stays bounded.
pub fn verify_assumption2_sweep(kernel: &ZonalKernel, sigma: f64, rho_grid: &[f64]) -> Result<Assumption2Sweep> {
    let grid = sorted_grid(rho_grid)?;
    let mut reports = Vec::with_capacity(grid.len());
    for rho in grid {
        let k = ZonalKernel::new(kernel.spec().clone().with_rho(rho))?;
        reports.push(verify_assumption2(&k, sigma, 20 * (n_rho(rho) + 1))?);
    }
    let growth = max_growth(reports.iter().map(|r| r.sup));
    let pass = reports.iter().all(|r| r.pass) && growth <= GROWTH_LIMIT;
    Ok(Assumption2Sweep { reports, growth, pass })
}

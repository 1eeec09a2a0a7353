use std::f64::consts::PI;

use super::Degree;
use crate::error::{Error, Result};
use crate::point::SpherePoint;

/// Real orthonormal spherical harmonic `Y_{ℓ,k}` on 𝕊² (∫ Y² dμ = 1, area 4π).
///
/// Order index: `m = k - ℓ - 1 ∈ [-ℓ, ℓ]`, with
/// `m > 0 → √2 P̄_ℓ^m(cos θ) cos(mφ)`, `m < 0 → √2 P̄_ℓ^{|m|}(cos θ) sin(|m|φ)`,
/// `m = 0 → P̄_ℓ^0(cos θ)`. `P̄` is the orthonormalized associated Legendre
/// function without the Condon–Shortley phase.
pub fn sph_harm_s2(ell: Degree, k: usize, p: &SpherePoint) -> Result<f64> {
    if k < 1 || k > 2 * ell + 1 {
        return Err(Error::Index {
            func: "sph_harm_s2",
            msg: format!("k = {k} outside [1, {}] for ell = {ell}", 2 * ell + 1),
        });
    }
    let m = k as i64 - ell as i64 - 1;
    let ma = m.unsigned_abs() as usize;
    let (cos_t, sin_t) = polar(p);
    let plm = assoc_legendre_normalized(ell, ma, cos_t, sin_t);
    Ok(match m {
        0 => plm,
        m if m > 0 => std::f64::consts::SQRT_2 * plm * (ma as f64 * p.longitude()).cos(),
        _ => std::f64::consts::SQRT_2 * plm * (ma as f64 * p.longitude()).sin(),
    })
}

fn polar(p: &SpherePoint) -> (f64, f64) {
    let sin_t = p.x().hypot(p.y());
    (p.z().clamp(-1.0, 1.0), sin_t)
}

/// `P̄_ℓ^m` scaled so that `Σ_m` forms of it are orthonormal on the sphere.
fn assoc_legendre_normalized(ell: usize, m: usize, x: f64, s: f64) -> f64 {
    if m > ell {
        return 0.0;
    }
    let mut pmm = 1.0 / (4.0 * PI).sqrt();
    for j in 1..=m {
        let jf = j as f64;
        pmm *= ((2.0 * jf + 1.0) / (2.0 * jf)).sqrt() * s;
    }
    if ell == m {
        return pmm;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = (2.0 * mf + 3.0).sqrt() * x * pmm;
    for l in (m + 2)..=ell {
        let (a, b) = recurrence_coeffs(l, m);
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

#[inline]
fn recurrence_coeffs(l: usize, m: usize) -> (f64, f64) {
    let lf = l as f64;
    let mf = m as f64;
    let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
    let lm1 = lf - 1.0;
    let b = ((lm1 * lm1 - mf * mf) / (4.0 * lm1 * lm1 - 1.0)).sqrt();
    (a, b)
}

/// All real harmonics `Y_{ℓ,k}`, `ℓ ≤ lmax`, at one point.
///
/// Filled by one associated-Legendre sweep per order `m`; used wherever many
/// degrees are needed at the same point (exactness checks, projections).
#[derive(Debug, Clone)]
pub struct SphHarmTable {
    lmax: usize,
    // P̄_ℓ^m at idx(ℓ, m) = ℓ(ℓ+1)/2 + m
    plm: Vec<f64>,
    cos_m: Vec<f64>,
    sin_m: Vec<f64>,
}

impl SphHarmTable {
    pub fn new(lmax: usize) -> Self {
        let n = (lmax + 1) * (lmax + 2) / 2;
        SphHarmTable { lmax, plm: vec![0.0; n], cos_m: vec![0.0; lmax + 1], sin_m: vec![0.0; lmax + 1] }
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    #[inline]
    fn idx(l: usize, m: usize) -> usize {
        l * (l + 1) / 2 + m
    }

    /// Recomputes the table at `p`.
    pub fn fill(&mut self, p: &SpherePoint) {
        let (x, s) = polar(p);
        let phi = p.longitude();
        let lmax = self.lmax;
        let mut pmm = 1.0 / (4.0 * PI).sqrt();
        for m in 0..=lmax {
            if m > 0 {
                let mf = m as f64;
                pmm *= ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s;
            }
            let (sm, cm) = (m as f64 * phi).sin_cos();
            self.cos_m[m] = cm;
            self.sin_m[m] = sm;
            self.plm[Self::idx(m, m)] = pmm;
            if m == lmax {
                break;
            }
            let mut prev = pmm;
            let mut cur = (2.0 * m as f64 + 3.0).sqrt() * x * pmm;
            self.plm[Self::idx(m + 1, m)] = cur;
            for l in (m + 2)..=lmax {
                let (a, b) = recurrence_coeffs(l, m);
                let next = a * (x * cur - b * prev);
                prev = cur;
                cur = next;
                self.plm[Self::idx(l, m)] = cur;
            }
        }
    }

    /// `Y_{ℓ,k}` with the same index convention as [`sph_harm_s2`].
    #[inline]
    pub fn get(&self, ell: usize, k: usize) -> f64 {
        let m = k as i64 - ell as i64 - 1;
        let ma = m.unsigned_abs() as usize;
        let plm = self.plm[Self::idx(ell, ma)];
        match m {
            0 => plm,
            m if m > 0 => std::f64::consts::SQRT_2 * plm * self.cos_m[ma],
            _ => std::f64::consts::SQRT_2 * plm * self.sin_m[ma],
        }
    }
}

use std::ops::Neg;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Result};

/// Tolerance on `| |v| - 1 |` accepted by [`SpherePoint::new`].
pub const UNIT_TOLERANCE: f64 = 1e-8;

/// A point on the unit sphere 𝕊² ⊂ ℝ³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint([f64; 3]);

impl SpherePoint {
    pub const NORTH: SpherePoint = SpherePoint([0.0, 0.0, 1.0]);
    pub const SOUTH: SpherePoint = SpherePoint([0.0, 0.0, -1.0]);

    /// Accepts vectors within [`UNIT_TOLERANCE`] of unit length and renormalizes them.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(domain("SpherePoint::new", format!("|v| = {norm} is not 1")));
        }
        Ok(SpherePoint([x / norm, y / norm, z / norm]))
    }

    /// Projects any nonzero finite vector onto the sphere.
    pub fn normalize(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(domain("SpherePoint::normalize", "zero or non-finite vector"));
        }
        Ok(SpherePoint([v[0] / norm, v[1] / norm, v[2] / norm]))
    }

    /// Colatitude `theta` in [0, π] and longitude `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        SpherePoint([st * cp, st * sp, ct])
    }

    /// Caller guarantees unit length.
    pub(crate) const fn from_unit(v: [f64; 3]) -> Self {
        SpherePoint(v)
    }

    /// Uniformly distributed point (normalized 3-D Gaussian).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
            if let Ok(p) = Self::normalize(v) {
                return p;
            }
        }
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }
    pub fn y(&self) -> f64 {
        self.0[1]
    }
    pub fn z(&self) -> f64 {
        self.0[2]
    }
    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    /// Inner product clamped to [-1, 1].
    #[inline]
    pub fn dot(&self, other: &SpherePoint) -> f64 {
        let d = self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2];
        d.clamp(-1.0, 1.0)
    }

    /// Euclidean (chord) distance in ℝ³.
    pub fn chord(&self, other: &SpherePoint) -> f64 {
        (2.0 - 2.0 * self.dot(other)).max(0.0).sqrt()
    }

    pub fn colatitude(&self) -> f64 {
        self.0[2].clamp(-1.0, 1.0).acos()
    }

    pub fn longitude(&self) -> f64 {
        self.0[1].atan2(self.0[0])
    }
}

impl Neg for SpherePoint {
    type Output = SpherePoint;
    fn neg(self) -> SpherePoint {
        SpherePoint([-self.0[0], -self.0[1], -self.0[2]])
    }
}

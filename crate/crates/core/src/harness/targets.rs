//! Test functions on 𝕊².

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::point::SpherePoint;
use crate::specfun::sph_harm_s2;

/// Number of Gaussian bumps in `f₂`.
pub const F2_TERMS: usize = 23;

/// `f₁ = Y_{6,4}`, a degree-6 harmonic that vanishes at the poles.
pub fn target_f1(x: &SpherePoint) -> f64 {
    sph_harm_s2(6, 4, x).expect("valid harmonic index")
}

/// `f₂(x) = Σ_k exp(-10 arccos(ξ_k·x))`.
pub fn target_f2(x: &SpherePoint, centers: &[SpherePoint]) -> f64 {
    centers.iter().map(|c| (-10.0 * c.dot(x).acos()).exp()).sum()
}

/// Bump centers for `f₂`, uniform on the sphere and fixed by `seed`.
pub fn f2_centers(seed: u64) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..F2_TERMS).map(|_| SpherePoint::random(&mut rng)).collect()
}

/// `f₃(x) = (1 - ‖x - p‖)²₊` with `p` the north pole; C¹ across `x·p = 1/2`.
pub fn target_f3(x: &SpherePoint) -> f64 {
    let chord = (2.0 - 2.0 * x.z()).max(0.0).sqrt();
    let u = (1.0 - chord).max(0.0);
    u * u
}

/// Wendland's C² function `(1-r)⁴₊(4r+1)`.
pub fn wendland_phi3(r: f64) -> f64 {
    let u = (1.0 - r).max(0.0);
    u.powi(4) * (4.0 * r + 1.0)
}

const AXIS_POLES: [[f64; 3]; 6] =
    [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];

/// Sum of [`wendland_phi3`] bumps at the six poles `±eᵢ`.
pub fn target_wendland6(x: &SpherePoint) -> f64 {
    let [a, b, c] = x.coords();
    AXIS_POLES
        .iter()
        .map(|z| {
            let r = ((a - z[0]).powi(2) + (b - z[1]).powi(2) + (c - z[2]).powi(2)).sqrt();
            wendland_phi3(r)
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    F1,
    F2,
    F3,
    Wendland6,
}

impl FromStr for TargetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "f1" => Ok(TargetKind::F1),
            "f2" => Ok(TargetKind::F2),
            "f3" => Ok(TargetKind::F3),
            "wendland6" => Ok(TargetKind::Wendland6),
            other => Err(Error::Config(format!("unknown target `{other}` (f1, f2, f3, wendland6)"))),
        }
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetKind::F1 => "f1",
            TargetKind::F2 => "f2",
            TargetKind::F3 => "f3",
            TargetKind::Wendland6 => "wendland6",
        })
    }
}

/// A concrete target, with `f₂`'s centers already drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    F1,
    F2(Vec<SpherePoint>),
    F3,
    Wendland6,
}

impl Target {
    pub fn new(kind: TargetKind, seed: u64) -> Self {
        match kind {
            TargetKind::F1 => Target::F1,
            TargetKind::F2 => Target::F2(f2_centers(seed)),
            TargetKind::F3 => Target::F3,
            TargetKind::Wendland6 => Target::Wendland6,
        }
    }

    pub fn eval(&self, x: &SpherePoint) -> f64 {
        match self {
            Target::F1 => target_f1(x),
            Target::F2(c) => target_f2(x, c),
            Target::F3 => target_f3(x),
            Target::Wendland6 => target_wendland6(x),
        }
    }
}

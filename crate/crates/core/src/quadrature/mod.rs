//! Positive quadrature rules on 𝕊².

mod gauss;
mod md;

use std::f64::consts::PI;

pub use gauss::{gauss_legendre_1d, Gauss1D};
pub use md::load_md_nodes;

use crate::error::{Error, Result};
use crate::point::SpherePoint;
use crate::specfun::SphHarmTable;

/// Allowed deviation of `Σ wⱼ` from `4π`.
pub const MASS_TOLERANCE: f64 = 1e-10;

/// Points and positive weights integrating polynomials of degree `≤ order`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    points: Vec<SpherePoint>,
    weights: Vec<f64>,
    order: usize,
}

impl QuadratureRule {
    pub fn new(points: Vec<SpherePoint>, weights: Vec<f64>, order: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition { func: "QuadratureRule::new", msg: "empty rule".into() });
        }
        if points.len() != weights.len() {
            return Err(Error::Precondition {
                func: "QuadratureRule::new",
                msg: format!("{} points but {} weights", points.len(), weights.len()),
            });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w <= 0.0) {
            return Err(Error::Precondition {
                func: "QuadratureRule::new",
                msg: format!("weight {w} is not positive"),
            });
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 4.0 * PI).abs() > MASS_TOLERANCE {
            return Err(Error::Precondition {
                func: "QuadratureRule::new",
                msg: format!("weights sum to {mass}, expected 4π"),
            });
        }
        Ok(QuadratureRule { points, weights, order })
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `Σ wⱼ f(xⱼ)`.
    pub fn integrate(&self, f: impl Fn(&SpherePoint) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| w * f(p)).sum()
    }
}

/// Gauss–Legendre in `z` times the trapezoidal rule in longitude.
///
/// `⌈(n+1)/2⌉` latitudes and `n+1` longitudes; exact for degree `n`.
pub fn product_rule_s2(n: usize) -> Result<QuadratureRule> {
    let rings = (n + 2) / 2;
    let lon = n + 1;
    let g = gauss_legendre_1d(rings)?;
    let mut points = Vec::with_capacity(rings * lon);
    let mut weights = Vec::with_capacity(rings * lon);
    let dphi = 2.0 * PI / lon as f64;
    for (z, v) in g.nodes.iter().zip(&g.weights) {
        let r = (1.0 - z * z).max(0.0).sqrt();
        for k in 0..lon {
            let phi = dphi * k as f64;
            points.push(SpherePoint::from_unit([r * phi.cos(), r * phi.sin(), *z]));
            weights.push(dphi * v);
        }
    }
    QuadratureRule::new(points, weights, n)
}

/// Exactness defect of a rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactnessReport {
    /// `max |Σ wⱼ Y_{ℓ,k}(xⱼ)|` over `1 ≤ ℓ ≤ nmax`.
    pub harmonic: f64,
    /// `|Σ wⱼ - 4π|`.
    pub weight_sum: f64,
}

impl ExactnessReport {
    pub fn max_error(&self) -> f64 {
        self.harmonic.max(self.weight_sum)
    }
}

/// Integrates every real spherical harmonic of degree `1..=nmax`, which must
/// all vanish for a rule exact to that degree.
pub fn verify_exactness(rule: &QuadratureRule, nmax: usize) -> ExactnessReport {
    let mut table = SphHarmTable::new(nmax);
    let mut sums = vec![0.0; (nmax + 1) * (nmax + 1)];
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        table.fill(p);
        for ell in 1..=nmax {
            for k in 1..=2 * ell + 1 {
                sums[ell * ell + k - 1] += w * table.get(ell, k);
            }
        }
    }
    let harmonic = sums.iter().skip(1).fold(0.0f64, |m, s| m.max(s.abs()));
    let weight_sum = (rule.weights.iter().sum::<f64>() - 4.0 * PI).abs();
    ExactnessReport { harmonic, weight_sum }
}

//! Scaled zonal kernels and their Fourier–Legendre coefficients.
//!
//! A kernel `φ_ρ(x·y)` acts on `f` by spherical convolution, and every
//! spherical harmonic of degree ℓ is an eigenfunction with eigenvalue
//! `φ̂_ρ(ℓ)`. The families here are normalized so that `φ̂_ρ(ℓ) → 1` as
//! `ρ → 0`, which makes the convolution an approximate identity.

mod assumptions;
mod coeffs;
mod oracle;

use std::f64::consts::PI;
use std::fmt;

pub use assumptions::{
    verify_assumption1, verify_assumption2, verify_assumption2_sweep, Assumption1Report, Assumption2Report,
    Assumption2Sweep, RhoSweep,
};
pub use coeffs::{
    cs_flc, cs_flc_gegenbauer, cs_flc_hypergeometric, gaussian_flc, gaussian_flc_hadamard, highorder_weights,
    poisson_flc,
};
pub use oracle::flc_numeric;

use crate::error::{domain, Error, Result};
use crate::specfun::{ln_gamma, Degree, ARG_TOLERANCE};

/// Underlying radial profile of a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseFamily {
    /// Spherical Poisson kernel with `α = 1 - ρ`.
    Poisson,
    /// Restricted Gaussian `exp(-‖x-y‖²/(2ρ²))`.
    Gaussian,
    /// Restricted `(1 - ‖x-y‖²/ρ²)_+^m`.
    CompactSupport { m: u32 },
}

impl BaseFamily {
    pub fn name(&self) -> &'static str {
        match self {
            BaseFamily::Poisson => "poisson",
            BaseFamily::Gaussian => "gaussian",
            BaseFamily::CompactSupport { .. } => "cs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Base(BaseFamily),
    /// `Σ λᵢ φ_{aᵢρ}` with the moment-cancelling weights of [`highorder_weights`].
    HighOrder {
        base: BaseFamily,
        scales: Vec<f64>,
    },
}

/// Declarative description of a kernel: family, scale and sphere dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    pub family: Family,
    pub rho: f64,
    /// Sphere dimension `d` of 𝕊ᵈ.
    pub d: usize,
}

impl KernelSpec {
    pub fn poisson(rho: f64) -> Self {
        Self::base(BaseFamily::Poisson, rho)
    }

    pub fn gaussian(rho: f64) -> Self {
        Self::base(BaseFamily::Gaussian, rho)
    }

    pub fn compact_support(rho: f64, m: u32) -> Self {
        Self::base(BaseFamily::CompactSupport { m }, rho)
    }

    pub fn base(family: BaseFamily, rho: f64) -> Self {
        KernelSpec { family: Family::Base(family), rho, d: 2 }
    }

    /// High-order combination with explicit scales `a`.
    pub fn high_order(base: BaseFamily, rho: f64, scales: Vec<f64>) -> Self {
        KernelSpec { family: Family::HighOrder { base, scales }, rho, d: 2 }
    }

    /// High-order combination with the default scales `aᵢ = i`.
    pub fn high_order_default(base: BaseFamily, rho: f64, k: usize) -> Self {
        Self::high_order(base, rho, default_scales(k))
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = rho;
        self
    }

    pub fn with_dim(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    pub fn base_family(&self) -> BaseFamily {
        match &self.family {
            Family::Base(b) => *b,
            Family::HighOrder { base, .. } => *base,
        }
    }

    /// Order `s` of the coefficient approximation `|1 - φ̂| = O((ℓρ)^s)`.
    pub fn nominal_order(&self) -> u32 {
        let base = match self.base_family() {
            BaseFamily::Poisson => 1,
            _ => 2,
        };
        match &self.family {
            Family::Base(_) => base,
            Family::HighOrder { scales, .. } if base == 2 => 2 * scales.len() as u32,
            Family::HighOrder { .. } => base,
        }
    }
}

pub fn default_scales(k: usize) -> Vec<f64> {
    (1..=k).map(|i| i as f64).collect()
}

impl KernelSpec {
    /// The specification without its scale, e.g. `cs:m=4`.
    pub fn label(&self) -> String {
        let mut s = String::new();
        self.write_spec(&mut s, false).expect("writing to a String");
        s
    }

    fn write_spec(&self, f: &mut impl fmt::Write, with_rho: bool) -> fmt::Result {
        let base = self.base_family();
        let mut params: Vec<String> = Vec::new();
        let head = match &self.family {
            Family::Base(_) => base.name().to_string(),
            Family::HighOrder { scales, .. } => {
                let a: Vec<String> = scales.iter().map(|a| a.to_string()).collect();
                params.push(format!("base={}", base.name()));
                params.push(format!("K={}", scales.len()));
                params.push(format!("a={}", a.join("/")));
                "ho".to_string()
            }
        };
        if with_rho {
            params.push(format!("rho={}", self.rho));
        }
        if let BaseFamily::CompactSupport { m } = base {
            params.push(format!("m={m}"));
        }
        if self.d != 2 {
            params.push(format!("d={}", self.d));
        }
        if params.is_empty() {
            write!(f, "{head}")
        } else {
            write!(f, "{head}:{}", params.join(","))
        }
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_spec(f, true)
    }
}

/// One scaled radial profile inside a (possibly combined) kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Component {
    pub weight: f64,
    pub family: BaseFamily,
    pub rho: f64,
    pub normalization: f64,
}

/// A validated kernel ready for evaluation. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalKernel {
    spec: KernelSpec,
    components: Vec<Component>,
}

/// Surface area of 𝕊ᵈ.
pub fn sphere_area(d: usize) -> f64 {
    let h = (d as f64 + 1.0) / 2.0;
    2.0 * PI.powf(h) / ln_gamma(h).exp()
}

fn normalization(family: BaseFamily, rho: f64, d: usize) -> f64 {
    let df = d as f64;
    match family {
        BaseFamily::Poisson => 1.0 / sphere_area(d),
        BaseFamily::Gaussian => (2.0 * PI).powf(-df / 2.0) * rho.powf(-df),
        BaseFamily::CompactSupport { m } => {
            let m = m as f64;
            (ln_gamma(m + df / 2.0 + 1.0) - ln_gamma(m + 1.0)).exp() / (PI.powf(df / 2.0) * rho.powf(df))
        }
    }
}

fn check_component_rho(family: BaseFamily, rho: f64, spec: &KernelSpec) -> Result<()> {
    let ok = match family {
        BaseFamily::Poisson => rho > 0.0 && rho <= 1.0,
        _ => rho > 0.0 && rho.is_finite(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::KernelSpec {
            spec: spec.to_string(),
            msg: format!("scale {rho} out of range for {}", family.name()),
        })
    }
}

impl ZonalKernel {
    pub fn new(spec: KernelSpec) -> Result<Self> {
        if spec.d < 2 {
            return Err(Error::KernelSpec { spec: spec.to_string(), msg: "sphere dimension must be >= 2".into() });
        }
        if !(spec.rho > 0.0 && spec.rho.is_finite()) {
            return Err(Error::KernelSpec { spec: spec.to_string(), msg: "rho must be positive".into() });
        }
        let components = match &spec.family {
            Family::Base(b) => {
                check_component_rho(*b, spec.rho, &spec)?;
                vec![Component {
                    weight: 1.0,
                    family: *b,
                    rho: spec.rho,
                    normalization: normalization(*b, spec.rho, spec.d),
                }]
            }
            Family::HighOrder { base, scales } => {
                let lambda = highorder_weights(scales.len(), scales)?;
                let mut comps = Vec::with_capacity(scales.len());
                for (a, l) in scales.iter().zip(lambda) {
                    let rho_i = a * spec.rho;
                    check_component_rho(*base, rho_i, &spec)?;
                    comps.push(Component {
                        weight: l,
                        family: *base,
                        rho: rho_i,
                        normalization: normalization(*base, rho_i, spec.d),
                    });
                }
                comps
            }
        };
        Ok(ZonalKernel { spec, components })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn rho(&self) -> f64 {
        self.spec.rho
    }

    pub fn dim(&self) -> usize {
        self.spec.d
    }

    /// Combination weights `λᵢ` (a single `1.0` for base kernels).
    pub fn weights(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.weight).collect()
    }

    pub(crate) fn components(&self) -> &[Component] {
        &self.components
    }

    /// `φ_ρ(t)` for `t = x·y`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t.abs() > 1.0 + ARG_TOLERANCE {
            return Err(domain("kernel_eval", format!("|t| = {} exceeds 1", t.abs())));
        }
        Ok(self.eval_clamped(t))
    }

    /// `φ_ρ(t)` with `t` clamped into [-1, 1]; the evaluation hot path.
    #[inline]
    pub fn eval_clamped(&self, t: f64) -> f64 {
        let t = t.clamp(-1.0, 1.0);
        let d = self.spec.d;
        let mut acc = 0.0;
        for c in &self.components {
            acc += c.weight * component_value(c, d, t);
        }
        acc
    }

    /// Smallest `t` at which the kernel can still contribute. Below it every
    /// component is either exactly zero (compact support) or smaller than
    /// `e^{-40}` times its peak (Gaussian).
    pub fn support_threshold(&self) -> f64 {
        let mut tmin = 1.0f64;
        for c in &self.components {
            let t = match c.family {
                BaseFamily::Poisson => -1.0,
                BaseFamily::Gaussian => 1.0 - GAUSSIAN_TAIL_EXPONENT * c.rho * c.rho,
                BaseFamily::CompactSupport { .. } => 1.0 - 0.5 * c.rho * c.rho,
            };
            tmin = tmin.min(t);
        }
        tmin.max(-1.0)
    }

    /// Fourier–Legendre coefficient `φ̂_ρ(ℓ)`.
    ///
    /// Closed forms are used on 𝕊²; Poisson coefficients are closed-form in
    /// every dimension. Anything else falls back to [`flc_numeric`].
    pub fn flc(&self, ell: Degree) -> Result<f64> {
        let d = self.spec.d;
        let needs_numeric = d != 2 && self.components.iter().any(|c| c.family != BaseFamily::Poisson);
        if needs_numeric {
            log::warn!("no closed-form coefficients for d={d}; using quadrature for {}", self.spec);
            return Ok(flc_numeric(self, ell, ORACLE_ORDER));
        }
        let mut acc = 0.0;
        for c in &self.components {
            let v = match c.family {
                BaseFamily::Poisson => poisson_flc(ell, 1.0 - c.rho),
                BaseFamily::Gaussian => gaussian_flc(ell, c.rho, d)?,
                BaseFamily::CompactSupport { m } => cs_flc(ell, c.rho, m, d)?,
            };
            acc += c.weight * v;
        }
        Ok(acc)
    }

    /// Coefficients `φ̂_ρ(0..=ellmax)`.
    pub fn coeff_table(&self, ellmax: Degree) -> Result<CoeffTable> {
        let values = (0..=ellmax).map(|l| self.flc(l)).collect::<Result<Vec<_>>>()?;
        Ok(CoeffTable { ellmax, values })
    }
}

/// Nodes per panel when coefficients come from quadrature.
pub const ORACLE_ORDER: usize = 30;

/// Gaussian components are treated as zero once `(1-t)/ρ² >` this value.
pub const GAUSSIAN_TAIL_EXPONENT: f64 = 40.0;

#[inline]
fn component_value(c: &Component, d: usize, t: f64) -> f64 {
    match c.family {
        BaseFamily::Poisson => {
            let alpha = 1.0 - c.rho;
            let denom = 1.0 + alpha * alpha - 2.0 * alpha * t;
            let p = if d == 2 { denom * denom.sqrt() } else { denom.powf((d as f64 + 1.0) / 2.0) };
            c.normalization * (1.0 - alpha * alpha) / p
        }
        BaseFamily::Gaussian => c.normalization * (-(1.0 - t) / (c.rho * c.rho)).exp(),
        BaseFamily::CompactSupport { m } => {
            let u = 1.0 - (2.0 - 2.0 * t) / (c.rho * c.rho);
            if u <= 0.0 {
                0.0
            } else {
                c.normalization * u.powi(m as i32)
            }
        }
    }
}

/// `φ̂_ρ(0..=ellmax)` for one kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    pub ellmax: Degree,
    pub values: Vec<f64>,
}

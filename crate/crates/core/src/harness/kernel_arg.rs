//! Kernel specification strings.
//!
//! ```text
//! spec   := family [ ":" param { "," param } ]
//! family := "poisson" | "gaussian" | "cs" | "ho"
//! param  := key "=" value
//! ```
//!
//! | key    | value                      | default      | meaning                                   |
//! |--------|----------------------------|--------------|-------------------------------------------|
//! | `rho`  | positive real              | `0.1`        | scale ρ (replaced by the ρ-rule in runs)  |
//! | `d`    | integer ≥ 2                | `2`          | sphere dimension                          |
//! | `m`    | integer ≥ 0                | `4`          | exponent of the compactly supported kernel|
//! | `K`    | integer ≥ 1                | `1`          | number of scales in a combination         |
//! | `a`    | reals separated by `/`     | `1/2/…/K`    | combination scales aᵢ                     |
//! | `base` | `poisson`, `gaussian`, `cs`| `gaussian`   | base family of `ho`                       |
//!
//! A base family with `K > 1` or more than one scale is a high-order
//! combination, so `gaussian:K=3` and `ho:base=gaussian,K=3` are the same
//! kernel. `m` applies to `cs` and to `ho` with `base=cs`. Keys may not repeat.
//!
//! Examples: `gaussian:rho=0.1`, `cs:rho=0.2,m=2`, `ho:base=cs,K=3,a=0.5/1/1.5,m=4`.

use crate::error::{Error, Result};
use crate::kernels::{default_scales, BaseFamily, KernelSpec};

pub const DEFAULT_RHO: f64 = 0.1;
pub const DEFAULT_M: u32 = 4;

fn err(spec: &str, msg: impl Into<String>) -> Error {
    Error::KernelSpec { spec: spec.to_string(), msg: msg.into() }
}

fn parse_base(spec: &str, s: &str) -> Result<Option<BaseFamily>> {
    match s {
        "poisson" => Ok(Some(BaseFamily::Poisson)),
        "gaussian" => Ok(Some(BaseFamily::Gaussian)),
        "cs" => Ok(Some(BaseFamily::CompactSupport { m: DEFAULT_M })),
        "ho" => Ok(None),
        other => Err(err(spec, format!("unknown family `{other}`"))),
    }
}

/// Parses a kernel specification string.
pub fn parse_kernel_spec(spec: &str) -> Result<KernelSpec> {
    let spec = spec.trim();
    let (family, params) = match spec.split_once(':') {
        Some((f, p)) => (f.trim(), p.trim()),
        None => (spec, ""),
    };
    let family = family.to_ascii_lowercase();
    let top = parse_base(spec, &family)?;

    let mut rho = None;
    let mut d = None;
    let mut m = None;
    let mut k = None;
    let mut a: Option<Vec<f64>> = None;
    let mut base = None;
    let mut seen = Vec::new();
    for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| err(spec, format!("`{item}` is not key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        if seen.contains(&key) {
            return Err(err(spec, format!("repeated key `{key}`")));
        }
        seen.push(key);
        let real = |v: &str| v.parse::<f64>().map_err(|_| err(spec, format!("`{v}` is not a number")));
        let int = |v: &str| v.parse::<usize>().map_err(|_| err(spec, format!("`{v}` is not a nonnegative integer")));
        match key {
            "rho" => rho = Some(real(value)?),
            "d" => d = Some(int(value)?),
            "m" => m = Some(u32::try_from(int(value)?).map_err(|_| err(spec, "m too large"))?),
            "K" | "k" => k = Some(int(value)?),
            "a" => a = Some(value.split('/').map(|v| real(v.trim())).collect::<Result<_>>()?),
            "base" => match parse_base(spec, &value.to_ascii_lowercase())? {
                Some(b) => base = Some(b),
                None => return Err(err(spec, "high-order kernels cannot be nested")),
            },
            other => return Err(err(spec, format!("unknown key `{other}`"))),
        }
    }

    let base_family = match (top, base) {
        (Some(_), Some(_)) => return Err(err(spec, "`base` only applies to `ho`")),
        (Some(b), None) => b,
        (None, b) => b.unwrap_or(BaseFamily::Gaussian),
    };
    let base_family = match (base_family, m) {
        (BaseFamily::CompactSupport { .. }, Some(m)) => BaseFamily::CompactSupport { m },
        (_, Some(_)) => return Err(err(spec, "`m` only applies to the compactly supported family")),
        (b, None) => b,
    };

    let scales = match (k, a) {
        (Some(0), _) => return Err(err(spec, "K must be at least 1")),
        (Some(k), Some(a)) if a.len() != k => return Err(err(spec, format!("K={k} but {} scales given", a.len()))),
        (_, Some(a)) => a,
        (Some(k), None) => default_scales(k),
        (None, None) if top.is_none() => return Err(err(spec, "`ho` needs K or a")),
        (None, None) => vec![1.0],
    };

    let rho = rho.unwrap_or(DEFAULT_RHO);
    let out = if top.is_some() && scales.len() == 1 && scales[0] == 1.0 {
        KernelSpec::base(base_family, rho)
    } else {
        KernelSpec::high_order(base_family, rho, scales)
    };
    let out = out.with_dim(d.unwrap_or(2));
    if out.d < 2 {
        return Err(err(spec, "d must be at least 2"));
    }
    Ok(out)
}

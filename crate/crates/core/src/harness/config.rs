use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;

use super::kernel_arg::parse_kernel_spec;
use super::targets::TargetKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Converge,
    Noise,
    Timing,
    Coeffs,
    Quadcheck,
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "converge" => Ok(Experiment::Converge),
            "noise" => Ok(Experiment::Noise),
            "timing" => Ok(Experiment::Timing),
            "coeffs" => Ok(Experiment::Coeffs),
            "quadcheck" => Ok(Experiment::Quadcheck),
            other => Err(Error::Config(format!("unknown experiment `{other}`"))),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::Converge => "converge",
            Experiment::Noise => "noise",
            Experiment::Timing => "timing",
            Experiment::Coeffs => "coeffs",
            Experiment::Quadcheck => "quadcheck",
        })
    }
}

/// `ρ = c · n^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoRule {
    pub c: f64,
    pub exponent: f64,
}

impl RhoRule {
    pub fn rho(&self, n: usize) -> f64 {
        self.c * (n as f64).powf(self.exponent)
    }
}

pub const DEFAULT_RHO_EXPONENT: f64 = -0.5;
pub const DEFAULT_TRIALS: usize = 30;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub kernel: KernelSpec,
    pub target: TargetKind,
    pub n_list: Vec<usize>,
    /// When absent the kernel's own `ρ` is used for every `n`.
    pub rho_rule: Option<RhoRule>,
    pub noise_levels: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Order of the evaluation rule; defaults to `2 · max(n_list)`.
    pub eval_order: Option<usize>,
    /// Node file, optionally containing `{n}` to select one file per degree.
    pub md_path: Option<String>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults for each experiment.
    pub fn new(experiment: Experiment) -> Self {
        let (kernel, target, n_list, noise_levels) = match experiment {
            Experiment::Noise | Experiment::Timing => (
                KernelSpec::gaussian(0.1),
                TargetKind::Wendland6,
                vec![4, 8, 16, 32, 48, 70],
                vec![0.001, 0.01, 0.1, 0.3, 0.5],
            ),
            _ => (KernelSpec::gaussian(0.1), TargetKind::F1, vec![10, 20, 40, 80, 160], vec![]),
        };
        ExperimentConfig {
            experiment,
            kernel,
            target,
            n_list,
            rho_rule: Some(RhoRule { c: 1.0, exponent: DEFAULT_RHO_EXPONENT }),
            noise_levels,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            eval_order: None,
            md_path: None,
            out: None,
        }
    }

    pub fn max_n(&self) -> usize {
        self.n_list.iter().copied().max().unwrap_or(0)
    }

    pub fn eval_order(&self) -> usize {
        self.eval_order.unwrap_or(2 * self.max_n())
    }

    pub fn rho_for(&self, n: usize) -> f64 {
        match self.rho_rule {
            Some(r) => r.rho(n),
            None => self.kernel.rho,
        }
    }

    /// Quadrature node file for degree `n`, if one was configured.
    pub fn md_path_for(&self, n: usize) -> Option<PathBuf> {
        self.md_path.as_ref().map(|p| PathBuf::from(p.replace("{n}", &n.to_string())))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(Error::Config("n list is empty".into()));
        }
        if self.n_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("n list must be strictly increasing".into()));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.noise_levels.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return Err(Error::Config("noise levels must be finite and nonnegative".into()));
        }
        if let Some(r) = self.rho_rule {
            if !r.c.is_finite() || r.c <= 0.0 || !r.exponent.is_finite() {
                return Err(Error::Config("rho rule needs c > 0 and a finite exponent".into()));
            }
        }
        if matches!(self.experiment, Experiment::Converge | Experiment::Noise | Experiment::Timing) {
            let eo = self.eval_order();
            if eo < 2 * self.max_n() {
                return Err(Error::Config(format!("evaluation order {eo} is below 2 * max(n) = {}", 2 * self.max_n())));
            }
            if let Some(p) = &self.md_path {
                if !p.contains("{n}") && self.n_list.len() > 1 {
                    return Err(Error::Config(
                        "a single node file cannot serve several n; use a `{n}` placeholder".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Applies `key=value` settings. Keys match the long CLI flags without
    /// the dashes; `-` and `_` are interchangeable.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let bad = |what: &str| Error::Config(format!("invalid {what} `{value}`"));
        match key.trim().replace('_', "-").as_str() {
            "kernel" => self.kernel = parse_kernel_spec(value)?,
            "target" => self.target = value.parse()?,
            "n" => self.n_list = parse_list(value).map_err(|_| bad("n list"))?,
            "rho-c" => {
                let c = value.parse().map_err(|_| bad("rho-c"))?;
                let exponent = self.rho_rule.map_or(DEFAULT_RHO_EXPONENT, |r| r.exponent);
                self.rho_rule = Some(RhoRule { c, exponent });
            }
            "rho-exp" => {
                let exponent = value.parse().map_err(|_| bad("rho-exp"))?;
                let c = self.rho_rule.map_or(1.0, |r| r.c);
                self.rho_rule = Some(RhoRule { c, exponent });
            }
            "rho-fixed" => {
                if matches!(value, "true" | "1" | "yes") {
                    self.rho_rule = None;
                }
            }
            "noise" => self.noise_levels = parse_list(value).map_err(|_| bad("noise levels"))?,
            "trials" => self.trials = value.parse().map_err(|_| bad("trials"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "eval-order" => self.eval_order = Some(value.parse().map_err(|_| bad("eval-order"))?),
            "md-nodes" => self.md_path = Some(value.to_string()),
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown setting `{other}`"))),
        }
        Ok(())
    }

    /// Applies a file of `key=value` lines (`#` comments, blank lines ignored).
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
            self.apply(k, v)?;
        }
        Ok(())
    }
}

fn parse_list<T: FromStr>(s: &str) -> std::result::Result<Vec<T>, T::Err> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_are_valid() {
        for e in
            [Experiment::Converge, Experiment::Noise, Experiment::Timing, Experiment::Coeffs, Experiment::Quadcheck]
        {
            ExperimentConfig::new(e).validate().unwrap();
        }
        let c = ExperimentConfig::new(Experiment::Converge);
        assert_eq!(c.eval_order(), 320);
        assert_eq!(c.trials, 30);
        assert_eq!(c.seed, 42);
    }

    #[test]
    fn apply_settings() {
        let mut c = ExperimentConfig::new(Experiment::Converge);
        c.apply("kernel", "cs:m=2").unwrap();
        c.apply("n", "4, 8,16").unwrap();
        c.apply("rho_c", "1.5").unwrap();
        c.apply("noise", "0.1,0.5").unwrap();
        assert_eq!(c.n_list, vec![4, 8, 16]);
        assert_eq!(c.rho_rule, Some(RhoRule { c: 1.5, exponent: -0.5 }));
        assert!((c.rho_for(16) - 0.375).abs() < 1e-15);
        assert!(c.apply("bogus", "1").is_err());
        assert!(c.apply("trials", "many").is_err());
        c.apply("rho-fixed", "true").unwrap();
        assert_eq!(c.rho_for(16), c.kernel.rho);
    }

    #[test]
    fn validation() {
        let mut c = ExperimentConfig::new(Experiment::Converge);
        c.n_list = vec![20, 10];
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::new(Experiment::Converge);
        c.eval_order = Some(100);
        assert!(c.validate().is_err());
        c.eval_order = None;
        c.md_path = Some("nodes.txt".into());
        assert!(c.validate().is_err());
        c.md_path = Some("md{n}.txt".into());
        c.validate().unwrap();
        assert_eq!(c.md_path_for(20).unwrap(), PathBuf::from("md20.txt"));
        let mut c = ExperimentConfig::new(Experiment::Noise);
        c.trials = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# converge setup\nkernel = gaussian:K=2\n\nn=10,20 # two degrees\nseed=7").unwrap();
        let mut c = ExperimentConfig::new(Experiment::Converge);
        c.apply_file(f.path()).unwrap();
        assert_eq!(c.n_list, vec![10, 20]);
        assert_eq!(c.seed, 7);
        let mut g = tempfile::NamedTempFile::new().unwrap();
        writeln!(g, "kernel").unwrap();
        assert!(c.apply_file(g.path()).is_err());
    }
}

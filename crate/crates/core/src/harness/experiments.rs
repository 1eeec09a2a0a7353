//! Convergence, noise and timing studies.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::kernels::ZonalKernel;
use crate::operators::{discrete_l2_error, hyper_build, hyper_eval_columns, qi_build, qi_eval_columns, rmse};
use crate::quadrature::{load_md_nodes, product_rule_s2, verify_exactness, QuadratureRule};

use super::config::ExperimentConfig;
use super::targets::Target;

/// One line of experiment output.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub experiment: String,
    pub n: usize,
    /// Number of quadrature nodes `|X|`.
    pub nodes: usize,
    /// Kernel scale, absent for methods without one.
    pub rho: Option<f64>,
    pub method: String,
    /// Discrete L₂ error, RMSE or exactness residual depending on the experiment.
    pub error: f64,
    /// Observed order per doubling of `n`; absent on the first row of a series.
    pub rate: Option<f64>,
    pub time_s: f64,
}

/// Rule for degree `n`: the configured node file, or the product rule of order `2n`.
pub fn quadrature_for(cfg: &ExperimentConfig, n: usize) -> Result<QuadratureRule> {
    match cfg.md_path_for(n) {
        Some(p) => load_md_nodes(p),
        None => product_rule_s2(2 * n),
    }
}

fn check_finite(what: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("{what} is not finite ({v})")))
    }
}

/// Fills in `rate = ln(e_{i-1}/e_i) / ln(n_i/n_{i-1})` for consecutive rows of
/// the same method. For doubling `n` this is `log2` of the error ratio.
pub fn fill_rates(rows: &mut [ResultRow]) {
    for i in 0..rows.len() {
        let prev = (0..i).rev().find(|&j| rows[j].method == rows[i].method && rows[j].experiment == rows[i].experiment);
        rows[i].rate = prev.and_then(|j| {
            let (a, b) = (&rows[j], &rows[i]);
            if a.error > 0.0 && b.error > 0.0 && b.n > a.n {
                Some((a.error / b.error).ln() / (b.n as f64 / a.n as f64).ln())
            } else {
                None
            }
        });
    }
}

fn eval_setup(cfg: &ExperimentConfig, target: &Target) -> Result<(QuadratureRule, Vec<f64>)> {
    let eval = product_rule_s2(cfg.eval_order())?;
    let exact = eval.points().iter().map(|p| target.eval(p)).collect();
    Ok((eval, exact))
}

/// Discrete L₂ error of the quasi-interpolant for each `n`.
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let target = Target::new(cfg.target, cfg.seed);
    let (eval, exact) = eval_setup(cfg, &target)?;
    let method = format!("qi:{}", cfg.kernel.label());
    let mut rows = Vec::with_capacity(cfg.n_list.len());
    for &n in &cfg.n_list {
        let rule = quadrature_for(cfg, n)?;
        let rho = cfg.rho_for(n);
        let kernel = ZonalKernel::new(cfg.kernel.clone().with_rho(rho))?;
        let start = Instant::now();
        let qi = qi_build(&rule, &kernel, |p| target.eval(p));
        let values = qi.eval_batch(eval.points());
        let time_s = start.elapsed().as_secs_f64();
        let error = check_finite("L2 error", discrete_l2_error(&values, &exact, &eval)?)?;
        log::info!("converge n={n} nodes={} rho={rho:.6} error={error:.4e}", rule.len());
        rows.push(ResultRow {
            experiment: "converge".into(),
            n,
            nodes: rule.len(),
            rho: Some(rho),
            method: method.clone(),
            error,
            rate: None,
            time_s,
        });
    }
    fill_rates(&mut rows);
    Ok(rows)
}

/// SplitMix64 finalizer, used to derive independent seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Noise stream for one `(n, trial)` pair.
pub fn trial_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed ^ mix(n as u64)));
    rng.set_stream(trial as u64);
    rng
}

fn mean_rmse(base: &[f64], noise: &[Vec<f64>], delta: f64, exact: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    let mut buf = vec![0.0; base.len()];
    for eps in noise {
        for ((o, b), e) in buf.iter_mut().zip(base).zip(eps) {
            *o = b + delta * e;
        }
        total += rmse(&buf, exact)?;
    }
    Ok(total / noise.len() as f64)
}

/// RMSE of the quasi-interpolant and of hyperinterpolation from noisy samples
/// `f(xⱼ) + δ εⱼ`, `εⱼ ~ N(0, 1)`, averaged over trials.
///
/// Both operators are linear in the samples, so each is evaluated once on the
/// clean samples and once per noise vector; every noise level reuses the same
/// trial noise vectors scaled by `δ`.
pub fn run_noise(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let target = Target::new(cfg.target, cfg.seed);
    let (eval, exact) = eval_setup(cfg, &target)?;
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        let rule = quadrature_for(cfg, n)?;
        let clean: Vec<f64> = rule.points().iter().map(|p| target.eval(p)).collect();
        let noise: Vec<Vec<f64>> = (0..cfg.trials)
            .map(|t| {
                let mut rng = trial_rng(cfg.seed, n, t);
                (0..rule.len()).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
            })
            .collect();
        let mut columns: Vec<&[f64]> = vec![&clean];
        columns.extend(noise.iter().map(|v| v.as_slice()));

        let rho = cfg.rho_for(n);
        let kernel = ZonalKernel::new(cfg.kernel.clone().with_rho(rho))?;
        let start = Instant::now();
        let mut qi = qi_eval_columns(&rule, &kernel, &columns, eval.points())?;
        let qi_time = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let mut hy = hyper_eval_columns(&rule, n, &columns, eval.points())?;
        let hy_time = start.elapsed().as_secs_f64();

        let qi_noise = qi.split_off(1);
        let hy_noise = hy.split_off(1);
        for &delta in &cfg.noise_levels {
            for (name, base, noise, rho, time_s) in
                [("qi", &qi[0], &qi_noise, Some(rho), qi_time), ("hyper", &hy[0], &hy_noise, None, hy_time)]
            {
                let error = check_finite("RMSE", mean_rmse(base, noise, delta, &exact)?)?;
                rows.push(ResultRow {
                    experiment: "noise".into(),
                    n,
                    nodes: rule.len(),
                    rho,
                    method: format!("{name}[delta={delta}]"),
                    error,
                    rate: None,
                    time_s,
                });
            }
        }
        log::info!("noise n={n} nodes={} done", rule.len());
    }
    Ok(rows)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Repetitions per timing measurement.
pub const TIMING_REPEATS: usize = 3;

/// Wall time of build plus evaluation on the evaluation rule, median of
/// [`TIMING_REPEATS`] runs, for the quasi-interpolant and hyperinterpolation.
pub fn run_timing(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let target = Target::new(cfg.target, cfg.seed);
    let (eval, exact) = eval_setup(cfg, &target)?;
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        let rule = quadrature_for(cfg, n)?;
        let rho = cfg.rho_for(n);
        let kernel = ZonalKernel::new(cfg.kernel.clone().with_rho(rho))?;
        let mut qi_times = Vec::new();
        let mut hy_times = Vec::new();
        let mut qi_vals = Vec::new();
        let mut hy_vals = Vec::new();
        for _ in 0..TIMING_REPEATS {
            let start = Instant::now();
            let q = qi_build(&rule, &kernel, |p| target.eval(p));
            qi_vals = q.eval_batch(eval.points());
            qi_times.push(start.elapsed().as_secs_f64());

            let start = Instant::now();
            let h = hyper_build(&rule, n, |p| target.eval(p));
            hy_vals = h.eval_batch(eval.points());
            hy_times.push(start.elapsed().as_secs_f64());
        }
        for (name, vals, times, rho) in [("qi", &qi_vals, qi_times, Some(rho)), ("hyper", &hy_vals, hy_times, None)] {
            let error = check_finite("L2 error", discrete_l2_error(vals, &exact, &eval)?)?;
            rows.push(ResultRow {
                experiment: "timing".into(),
                n,
                nodes: rule.len(),
                rho,
                method: name.into(),
                error,
                rate: None,
                time_s: median(times),
            });
        }
        log::info!("timing n={n} nodes={} done", rule.len());
    }
    Ok(rows)
}

/// Exactness residual of the rule for each `n` (product rule of order `n`,
/// or the configured node file at its declared order).
pub fn run_quadcheck(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        let start = Instant::now();
        let (rule, method) = match cfg.md_path_for(n) {
            Some(p) => (load_md_nodes(p)?, "md"),
            None => (product_rule_s2(n)?, "product"),
        };
        let residual = check_finite("exactness residual", verify_exactness(&rule, rule.order()).max_error())?;
        rows.push(ResultRow {
            experiment: "quadcheck".into(),
            n: rule.order(),
            nodes: rule.len(),
            rho: None,
            method: method.into(),
            error: residual,
            rate: None,
            time_s: start.elapsed().as_secs_f64(),
        });
    }
    Ok(rows)
}

/// `φ̂(0..=ellmax)` for the configured kernel at its own scale.
pub fn run_coeffs(cfg: &ExperimentConfig, ellmax: usize) -> Result<Vec<(usize, f64)>> {
    let kernel = ZonalKernel::new(cfg.kernel.clone())?;
    let table = kernel.coeff_table(ellmax)?;
    for v in &table.values {
        check_finite("coefficient", *v)?;
    }
    Ok(table.values.into_iter().enumerate().collect())
}

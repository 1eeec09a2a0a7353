//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any of them fails.

use std::panic;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sphqi::harness::{
    run_convergence, run_noise, run_timing, Experiment, ExperimentConfig, ResultRow, RhoRule, TargetKind,
};
use sphqi::kernels::{
    cs_flc_gegenbauer, cs_flc_hypergeometric, flc_numeric, gaussian_flc, gaussian_flc_hadamard, highorder_weights,
    verify_assumption1, BaseFamily, KernelSpec, ZonalKernel, ORACLE_ORDER,
};
use sphqi::operators::{hyper_build, qi_eval_columns};
use sphqi::quadrature::{product_rule_s2, verify_exactness};
use sphqi::specfun::sph_harm_s2;
use sphqi::SpherePoint;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

const RHO_GRID: [f64; 4] = [0.2, 0.1, 0.05, 0.025];
const RATE_TOLERANCE: f64 = 0.35;
const CS_M: u32 = 4;

fn random_points(n: usize, seed: u64) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| SpherePoint::random(&mut rng)).collect()
}

fn kernel(spec: KernelSpec) -> ZonalKernel {
    ZonalKernel::new(spec).expect("valid kernel")
}

fn poisson_coefficients() -> Outcome {
    let mut closed = 0.0f64;
    let mut numeric = 0.0f64;
    for alpha in [0.3, 0.7, 0.9] {
        let k = kernel(KernelSpec::poisson(1.0 - alpha));
        for ell in 0..=20 {
            let exact = alpha.powi(ell as i32);
            closed = closed.max((k.flc(ell).unwrap() - exact).abs());
            numeric = numeric.max((flc_numeric(&k, ell, ORACLE_ORDER) - exact).abs());
        }
    }
    (
        closed <= 1e-14 && numeric <= 1e-8,
        format!("closed form dev {closed:.2e}, quadrature dev {numeric:.2e} (tol 1e-8)"),
    )
}

fn gaussian_coefficients() -> Outcome {
    let mut zero = 0.0f64;
    let mut paths = 0.0f64;
    let mut compared = 0;
    for rho in [0.05f64, 0.1, 0.3, 1.0] {
        let exact = 1.0 - (-2.0 / (rho * rho)).exp();
        zero = zero.max((gaussian_flc(0, rho, 2).unwrap() - exact).abs());
        let mut ell = 0;
        while rho * (ell as f64 + 0.5) < 1.0 {
            let a = gaussian_flc(ell, rho, 2).unwrap();
            let b = gaussian_flc_hadamard(ell, rho, 2).unwrap();
            paths = paths.max((a - b).abs());
            compared += 1;
            ell += 1;
        }
    }
    (
        zero <= 1e-12 && paths <= 1e-10,
        format!(
            "degree-0 dev {zero:.2e} (tol 1e-12), Bessel vs series dev {paths:.2e} over {compared} pairs (tol 1e-10)"
        ),
    )
}

fn cs_branches() -> Outcome {
    let mut branch = 0.0f64;
    let mut numeric = 0.0f64;
    for m in 1..=3u32 {
        for rho in [0.1, 0.3, 0.6] {
            let k = kernel(KernelSpec::compact_support(rho, m));
            for ell in (m as usize + 1)..=(m as usize + 20) {
                let h = cs_flc_hypergeometric(ell, rho, m).unwrap();
                let g = cs_flc_gegenbauer(ell, rho, m).unwrap();
                let q = flc_numeric(&k, ell, ORACLE_ORDER);
                branch = branch.max((h - g).abs());
                numeric = numeric.max((h - q).abs()).max((g - q).abs());
            }
        }
    }
    (
        branch <= 1e-10 && numeric <= 1e-7,
        format!("branch dev {branch:.2e} (tol 1e-10), quadrature dev {numeric:.2e} (tol 1e-7)"),
    )
}

fn highorder_moments() -> Outcome {
    let mut sum_dev = 0.0f64;
    let mut moment_dev = 0.0f64;
    for k in 1..=5usize {
        let a: Vec<f64> = (1..=k).map(|i| i as f64).collect();
        let lambda = highorder_weights(k, &a).unwrap();
        sum_dev = sum_dev.max((lambda.iter().sum::<f64>() - 1.0).abs());
        for j in 1..k {
            let m: f64 = lambda.iter().zip(&a).map(|(l, ai)| l * ai.powi(2 * j as i32)).sum();
            moment_dev = moment_dev.max(m.abs());
        }
    }
    (
        sum_dev <= 1e-12 && moment_dev <= 1e-10,
        format!("|sum - 1| {sum_dev:.2e} (tol 1e-12), moments {moment_dev:.2e} (tol 1e-10)"),
    )
}

fn assumption1() -> Outcome {
    let cases = [
        (KernelSpec::poisson(0.1), 1.0),
        (KernelSpec::gaussian(0.1), 2.0),
        (KernelSpec::compact_support(0.1, CS_M), 2.0),
        (KernelSpec::high_order_default(BaseFamily::Gaussian, 0.1, 2), 4.0),
        (KernelSpec::high_order_default(BaseFamily::Gaussian, 0.1, 3), 6.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (spec, s) in cases {
        let label = spec.label();
        let rep = verify_assumption1(&kernel(spec), s, &RHO_GRID).unwrap();
        ok &= rep.pass;
        parts.push(format!("{label} s={s}: ratio {:.3} {}", rep.ratio_sup, if rep.pass { "ok" } else { "FAIL" }));
    }
    (ok, parts.join("; "))
}

fn product_rule_exactness() -> Outcome {
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for n in [12usize, 24, 100, 320] {
        let r = verify_exactness(&product_rule_s2(n).unwrap(), n).max_error();
        worst = worst.max(r);
        parts.push(format!("n={n} {r:.2e}"));
    }
    (worst <= 1e-9, format!("{} (tol 1e-9)", parts.join(", ")))
}

fn hyper_reproduction() -> Outcome {
    let rule = product_rule_s2(12).unwrap();
    let y = |p: &SpherePoint| sph_harm_s2(6, 4, p).unwrap();
    let h = hyper_build(&rule, 6, y);
    let pts = random_points(100, 11);
    let err = h.eval_batch(&pts).iter().zip(&pts).fold(0.0f64, |m, (v, p)| m.max((v - y(p)).abs()));
    (err <= 1e-10, format!("max error {err:.2e} (tol 1e-10)"))
}

fn eigenfunctions() -> Outcome {
    let specs = [
        KernelSpec::poisson(0.3),
        KernelSpec::gaussian(0.1),
        KernelSpec::compact_support(0.5, CS_M),
        KernelSpec::high_order_default(BaseFamily::Gaussian, 0.1, 2),
        KernelSpec::high_order(BaseFamily::CompactSupport { m: CS_M }, 1.0, vec![0.5, 1.0]),
    ];
    let rule = product_rule_s2(160).unwrap();
    let pts = random_points(50, 12);
    let mut harmonics = Vec::new();
    for ell in 0..=8usize {
        for k in 1..=2 * ell + 1 {
            harmonics.push((ell, k));
        }
    }
    let columns: Vec<Vec<f64>> = harmonics
        .iter()
        .map(|&(ell, k)| rule.points().iter().map(|p| sph_harm_s2(ell, k, p).unwrap()).collect())
        .collect();
    let refs: Vec<&[f64]> = columns.iter().map(|c| c.as_slice()).collect();
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for spec in specs {
        let label = spec.to_string();
        let kern = kernel(spec);
        let out = qi_eval_columns(&rule, &kern, &refs, &pts).unwrap();
        let mut err = 0.0f64;
        for (col, &(ell, k)) in out.iter().zip(&harmonics) {
            let lambda = kern.flc(ell).unwrap();
            for (v, p) in col.iter().zip(&pts) {
                err = err.max((v - lambda * sph_harm_s2(ell, k, p).unwrap()).abs());
            }
        }
        worst = worst.max(err);
        parts.push(format!("{label} {err:.1e}"));
    }
    (worst <= 1e-6, format!("{} (tol 1e-6)", parts.join(", ")))
}

/// Kernels and `c` in `ρ = c n^{-1/2}` used for the rate checks, by order `s`.
fn rate_configs() -> Vec<(f64, KernelSpec, f64)> {
    let g = BaseFamily::Gaussian;
    let cs = BaseFamily::CompactSupport { m: CS_M };
    vec![
        (2.0, KernelSpec::gaussian(0.1), 0.4),
        (4.0, KernelSpec::high_order(g, 0.1, vec![0.5, 1.0]), 0.7),
        (6.0, KernelSpec::high_order(g, 0.1, vec![0.5, 1.0, 1.5]), 1.0),
        (2.0, KernelSpec::compact_support(0.1, CS_M), 1.5),
        (4.0, KernelSpec::high_order(cs, 0.1, vec![0.5, 1.0]), 3.0),
        (6.0, KernelSpec::high_order(cs, 0.1, vec![0.5, 1.0, 1.5]), 4.0),
    ]
}

fn converge(spec: KernelSpec, c: f64, target: TargetKind) -> Vec<ResultRow> {
    let mut cfg = ExperimentConfig::new(Experiment::Converge);
    cfg.kernel = spec;
    cfg.target = target;
    cfg.rho_rule = Some(RhoRule { c, exponent: -0.5 });
    run_convergence(&cfg).unwrap()
}

fn rates(target: TargetKind, expected: impl Fn(f64) -> f64) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (s, spec, c) in rate_configs() {
        let label = spec.label();
        let rows = converge(spec, c, target);
        let last = rows.last().unwrap();
        let rate = last.rate.unwrap();
        let want = expected(s);
        ok &= (rate - want).abs() <= RATE_TOLERANCE;
        let all: Vec<String> = rows.iter().filter_map(|r| r.rate).map(|r| format!("{r:.2}")).collect();
        parts.push(format!("{label} c={c}: rates [{}] want {want}", all.join(" ")));
    }
    let secs = start.elapsed().as_secs_f64();
    (ok, format!("{}; {secs:.0}s", parts.join("; ")))
}

fn noise_robustness() -> Outcome {
    let mut cfg = ExperimentConfig::new(Experiment::Noise);
    cfg.noise_levels = vec![0.5];
    let rows = run_noise(&cfg).unwrap();
    let qi: Vec<&ResultRow> = rows.iter().filter(|r| r.method.starts_with("qi")).collect();
    let hy: Vec<&ResultRow> = rows.iter().filter(|r| r.method.starts_with("hyper")).collect();
    let (q, h) = (qi.last().unwrap(), hy.last().unwrap());
    let violations = qi.windows(2).filter(|w| w[1].error >= w[0].error).count();
    let ok = q.nodes >= 100 * 100 && q.error < h.error && violations <= 1;
    let series: Vec<String> = qi.iter().map(|r| format!("{:.3}", r.error)).collect();
    (
        ok,
        format!(
            "|X|={}: qi {:.4} vs hyper {:.4}; qi series [{}], {violations} violation(s)",
            q.nodes,
            q.error,
            h.error,
            series.join(" ")
        ),
    )
}

fn timing() -> Outcome {
    let mut cfg = ExperimentConfig::new(Experiment::Timing);
    cfg.n_list = vec![*cfg.n_list.last().unwrap()];
    let rows = run_timing(&cfg).unwrap();
    let (q, h) = (&rows[0], &rows[1]);
    (q.time_s <= h.time_s, format!("|X|={}: qi {:.2}s vs hyper {:.2}s", q.nodes, q.time_s, h.time_s))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Poisson coefficients", poisson_coefficients),
        ("Gaussian coefficients", gaussian_coefficients),
        ("compact-support branches", cs_branches),
        ("high-order weight moments", highorder_moments),
        ("order-s low-pass bounds", assumption1),
        ("product rule exactness", product_rule_exactness),
        ("hyperinterpolation reproduces Y(6,4)", hyper_reproduction),
        ("harmonics are eigenfunctions", eigenfunctions),
        ("convergence rates on f1", || rates(TargetKind::F1, |s| s / 2.0)),
        ("saturated rates on f3", || rates(TargetKind::F3, |_| 1.0)),
        ("noise robustness", noise_robustness),
        ("timing at the largest node set", timing),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match panic::catch_unwind(check) {
            Ok(outcome) => outcome,
            Err(_) => (false, "panicked".to_string()),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use statrs::distribution::{ChiSquared, ContinuousCDF};
use zmeasure::arith::{int, rat, GaussianRational};
use zmeasure::ensemble::{pf_by_degree, HKind, HSpec};
use zmeasure::lattice::EmbedMode;
use zmeasure::measures::JackParams;
use zmeasure::sampler::{chi_square, Sampler, Target};
use zmeasure::verify::{self, ensemble_specs, SuiteReport};

const NORMALIZATION_LIMIT: Duration = Duration::from_secs(60);
const SAMPLER_LIMIT: Duration = Duration::from_secs(30);
const EXPANSION_FLOAT_TOL: f64 = 1e-9;
const CHI_SQUARE_QUANTILE: f64 = 0.999;
const SAMPLER_DRAWS: usize = 100_000;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_report(report: &SuiteReport) -> Outcome {
    let cases: usize = report.checks.iter().map(|c| c.cases).sum();
    let failures: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} -> {}", c.name, c.counterexample.as_deref().unwrap_or("?")))
        .collect();
    let detail = if failures.is_empty() {
        format!("{} checks, {cases} cases", report.checks.len())
    } else {
        failures.join("; ")
    };
    Outcome { passed: report.passed, detail }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut out = from_report(&verify::normalization(10));
    let elapsed = start.elapsed();
    if elapsed > NORMALIZATION_LIMIT {
        out.passed = false;
    }
    out.detail = format!("{}, {:.2?} (limit {:?})", out.detail, elapsed, NORMALIZATION_LIMIT);
    out
}

/// Specs whose truncated `Pf(J+L)` series is compared with the closed form in floating point.
fn residual_specs() -> Vec<HSpec> {
    let xi = rat(1, 16);
    let g = GaussianRational::from_int;
    let principal = (GaussianRational::new(int(1), int(1)), GaussianRational::new(int(1), int(-1)));
    vec![
        HSpec::z_theta2(g(4), g(3), xi.clone()).unwrap(),
        HSpec::z_theta2(principal.0.clone(), principal.1.clone(), xi.clone()).unwrap(),
        // degenerate series at θ = 1/2 with t = zz′/θ = 6
        HSpec::z_half(g(-2), GaussianRational::real(rat(-3, 2)), xi.clone()).unwrap(),
        HSpec::z_half(principal.0, principal.1, xi).unwrap(),
        HSpec::plancherel(rat(1, 2)).unwrap(),
    ]
}

fn modes_for(spec: &HSpec) -> Vec<EmbedMode> {
    match spec.kind() {
        HKind::Plancherel => vec![EmbedMode::Theta2, EmbedMode::ThetaHalf],
        _ => vec![spec.default_mode()],
    }
}

fn criterion_6() -> Outcome {
    let mut specs = ensemble_specs();
    specs.extend(residual_specs());
    let mut exact_cases = 0;
    let mut failures = Vec::new();
    for spec in &specs {
        for mode in modes_for(spec) {
            let per = pf_by_degree(spec, mode, 10).expect("within cap");
            for (n, v) in per.iter().enumerate() {
                exact_cases += 1;
                if *v != spec.degree_mass(n as u32) {
                    failures.push(format!("{spec} {mode:?} n={n}"));
                }
            }
        }
    }
    let mut worst = 0.0f64;
    let mut residuals = Vec::new();
    for spec in residual_specs() {
        for mode in modes_for(&spec) {
            let partial: num_complex::Complex64 =
                pf_by_degree(&spec, mode, 12).expect("within cap").iter().map(|v| v.to_complex()).sum();
            let closed = spec.normalizer().to_complex();
            let r = (partial - closed).norm();
            worst = worst.max(r);
            residuals.push(format!("{spec} {mode:?}: {r:.1e}"));
            if r >= EXPANSION_FLOAT_TOL {
                failures.push(format!("{spec} {mode:?} residual {r:e}"));
            }
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!(
            "{exact_cases} exact degree masses for N <= 10; max residual at N = 12 is {worst:.1e} (tol {EXPANSION_FLOAT_TOL:e}) [{}]",
            residuals.join(", ")
        )
    } else {
        failures.join("; ")
    };
    Outcome { passed, detail }
}

fn chi_square_run(name: &str, target: Target, seed: u64) -> (bool, String) {
    let mut sampler = Sampler::new(&target, seed).expect("positive parameters");
    let dist: Vec<_> = sampler.exact_distribution().into_iter().filter(|(_, p)| *p > rat(0, 1)).collect();
    let draws = sampler.draw_many(SAMPLER_DRAWS);
    let counts: Vec<u64> = dist.iter().map(|(l, _)| draws.iter().filter(|d| *d == l).count() as u64).collect();
    let stray = SAMPLER_DRAWS as u64 - counts.iter().sum::<u64>();
    let probs: Vec<f64> = dist.iter().map(|(_, p)| zmeasure::arith::to_f64(p)).collect();
    let stat = chi_square(&counts, &probs, SAMPLER_DRAWS as u64);
    let df = (dist.len() - 1) as f64;
    let limit = ChiSquared::new(df).unwrap().inverse_cdf(CHI_SQUARE_QUANTILE);
    let ok = stat < limit && stray == 0;
    (ok, format!("{name}: chi2 = {stat:.3} < {limit:.3} (df {df}), off-support draws {stray}"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (ok1, d1) = chi_square_run("Plancherel theta=2", Target::Plancherel { theta: int(2), n: 4 }, 11);
    let params =
        JackParams::new(GaussianRational::from_int(4), GaussianRational::from_int(3), int(2)).unwrap();
    let (ok2, d2) = chi_square_run("z-measure (4,3,2)", Target::ZMeasure { params, n: 4 }, 12);
    let elapsed = start.elapsed();
    let passed = ok1 && ok2 && elapsed <= SAMPLER_LIMIT;
    Outcome {
        passed,
        detail: format!("{d1}; {d2}; {SAMPLER_DRAWS} draws each, {elapsed:.2?} (limit {SAMPLER_LIMIT:?})"),
    }
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("normalization of M^(n) on Y_n, n <= 10", Box::new(criterion_1)),
        ("conjugation symmetries, |lambda| <= 8", Box::new(|| from_report(&verify::symmetry(8)))),
        ("Frobenius-coordinate forms, |lambda| <= 8", Box::new(|| from_report(&verify::frobenius(8)))),
        ("Pfaffian closed form and vanishing off Conf^L", Box::new(|| from_report(&verify::pfaffian(8, 200)))),
        ("Prob_L(embed(lambda)) equals the measures, |lambda| <= 8", Box::new(|| from_report(&verify::theorems(8)))),
        ("Pf(J+L) expansion by degree", Box::new(criterion_6)),
        ("finite-window kernel K = J + (J+L)^-1, <= 10 points", Box::new(|| from_report(&verify::kernel(10)))),
        ("sampler chi-square on Y_4", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let tag = if out.passed { "PASS" } else { "FAIL" };
        if !out.passed {
            failed += 1;
        }
        println!("[{tag}] criterion {}: {name} ({}) [{:.2?}]", i + 1, out.detail, start.elapsed());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Verification suites: each check compares two independent evaluations of the
//! same quantity over a parameter grid and records the first counterexample.

use std::fmt::Display;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{int, rat, rational_pow, to_f64, GaussianRational, Prefactor, Rational};
use crate::ensemble::{pf_by_degree, pf_closed_form, pf_l, prob_l, HKind, HSpec};
use crate::kernel::{kernel_k, pf_matrix_j_plus_l, rho_bruteforce, SubsetTable, Window};
use crate::lattice::{embed, embed_theta2, embed_theta_half, is_conf_l, EmbedMode, HalfInt, SplitConfig};
use crate::measures::{
    classify_parameters, frobenius_plancherel, frobenius_z_measure, gen_pochhammer, gen_pochhammer_rows, hook_h,
    hook_h_gamma, hook_h_prime, hook_h_prime_gamma, inverse_hook_product_frobenius, mixed_z_measure,
    poisson_plancherel, z_measure_n, JackParams,
};
use crate::partition::{enumerate_partitions, partitions_up_to};

pub const REPORT_SCHEMA: &str = "zmeasure.verify/1";

/// Relative tolerance of the floating Gamma-function forms.
pub const GAMMA_FORM_REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Normalization,
    Symmetry,
    Frobenius,
    Pfaffian,
    Theorems,
    Kernel,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Normalization, Suite::Symmetry, Suite::Frobenius, Suite::Pfaffian, Suite::Theorems, Suite::Kernel];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Symmetry => "symmetry",
            Suite::Frobenius => "frobenius",
            Suite::Pfaffian => "pfaffian",
            Suite::Theorems => "theorems",
            Suite::Kernel => "kernel",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, cases: 0, counterexample: None }
    }

    /// Records one case; keeps only the first failure.
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(describe());
        }
    }

    fn equal<T: PartialEq + std::fmt::Debug>(&mut self, what: impl Display, left: &T, right: &T) {
        self.record(left == right, || format!("{what}: {left:?} != {right:?}"));
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { schema: REPORT_SCHEMA, suite, passed, checks }
    }
}

/// `(z, z′)` pairs: a degenerate pair, a complementary-looking real pair and a principal pair.
pub fn standard_grid() -> Vec<(GaussianRational, GaussianRational)> {
    vec![
        (GaussianRational::from_int(4), GaussianRational::from_int(3)),
        (GaussianRational::real(rat(1, 3)), GaussianRational::real(rat(5, 3))),
        (GaussianRational::new(int(1), int(1)), GaussianRational::new(int(1), int(-1))),
    ]
}

pub fn thetas() -> [Rational; 2] {
    [rat(1, 2), int(2)]
}

pub fn xis() -> [Rational; 2] {
    [rat(1, 16), rat(1, 3)]
}

pub fn etas() -> [Rational; 1] {
    [rat(1, 2)]
}

fn grid_params() -> Vec<JackParams> {
    thetas()
        .into_iter()
        .flat_map(|th| {
            standard_grid().into_iter().map(move |(z, zp)| JackParams::new(z, zp, th.clone()).expect("θ > 0"))
        })
        .collect()
}

fn describe(p: &JackParams) -> String {
    format!("z={}, z'={}, theta={}", p.z, p.zprime, p.theta())
}

/// `Σ_{λ ⊢ n} M^{(n)}(λ) = 1`.
pub fn normalization(max_n: u32) -> SuiteReport {
    let mut check = Check::new("sum over Y_n of M^(n) equals 1");
    for p in grid_params() {
        for n in 0..=max_n {
            let sum = enumerate_partitions(n)
                .expect("within cap")
                .iter()
                .map(|l| z_measure_n(l, &p))
                .try_fold(GaussianRational::zero(), |acc, v| v.map(|v| acc + v));
            match sum {
                Ok(s) => check.equal(format_args!("{} n={n}", describe(&p)), &s, &GaussianRational::one()),
                Err(e) => check.record(false, || format!("{} n={n}: {e}", describe(&p))),
            }
        }
    }
    SuiteReport::new(Suite::Normalization, vec![check])
}

/// Conjugation symmetries of the measures and hook products, and the two forms of `(z)_λ`.
pub fn symmetry(max_size: u32) -> SuiteReport {
    let lams = partitions_up_to(max_size).expect("within cap");
    let mut measure = Check::new("M_{z,z',theta}(lambda) = M_{-z/theta,-z'/theta,1/theta}(lambda')");
    let mut hook = Check::new("H(lambda,theta) = theta^|lambda| H'(lambda',1/theta)");
    let mut hook_prime = Check::new("H'(lambda,theta) = theta^|lambda| H(lambda',1/theta)");
    let mut swap = Check::new("M symmetric under z <-> z'");
    let mut rows = Check::new("box and row forms of (z)_lambda agree");
    for p in grid_params() {
        let dual = p.dual();
        let swapped = JackParams::new(p.zprime.clone(), p.z.clone(), p.theta().clone()).expect("θ > 0");
        for l in &lams {
            let c = l.conjugate();
            let what = || format!("{} lambda={l}", describe(&p));
            measure.equal(what(), &z_measure_n(l, &p).ok(), &z_measure_n(&c, &dual).ok());
            swap.equal(what(), &z_measure_n(l, &p).ok(), &z_measure_n(l, &swapped).ok());
            rows.equal(what(), &gen_pochhammer(&p.z, l, p.theta()), &gen_pochhammer_rows(&p.z, l, p.theta()));
        }
    }
    for th in thetas().into_iter().chain([int(1), rat(3, 2)]) {
        for l in &lams {
            let c = l.conjugate();
            let pw = rational_pow(&th, l.size() as i64);
            let inv = th.recip();
            hook.equal(format_args!("theta={th} lambda={l}"), &hook_h(l, &th), &(&pw * hook_h_prime(&c, &inv)));
            hook_prime.equal(format_args!("theta={th} lambda={l}"), &hook_h_prime(l, &th), &(&pw * hook_h(&c, &inv)));
        }
    }
    SuiteReport::new(Suite::Symmetry, vec![measure, hook, hook_prime, swap, rows])
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= GAMMA_FORM_REL_TOL * a.abs().max(b.abs())
}

/// Frobenius-coordinate formulas against the box-product definitions.
pub fn frobenius(max_size: u32) -> SuiteReport {
    let lams = partitions_up_to(max_size).expect("within cap");
    let mut inverse_hook = Check::new("1/(H H') at theta=2 from Frobenius coordinates of lambda u lambda");
    let mut planch = Check::new("poissonized Plancherel from doubled Frobenius coordinates");
    let mut zmeas = Check::new("mixed z-measure from doubled Frobenius coordinates");
    let mut gamma = Check::new(format!("Gamma-quotient forms of H, H' (relative tolerance {GAMMA_FORM_REL_TOL:e})"));
    let two = int(2);
    for l in &lams {
        inverse_hook.equal(
            format_args!("lambda={l}"),
            &inverse_hook_product_frobenius(l),
            &(hook_h(l, &two) * hook_h_prime(l, &two)).recip(),
        );
        for th in thetas() {
            for eta in etas().into_iter().chain([rat(1, 3)]) {
                let what = format!("theta={th} eta={eta} lambda={l}");
                planch.equal(what, &frobenius_plancherel(l, &eta, &th).ok(), &poisson_plancherel(l, &th, &eta).ok());
            }
            let h = to_f64(&hook_h(l, &th));
            let hp = to_f64(&hook_h_prime(l, &th));
            let (hg, hpg) = (hook_h_gamma(l, &th), hook_h_prime_gamma(l, &th));
            gamma.record(rel_close(h, hg) && rel_close(hp, hpg), || {
                format!("theta={th} lambda={l}: H={h} vs {hg}, H'={hp} vs {hpg}")
            });
        }
        for p in grid_params() {
            for xi in xis() {
                let what = format!("{} xi={xi} lambda={l}", describe(&p));
                zmeas.equal(what, &frobenius_z_measure(l, &p, &xi).ok(), &mixed_z_measure(l, &p, &xi).ok());
            }
        }
    }
    SuiteReport::new(Suite::Frobenius, vec![inverse_hook, planch, zmeas, gamma])
}

/// Every weight-function kind on the standard grid.
pub fn ensemble_specs() -> Vec<HSpec> {
    let mut specs = Vec::new();
    for (z, zp) in standard_grid() {
        for xi in xis() {
            specs.push(HSpec::z_theta2(z.clone(), zp.clone(), xi.clone()).expect("valid"));
            specs.push(HSpec::z_half(z.clone(), zp.clone(), xi).expect("valid"));
        }
    }
    for eta in etas() {
        specs.push(HSpec::plancherel(eta).expect("valid"));
    }
    specs
}

/// Random configurations inside `|x| ≤ radius` that are not admissible.
pub fn random_inadmissible(count: usize, radius: HalfInt, seed: u64) -> Vec<SplitConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = radius.twice();
    let points: Vec<HalfInt> = (-r..=r).step_by(2).map(|t| HalfInt::from_twice(t).expect("odd")).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let density = rng.gen_range(0.1..0.5);
        let pick = points.iter().copied().filter(|_| rng.gen_bool(density));
        let x = SplitConfig::from_points(pick).expect("distinct points");
        if !is_conf_l(&x) {
            out.push(x);
        }
    }
    out
}

/// Matrix Pfaffians of `L(X|X)` against the product formula.
pub fn pfaffian(max_size: u32, random_count: usize) -> SuiteReport {
    let lams = partitions_up_to(max_size).expect("within cap");
    let mut closed = Check::new("Pf L(X|X) equals the Vandermonde/h product on embedded diagrams");
    let mut vanish = Check::new("Pf L(X|X) vanishes off the admissible configurations");
    for spec in ensemble_specs() {
        for mode in [EmbedMode::Theta2, EmbedMode::ThetaHalf] {
            for l in &lams {
                let x = embed(l, mode);
                closed.equal(format_args!("{spec} {mode:?} lambda={l} X={x}"), &pf_l(&spec, &x), &pf_closed_form(&spec, &x));
            }
        }
        for x in random_inadmissible(random_count, HalfInt::above(7), 2024) {
            let v = pf_l(&spec, &x);
            vanish.record(v.is_zero(), || format!("{spec} X={x}: {v}"));
        }
    }
    SuiteReport::new(Suite::Pfaffian, vec![closed, vanish])
}

/// `Pf(J+L)` tags computed from the parameters directly.
fn expected_normalizer(spec: &HSpec) -> Prefactor {
    use crate::ensemble::HParams;
    match spec.params() {
        HParams::Z { z, zprime, xi } => {
            let zz = z * zprime;
            let exponent = match spec.kind() {
                HKind::ZTheta2 => -zz.scale(&rat(1, 2)),
                _ => -zz.scale(&int(2)),
            };
            Prefactor::Power { base: Rational::one() - xi, exponent }
        }
        HParams::Plancherel { eta } => Prefactor::Exp { exponent: eta.clone() },
    }
}

/// `Prob_L ∘ embed` against the measures, normalizer tags, and per-degree masses of `Pf(J+L)`.
pub fn theorems(max_size: u32) -> SuiteReport {
    let lams = partitions_up_to(max_size).expect("within cap");
    let mut a = Check::new("Prob_L(embed_theta2(lambda)) = mixed z-measure, theta = 2");
    let mut a_half = Check::new("Prob_L(embed_theta_half(lambda)) = mixed z-measure, theta = 1/2");
    let mut b = Check::new("Prob_L(embed(lambda)) = poissonized Plancherel, theta = 2 and 1/2");
    let mut tags = Check::new("Pf(J+L) tags: (1-xi)^(-zz'/2), (1-xi)^(-2zz'), exp(eta)");
    let mut degrees = Check::new("per-degree mass of Pf(J+L) equals (t)_n xi^n/n! or eta^n/n!");
    for spec in ensemble_specs() {
        tags.equal(format_args!("{spec}"), &spec.normalizer(), &expected_normalizer(&spec));
        let modes = match spec.kind() {
            HKind::Plancherel => vec![EmbedMode::Theta2, EmbedMode::ThetaHalf],
            _ => vec![spec.default_mode()],
        };
        for mode in modes {
            let check = match spec.kind() {
                HKind::ZTheta2 => &mut a,
                HKind::ZHalf => &mut a_half,
                HKind::Plancherel => &mut b,
            };
            for l in &lams {
                let x = match mode {
                    EmbedMode::Theta2 => embed_theta2(l),
                    EmbedMode::ThetaHalf => embed_theta_half(l),
                };
                let target = spec.target_measure(l, mode).ok();
                check.equal(format_args!("{spec} {mode:?} lambda={l}"), &Some(prob_l(&spec, &x)), &target);
            }
            match pf_by_degree(&spec, mode, max_size) {
                Ok(per) => {
                    for (n, v) in per.iter().enumerate() {
                        degrees.equal(format_args!("{spec} {mode:?} n={n}"), v, &spec.degree_mass(n as u32));
                    }
                }
                Err(e) => degrees.record(false, || format!("{spec}: {e}")),
            }
        }
    }
    SuiteReport::new(Suite::Theorems, vec![a, a_half, b, tags, degrees])
}

/// Parameters used by the kernel suite; kept small so windows of ten points stay fast.
pub fn kernel_specs() -> Vec<HSpec> {
    vec![
        HSpec::z_theta2(GaussianRational::from_int(4), GaussianRational::from_int(3), rat(1, 3)).expect("valid"),
        HSpec::z_half(GaussianRational::new(int(1), int(1)), GaussianRational::new(int(1), int(-1)), rat(1, 16))
            .expect("valid"),
        HSpec::plancherel(rat(1, 2)).expect("valid"),
    ]
}

/// Window identities: Pfaffian expansion of `Pf(J+L)`, exact inverse, and `ρ` for `|X| ≤ 2`.
pub fn kernel(max_points: usize) -> SuiteReport {
    let mut expansion = Check::new("Pf(J+L) equals the sum of Pf L(X|X) over subsets of the window");
    let mut inverse = Check::new("(J+L)(J+L)^-1 = I and K skew-symmetric");
    let mut rho = Check::new("Pf K(X|X) equals the superset sum of Prob(Y) for |X| <= 2");
    let mut unit = Check::new("one-point correlations lie in [0, 1] for positive parameters");
    for spec in kernel_specs() {
        let mut radius = HalfInt::HALF;
        loop {
            let w = Window::new(radius).expect("positive radius");
            if w.len() > max_points {
                break;
            }
            let label = format!("{spec} radius={}", radius);
            let table = SubsetTable::new(&spec, &w).expect("window within cap");
            match pf_matrix_j_plus_l(&spec, &w) {
                Ok(pf) => expansion.equal(&label, &pf, &table.total()),
                Err(e) => expansion.record(false, || format!("{label}: {e}")),
            }
            match kernel_k(&spec, &w) {
                Ok(comp) => {
                    inverse.record(comp.inverse_is_exact(), || label.clone());
                    let pts = w.points();
                    let mut subsets: Vec<Vec<HalfInt>> = vec![vec![]];
                    for i in 0..pts.len() {
                        subsets.push(vec![pts[i]]);
                        for j in i + 1..pts.len() {
                            subsets.push(vec![pts[i], pts[j]]);
                        }
                    }
                    for xs in subsets {
                        let lhs = comp.kernel.rho(&xs).ok();
                        let rhs = rho_bruteforce(&table, &xs).ok();
                        rho.equal(format_args!("{label} X={xs:?}"), &lhs, &rhs);
                    }
                    let positive = spec.jack_params().map_or(true, |p| classify_parameters(&p).is_positive_range());
                    if positive {
                        for &x in pts {
                            let v = comp.kernel.rho_single(x).map(|v| v.to_complex());
                            let ok = matches!(v, Ok(c) if c.im.abs() < 1e-12 && c.re > -1e-12 && c.re < 1.0 + 1e-12);
                            unit.record(ok, || format!("{label} x={x}: {v:?}"));
                        }
                    }
                }
                Err(e) => inverse.record(false, || format!("{label}: {e}")),
            }
            radius = radius.shift(1);
        }
    }
    SuiteReport::new(Suite::Kernel, vec![expansion, inverse, rho, unit])
}

/// Sizes used by `run_suite`.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_n: u32,
    pub max_size: u32,
    pub max_points: usize,
    pub random_configs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_n: 10, max_size: 8, max_points: 10, random_configs: 200 }
    }
}

pub fn run_suite(suite: Suite, limits: Limits) -> SuiteReport {
    match suite {
        Suite::Normalization => normalization(limits.max_n),
        Suite::Symmetry => symmetry(limits.max_size),
        Suite::Frobenius => frobenius(limits.max_size),
        Suite::Pfaffian => pfaffian(limits.max_size, limits.random_configs),
        Suite::Theorems => theorems(limits.max_size),
        Suite::Kernel => kernel(limits.max_points),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            let limits = Limits { max_n: 4, max_size: 4, max_points: 4, random_configs: 20 };
            let report = run_suite(suite, limits);
            assert!(report.passed, "{:#?}", report);
            assert!(report.checks.iter().all(|c| c.cases > 0), "{:#?}", report);
        }
    }

    #[test]
    fn random_configurations_are_inadmissible_and_reproducible() {
        let a = random_inadmissible(30, HalfInt::above(7), 5);
        assert_eq!(a, random_inadmissible(30, HalfInt::above(7), 5));
        assert!(a.iter().all(|x| !is_conf_l(x)));
    }

    #[test]
    fn failing_check_keeps_first_counterexample() {
        let mut c = Check::new("demo");
        c.equal("first", &1, &2);
        c.equal("second", &3, &4);
        assert!(!c.passed);
        assert_eq!(c.cases, 2);
        assert!(c.counterexample.unwrap().starts_with("first"));
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("nope"), None);
    }
}

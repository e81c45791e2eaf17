//! The Pfaffian L-ensemble on ℤ + ½: weight functions h, the ε kernel, the
//! submatrices L(X|X), their Pfaffians and the normalized probabilities.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    factorial, int, quarter_power_in, rat, rational_pow, AlgebraicScalar, ArithError, Base, GaussianRational,
    Prefactor, Rational, Tagged,
};
use crate::lattice::{cross_product, double, embed, is_conf_l, vandermonde, EmbedMode, HalfInt, Parity, SplitConfig};
use crate::linalg::{LinalgError, SkewMatrix};
use crate::measures::{
    bracket, check_eta, check_xi, degree_mass, mixed_z_measure, poisson_plancherel, JackParams, MeasureError,
};
use crate::partition::{enumerate_partitions, Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnsembleError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("partial sums are limited to |λ| ≤ {max}, got {got}")]
    SizeCap { max: u32, got: u32 },
}

/// Largest diagram size accepted by the partial-sum routines.
pub const PARTIAL_SUM_MAX_SIZE: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HKind {
    /// z-measures with θ = 2.
    ZTheta2,
    /// z-measures with θ = 1/2.
    ZHalf,
    /// Poissonized Plancherel measures, either θ.
    Plancherel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HParams {
    Z {
        z: GaussianRational,
        zprime: GaussianRational,
        #[serde(with = "crate::arith::serde_rational")]
        xi: Rational,
    },
    Plancherel {
        #[serde(with = "crate::arith::serde_rational")]
        eta: Rational,
    },
}

/// A weight function `h` together with the extension base its values live over
/// (ξ for the z-kinds, 2η for Plancherel).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HSpec {
    kind: HKind,
    params: HParams,
    #[serde(skip)]
    base: Base,
}

impl HSpec {
    pub fn z_theta2(z: GaussianRational, zprime: GaussianRational, xi: Rational) -> Result<Self, EnsembleError> {
        Self::z_kind(HKind::ZTheta2, z, zprime, xi)
    }

    pub fn z_half(z: GaussianRational, zprime: GaussianRational, xi: Rational) -> Result<Self, EnsembleError> {
        Self::z_kind(HKind::ZHalf, z, zprime, xi)
    }

    fn z_kind(kind: HKind, z: GaussianRational, zprime: GaussianRational, xi: Rational) -> Result<Self, EnsembleError> {
        check_xi(&xi)?;
        let base = Base::new(xi.clone())?;
        Ok(Self { kind, params: HParams::Z { z, zprime, xi }, base })
    }

    pub fn plancherel(eta: Rational) -> Result<Self, EnsembleError> {
        check_eta(&eta)?;
        let base = Base::new(&eta * int(2))?;
        Ok(Self { kind: HKind::Plancherel, params: HParams::Plancherel { eta }, base })
    }

    pub fn kind(&self) -> HKind {
        self.kind
    }

    pub fn params(&self) -> &HParams {
        &self.params
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// The embedding that matches this kind; Plancherel defaults to θ = 2.
    pub fn default_mode(&self) -> EmbedMode {
        match self.kind {
            HKind::ZHalf => EmbedMode::ThetaHalf,
            HKind::ZTheta2 | HKind::Plancherel => EmbedMode::Theta2,
        }
    }

    /// `(z, z′, θ)` of the matching z-measure.
    pub fn jack_params(&self) -> Option<JackParams> {
        let HParams::Z { z, zprime, .. } = &self.params else {
            return None;
        };
        let theta = if self.kind == HKind::ZTheta2 { int(2) } else { rat(1, 2) };
        Some(JackParams::new(z.clone(), zprime.clone(), theta).expect("θ is positive"))
    }

    /// `Pf(J + L)`: `(1−ξ)^{−zz′/2}`, `(1−ξ)^{−2zz′}` or `e^η`.
    pub fn normalizer(&self) -> Prefactor {
        match &self.params {
            HParams::Z { xi, .. } => {
                let t = self.jack_params().expect("z-kind").t();
                Prefactor::Power { base: Rational::one() - xi, exponent: -t }
            }
            HParams::Plancherel { eta } => Prefactor::Exp { exponent: eta.clone() },
        }
    }

    /// The measure on diagrams that `Prob_L ∘ embed(·, mode)` should reproduce.
    pub fn target_measure(&self, lam: &Partition, mode: EmbedMode) -> Result<Tagged, EnsembleError> {
        Ok(match &self.params {
            HParams::Z { xi, .. } => mixed_z_measure(lam, &self.jack_params().expect("z-kind"), xi)?,
            HParams::Plancherel { eta } => poisson_plancherel(lam, &mode.theta(), eta)?,
        })
    }

    /// Exact mass of diagrams of size `n` inside `Pf(J+L)`:
    /// `(t)_n ξⁿ / n!` or `ηⁿ / n!`.
    pub fn degree_mass(&self, n: u32) -> AlgebraicScalar {
        match &self.params {
            HParams::Z { xi, .. } => {
                AlgebraicScalar::from_gaussian(degree_mass(&self.jack_params().expect("z-kind"), xi, n), &self.base)
            }
            HParams::Plancherel { eta } => AlgebraicScalar::from_rational(
                rational_pow(eta, n as i64) / Rational::from_integer(factorial(n as u64)),
                &self.base,
            ),
        }
    }
}

impl fmt::Display for HSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.params {
            HParams::Z { z, zprime, xi } => {
                write!(f, "{:?}(z={z}, z'={zprime}, xi={})", self.kind, crate::arith::format_rational(xi))
            }
            HParams::Plancherel { eta } => write!(f, "Plancherel(eta={})", crate::arith::format_rational(eta)),
        }
    }
}

/// `h(x)`; quarter powers of the base are exact elements of the extension.
pub fn h_eval(spec: &HSpec, x: HalfInt) -> AlgebraicScalar {
    let n = x.depth();
    let nf = Rational::from_integer(factorial(n as u64));
    // ξ^{|x|/2} or (2η)^{|x|/2}, i.e. s^{2|x|}
    let power = quarter_power_in(&spec.base, x.twice().abs());
    let coeff = match &spec.params {
        HParams::Plancherel { .. } => GaussianRational::one(),
        HParams::Z { z, zprime, .. } => {
            let one = GaussianRational::one();
            let (a, b) = match (spec.kind, x.is_positive()) {
                (HKind::ZTheta2, true) => (z + &one, zprime + &one),
                (HKind::ZTheta2, false) => (-z, -zprime),
                (_, true) => {
                    let two = GaussianRational::from_int(2);
                    (&one - &(&two * z), &one - &(&two * zprime))
                }
                (_, false) => {
                    let two = GaussianRational::from_int(2);
                    (&two * z, &two * zprime)
                }
            };
            bracket(&a, n) * bracket(&b, n)
        }
    };
    power.scale(&coeff.scale(&nf.recip()))
}

/// `ε(x, y)` for `x < y` is 1 iff x is odd and y is even; antisymmetric.
pub fn epsilon(x: HalfInt, y: HalfInt) -> i8 {
    match x.cmp(&y) {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -epsilon(y, x),
        std::cmp::Ordering::Less => (x.parity() == Parity::Odd && y.parity() == Parity::Even) as i8,
    }
}

/// Which of the two copies 𝔛′, 𝔛″ of the lattice a row of L refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CopyKind {
    Prime,
    DoublePrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointLabel {
    pub point: HalfInt,
    pub copy: CopyKind,
}

impl PointLabel {
    pub fn new(point: HalfInt, copy: CopyKind) -> Self {
        Self { point, copy }
    }
}

/// Labels `(x₁′, x₁″, x₂′, x₂″, …)` for points in increasing order.
pub fn labels_for(points: &[HalfInt]) -> Vec<PointLabel> {
    points
        .iter()
        .flat_map(|&x| [PointLabel::new(x, CopyKind::Prime), PointLabel::new(x, CopyKind::DoublePrime)])
        .collect()
}

fn h_ratio(spec: &HSpec, hx: &AlgebraicScalar, y: HalfInt, denom: &Rational) -> AlgebraicScalar {
    (hx * &h_eval(spec, y)).scale_rational(&denom.recip())
}

/// A single entry `L(a, b)`.
///
/// With `x < y` the nonzero slots are: both negative, `(x′, y′) = ε(x, y)`;
/// `x < 0`, `y = ½`, `(x′, y′) = ε(x, y)` and `(x″, y″) = h(x)h(y)/(x−y)`;
/// `x < 0`, `y ≥ 3/2`, `(x″, y′) = h(x)h(y)/(x−y)` and `(x″, y″) = h(x)h(y−1)/(x−y+1)`.
/// Everything among positive points vanishes.
pub fn l_entry(spec: &HSpec, a: PointLabel, b: PointLabel) -> AlgebraicScalar {
    let zero = AlgebraicScalar::zero(&spec.base);
    let (x, y) = (a.point, b.point);
    if x == y {
        return zero;
    }
    if x > y {
        return -&l_entry(spec, b, a);
    }
    if x.is_positive() {
        return zero;
    }
    use CopyKind::{DoublePrime as D, Prime as P};
    let diff = x.to_rational() - y.to_rational();
    let eps = || AlgebraicScalar::from_int(epsilon(x, y) as i64, &spec.base);
    if !y.is_positive() {
        return if (a.copy, b.copy) == (P, P) { eps() } else { zero };
    }
    if y == HalfInt::HALF {
        return match (a.copy, b.copy) {
            (P, P) => eps(),
            (D, D) => h_ratio(spec, &h_eval(spec, x), y, &diff),
            _ => zero,
        };
    }
    match (a.copy, b.copy) {
        (D, P) => h_ratio(spec, &h_eval(spec, x), y, &diff),
        (D, D) => h_ratio(spec, &h_eval(spec, x), y.shift(-1), &(diff + Rational::one())),
        _ => zero,
    }
}

/// `L(X|X)` with its row labels.
#[derive(Clone, Debug)]
pub struct LabeledMatrix {
    pub labels: Vec<PointLabel>,
    pub matrix: SkewMatrix<AlgebraicScalar>,
}

impl LabeledMatrix {
    pub fn pfaffian(&self) -> Result<AlgebraicScalar, LinalgError> {
        self.matrix.pfaffian()
    }
}

/// `L` restricted to the given points (any signs), rows `(x₁′, x₁″, …)`.
pub fn l_matrix_on(spec: &HSpec, points: &[HalfInt]) -> LabeledMatrix {
    let labels = labels_for(points);
    let matrix = SkewMatrix::from_fn(labels.len(), AlgebraicScalar::zero(&spec.base), |i, j| {
        l_entry(spec, labels[i], labels[j])
    });
    LabeledMatrix { labels, matrix }
}

pub fn l_submatrix(spec: &HSpec, x: &SplitConfig) -> LabeledMatrix {
    l_matrix_on(spec, &x.points())
}

/// `Pf L(X|X)` evaluated as a matrix Pfaffian.
pub fn pf_l(spec: &HSpec, x: &SplitConfig) -> AlgebraicScalar {
    l_submatrix(spec, x).pfaffian().expect("L(X|X) has even dimension")
}

/// `V(X̃₋) V(X̃₊) / ∏(X̃₊; X̃₋) · ∏_{x ∈ X̃} h(x)` on admissible X, zero elsewhere.
pub fn pf_closed_form(spec: &HSpec, x: &SplitConfig) -> AlgebraicScalar {
    if !is_conf_l(x) {
        return AlgebraicScalar::zero(&spec.base);
    }
    let d = double(x);
    let ratio = vandermonde(&d.minus) * vandermonde(&d.plus) / cross_product(&d.plus, &d.minus);
    d.minus
        .iter()
        .chain(&d.plus)
        .fold(AlgebraicScalar::from_rational(ratio, &spec.base), |acc, &p| &acc * &h_eval(spec, p))
}

/// `Prob_L(X) = Pf L(X|X) / Pf(J+L)` with the normalizer kept symbolic.
pub fn prob_l(spec: &HSpec, x: &SplitConfig) -> Tagged {
    Tagged::new(spec.normalizer().inverse(), pf_l(spec, x))
}

fn check_cap(max_size: u32) -> Result<(), EnsembleError> {
    if max_size > PARTIAL_SUM_MAX_SIZE {
        Err(EnsembleError::SizeCap { max: PARTIAL_SUM_MAX_SIZE, got: max_size })
    } else {
        Ok(())
    }
}

/// `Σ_{|λ| = n} Pf L(embed(λ)|embed(λ))` for `n = 0..=max_size`.
///
/// Enumerating diagrams is exhaustive: Pfaffians vanish off the admissible
/// configurations, which are exactly the embedded diagrams.
pub fn pf_by_degree(spec: &HSpec, mode: EmbedMode, max_size: u32) -> Result<Vec<AlgebraicScalar>, EnsembleError> {
    check_cap(max_size)?;
    (0..=max_size)
        .map(|n| {
            let layer = enumerate_partitions(n)?;
            Ok(layer
                .iter()
                .fold(AlgebraicScalar::zero(&spec.base), |acc, lam| &acc + &pf_l(spec, &embed(lam, mode))))
        })
        .collect()
}

/// Partial sum of `Pf(J+L)` over diagrams with at most `max_size` boxes.
pub fn pf_j_plus_l_partial(spec: &HSpec, mode: EmbedMode, max_size: u32) -> Result<AlgebraicScalar, EnsembleError> {
    Ok(pf_by_degree(spec, mode, max_size)?
        .iter()
        .fold(AlgebraicScalar::zero(&spec.base), |acc, v| &acc + v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::embed_theta2;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice).unwrap()
    }

    fn lam(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn z43(xi: Rational) -> HSpec {
        HSpec::z_theta2(g(4), g(3), xi).unwrap()
    }

    #[test]
    fn h_examples() {
        let pl = HSpec::plancherel(rat(1, 3)).unwrap();
        assert_eq!(h_eval(&pl, h(1)), quarter_power_in(pl.base(), 1));
        let spec = z43(rat(1, 3));
        assert_eq!(h_eval(&spec, h(1)), quarter_power_in(spec.base(), 1));
        assert_eq!(h_eval(&spec, h(-3)), quarter_power_in(spec.base(), 3).scale_rational(&int(12)));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(h(-3), h(-1)), 1);
        assert_eq!(epsilon(h(-1), h(-3)), -1);
        assert_eq!(epsilon(h(-1), h(1)), 0);
        assert_eq!(epsilon(h(5), h(5)), 0);
    }

    #[test]
    fn l_entry_examples() {
        let spec = z43(rat(1, 3));
        let p = |t| PointLabel::new(h(t), CopyKind::Prime);
        let d = |t| PointLabel::new(h(t), CopyKind::DoublePrime);
        assert!(l_entry(&spec, p(-3), p(-1)).is_one());
        let expected = (&h_eval(&spec, h(-3)) * &h_eval(&spec, h(1))).scale_rational(&rat(-1, 2));
        assert_eq!(l_entry(&spec, d(-3), d(1)), expected);
        assert_eq!(l_entry(&spec, d(1), d(-3)), -&expected);
        assert!(l_entry(&spec, p(3), p(5)).is_zero());
    }

    #[test]
    fn submatrix_examples() {
        let spec = z43(rat(1, 3));
        let m = l_submatrix(&spec, &SplitConfig::empty());
        assert_eq!(m.matrix.dim(), 0);
        assert!(m.pfaffian().unwrap().is_one());
        let x = embed_theta2(&lam(&[1]));
        let m = l_submatrix(&spec, &x);
        assert_eq!(m.labels.len(), 4);
        assert!(m.matrix.get(0, 2).is_one());
        assert!(m.matrix.get(0, 1).is_zero() && m.matrix.get(2, 3).is_zero());
        assert!(m.matrix.get(0, 3).is_zero() && m.matrix.get(1, 2).is_zero());
        let corner = (&h_eval(&spec, h(-3)) * &h_eval(&spec, h(1))).scale_rational(&rat(-1, 2));
        assert_eq!(m.matrix.get(1, 3), corner);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.matrix.get(i, j), -&m.matrix.get(j, i));
            }
        }
    }

    #[test]
    fn pfaffian_of_single_box() {
        // h(½) h(−3/2) / 2 = 12 ξ / 2
        let spec = z43(rat(1, 16));
        let x = embed_theta2(&lam(&[1]));
        let pf = pf_l(&spec, &x);
        assert_eq!(pf.as_rational(), Some(rat(6, 16)));
        assert_eq!(pf, pf_closed_form(&spec, &x));
    }

    #[test]
    fn closed_form_examples() {
        let pl = HSpec::plancherel(rat(1, 3)).unwrap();
        assert!(pf_closed_form(&pl, &SplitConfig::empty()).is_one());
        let x = embed_theta2(&lam(&[2]));
        assert_eq!(pf_closed_form(&pl, &x).as_rational(), Some(rat(4, 9) / int(12)));
        let bad = SplitConfig::new(vec![h(-1)], vec![h(1)]).unwrap();
        assert!(pf_closed_form(&pl, &bad).is_zero());
        assert!(pf_l(&pl, &bad).is_zero());
    }

    #[test]
    fn probability_examples() {
        let spec = z43(rat(1, 3));
        let empty = prob_l(&spec, &SplitConfig::empty());
        assert_eq!(empty.prefactor, Prefactor::Power { base: rat(2, 3), exponent: g(6) });
        assert!(empty.value.is_one());
        let one = prob_l(&spec, &embed_theta2(&lam(&[1])));
        assert_eq!(one.value.as_rational(), Some(rat(6, 3)));
        assert_eq!(one, spec.target_measure(&lam(&[1]), EmbedMode::Theta2).unwrap());
        let pl = HSpec::plancherel(rat(1, 2)).unwrap();
        let one = prob_l(&pl, &embed_theta2(&lam(&[1])));
        assert_eq!(one.prefactor, Prefactor::Exp { exponent: rat(-1, 2) });
        assert_eq!(one.value.as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn partial_sums_small() {
        let pl = HSpec::plancherel(rat(1, 2)).unwrap();
        assert!(pf_j_plus_l_partial(&pl, EmbedMode::Theta2, 0).unwrap().is_one());
        let degrees = pf_by_degree(&pl, EmbedMode::ThetaHalf, 4).unwrap();
        for (n, v) in degrees.iter().enumerate() {
            assert_eq!(*v, pl.degree_mass(n as u32), "n = {n}");
        }
        let spec = z43(rat(1, 16));
        let degrees = pf_by_degree(&spec, EmbedMode::Theta2, 4).unwrap();
        for (n, v) in degrees.iter().enumerate() {
            assert_eq!(*v, spec.degree_mass(n as u32), "n = {n}");
        }
        assert!(pf_by_degree(&spec, EmbedMode::Theta2, 15).is_err());
    }

    #[test]
    fn normalizer_tags() {
        let spec = z43(rat(1, 3));
        assert_eq!(spec.normalizer(), Prefactor::Power { base: rat(2, 3), exponent: g(-6) });
        let half = HSpec::z_half(g(4), g(3), rat(1, 3)).unwrap();
        assert_eq!(half.normalizer(), Prefactor::Power { base: rat(2, 3), exponent: g(-24) });
        let pl = HSpec::plancherel(rat(1, 2)).unwrap();
        assert_eq!(pl.normalizer(), Prefactor::Exp { exponent: rat(1, 2) });
        assert!(HSpec::plancherel(int(0)).is_err());
        assert!(HSpec::z_half(g(1), g(1), int(1)).is_err());
    }
}

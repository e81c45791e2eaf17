//! Points of ℤ + ½, split configurations, the embeddings of partitions for
//! θ = 2 and θ = 1/2, the doubling map and the admissibility predicate.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{rat, Rational};
use crate::partition::{FrobeniusCoords, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("{0} is even; half-integers are given as odd integers 2x")]
    EvenTwice(i64),
    #[error("points on the {0} side must be {1}")]
    WrongSign(&'static str, &'static str),
    #[error("points must be distinct")]
    Duplicate,
}

/// `x = twice / 2` with `twice` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct HalfInt(i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl HalfInt {
    pub const HALF: HalfInt = HalfInt(1);

    pub fn from_twice(twice: i64) -> Result<Self, LatticeError> {
        if twice.rem_euclid(2) == 1 {
            Ok(HalfInt(twice))
        } else {
            Err(LatticeError::EvenTwice(twice))
        }
    }

    /// `n + ½`.
    pub fn above(n: i64) -> Self {
        HalfInt(2 * n + 1)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `|x| − ½`, a nonnegative integer.
    pub fn depth(self) -> u32 {
        ((self.0.abs() - 1) / 2) as u32
    }

    /// Even iff `|x| − ½` is even, so ±½ are even.
    pub fn parity(self) -> Parity {
        if self.depth() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `x + k`.
    pub fn shift(self, k: i64) -> HalfInt {
        HalfInt(self.0 + 2 * k)
    }
}

impl TryFrom<i64> for HalfInt {
    type Error = LatticeError;
    fn try_from(v: i64) -> Result<Self, Self::Error> {
        HalfInt::from_twice(v)
    }
}

impl From<HalfInt> for i64 {
    fn from(x: HalfInt) -> i64 {
        x.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// A finite configuration `X = X₋ ⊔ X₊`, both parts sorted increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSplit", into = "RawSplit")]
pub struct SplitConfig {
    minus: Vec<HalfInt>,
    plus: Vec<HalfInt>,
}

#[derive(Serialize, Deserialize)]
struct RawSplit {
    minus: Vec<HalfInt>,
    plus: Vec<HalfInt>,
}

impl TryFrom<RawSplit> for SplitConfig {
    type Error = LatticeError;
    fn try_from(r: RawSplit) -> Result<Self, Self::Error> {
        SplitConfig::new(r.minus, r.plus)
    }
}

impl From<SplitConfig> for RawSplit {
    fn from(c: SplitConfig) -> Self {
        RawSplit { minus: c.minus, plus: c.plus }
    }
}

fn sorted_distinct(mut v: Vec<HalfInt>) -> Result<Vec<HalfInt>, LatticeError> {
    v.sort();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(LatticeError::Duplicate);
    }
    Ok(v)
}

impl SplitConfig {
    /// Sorts both parts; rejects duplicates and points on the wrong side.
    pub fn new(minus: Vec<HalfInt>, plus: Vec<HalfInt>) -> Result<Self, LatticeError> {
        if minus.iter().any(|x| x.is_positive()) {
            return Err(LatticeError::WrongSign("minus", "negative"));
        }
        if plus.iter().any(|x| !x.is_positive()) {
            return Err(LatticeError::WrongSign("plus", "positive"));
        }
        Ok(Self { minus: sorted_distinct(minus)?, plus: sorted_distinct(plus)? })
    }

    /// Splits an arbitrary set of points by sign.
    pub fn from_points(points: impl IntoIterator<Item = HalfInt>) -> Result<Self, LatticeError> {
        let (plus, minus): (Vec<_>, Vec<_>) = points.into_iter().partition(|x| x.is_positive());
        Self::new(minus, plus)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn minus(&self) -> &[HalfInt] {
        &self.minus
    }

    pub fn plus(&self) -> &[HalfInt] {
        &self.plus
    }

    pub fn len(&self) -> usize {
        self.minus.len() + self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points, increasing.
    pub fn points(&self) -> Vec<HalfInt> {
        self.minus.iter().chain(&self.plus).copied().collect()
    }
}

impl fmt::Display for SplitConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[HalfInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{minus=({}), plus=({})}}", show(&self.minus), show(&self.plus))
    }
}

/// `X̃`: the minus part unchanged, every plus point `x > ½` replaced by `(x−1, x)`.
/// Plus points may coincide, which is exactly what admissibility rules out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubledConfig {
    pub minus: Vec<HalfInt>,
    pub plus: Vec<HalfInt>,
}

impl DoubledConfig {
    pub fn plus_distinct(&self) -> bool {
        self.plus.windows(2).all(|w| w[0] != w[1])
    }
}

pub fn double(x: &SplitConfig) -> DoubledConfig {
    let mut plus: Vec<HalfInt> = x
        .plus
        .iter()
        .flat_map(|&p| if p == HalfInt::HALF { vec![p] } else { vec![p.shift(-1), p] })
        .collect();
    plus.sort();
    DoubledConfig { minus: x.minus.clone(), plus }
}

/// Membership in the support of the L-ensemble: `X̃₊` has distinct points,
/// `|X̃₋| = |X̃₊|`, and the i-th smallest point of `X₋` is odd exactly for odd i.
pub fn is_conf_l(x: &SplitConfig) -> bool {
    let d = double(x);
    d.plus_distinct()
        && d.minus.len() == d.plus.len()
        && d.minus.iter().enumerate().all(|(i, p)| {
            let want = if i % 2 == 0 { Parity::Odd } else { Parity::Even };
            p.parity() == want
        })
}

/// Which doubled diagram feeds the embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedMode {
    /// Frobenius coordinates of λ ⊔ λ.
    Theta2,
    /// Frobenius coordinates of λ′ ⊔ λ′.
    ThetaHalf,
}

impl EmbedMode {
    pub fn theta(self) -> Rational {
        match self {
            EmbedMode::Theta2 => rat(2, 1),
            EmbedMode::ThetaHalf => rat(1, 2),
        }
    }
}

fn embed_frobenius(f: &FrobeniusCoords) -> SplitConfig {
    // P_{2k−1} = P_{2k} + 1, so the odd-indexed arms determine the rest; for odd
    // depth the last one is P_D = 0 and lands on ½
    let plus = f.p().iter().step_by(2).map(|&p| HalfInt::above(p as i64)).collect();
    let minus = f.q().iter().map(|&q| HalfInt::above(-(q as i64) - 1)).collect();
    SplitConfig::new(minus, plus).expect("Frobenius coordinates give distinct points")
}

pub fn embed_theta2(lam: &Partition) -> SplitConfig {
    embed_frobenius(&lam.double_union().to_frobenius())
}

pub fn embed_theta_half(lam: &Partition) -> SplitConfig {
    embed_frobenius(&lam.conjugate().double_union().to_frobenius())
}

pub fn embed(lam: &Partition, mode: EmbedMode) -> SplitConfig {
    match mode {
        EmbedMode::Theta2 => embed_theta2(lam),
        EmbedMode::ThetaHalf => embed_theta_half(lam),
    }
}

/// The unique λ with `embed(λ, mode) = X`, if any.
pub fn inverse_embed(x: &SplitConfig, mode: EmbedMode) -> Option<Partition> {
    if !is_conf_l(x) {
        return None;
    }
    let d = double(x);
    let p: Vec<u32> = d.plus.iter().rev().map(|h| h.depth()).collect();
    let q: Vec<u32> = d.minus.iter().map(|h| h.depth()).collect();
    let doubled = Partition::from_frobenius(&FrobeniusCoords::new(p, q).ok()?);
    let rows = doubled.parts();
    if rows.len() % 2 == 1 || rows.chunks_exact(2).any(|w| w[0] != w[1]) {
        return None;
    }
    let half = Partition::new(rows.iter().step_by(2).copied().collect()).ok()?;
    let lam = match mode {
        EmbedMode::Theta2 => half,
        EmbedMode::ThetaHalf => half.conjugate(),
    };
    (embed(&lam, mode) == *x).then_some(lam)
}

/// `V(X) = ∏_{i<j} (xᵢ − xⱼ)` in the given order.
pub fn vandermonde(xs: &[HalfInt]) -> Rational {
    let mut twice_prod = num_bigint::BigInt::from(1);
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            // differences of half-integers are integers
            twice_prod *= (xs[i].0 - xs[j].0) / 2;
        }
    }
    Rational::from_integer(twice_prod)
}

/// `∏(A; B) = ∏ᵢ ∏ⱼ (aᵢ − bⱼ)`.
pub fn cross_product(a: &[HalfInt], b: &[HalfInt]) -> Rational {
    let mut prod = num_bigint::BigInt::from(1);
    for x in a {
        for y in b {
            prod *= (x.0 - y.0) / 2;
        }
    }
    Rational::from_integer(prod)
}

impl PartialOrd for SplitConfig {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SplitConfig {
    fn cmp(&self, other: &Self) -> Ordering {
        self.points().cmp(&other.points())
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn unbalanced_configurations_are_inadmissible(
            minus in proptest::collection::btree_set(-8i64..0, 0..6),
            plus in proptest::collection::btree_set(0i64..8, 0..6),
        ) {
            let x = SplitConfig::new(
                minus.iter().map(|&m| HalfInt::above(m)).collect(),
                plus.iter().map(|&p| HalfInt::above(p)).collect(),
            ).unwrap();
            let d = double(&x);
            if d.minus.len() != d.plus.len() {
                prop_assert!(!is_conf_l(&x));
            }
            if is_conf_l(&x) {
                prop_assert!(inverse_embed(&x, EmbedMode::Theta2).is_some());
            }
        }
    }
}

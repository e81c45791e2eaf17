//! Exact sampling from the measures on diagrams by inverse CDF over the
//! enumerated support, driven by a seeded ChaCha8 stream.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{format_rational, rational_pow, to_f64, GaussianRational, Rational};
use crate::measures::{
    classify_parameters, degree_mass, plancherel_n, z_measure_n, JackParams, MeasureError, SeriesClass,
};
use crate::partition::{enumerate_partitions, Partition, PartitionError};

/// Recorded in every sample report so runs can be reproduced.
pub const ALGORITHM_ID: &str = "chacha8-u64-inverse-cdf/v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("parameters are outside the positivity range ({0:?})")]
    NotPositive(SeriesClass),
    #[error("weight of {0} is not a nonnegative real number")]
    BadWeight(String),
    #[error("all weights vanish")]
    ZeroTotal,
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// The measure to sample from.
#[derive(Clone, Debug)]
pub enum Target {
    /// `M^{(n)}_{z,z′,θ}` on diagrams of size n.
    ZMeasure { params: JackParams, n: u32 },
    /// Plancherel measure on diagrams of size n.
    Plancherel { theta: Rational, n: u32 },
    /// Mixed z-measure, truncated to sizes `≤ max_size`.
    MixedZ { params: JackParams, xi: Rational, max_size: u32 },
    /// Poissonized Plancherel measure, truncated to sizes `≤ max_size`.
    Poisson { theta: Rational, eta: Rational, max_size: u32 },
}

/// Inverse-CDF table: item k is chosen when `U < thresholds[k]` for the first such k,
/// with `U` uniform on `[0, 2⁶⁴)` and `thresholds[k] = ⌈2⁶⁴ · Fₖ⌉`.
#[derive(Clone, Debug)]
pub struct CdfTable<T> {
    items: Vec<T>,
    weights: Vec<Rational>,
    thresholds: Vec<u128>,
}

impl<T: Clone> CdfTable<T> {
    pub fn new(items: Vec<T>, weights: Vec<Rational>) -> Result<Self, SampleError> {
        let total = weights.iter().fold(Rational::zero(), |a, w| a + w);
        if total.is_zero() {
            return Err(SampleError::ZeroTotal);
        }
        let scale = Rational::from_integer(BigInt::one() << 64u32);
        let mut acc = Rational::zero();
        let thresholds = weights
            .iter()
            .map(|w| {
                acc += w;
                (&acc / &total * &scale).ceil().to_integer().to_u128().expect("at most 2^64")
            })
            .collect();
        let weights = weights.into_iter().map(|w| w / &total).collect();
        Ok(Self { items, weights, thresholds })
    }

    pub fn draw(&self, rng: &mut impl RngCore) -> &T {
        let u = rng.next_u64() as u128;
        let k = self.thresholds.partition_point(|&t| t <= u);
        &self.items[k]
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    /// Normalized probabilities.
    pub fn probabilities(&self) -> &[Rational] {
        &self.weights
    }
}

fn real_nonneg(g: GaussianRational, what: impl Fn() -> String) -> Result<Rational, SampleError> {
    if g.is_real() && !g.re.is_negative() {
        Ok(g.re)
    } else {
        Err(SampleError::BadWeight(what()))
    }
}

fn require_positive(params: &JackParams) -> Result<(), SampleError> {
    match classify_parameters(params) {
        c if c.is_positive_range() => Ok(()),
        c => Err(SampleError::NotPositive(c)),
    }
}

fn z_layer(params: &JackParams, n: u32) -> Result<CdfTable<Partition>, SampleError> {
    let items = enumerate_partitions(n)?;
    let weights = items
        .iter()
        .map(|l| real_nonneg(z_measure_n(l, params)?, || l.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    CdfTable::new(items, weights)
}

fn plancherel_layer(theta: &Rational, n: u32) -> Result<CdfTable<Partition>, SampleError> {
    let items = enumerate_partitions(n)?;
    let weights = items.iter().map(|l| plancherel_n(l, theta)).collect();
    CdfTable::new(items, weights)
}

/// Mass of the sizes beyond the truncation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailMass {
    /// Present when the normalizing prefactor is rational.
    pub exact: Option<String>,
    pub float: f64,
}

/// Seeded exact sampler.
pub struct Sampler {
    seed: u64,
    rng: ChaCha8Rng,
    degrees: Option<CdfTable<u32>>,
    layers: Vec<CdfTable<Partition>>,
    tail: Option<TailMass>,
}

impl Sampler {
    pub fn new(target: &Target, seed: u64) -> Result<Self, SampleError> {
        let rng = ChaCha8Rng::seed_from_u64(seed);
        let (degrees, layers, tail) = match target {
            Target::ZMeasure { params, n } => {
                require_positive(params)?;
                (None, vec![z_layer(params, *n)?], None)
            }
            Target::Plancherel { theta, n } => (None, vec![plancherel_layer(theta, *n)?], None),
            Target::MixedZ { params, xi, max_size } => {
                require_positive(params)?;
                crate::measures::check_xi(xi)?;
                let masses = (0..=*max_size)
                    .map(|n| real_nonneg(degree_mass(params, xi, n), || format!("|λ| = {n}")))
                    .collect::<Result<Vec<_>, _>>()?;
                let tail = mixed_tail(params, xi, &masses);
                let layers = (0..=*max_size)
                    .map(|n| if masses[n as usize].is_zero() { Ok(None) } else { z_layer(params, n).map(Some) })
                    .collect::<Result<Vec<_>, _>>()?;
                let (degrees, layers) = compact(masses, layers)?;
                (Some(degrees), layers, Some(tail))
            }
            Target::Poisson { theta, eta, max_size } => {
                crate::measures::check_eta(eta)?;
                let masses: Vec<Rational> = (0..=*max_size)
                    .map(|n| {
                        rational_pow(eta, n as i64) / Rational::from_integer(crate::arith::factorial(n as u64))
                    })
                    .collect();
                let partial: f64 = masses.iter().map(to_f64).sum();
                let tail = TailMass { exact: None, float: 1.0 - (-to_f64(eta)).exp() * partial };
                let layers = (0..=*max_size).map(|n| plancherel_layer(theta, n).map(Some)).collect::<Result<_, _>>()?;
                let (degrees, layers) = compact(masses, layers)?;
                (Some(degrees), layers, Some(tail))
            }
        };
        Ok(Self { seed, rng, degrees, layers, tail })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm(&self) -> &'static str {
        ALGORITHM_ID
    }

    pub fn tail_mass(&self) -> Option<&TailMass> {
        self.tail.as_ref()
    }

    pub fn draw(&mut self) -> Partition {
        let layer = match &self.degrees {
            None => 0,
            Some(d) => *d.draw(&mut self.rng) as usize,
        };
        self.layers[layer].draw(&mut self.rng).clone()
    }

    pub fn draw_many(&mut self, count: usize) -> Vec<Partition> {
        (0..count).map(|_| self.draw()).collect()
    }

    /// Exact probability of each diagram in the sampler's support
    /// (conditioned on the truncation for mixed targets).
    pub fn exact_distribution(&self) -> Vec<(Partition, Rational)> {
        match &self.degrees {
            None => self.layers[0].items().iter().cloned().zip(self.layers[0].probabilities().iter().cloned()).collect(),
            Some(d) => d
                .probabilities()
                .iter()
                .zip(&self.layers)
                .flat_map(|(pd, layer)| {
                    layer.items().iter().cloned().zip(layer.probabilities().iter().map(move |p| p * pd))
                })
                .collect(),
        }
    }
}

/// Drops sizes of zero mass so layer indices line up with the degree table.
fn compact(
    masses: Vec<Rational>,
    layers: Vec<Option<CdfTable<Partition>>>,
) -> Result<(CdfTable<u32>, Vec<CdfTable<Partition>>), SampleError> {
    let mut kept_masses = Vec::new();
    let mut kept_layers = Vec::new();
    for (m, l) in masses.into_iter().zip(layers) {
        if let (false, Some(l)) = (m.is_zero(), l) {
            kept_masses.push(m);
            kept_layers.push(l);
        }
    }
    let idx = (0..kept_layers.len() as u32).collect();
    Ok((CdfTable::new(idx, kept_masses)?, kept_layers))
}

/// `1 − (1−ξ)^t Σ_{n≤N} (t)_n ξⁿ/n!`, exact when `t` is an integer.
fn mixed_tail(params: &JackParams, xi: &Rational, masses: &[Rational]) -> TailMass {
    let partial = masses.iter().fold(Rational::zero(), |a, m| a + m);
    let t = params.t();
    let base = Rational::one() - xi;
    let float = 1.0 - (to_f64(&t.re) * to_f64(&base).ln()).exp() * to_f64(&partial);
    let exact = (t.is_real() && t.re.is_integer())
        .then(|| t.re.to_integer().to_i64())
        .flatten()
        .map(|k| format_rational(&(Rational::one() - rational_pow(&base, k) * &partial)));
    TailMass { exact, float }
}

/// Pearson χ² statistic of `counts` against `probs` with `total` draws.
pub fn chi_square(counts: &[u64], probs: &[f64], total: u64) -> f64 {
    counts
        .iter()
        .zip(probs)
        .filter(|(_, &p)| p > 0.0)
        .map(|(&c, &p)| {
            let e = p * total as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum()
}

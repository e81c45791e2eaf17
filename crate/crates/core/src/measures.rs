//! z-measures and Plancherel measures with a general Jack parameter θ, their
//! Frobenius-coordinate forms for θ ∈ {1/2, 2}, and the positivity series.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::arith::{
    factorial, format_rational, int, quarter_power_in, rat, to_f64, AlgebraicScalar, ArithError, Base,
    GaussianRational, Prefactor, Rational, Tagged,
};
use crate::partition::{FrobeniusCoords, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("Jack parameter θ must be positive, got {0}")]
    NonPositiveTheta(String),
    #[error("(t)_{n} vanishes for t = {t}; the measure on Y_{n} is singular")]
    Singular { t: String, n: u32 },
    #[error("ξ must lie in (0, 1), got {0}")]
    XiOutOfRange(String),
    #[error("η must be positive, got {0}")]
    NonPositiveEta(String),
    #[error("Frobenius forms exist only for θ = 1/2 or θ = 2, got {0}")]
    UnsupportedTheta(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `(z, z′, θ)`; `t = z z′ / θ` is always recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JackParams {
    pub z: GaussianRational,
    pub zprime: GaussianRational,
    #[serde(with = "crate::arith::serde_rational")]
    theta: Rational,
}

impl JackParams {
    pub fn new(z: GaussianRational, zprime: GaussianRational, theta: Rational) -> Result<Self, MeasureError> {
        if !theta.is_positive() {
            return Err(MeasureError::NonPositiveTheta(format_rational(&theta)));
        }
        Ok(Self { z, zprime, theta })
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn t(&self) -> GaussianRational {
        (&self.z * &self.zprime).scale(&self.theta.recip())
    }

    /// Parameters of the conjugate-side measure `(−z/θ, −z′/θ, 1/θ)`.
    pub fn dual(&self) -> JackParams {
        let inv = self.theta.recip();
        JackParams { z: -self.z.scale(&inv), zprime: -self.zprime.scale(&inv), theta: inv }
    }
}

/// Positivity regimes of the z-measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesClass {
    Principal,
    Complementary,
    Degenerate,
    /// Identities still hold, positivity is not guaranteed.
    Unclassified,
}

impl SeriesClass {
    pub fn is_positive_range(self) -> bool {
        !matches!(self, SeriesClass::Unclassified)
    }
}

/// Rising factorial `t(t+1)…(t+n−1)`.
pub fn pochhammer(t: &GaussianRational, n: u32) -> GaussianRational {
    (0..n).fold(GaussianRational::one(), |acc, k| acc * (t + &GaussianRational::from(k as i64)))
}

/// `[a]_n`: `(a+1)(a+3)…(a+n−1)` for even `n`, `a(a+2)…(a+n−1)` for odd `n`, `1` for `n = 0`.
pub fn bracket(a: &GaussianRational, n: u32) -> GaussianRational {
    let start = if n % 2 == 0 { 1 } else { 0 };
    (start..n)
        .step_by(2)
        .fold(GaussianRational::one(), |acc, k| acc * (a + &GaussianRational::from(k as i64)))
}

/// Box-product form of `(z)_{λ,θ} = ∏ (z + (j−1) − (i−1)θ)`.
pub fn gen_pochhammer(z: &GaussianRational, lam: &Partition, theta: &Rational) -> GaussianRational {
    lam.boxes().fold(GaussianRational::one(), |acc, (i, j)| {
        let shift = int(j as i64) - theta * int(i as i64);
        acc * (z + &GaussianRational::real(shift))
    })
}

/// Row form `∏ᵢ (z − (i−1)θ)_{λᵢ}`.
pub fn gen_pochhammer_rows(z: &GaussianRational, lam: &Partition, theta: &Rational) -> GaussianRational {
    lam.parts().iter().enumerate().fold(GaussianRational::one(), |acc, (i, &r)| {
        let zi = z - &GaussianRational::real(theta * int(i as i64));
        acc * pochhammer(&zi, r)
    })
}

fn hook_product(lam: &Partition, theta: &Rational, offset: &Rational) -> Rational {
    let conj = lam.conjugate();
    lam.boxes().fold(Rational::one(), |acc, (i, j)| {
        let arm = int(lam.row(i) as i64 - j as i64 - 1);
        let leg = int(conj.row(j) as i64 - i as i64 - 1);
        acc * (arm + leg * theta + offset)
    })
}

/// `H(λ,θ) = ∏ ((λᵢ − j) + (λ′ⱼ − i)θ + 1)`.
pub fn hook_h(lam: &Partition, theta: &Rational) -> Rational {
    hook_product(lam, theta, &Rational::one())
}

/// `H′(λ,θ) = ∏ ((λᵢ − j) + (λ′ⱼ − i)θ + θ)`.
pub fn hook_h_prime(lam: &Partition, theta: &Rational) -> Rational {
    hook_product(lam, theta, theta)
}

fn row_gaps(lam: &Partition, theta: f64) -> impl Iterator<Item = f64> + '_ {
    let l = lam.length();
    (0..l).flat_map(move |i| {
        (i + 1..l).map(move |j| (lam.row(i) as f64 - lam.row(j) as f64) + (j - i) as f64 * theta)
    })
}

/// `H(λ,θ)` through log-Gamma quotients over rows.
pub fn hook_h_gamma(lam: &Partition, theta: &Rational) -> f64 {
    let th = to_f64(theta);
    let l = lam.length() as f64;
    let rows: f64 = (1..=lam.length())
        .map(|i| ln_gamma(lam.row(i - 1) as f64 - i as f64 * th + l * th + 1.0))
        .sum();
    let pairs: f64 = row_gaps(lam, th).map(|a| ln_gamma(a + 1.0 - th) - ln_gamma(a + 1.0)).sum();
    (rows + pairs).exp()
}

/// `H′(λ,θ)` through log-Gamma quotients over rows.
pub fn hook_h_prime_gamma(lam: &Partition, theta: &Rational) -> f64 {
    let th = to_f64(theta);
    let l = lam.length() as f64;
    let rows: f64 = (1..=lam.length())
        .map(|i| ln_gamma(lam.row(i - 1) as f64 - i as f64 * th + l * th + th) - ln_gamma(th))
        .sum();
    let pairs: f64 = row_gaps(lam, th).map(|a| ln_gamma(a) - ln_gamma(a + th)).sum();
    (rows + pairs).exp()
}

/// `M^{(n)}_{z,z′,θ}(λ)` with `n = |λ|`; equals 1 on the empty diagram.
pub fn z_measure_n(lam: &Partition, p: &JackParams) -> Result<GaussianRational, MeasureError> {
    let n = lam.size();
    let t = p.t();
    let tn = pochhammer(&t, n);
    if tn.is_zero() {
        return Err(MeasureError::Singular { t: t.to_string(), n });
    }
    let theta = p.theta();
    let numer = gen_pochhammer(&p.z, lam, theta) * gen_pochhammer(&p.zprime, lam, theta);
    let denom = hook_h(lam, theta) * hook_h_prime(lam, theta);
    let nf = Rational::from_integer(factorial(n as u64));
    Ok(numer.scale(&(nf / denom)).checked_div(&tn)?)
}

pub(crate) fn check_xi(xi: &Rational) -> Result<(), MeasureError> {
    if xi.is_positive() && *xi < Rational::one() {
        Ok(())
    } else {
        Err(MeasureError::XiOutOfRange(format_rational(xi)))
    }
}

pub(crate) fn check_eta(eta: &Rational) -> Result<(), MeasureError> {
    if eta.is_positive() {
        Ok(())
    } else {
        Err(MeasureError::NonPositiveEta(format_rational(eta)))
    }
}

/// `(1−ξ)^t`, carried symbolically.
pub fn mixing_prefactor(p: &JackParams, xi: &Rational) -> Prefactor {
    Prefactor::Power { base: Rational::one() - xi, exponent: p.t() }
}

/// `e^{−η}`, carried symbolically.
pub fn poisson_prefactor(eta: &Rational) -> Prefactor {
    Prefactor::Exp { exponent: -eta }
}

/// Mixed z-measure `(1−ξ)^t ξ^{|λ|} (z)_λ (z′)_λ / (H H′)`, exact part over the base ξ.
pub fn mixed_z_measure(lam: &Partition, p: &JackParams, xi: &Rational) -> Result<Tagged, MeasureError> {
    check_xi(xi)?;
    let base = Base::new(xi.clone())?;
    let theta = p.theta();
    let numer = gen_pochhammer(&p.z, lam, theta) * gen_pochhammer(&p.zprime, lam, theta);
    let denom = hook_h(lam, theta) * hook_h_prime(lam, theta);
    let value = quarter_power_in(&base, 4 * lam.size() as i64).scale(&numer.scale(&denom.recip()));
    Ok(Tagged::new(mixing_prefactor(p, xi), value))
}

/// Exact mass `(t)_n ξⁿ / n!` of the degree-`n` layer (without the `(1−ξ)^t` prefactor).
pub fn degree_mass(p: &JackParams, xi: &Rational, n: u32) -> GaussianRational {
    let scale = crate::arith::rational_pow(xi, n as i64) / Rational::from_integer(factorial(n as u64));
    pochhammer(&p.t(), n).scale(&scale)
}

/// `n! θⁿ / (H H′)`.
pub fn plancherel_n(lam: &Partition, theta: &Rational) -> Rational {
    let n = lam.size();
    let num = Rational::from_integer(factorial(n as u64)) * crate::arith::rational_pow(theta, n as i64);
    num / (hook_h(lam, theta) * hook_h_prime(lam, theta))
}

/// Poissonized Plancherel measure `e^{−η} ηⁿ θⁿ / (H H′)`, exact part over the base 2η.
pub fn poisson_plancherel(lam: &Partition, theta: &Rational, eta: &Rational) -> Result<Tagged, MeasureError> {
    check_eta(eta)?;
    let base = Base::new(eta * int(2))?;
    let n = lam.size() as i64;
    let v = crate::arith::rational_pow(&(eta * theta), n) / (hook_h(lam, theta) * hook_h_prime(lam, theta));
    Ok(Tagged::new(poisson_prefactor(eta), AlgebraicScalar::from_rational(v, &base)))
}

/// Which diagram's Frobenius coordinates enter the θ ∈ {1/2, 2} formulas:
/// λ ⊔ λ for θ = 2 and λ′ ⊔ λ′ for θ = 1/2.
pub fn doubled_frobenius(lam: &Partition, theta: &Rational) -> Result<FrobeniusCoords, MeasureError> {
    if *theta == int(2) {
        Ok(lam.double_union().to_frobenius())
    } else if *theta == rat(1, 2) {
        Ok(lam.conjugate().double_union().to_frobenius())
    } else {
        Err(MeasureError::UnsupportedTheta(format_rational(theta)))
    }
}

/// `∏_{i<j}(Pᵢ−Pⱼ)(Qᵢ−Qⱼ) / (∏ᵢ∏ⱼ(Pᵢ+Qⱼ+1) ∏ᵢ Pᵢ! Qᵢ!)`.
pub fn frobenius_cauchy_factor(f: &FrobeniusCoords) -> Rational {
    let (p, q) = (f.p(), f.q());
    let d = f.depth();
    let mut num = BigInt::one();
    for i in 0..d {
        for j in i + 1..d {
            num *= (p[i] as i64 - p[j] as i64) * (q[i] as i64 - q[j] as i64);
        }
    }
    let mut den = BigInt::one();
    for i in 0..d {
        for j in 0..d {
            den *= p[i] + q[j] + 1;
        }
        den *= factorial(p[i] as u64) * factorial(q[i] as u64);
    }
    Rational::new(num, den)
}

/// `1 / (H(λ,2) H′(λ,2))` from the Frobenius coordinates of λ ⊔ λ.
pub fn inverse_hook_product_frobenius(lam: &Partition) -> Rational {
    frobenius_cauchy_factor(&lam.double_union().to_frobenius())
}

/// Poissonized Plancherel measure for θ ∈ {1/2, 2} from the doubled Frobenius coordinates.
pub fn frobenius_plancherel(lam: &Partition, eta: &Rational, theta: &Rational) -> Result<Tagged, MeasureError> {
    check_eta(eta)?;
    let f = doubled_frobenius(lam, theta)?;
    let base = Base::new(eta * int(2))?;
    // (2η)^{½ Σ(Pᵢ+Qᵢ+1)} = s^{2 Σ(Pᵢ+Qᵢ+1)}
    let power = quarter_power_in(&base, 2 * f.weight() as i64);
    Ok(Tagged::new(poisson_prefactor(eta), power.scale_rational(&frobenius_cauchy_factor(&f))))
}

/// Mixed z-measure for θ ∈ {1/2, 2} from the doubled Frobenius coordinates and `[·]` brackets.
pub fn frobenius_z_measure(lam: &Partition, p: &JackParams, xi: &Rational) -> Result<Tagged, MeasureError> {
    check_xi(xi)?;
    let theta = p.theta();
    let f = doubled_frobenius(lam, theta)?;
    let one = GaussianRational::one();
    let (plus_z, plus_zp, minus_z, minus_zp) = if *theta == int(2) {
        (&p.z + &one, &p.zprime + &one, -&p.z, -&p.zprime)
    } else {
        let two = GaussianRational::from_int(2);
        (
            &(-&(&two * &p.z)) + &one,
            &(-&(&two * &p.zprime)) + &one,
            &two * &p.z,
            &two * &p.zprime,
        )
    };
    let brackets = f.p().iter().zip(f.q()).fold(GaussianRational::one(), |acc, (&pi, &qi)| {
        acc * bracket(&plus_z, pi) * bracket(&plus_zp, pi) * bracket(&minus_z, qi) * bracket(&minus_zp, qi)
    });
    let base = Base::new(xi.clone())?;
    let power = quarter_power_in(&base, 2 * f.weight() as i64);
    let value = power.scale(&brackets.scale(&frobenius_cauchy_factor(&f)));
    Ok(Tagged::new(mixing_prefactor(p, xi), value))
}

fn positive_integer(q: &Rational) -> Option<i64> {
    if q.is_integer() && q.is_positive() {
        use num_traits::ToPrimitive;
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Degenerate clause (1) or (2) with `z` playing the distinguished role.
fn degenerate_one_sided(z: &Rational, other: &Rational, theta: &Rational) -> bool {
    // (1) z = mθ, z′ > (m−1)θ
    if let Some(m) = positive_integer(&(z / theta)) {
        if *other > theta * int(m - 1) {
            return true;
        }
    }
    // (2) z = −m, z′ < −m + 1
    if let Some(m) = positive_integer(&-z) {
        if *other < int(1 - m) {
            return true;
        }
    }
    false
}

/// Positivity series of `(z, z′, θ)`.
pub fn classify_parameters(p: &JackParams) -> SeriesClass {
    let (z, zp, theta) = (&p.z, &p.zprime, p.theta());
    if !z.is_real() && *zp == z.conj() {
        // a non-real z is automatically off the real lattice ℤ≤0 + ℤ≥0 θ
        return SeriesClass::Principal;
    }
    if !z.is_real() || !zp.is_real() {
        return SeriesClass::Unclassified;
    }
    let (x, y) = (&z.re, &zp.re);
    // for θ = a/b in lowest terms, ℤ + ℤθ = (1/b)ℤ
    let b = Rational::from_integer(theta.denom().clone());
    let (xs, ys) = (x * &b, y * &b);
    if !xs.is_integer() && !ys.is_integer() && xs.floor() == ys.floor() {
        return SeriesClass::Complementary;
    }
    if degenerate_one_sided(x, y, theta) || degenerate_one_sided(y, x, theta) {
        return SeriesClass::Degenerate;
    }
    SeriesClass::Unclassified
}

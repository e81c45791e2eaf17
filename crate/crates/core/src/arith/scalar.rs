//! Elements of ℚ(i)[s]/(s⁴ − c) for a fixed positive rational `c`.
//!
//! `s` always stands for the real positive fourth root of `c`. Products are
//! reduced with `s⁴ → c`, so the stored coefficients are exactly the
//! polynomial representative of degree < 4. When `c` is a rational square or
//! fourth power the ring has zero divisors; equality, zero tests and inversion
//! are therefore performed modulo the minimal polynomial of `c^{1/4}`, which
//! makes the scalar type behave as the field ℚ(i)(c^{1/4}) ⊂ ℂ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::rational::{format_rational, parse_rational, rational_pow, rational_sqrt, to_f64, Rational};
use super::ArithError;

#[derive(Debug, PartialEq, Eq)]
enum RootKind {
    /// c = r⁴, so s = r.
    Rational(Rational),
    /// c = q² with q not a rational square, so s² = q.
    Square(Rational),
    /// s⁴ − c is irreducible over ℚ(i).
    Quartic,
}

#[derive(Debug)]
struct BaseInner {
    c: Rational,
    kind: RootKind,
}

/// The positive rational `c` fixing the ring ℚ(i)[c^{1/4}].
#[derive(Clone, Debug)]
pub struct Base(Arc<BaseInner>);

impl Base {
    pub fn new(c: Rational) -> Result<Self, ArithError> {
        if !c.is_positive() {
            return Err(ArithError::NonPositiveBase(format_rational(&c)));
        }
        let kind = match rational_sqrt(&c) {
            Some(q) => match rational_sqrt(&q) {
                Some(r) => RootKind::Rational(r),
                None => RootKind::Square(q),
            },
            None => RootKind::Quartic,
        };
        Ok(Base(Arc::new(BaseInner { c, kind })))
    }

    pub fn value(&self) -> &Rational {
        &self.0.c
    }

    /// True when `c^{1/4}` is itself rational and every scalar collapses to ℚ(i).
    pub fn is_collapsing(&self) -> bool {
        matches!(self.0.kind, RootKind::Rational(_))
    }

    /// Degree of ℚ(i)(c^{1/4}) over ℚ(i).
    pub fn field_degree(&self) -> usize {
        match self.0.kind {
            RootKind::Rational(_) => 1,
            RootKind::Square(_) => 2,
            RootKind::Quartic => 4,
        }
    }

    pub fn root_f64(&self) -> f64 {
        match &self.0.kind {
            RootKind::Rational(r) => to_f64(r),
            RootKind::Square(q) => to_f64(q).sqrt(),
            RootKind::Quartic => to_f64(&self.0.c).powf(0.25),
        }
    }
}

impl PartialEq for Base {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.c == other.0.c
    }
}

impl Eq for Base {}

#[derive(Clone)]
pub struct AlgebraicScalar {
    coeffs: [GaussianRational; 4],
    base: Base,
}

impl AlgebraicScalar {
    pub fn new(coeffs: [GaussianRational; 4], base: &Base) -> Self {
        Self { coeffs, base: base.clone() }
    }

    pub fn zero(base: &Base) -> Self {
        Self::new(Default::default(), base)
    }

    pub fn one(base: &Base) -> Self {
        Self::from_gaussian(GaussianRational::one(), base)
    }

    pub fn from_gaussian(g: GaussianRational, base: &Base) -> Self {
        let mut coeffs: [GaussianRational; 4] = Default::default();
        coeffs[0] = g;
        Self::new(coeffs, base)
    }

    pub fn from_rational(q: Rational, base: &Base) -> Self {
        Self::from_gaussian(GaussianRational::real(q), base)
    }

    pub fn from_int(n: i64, base: &Base) -> Self {
        Self::from_gaussian(GaussianRational::from_int(n), base)
    }

    /// The generator `s = c^{1/4}`.
    pub fn generator(base: &Base) -> Self {
        let mut coeffs: [GaussianRational; 4] = Default::default();
        coeffs[1] = GaussianRational::one();
        Self::new(coeffs, base)
    }

    pub fn coeffs(&self) -> &[GaussianRational; 4] {
        &self.coeffs
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// Coefficients reduced modulo the minimal polynomial of `c^{1/4}`.
    pub fn canonical(&self) -> [GaussianRational; 4] {
        let [a0, a1, a2, a3] = &self.coeffs;
        match &self.base.0.kind {
            RootKind::Quartic => self.coeffs.clone(),
            RootKind::Square(q) => [a0 + &a2.scale(q), a1 + &a3.scale(q), Zero::zero(), Zero::zero()],
            RootKind::Rational(r) => {
                let r2 = r * r;
                let r3 = &r2 * r;
                let v = a0 + &a1.scale(r);
                let v = &v + &a2.scale(&r2);
                let v = &v + &a3.scale(&r3);
                [v, Zero::zero(), Zero::zero(), Zero::zero()]
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        self.canonical().iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        let c = self.canonical();
        c[0].is_one() && c[1..].iter().all(Zero::is_zero)
    }

    /// All coefficients of the canonical form are real.
    pub fn is_real(&self) -> bool {
        self.canonical().iter().all(GaussianRational::is_real)
    }

    /// The value as an element of ℚ(i), if it has one.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        let [c0, rest @ ..] = self.canonical();
        rest.iter().all(Zero::is_zero).then_some(c0)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_gaussian().filter(GaussianRational::is_real).map(|g| g.re)
    }

    fn check_base(&self, other: &Self) -> Result<(), ArithError> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(ArithError::BaseMismatch(
                format_rational(self.base.value()),
                format_rational(other.base.value()),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_base(other)?;
        let coeffs = std::array::from_fn(|k| &self.coeffs[k] + &other.coeffs[k]);
        Ok(Self::new(coeffs, &self.base))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_base(other)?;
        let coeffs = std::array::from_fn(|k| &self.coeffs[k] - &other.coeffs[k]);
        Ok(Self::new(coeffs, &self.base))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_base(other)?;
        let mut wide: [GaussianRational; 7] = Default::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                wide[i + j] += &(a * b);
            }
        }
        let c = self.base.value();
        let mut coeffs: [GaussianRational; 4] = Default::default();
        for (k, w) in wide.into_iter().enumerate() {
            if k < 4 {
                coeffs[k] += &w;
            } else if !w.is_zero() {
                coeffs[k - 4] += &w.scale(c);
            }
        }
        Ok(Self::new(coeffs, &self.base))
    }

    pub fn scale(&self, g: &GaussianRational) -> Self {
        let coeffs = std::array::from_fn(|k| &self.coeffs[k] * g);
        Self::new(coeffs, &self.base)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let coeffs = std::array::from_fn(|k| self.coeffs[k].scale(q));
        Self::new(coeffs, &self.base)
    }

    /// Multiplicative inverse in ℚ(i)(c^{1/4}).
    pub fn inverse(&self) -> Result<Self, ArithError> {
        let canon = self.canonical();
        if canon.iter().all(Zero::is_zero) {
            return Err(ArithError::DivisionByZero);
        }
        let base = &self.base;
        let coeffs = match &base.0.kind {
            RootKind::Rational(_) => {
                let mut out: [GaussianRational; 4] = Default::default();
                out[0] = canon[0].inv()?;
                out
            }
            RootKind::Square(q) => {
                // (a + b s)⁻¹ = (a − b s) / (a² − q b²)
                let [a, b, ..] = &canon;
                let norm = &(a * a) - &(b * b).scale(q);
                let ninv = norm.inv()?;
                [a * &ninv, -(b * &ninv), Zero::zero(), Zero::zero()]
            }
            RootKind::Quartic => {
                // a = A(u) + s B(u) with u = s²; a·(A − sB) = A² − u B² = C(u),
                // and C(u)·(c0 − c1 u) = c0² − c c1² lies in ℚ(i).
                let c = base.value();
                let [a0, a1, a2, a3] = &canon;
                let conj_s = Self::new([a0.clone(), -a1, a2.clone(), -a3], base);
                let cu = self.checked_mul(&conj_s)?;
                let (c0, c1) = (&cu.coeffs[0], &cu.coeffs[2]);
                let conj_u = Self::new([c0.clone(), Zero::zero(), -c1, Zero::zero()], base);
                let norm = &(c0 * c0) - &(c1 * c1).scale(c);
                let ninv = norm.inv()?;
                conj_s.checked_mul(&conj_u)?.scale(&ninv).coeffs
            }
        };
        Ok(Self::new(coeffs, base))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_base(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, ArithError> {
        let b = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.base);
        for _ in 0..k.unsigned_abs() {
            acc = acc.checked_mul(&b)?;
        }
        Ok(acc)
    }

    /// Substitutes the real positive fourth root of the base for `s`.
    pub fn to_complex(&self) -> Complex64 {
        let s = self.base.root_f64();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut sk = 1.0;
        for c in &self.coeffs {
            if !c.is_zero() {
                acc += c.to_complex() * sk;
            }
            sk *= s;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.to_complex().re
    }
}

/// `c^{k/4}` as an element of ℚ[s]/(s⁴ − c): `c^{⌊k/4⌋}·s^{k mod 4}`.
pub fn quarter_power(c: &Rational, k: i64) -> Result<AlgebraicScalar, ArithError> {
    Ok(quarter_power_in(&Base::new(c.clone())?, k))
}

pub fn quarter_power_in(base: &Base, k: i64) -> AlgebraicScalar {
    let whole = rational_pow(base.value(), k.div_euclid(4));
    let mut coeffs: [GaussianRational; 4] = Default::default();
    coeffs[k.rem_euclid(4) as usize] = GaussianRational::real(whole);
    AlgebraicScalar::new(coeffs, base)
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && (self.coeffs == other.coeffs || self.canonical() == other.canonical())
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [c={}]", self, format_rational(self.base.value()))
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})·s"),
                _ => format!("({c})·s^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// Panics when the bases differ; the `checked_*` methods return an error instead.
        impl<'a> $tr<&'a AlgebraicScalar> for &'a AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, o: &AlgebraicScalar) -> AlgebraicScalar {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<AlgebraicScalar> for AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, o: AlgebraicScalar) -> AlgebraicScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a AlgebraicScalar> for AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $m(self, o: &AlgebraicScalar) -> AlgebraicScalar {
                (&self).$m(o)
            }
        }
    };
}
scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        let coeffs = std::array::from_fn(|k| -&self.coeffs[k]);
        AlgebraicScalar::new(coeffs, &self.base)
    }
}

impl Neg for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    coeffs: [GaussianRational; 4],
    base: String,
}

impl Serialize for AlgebraicScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr { coeffs: self.coeffs.clone(), base: format_rational(self.base.value()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let c = parse_rational(&repr.base).map_err(serde::de::Error::custom)?;
        let base = Base::new(c).map_err(serde::de::Error::custom)?;
        Ok(AlgebraicScalar::new(repr.coeffs, &base))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn base(p: i64, q: i64) -> Base {
        Base::new(rat(p, q)).unwrap()
    }

    fn poly(b: &Base, cs: [i64; 4]) -> AlgebraicScalar {
        AlgebraicScalar::new(cs.map(GaussianRational::from_int), b)
    }

    #[test]
    fn generator_reduction() {
        let b = base(7, 5);
        let s = AlgebraicScalar::generator(&b);
        let s3 = s.pow(3).unwrap();
        assert_eq!((&s * &s3).coeffs()[0], GaussianRational::real(rat(7, 5)));
        assert_eq!(&s * &s3, AlgebraicScalar::from_rational(rat(7, 5), &b));
    }

    #[test]
    fn fourth_power_of_xi_quarter() {
        let b = base(1, 16);
        let s = AlgebraicScalar::generator(&b);
        assert_eq!(s.pow(4).unwrap(), AlgebraicScalar::from_rational(rat(1, 16), &b));
    }

    #[test]
    fn difference_of_squares_keeps_polynomial_form() {
        let b = base(1, 16);
        let p = &poly(&b, [1, 1, 0, 0]) * &poly(&b, [1, -1, 0, 0]);
        assert_eq!(p.coeffs(), poly(&b, [1, 0, -1, 0]).coeffs());
        // collapsing base: s = 1/2, so 1 − s² = 3/4 as a number
        assert_eq!(p, AlgebraicScalar::from_rational(rat(3, 4), &b));
    }

    #[test]
    fn quarter_power_examples() {
        let c = rat(1, 16);
        assert!(quarter_power(&c, 0).unwrap().is_one());
        assert_eq!(quarter_power(&c, 4).unwrap().as_rational(), Some(rat(1, 16)));
        let q3 = quarter_power(&c, 3).unwrap();
        assert_eq!(q3.coeffs()[3], GaussianRational::one());
        assert!((q3.to_f64() - 0.125).abs() < 1e-15);
        let qm = quarter_power(&c, -5).unwrap();
        assert_eq!(qm.coeffs()[3], GaussianRational::real(int(256)));
        assert!((qm.to_f64() - 32.0).abs() < 1e-12);
        assert!(quarter_power(&int(0), 1).is_err());
    }

    #[test]
    fn to_float_examples() {
        let b = base(1, 16);
        assert_eq!(poly(&b, [0, 1, 0, 0]).to_f64(), 0.5);
        assert_eq!(poly(&base(3, 7), [1, 0, 0, 0]).to_f64(), 1.0);
        assert!((poly(&b, [0, 0, 1, 0]).to_f64() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn base_mismatch_and_zero_division() {
        let a = AlgebraicScalar::one(&base(1, 3));
        let b = AlgebraicScalar::one(&base(1, 2));
        assert!(matches!(a.checked_add(&b), Err(ArithError::BaseMismatch(..))));
        assert!(matches!(a.checked_mul(&b), Err(ArithError::BaseMismatch(..))));
        let z = AlgebraicScalar::zero(&base(1, 3));
        assert_eq!(a.checked_div(&z), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn inverse_all_root_kinds() {
        for b in [base(1, 3), base(4, 9), base(1, 16), base(1, 1)] {
            let a = AlgebraicScalar::new(
                [
                    GaussianRational::new(int(2), int(1)),
                    GaussianRational::from_int(-3),
                    GaussianRational::new(rat(1, 2), int(0)),
                    GaussianRational::new(int(0), rat(5, 7)),
                ],
                &b,
            );
            let inv = a.inverse().unwrap();
            assert!((&a * &inv).is_one(), "base {:?}", b.value());
        }
    }

    #[test]
    fn zero_divisor_is_zero_in_collapsed_ring() {
        // s − 1/2 vanishes when s = (1/16)^{1/4}
        let b = base(1, 16);
        let a = AlgebraicScalar::new(
            [GaussianRational::real(rat(-1, 2)), GaussianRational::one(), Zero::zero(), Zero::zero()],
            &b,
        );
        assert!(a.is_zero());
        assert_eq!(a.inverse(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn json_shape() {
        let b = base(1, 16);
        let v = serde_json::to_value(poly(&b, [1, 0, -1, 0])).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "coeffs": [["1/1","0/1"],["0/1","0/1"],["-1/1","0/1"],["0/1","0/1"]],
                "base": "1/16"
            })
        );
        let back: AlgebraicScalar = serde_json::from_value(v).unwrap();
        assert_eq!(back.coeffs(), poly(&b, [1, 0, -1, 0]).coeffs());
    }
}

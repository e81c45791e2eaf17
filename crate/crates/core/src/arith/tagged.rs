use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::rational::{format_rational, serde_rational, to_f64, Rational};
use super::scalar::AlgebraicScalar;

/// A transcendental factor kept symbolically next to an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prefactor {
    Unit,
    /// `base^exponent` with `base > 0`, e.g. `(1−ξ)^t`.
    Power {
        #[serde(with = "serde_rational")]
        base: Rational,
        exponent: GaussianRational,
    },
    /// `e^exponent`, e.g. `e^{−η}`.
    Exp {
        #[serde(with = "serde_rational")]
        exponent: Rational,
    },
}

impl Prefactor {
    pub fn inverse(&self) -> Prefactor {
        match self {
            Prefactor::Unit => Prefactor::Unit,
            Prefactor::Power { base, exponent } => Prefactor::Power { base: base.clone(), exponent: -exponent },
            Prefactor::Exp { exponent } => Prefactor::Exp { exponent: -exponent },
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Prefactor::Unit => Complex64::new(1.0, 0.0),
            Prefactor::Power { base, exponent } => (exponent.to_complex() * to_f64(base).ln()).exp(),
            Prefactor::Exp { exponent } => Complex64::new(to_f64(exponent).exp(), 0.0),
        }
    }
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prefactor::Unit => f.write_str("1"),
            Prefactor::Power { base, exponent } => write!(f, "({})^({})", format_rational(base), exponent),
            Prefactor::Exp { exponent } => write!(f, "exp({})", format_rational(exponent)),
        }
    }
}

/// `prefactor · value`; equality compares the symbolic tag and the exact part separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tagged {
    pub prefactor: Prefactor,
    pub value: AlgebraicScalar,
}

impl Tagged {
    pub fn new(prefactor: Prefactor, value: AlgebraicScalar) -> Self {
        Self { prefactor, value }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.prefactor.to_complex() * self.value.to_complex()
    }
}

impl fmt::Display for Tagged {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} · [{}]", self.prefactor, self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn inverse_is_involution() {
        let p = Prefactor::Power { base: rat(15, 16), exponent: GaussianRational::from_int(6) };
        assert_eq!(p.inverse().inverse(), p);
        assert_ne!(p.inverse(), p);
        let e = Prefactor::Exp { exponent: rat(-1, 2) };
        assert_eq!(e.inverse(), Prefactor::Exp { exponent: rat(1, 2) });
    }

    #[test]
    fn float_values() {
        let p = Prefactor::Power { base: rat(15, 16), exponent: GaussianRational::from_int(6) };
        assert!((p.to_complex().re - (15.0f64 / 16.0).powi(6)).abs() < 1e-15);
        let e = Prefactor::Exp { exponent: int(1) };
        assert!((e.to_complex().re - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn json_tagging() {
        let p = Prefactor::Exp { exponent: rat(-1, 2) };
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "exp", "exponent": "-1/2"}));
        assert_eq!(serde_json::from_value::<Prefactor>(v).unwrap(), p);
    }
}

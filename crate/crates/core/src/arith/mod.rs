//! Exact scalars: rationals, Gaussian rationals and the quartic extension
//! ℚ(i)[c^{1/4}] that carries quarter-integer powers of ξ or 2η.

mod gaussian;
mod rational;
mod scalar;
mod tagged;

use thiserror::Error;

pub use gaussian::GaussianRational;
pub use rational::{
    factorial, format_rational, int, is_integer, parse_rational, rat, rational_pow, rational_sqrt, to_f64, Rational,
};
pub(crate) use rational::serde_rational;
pub use scalar::{quarter_power, quarter_power_in, AlgebraicScalar, Base};
pub use tagged::{Prefactor, Tagged};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("scalars live over different bases ({0} vs {1})")]
    BaseMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("extension base must be a positive rational, got {0}")]
    NonPositiveBase(String),
    #[error("cannot parse {0:?} as a rational or Gaussian rational")]
    Parse(String),
}

#[cfg(test)]
mod proptests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-1000i64..=1000, 1i64..=30).prop_map(|(p, q)| rat(p, q))
    }

    fn gauss() -> impl Strategy<Value = GaussianRational> {
        (small_rat(), small_rat()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    fn bases() -> impl Strategy<Value = Base> {
        prop_oneof![Just(rat(1, 3)), Just(rat(1, 16)), Just(rat(4, 9)), Just(rat(5, 2)), Just(int(1))]
            .prop_map(|c| Base::new(c).unwrap())
    }

    fn scalar_triple() -> impl Strategy<Value = (AlgebraicScalar, AlgebraicScalar, AlgebraicScalar)> {
        (bases(), [gauss(), gauss(), gauss(), gauss()], [gauss(), gauss(), gauss(), gauss()], [gauss(), gauss(), gauss(), gauss()])
            .prop_map(|(b, x, y, z)| {
                (AlgebraicScalar::new(x, &b), AlgebraicScalar::new(y, &b), AlgebraicScalar::new(z, &b))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms((a, b, c) in scalar_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn gaussian_inverse_roundtrip(a in gauss()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::from_int(1));
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn quarter_power_is_additive(b in bases(), k in -16i64..=16, m in -16i64..=16) {
            prop_assert_eq!(
                &quarter_power_in(&b, k) * &quarter_power_in(&b, m),
                quarter_power_in(&b, k + m)
            );
        }

        #[test]
        fn to_float_is_ring_homomorphism((a, b, _c) in scalar_triple()) {
            let close = |x: num_complex::Complex64, y: num_complex::Complex64| {
                let scale = x.norm().max(y.norm()).max(1.0);
                (x - y).norm() <= 1e-12 * scale
            };
            prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
            prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        }

        #[test]
        fn json_roundtrip((a, _b, _c) in scalar_triple()) {
            let back: AlgebraicScalar = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(back.coeffs(), a.coeffs());
            prop_assert!(back.base() == a.base());
            prop_assert!(!(&back - &a).coeffs().iter().any(|c| !c.is_zero()));
        }
    }
}

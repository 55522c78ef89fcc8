//! The maps `ι: z_i ↦ x_i + y_i` and `Φ^k: y_i ↦ k y_i`, formal expressions
//! in the symbols `Φ^k(ι(p_m))`, and the elimination that writes every
//! `P_{a,b}(n)` modulo the group ideal in those symbols.

mod decompose;
mod expr;
mod mu;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polyring::{Family, PolyError, Polynomial, Rational, Substitution, Var};
use crate::quotient::QuotientError;
use crate::weyl::WeylError;

pub use decompose::{
    a_recursion, a_recursion_exprs, decompose, decompose_with, isolate_top, pivot, principal_sum, DecomposeOptions,
    DecompositionResult, Target,
};
pub use expr::{canonicalize, canonicalize_with, default_k_set, newton_rewrite, ElementarySymbol, Factor, GenTerm, GeneratorExpr};
pub use mu::{expand_p_symbols, mu_generate, orbit_sum};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("power-map index k must be nonzero")]
    ZeroK,
    #[error("power-sum degree m must be positive")]
    ZeroM,
    #[error("expression needs rank at least {needed}, got {rank}")]
    RankTooSmall { needed: u32, rank: usize },
    #[error("{0}")]
    WrongFamily(String),
    #[error("odd total degree {0} is not signed-invariant")]
    OddDegree(u32),
    #[error("degree a+b = {degree} outside the supported range 1..={max}")]
    OutOfRange { degree: u32, max: u32 },
    #[error("elimination pivot is zero")]
    PivotZero,
    #[error("{0}")]
    NotCanonicalizable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `ι`: the ring map `z_i ↦ x_i + y_i`.
pub fn iota(p: &Polynomial) -> Result<Polynomial, GenError> {
    if p.uses_family(Family::X) || p.uses_family(Family::Y) {
        return Err(GenError::WrongFamily("ι takes a polynomial in the z-variables only".into()));
    }
    let n = p.rank();
    let mut sub = Substitution::new(n);
    for i in 0..n {
        sub.insert(Var::new(Family::Z, i), &Polynomial::x(n, i) + &Polynomial::y(n, i))?;
    }
    Ok(p.substitute(&sub)?)
}

/// `Φ^k`: fixes `x_i`, sends `y_i ↦ k y_i`, so `x^I y^J ↦ k^{|J|} x^I y^J`.
pub fn power_map(k: i64, p: &Polynomial) -> Result<Polynomial, GenError> {
    if p.uses_family(Family::Z) {
        return Err(GenError::WrongFamily("Φ^k acts on x- and y-variables only".into()));
    }
    let k = Rational::from_integer(BigInt::from(k));
    Ok(p.map_monomials(|m| (pow_scalar(&k, m.family_degree(Family::Y)), m.clone())))
}

/// `ψ^k`: every variable of a single-family polynomial is scaled by `k`.
pub fn torus_power_map(k: i64, p: &Polynomial) -> Result<Polynomial, GenError> {
    if Family::ALL.iter().filter(|&&f| p.uses_family(f)).count() > 1 {
        return Err(GenError::WrongFamily("ψ^k takes a single-family polynomial".into()));
    }
    let k = Rational::from_integer(BigInt::from(k));
    Ok(p.map_monomials(|m| (pow_scalar(&k, m.degree()), m.clone())))
}

fn pow_scalar(k: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * k)
}

/// `Φ^k(ι(p_m))` in rank `n`.
pub fn generator_polynomial(k: i64, m: u32, n: usize) -> Result<Polynomial, GenError> {
    if k == 0 {
        return Err(GenError::ZeroK);
    }
    if m == 0 {
        return Err(GenError::ZeroM);
    }
    let pm = crate::polyring::power_sum(m, n, Family::Z)?;
    power_map(k, &iota(&pm)?)
}

/// Expands an expression into rank `n`, which must be at least every `m`
/// appearing in it.
pub fn evaluate(expr: &GeneratorExpr, n: usize) -> Result<Polynomial, GenError> {
    let needed = expr.max_m();
    if (needed as usize) > n {
        return Err(GenError::RankTooSmall { needed, rank: n });
    }
    evaluate_unbounded(expr, n)
}

/// Like [`evaluate`] but accepts `m > n`. The symplectic generators are
/// unbounded in degree, so `Sp(1)` classes of degree 4 still need `p_4`.
pub fn evaluate_unbounded(expr: &GeneratorExpr, n: usize) -> Result<Polynomial, GenError> {
    let mut cache = std::collections::BTreeMap::new();
    let mut acc = Polynomial::zero(n);
    for term in expr.terms() {
        let mut prod = Polynomial::constant(n, term.coeff.clone());
        for f in &term.factors {
            if !cache.contains_key(f) {
                cache.insert(*f, generator_polynomial(f.k, f.m, n)?);
            }
            prod = &prod * &cache[f];
        }
        acc = &acc + &prod;
    }
    Ok(acc)
}

pub(crate) fn binomial(m: u32, j: u32) -> BigInt {
    if j > m {
        return BigInt::zero();
    }
    (0..j).fold(BigInt::one(), |acc, i| acc * BigInt::from(m - i) / BigInt::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::{frac, int};
    use crate::polyring::{power_sum, two_var_power_sum};
    use crate::testutil::{arb_polynomial, arb_polynomial_in};
    use proptest::prelude::*;

    fn z(n: usize, i: usize) -> Polynomial {
        Polynomial::z(n, i)
    }

    #[test]
    fn iota_examples() {
        let got = iota(&(&z(2, 0) + &z(2, 1))).unwrap();
        let want = &(&Polynomial::x(2, 0) + &Polynomial::x(2, 1)) + &(&Polynomial::y(2, 0) + &Polynomial::y(2, 1));
        assert_eq!(got, want);
        let p2 = iota(&power_sum(2, 2, Family::Z).unwrap()).unwrap();
        let want = &(&two_var_power_sum(2, 0, 2).unwrap() + &two_var_power_sum(1, 1, 2).unwrap().scale(&int(2)))
            + &two_var_power_sum(0, 2, 2).unwrap();
        assert_eq!(p2, want);
        assert_eq!(iota(&Polynomial::one(2)).unwrap(), Polynomial::one(2));
        assert!(iota(&Polynomial::x(2, 0)).is_err());
    }

    #[test]
    fn power_map_examples() {
        let p2 = iota(&power_sum(2, 2, Family::Z).unwrap()).unwrap();
        let want = &(&two_var_power_sum(2, 0, 2).unwrap() - &two_var_power_sum(1, 1, 2).unwrap().scale(&int(2)))
            + &two_var_power_sum(0, 2, 2).unwrap();
        assert_eq!(power_map(-1, &p2).unwrap(), want);
        assert_eq!(power_map(1, &p2).unwrap(), p2);
        assert!(power_map(2, &z(2, 0)).is_err());
    }

    #[test]
    fn torus_power_map_examples() {
        let x1 = Polynomial::x(2, 0);
        assert_eq!(torus_power_map(2, &x1).unwrap(), x1.scale(&int(2)));
        let x1x2 = &x1 * &Polynomial::x(2, 1);
        assert_eq!(torus_power_map(-3, &x1x2).unwrap(), x1x2.scale(&int(9)));
        assert_eq!(torus_power_map(0, &(&x1 + &Polynomial::one(2))).unwrap(), Polynomial::one(2));
        assert!(torus_power_map(2, &(&x1 + &Polynomial::y(2, 0))).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let single = GeneratorExpr::single(Rational::one(), 1, 1).unwrap();
        assert_eq!(evaluate(&single, 2).unwrap(), iota(&power_sum(1, 2, Family::Z).unwrap()).unwrap());
        let half = GeneratorExpr::linear([(frac(1, 2), 1, 2), (frac(1, 2), -1, 2)]).unwrap();
        let want = &two_var_power_sum(2, 0, 2).unwrap() + &two_var_power_sum(0, 2, 2).unwrap();
        assert_eq!(evaluate(&half, 2).unwrap(), want);
        assert!(evaluate(&GeneratorExpr::zero(), 2).unwrap().is_zero());
        assert!(matches!(evaluate(&half, 1), Err(GenError::RankTooSmall { needed: 2, rank: 1 })));
    }

    #[test]
    fn eigenvalue_law_grid() {
        for n in 1..=4 {
            for a in 0..=4u32 {
                for b in 0..=4u32 {
                    if a + b == 0 {
                        continue;
                    }
                    let p = two_var_power_sum(a, b, n).unwrap();
                    for k in -3i64..=3 {
                        let scale = Rational::from_integer(BigInt::from(k).pow(b));
                        assert_eq!(power_map(k, &p).unwrap(), p.scale(&scale));
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn iota_is_multiplicative(
            p in arb_polynomial_in(2, 3, 4, vec![Family::Z]),
            q in arb_polynomial_in(2, 3, 4, vec![Family::Z]),
        ) {
            prop_assert_eq!(iota(&(&p * &q)).unwrap(), &iota(&p).unwrap() * &iota(&q).unwrap());
        }

        #[test]
        fn power_maps_compose(p in arb_polynomial(3, 4, 5), k in -4i64..=4, l in -4i64..=4) {
            let lhs = power_map(k, &power_map(l, &p).unwrap()).unwrap();
            prop_assert_eq!(lhs, power_map(k * l, &p).unwrap());
        }

        #[test]
        fn closure_under_power_maps(k in -3i64..=3, c1 in -4i64..=4, k1 in 1i64..=3, k2 in -3i64..=-1) {
            let expr = GeneratorExpr::linear([(int(c1), k1, 2), (frac(1, 3), k2, 1)]).unwrap();
            prop_assume!(k != 0);
            let lhs = power_map(k, &evaluate(&expr, 3).unwrap()).unwrap();
            prop_assert_eq!(lhs, evaluate(&expr.apply_power(k).unwrap(), 3).unwrap());
        }
    }
}

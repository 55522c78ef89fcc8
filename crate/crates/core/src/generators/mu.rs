//! Signed symmetrizations `μ(x^I y^J)` written as polynomials in the
//! two-variable power sums `P_{a,b}`.
//!
//! For an even-parity monomial the sign flips act trivially, so `μ` is the
//! `S_n` average: the orbit sum `m_λ` over the multiset `λ` of nonzero
//! exponent pairs, divided by the orbit size. Orbit sums are peeled by
//! `P_α m_μ = Σ_ν c_ν m_ν`, where `ν` is `μ ∪ {α}` or `μ` with one part
//! `β` replaced by `α + β`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use super::GenError;
use crate::polyring::{two_var_power_sum, FormalPoly, Polynomial, Rational};
use crate::weyl::{parity, Parity};

type Part = (u32, u32);
type PPoly = FormalPoly<Part>;

fn normalize(mut parts: Vec<Part>) -> Vec<Part> {
    parts.retain(|&p| p != (0, 0));
    parts.sort();
    parts
}

fn multiplicity(parts: &[Part], p: Part) -> usize {
    parts.iter().filter(|&&q| q == p).count()
}

fn remove_one(parts: &[Part], p: Part) -> Vec<Part> {
    let mut out = parts.to_vec();
    let i = out.iter().position(|&q| q == p).expect("part present");
    out.remove(i);
    out
}

/// Number of monomials of type `ν` in `P_α m_μ` hit by a fixed monomial of
/// type `ν`: positions holding `γ ≥ α` whose reduction `γ − α` leaves `μ`.
fn coefficient(nu: &[Part], alpha: Part, mu: &[Part]) -> usize {
    let distinct: BTreeSet<Part> = nu.iter().copied().collect();
    distinct
        .into_iter()
        .filter(|g| g.0 >= alpha.0 && g.1 >= alpha.1)
        .filter(|&g| {
            let mut rest = remove_one(nu, g);
            rest.push((g.0 - alpha.0, g.1 - alpha.1));
            normalize(rest) == mu
        })
        .map(|g| multiplicity(nu, g))
        .sum()
}

fn orbit_sum_memo(lambda: &[Part], memo: &mut BTreeMap<Vec<Part>, PPoly>) -> PPoly {
    if let Some(hit) = memo.get(lambda) {
        return hit.clone();
    }
    let result = match lambda {
        [] => PPoly::one(),
        [p] => PPoly::symbol(*p),
        _ => {
            let alpha = *lambda.last().expect("nonempty");
            let mu = lambda[..lambda.len() - 1].to_vec();
            let mut nus: BTreeSet<Vec<Part>> = BTreeSet::new();
            for beta in mu.iter().copied().collect::<BTreeSet<_>>() {
                let mut nu = remove_one(&mu, beta);
                nu.push((alpha.0 + beta.0, alpha.1 + beta.1));
                nus.insert(normalize(nu));
            }
            let mut acc = PPoly::symbol(alpha).mul(&orbit_sum_memo(&mu, memo));
            for nu in &nus {
                let c = coefficient(nu, alpha, &mu);
                if c > 0 {
                    acc = acc.sub(&orbit_sum_memo(nu, memo).scale(&Rational::from_integer(BigInt::from(c))));
                }
            }
            let c_lambda = coefficient(lambda, alpha, &mu);
            acc.scale(&(Rational::one() / Rational::from_integer(BigInt::from(c_lambda))))
        }
    };
    memo.insert(lambda.to_vec(), result.clone());
    result
}

/// The orbit sum `m_λ` of a multiset of exponent pairs as a polynomial in
/// `P_{a,b}` symbols. Pairs equal to `(0, 0)` are ignored.
pub fn orbit_sum(lambda: &[Part]) -> PPoly {
    orbit_sum_memo(&normalize(lambda.to_vec()), &mut BTreeMap::new())
}

/// `μ(x^I y^J)` for `Sp(n)` as a polynomial in `P_{a,b}` symbols. `I` and
/// `J` may be shorter than `n`; missing entries are zero.
pub fn mu_generate(i: &[u32], j: &[u32], n: usize) -> Result<PPoly, GenError> {
    if parity(i, j)? == Parity::Odd {
        return Err(GenError::OddDegree(i.iter().chain(j).sum()));
    }
    if i.len() > n {
        return Err(GenError::RankTooSmall { needed: i.len() as u32, rank: n });
    }
    let lambda = normalize(i.iter().copied().zip(j.iter().copied()).collect());
    let distinct: BTreeSet<Part> = lambda.iter().copied().collect();
    // orbit size n! / (Π mult! (n − p)!) = falling factorial n^(p) / Π mult!
    let mut orbit = BigInt::one();
    for k in 0..lambda.len() {
        orbit *= BigInt::from(n - k);
    }
    for d in distinct {
        for k in 1..=multiplicity(&lambda, d) {
            orbit /= BigInt::from(k);
        }
    }
    Ok(orbit_sum(&lambda).scale(&(Rational::one() / Rational::from_integer(orbit))))
}

/// Expands `P_{a,b}` symbols into rank `n`.
pub fn expand_p_symbols(expr: &PPoly, n: usize) -> Result<Polynomial, GenError> {
    Ok(expr.evaluate(
        Polynomial::zero(n),
        |c| Polynomial::constant(n, c.clone()),
        |&(a, b)| two_var_power_sum(a, b, n),
        |x, y| x + y,
        |x, y| x * y,
    )?)
}

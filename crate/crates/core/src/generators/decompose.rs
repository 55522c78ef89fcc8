//! The A_k elimination and the decomposition of `P_{a,b}(n)`.
//!
//! Modulo the ideal, `Φ^k(ι(p_m)) ≡ Σ_{j=1}^m k^j C(m,j) P_{m-j,j}(n)`
//! because `P_{m,0}` lies in it. Each step `B ↦ Φ^{s+1}(B) − (s+1)^s B`
//! kills the `j = s` component, so `t − 1` steps isolate the top component
//! of a sum truncated at `j = t`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expr::GeneratorExpr;
use super::{binomial, evaluate_unbounded, GenError};
use crate::polyring::{two_var_power_sum, Polynomial, Rational};
use crate::quotient::ideal_for_group;
use crate::weyl::{GroupKind, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub group: GroupKind,
    pub rank: usize,
    pub a: u32,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub target: Target,
    #[serde(flatten)]
    pub expr: GeneratorExpr,
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Largest `a + b` accepted for `Sp(n)`; `None` means `2 max(n, 2)`.
    pub sp_max_degree: Option<u32>,
}

impl DecomposeOptions {
    pub fn max_degree(&self, spec: &GroupSpec) -> u32 {
        match spec.kind {
            GroupKind::Sp => self.sp_max_degree.unwrap_or(2 * spec.rank.max(2) as u32),
            GroupKind::U | GroupKind::SU => spec.rank as u32,
        }
    }
}

/// `Π_{k=2}^t (k^t − k^{k−1})`.
pub fn pivot(t: u32) -> BigInt {
    (2..=t).map(|k| BigInt::from(k).pow(t) - BigInt::from(k).pow(k - 1)).product()
}

fn integer(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// `A_0 = ι(p_m)`, `A_s = Φ^{s+1}(A_{s−1}) − (s+1)^s A_{s−1}` as expressions.
pub fn a_recursion_exprs(m: u32) -> Result<Vec<GeneratorExpr>, GenError> {
    let mut out = vec![GeneratorExpr::single(Rational::one(), 1, m)?];
    for s in 1..m {
        let prev = out.last().expect("nonempty");
        let next = prev.apply_power(s as i64 + 1)?.sub(&prev.scale(&integer(BigInt::from(s + 1).pow(s))));
        out.push(next);
    }
    Ok(out)
}

/// `A_0..A_{m−1}` expanded in rank `n`.
pub fn a_recursion(m: u32, n: usize) -> Result<Vec<Polynomial>, GenError> {
    if m == 0 {
        return Err(GenError::ZeroM);
    }
    if m as usize > n {
        return Err(GenError::RankTooSmall { needed: m, rank: n });
    }
    a_recursion_exprs(m)?.iter().map(|e| super::evaluate(e, n)).collect()
}

/// `Σ_{j=1}^m C(m,j) P_{m−j,j}(n)`, congruent to `ι(p_m)` modulo the ideal.
pub fn principal_sum(m: u32, n: usize) -> Result<Polynomial, GenError> {
    let mut acc = Polynomial::zero(n);
    for j in 1..=m {
        acc = &acc + &two_var_power_sum(m - j, j, n)?.scale(&integer(binomial(m, j)));
    }
    Ok(acc)
}

/// Given `x ≡ Σ_{j=1}^t C(m,j) P_{m−j,j}`, returns an expression for
/// `P_{m−t,t}` by `t − 1` elimination steps with `k = 2..t`.
pub fn isolate_top(x: &GeneratorExpr, m: u32, t: u32) -> Result<GeneratorExpr, GenError> {
    let mut b = x.clone();
    for s in 1..t {
        b = b.apply_power(s as i64 + 1)?.sub(&b.scale(&integer(BigInt::from(s + 1).pow(s))));
    }
    let p = pivot(t) * binomial(m, t);
    if p.is_zero() {
        return Err(GenError::PivotZero);
    }
    Ok(b.scale(&(Rational::one() / integer(p))))
}

pub fn decompose(spec: &GroupSpec, a: u32, b: u32) -> Result<DecompositionResult, GenError> {
    decompose_with(spec, a, b, &DecomposeOptions::default())
}

/// Writes `P_{a,b}(n)` modulo the group ideal in the symbols `Φ^k(ι(p_m))`
/// and certifies the result by reduction.
///
/// The top components `P_{0,m}, P_{1,m−1}, …` are isolated one at a time
/// and subtracted from `ι(p_m)` until `j = b` is on top.
pub fn decompose_with(
    spec: &GroupSpec,
    a: u32,
    b: u32,
    options: &DecomposeOptions,
) -> Result<DecompositionResult, GenError> {
    let m = a + b;
    let max = options.max_degree(spec);
    if spec.rank == 0 {
        return Err(crate::quotient::QuotientError::ZeroRank.into());
    }
    if spec.kind == GroupKind::Sp && m % 2 == 1 {
        return Err(GenError::OddDegree(m));
    }
    if m == 0 || m > max {
        return Err(GenError::OutOfRange { degree: m, max });
    }

    let expr = if b == 0 {
        GeneratorExpr::zero()
    } else {
        let mut x = GeneratorExpr::single(Rational::one(), 1, m)?;
        let mut t = m;
        loop {
            let top = isolate_top(&x, m, t)?;
            if t == b {
                break top;
            }
            x = x.sub(&top.scale(&integer(binomial(m, t))));
            t -= 1;
        }
    };

    let ideal = ideal_for_group(spec)?;
    let value = evaluate_unbounded(&expr, spec.rank)?;
    let certified = ideal.equal_mod(&value, &two_var_power_sum(a, b, spec.rank)?)?;
    Ok(DecompositionResult { target: Target { group: spec.kind, rank: spec.rank, a, b }, expr, certified })
}

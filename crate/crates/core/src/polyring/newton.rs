//! Rewriting power sums `p_m` in elementary symmetric polynomials `sigma_i`
//! through Newton's identities
//! `p_k = sum_{i<k} (-1)^{i-1} sigma_i p_{k-i} + (-1)^{k-1} k sigma_k`.

use super::formal::FormalPoly;
use super::monomial::Family;
use super::polynomial::Polynomial;
use super::rational::int;
use super::symmetric::{elementary_symmetric, power_sum};
use super::PolyError;

/// `p_m` as a polynomial in `sigma_1..sigma_m` (symbols are the indices).
pub fn power_sum_in_elementary(m: usize, n: usize) -> Result<FormalPoly<usize>, PolyError> {
    if m == 0 || m > n {
        return Err(PolyError::IndexOutOfRange { index: m, rank: n });
    }
    let mut table: Vec<FormalPoly<usize>> = vec![FormalPoly::zero()];
    for k in 1..=m {
        let mut pk = FormalPoly::symbol(k).scale(&int(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
        for i in 1..k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            pk = pk.add(&FormalPoly::symbol(i).mul(&table[k - i]).scale(&int(sign)));
        }
        table.push(pk);
    }
    Ok(table.swap_remove(m))
}

/// Rewrites an expression in power sums `p_i` (symbol `i`) into one in
/// elementary symmetric polynomials `sigma_i` (symbol `i`), for rank `n`.
pub fn newton_convert(expr: &FormalPoly<usize>, n: usize) -> Result<FormalPoly<usize>, PolyError> {
    expr.substitute(|&i| power_sum_in_elementary(i, n))
}

/// Expands an expression in `p_i` symbols into the given variable family.
pub fn expand_power_sums(expr: &FormalPoly<usize>, n: usize, family: Family) -> Result<Polynomial, PolyError> {
    expand(expr, n, |i| power_sum(i as u32, n, family))
}

/// Expands an expression in `sigma_i` symbols into the given variable family.
pub fn expand_elementary(expr: &FormalPoly<usize>, n: usize, family: Family) -> Result<Polynomial, PolyError> {
    expand(expr, n, |i| elementary_symmetric(i, n, family))
}

fn expand(
    expr: &FormalPoly<usize>,
    n: usize,
    mut leaf: impl FnMut(usize) -> Result<Polynomial, PolyError>,
) -> Result<Polynomial, PolyError> {
    expr.evaluate(
        Polynomial::zero(n),
        |c| Polynomial::constant(n, c.clone()),
        |&i| leaf(i),
        |a, b| a + b,
        |a, b| a * b,
    )
}

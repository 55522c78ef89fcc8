//! Power sums, two-family power sums and elementary symmetric polynomials.

use num_traits::One;

use super::monomial::{Family, Monomial};
use super::polynomial::Polynomial;
use super::rational::Rational;
use super::PolyError;

/// `p_m = v_1^m + ... + v_n^m` in the chosen family.
pub fn power_sum(m: u32, n: usize, family: Family) -> Result<Polynomial, PolyError> {
    if m == 0 {
        return Err(PolyError::ZeroPowerSum);
    }
    check_rank(n)?;
    let terms = (0..n).map(|i| {
        let mut mono = Monomial::one(n);
        mono.family_mut(family)[i] = m;
        (mono, Rational::one())
    });
    Ok(Polynomial::from_terms(n, terms))
}

/// `P_{a,b}(n) = sum_i x_i^a y_i^b`.
pub fn two_var_power_sum(a: u32, b: u32, n: usize) -> Result<Polynomial, PolyError> {
    if a == 0 && b == 0 {
        return Err(PolyError::ZeroPowerSum);
    }
    check_rank(n)?;
    let terms = (0..n).map(|i| {
        let mut mono = Monomial::one(n);
        mono.family_mut(Family::X)[i] = a;
        mono.family_mut(Family::Y)[i] = b;
        (mono, Rational::one())
    });
    Ok(Polynomial::from_terms(n, terms))
}

/// `e_i`: the sum of all squarefree degree-`i` monomials in the family.
pub fn elementary_symmetric(i: usize, n: usize, family: Family) -> Result<Polynomial, PolyError> {
    check_rank(n)?;
    if i == 0 || i > n {
        return Err(PolyError::IndexOutOfRange { index: i, rank: n });
    }
    let mut terms = Vec::new();
    let mut chosen = Vec::with_capacity(i);
    subsets(n, i, 0, &mut chosen, &mut |set| {
        let mut mono = Monomial::one(n);
        for &k in set {
            mono.family_mut(family)[k] = 1;
        }
        terms.push((mono, Rational::one()));
    });
    Ok(Polynomial::from_terms(n, terms))
}

/// Elementary symmetric polynomials of `family_values` raised to `power`,
/// i.e. `e_i(v_1^power, ..., v_n^power)`.
pub fn elementary_symmetric_in_powers(i: usize, n: usize, family: Family, power: u32) -> Result<Polynomial, PolyError> {
    let e = elementary_symmetric(i, n, family)?;
    Ok(e.map_monomials(|m| {
        let mut out = m.clone();
        for v in out.family_mut(family) {
            *v *= power;
        }
        (Rational::one(), out)
    }))
}

fn subsets(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for j in start..n {
        chosen.push(j);
        subsets(n, k, j + 1, chosen, f);
        chosen.pop();
    }
}

fn check_rank(n: usize) -> Result<(), PolyError> {
    if n == 0 {
        Err(PolyError::ZeroRank)
    } else {
        Ok(())
    }
}

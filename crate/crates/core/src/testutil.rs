//! Shared proptest strategies.

use proptest::prelude::*;

use crate::polyring::rational::frac;
use crate::polyring::{Family, Monomial, Polynomial};

/// Random polynomials in the x and y families.
pub fn arb_polynomial(rank: usize, max_degree: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    arb_polynomial_in(rank, max_degree, max_terms, vec![Family::X, Family::Y])
}

pub fn arb_polynomial_in(
    rank: usize,
    max_degree: usize,
    max_terms: usize,
    families: Vec<Family>,
) -> impl Strategy<Value = Polynomial> {
    let var = (0..families.len(), 0..rank).prop_map(move |(f, i)| (families[f], i));
    let monomial = proptest::collection::vec(var, 0..=max_degree).prop_map(move |vars| {
        let mut e = [vec![0u32; rank], vec![0u32; rank], vec![0u32; rank]];
        for (f, i) in vars {
            let slot = match f {
                Family::X => 0,
                Family::Y => 1,
                Family::Z => 2,
            };
            e[slot][i] += 1;
        }
        Monomial::from_exponents(&e[0], &e[1], &e[2])
    });
    let coeff = (-5i64..=5, 1i64..=4).prop_map(|(n, d)| frac(n, d));
    proptest::collection::vec((monomial, coeff), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(rank, terms))
}

//! Buchberger's algorithm with sugar pair selection under the block order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;

use crate::polyring::{Monomial, Polynomial, Rational};

/// Full multivariate division remainder: no term of the result is divisible
/// by a leading monomial of `basis`.
pub fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut rest = p.clone();
    let mut rem = Polynomial::zero(p.rank());
    while let Some((m, c)) = rest.take_leading() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero basis element");
                let factor = -(&c / lc);
                let shifted = g.mul_term(&lm.quotient_of(&m), &factor);
                // the leading terms cancel, so add everything below the lead
                for (tm, tc) in shifted.terms().rev().skip(1) {
                    rest.add_term(tm.clone(), tc.clone());
                }
            }
            None => rem.add_term(m, c),
        }
    }
    rem
}

pub(crate) fn make_monic(p: &Polynomial) -> Polynomial {
    match p.leading_term() {
        Some((_, lc)) if !lc.is_one() => p.scale(&(Rational::one() / lc)),
        _ => p.clone(),
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &(Rational::one() / fc));
    let b = g.mul_term(&gm.quotient_of(&l), &(Rational::one() / gc));
    &a - &b
}

#[derive(Clone, PartialEq, Eq)]
struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sugar, &self.lcm, self.i, self.j).cmp(&(other.sugar, &other.lcm, other.i, other.j))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn sugar_of(p: &Polynomial) -> u32 {
    p.total_degree().unwrap_or(0)
}

/// Reduced Gröbner basis of the ideal generated by the nonzero entries of
/// `generators`. Elements are monic and sorted by leading monomial.
/// Returns `[1]` for the unit ideal.
pub fn groebner(generators: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();

    let push = |p: Polynomial, s: u32, basis: &mut Vec<Polynomial>, sugar: &mut Vec<u32>, pairs: &mut BTreeSet<Pair>| {
        let j = basis.len();
        let lm_j = p.leading_monomial().expect("nonzero").clone();
        for (i, g) in basis.iter().enumerate() {
            let lm_i = g.leading_monomial().expect("nonzero");
            let lcm = lm_i.lcm(&lm_j);
            let d = lcm.degree();
            let s_pair = (sugar[i] + d - lm_i.degree()).max(s + d - lm_j.degree());
            pairs.insert(Pair { sugar: s_pair, lcm, i, j });
        }
        basis.push(p);
        sugar.push(s);
    };

    for g in generators {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            let s = sugar_of(g);
            push(make_monic(&r), s, &mut basis, &mut sugar, &mut pairs);
        }
    }

    while let Some(pair) = pairs.pop_first() {
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        if f.leading_monomial().expect("nonzero").is_coprime(g.leading_monomial().expect("nonzero")) {
            continue;
        }
        let r = reduce(&s_polynomial(f, g), &basis);
        if !r.is_zero() {
            push(make_monic(&r), pair.sugar, &mut basis, &mut sugar, &mut pairs);
        }
    }

    reduce_basis(basis)
}

/// Drops redundant elements and fully reduces tails.
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in basis {
        let lm = p.leading_monomial().expect("nonzero");
        if !minimal.iter().any(|q| q.leading_monomial().expect("nonzero").divides(lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let (lm, lc) = p.leading_term().expect("nonzero");
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, q)| q.clone()).collect();
        let mut tail = p.clone();
        tail.take_leading();
        let mut r = reduce(&tail, &others);
        r.add_term(lm.clone(), lc.clone());
        out.push(make_monic(&r));
    }
    out
}

/// Buchberger criterion: every S-polynomial of basis pairs reduces to zero.
pub fn satisfies_buchberger(basis: &[Polynomial]) -> bool {
    if basis.iter().any(Polynomial::is_zero) {
        return false;
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Monic, no leading monomial divides any term of another element.
pub fn is_reduced(basis: &[Polynomial]) -> bool {
    basis.iter().enumerate().all(|(k, p)| {
        p.leading_term().is_some_and(|(_, c)| c.is_one())
            && basis.iter().enumerate().filter(|&(i, _)| i != k).all(|(_, q)| {
                let lm = q.leading_monomial().expect("nonzero");
                p.terms().all(|(m, _)| !lm.divides(m))
            })
    })
}

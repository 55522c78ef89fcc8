use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three variable families sharing a common rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
    Z,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::X, Family::Y, Family::Z];

    fn block(self) -> usize {
        match self {
            Family::X => 0,
            Family::Y => 1,
            Family::Z => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        }
    }
}

/// A single variable `x_i`, `y_i` or `z_i`; `index` is 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: usize,
}

impl Var {
    pub fn new(family: Family, index: usize) -> Self {
        Var { family, index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index + 1)
    }
}

/// Monomial order used throughout: the x-block is compared first, then y,
/// then z; inside a block, graded reverse lexicographic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    BlockGrevlexXyz,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::BlockGrevlexXyz => "block-grevlex-xyz",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        (name == "block-grevlex-xyz").then_some(MonomialOrder::BlockGrevlexXyz)
    }

    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.rank, b.rank);
        let n = a.rank;
        for block in 0..3 {
            let range = block * n..(block + 1) * n;
            let ord = grevlex(&a.exps[range.clone()], &b.exps[range]);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for (ea, eb) in a.iter().rev().zip(b.iter().rev()) {
        if ea != eb {
            // smaller exponent in the last differing variable is larger
            return eb.cmp(ea);
        }
    }
    Ordering::Equal
}

/// `x^I y^J z^K` over a fixed rank `n`; exponents stored as one vector laid
/// out `[x_1..x_n, y_1..y_n, z_1..z_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    rank: usize,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial { rank, exps: vec![0; 3 * rank] }
    }

    pub fn from_exponents(x: &[u32], y: &[u32], z: &[u32]) -> Self {
        assert!(x.len() == y.len() && y.len() == z.len(), "exponent sequences must share the rank");
        let mut exps = Vec::with_capacity(3 * x.len());
        exps.extend_from_slice(x);
        exps.extend_from_slice(y);
        exps.extend_from_slice(z);
        Monomial { rank: x.len(), exps }
    }

    pub fn var(rank: usize, v: Var) -> Self {
        let mut m = Monomial::one(rank);
        m.exps[v.family.block() * rank + v.index] = 1;
        m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn family(&self, family: Family) -> &[u32] {
        let b = family.block() * self.rank;
        &self.exps[b..b + self.rank]
    }

    pub(crate) fn family_mut(&mut self, family: Family) -> &mut [u32] {
        let b = family.block() * self.rank;
        &mut self.exps[b..b + self.rank]
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps[v.family.block() * self.rank + v.index]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn family_degree(&self, family: Family) -> u32 {
        self.family(family).iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Variables with a nonzero exponent, in block order.
    pub fn support(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(move |(k, &e)| {
            let family = Family::ALL[k / self.rank];
            (Var::new(family, k % self.rank), e)
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.rank, other.rank, "monomial rank mismatch");
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { rank: self.rank, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Monomial { rank: self.rank, exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial { rank: self.rank, exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::BlockGrevlexXyz.compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: &[u32], y: &[u32]) -> Monomial {
        Monomial::from_exponents(x, y, &vec![0; x.len()])
    }

    #[test]
    fn x_block_dominates() {
        // x1 > y1^5 because the x-block is compared first
        assert!(m(&[1, 0], &[0, 0]) > m(&[0, 0], &[5, 0]));
        assert!(m(&[1, 0], &[1, 0]) > m(&[1, 0], &[0, 0]));
    }

    #[test]
    fn grevlex_inside_block() {
        // degree first
        assert!(m(&[0, 2], &[0, 0]) > m(&[1, 0], &[0, 0]));
        // x1^2 > x1 x2 > x2^2
        assert!(m(&[2, 0], &[0, 0]) > m(&[1, 1], &[0, 0]));
        assert!(m(&[1, 1], &[0, 0]) > m(&[0, 2], &[0, 0]));
        // x1 > x2
        assert!(m(&[1, 0], &[0, 0]) > m(&[0, 1], &[0, 0]));
    }

    #[test]
    fn order_is_multiplicative() {
        let u = m(&[0, 1], &[2, 0]);
        let v = m(&[1, 0], &[0, 0]);
        let w = m(&[3, 1], &[0, 4]);
        assert!(u < v);
        assert!(u.mul(&w) < v.mul(&w));
    }

    #[test]
    fn display_uses_one_based_names() {
        assert_eq!(m(&[2, 0], &[0, 1]).to_string(), "x1^2*y2");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }
}

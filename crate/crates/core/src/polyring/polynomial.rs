use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::{Family, Monomial, Var};
use super::rational::{self, Rational};
use super::PolyError;

/// Sparse polynomial with exact rational coefficients over the families
/// `x, y, z` of a common rank.
///
/// Terms are kept in a map ordered by [`MonomialOrder`](super::MonomialOrder),
/// and zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        Polynomial { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::term(rank, Monomial::one(rank), c)
    }

    pub fn term(rank: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.rank(), rank, "monomial rank mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { rank, terms }
    }

    pub fn var(rank: usize, v: Var) -> Self {
        assert!(v.index < rank, "variable {v} out of range for rank {rank}");
        Self::term(rank, Monomial::var(rank, v), Rational::one())
    }

    pub fn x(rank: usize, i: usize) -> Self {
        Self::var(rank, Var::new(Family::X, i))
    }

    pub fn y(rank: usize, i: usize) -> Self {
        Self::var(rank, Var::new(Family::Y, i))
    }

    pub fn z(rank: usize, i: usize) -> Self {
        Self::var(rank, Var::new(Family::Z, i))
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(rank);
        for (m, c) in terms {
            assert_eq!(m.rank(), rank, "monomial rank mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// True when some term involves a variable of `family`.
    pub fn uses_family(&self, family: Family) -> bool {
        self.terms.keys().any(|m| m.family_degree(family) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn take_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    fn check_rank(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(PolyError::RankMismatch { left: self.rank, right: other.rank })
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_rank(other)?;
        let mut out = Polynomial::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { rank: self.rank, terms }
    }

    /// Multiplies by the monomial `m` with coefficient `c`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial { rank: self.rank, terms }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.rank);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies a monomial-to-term map term by term. Used for maps that send
    /// every monomial to a scalar multiple of a single monomial (Weyl
    /// actions, power maps).
    pub(crate) fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> (Rational, Monomial)) -> Polynomial {
        let mut out = Polynomial::zero(self.rank);
        for (m, c) in &self.terms {
            let (s, m2) = f(m);
            out.add_term(m2, c * s);
        }
        out
    }

    /// Ring homomorphism sending each variable to its replacement.
    pub fn substitute(&self, map: &Substitution) -> Result<Polynomial, PolyError> {
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(map.rank);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(map.rank, c.clone());
            for (v, e) in m.support() {
                let repl = map.get(v).ok_or(PolyError::MissingReplacement(v))?;
                let pw = powers.entry((v, e)).or_insert_with(|| repl.pow(e));
                prod = &prod * &*pw;
            }
            for (tm, tc) in prod.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }
}

/// Per-variable replacements for [`Polynomial::substitute`]. All
/// replacements share `rank`.
#[derive(Clone, Debug)]
pub struct Substitution {
    rank: usize,
    map: BTreeMap<Var, Polynomial>,
}

impl Substitution {
    pub fn new(rank: usize) -> Self {
        Substitution { rank, map: BTreeMap::new() }
    }

    /// Identity on every variable of the given rank.
    pub fn identity(rank: usize) -> Self {
        let mut s = Substitution::new(rank);
        for family in Family::ALL {
            for i in 0..rank {
                let v = Var::new(family, i);
                s.map.insert(v, Polynomial::var(rank, v));
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn insert(&mut self, v: Var, replacement: Polynomial) -> Result<(), PolyError> {
        if replacement.rank() != self.rank {
            return Err(PolyError::RankMismatch { left: self.rank, right: replacement.rank() });
        }
        self.map.insert(v, replacement);
        Ok(())
    }

    pub fn with(mut self, v: Var, replacement: Polynomial) -> Result<Self, PolyError> {
        self.insert(v, replacement)?;
        Ok(self)
    }

    pub fn get(&self, v: Var) -> Option<&Polynomial> {
        self.map.get(&v)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial rank mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { rank: self.rank, terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Leading term first, e.g. `x1^2 + 2*x1*y1 - 1/2*y2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", rational::display_coeff(&mag))?;
            } else if rational::is_unit_magnitude(&mag) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::display_coeff(&mag))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "rational::serde_string")]
    coeff: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    z: Option<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    rank: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let exps = |m: &Monomial, fam| {
            let e = m.family(fam);
            e.iter().any(|&v| v > 0).then(|| e.to_vec())
        };
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coeff: c.clone(),
                x: exps(m, Family::X),
                y: exps(m, Family::Y),
                z: exps(m, Family::Z),
            })
            .collect();
        PolynomialJson { rank: self.rank, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolynomialJson::deserialize(d)?;
        let n = raw.rank;
        if n == 0 {
            return Err(D::Error::custom("rank must be positive"));
        }
        let mut p = Polynomial::zero(n);
        for t in raw.terms {
            let fam = |v: Option<Vec<u32>>, name: &str| -> Result<Vec<u32>, D::Error> {
                let v = v.unwrap_or_else(|| vec![0; n]);
                if v.len() != n {
                    return Err(D::Error::custom(format!("{name} exponents have length {} but rank is {n}", v.len())));
                }
                Ok(v)
            };
            let m = Monomial::from_exponents(&fam(t.x, "x")?, &fam(t.y, "y")?, &fam(t.z, "z")?);
            p.add_term(m, t.coeff);
        }
        Ok(p)
    }
}

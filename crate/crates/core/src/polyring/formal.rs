//! Polynomials in abstract symbols (`p_m`, `sigma_i`, `P_{a,b}`, ...), used
//! wherever a result is an expression in named generators rather than in
//! the coordinate variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};

/// A product of symbols with positive exponents, sorted by symbol.
pub type FormalMonomial<S> = Vec<(S, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalPoly<S: Ord + Clone> {
    terms: BTreeMap<FormalMonomial<S>, Rational>,
}

impl<S: Ord + Clone> Default for FormalPoly<S> {
    fn default() -> Self {
        FormalPoly { terms: BTreeMap::new() }
    }
}

impl<S: Ord + Clone> FormalPoly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn symbol(s: S) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(s, 1)], Rational::one());
        p
    }

    /// Builds the monomial `coeff * prod(symbols)`; repeated symbols are merged.
    pub fn monomial(coeff: Rational, symbols: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut p = Self::zero();
        p.add_term(normalize(symbols), coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormalMonomial<S>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FormalMonomial<S>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &S> {
        self.terms.keys().flat_map(|m| m.iter().map(|(s, _)| s))
    }

    fn add_term(&mut self, m: FormalMonomial<S>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = normalize(ma.iter().cloned().chain(mb.iter().cloned()));
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Replaces every symbol by a polynomial in (possibly different) symbols.
    pub fn substitute<T: Ord + Clone, E>(&self, mut f: impl FnMut(&S) -> Result<FormalPoly<T>, E>) -> Result<FormalPoly<T>, E> {
        let mut out = FormalPoly::zero();
        for (m, c) in &self.terms {
            let mut prod = FormalPoly::constant(c.clone());
            for (s, e) in m {
                prod = prod.mul(&f(s)?.pow(*e));
            }
            out = out.add(&prod);
        }
        Ok(out)
    }

    /// Evaluates into any commutative ring given by closures.
    pub fn evaluate<R, E>(
        &self,
        zero: R,
        mut constant: impl FnMut(&Rational) -> R,
        mut symbol: impl FnMut(&S) -> Result<R, E>,
        mut add: impl FnMut(&R, &R) -> R,
        mut mul: impl FnMut(&R, &R) -> R,
    ) -> Result<R, E> {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut prod = constant(c);
            for (s, e) in m {
                let v = symbol(s)?;
                for _ in 0..*e {
                    prod = mul(&prod, &v);
                }
            }
            acc = add(&acc, &prod);
        }
        Ok(acc)
    }

    pub fn display_with<'a>(&'a self, name: impl Fn(&S) -> String + 'a) -> impl fmt::Display + 'a {
        FormalDisplay { poly: self, name: Box::new(name) }
    }
}

fn normalize<S: Ord + Clone>(symbols: impl IntoIterator<Item = (S, u32)>) -> FormalMonomial<S> {
    let mut acc: BTreeMap<S, u32> = BTreeMap::new();
    for (s, e) in symbols {
        if e > 0 {
            *acc.entry(s).or_insert(0) += e;
        }
    }
    acc.into_iter().collect()
}

struct FormalDisplay<'a, S: Ord + Clone> {
    poly: &'a FormalPoly<S>,
    name: Box<dyn Fn(&S) -> String + 'a>,
}

impl<S: Ord + Clone> fmt::Display for FormalDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let body: Vec<String> = m
                .iter()
                .map(|(s, e)| if *e == 1 { (self.name)(s) } else { format!("{}^{e}", (self.name)(s)) })
                .collect();
            match (body.is_empty(), rational::is_unit_magnitude(&mag)) {
                (true, _) => write!(f, "{}", rational::display_coeff(&mag))?,
                (false, true) => write!(f, "{}", body.join("*"))?,
                (false, false) => write!(f, "{}*{}", rational::display_coeff(&mag), body.join("*"))?,
            }
        }
        Ok(())
    }
}

//! Formal linear combinations of products of the symbols `Φ^k(ι(p_m))`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GenError;
use crate::polyring::rational::{self, Rational};
use crate::polyring::{power_sum_in_elementary, FormalPoly};

/// The symbol `Φ^k(ι(p_m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub k: i64,
    pub m: u32,
}

impl Factor {
    pub fn new(k: i64, m: u32) -> Result<Self, GenError> {
        if k == 0 {
            return Err(GenError::ZeroK);
        }
        if m == 0 {
            return Err(GenError::ZeroM);
        }
        Ok(Factor { k, m })
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.k).cmp(&(other.m, other.k))
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Φ^{}(ι(p{}))", self.k, self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenTerm {
    #[serde(with = "rational::serde_string")]
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

/// Like terms are merged and zero coefficients dropped, so structural
/// equality is equality of formal expressions (not of their values).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorExpr {
    terms: BTreeMap<Vec<Factor>, Rational>,
}

impl GeneratorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff · Φ^k(ι(p_m))`.
    pub fn single(coeff: Rational, k: i64, m: u32) -> Result<Self, GenError> {
        let mut e = Self::zero();
        e.add_term(vec![Factor::new(k, m)?], coeff);
        Ok(e)
    }

    /// `Σ coeff · Φ^k(ι(p_m))` from `(coeff, k, m)` triples.
    pub fn linear(items: impl IntoIterator<Item = (Rational, i64, u32)>) -> Result<Self, GenError> {
        let mut e = Self::zero();
        for (c, k, m) in items {
            e.add_term(vec![Factor::new(k, m)?], c);
        }
        Ok(e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = GenTerm>) -> Result<Self, GenError> {
        let mut e = Self::zero();
        for t in terms {
            for f in &t.factors {
                Factor::new(f.k, f.m)?;
            }
            e.add_term(t.factors, t.coeff);
        }
        Ok(e)
    }

    fn add_term(&mut self, mut factors: Vec<Factor>, c: Rational) {
        if c.is_zero() {
            return;
        }
        factors.sort();
        let entry = self.terms.entry(factors.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&factors);
        }
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

    pub fn terms(&self) -> impl Iterator<Item = GenTerm> + '_ {
        self.terms.iter().map(|(f, c)| GenTerm { coeff: c.clone(), factors: f.clone() })
    }

    pub fn coeff(&self, factors: &[Factor]) -> Rational {
        let mut key = factors.to_vec();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest `m` among all factors; 0 for constants and the empty sum.
    pub fn max_m(&self) -> u32 {
        self.terms.keys().flatten().map(|f| f.m).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (f, a) in &self.terms {
            out.add_term(f.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (fa, ca) in &self.terms {
            for (fb, cb) in &other.terms {
                out.add_term(fa.iter().chain(fb).copied().collect(), ca * cb);
            }
        }
        out
    }

    /// The expression for `Φ^a` of this one: every factor's `k` is
    /// multiplied by `a`, since `Φ^a ∘ Φ^k = Φ^{ak}`.
    pub fn apply_power(&self, a: i64) -> Result<Self, GenError> {
        if a == 0 {
            return Err(GenError::ZeroK);
        }
        let mut out = Self::zero();
        for (fs, c) in &self.terms {
            out.add_term(fs.iter().map(|f| Factor { k: f.k * a, m: f.m }).collect(), c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for GeneratorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (fs, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let body: Vec<String> = fs.iter().map(Factor::to_string).collect();
            if body.is_empty() {
                write!(f, "{}", rational::display_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", body.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::display_coeff(&mag), body.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    terms: Vec<GenTerm>,
}

impl Serialize for GeneratorExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExprJson { terms: self.terms().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneratorExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ExprJson::deserialize(d)?;
        GeneratorExpr::from_terms(raw.terms).map_err(serde::de::Error::custom)
    }
}

/// `1, -1, 2, -2, ...`, truncated to `m` entries.
pub fn default_k_set(m: u32) -> Vec<i64> {
    (0..m as i64).map(|i| if i % 2 == 0 { i / 2 + 1 } else { -(i / 2 + 1) }).collect()
}

/// Rewrites a sum of single-factor terms onto the k-set chosen by `k_set`
/// for each degree `m`.
///
/// Modulo the ideal, `Σ_k c_k Φ^k(ι(p_m))` is determined by the moments
/// `Σ_k c_k k^j` for `1 ≤ j ≤ m` (the `j = 0` part is `P_{m,0}`, which lies
/// in the ideal). Given `m` distinct nonzero k-values the moment system is
/// a scaled Vandermonde system with a unique solution, so the result is a
/// normal form for the class of the expression.
pub fn canonicalize_with(expr: &GeneratorExpr, k_set: impl Fn(u32) -> Vec<i64>) -> Result<GeneratorExpr, GenError> {
    let mut by_m: BTreeMap<u32, Vec<(i64, Rational)>> = BTreeMap::new();
    for (fs, c) in &expr.terms {
        match fs.as_slice() {
            [f] => by_m.entry(f.m).or_default().push((f.k, c.clone())),
            _ => {
                return Err(GenError::NotCanonicalizable(
                    "only sums of single-factor terms can be canonicalized".into(),
                ))
            }
        }
    }
    let mut out = GeneratorExpr::zero();
    for (m, items) in by_m {
        let ks = k_set(m);
        if ks.len() != m as usize || ks.contains(&0) || (1..ks.len()).any(|i| ks[..i].contains(&ks[i])) {
            return Err(GenError::NotCanonicalizable(format!("k-set {ks:?} must be {m} distinct nonzero integers")));
        }
        let moments: Vec<Rational> = (1..=m)
            .map(|j| items.iter().map(|(k, c)| c * Rational::from_integer(BigInt::from(*k).pow(j))).sum())
            .collect();
        let rows: Vec<Vec<Rational>> =
            (1..=m).map(|j| ks.iter().map(|&k| Rational::from_integer(BigInt::from(k).pow(j))).collect()).collect();
        let d = solve(rows, moments).ok_or(GenError::PivotZero)?;
        for (k, c) in ks.into_iter().zip(d) {
            out.add_term(vec![Factor { k, m }], c);
        }
    }
    Ok(out)
}

/// [`canonicalize_with`] onto [`default_k_set`].
pub fn canonicalize(expr: &GeneratorExpr) -> Result<GeneratorExpr, GenError> {
    canonicalize_with(expr, default_k_set)
}

/// Exact Gaussian elimination; `None` when singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// `σ_i(Ω_k)`: the i-th elementary symmetric function of the curvature of
/// the k-th associated bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementarySymbol {
    pub k: i64,
    pub i: usize,
}

impl fmt::Display for ElementarySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{}(Ω_{})", self.i, self.k)
    }
}

/// Replaces each `Φ^k(ι(p_m))` by `p_m(Ω_k)` written through Newton's
/// identities in `σ_1(Ω_k)..σ_m(Ω_k)`.
pub fn newton_rewrite(expr: &GeneratorExpr, n: usize) -> Result<FormalPoly<ElementarySymbol>, GenError> {
    let mut out = FormalPoly::zero();
    for (fs, c) in &expr.terms {
        let mut prod = FormalPoly::constant(c.clone());
        for f in fs {
            let pm = power_sum_in_elementary(f.m as usize, n)?;
            let pm: FormalPoly<ElementarySymbol> =
                pm.substitute(|&i| Ok::<_, GenError>(FormalPoly::symbol(ElementarySymbol { k: f.k, i })))?;
            prod = prod.mul(&pm);
        }
        out = out.add(&prod);
    }
    Ok(out)
}

//! Weyl groups of `U(n)`, `SU(n)` (the symmetric group) and `Sp(n)` (the
//! hyperoctahedral group `Z_2^n ⋊ S_n`), their diagonal action on
//! polynomials, and the symmetrization operator.
//!
//! An element `g = (a, σ)` acts by `x_i ↦ a_i x_{σ(i)}` and identically on
//! the `y` family. The `z` family is only permuted; signs never touch it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{Family, Polynomial, Rational};

/// Largest rank enumerated by default for `Sp(n)` (768 elements).
pub const DEFAULT_SP_CAP: usize = 4;
/// Largest rank enumerated by default for `U(n)` and `SU(n)` (720 elements).
pub const DEFAULT_UNITARY_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("rank mismatch: group has rank {group} but polynomial has rank {poly}")]
    RankMismatch { group: usize, poly: usize },
    #[error("rank {rank} exceeds the enumeration cap {cap}")]
    RankAboveCap { rank: usize, cap: usize },
    #[error("multi-indices have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("rank must be positive")]
    ZeroRank,
    #[error("invalid Weyl element: {0}")]
    InvalidElement(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    U,
    SU,
    Sp,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::U => "U",
            GroupKind::SU => "SU",
            GroupKind::Sp => "Sp",
        }
    }

    pub fn parse(s: &str) -> Option<GroupKind> {
        match s {
            "U" => Some(GroupKind::U),
            "SU" => Some(GroupKind::SU),
            "Sp" => Some(GroupKind::Sp),
            _ => None,
        }
    }

    pub fn has_signs(self) -> bool {
        self == GroupKind::Sp
    }

    pub fn default_cap(self) -> usize {
        if self.has_signs() {
            DEFAULT_SP_CAP
        } else {
            DEFAULT_UNITARY_CAP
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub rank: usize,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, rank: usize) -> Self {
        GroupSpec { kind, rank }
    }

    pub fn unitary(rank: usize) -> Self {
        Self::new(GroupKind::U, rank)
    }

    pub fn special_unitary(rank: usize) -> Self {
        Self::new(GroupKind::SU, rank)
    }

    pub fn symplectic(rank: usize) -> Self {
        Self::new(GroupKind::Sp, rank)
    }

    /// `n!` for the unitary groups, `2^n n!` for `Sp(n)`.
    pub fn weyl_order(&self) -> BigInt {
        let fact: BigInt = (1..=self.rank).map(BigInt::from).product();
        if self.kind.has_signs() {
            fact << self.rank
        } else {
            fact
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.rank)
    }
}

/// `g = (a, σ)`: a permutation of the indices and a sign per index.
/// `perm[i]` is `σ(i)` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { perm: (0..rank).collect(), signs: vec![1; rank] }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self, WeylError> {
        let n = perm.len();
        if signs.len() != n {
            return Err(WeylError::InvalidElement(format!("{} signs for {} indices", signs.len(), n)));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(WeylError::InvalidElement(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(WeylError::InvalidElement(format!("signs {signs:?} must be ±1")));
        }
        Ok(WeylElement { perm, signs })
    }

    pub fn transposition(rank: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(rank);
        g.perm.swap(i, j);
        g
    }

    pub fn sign_flip(rank: usize, i: usize) -> Self {
        let mut g = Self::identity(rank);
        g.signs[i] = -1;
        g
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The product `self * other`, defined so that
    /// `act(g * h, p) = act(g, act(h, p))`.
    ///
    /// With `g = (a, σ)` and `h = (b, τ)` this is `(b · τ(a), σ∘τ)` where
    /// `τ(a)_i = a_{τ(i)}`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank(), other.rank(), "Weyl element rank mismatch");
        let perm = other.perm.iter().map(|&t| self.perm[t]).collect();
        let signs = other.signs.iter().zip(&other.perm).map(|(&b, &t)| b * self.signs[t]).collect();
        WeylElement { perm, signs }
    }
}

#[derive(Serialize, Deserialize)]
struct WeylElementJson {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WeylElementJson { perm: self.perm.iter().map(|p| p + 1).collect(), signs: self.signs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = WeylElementJson::deserialize(d)?;
        if raw.perm.contains(&0) {
            return Err(serde::de::Error::custom("permutation images are 1-indexed"));
        }
        WeylElement::new(raw.perm.iter().map(|p| p - 1).collect(), raw.signs).map_err(serde::de::Error::custom)
    }
}

/// All elements of the Weyl group, identity first, capped at the default
/// rank for the group kind.
pub fn enumerate_group(spec: &GroupSpec) -> Result<Vec<WeylElement>, WeylError> {
    enumerate_group_with_cap(spec, spec.kind.default_cap())
}

pub fn enumerate_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<Vec<WeylElement>, WeylError> {
    let n = spec.rank;
    if n == 0 {
        return Err(WeylError::ZeroRank);
    }
    if n > cap {
        return Err(WeylError::RankAboveCap { rank: n, cap });
    }
    let perms = permutations(n);
    let sign_patterns: Vec<Vec<i8>> = if spec.kind.has_signs() {
        (0..1u32 << n).map(|bits| (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
    } else {
        vec![vec![1; n]]
    };
    let mut out = Vec::with_capacity(perms.len() * sign_patterns.len());
    for perm in &perms {
        for signs in &sign_patterns {
            out.push(WeylElement { perm: perm.clone(), signs: signs.clone() });
        }
    }
    Ok(out)
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `g · f`.
pub fn act(g: &WeylElement, p: &Polynomial) -> Result<Polynomial, WeylError> {
    let n = g.rank();
    if p.rank() != n {
        return Err(WeylError::RankMismatch { group: n, poly: p.rank() });
    }
    Ok(p.map_monomials(|m| {
        let mut out = m.clone();
        let mut negative = false;
        for family in Family::ALL {
            let src = m.family(family);
            let dst = out.family_mut(family);
            for i in 0..n {
                dst[g.perm[i]] = src[i];
            }
        }
        let (xs, ys) = (m.family(Family::X), m.family(Family::Y));
        for i in 0..n {
            if g.signs[i] < 0 && (xs[i] + ys[i]) % 2 == 1 {
                negative = !negative;
            }
        }
        let sign = if negative { -Rational::one() } else { Rational::one() };
        (sign, out)
    }))
}

/// `μ(f) = (1/|W|) Σ_g g·f`. Summation runs in enumeration order.
pub fn symmetrize(p: &Polynomial, spec: &GroupSpec) -> Result<Polynomial, WeylError> {
    if p.rank() != spec.rank {
        return Err(WeylError::RankMismatch { group: spec.rank, poly: p.rank() });
    }
    let group = enumerate_group(spec)?;
    let mut acc = Polynomial::zero(spec.rank);
    for g in &group {
        acc = &acc + &act(g, p)?;
    }
    Ok(acc.scale(&Rational::new(BigInt::one(), spec.weyl_order())))
}

pub fn is_invariant(p: &Polynomial, spec: &GroupSpec) -> Result<bool, WeylError> {
    if p.rank() != spec.rank {
        return Err(WeylError::RankMismatch { group: spec.rank, poly: p.rank() });
    }
    for g in enumerate_group(spec)? {
        if act(&g, p)? != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// A pair of multi-indices is odd when some `i_k + j_k` is odd.
pub fn parity(i: &[u32], j: &[u32]) -> Result<Parity, WeylError> {
    if i.len() != j.len() {
        return Err(WeylError::LengthMismatch(i.len(), j.len()));
    }
    if i.iter().zip(j).any(|(a, b)| (a + b) % 2 == 1) {
        Ok(Parity::Odd)
    } else {
        Ok(Parity::Even)
    }
}

//! Equality modulo the coinvariant ideals of `U(n)`, `SU(n)` and `Sp(n)`,
//! realized by reduced Gröbner bases and normal forms.

mod cache;
mod groebner;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::polyring::{elementary_symmetric, elementary_symmetric_in_powers, power_sum, Family, MonomialOrder, Polynomial};
use crate::weyl::{GroupKind, GroupSpec};

pub use cache::{load_cached_basis, store_cached_basis, CachedBasis};
pub use groebner::{groebner, is_reduced, reduce, satisfies_buchberger};

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("an ideal needs at least one generator")]
    EmptyGenerators,
    #[error("rank mismatch: ideal has rank {ideal} but polynomial has rank {poly}")]
    RankMismatch { ideal: usize, poly: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("basis cache: {0}")]
    Cache(String),
    #[error("basis cache I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("basis cache JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// An ideal together with its reduced Gröbner basis under the block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    group: Option<GroupSpec>,
    rank: usize,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
}

impl IdealSpec {
    /// Computes the basis for a caller-supplied generator list.
    pub fn new(group: Option<GroupSpec>, generators: Vec<Polynomial>) -> Result<Self, QuotientError> {
        let rank = check_generators(&generators)?;
        let basis = groebner(&generators);
        Ok(IdealSpec { group, rank, generators, basis })
    }

    /// Accepts a precomputed basis after checking it is a reduced Gröbner
    /// basis in which every generator reduces to zero.
    pub fn with_basis(
        group: Option<GroupSpec>,
        generators: Vec<Polynomial>,
        basis: Vec<Polynomial>,
    ) -> Result<Self, QuotientError> {
        let rank = check_generators(&generators)?;
        if let Some(p) = basis.iter().find(|p| p.rank() != rank) {
            return Err(QuotientError::RankMismatch { ideal: rank, poly: p.rank() });
        }
        let spec = IdealSpec { group, rank, generators, basis };
        if !spec.verify_basis() {
            return Err(QuotientError::Cache("basis fails verification".into()));
        }
        Ok(spec)
    }

    pub fn group(&self) -> Option<GroupSpec> {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::BlockGrevlexXyz
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Buchberger criterion, reducedness, and generator membership.
    pub fn verify_basis(&self) -> bool {
        !self.basis.is_empty()
            && satisfies_buchberger(&self.basis)
            && is_reduced(&self.basis)
            && self.generators.iter().all(|g| reduce(g, &self.basis).is_zero())
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, QuotientError> {
        if p.rank() != self.rank {
            return Err(QuotientError::RankMismatch { ideal: self.rank, poly: p.rank() });
        }
        Ok(reduce(p, &self.basis))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, QuotientError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn equal_mod(&self, p: &Polynomial, q: &Polynomial) -> Result<bool, QuotientError> {
        if q.rank() != self.rank {
            return Err(QuotientError::RankMismatch { ideal: self.rank, poly: q.rank() });
        }
        self.contains(&(p - q))
    }
}

fn check_generators(generators: &[Polynomial]) -> Result<usize, QuotientError> {
    let first = generators.first().ok_or(QuotientError::EmptyGenerators)?;
    let rank = first.rank();
    if rank == 0 {
        return Err(QuotientError::ZeroRank);
    }
    if let Some(p) = generators.iter().find(|p| p.rank() != rank) {
        return Err(QuotientError::RankMismatch { ideal: rank, poly: p.rank() });
    }
    Ok(rank)
}

pub fn normal_form(p: &Polynomial, ideal: &IdealSpec) -> Result<Polynomial, QuotientError> {
    ideal.normal_form(p)
}

pub fn equal_mod_ideal(p: &Polynomial, q: &Polynomial, ideal: &IdealSpec) -> Result<bool, QuotientError> {
    ideal.equal_mod(p, q)
}

/// The generators of the ideal for a group:
/// `e_1(x)..e_n(x)` for `U(n)`, `p_1(x)..p_n(x)` and `p_1(y)` for `SU(n)`,
/// and `e_i(x_1^2..x_n^2)` for `Sp(n)`.
pub fn group_generators(spec: &GroupSpec) -> Result<Vec<Polynomial>, QuotientError> {
    let n = spec.rank;
    if n == 0 {
        return Err(QuotientError::ZeroRank);
    }
    let gens = match spec.kind {
        GroupKind::U => (1..=n).map(|i| elementary_symmetric(i, n, Family::X)).collect::<Result<Vec<_>, _>>(),
        GroupKind::SU => (1..=n as u32)
            .map(|i| power_sum(i, n, Family::X))
            .chain(std::iter::once(power_sum(1, n, Family::Y)))
            .collect(),
        GroupKind::Sp => (1..=n).map(|i| elementary_symmetric_in_powers(i, n, Family::X, 2)).collect(),
    };
    Ok(gens.expect("generator indices are in range"))
}

fn memo() -> &'static Mutex<HashMap<GroupSpec, Arc<IdealSpec>>> {
    static MEMO: OnceLock<Mutex<HashMap<GroupSpec, Arc<IdealSpec>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The ideal for a group, computed once per process.
pub fn ideal_for_group(spec: &GroupSpec) -> Result<Arc<IdealSpec>, QuotientError> {
    if let Some(hit) = memo().lock().expect("ideal memo poisoned").get(spec) {
        return Ok(hit.clone());
    }
    let ideal = Arc::new(IdealSpec::new(Some(*spec), group_generators(spec)?)?);
    memo().lock().expect("ideal memo poisoned").insert(*spec, ideal.clone());
    Ok(ideal)
}

/// Like [`ideal_for_group`], but reads and writes a JSON basis file in
/// `dir`. A loaded basis is re-verified and then shared with later
/// [`ideal_for_group`] calls; a stale or corrupt file is recomputed and
/// overwritten.
pub fn ideal_for_group_cached(spec: &GroupSpec, dir: &std::path::Path) -> Result<Arc<IdealSpec>, QuotientError> {
    let generators = group_generators(spec)?;
    if let Ok(Some(basis)) = load_cached_basis(dir, spec) {
        if let Ok(ideal) = IdealSpec::with_basis(Some(*spec), generators.clone(), basis) {
            let ideal = Arc::new(ideal);
            memo().lock().expect("ideal memo poisoned").entry(*spec).or_insert_with(|| ideal.clone());
            return Ok(ideal);
        }
    }
    let ideal = ideal_for_group(spec)?;
    store_cached_basis(dir, spec, ideal.basis())?;
    Ok(ideal)
}

//! On-disk JSON cache of group bases, one file per group and rank.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::QuotientError;
use crate::polyring::{MonomialOrder, Polynomial};
use crate::weyl::{GroupKind, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedBasis {
    pub group: GroupKind,
    pub rank: usize,
    pub order: String,
    pub basis: Vec<Polynomial>,
}

fn cache_path(dir: &Path, spec: &GroupSpec) -> PathBuf {
    dir.join(format!("basis-{}-{}.json", spec.kind, spec.rank))
}

/// Reads the cached basis for `spec`, if present and labelled consistently.
/// The caller is responsible for verifying it.
pub fn load_cached_basis(dir: &Path, spec: &GroupSpec) -> Result<Option<Vec<Polynomial>>, QuotientError> {
    let path = cache_path(dir, spec);
    if !path.exists() {
        return Ok(None);
    }
    let cached: CachedBasis = serde_json::from_str(&fs::read_to_string(path)?)?;
    if cached.group != spec.kind
        || cached.rank != spec.rank
        || cached.order != MonomialOrder::BlockGrevlexXyz.name()
        || cached.basis.iter().any(|p| p.rank() != spec.rank)
    {
        return Err(QuotientError::Cache(format!("cache entry does not match {spec}")));
    }
    Ok(Some(cached.basis))
}

pub fn store_cached_basis(dir: &Path, spec: &GroupSpec, basis: &[Polynomial]) -> Result<(), QuotientError> {
    fs::create_dir_all(dir)?;
    let entry = CachedBasis {
        group: spec.kind,
        rank: spec.rank,
        order: MonomialOrder::BlockGrevlexXyz.name().to_string(),
        basis: basis.to_vec(),
    };
    fs::write(cache_path(dir, spec), serde_json::to_string_pretty(&entry)?)?;
    Ok(())
}

//! Exhaustive enumeration of the groups of a small order, one canonical
//! Cayley table per isomorphism class.
//!
//! This is the ground truth the classification checks run against. Nothing
//! here consults an external group library: class counts come out of the
//! search and are only ever asserted as regression values.

mod canon;
mod catalog;
mod search;

use std::collections::HashMap;

use thiserror::Error;

pub use canon::CanonicalForm;
pub use catalog::{Catalog, CatalogClass, SpectrumEntry};

use crate::group::{build_group, family_groups_of_order, CayleyTable, Group, GroupError, GroupSpec};

pub const DEFAULT_BOUND: usize = 12;
pub const HARD_CAP: usize = 16;
/// Bumped whenever generation or canonical labeling changes, which
/// invalidates persisted catalogs.
pub const GENERATOR_VERSION: &str = "orderly-blocks-1";

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("order {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("enumeration bound {bound} exceeds the hard cap {HARD_CAP}")]
    AboveHardCap { bound: usize },
    #[error("there is no group of order 0")]
    ZeroOrder,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("catalog {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("catalog {path}: {source}")]
    Json { path: String, source: serde_json::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    bound: usize,
}

impl EnumerationConfig {
    pub fn new(bound: usize) -> Result<Self, EnumError> {
        if bound > HARD_CAP {
            return Err(EnumError::AboveHardCap { bound });
        }
        Ok(EnumerationConfig { bound })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn check(&self, n: usize) -> Result<(), EnumError> {
        if n == 0 {
            return Err(EnumError::ZeroOrder);
        }
        if n > self.bound {
            return Err(EnumError::BoundExceeded { n, bound: self.bound });
        }
        Ok(())
    }
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { bound: DEFAULT_BOUND }
    }
}

/// Every group of order `n` up to isomorphism, under the default bound.
pub fn all_groups(n: usize) -> Result<Vec<CayleyTable>, EnumError> {
    all_groups_with(n, &EnumerationConfig::default())
}

pub fn all_groups_with(n: usize, config: &EnumerationConfig) -> Result<Vec<CayleyTable>, EnumError> {
    config.check(n)?;
    if n > DEFAULT_BOUND {
        log::warn!(
            "enumerating groups of order {n} (above the default bound {DEFAULT_BOUND}); this can take a long time"
        );
    }
    Ok(search::orderly_generate(n))
}

/// Canonical form of an arbitrary group table; validates the table first.
pub fn canonical_form(table: &CayleyTable) -> Result<CanonicalForm, EnumError> {
    let group = Group::from_table(table.clone())?;
    Ok(canon::canonical_form_of(&group))
}

pub fn canonical_form_of(group: &Group) -> CanonicalForm {
    canon::canonical_form_of(group)
}

pub fn psi_spectrum(n: usize) -> Result<Vec<SpectrumEntry>, EnumError> {
    Ok(Catalog::generate(n, &EnumerationConfig::default())?.spectrum())
}

/// Canonical forms of the family constructions of order `n`, each mapped to
/// the first spec (in family order) that produces it.
pub fn family_index(n: usize) -> Result<HashMap<CanonicalForm, GroupSpec>, EnumError> {
    let mut index = HashMap::new();
    for spec in family_groups_of_order(n as u64) {
        let group = build_group(&spec)?;
        index.entry(canon::canonical_form_of(&group)).or_insert(spec);
    }
    Ok(index)
}

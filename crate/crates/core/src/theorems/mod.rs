//! Executable checks of the classification theorems for ψ.
//!
//! Every claim produces a [`VerificationReport`]: a list of exact rational
//! comparisons, each tagged with how much of the claim's domain it covers.
//! Orders within the enumeration bound are checked against every
//! isomorphism class; larger orders only against the construction families,
//! and the report says so.

mod audit;
mod extremal;
mod lemmas;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::ArithError;
use crate::enumeration::{Catalog, EnumError, EnumerationConfig};
use crate::group::GroupError;

pub use audit::proof_inequality_audit;
pub use extremal::{
    classify_equality, f_monotone_check, mqr_formula_check, verify_max_cyclic, verify_upper_bound,
    EqualityClassification,
};
pub use lemmas::lemma7_check;
pub use report::{Check, EqualityWitness, Expect, Relation, Scope, Verdict, VerificationReport};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the upper bound only concerns non-cyclic groups")]
    CyclicGroup,
    #[error("{q} is not the least prime divisor of {n}")]
    NotLeastPrime { q: u64, n: u64 },
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Identifier of a checkable statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaimId {
    /// The cyclic group uniquely maximizes ψ.
    Aai,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Prop6,
    Prop7,
    /// Items 1 to 7 of the preliminary lemma.
    Lemma(u8),
    Prop6Audit,
    FMonotone,
    Mqr,
}

impl ClaimId {
    pub fn all() -> Vec<ClaimId> {
        let mut out = vec![
            ClaimId::Aai,
            ClaimId::Thm1,
            ClaimId::Thm2,
            ClaimId::Thm3,
            ClaimId::Thm4,
            ClaimId::Thm5,
            ClaimId::Prop6,
            ClaimId::Prop7,
        ];
        out.extend((1..=7).map(ClaimId::Lemma));
        out.extend([ClaimId::Prop6Audit, ClaimId::FMonotone, ClaimId::Mqr]);
        out
    }

    fn needs_catalogs(self) -> bool {
        matches!(
            self,
            ClaimId::Aai
                | ClaimId::Thm1
                | ClaimId::Thm2
                | ClaimId::Thm3
                | ClaimId::Thm4
                | ClaimId::Thm5
                | ClaimId::Prop6
                | ClaimId::Prop7
                | ClaimId::Lemma(2)
                | ClaimId::Lemma(7)
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimId::Aai => f.write_str("AAI"),
            ClaimId::Thm1 => f.write_str("Thm1"),
            ClaimId::Thm2 => f.write_str("Thm2"),
            ClaimId::Thm3 => f.write_str("Thm3"),
            ClaimId::Thm4 => f.write_str("Thm4"),
            ClaimId::Thm5 => f.write_str("Thm5"),
            ClaimId::Prop6 => f.write_str("Prop6"),
            ClaimId::Prop7 => f.write_str("Prop7"),
            ClaimId::Lemma(i) => write!(f, "Lem2.1({i})"),
            ClaimId::Prop6Audit => f.write_str("Prop6-audit"),
            ClaimId::FMonotone => f.write_str("f-monotone"),
            ClaimId::Mqr => f.write_str("Mqr"),
        }
    }
}

impl FromStr for ClaimId {
    type Err = TheoremError;

    /// Case-insensitive match against the display form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase();
        ClaimId::all()
            .into_iter()
            .find(|c| c.to_string().to_ascii_lowercase() == wanted)
            .ok_or_else(|| TheoremError::UnknownClaim(s.to_string()))
    }
}

/// Ranges the suites sweep over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    /// Restricts the `q`-specific suites; `None` means every least prime
    /// for the catalog and family sweeps and `{2, 3, 5}` for the witness
    /// families.
    pub primes: Option<Vec<u64>>,
    /// Largest cofactor `k` in the `(C_q × C_q) × C_k` families; `None`
    /// picks 99 for the `q = 2` theorems and 60 otherwise.
    pub kmax: Option<u64>,
    /// Orders above the enumeration bound up to this value are checked
    /// against the construction families.
    pub family_max: u64,
    /// Bound on `m·k` for the semidirect product suites.
    pub mk_max: u64,
    /// Bound on `n` for the cyclic closed-form suites.
    pub cyclic_max: u64,
    /// Bound on `n` for the cyclic lower bound.
    pub lower_bound_max: u64,
    pub q_max: u64,
    pub p_max: u64,
    pub s_max: u32,
    pub mqr: Vec<(u64, u32)>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            primes: None,
            kmax: None,
            family_max: 64,
            mk_max: 200,
            cyclic_max: 300,
            lower_bound_max: 5000,
            q_max: 97,
            p_max: 199,
            s_max: 6,
            mqr: vec![(2, 4), (2, 5), (3, 3), (3, 4), (5, 3)],
        }
    }
}

impl SuiteParams {
    pub(crate) fn witness_primes(&self) -> Vec<u64> {
        self.primes.clone().unwrap_or_else(|| vec![2, 3, 5])
    }

    pub(crate) fn admits(&self, q: u64) -> bool {
        self.primes.as_ref().is_none_or(|ps| ps.contains(&q))
    }
}

/// Runs claims against one enumeration bound and one catalog cache.
pub struct Verifier {
    config: EnumerationConfig,
    cache_dir: Option<PathBuf>,
    params: SuiteParams,
    catalogs: RwLock<BTreeMap<usize, Arc<Catalog>>>,
}

impl Verifier {
    pub fn new(config: EnumerationConfig, cache_dir: Option<PathBuf>, params: SuiteParams) -> Self {
        Verifier { config, cache_dir, params, catalogs: RwLock::new(BTreeMap::new()) }
    }

    pub fn config(&self) -> &EnumerationConfig {
        &self.config
    }

    pub fn params(&self) -> &SuiteParams {
        &self.params
    }

    pub fn bound(&self) -> usize {
        self.config.bound()
    }

    /// The catalog of order `n`, loaded once per verifier.
    pub fn catalog(&self, n: usize) -> Result<Arc<Catalog>, TheoremError> {
        if let Some(cat) = self.catalogs.read().expect("catalog lock").get(&n) {
            return Ok(Arc::clone(cat));
        }
        // Generate outside the lock: enumeration is itself parallel.
        let cat = Arc::new(Catalog::load_or_generate(n, &self.config, self.cache_dir.as_deref())?);
        let mut map = self.catalogs.write().expect("catalog lock");
        Ok(Arc::clone(map.entry(n).or_insert(cat)))
    }

    fn warm(&self, claims: &[ClaimId]) -> Result<(), TheoremError> {
        if claims.iter().any(|c| c.needs_catalogs()) {
            for n in 1..=self.bound() {
                self.catalog(n)?;
            }
        }
        Ok(())
    }

    pub fn verify(&self, claim: ClaimId) -> Result<VerificationReport, TheoremError> {
        self.warm(&[claim])?;
        self.run(claim)
    }

    /// Runs the claims in parallel; reports come back sorted by claim id.
    pub fn verify_all(&self, claims: &[ClaimId]) -> Result<Vec<VerificationReport>, TheoremError> {
        let mut claims = claims.to_vec();
        claims.sort();
        claims.dedup();
        self.warm(&claims)?;
        claims.par_iter().map(|&c| self.run(c)).collect()
    }

    fn run(&self, claim: ClaimId) -> Result<VerificationReport, TheoremError> {
        log::debug!("verifying {claim}");
        match claim {
            ClaimId::Aai => extremal::aai_suite(self),
            ClaimId::Thm1 => extremal::second_maximal_suite(self, claim, false),
            ClaimId::Thm2 | ClaimId::Thm3 => extremal::second_maximal_suite(self, claim, true),
            ClaimId::Prop6 => extremal::q_star_suite(self, claim, false),
            ClaimId::Thm4 | ClaimId::Thm5 | ClaimId::Prop7 => extremal::q_star_suite(self, claim, true),
            ClaimId::Lemma(i) => lemmas::lemma_suite(self, i),
            ClaimId::Prop6Audit => {
                let p = &self.params;
                Ok(proof_inequality_audit(p.q_max, p.p_max, p.s_max))
            }
            ClaimId::FMonotone => Ok(f_monotone_check(self.params.q_max)),
            ClaimId::Mqr => extremal::mqr_suite(self),
        }
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::ClaimId;
use crate::arith::Rational;
use crate::group::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Equality,
    Fails,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Equality => "equality",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

/// What a check is supposed to show. Audits of inequalities that are known
/// to be false (a proof remarks that a bound breaks for small `q`) expect
/// [`Expect::Fails`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Holds,
    Fails,
}

/// How much of the claim's domain a check covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Every isomorphism class of the given order.
    Exhaustive,
    /// Only groups reachable from the construction families.
    FamilyRestricted,
    /// Pure arithmetic; no group is involved.
    Arithmetic,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Exhaustive => "exhaustive",
            Scope::FamilyRestricted => "family-restricted",
            Scope::Arithmetic => "arithmetic",
        })
    }
}

/// One exact comparison `lhs relation rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub params: BTreeMap<String, String>,
    pub scope: Scope,
    pub relation: Relation,
    /// `None` only when the check is not applicable.
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub expect: Expect,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(
        label: impl Into<String>,
        scope: Scope,
        lhs: impl Into<Rational>,
        relation: Relation,
        rhs: impl Into<Rational>,
    ) -> Check {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let verdict = Check::judge(&lhs, relation, &rhs);
        Check {
            label: label.into(),
            params: BTreeMap::new(),
            scope,
            relation,
            lhs: Some(lhs),
            rhs: Some(rhs),
            expect: Expect::Holds,
            verdict,
            witness: None,
        }
    }

    pub fn not_applicable(label: impl Into<String>, scope: Scope, reason: impl Into<String>) -> Check {
        let mut params = BTreeMap::new();
        params.insert("reason".to_string(), reason.into());
        Check {
            label: label.into(),
            params,
            scope,
            relation: Relation::Eq,
            lhs: None,
            rhs: None,
            expect: Expect::Holds,
            verdict: Verdict::NotApplicable,
            witness: None,
        }
    }

    fn judge(lhs: &Rational, relation: Relation, rhs: &Rational) -> Verdict {
        if !relation.holds(lhs, rhs) {
            Verdict::Fails
        } else if lhs == rhs {
            Verdict::Equality
        } else {
            Verdict::Holds
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Check {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn witness(mut self, witness: impl fmt::Display) -> Check {
        self.witness = Some(witness.to_string());
        self
    }

    pub fn expecting(mut self, expect: Expect) -> Check {
        self.expect = expect;
        self
    }

    /// The verdict re-derived from the recorded values.
    pub fn recomputed_verdict(&self) -> Verdict {
        match (&self.lhs, &self.rhs) {
            (Some(l), Some(r)) => Check::judge(l, self.relation, r),
            _ => Verdict::NotApplicable,
        }
    }

    pub fn passed(&self) -> bool {
        match self.verdict {
            Verdict::NotApplicable => true,
            Verdict::Fails => self.expect == Expect::Fails,
            Verdict::Holds | Verdict::Equality => self.expect == Expect::Holds,
        }
    }

    /// `"k=3;q=2"`.
    pub fn params_string(&self) -> String {
        join_params(&self.params)
    }
}

pub(crate) fn join_params(params: &BTreeMap<String, String>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// `n = q²k` with every prime factor of `k` above `q`, realized by
/// `(C_q × C_q) × C_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityWitness {
    pub n: u64,
    pub q: u64,
    pub k: u64,
    #[serde(serialize_with = "as_display")]
    pub spec: GroupSpec,
}

impl EqualityWitness {
    pub fn new(q: u64, k: u64) -> EqualityWitness {
        EqualityWitness { n: q * q * k, q, k, spec: GroupSpec::elementary_times_cyclic(q, k) }
    }
}

fn as_display<T: fmt::Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "as_display")]
    pub claim_id: ClaimId,
    pub params: BTreeMap<String, String>,
    pub scope: Vec<Scope>,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(claim_id: ClaimId, params: BTreeMap<String, String>, checks: Vec<Check>) -> Self {
        let mut scope: Vec<Scope> = checks.iter().map(|c| c.scope).collect();
        scope.sort();
        scope.dedup();
        let mut seen = BTreeSet::new();
        let witnesses: Vec<String> = checks
            .iter()
            .filter(|c| c.verdict == Verdict::Equality && c.expect == Expect::Holds)
            .filter_map(|c| c.witness.clone())
            .filter(|w| seen.insert(w.clone()))
            .collect();
        let verdict = if checks.iter().any(|c| !c.passed()) {
            Verdict::Fails
        } else if checks.iter().all(|c| c.verdict == Verdict::NotApplicable) {
            Verdict::NotApplicable
        } else if checks.iter().filter(|c| c.verdict != Verdict::NotApplicable).all(|c| c.verdict == Verdict::Equality)
        {
            Verdict::Equality
        } else {
            Verdict::Holds
        };
        VerificationReport { claim_id, params, scope, verdict, witnesses, checks }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fails
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn params_string(&self) -> String {
        join_params(&self.params)
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{Check, ClaimId, EqualityWitness, Relation, Scope, TheoremError, Verdict, VerificationReport, Verifier};
use crate::arith::{f_ratio, factorize, is_prime, psi_cyclic, Rational};
use crate::enumeration::Catalog;
use crate::group::{build_group, family_groups_of_order, is_witness_cofactor, Group, GroupSpec};

type Result<T> = std::result::Result<T, TheoremError>;

pub(crate) fn least_prime(n: u64) -> Option<u64> {
    factorize(n).ok()?.least_prime()
}

fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// A non-cyclic group to be compared with `ratio · ψ(C_n)`.
struct Candidate {
    name: String,
    psi: u128,
    /// Whether this is the group the classification says attains equality.
    expected: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// `ψ(G) ≤ ratio · ψ(C_n)` for every candidate.
    Bound,
    /// Equality for the expected witness, strict inequality for the rest.
    Classify,
}

fn expected_witness(n: u64, q: u64) -> Option<EqualityWitness> {
    if !n.is_multiple_of(q * q) {
        return None;
    }
    let k = n / (q * q);
    is_witness_cofactor(q, k).then(|| EqualityWitness::new(q, k))
}

fn catalog_candidates(cat: &Catalog, expected: Option<&EqualityWitness>) -> Result<(Vec<Candidate>, Vec<Check>)> {
    let mut missing = Vec::new();
    let expected_index = match expected {
        Some(w) => {
            let index = cat.classify(&build_group(&w.spec)?);
            if index.is_none() {
                missing.push(
                    Check::new("witness class present in catalog", Scope::Exhaustive, 0u64, Relation::Eq, 1u64)
                        .param("n", cat.order)
                        .witness(&w.spec),
                );
            }
            index
        }
        None => None,
    };
    let candidates = cat
        .classes
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.cyclic)
        .map(|(i, c)| {
            let expected_here = Some(i) == expected_index;
            let name = match expected {
                Some(w) if expected_here => w.spec.to_string(),
                _ => c.name.clone(),
            };
            Candidate { name, psi: c.psi, expected: expected_here }
        })
        .collect();
    Ok((candidates, missing))
}

fn family_candidates(n: u64, expected: Option<&EqualityWitness>) -> Result<Vec<Candidate>> {
    let invariants = match expected {
        Some(w) => Some(build_group(&w.spec)?.abelian_invariants()?),
        None => None,
    };
    family_groups_of_order(n)
        .into_par_iter()
        .map(|spec| -> Result<Option<Candidate>> {
            let group = build_group(&spec)?;
            if group.is_cyclic() {
                return Ok(None);
            }
            let expected = match &invariants {
                Some(inv) if group.is_abelian() => group.abelian_invariants()? == *inv,
                _ => false,
            };
            Ok(Some(Candidate { name: spec.to_string(), psi: group.psi(), expected }))
        })
        .filter_map(|r| r.transpose())
        .collect()
}

fn ratio_checks(
    candidates: &[Candidate],
    n: u64,
    ratio: &Rational,
    ratio_name: &str,
    mode: Mode,
    scope: Scope,
) -> Result<Vec<Check>> {
    let rhs = ratio * &Rational::from(psi_cyclic(n)?);
    Ok(candidates
        .iter()
        .map(|c| {
            let relation = match mode {
                Mode::Bound => Relation::Le,
                Mode::Classify if c.expected => Relation::Eq,
                Mode::Classify => Relation::Lt,
            };
            Check::new(format!("psi(G) vs {ratio_name}*psi(C_n)"), scope, c.psi, relation, rhs.clone())
                .param("n", n)
                .witness(&c.name)
        })
        .collect())
}

/// Comparisons for one order: against the catalog when `n` is within the
/// bound, otherwise against the construction families.
fn order_checks(v: &Verifier, n: u64, q: u64, ratio: &Rational, ratio_name: &str, mode: Mode) -> Result<Vec<Check>> {
    let expected = match mode {
        Mode::Classify => expected_witness(n, q),
        Mode::Bound => None,
    };
    let (candidates, mut checks, scope) = if n as usize <= v.bound() {
        let cat = v.catalog(n as usize)?;
        let (c, missing) = catalog_candidates(&cat, expected.as_ref())?;
        (c, missing, Scope::Exhaustive)
    } else {
        (family_candidates(n, expected.as_ref())?, Vec::new(), Scope::FamilyRestricted)
    };
    let reached = candidates.iter().any(|c| c.expected);
    if expected.is_some() && !reached && scope == Scope::FamilyRestricted {
        checks.push(Check::new("witness reached by families", scope, 0u64, Relation::Eq, 1u64).param("n", n));
    }
    checks.extend(ratio_checks(&candidates, n, ratio, ratio_name, mode, scope)?);
    Ok(checks)
}

/// `ψ(G) < ψ(C_n)` for every non-cyclic class of order `n`.
pub fn verify_max_cyclic(v: &Verifier, n: usize) -> Result<VerificationReport> {
    Ok(VerificationReport::new(ClaimId::Aai, params([("n", n.to_string())]), max_cyclic_checks(v, n)?))
}

fn max_cyclic_checks(v: &Verifier, n: usize) -> Result<Vec<Check>> {
    let cat = v.catalog(n)?;
    let psi_cn = psi_cyclic(n as u64)?;
    let cyclic: Vec<_> = cat.classes.iter().filter(|c| c.cyclic).collect();
    let mut checks =
        vec![Check::new("cyclic classes", Scope::Exhaustive, cyclic.len() as u64, Relation::Eq, 1u64).param("n", n)];
    for c in &cyclic {
        checks.push(
            Check::new("psi(C_n) by brute force vs closed form", Scope::Exhaustive, c.psi, Relation::Eq, psi_cn)
                .param("n", n)
                .witness(&c.name),
        );
    }
    for c in cat.classes.iter().filter(|c| !c.cyclic) {
        checks.push(
            Check::new("psi(G) < psi(C_n)", Scope::Exhaustive, c.psi, Relation::Lt, psi_cn)
                .param("n", n)
                .witness(&c.name),
        );
    }
    Ok(checks)
}

pub(crate) fn aai_suite(v: &Verifier) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    for n in 1..=v.bound() {
        checks.extend(max_cyclic_checks(v, n)?);
    }
    Ok(VerificationReport::new(ClaimId::Aai, params([("bound", v.bound().to_string())]), checks))
}

/// `ψ(G) ≤ f(q)·ψ(C_n)` for a single non-cyclic group whose least prime
/// divisor is `q`.
pub fn verify_upper_bound(group: &Group, q: u64) -> Result<VerificationReport> {
    let n = group.order() as u64;
    if group.is_cyclic() {
        return Err(TheoremError::CyclicGroup);
    }
    if least_prime(n) != Some(q) {
        return Err(TheoremError::NotLeastPrime { q, n });
    }
    let rhs = f_ratio(q)? * Rational::from(psi_cyclic(n)?);
    let check = Check::new("psi(G) vs f(q)*psi(C_n)", Scope::FamilyRestricted, group.psi(), Relation::Le, rhs)
        .param("n", n)
        .param("q", q);
    Ok(VerificationReport::new(ClaimId::Prop6, params([("n", n.to_string()), ("q", q.to_string())]), vec![check]))
}

/// The groups of order `n` attaining `ψ(G) = f(q)·ψ(C_n)`.
#[derive(Clone, Debug)]
pub struct EqualityClassification {
    pub n: u64,
    pub q: u64,
    pub scope: Scope,
    /// Expected witnesses that attain equality.
    pub witnesses: Vec<EqualityWitness>,
    /// Equality for the witness, strict inequality for every other group.
    pub checks: Vec<Check>,
}

impl EqualityClassification {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// Classifies equality in the `q*`-group bound for order `n`. With
/// [`Scope::Exhaustive`] every isomorphism class is examined (so `n` must be
/// within the enumeration bound); with [`Scope::FamilyRestricted`] only the
/// construction families are.
pub fn classify_equality(v: &Verifier, n: u64, q: u64, scope: Scope) -> Result<EqualityClassification> {
    if least_prime(n) != Some(q) {
        return Err(TheoremError::NotLeastPrime { q, n });
    }
    let expected = expected_witness(n, q);
    let ratio = f_ratio(q)?;
    let (candidates, mut checks) = match scope {
        Scope::Exhaustive => {
            v.config().check(n as usize)?;
            let cat = v.catalog(n as usize)?;
            catalog_candidates(&cat, expected.as_ref())?
        }
        Scope::FamilyRestricted => (family_candidates(n, expected.as_ref())?, Vec::new()),
        Scope::Arithmetic => return Err(TheoremError::InvalidParameter("classification needs a group scope".into())),
    };
    checks.extend(ratio_checks(&candidates, n, &ratio, "f(q)", Mode::Classify, scope)?);
    let attained = checks.iter().any(|c| c.relation == Relation::Eq && c.verdict == Verdict::Equality);
    let witnesses = expected.into_iter().filter(|_| attained).collect();
    Ok(EqualityClassification { n, q, scope, witnesses, checks })
}

/// Brute-force `ψ((C_q × C_q) × C_k)` against `f(·)·ψ(C_{q²k})` for
/// `k ≤ kmax`: equality with `f(q)` when every prime factor of `k` exceeds
/// `q`, otherwise strictly below `f(q₀)` where `q₀` is the least prime of
/// `q²k`.
fn witness_family_checks(q: u64, kmax: u64, sharpness: bool) -> Result<Vec<Check>> {
    let ks: Vec<u64> = (1..=kmax).filter(|&k| sharpness || is_witness_cofactor(q, k)).collect();
    ks.into_par_iter()
        .map(|k| {
            let n = q * q * k;
            let spec = GroupSpec::elementary_times_cyclic(q, k);
            let psi = build_group(&spec)?.psi();
            let psi_cn = build_group(&GroupSpec::Cyclic(n))?.psi();
            let check = if is_witness_cofactor(q, k) {
                let rhs = f_ratio(q)? * Rational::from(psi_cn);
                Check::new("psi((C_q x C_q) x C_k) = f(q)*psi(C_n)", Scope::FamilyRestricted, psi, Relation::Eq, rhs)
            } else {
                let q0 = least_prime(n).expect("n > 1");
                let rhs = f_ratio(q0)? * Rational::from(psi_cn);
                Check::new("psi((C_q x C_q) x C_k) < f(q0)*psi(C_n)", Scope::FamilyRestricted, psi, Relation::Lt, rhs)
                    .param("q0", q0)
            };
            Ok(check.param("q", q).param("k", k).param("n", n).witness(spec))
        })
        .collect()
}

/// The `7/11` theorems. Without `classify` only the bound and the witness
/// equalities are checked; with it, equality is also shown to occur nowhere
/// else.
pub(crate) fn second_maximal_suite(v: &Verifier, claim: ClaimId, classify: bool) -> Result<VerificationReport> {
    let p = v.params();
    let kmax = p.kmax.unwrap_or(99);
    let ratio = f_ratio(2)?;
    let mode = if classify { Mode::Classify } else { Mode::Bound };
    let top = p.family_max.max(v.bound() as u64);
    let per_order: Vec<Vec<Check>> =
        (2..=top).into_par_iter().map(|n| order_checks(v, n, 2, &ratio, "7/11", mode)).collect::<Result<_>>()?;
    let mut checks: Vec<Check> = per_order.into_iter().flatten().collect();
    checks.extend(witness_family_checks(2, kmax, classify)?);
    let report_params =
        params([("bound", v.bound().to_string()), ("family_max", top.to_string()), ("kmax", kmax.to_string())]);
    Ok(VerificationReport::new(claim, report_params, checks))
}

/// The `f(q)` bound for `q*`-groups, and with `classify` its equality case.
pub(crate) fn q_star_suite(v: &Verifier, claim: ClaimId, classify: bool) -> Result<VerificationReport> {
    let p = v.params();
    let kmax = p.kmax.unwrap_or(60);
    let mode = if classify { Mode::Classify } else { Mode::Bound };
    let top = p.family_max.max(v.bound() as u64);
    let orders: Vec<(u64, u64)> =
        (2..=top).filter_map(|n| least_prime(n).map(|q| (n, q))).filter(|&(_, q)| p.admits(q)).collect();
    let per_order: Vec<Vec<Check>> = orders
        .into_par_iter()
        .map(|(n, q)| order_checks(v, n, q, &f_ratio(q)?, "f(q)", mode))
        .collect::<Result<_>>()?;
    let mut checks: Vec<Check> = per_order.into_iter().flatten().collect();
    if classify {
        for q in p.witness_primes() {
            if !is_prime(q) {
                return Err(TheoremError::InvalidParameter(format!("{q} is not prime")));
            }
            checks.extend(witness_family_checks(q, kmax, true)?);
        }
    }
    let primes = p
        .primes
        .as_ref()
        .map_or_else(|| "all".to_string(), |ps| ps.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
    let report_params = params([
        ("bound", v.bound().to_string()),
        ("family_max", top.to_string()),
        ("kmax", kmax.to_string()),
        ("q", primes),
    ]);
    Ok(VerificationReport::new(claim, report_params, checks))
}

/// Brute-force ψ of `M_{q^r}` and `C_q × C_{q^{r−1}}` against
/// `(q^{2r}+q³−q²+1)/(q+1)`, which must stay strictly below
/// `f(q)·ψ(C_{q^r})`.
pub fn mqr_formula_check(q: u64, r: u32) -> Result<VerificationReport> {
    Ok(VerificationReport::new(ClaimId::Mqr, params([("q", q.to_string()), ("r", r.to_string())]), mqr_checks(q, r)?))
}

fn mqr_checks(q: u64, r: u32) -> Result<Vec<Check>> {
    let modular = GroupSpec::Modular { q, r };
    modular.validate()?;
    let abelian = GroupSpec::Abelian(vec![q, q.pow(r - 1)]);
    let qb = BigInt::from(q);
    let closed = Rational::new(big_pow(q, 2 * r) + big_pow(q, 3) - big_pow(q, 2) + 1, &qb + 1)?;
    let n = q.pow(r);
    let bound = f_ratio(q)? * Rational::from(psi_cyclic(n)?);
    let tag = |c: Check| c.param("q", q).param("r", r);
    Ok(vec![
        tag(Check::new("closed form is an integer", Scope::Arithmetic, closed.denom().clone(), Relation::Eq, 1u64)),
        tag(Check::new(
            "psi(M_{q^r}) = closed form",
            Scope::FamilyRestricted,
            build_group(&modular)?.psi(),
            Relation::Eq,
            closed.clone(),
        )
        .witness(&modular)),
        tag(Check::new(
            "psi(C_q x C_{q^(r-1)}) = closed form",
            Scope::FamilyRestricted,
            build_group(&abelian)?.psi(),
            Relation::Eq,
            closed.clone(),
        )
        .witness(&abelian)),
        tag(Check::new("closed form < f(q)*psi(C_{q^r})", Scope::Arithmetic, closed, Relation::Lt, bound)),
        tag(Check::new("q^4 < q^(2r)", Scope::Arithmetic, big_pow(q, 4), Relation::Lt, big_pow(q, 2 * r))),
    ])
}

/// `ψ(Q_8) = 27 < f(2)·ψ(C_8)`: no group of order 8 attains the bound.
fn q8_checks() -> Result<Vec<Check>> {
    let q8 = GroupSpec::GeneralizedQuaternion(8);
    let psi = build_group(&q8)?.psi();
    let rhs = f_ratio(2)? * Rational::from(psi_cyclic(8)?);
    Ok(vec![
        Check::new("psi(Q_8)", Scope::FamilyRestricted, psi, Relation::Eq, 27u64).witness(&q8),
        Check::new("psi(Q_8) < f(2)*psi(C_8)", Scope::FamilyRestricted, psi, Relation::Lt, rhs).witness(&q8),
    ])
}

pub(crate) fn mqr_suite(v: &Verifier) -> Result<VerificationReport> {
    let pairs = &v.params().mqr;
    let mut checks = q8_checks()?;
    for &(q, r) in pairs {
        checks.extend(mqr_checks(q, r)?);
    }
    let list = pairs.iter().map(|(q, r)| format!("({q},{r})")).collect::<Vec<_>>().join(",");
    Ok(VerificationReport::new(ClaimId::Mqr, params([("pairs", list)]), checks))
}

/// `f(2) = 7/11`, `f(q) < 1`, and `f` strictly decreasing along the primes
/// up to `q_max`.
pub fn f_monotone_check(q_max: u64) -> VerificationReport {
    let primes: Vec<u64> = (2..=q_max).filter(|&q| is_prime(q)).collect();
    let f = |q| f_ratio(q).expect("prime argument");
    let mut checks =
        vec![Check::new("f(2) = 7/11", Scope::Arithmetic, f(2), Relation::Eq, Rational::new(7, 11).expect("nonzero"))];
    for &q in &primes {
        checks.push(Check::new("f(q) < 1", Scope::Arithmetic, f(q), Relation::Lt, 1u64).param("q", q));
    }
    for w in primes.windows(2) {
        checks.push(
            Check::new("f(q1) > f(q2)", Scope::Arithmetic, f(w[0]), Relation::Gt, f(w[1]))
                .param("q1", w[0])
                .param("q2", w[1]),
        );
    }
    VerificationReport::new(ClaimId::FMonotone, params([("q_max", q_max.to_string())]), checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::EnumerationConfig;
    use crate::theorems::SuiteParams;

    fn verifier() -> Verifier {
        Verifier::new(EnumerationConfig::default(), None, SuiteParams::default())
    }

    #[test]
    fn max_cyclic_examples() {
        let v = verifier();
        let rep = verify_max_cyclic(&v, 8).unwrap();
        assert!(rep.passed());
        let mut lhs: Vec<String> = rep
            .checks
            .iter()
            .filter(|c| c.label == "psi(G) < psi(C_n)")
            .map(|c| c.lhs.as_ref().unwrap().to_string())
            .collect();
        lhs.sort();
        assert_eq!(lhs, ["15/1", "19/1", "23/1", "27/1"]);
        let rep = verify_max_cyclic(&v, 2).unwrap();
        assert!(rep.passed());
        assert!(rep.checks.iter().all(|c| c.label != "psi(G) < psi(C_n)"));
    }

    #[test]
    fn upper_bound_examples() {
        let g = build_group(&GroupSpec::elementary_times_cyclic(2, 3)).unwrap();
        let rep = verify_upper_bound(&g, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Equality);
        assert_eq!(rep.checks[0].rhs.as_ref().unwrap().to_string(), "49/1");

        let q8 = build_group(&GroupSpec::GeneralizedQuaternion(8)).unwrap();
        let rep = verify_upper_bound(&q8, 2).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        assert_eq!(rep.checks[0].rhs.as_ref().unwrap().to_string(), "301/11");

        let g = build_group(&GroupSpec::elementary_times_cyclic(3, 5)).unwrap();
        assert_eq!(verify_upper_bound(&g, 3).unwrap().verdict, Verdict::Equality);

        let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
        assert!(matches!(verify_upper_bound(&c6, 2), Err(TheoremError::CyclicGroup)));
        let s3 = build_group(&GroupSpec::Dihedral(6)).unwrap();
        assert!(matches!(verify_upper_bound(&s3, 3), Err(TheoremError::NotLeastPrime { q: 3, n: 6 })));
    }

    #[test]
    fn equality_classification_examples() {
        let v = verifier();
        let c4 = classify_equality(&v, 4, 2, Scope::Exhaustive).unwrap();
        assert!(c4.holds());
        assert_eq!(c4.witnesses, vec![EqualityWitness::new(2, 1)]);

        let c12 = classify_equality(&v, 12, 2, Scope::Exhaustive).unwrap();
        assert!(c12.holds());
        assert_eq!(c12.witnesses, vec![EqualityWitness::new(2, 3)]);
        let strict = c12.checks.iter().filter(|c| c.relation == Relation::Lt).count();
        assert_eq!(strict, 3);

        let c8 = classify_equality(&v, 8, 2, Scope::Exhaustive).unwrap();
        assert!(c8.holds());
        assert!(c8.witnesses.is_empty());

        assert!(matches!(classify_equality(&v, 9, 2, Scope::Exhaustive), Err(TheoremError::NotLeastPrime { .. })));
        assert!(classify_equality(&v, 18, 2, Scope::Exhaustive).is_err());
        let c18 = classify_equality(&v, 18, 2, Scope::FamilyRestricted).unwrap();
        assert!(c18.holds());
        assert!(c18.witnesses.is_empty());
        let c45 = classify_equality(&v, 45, 3, Scope::FamilyRestricted).unwrap();
        assert!(c45.holds());
        assert_eq!(c45.witnesses, vec![EqualityWitness::new(3, 5)]);
    }

    #[test]
    fn mqr_examples() {
        for (q, r, value) in [(2, 4, 87u64), (3, 3, 187), (2, 5, 343)] {
            let rep = mqr_formula_check(q, r).unwrap();
            assert!(rep.passed(), "{q} {r}");
            assert_eq!(rep.checks[1].rhs, Some(Rational::from(value)));
        }
        assert!(mqr_formula_check(2, 3).is_err());
    }

    #[test]
    fn monotone() {
        let rep = f_monotone_check(97);
        assert!(rep.passed());
        assert_eq!(rep.checks.len(), 1 + 25 + 24);
    }
}

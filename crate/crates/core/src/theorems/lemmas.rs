use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;

use super::extremal::least_prime;
use super::{Check, ClaimId, Relation, Scope, TheoremError, VerificationReport, Verifier};
use crate::arith::{
    cyclic_lower_bound, factorize, is_prime, psi_cyclic, psi_cyclic_oracle, psi_cyclic_prime_power, Rational,
};
use crate::group::{build_group, kernel_of_action, semidirect_actions, Group, GroupError, GroupSpec};

type Result<T> = std::result::Result<T, TheoremError>;

pub(crate) fn lemma_suite(v: &Verifier, item: u8) -> Result<VerificationReport> {
    let p = v.params();
    let (checks, bound_key, bound): (Vec<Check>, &str, String) = match item {
        1 => (prime_power_checks(p.cyclic_max)?, "n_max", p.cyclic_max.to_string()),
        2 => (coprime_product_checks(v)?, "bound", v.bound().to_string()),
        3 => (cyclic_checks(p.cyclic_max)?, "n_max", p.cyclic_max.to_string()),
        4 => (lower_bound_checks(p.lower_bound_max)?, "n_max", p.lower_bound_max.to_string()),
        5 => (semidirect_checks(p.mk_max, false)?, "mk_max", p.mk_max.to_string()),
        6 => (semidirect_checks(p.mk_max, true)?, "mk_max", p.mk_max.to_string()),
        7 => {
            let mut checks = Vec::new();
            for n in 2..=v.bound() {
                checks.extend(lemma7_check(v, n)?.checks);
            }
            (checks, "bound", v.bound().to_string())
        }
        _ => return Err(TheoremError::UnknownClaim(format!("Lem2.1({item})"))),
    };
    let params = BTreeMap::from([(bound_key.to_string(), bound)]);
    Ok(VerificationReport::new(ClaimId::Lemma(item), params, checks))
}

/// Brute-force `ψ(C_{p^m})` against `(p^{2m+1}+1)/(p+1)`.
fn prime_power_checks(max: u64) -> Result<Vec<Check>> {
    let mut cases = vec![(2u64, 0u32)];
    for p in (2..=max).filter(|&p| is_prime(p)) {
        let mut m = 1;
        while p.checked_pow(m).is_some_and(|v| v <= max) {
            cases.push((p, m));
            m += 1;
        }
    }
    cases
        .into_par_iter()
        .map(|(p, m)| {
            let brute = build_group(&GroupSpec::Cyclic(p.pow(m)))?.psi();
            let closed = psi_cyclic_prime_power(p, m)?;
            Ok(Check::new("psi(C_{p^m}) = (p^(2m+1)+1)/(p+1)", Scope::FamilyRestricted, brute, Relation::Eq, closed)
                .param("p", p)
                .param("m", m))
        })
        .collect()
}

/// `ψ(A × B) = ψ(A)·ψ(B)` over every pair of catalog classes of coprime
/// orders within the enumeration bound.
fn coprime_product_checks(v: &Verifier) -> Result<Vec<Check>> {
    let mut pairs = Vec::new();
    for a in 2..=v.bound() {
        for b in a + 1..=v.bound() {
            if a.gcd(&b) == 1 {
                pairs.push((a, b));
            }
        }
    }
    let mut checks = Vec::new();
    for (a, b) in pairs {
        let (ca, cb) = (v.catalog(a)?, v.catalog(b)?);
        for x in &ca.classes {
            for y in &cb.classes {
                let spec = GroupSpec::product([
                    GroupSpec::FromCayleyTable { source: x.name.clone(), table: x.table.clone() },
                    GroupSpec::FromCayleyTable { source: y.name.clone(), table: y.table.clone() },
                ]);
                let psi = build_group(&spec)?.psi();
                checks.push(
                    Check::new("psi(A x B) = psi(A)*psi(B)", Scope::Exhaustive, psi, Relation::Eq, x.psi * y.psi)
                        .param("|A|", a)
                        .param("|B|", b)
                        .param("A", &x.name)
                        .param("B", &y.name),
                );
            }
        }
    }
    Ok(checks)
}

/// Brute-force `ψ(C_n)` against the product formula, and the product
/// formula against the divisor-sum oracle.
fn cyclic_checks(max: u64) -> Result<Vec<Check>> {
    let per_n: Vec<Vec<Check>> = (1..=max)
        .into_par_iter()
        .map(|n| -> Result<Vec<Check>> {
            let brute = build_group(&GroupSpec::Cyclic(n))?.psi();
            let closed = psi_cyclic(n)?;
            let oracle = psi_cyclic_oracle(n)?;
            Ok(vec![
                Check::new(
                    "psi(C_n) by brute force = product formula",
                    Scope::FamilyRestricted,
                    brute,
                    Relation::Eq,
                    closed,
                )
                .param("n", n),
                Check::new("product formula = divisor sum", Scope::Arithmetic, closed, Relation::Eq, oracle)
                    .param("n", n),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

fn lower_bound_checks(max: u64) -> Result<Vec<Check>> {
    (2..=max)
        .map(|n| {
            Ok(Check::new(
                "psi(C_n) >= q n^2/(p+1)",
                Scope::Arithmetic,
                psi_cyclic(n)?,
                Relation::Ge,
                cyclic_lower_bound(n)?,
            )
            .param("n", n))
        })
        .collect()
}

/// `(m, k, a)` with `m` a prime power, `k ≥ 2` coprime to `m`, `m·k ≤
/// mk_max`, and `a` ranging over the trivial and all valid actions.
pub(crate) fn semidirect_cases(mk_max: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for m in 2..=mk_max / 2 {
        if !factorize(m).is_ok_and(|f| f.is_prime_power()) {
            continue;
        }
        for k in 2..=mk_max / m {
            if m.gcd(&k) != 1 {
                continue;
            }
            out.push((m, k, 1));
            out.extend(semidirect_actions(m, k).into_iter().map(|a| (m, k, a)));
        }
    }
    out
}

fn first_of_order(group: &Group, order: u64) -> Option<usize> {
    group.element_orders().iter().position(|&o| o == order)
}

fn psi_of(group: &Group, subset: &[usize]) -> u128 {
    subset.iter().map(|&x| u128::from(group.element_orders()[x])).sum()
}

/// `|C_F(P)|` for `P = ⟨x⟩` and `F = ⟨y⟩`, counted directly.
fn centralizer_in(group: &Group, x: usize, y: usize) -> u64 {
    group.cyclic_subgroup(y).into_iter().filter(|&f| group.commutes(x, f)).count() as u64
}

/// For `G = C_m ⋊ C_k` with `C_m` the normal Sylow subgroup `P`:
/// `ψ(G) ≤ ψ(P)·ψ(G/P)`, with equality exactly when the action is trivial;
/// or, with `strict`, the bound through `Z = C_F(P)` for non-trivial actions.
fn semidirect_checks(mk_max: u64, strict: bool) -> Result<Vec<Check>> {
    let cases: Vec<_> = semidirect_cases(mk_max).into_iter().filter(|&(_, _, a)| !strict || a != 1).collect();
    let per_case: Vec<Vec<Check>> = cases
        .into_par_iter()
        .map(|(m, k, a)| {
            let spec = GroupSpec::SemidirectCyclic { m, k, a };
            let group = build_group(&spec)?;
            let sylow: Vec<usize> = (0..group.order()).filter(|&x| m % group.element_orders()[x] == 0).collect();
            if sylow.len() as u64 != m {
                return Err(
                    GroupError::InvalidSpec(format!("{spec}: Sylow subgroup has {} elements", sylow.len())).into()
                );
            }
            let psi_p = psi_of(&group, &sylow);
            let tag = |c: Check| c.param("m", m).param("k", k).param("a", a).witness(&spec);
            if strict {
                let x = first_of_order(&group, m).expect("P is cyclic");
                let y = first_of_order(&group, k).expect("C_k embeds");
                let z = centralizer_in(&group, x, y);
                let psi_f = psi_of(&group, &group.cyclic_subgroup(y));
                let rhs =
                    Rational::from(psi_p * psi_f) * (Rational::new(psi_cyclic(z)?, psi_f)? + Rational::new(m, psi_p)?);
                Ok(vec![
                    tag(Check::new(
                        "|C_F(P)| = k/ord_m(a)",
                        Scope::FamilyRestricted,
                        z,
                        Relation::Eq,
                        kernel_of_action(m, k, a)?,
                    )),
                    tag(Check::new(
                        "psi(G) < psi(P)psi(F)(psi(Z)/psi(F) + |P|/psi(P))",
                        Scope::FamilyRestricted,
                        group.psi(),
                        Relation::Lt,
                        rhs,
                    )),
                ])
            } else {
                let quotient = group.quotient(&sylow)?;
                let relation = if a == 1 { Relation::Eq } else { Relation::Lt };
                Ok(vec![
                    tag(Check::new("G/P = C_k", Scope::FamilyRestricted, quotient.psi(), Relation::Eq, psi_cyclic(k)?)),
                    tag(Check::new(
                        "psi(G) vs psi(P)psi(G/P), equality iff central",
                        Scope::FamilyRestricted,
                        group.psi(),
                        relation,
                        psi_p * quotient.psi(),
                    )),
                ])
            }
        })
        .collect::<Result<_>>()?;
    Ok(per_case.into_iter().flatten().collect())
}

/// For the classes of order `n` with the second largest ψ: wherever the
/// class is `P ⋊ F` with `P` a cyclic normal Sylow `p`-subgroup and `F` a
/// cyclic complement, `[F : C_F(P)]` must be prime. Classes without that
/// shape are reported as not applicable.
pub fn lemma7_check(v: &Verifier, n: usize) -> Result<VerificationReport> {
    let cat = v.catalog(n)?;
    let spectrum = cat.spectrum();
    let mut params = BTreeMap::from([("n".to_string(), n.to_string())]);
    let Some(second) = spectrum.get(1) else {
        let na = Check::not_applicable("[F:C_F(P)] is prime", Scope::Exhaustive, "a single psi value").param("n", n);
        return Ok(VerificationReport::new(ClaimId::Lemma(7), params, vec![na]));
    };
    params.insert("psi".to_string(), second.psi.to_string());
    let primes: Vec<(u64, u32)> = factorize(n as u64)?.factors().to_vec();
    let mut checks = Vec::new();
    for class in cat.classes.iter().filter(|c| c.psi == second.psi) {
        let group = Group::from_table(class.table.clone())?;
        let mut applicable = false;
        for &(p, e) in &primes {
            let sylow_order = p.pow(e);
            let complement = n as u64 / sylow_order;
            if complement == 1 {
                continue;
            }
            let (Some(x), Some(y)) = (first_of_order(&group, sylow_order), first_of_order(&group, complement)) else {
                continue;
            };
            if !group.is_normal(&group.cyclic_subgroup(x)) {
                continue;
            }
            applicable = true;
            let index = complement / centralizer_in(&group, x, y);
            let least = least_prime(index).unwrap_or(0);
            checks.push(
                Check::new("[F:C_F(P)] is prime", Scope::Exhaustive, index, Relation::Eq, least)
                    .param("n", n)
                    .param("p", p)
                    .witness(&class.name),
            );
        }
        if !applicable {
            checks.push(
                Check::not_applicable(
                    "[F:C_F(P)] is prime",
                    Scope::Exhaustive,
                    "no cyclic normal Sylow subgroup with a cyclic complement",
                )
                .param("n", n)
                .witness(&class.name),
            );
        }
    }
    Ok(VerificationReport::new(ClaimId::Lemma(7), params, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::EnumerationConfig;
    use crate::theorems::{SuiteParams, Verdict};

    fn verifier() -> Verifier {
        Verifier::new(EnumerationConfig::default(), None, SuiteParams::default())
    }

    #[test]
    fn lemma7_examples() {
        let v = verifier();
        for (n, name) in [(6, "D6"), (10, "D10")] {
            let rep = lemma7_check(&v, n).unwrap();
            assert_eq!(rep.checks.len(), 1, "n = {n}");
            let c = &rep.checks[0];
            assert_eq!(c.verdict, Verdict::Equality);
            assert_eq!(c.lhs, Some(Rational::from(2u64)));
            assert_eq!(c.witness.as_deref(), Some(name));
        }
        let rep = lemma7_check(&v, 12).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
        assert_eq!(rep.params["psi"], "49");
        assert_eq!(lemma7_check(&v, 7).unwrap().verdict, Verdict::NotApplicable);
    }

    #[test]
    fn semidirect_cases_shape() {
        let cases = semidirect_cases(200);
        assert!(cases.contains(&(3, 2, 1)));
        assert!(cases.contains(&(3, 2, 2)));
        assert!(cases.contains(&(5, 4, 2)));
        assert!(!cases.iter().any(|&(m, k, _)| m * k > 200 || m.gcd(&k) != 1));
        assert!(!cases.iter().any(|&(m, _, _)| m == 6 || m == 10));
    }

    #[test]
    fn small_semidirect_suites() {
        let five = semidirect_checks(40, false).unwrap();
        assert!(five.iter().all(Check::passed));
        assert!(five.iter().any(|c| c.verdict == Verdict::Equality
            && c.params["a"] == "1"
            && c.relation == Relation::Eq
            && c.label.starts_with("psi(G)")));
        let six = semidirect_checks(40, true).unwrap();
        assert!(six.iter().all(Check::passed));
        assert!(six.iter().all(|c| c.params["a"] != "1"));
    }
}

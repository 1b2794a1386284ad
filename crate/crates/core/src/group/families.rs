use num_integer::Integer;

use super::GroupSpec;
use crate::arith::{factorize, is_prime};

/// Every abelian group of order `n`, as cyclic or invariant-factor specs.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    let Ok(fact) = factorize(n) else {
        return Vec::new();
    };
    let mut lists: Vec<Vec<u64>> = vec![Vec::new()];
    for &(p, a) in fact.factors() {
        let mut next = Vec::new();
        for partition in partitions(a, a) {
            for base in &lists {
                // base and partition are both largest-first.
                let len = base.len().max(partition.len());
                let merged: Vec<u64> = (0..len)
                    .map(|i| base.get(i).copied().unwrap_or(1) * p.pow(partition.get(i).copied().unwrap_or(0)))
                    .collect();
                next.push(merged);
            }
        }
        lists = next;
    }
    lists
        .into_iter()
        .map(|mut ds| {
            ds.reverse();
            match ds.as_slice() {
                [] => GroupSpec::Cyclic(1),
                [d] => GroupSpec::Cyclic(*d),
                _ => GroupSpec::Abelian(ds),
            }
        })
        .collect()
}

/// Partitions of `total` into parts of size at most `max`, largest first.
fn partitions(total: u32, max: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Valid non-trivial actions `a` of `C_k` on `C_m`.
pub fn semidirect_actions(m: u64, k: u64) -> Vec<u64> {
    (2..m)
        .filter(|&a| {
            a.gcd(&m) == 1 && {
                let mut x = 1u128;
                for _ in 0..k {
                    x = x * u128::from(a) % u128::from(m);
                }
                x == 1
            }
        })
        .collect()
}

/// Non-abelian groups of order `n` from the single-factor families, named
/// families first: dihedral, quaternion, modular, then every `SD(m, k, a)`.
fn nonabelian_primitives(n: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    if n >= 6 && n.is_multiple_of(2) {
        out.push(GroupSpec::Dihedral(n));
    }
    if n >= 8 && n.is_power_of_two() {
        out.push(GroupSpec::GeneralizedQuaternion(n));
    }
    if let Ok(f) = factorize(n) {
        if let [(q, r)] = *f.factors() {
            if r >= 4 || (r == 3 && q > 2) {
                out.push(GroupSpec::Modular { q, r });
            }
        }
    }
    for m in 3..=n {
        if !n.is_multiple_of(m) {
            continue;
        }
        let k = n / m;
        if k < 2 {
            continue;
        }
        for a in semidirect_actions(m, k) {
            out.push(GroupSpec::SemidirectCyclic { m, k, a });
        }
    }
    out
}

/// Every group of order `n` reachable from the construction families:
/// abelian groups, dihedral, generalized quaternion, modular and cyclic
/// semidirect products, and direct products of one of those non-abelian
/// groups with an abelian group. Lists may contain isomorphic duplicates.
pub fn family_groups_of_order(n: u64) -> Vec<GroupSpec> {
    let mut out = abelian_groups_of_order(n);
    out.extend(nonabelian_primitives(n));
    for d in 6..n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let rest = n / d;
        for x in nonabelian_primitives(d) {
            for b in abelian_groups_of_order(rest) {
                out.push(GroupSpec::product([x.clone(), b]));
            }
        }
    }
    out
}

/// Whether `(C_q × C_q) × C_k` is a candidate equality witness: every prime
/// divisor of `k` exceeds `q` (equivalently `gcd(k, q!) = 1`).
pub fn is_witness_cofactor(q: u64, k: u64) -> bool {
    is_prime(q) && factorize(k).is_ok_and(|f| f.primes().all(|p| p > q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_counts() {
        let count = |n| abelian_groups_of_order(n).len();
        assert_eq!(count(1), 1);
        assert_eq!(count(8), 3);
        assert_eq!(count(16), 5);
        assert_eq!(count(72), 6);
        assert_eq!(count(12), 2);
    }

    #[test]
    fn abelian_specs_validate() {
        for n in 1..=64 {
            for spec in abelian_groups_of_order(n) {
                spec.validate().unwrap();
                assert_eq!(spec.declared_order(), Some(n));
            }
        }
    }

    #[test]
    fn families_have_the_right_order() {
        for n in [6u64, 8, 12, 16, 18, 20] {
            for spec in family_groups_of_order(n) {
                assert_eq!(spec.declared_order(), Some(n), "{spec}");
                spec.validate().unwrap();
            }
        }
    }

    #[test]
    fn witness_cofactors() {
        assert!(is_witness_cofactor(2, 1));
        assert!(is_witness_cofactor(2, 15));
        assert!(!is_witness_cofactor(2, 6));
        assert!(is_witness_cofactor(3, 35));
        assert!(!is_witness_cofactor(3, 10));
        assert!(!is_witness_cofactor(4, 5));
    }
}

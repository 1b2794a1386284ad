use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::{CayleyTable, GroupError};
use crate::arith::is_prime;

/// Structured description of a finite group.
///
/// The text form (`Display` / `FromStr`) is the grammar the CLI accepts:
/// `C12`, `A[2,6]`, `D8`, `Q8`, `M(2,4)`, `SD(5,4,2)`, `x`-separated direct
/// products such as `C2xC2xC3`, `table:<path>` and `perm:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Invariant factors `d₁ | d₂ | … | d_r`.
    Abelian(Vec<u64>),
    DirectProduct(Vec<GroupSpec>),
    /// `C_m ⋊ C_k`, the generator of `C_k` acting on `C_m` by `x ↦ x^a`.
    SemidirectCyclic {
        m: u64,
        k: u64,
        a: u64,
    },
    /// Dihedral group of the given order (`D6` is the symmetric group on 3 letters).
    Dihedral(u64),
    /// Generalized quaternion group of the given 2-power order.
    GeneralizedQuaternion(u64),
    /// `M_{q^r} = ⟨a, b | a^{q^{r−1}} = b^q = 1, a^b = a^{q^{r−2}+1}⟩`.
    Modular {
        q: u64,
        r: u32,
    },
    FromCayleyTable {
        source: String,
        table: CayleyTable,
    },
    /// Permutations of `0..degree`; the group is their closure.
    FromPermutations {
        source: String,
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Self {
        GroupSpec::Cyclic(n)
    }

    pub fn product(factors: impl IntoIterator<Item = GroupSpec>) -> Self {
        GroupSpec::DirectProduct(factors.into_iter().collect())
    }

    /// `(C_q × C_q) × C_k`.
    pub fn elementary_times_cyclic(q: u64, k: u64) -> Self {
        GroupSpec::product([GroupSpec::Abelian(vec![q, q]), GroupSpec::Cyclic(k)])
    }

    /// The order the spec describes, when it is known without building the
    /// group (permutation groups need their closure first).
    pub fn declared_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) | GroupSpec::GeneralizedQuaternion(n) => Some(*n),
            GroupSpec::Abelian(ds) => ds.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d)),
            GroupSpec::DirectProduct(fs) => fs.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.declared_order()?)),
            GroupSpec::SemidirectCyclic { m, k, .. } => m.checked_mul(*k),
            GroupSpec::Modular { q, r } => q.checked_pow(*r),
            GroupSpec::FromCayleyTable { table, .. } => Some(table.order() as u64),
            GroupSpec::FromPermutations { .. } => None,
        }
    }

    /// Checks the parameter invariants of the structured constructors.
    pub fn validate(&self) -> Result<(), GroupError> {
        let invalid = |msg: String| Err(GroupError::InvalidSpec(msg));
        match self {
            GroupSpec::Cyclic(0) => invalid("C0 is not a group".into()),
            GroupSpec::Cyclic(_) => Ok(()),
            GroupSpec::Abelian(ds) => {
                if ds.contains(&0) {
                    return invalid("invariant factor 0".into());
                }
                for w in ds.windows(2) {
                    if w[1] % w[0] != 0 {
                        return invalid(format!("invariant factors {} ∤ {}", w[0], w[1]));
                    }
                }
                Ok(())
            }
            GroupSpec::DirectProduct(fs) => fs.iter().try_for_each(GroupSpec::validate),
            &GroupSpec::SemidirectCyclic { m, k, a } => validate_action(m, k, a),
            &GroupSpec::Dihedral(n) => {
                if n < 2 || n % 2 != 0 {
                    return invalid(format!("dihedral order {n} must be even and at least 2"));
                }
                Ok(())
            }
            &GroupSpec::GeneralizedQuaternion(n) => {
                if n < 8 || !n.is_power_of_two() {
                    return invalid(format!("quaternion order {n} must be a power of 2, at least 8"));
                }
                Ok(())
            }
            &GroupSpec::Modular { q, r } => {
                if !is_prime(q) {
                    return invalid(format!("M({q},{r}): {q} is not prime"));
                }
                if !(r >= 4 || (r == 3 && q > 2)) {
                    return invalid(format!("M({q},{r}) requires r >= 4, or r = 3 with q > 2"));
                }
                if q.checked_pow(r).is_none() {
                    return invalid(format!("M({q},{r}) is too large"));
                }
                Ok(())
            }
            GroupSpec::FromCayleyTable { .. } => Ok(()),
            GroupSpec::FromPermutations { degree, generators, .. } => {
                for g in generators {
                    check_permutation(g, *degree)?;
                }
                Ok(())
            }
        }
    }

    pub fn parse(text: &str) -> Result<GroupSpec, GroupError> {
        let trimmed = text.trim();
        if let Some(path) = trimmed.strip_prefix("table:") {
            let rows: Vec<Vec<u32>> = read_json(path)?;
            let table = CayleyTable::from_rows(rows)?;
            return Ok(GroupSpec::FromCayleyTable { source: path.to_string(), table });
        }
        if let Some(path) = trimmed.strip_prefix("perm:") {
            let perms: Vec<Vec<u32>> = read_json(path)?;
            let (degree, generators) = normalize_permutations(perms)?;
            return Ok(GroupSpec::FromPermutations { source: path.to_string(), degree, generators });
        }
        let parts: Vec<&str> = trimmed.split('x').map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| parse_atom(p, text)).collect::<Result<Vec<_>, _>>()?;
            return Ok(GroupSpec::DirectProduct(factors));
        }
        parse_atom(trimmed, text)
    }
}

fn validate_action(m: u64, k: u64, a: u64) -> Result<(), GroupError> {
    if m == 0 || k == 0 {
        return Err(GroupError::InvalidSpec(format!("SD({m},{k},{a}) needs m, k >= 1")));
    }
    let bad = GroupError::InvalidAction { m, k, a };
    if a.gcd(&m) != 1 && m != 1 {
        return Err(bad);
    }
    let (a128, m128) = (u128::from(a % m), u128::from(m));
    let mut x = 1 % m128;
    for _ in 0..k {
        x = x * a128 % m128;
    }
    if x != 1 % m128 {
        return Err(bad);
    }
    Ok(())
}

fn check_permutation(p: &[u32], degree: usize) -> Result<(), GroupError> {
    if p.len() != degree {
        return Err(GroupError::Permutation(format!("expected {degree} points, got {}", p.len())));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        let x = x as usize;
        if x >= degree || seen[x] {
            return Err(GroupError::Permutation(format!("{p:?} is not a bijection of 0..{degree}")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Accepts 0-based or 1-based one-line notation; a generator list that never
/// mentions 0 is read as 1-based.
fn normalize_permutations(perms: Vec<Vec<u32>>) -> Result<(usize, Vec<Vec<u32>>), GroupError> {
    let degree = perms.first().map_or(0, Vec::len);
    let one_based = !perms.is_empty() && perms.iter().flatten().all(|&x| x != 0);
    let perms: Vec<Vec<u32>> =
        if one_based { perms.into_iter().map(|p| p.into_iter().map(|x| x - 1).collect()).collect() } else { perms };
    for p in &perms {
        check_permutation(p, degree)?;
    }
    Ok((degree, perms))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, GroupError> {
    let data = std::fs::read_to_string(path).map_err(|source| GroupError::Io { path: path.to_string(), source })?;
    serde_json::from_str(&data).map_err(|source| GroupError::Json { path: path.to_string(), source })
}

fn parse_atom(atom: &str, whole: &str) -> Result<GroupSpec, GroupError> {
    let err = |reason: &str| GroupError::Parse { text: whole.to_string(), reason: reason.to_string() };
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| err(&format!("bad number {s:?}")));
    let args = |inner: &str, want: usize| -> Result<Vec<u64>, GroupError> {
        let v = inner.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        if v.len() != want {
            return Err(err(&format!("expected {want} arguments")));
        }
        Ok(v)
    };
    if let Some(inner) = atom.strip_prefix("SD(").and_then(|s| s.strip_suffix(')')) {
        let v = args(inner, 3)?;
        return Ok(GroupSpec::SemidirectCyclic { m: v[0], k: v[1], a: v[2] });
    }
    if let Some(inner) = atom.strip_prefix("M(").and_then(|s| s.strip_suffix(')')) {
        let v = args(inner, 2)?;
        let r = u32::try_from(v[1]).map_err(|_| err("exponent too large"))?;
        return Ok(GroupSpec::Modular { q: v[0], r });
    }
    if let Some(inner) = atom.strip_prefix("A[").and_then(|s| s.strip_suffix(']')) {
        if inner.trim().is_empty() {
            return Ok(GroupSpec::Abelian(Vec::new()));
        }
        let v = inner.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        return Ok(GroupSpec::Abelian(v));
    }
    let (head, rest) = atom.split_at(atom.chars().next().map_or(0, char::len_utf8));
    match head {
        "C" => Ok(GroupSpec::Cyclic(num(rest)?)),
        "D" => Ok(GroupSpec::Dihedral(num(rest)?)),
        "Q" => Ok(GroupSpec::GeneralizedQuaternion(num(rest)?)),
        _ => Err(err(&format!("unrecognized factor {atom:?}"))),
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Abelian(ds) => {
                let ds: Vec<String> = ds.iter().map(u64::to_string).collect();
                write!(f, "A[{}]", ds.join(","))
            }
            GroupSpec::DirectProduct(fs) if fs.is_empty() => write!(f, "C1"),
            GroupSpec::DirectProduct(fs) => {
                for (i, factor) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            GroupSpec::SemidirectCyclic { m, k, a } => write!(f, "SD({m},{k},{a})"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::GeneralizedQuaternion(n) => write!(f, "Q{n}"),
            GroupSpec::Modular { q, r } => write!(f, "M({q},{r})"),
            GroupSpec::FromCayleyTable { source, .. } => write!(f, "table:{source}"),
            GroupSpec::FromPermutations { source, .. } => write!(f, "perm:{source}"),
        }
    }
}

use std::collections::HashMap;

use super::{CayleyTable, Group, GroupError, GroupSpec};
use crate::arith::multiplicative_order;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Largest group (and permutation closure) that will be materialized.
    pub element_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { element_budget: 4096 }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<Group, GroupError> {
    build_group_with(spec, &BuildOptions::default())
}

pub fn build_group_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<Group, GroupError> {
    spec.validate()?;
    if let Some(n) = spec.declared_order() {
        if n > opts.element_budget as u64 {
            return Err(GroupError::BudgetExceeded { budget: opts.element_budget });
        }
    } else if !matches!(spec, GroupSpec::FromPermutations { .. }) {
        return Err(GroupError::BudgetExceeded { budget: opts.element_budget });
    }
    match spec {
        GroupSpec::FromCayleyTable { table, .. } => Group::from_table(table.clone()),
        GroupSpec::FromPermutations { degree, generators, .. } => {
            Group::from_constructed(permutation_closure(*degree, generators, opts.element_budget)?)
        }
        _ => Group::from_constructed(structured_table(spec, opts)?),
    }
}

fn structured_table(spec: &GroupSpec, opts: &BuildOptions) -> Result<CayleyTable, GroupError> {
    Ok(match spec {
        &GroupSpec::Cyclic(n) => cyclic_table(n as usize),
        GroupSpec::Abelian(ds) => {
            ds.iter().map(|&d| cyclic_table(d as usize)).fold(cyclic_table(1), |acc, t| product_table(&acc, &t))
        }
        GroupSpec::DirectProduct(fs) => {
            let mut acc = cyclic_table(1);
            for f in fs {
                let factor = build_group_with(f, opts)?.into_table();
                acc = product_table(&acc, &factor);
            }
            acc
        }
        &GroupSpec::SemidirectCyclic { m, k, a } => semidirect_table(m, k, a),
        &GroupSpec::Dihedral(n) => {
            let m = n / 2;
            semidirect_table(m, 2, (m - 1) % m.max(1))
        }
        &GroupSpec::GeneralizedQuaternion(n) => quaternion_table(n as usize),
        &GroupSpec::Modular { q, r } => {
            let m = q.pow(r - 1);
            semidirect_table(m, q, 1 + q.pow(r - 2))
        }
        GroupSpec::FromCayleyTable { .. } | GroupSpec::FromPermutations { .. } => {
            unreachable!("handled by build_group_with")
        }
    })
}

fn cyclic_table(n: usize) -> CayleyTable {
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        cells.extend((0..n).map(|j| ((i + j) % n) as u32));
    }
    CayleyTable::from_cells_unchecked(n, cells)
}

/// `A × B` with `(a, b)` stored at index `a·|B| + b`.
fn product_table(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            cells.push((a.get(xa, ya) * nb + b.get(xb, yb)) as u32);
        }
    }
    CayleyTable::from_cells_unchecked(n, cells)
}

/// `C_m ⋊ C_k` on normal forms `x^i y^j` stored at `j·m + i`, with
/// `y x y⁻¹ = x^a`, so `(i₁, j₁)(i₂, j₂) = (i₁ + a^{j₁}·i₂, j₁ + j₂)`.
fn semidirect_table(m: u64, k: u64, a: u64) -> CayleyTable {
    let (mu, ku) = (m as usize, k as usize);
    let mut pow = vec![1 % m; ku];
    for j in 1..ku {
        pow[j] = ((u128::from(pow[j - 1]) * u128::from(a)) % u128::from(m)) as u64;
    }
    let n = mu * ku;
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        let (i1, j1) = (x % mu, x / mu);
        for y in 0..n {
            let (i2, j2) = (y % mu, y / mu);
            let i = (i1 as u64 + pow[j1] * i2 as u64) % m;
            let j = (j1 + j2) % ku;
            cells.push((j * mu + i as usize) as u32);
        }
    }
    CayleyTable::from_cells_unchecked(n, cells)
}

/// `Q_{2^s}` on normal forms `x^i y^j` stored at `j·h + i`, `h = 2^{s−1}`,
/// with `y x y⁻¹ = x⁻¹` and `y² = x^{h/2}`.
fn quaternion_table(n: usize) -> CayleyTable {
    let h = n / 2;
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        let (i1, j1) = (x % h, x / h);
        for y in 0..n {
            let (i2, j2) = (y % h, y / h);
            let (i, j) = match (j1, j2) {
                (0, _) => ((i1 + i2) % h, j2),
                (_, 0) => ((i1 + h - i2) % h, 1),
                _ => ((i1 + h - i2 + h / 2) % h, 0),
            };
            cells.push((j * h + i) as u32);
        }
    }
    CayleyTable::from_cells_unchecked(n, cells)
}

/// Closure of the generators under composition, identity first. The product
/// `g·h` applies `g` first, then `h`.
fn permutation_closure(degree: usize, generators: &[Vec<u32>], budget: usize) -> Result<CayleyTable, GroupError> {
    let compose = |g: &[u32], h: &[u32]| -> Vec<u32> { g.iter().map(|&x| h[x as usize]).collect() };
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
    let mut next = 0;
    while next < elements.len() {
        for g in generators {
            let p = compose(&elements[next], g);
            if !index.contains_key(&p) {
                if elements.len() == budget {
                    return Err(GroupError::BudgetExceeded { budget });
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        next += 1;
    }
    let n = elements.len();
    let mut cells = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            cells.push(index[&compose(a, b)] as u32);
        }
    }
    Ok(CayleyTable::from_cells_unchecked(n, cells))
}

/// `|C_F(P)|` for `SD(m, k, a)`: the `j ∈ C_k` with `a^j ≡ 1 (mod m)`,
/// i.e. `k / ord_m(a)`.
pub fn kernel_of_action(m: u64, k: u64, a: u64) -> Result<u64, GroupError> {
    GroupSpec::SemidirectCyclic { m, k, a }.validate()?;
    let t = multiplicative_order(a, m)?;
    Ok(k / t)
}

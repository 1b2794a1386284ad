use std::collections::BTreeMap;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{CayleyTable, GroupError, TableError};

/// How many elements of each order a group has. `ψ` is its weighted sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderProfile(BTreeMap<u64, u64>);

impl OrderProfile {
    pub fn from_orders(orders: &[u64]) -> Self {
        let mut counts = BTreeMap::new();
        for &o in orders {
            *counts.entry(o).or_insert(0) += 1;
        }
        OrderProfile(counts)
    }

    pub fn count(&self, order: u64) -> u64 {
        self.0.get(&order).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn psi(&self) -> u128 {
        self.0.iter().map(|(&d, &c)| u128::from(d) * u128::from(c)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }

    pub fn as_map(&self) -> &BTreeMap<u64, u64> {
        &self.0
    }
}

impl<const N: usize> From<[(u64, u64); N]> for OrderProfile {
    fn from(pairs: [(u64, u64); N]) -> Self {
        OrderProfile(pairs.into_iter().collect())
    }
}

/// A realized finite group over the index domain `0..n`, identity at 0.
///
/// Element orders and inverses are computed once at construction.
#[derive(Clone, Debug)]
pub struct Group {
    table: CayleyTable,
    inverses: Vec<u32>,
    orders: Vec<u64>,
}

impl Group {
    /// Builds a group from an untrusted table, checking every axiom.
    pub fn from_table(table: CayleyTable) -> Result<Group, GroupError> {
        table.validate()?;
        Group::finish(table)
    }

    /// Builds a group from a table produced by one of our own constructors:
    /// Latin-square check plus `10·n` random associativity triples.
    pub(crate) fn from_constructed(table: CayleyTable) -> Result<Group, GroupError> {
        table.validate_latin()?;
        let n = table.order();
        let mut rng = StdRng::seed_from_u64(n as u64);
        for _ in 0..10 * n {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if table.get(table.get(a, b), c) != table.get(a, table.get(b, c)) {
                return Err(TableError::NotAssociative(a, b, c).into());
            }
        }
        Group::finish(table)
    }

    fn finish(table: CayleyTable) -> Result<Group, GroupError> {
        let n = table.order();
        let inverses: Vec<u32> = (0..n)
            .map(|a| (0..n).find(|&b| table.get(a, b) == 0).expect("Latin rows contain the identity") as u32)
            .collect();
        let mut orders = vec![0u64; n];
        let mut powers = Vec::new();
        for x in 0..n {
            if orders[x] != 0 {
                continue;
            }
            powers.clear();
            let mut y = x;
            powers.push(y);
            while y != 0 {
                if powers.len() > n {
                    return Err(GroupError::Lagrange { element: x, order: 0, group_order: n });
                }
                y = table.get(y, x);
                powers.push(y);
            }
            let t = powers.len() as u64;
            if !(n as u64).is_multiple_of(t) {
                return Err(GroupError::Lagrange { element: x, order: t, group_order: n });
            }
            // powers[i] = x^(i+1), whose order is t / gcd(i+1, t).
            for (i, &p) in powers.iter().enumerate() {
                orders[p] = t / (i as u64 + 1).gcd(&t);
            }
        }
        Ok(Group { table, inverses, orders })
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }

    pub fn element_order(&self, x: usize) -> Result<u64, GroupError> {
        self.orders.get(x).copied().ok_or(GroupError::IndexOutOfRange { index: x, order: self.order() })
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.orders
    }

    /// `ψ(G)`: the sum of all element orders.
    pub fn psi(&self) -> u128 {
        self.orders.iter().map(|&o| u128::from(o)).sum()
    }

    pub fn order_profile(&self) -> OrderProfile {
        OrderProfile::from_orders(&self.orders)
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.orders.contains(&n)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn power(&self, x: usize, e: u64) -> usize {
        let e = e % self.orders[x];
        (0..e).fold(0, |acc, _| self.mul(acc, x))
    }

    /// Elements of `⟨x⟩` in the order `1, x, x², …`.
    pub fn cyclic_subgroup(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut y = x;
        while y != 0 {
            out.push(y);
            y = self.mul(y, x);
        }
        out
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order()).filter(|&g| set.iter().all(|&s| self.commutes(g, s))).collect()
    }

    /// Whether `subset` (assumed to be a subgroup) is closed under conjugation.
    pub fn is_normal(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &h in subset {
            member[h] = true;
        }
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            subset.iter().all(|&h| member[self.mul(self.mul(g, h), gi)])
        })
    }

    /// `G / N` for a normal subgroup `N`. Cosets are numbered by first
    /// appearance, so `N` itself is coset 0.
    pub fn quotient(&self, normal: &[usize]) -> Result<Group, GroupError> {
        let n = self.order();
        if !normal.contains(&0) {
            return Err(GroupError::NotNormal);
        }
        if !n.is_multiple_of(normal.len()) || !self.is_normal(normal) {
            return Err(GroupError::NotNormal);
        }
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in normal {
                coset[self.mul(g, h)] = id;
            }
        }
        let m = reps.len();
        if m * normal.len() != n {
            return Err(GroupError::NotNormal);
        }
        let mut cells = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                cells.push(coset[self.mul(a, b)] as u32);
            }
        }
        Group::finish(CayleyTable::from_cells_unchecked(m, cells))
    }

    /// Invariant factors `d₁ | d₂ | …` of an abelian group, found by
    /// repeatedly splitting off a cyclic subgroup of maximal order.
    pub fn abelian_invariants(&self) -> Result<Vec<u64>, GroupError> {
        if !self.is_abelian() {
            return Err(GroupError::NotAbelian);
        }
        let mut factors = Vec::new();
        let mut current = self.clone();
        while current.order() > 1 {
            let (x, &o) = current
                .orders
                .iter()
                .enumerate()
                .max_by_key(|&(i, &o)| (o, std::cmp::Reverse(i)))
                .expect("non-trivial group");
            factors.push(o);
            let sub = current.cyclic_subgroup(x);
            current = current.quotient(&sub)?;
        }
        factors.reverse();
        Ok(factors)
    }
}

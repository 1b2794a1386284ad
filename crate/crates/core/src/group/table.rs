use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange { row: usize, col: usize, value: u32, order: usize },
    #[error("index 0 is not a two-sided identity (row/column {0} disagrees)")]
    IdentityNotFirst(usize),
    #[error("row {0} is not a permutation")]
    RowNotBijective(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotBijective(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
}

/// Multiplication table over element indices `0..n`, identity at index 0.
///
/// Ordering is row-major lexicographic on the cells, which is the order the
/// canonical form minimizes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u32>,
}

impl CayleyTable {
    /// Shape and range checks only; see [`CayleyTable::validate`] for the
    /// group axioms.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, TableError> {
        let order = rows.len();
        if order == 0 {
            return Err(TableError::Empty);
        }
        let mut cells = Vec::with_capacity(order * order);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(TableError::NotSquare { row, len: r.len(), order });
            }
            for (col, &value) in r.iter().enumerate() {
                if value as usize >= order {
                    return Err(TableError::OutOfRange { row, col, value, order });
                }
            }
            cells.extend(r);
        }
        Ok(CayleyTable { order, cells })
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u32>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        CayleyTable { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b] as usize
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.order).map(<[u32]>::to_vec).collect()
    }

    /// Full group-axiom check: identity at 0, Latin square, associativity
    /// over all `n³` triples.
    pub fn validate(&self) -> Result<(), TableError> {
        self.validate_latin()?;
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Err(TableError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn validate_latin(&self) -> Result<(), TableError> {
        let n = self.order;
        for i in 0..n {
            if self.get(0, i) != i || self.get(i, 0) != i {
                return Err(TableError::IdentityNotFirst(i));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = self.get(r, c);
                if seen[v] == r {
                    return Err(TableError::RowNotBijective(r));
                }
                seen[v] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = self.get(r, c);
                if seen[v] == c {
                    return Err(TableError::ColumnNotBijective(c));
                }
                seen[v] = c;
            }
        }
        Ok(())
    }

    /// The table of the same group after renaming element `x` to `perm[x]`.
    /// `perm` must be a permutation of `0..n` fixing 0.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        let n = self.order;
        assert_eq!(perm.len(), n, "relabeling has wrong length");
        assert_eq!(perm[0], 0, "relabeling must fix the identity");
        let mut cells = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.get(a, b)] as u32;
            }
        }
        CayleyTable { order: n, cells }
    }
}

impl TryFrom<Vec<Vec<u32>>> for CayleyTable {
    type Error = TableError;

    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self, Self::Error> {
        CayleyTable::from_rows(rows)
    }
}

impl From<CayleyTable> for Vec<Vec<u32>> {
    fn from(table: CayleyTable) -> Self {
        table.rows()
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.cells.chunks(self.order)).finish()
    }
}

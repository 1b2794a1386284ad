//! Orderly generation of group tables.
//!
//! Cells are filled in row-major order. Each assignment is pushed through
//! the associativity law `(ab)c = a(bc)` in all four cell roles, so most of
//! the table is deduced rather than guessed. A partial table survives only
//! while its filled prefix is consistent with being lexicographically
//! minimal (see [`super::canon`] for the shape of minimal tables), and a
//! complete table is kept only if it is exactly its own canonical form.

use rayon::prelude::*;

use super::canon::{canonical_power_row, is_canonical};
use crate::arith::factorize;
use crate::group::{CayleyTable, Group};

const UNSET: u8 = u8::MAX;

#[derive(Clone)]
struct Search {
    n: usize,
    q: usize,
    cells: Vec<u8>,
    /// `row_pos[r·n + v]` = column holding `v` in row `r`.
    row_pos: Vec<u8>,
    /// `col_pos[c·n + v]` = row holding `v` in column `c`.
    col_pos: Vec<u8>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl Search {
    fn new(n: usize) -> Self {
        let q = factorize(n as u64).ok().and_then(|f| f.least_prime()).unwrap_or(1) as usize;
        Search {
            n,
            q,
            cells: vec![UNSET; n * n],
            row_pos: vec![UNSET; n * n],
            col_pos: vec![UNSET; n * n],
            trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.n + c]
    }

    /// Sets a cell, failing on a Latin-square clash.
    fn assign(&mut self, r: usize, c: usize, v: u8) -> bool {
        let n = self.n;
        let cell = r * n + c;
        let cur = self.cells[cell];
        if cur != UNSET {
            return cur == v;
        }
        let vi = v as usize;
        if self.row_pos[r * n + vi] != UNSET || self.col_pos[c * n + vi] != UNSET {
            return false;
        }
        self.cells[cell] = v;
        self.row_pos[r * n + vi] = c as u8;
        self.col_pos[c * n + vi] = r as u8;
        self.trail.push(cell);
        self.queue.push(cell);
        true
    }

    /// Forces cell `(r1, c1)` and cell `(r2, c2)` to be equal.
    #[inline]
    fn link(&mut self, r1: usize, c1: usize, r2: usize, c2: usize) -> bool {
        match (self.get(r1, c1), self.get(r2, c2)) {
            (UNSET, UNSET) => true,
            (UNSET, b) => self.assign(r1, c1, b),
            (a, UNSET) => self.assign(r2, c2, a),
            (a, b) => a == b,
        }
    }

    fn propagate(&mut self) -> bool {
        let n = self.n;
        while let Some(cell) = self.queue.pop() {
            let (x, y) = (cell / n, cell % n);
            let w = self.cells[cell] as usize;
            for z in 0..n {
                // (x·y)·z = x·(y·z)
                let u = self.get(y, z);
                if u != UNSET && !self.link(w, z, x, u as usize) {
                    return false;
                }
                // (z·x)·y = z·(x·y)
                let s = self.get(z, x);
                if s != UNSET && !self.link(s as usize, y, z, w) {
                    return false;
                }
                // x = z·b: (z·b)·y = z·(b·y)
                let b = self.row_pos[z * n + x];
                if b != UNSET {
                    let u = self.get(b as usize, y);
                    if u != UNSET && !self.assign(z, u as usize, w as u8) {
                        return false;
                    }
                }
                // y = b·z: x·(b·z) = (x·b)·z
                let b = self.col_pos[z * n + y];
                if b != UNSET {
                    let s = self.get(x, b as usize);
                    if s != UNSET && !self.assign(s as usize, z, w as u8) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        let n = self.n;
        self.queue.clear();
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("trail longer than mark");
            let (r, c) = (cell / n, cell % n);
            let v = self.cells[cell] as usize;
            self.cells[cell] = UNSET;
            self.row_pos[r * n + v] = UNSET;
            self.col_pos[c * n + v] = UNSET;
        }
    }

    fn try_assign(&mut self, r: usize, c: usize, v: u8) -> bool {
        self.assign(r, c, v) && self.propagate() && self.prefix_ok()
    }

    /// Identity row/column and the fixed rows `1..q` of a minimal table.
    fn seed(&mut self) -> bool {
        let n = self.n;
        for i in 0..n {
            if !self.assign(0, i, i as u8) || !self.assign(i, 0, i as u8) {
                return false;
            }
        }
        for i in 1..self.q.min(n) {
            for (j, v) in canonical_power_row(n, self.q, i).into_iter().enumerate() {
                if !self.assign(i, j, v as u8) {
                    return false;
                }
            }
        }
        self.propagate() && self.prefix_ok()
    }

    /// Reading rows `q..n` in row-major order, every label that has not yet
    /// appeared (as a row, column or value) must be the next free block.
    fn prefix_ok(&self) -> bool {
        let n = self.n;
        let mut next = self.q;
        for i in self.q..n {
            for j in 1..n {
                for label in [i, j] {
                    if label >= next {
                        if label != next {
                            return false;
                        }
                        next += self.q;
                    }
                }
                let v = self.get(i, j);
                if v == UNSET {
                    return true;
                }
                let v = v as usize;
                if v >= next {
                    if v != next {
                        return false;
                    }
                    next += self.q;
                }
            }
        }
        true
    }

    fn first_unset(&self) -> Option<(usize, usize)> {
        self.cells.iter().position(|&v| v == UNSET).map(|cell| (cell / self.n, cell % self.n))
    }

    fn candidates(&self, r: usize, c: usize) -> impl Iterator<Item = u8> + '_ {
        let n = self.n;
        (0..n as u8)
            .filter(move |&v| self.row_pos[r * n + v as usize] == UNSET && self.col_pos[c * n + v as usize] == UNSET)
    }

    fn dfs(&mut self, out: &mut Vec<CayleyTable>) {
        let Some((r, c)) = self.first_unset() else {
            self.accept(out);
            return;
        };
        let values: Vec<u8> = self.candidates(r, c).collect();
        for v in values {
            let mark = self.trail.len();
            if self.try_assign(r, c, v) {
                self.dfs(out);
            }
            self.undo_to(mark);
        }
    }

    fn accept(&self, out: &mut Vec<CayleyTable>) {
        let cells = self.cells.iter().map(|&v| u32::from(v)).collect();
        let table = CayleyTable::from_cells_unchecked(self.n, cells);
        let group = Group::from_table(table).expect("propagation only completes valid groups");
        if is_canonical(&group) {
            out.push(group.into_table());
        }
    }

    /// Independent subtrees: every consistent assignment of the next
    /// `depth` unset cells.
    fn frontier(mut self, depth: usize) -> Vec<Search> {
        if depth == 0 {
            return vec![self];
        }
        let Some((r, c)) = self.first_unset() else {
            return vec![self];
        };
        let values: Vec<u8> = self.candidates(r, c).collect();
        let mut out = Vec::new();
        for v in values {
            let mark = self.trail.len();
            if self.try_assign(r, c, v) {
                let mut child = self.clone();
                child.trail.clear();
                out.extend(child.frontier(depth - 1));
            }
            self.undo_to(mark);
        }
        out
    }
}

/// All groups of order `n` up to isomorphism, each as its canonical table,
/// sorted by table.
pub(crate) fn orderly_generate(n: usize) -> Vec<CayleyTable> {
    assert!((1..=usize::from(UNSET)).contains(&n));
    let mut root = Search::new(n);
    if !root.seed() {
        return Vec::new();
    }
    root.trail.clear();
    let subtrees = root.frontier(2);
    let mut tables: Vec<CayleyTable> = subtrees
        .into_par_iter()
        .flat_map_iter(|mut s| {
            let mut out = Vec::new();
            s.dfs(&mut out);
            out
        })
        .collect();
    tables.sort();
    tables.dedup();
    tables
}

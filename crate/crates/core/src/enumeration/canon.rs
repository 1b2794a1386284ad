//! Lexicographically minimal relabeling of a group table.
//!
//! With the identity pinned at 0, the minimal table has a rigid shape:
//! label 1 goes to an element `g` of the least non-trivial order `q`, and
//! the remaining labels come in blocks `y, gy, …, g^{q−1}y` (right cosets of
//! `⟨g⟩`). Rows `1..q` (the powers of `g`) are then the same for every group
//! of order `n`, and while the rest of the table is read in row-major order
//! every value that has no label yet must receive the next free block. The
//! only genuine choices are `g` itself and the block representative when a
//! column label is needed before any value has introduced it.

use std::cmp::Ordering;

use crate::group::{CayleyTable, Group};

const NONE: usize = usize::MAX;

/// The isomorphism-class fingerprint of a group table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(CayleyTable);

impl CanonicalForm {
    pub fn table(&self) -> &CayleyTable {
        &self.0
    }

    pub fn into_table(self) -> CayleyTable {
        self.0
    }
}

/// Least order of a non-identity element (the least prime divisor of `n`).
pub(crate) fn least_order(orders: &[u64]) -> u64 {
    orders.iter().copied().filter(|&o| o > 1).min().unwrap_or(1)
}

/// Row `i < q` of every minimal table of order `n` whose least prime is `q`:
/// left multiplication by `g^i` rotates each block.
pub(crate) fn canonical_power_row(n: usize, q: usize, i: usize) -> Vec<u32> {
    (0..n)
        .map(|j| {
            let (block, t) = (j / q, j % q);
            (block * q + (t + i) % q) as u32
        })
        .collect()
}

struct Canonizer<'a> {
    group: &'a Group,
    n: usize,
    q: usize,
    /// `⟨g⟩` as `1, g, g², …`.
    powers: Vec<usize>,
    label_of: Vec<usize>,
    elem_of: Vec<usize>,
    next: usize,
    cur: Vec<u32>,
    best: Option<Vec<u32>>,
    best_labels: Option<Vec<usize>>,
    /// Stop as soon as any strictly smaller table shows up.
    stop_on_less: bool,
    found_less: bool,
    /// Bumped whenever `best` is replaced.
    generation: u64,
}

impl<'a> Canonizer<'a> {
    fn new(group: &'a Group, best: Option<Vec<u32>>, stop_on_less: bool) -> Self {
        let n = group.order();
        let q = least_order(group.element_orders()) as usize;
        Canonizer {
            group,
            n,
            q,
            powers: Vec::new(),
            label_of: vec![NONE; n],
            elem_of: vec![NONE; n],
            next: 0,
            cur: vec![0; n.saturating_sub(q) * n.saturating_sub(1)],
            best,
            best_labels: None,
            stop_on_less,
            found_less: false,
            generation: 0,
        }
    }

    fn run(&mut self) {
        if self.n <= 2 {
            self.best_labels = Some((0..self.n).collect());
            return;
        }
        let gens: Vec<usize> = (1..self.n).filter(|&x| self.group.element_orders()[x] as usize == self.q).collect();
        for g in gens {
            self.powers = self.group.cyclic_subgroup(g);
            self.introduce(0);
            self.search(0, false);
            self.retract(0);
            if self.found_less && self.stop_on_less {
                return;
            }
        }
    }

    fn introduce(&mut self, y: usize) {
        for i in 0..self.q {
            let e = self.group.mul(self.powers[i], y);
            debug_assert_eq!(self.label_of[e], NONE);
            self.label_of[e] = self.next + i;
            self.elem_of[self.next + i] = e;
        }
        self.next += self.q;
    }

    fn retract(&mut self, to: usize) {
        while self.next > to {
            self.next -= 1;
            let e = self.elem_of[self.next];
            self.label_of[e] = NONE;
            self.elem_of[self.next] = NONE;
        }
    }

    /// Walks cells of rows `q..n`, columns `1..n`, from `pos`; `less` records
    /// whether the prefix already beats `best`.
    fn search(&mut self, mut pos: usize, mut less: bool) {
        let width = self.n - 1;
        let total = self.cur.len();
        let frame = self.next;
        while pos < total {
            let (i, j) = (pos / width + self.q, pos % width + 1);
            let needed = if i >= self.next {
                i
            } else if j >= self.next {
                j
            } else {
                NONE
            };
            if needed != NONE {
                debug_assert_eq!(needed, self.next);
                let mark = self.next;
                for y in 0..self.n {
                    if self.label_of[y] != NONE {
                        continue;
                    }
                    self.introduce(y);
                    let generation = self.generation;
                    self.search(pos, less);
                    self.retract(mark);
                    // A new best shares this frame's prefix.
                    if self.generation != generation {
                        less = false;
                    }
                    if self.found_less && self.stop_on_less {
                        break;
                    }
                }
                self.retract(frame);
                return;
            }
            let v = self.group.mul(self.elem_of[i], self.elem_of[j]);
            if self.label_of[v] == NONE {
                self.introduce(v);
            }
            let lv = self.label_of[v] as u32;
            if !less {
                if let Some(best) = &self.best {
                    match lv.cmp(&best[pos]) {
                        Ordering::Greater => {
                            self.retract(frame);
                            return;
                        }
                        Ordering::Less => less = true,
                        Ordering::Equal => {}
                    }
                }
            }
            self.cur[pos] = lv;
            pos += 1;
        }
        if less || self.best.is_none() {
            if less {
                self.found_less = true;
            }
            self.best = Some(self.cur.clone());
            self.generation += 1;
            // label_of maps old element -> new label
            self.best_labels = Some(self.label_of.clone());
        } else if self.best_labels.is_none() {
            self.best_labels = Some(self.label_of.clone());
        }
        self.retract(frame);
    }
}

/// Canonical form of a valid group table.
pub fn canonical_form_of(group: &Group) -> CanonicalForm {
    let mut c = Canonizer::new(group, None, false);
    c.run();
    let labels = c.best_labels.expect("at least one labeling is explored");
    CanonicalForm(group.table().relabel(&labels))
}

/// Whether `table` is its own canonical form. Exits on the first relabeling
/// that produces a smaller table.
pub(crate) fn is_canonical(group: &Group) -> bool {
    let n = group.order();
    if n <= 2 {
        return true;
    }
    let q = least_order(group.element_orders()) as usize;
    let table = group.table();
    for i in 1..q {
        let row = canonical_power_row(n, q, i);
        if (0..n).any(|j| table.get(i, j) != row[j] as usize) {
            return false;
        }
    }
    let own: Vec<u32> = (q..n).flat_map(|i| (1..n).map(move |j| table.get(i, j) as u32)).collect();
    let mut c = Canonizer::new(group, Some(own), true);
    c.run();
    !c.found_less
}

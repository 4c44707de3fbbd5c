//! Incremental row echelon form over `F_p` with `u32` residues.
//!
//! Rows are inserted one at a time; each insertion reports whether the row was
//! independent of the rows seen so far, so ranks of large generated matrices can be
//! taken without materializing them.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::field::inv_mod;

#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    cols: usize,
    // pivot row (normalized to leading 1) per pivot column
    pivots: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl Echelon {
    pub fn new(p: u32, cols: usize) -> Self {
        Echelon {
            p: p as u64,
            cols,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.cols
    }

    /// Inserts a dense row; returns `true` if it increased the rank.
    pub fn insert(&mut self, mut row: Vec<u32>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        if self.is_full() {
            return false;
        }
        let p = self.p;
        for c in 0..self.cols {
            let v = row[c] as u64 % p;
            if v == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(piv) => {
                    let f = p - v;
                    for j in c..self.cols {
                        let pj = piv[j];
                        if pj != 0 {
                            row[j] = ((row[j] as u64 + f * pj as u64) % p) as u32;
                        }
                    }
                }
                None => {
                    let inv = inv_mod(v, p);
                    for e in row.iter_mut().skip(c) {
                        *e = (*e as u64 * inv % p) as u32;
                    }
                    self.pivots[c] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    /// Whether `row` lies in the current span (the echelon is left unchanged).
    pub fn contains(&self, row: &[u32]) -> bool {
        let mut probe = self.clone();
        !probe.insert(row.to_vec())
    }

    /// Inserts sparse `(column, residue)` entries.
    pub fn insert_sparse<I: IntoIterator<Item = (usize, u32)>>(&mut self, entries: I) -> bool {
        let mut row = vec![0u32; self.cols];
        for (c, v) in entries {
            row[c] = ((row[c] as u64 + v as u64) % self.p) as u32;
        }
        self.insert(row)
    }
}

/// Rank of a dense matrix of residues mod `p`.
pub fn rank_mod(p: u32, rows: &[Vec<u32>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut e = Echelon::new(p, cols);
    for r in rows {
        e.insert(r.clone());
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

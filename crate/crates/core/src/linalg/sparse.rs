//! Online sparse row reduction for large exact linear systems.
//!
//! Rows are inserted one at a time and reduced against the current pivots,
//! so only an echelon basis of the row space is ever stored. Column
//! `ncols` (one past the last unknown) carries the right-hand side.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::scalar::Scalar;

pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Debug)]
pub struct Cancelled;

pub struct SparseEchelon {
    ncols: usize,
    // pivot column -> row with leading entry 1 at that column
    rows: HashMap<usize, SparseRow>,
    inconsistent: bool,
}

fn axpy(row: &SparseRow, c: &Scalar, other: &SparseRow) -> SparseRow {
    // row - c * other, both sorted by column
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = other.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -&(c * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(c * &other[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> SparseEchelon {
        SparseEchelon { ncols, rows: HashMap::new(), inconsistent: false }
    }

    pub fn rank(&self) -> usize {
        self.rows.keys().filter(|&&c| c < self.ncols).count()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Inserts a row given as (column, value) pairs, sorted or not.
    pub fn push(&mut self, mut row: SparseRow) {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|e| e.0);
        loop {
            let Some((lead, _)) = row.first() else { return };
            let lead = *lead;
            match self.rows.get(&lead) {
                Some(p) => {
                    let c = row[0].1.clone();
                    row = axpy(&row, &c, p);
                }
                None => {
                    let inv = row[0].1.inv().expect("nonzero lead");
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    if lead == self.ncols {
                        self.inconsistent = true;
                    }
                    self.rows.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Reduces every stored row to reduced row-echelon form.
    fn reduce(&mut self) -> Vec<usize> {
        let mut pivots: Vec<usize> = self.rows.keys().copied().filter(|&c| c < self.ncols).collect();
        pivots.sort_unstable();
        for &p in pivots.iter().rev() {
            let mut row = self.rows.remove(&p).expect("pivot row");
            let mut k = 1;
            while k < row.len() {
                let col = row[k].0;
                if col != p && col < self.ncols {
                    if let Some(q) = self.rows.get(&col) {
                        let c = row[k].1.clone();
                        row = axpy(&row, &c, q);
                        continue;
                    }
                }
                k += 1;
            }
            self.rows.insert(p, row);
        }
        pivots
    }

    /// Kernel basis (one vector per free column) and, when the system is
    /// consistent, a particular solution with free variables set to zero.
    pub fn finish(mut self) -> (Vec<Vec<Scalar>>, Option<Vec<Scalar>>) {
        let pivots = self.reduce();
        let n = self.ncols;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; n];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut index_of_free = vec![usize::MAX; n];
        for j in 0..n {
            if !is_pivot[j] {
                index_of_free[j] = basis.len();
                let mut x = vec![Scalar::zero(); n];
                x[j] = Scalar::one();
                basis.push(x);
            }
        }
        let mut particular = if self.inconsistent { None } else { Some(vec![Scalar::zero(); n]) };
        for &p in &pivots {
            for (col, v) in &self.rows[&p] {
                if *col == p {
                    continue;
                }
                if *col == n {
                    if let Some(x) = particular.as_mut() {
                        x[p] = v.clone();
                    }
                } else {
                    basis[index_of_free[*col]][p] = -v;
                }
            }
        }
        (basis, particular)
    }
}

/// Row-reduces `rows`, honouring an optional cancellation flag.
pub fn reduce_rows(
    ncols: usize,
    rows: impl IntoIterator<Item = SparseRow>,
    cancel: Option<&AtomicBool>,
) -> Result<SparseEchelon, Cancelled> {
    let mut ech = SparseEchelon::new(ncols);
    for (k, r) in rows.into_iter().enumerate() {
        if k % 64 == 0 && cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Err(Cancelled);
        }
        ech.push(r);
        if ech.is_inconsistent() {
            break;
        }
    }
    Ok(ech)
}

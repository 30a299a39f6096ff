//! Linear systems whose unknowns are coefficient vectors of polynomials.
//!
//! Each unknown polynomial ("block") is spanned by a list of words; every
//! equation is a polynomial identity `Σ c·L·X·R (+ t-multiples) = target`,
//! which is expanded word by word into scalar (or `k[t]`) rows.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::AtomicBool;

use crate::linalg::sparse::{reduce_rows, Cancelled, SparseEchelon, SparseRow};
use crate::linalg::{Matrix, PolyMatrix};
use crate::poly::NcPoly;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use crate::word::Word;

#[derive(Clone, Debug, Default)]
pub struct PolySystem {
    blocks: Vec<Vec<Word>>,
    offsets: Vec<usize>,
    ncols: usize,
    // row word -> column -> coefficients by power of t
    rows: HashMap<Word, BTreeMap<usize, Vec<Scalar>>>,
    target: NcPoly,
}

/// Solution space of a [`PolySystem`].
#[derive(Clone, Debug)]
pub struct SystemSolution {
    pub particular: Option<Vec<Scalar>>,
    pub nullspace: Vec<Vec<Scalar>>,
}

impl PolySystem {
    pub fn new() -> PolySystem {
        PolySystem::default()
    }

    /// Adds an unknown polynomial spanned by `words`; returns its block index.
    pub fn add_block(&mut self, words: Vec<Word>) -> usize {
        self.offsets.push(self.ncols);
        self.ncols += words.len();
        self.blocks.push(words);
        self.blocks.len() - 1
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn block_words(&self, b: usize) -> &[Word] {
        &self.blocks[b]
    }

    /// Adds `c · left · X_block · right` to the left-hand side.
    pub fn add_term(&mut self, block: usize, left: &NcPoly, right: &NcPoly, c: &Scalar) {
        self.add_term_t(block, left, right, c, 0);
    }

    /// Adds `c · t^k · left · X_block · right`.
    pub fn add_term_t(&mut self, block: usize, left: &NcPoly, right: &NcPoly, c: &Scalar, k: usize) {
        let off = self.offsets[block];
        for (idx, w) in self.blocks[block].iter().enumerate() {
            for (lw, lc) in left.terms() {
                let lw_w = lw.concat(w);
                let lcc = lc * c;
                for (rw, rc) in right.terms() {
                    let row = self.rows.entry(lw_w.concat(rw)).or_default();
                    let entry = row.entry(off + idx).or_default();
                    if entry.len() <= k {
                        entry.resize(k + 1, Scalar::zero());
                    }
                    entry[k] += &(&lcc * rc);
                }
            }
        }
    }

    pub fn set_target(&mut self, target: NcPoly) {
        self.target = target;
    }

    fn row_words(&self) -> Vec<Word> {
        let mut words: Vec<Word> = self.rows.keys().cloned().collect();
        for (w, _) in self.target.terms() {
            if !self.rows.contains_key(w) {
                words.push(w.clone());
            }
        }
        words.sort_unstable_by(|a, b| b.cmp(a));
        words
    }

    /// Scalar rows with `t` specialised to `lambda` (ignored for plain systems).
    fn sparse_rows(&self, lambda: &Scalar, keep: &dyn Fn(&Word) -> bool) -> Vec<SparseRow> {
        self.row_words()
            .into_iter()
            .filter(|w| keep(w))
            .map(|w| {
                let mut row: SparseRow = Vec::new();
                if let Some(entries) = self.rows.get(&w) {
                    for (&col, coeffs) in entries {
                        let v = UniPoly::from_coeffs(coeffs.clone()).eval(lambda);
                        if !v.is_zero() {
                            row.push((col, v));
                        }
                    }
                }
                let rhs = self.target.coeff(&w);
                if !rhs.is_zero() {
                    row.push((self.ncols, rhs));
                }
                row
            })
            .collect()
    }

    /// Row-reduced form with `t = lambda`.
    pub fn echelon_at(&self, lambda: &Scalar, cancel: Option<&AtomicBool>) -> Result<SparseEchelon, Cancelled> {
        reduce_rows(self.ncols, self.sparse_rows(lambda, &|_| true), cancel)
    }

    /// Solves only the equations whose row word satisfies `keep`.
    pub fn solve_rows_where(&self, keep: &dyn Fn(&Word) -> bool) -> SystemSolution {
        let ech = reduce_rows(self.ncols, self.sparse_rows(&Scalar::zero(), keep), None).expect("not cancelled");
        let (nullspace, particular) = ech.finish();
        SystemSolution { particular, nullspace }
    }

    pub fn solve(&self) -> SystemSolution {
        self.solve_cancellable(None).expect("not cancelled")
    }

    pub fn solve_cancellable(&self, cancel: Option<&AtomicBool>) -> Result<SystemSolution, Cancelled> {
        let ech = self.echelon_at(&Scalar::zero(), cancel)?;
        let (nullspace, particular) = ech.finish();
        Ok(SystemSolution { particular, nullspace })
    }

    /// Dense coefficient matrix over `k[t]` (homogeneous part only).
    pub fn poly_matrix(&self) -> PolyMatrix {
        let words = self.row_words();
        let mut m = PolyMatrix::zeros(words.len(), self.ncols);
        for (i, w) in words.iter().enumerate() {
            if let Some(entries) = self.rows.get(w) {
                for (&col, coeffs) in entries {
                    m[(i, col)] = UniPoly::from_coeffs(coeffs.clone());
                }
            }
        }
        m
    }

    /// Dense coefficient matrix with `t = lambda`.
    pub fn matrix_at(&self, lambda: &Scalar) -> Matrix {
        let words = self.row_words();
        let mut m = Matrix::zeros(words.len(), self.ncols);
        for (i, w) in words.iter().enumerate() {
            if let Some(entries) = self.rows.get(w) {
                for (&col, coeffs) in entries {
                    m[(i, col)] = UniPoly::from_coeffs(coeffs.clone()).eval(lambda);
                }
            }
        }
        m
    }

    pub fn num_rows(&self) -> usize {
        self.row_words().len()
    }

    /// Splits a solution vector into one polynomial per block.
    pub fn reconstruct(&self, sol: &[Scalar]) -> Vec<NcPoly> {
        self.blocks
            .iter()
            .zip(&self.offsets)
            .map(|(words, &off)| {
                NcPoly::from_terms(words.iter().enumerate().map(|(k, w)| (w.clone(), sol[off + k].clone())))
            })
            .collect()
    }

    /// Splits a `k[t]` solution vector into per-block lists of `t`-coefficients.
    pub fn reconstruct_kt(&self, sol: &[UniPoly]) -> Vec<Vec<NcPoly>> {
        let tdeg = sol.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
        self.blocks
            .iter()
            .zip(&self.offsets)
            .map(|(words, &off)| {
                (0..=tdeg)
                    .map(|k| NcPoly::from_terms(words.iter().enumerate().map(|(j, w)| (w.clone(), sol[off + j].coeff(k)))))
                    .collect()
            })
            .collect()
    }
}

/// Words over `letters` up to a given length, as a block basis; an empty
/// basis when `max_len` is negative.
pub fn basis(letters: &[crate::word::Letter], max_len: isize) -> Vec<Word> {
    if max_len < 0 {
        return Vec::new();
    }
    Word::all_over_up_to(letters, max_len as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_solve_comaximal() {
        // (xy+1)u + x v = 1 with deg u < 1, deg v < 2
        let x = NcPoly::var(0);
        let y = NcPoly::var(1);
        let f = &(&x * &y) + &NcPoly::one();
        let mut sys = PolySystem::new();
        let u = sys.add_block(basis(&crate::poly::alphabet(&[&f, &x]), 0));
        let v = sys.add_block(basis(&crate::poly::alphabet(&[&f, &x]), 1));
        sys.add_term(u, &f, &NcPoly::one(), &Scalar::one());
        sys.add_term(v, &x, &NcPoly::one(), &Scalar::one());
        sys.set_target(NcPoly::one());
        let sol = sys.solve();
        let parts = sys.reconstruct(sol.particular.as_ref().unwrap());
        assert_eq!(parts[0], NcPoly::one());
        assert_eq!(parts[1], -&y);
    }
}

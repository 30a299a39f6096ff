//! Matrices over `k[t]`, with rank and kernel computed over the fraction field `k(t)`.

use std::ops::{Index, IndexMut};

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<UniPoly>,
}

/// Specialisations `t = λ` at which the rank drops below the generic rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropSet {
    /// Rational values where the rank provably drops.
    pub rational: Vec<Scalar>,
    /// Remaining factor of the final pivot (no rational roots found); its
    /// roots, if any, are the only other candidates.
    pub residual: UniPoly,
}

#[derive(Clone, Debug)]
pub struct KtRank {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub drop: DropSet,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, data: vec![UniPoly::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<UniPoly>>) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        PolyMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// `M0 + t·M1`.
    pub fn linear(m0: &Matrix, m1: &Matrix) -> PolyMatrix {
        assert_eq!((m0.nrows(), m0.ncols()), (m1.nrows(), m1.ncols()));
        let mut p = PolyMatrix::zeros(m0.nrows(), m0.ncols());
        for i in 0..m0.nrows() {
            for j in 0..m0.ncols() {
                p[(i, j)] = UniPoly::from_coeffs(vec![m0[(i, j)].clone(), m1[(i, j)].clone()]);
            }
        }
        p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn specialize(&self, lambda: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].eval(lambda))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Fraction-free Gauss–Jordan elimination (Bareiss/Montante). After the
    /// call, pivot row `r` has the final pivot value at column `pivots[r]`
    /// and zeros at every other pivot column. Returns the pivot columns and
    /// the final pivot (a maximal nonvanishing minor).
    fn gauss_jordan(&mut self) -> (Vec<usize>, UniPoly) {
        let mut prev = UniPoly::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // lowest-degree nonzero entry keeps intermediate degrees small
            let Some(p) = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_zero())
                .min_by_key(|&i| self[(i, c)].degree())
            else {
                continue;
            };
            self.swap_rows(p, r);
            let piv = self[(r, c)].clone();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in 0..self.cols {
                    if j == c {
                        continue;
                    }
                    let v = &(&piv * &self[(i, j)]) - &(&f * &self[(r, j)]);
                    self[(i, j)] = v.div_exact(&prev);
                }
                self[(i, c)] = UniPoly::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (pivots, prev)
    }

    /// Rank over `k(t)` and the set of specialisations where it drops.
    pub fn rank_over_kt(&self) -> KtRank {
        let mut a = self.clone();
        let (pivots, last) = a.gauss_jordan();
        let rank = pivots.len();
        let mut rational = Vec::new();
        let mut residual = last.monic();
        if rank > 0 {
            let roots = last.rational_roots();
            for lam in &roots.roots {
                while residual.root_multiplicity(lam) > 0 {
                    residual = residual.div_exact(&UniPoly::linear_root(lam));
                }
                if self.specialize(lam).rank() < rank {
                    rational.push(lam.clone());
                }
            }
        }
        KtRank { rank, pivot_cols: pivots, drop: DropSet { rational, residual } }
    }

    /// A basis of the kernel over `k(t)`, with polynomial entries.
    pub fn nullspace_over_kt(&self) -> Vec<Vec<UniPoly>> {
        let mut a = self.clone();
        let (pivots, last) = a.gauss_jordan();
        (0..self.cols)
            .filter(|j| !pivots.contains(j))
            .map(|j| {
                let mut x = vec![UniPoly::zero(); self.cols];
                x[j] = last.clone();
                for (r, &c) in pivots.iter().enumerate() {
                    x[c] = -&a[(r, j)];
                }
                x
            })
            .collect()
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = UniPoly;
    fn index(&self, (i, j): (usize, usize)) -> &UniPoly {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut UniPoly {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_t_one() {
        let m = PolyMatrix::from_rows(vec![
            vec![UniPoly::t(), UniPoly::zero()],
            vec![UniPoly::zero(), UniPoly::one()],
        ]);
        let r = m.rank_over_kt();
        assert_eq!(r.rank, 2);
        assert_eq!(r.drop.rational, vec![Scalar::zero()]);
    }

    #[test]
    fn kernel_over_kt() {
        // rows (t, 1, 0), (1, t, 1): kernel spanned by a polynomial vector
        let m = PolyMatrix::from_rows(vec![
            vec![UniPoly::t(), UniPoly::one(), UniPoly::zero()],
            vec![UniPoly::one(), UniPoly::t(), UniPoly::one()],
        ]);
        let ker = m.nullspace_over_kt();
        assert_eq!(ker.len(), 1);
        for i in 0..2 {
            let mut s = UniPoly::zero();
            for j in 0..3 {
                s = &s + &(&m[(i, j)] * &ker[0][j]);
            }
            assert!(s.is_zero());
        }
    }
}

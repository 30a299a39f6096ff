//! Dense matrices over exact scalars with fraction-free elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of solving `M x = rhs`.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::scalar(n, &Scalar::one())
    }

    pub fn scalar(n: usize, c: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r, c) = (other.rows, other.cols);
        Matrix::from_fn(self.rows * r, self.cols * c, |i, j| &self[(i / r, j / c)] * &other[(i % r, j % c)])
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                let mut s = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    /// Fraction-free (Bareiss) forward elimination. Rows are first scaled to
    /// clear rational denominators, which changes neither rank nor kernel.
    /// Returns the echelon form, its pivot columns, and the row permutation sign.
    fn bareiss(&self) -> (Matrix, Vec<usize>, bool) {
        let mut a = self.clone();
        for i in 0..a.rows {
            let den = a.row(i).iter().fold(BigInt::one(), |acc, s| acc.lcm(&s.denominator_lcm()));
            if !den.is_one() {
                let d = Scalar::from_rational(den.into());
                for j in 0..a.cols {
                    a[(i, j)] = &a[(i, j)] * &d;
                }
            }
        }
        let mut pivots = Vec::new();
        let mut prev = Scalar::one();
        let mut r = 0;
        let mut flipped = false;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap_rows(p, r);
                flipped = !flipped;
            }
            let piv = a[(r, c)].clone();
            for i in r + 1..a.rows {
                let f = a[(i, c)].clone();
                for j in c + 1..a.cols {
                    let v = &(&piv * &a[(i, j)]) - &(&f * &a[(r, j)]);
                    a[(i, j)] = if prev.is_one() { v } else { &v / &prev };
                }
                a[(i, c)] = Scalar::zero();
            }
            // entries left of c in rows below are already zero
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (a, pivots, flipped)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        // Bareiss without denominator clearing so the last pivot is the determinant
        let mut a = self.clone();
        let n = a.rows;
        let mut prev = Scalar::one();
        let mut sign = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Scalar::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[(k, k)] * &a[(i, j)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = &v / &prev;
                }
                a[(i, k)] = Scalar::zero();
            }
            prev = a[(k, k)].clone();
        }
        if sign {
            -prev
        } else {
            prev
        }
    }

    /// Back-substitution on an echelon form: solves `U x = b` with the given
    /// free-variable values already placed in `x`.
    fn back_substitute(u: &Matrix, pivots: &[usize], b: &[Scalar], x: &mut [Scalar]) {
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut s = b[r].clone();
            for j in c + 1..u.cols {
                if !u[(r, j)].is_zero() && !x[j].is_zero() {
                    s -= &(&u[(r, j)] * &x[j]);
                }
            }
            x[c] = &s / &u[(r, c)];
        }
    }

    /// Rank and a basis of the right kernel.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (u, pivots, _) = self.bareiss();
        let zeros = vec![Scalar::zero(); pivots.len()];
        let basis = (0..self.cols)
            .filter(|j| !pivots.contains(j))
            .map(|j| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[j] = Scalar::one();
                Matrix::back_substitute(&u, &pivots, &zeros, &mut x);
                x
            })
            .collect();
        (pivots.len(), basis)
    }

    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.rank_nullspace().1
    }

    /// Solves `self · x = rhs` exactly; `None` when inconsistent.
    pub fn solve_affine(&self, rhs: &[Scalar]) -> Option<AffineSolution> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let (u, pivots, _) = aug.bareiss();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let b: Vec<Scalar> = (0..pivots.len()).map(|r| u[(r, self.cols)].clone()).collect();
        let mut particular = vec![Scalar::zero(); self.cols + 1];
        Matrix::back_substitute(&u, &pivots, &b, &mut particular);
        particular.pop();
        let u0 = Matrix::from_fn(u.rows, self.cols, |i, j| u[(i, j)].clone());
        let zeros = vec![Scalar::zero(); pivots.len()];
        let nullspace = (0..self.cols)
            .filter(|j| !pivots.contains(j))
            .map(|j| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[j] = Scalar::one();
                Matrix::back_substitute(&u0, &pivots, &zeros, &mut x);
                x
            })
            .collect();
        Some(AffineSolution { particular, nullspace })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let e: Vec<Scalar> = (0..n).map(|i| if i == k { Scalar::one() } else { Scalar::zero() }).collect();
            let sol = self.solve_affine(&e)?;
            if !sol.nullspace.is_empty() {
                return None;
            }
            cols.push(sol.particular);
        }
        Some(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
                format!("({})", r.join(", "))
            })
            .collect();
        write!(f, "({})", rows.join(", "))
    }
}

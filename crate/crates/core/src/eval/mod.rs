//! Evaluation of polynomials on matrix tuples, and randomized refuters.

mod charpoly;
mod refute;
mod sample;

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::NcPoly;
use crate::scalar::Scalar;
use crate::word::{Letter, Word};

pub use charpoly::{char_poly, jordan_profile, poly_at_matrix, JordanProfile};
pub use refute::{
    inner_rank_lower_bound, norm_gap, norms, refute, Discrepancy, RefutationWitness, RefuteConfig, WitnessKind,
};
pub use sample::{bound_for_index, sample_tuple, structured_tuples, tuple_rng, Sampler};

/// A point `X = (X₁, …, Xₙ)` of square matrices of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    size: usize,
    matrices: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<Matrix>) -> Result<MatrixTuple> {
        let size = matrices.first().map_or(0, Matrix::nrows);
        for m in &matrices {
            if m.nrows() != size || m.ncols() != size {
                return Err(Error::SizeMismatch(format!(
                    "expected {size}x{size} matrices, found {}x{}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(MatrixTuple { size, matrices })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn direct_sum(&self, other: &MatrixTuple) -> MatrixTuple {
        assert_eq!(self.len(), other.len(), "tuple arity");
        MatrixTuple {
            size: self.size + other.size,
            matrices: self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// `S⁻¹ X S`, componentwise.
    pub fn conjugate(&self, s: &Matrix, s_inv: &Matrix) -> MatrixTuple {
        MatrixTuple { size: self.size, matrices: self.matrices.iter().map(|m| &(s_inv * m) * s).collect() }
    }

    fn letter_matrix(&self, l: Letter) -> Matrix {
        let m = &self.matrices[l.var()];
        if l.is_star() {
            m.conj_transpose()
        } else {
            m.clone()
        }
    }

    pub fn to_complex(&self) -> Vec<DMatrix<Complex64>> {
        self.matrices.iter().map(to_complex_matrix).collect()
    }
}

pub fn to_complex_matrix(m: &Matrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].to_complex())
}

/// `f(X)`, exactly.
pub fn evaluate(f: &NcPoly, x: &MatrixTuple) -> Result<Matrix> {
    if f.arity() > x.len() {
        return Err(Error::SizeMismatch(format!("polynomial in {} variables, tuple of {}", f.arity(), x.len())));
    }
    let k = x.size();
    let letters: HashMap<Letter, Matrix> = f
        .terms()
        .flat_map(|(w, _)| w.letters().iter().copied())
        .map(|l| (l, x.letter_matrix(l)))
        .collect();
    let mut cache: HashMap<Word, Matrix> = HashMap::new();
    let mut out = Matrix::zeros(k, k);
    for (w, c) in f.terms() {
        if w.is_empty() {
            out = &out + &Matrix::scalar(k, c);
            continue;
        }
        let m = word_value(w, &letters, &mut cache);
        out = &out + &m.scale(c);
    }
    Ok(out)
}

fn word_value(w: &Word, letters: &HashMap<Letter, Matrix>, cache: &mut HashMap<Word, Matrix>) -> Matrix {
    if w.len() == 1 {
        return letters[&w.letters()[0]].clone();
    }
    if let Some(m) = cache.get(w) {
        return m.clone();
    }
    let head = word_value(&w.prefix(w.len() - 1), letters, cache);
    let m = &head * &letters[&w.letters()[w.len() - 1]];
    cache.insert(w.clone(), m.clone());
    m
}

/// Evaluates a matrix of polynomials as a block matrix.
pub fn evaluate_matrix(entries: &[Vec<NcPoly>], x: &MatrixTuple) -> Result<Matrix> {
    let k = x.size();
    let rows = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    let mut out = Matrix::zeros(rows * k, cols * k);
    for (i, row) in entries.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            out.set_block(i * k, j * k, &evaluate(f, x)?);
        }
    }
    Ok(out)
}

/// `f(X)` in double precision complex arithmetic.
pub fn evaluate_complex(f: &NcPoly, x: &[DMatrix<Complex64>]) -> Result<DMatrix<Complex64>> {
    if f.arity() > x.len() {
        return Err(Error::SizeMismatch(format!("polynomial in {} variables, tuple of {}", f.arity(), x.len())));
    }
    let k = x.first().map_or(0, |m| m.nrows());
    let mut out = DMatrix::zeros(k, k);
    for (w, c) in f.terms() {
        let mut m = DMatrix::identity(k, k);
        for l in w.letters() {
            let a = &x[l.var()];
            m = if l.is_star() { m * a.adjoint() } else { m * a };
        }
        out += m * c.to_complex();
    }
    Ok(out)
}

/// Exact Frobenius norm squared, `tr(M M*)`.
pub fn frobenius_sq(m: &Matrix) -> Scalar {
    m.entries().iter().fold(Scalar::zero(), |acc, e| &acc + &(e * &e.conj()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::Context;

    fn p(s: &str) -> NcPoly {
        Context::default().parse(s).unwrap()
    }

    #[test]
    fn matrix_unit_pair() {
        let x = MatrixTuple::new(vec![Matrix::from_ints(&[&[1, 0], &[0, 0]]), Matrix::from_ints(&[&[0, 1], &[0, 0]])])
            .unwrap();
        assert_eq!(evaluate(&p("x*y + 1"), &x).unwrap(), Matrix::from_ints(&[&[1, 1], &[0, 1]]));
        assert!(evaluate(&p("y*x"), &x).unwrap().is_zero());
        assert!(evaluate(&Context::with_arity(3).parse("x*y*z").unwrap(), &x).is_err());
    }

    #[test]
    fn stars_use_conjugate_transpose() {
        let ctx = Context::new(vec!["x".into()], crate::scalar::Field::gaussian());
        let i = Scalar::imaginary_unit();
        let x = MatrixTuple::new(vec![Matrix::from_rows(vec![
            vec![Scalar::zero(), i.clone()],
            vec![Scalar::zero(), Scalar::zero()],
        ])])
        .unwrap();
        let v = evaluate(&ctx.parse("x*x* ").unwrap(), &x).unwrap();
        assert_eq!(v, Matrix::from_ints(&[&[1, 0], &[0, 0]]));
        let c = evaluate_complex(&ctx.parse("x x*").unwrap(), &x.to_complex()).unwrap();
        assert!((c[(0, 0)].re - 1.0).abs() < 1e-12);
    }
}

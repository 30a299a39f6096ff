//! Characteristic polynomials and Jordan-structure profiles.

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

/// `det(tI − M)` by Berkowitz's division-free algorithm.
pub fn char_poly(m: &Matrix) -> UniPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.nrows();
    // coefficients from the leading power down
    let mut c = vec![Scalar::one()];
    for r in 0..n {
        // A_{r+1} = [[A_r, S], [R, a]]
        let a = m[(r, r)].clone();
        let s: Vec<Scalar> = (0..r).map(|i| m[(i, r)].clone()).collect();
        let row: Vec<Scalar> = (0..r).map(|j| m[(r, j)].clone()).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(Scalar::one());
        toeplitz.push(-&a);
        let mut v = s;
        for _ in 0..r {
            let dot = row.iter().zip(&v).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y));
            toeplitz.push(-&dot);
            v = (0..r)
                .map(|i| (0..r).fold(Scalar::zero(), |acc, j| &acc + &(&m[(i, j)] * &v[j])))
                .collect();
        }
        let next: Vec<Scalar> = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(Scalar::zero(), |acc, j| &acc + &(&toeplitz[i - j] * &c[j])))
            .collect();
        c = next;
    }
    c.reverse();
    UniPoly::from_coeffs(c)
}

/// `p(M)` by Horner's rule.
pub fn poly_at_matrix(p: &UniPoly, m: &Matrix) -> Matrix {
    let n = m.nrows();
    let mut acc = Matrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * m) + &Matrix::scalar(n, c);
    }
    acc
}

/// Jordan structure of a matrix, as far as it can be read off exactly.
///
/// For each rational eigenvalue `λ` the ranks of `(M − λ)^j` up to
/// stabilization. The remaining spectrum is grouped by the squarefree
/// factors of the characteristic polynomial (one per multiplicity), each
/// with the rank sequence of its powers evaluated at `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanProfile {
    pub char_poly: UniPoly,
    pub eigen: Vec<(Scalar, Vec<usize>)>,
    pub clusters: Vec<(UniPoly, Vec<usize>)>,
}

impl JordanProfile {
    /// True when every eigenvalue was found exactly.
    pub fn is_complete(&self) -> bool {
        self.clusters.is_empty()
    }
}

fn rank_sequence(a: &Matrix) -> Vec<usize> {
    let mut seq = vec![a.rank()];
    let mut p = a.clone();
    loop {
        p = &p * a;
        let r = p.rank();
        if r == *seq.last().expect("nonempty") {
            return seq;
        }
        seq.push(r);
    }
}

pub fn jordan_profile(m: &Matrix) -> JordanProfile {
    let n = m.nrows();
    let chi = char_poly(m);
    let roots = chi.rational_roots();
    let mut residual = chi.clone();
    let mut eigen = Vec::new();
    for lam in &roots.roots {
        while residual.root_multiplicity(lam) > 0 {
            residual = residual.div_exact(&UniPoly::linear_root(lam));
        }
        let shifted = m - &Matrix::scalar(n, lam);
        eigen.push((lam.clone(), rank_sequence(&shifted)));
    }
    let clusters = if residual.is_constant() {
        Vec::new()
    } else {
        residual
            .squarefree_decomposition()
            .into_iter()
            .map(|(_, s)| {
                let sm = poly_at_matrix(&s, m);
                (s, rank_sequence(&sm))
            })
            .collect()
    };
    JordanProfile { char_poly: chi, eigen, clusters }
}

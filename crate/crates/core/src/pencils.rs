//! Linear matrix pencils: evaluation, joint similarity and padding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::eval::{tuple_rng, MatrixTuple, Sampler};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

/// `A₀ + Σ Aⱼ xⱼ`, or `Σ Aⱼ xⱼ` when there is no constant part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPencil {
    pub constant: Option<Matrix>,
    pub coeffs: Vec<Matrix>,
}

impl LinearPencil {
    pub fn new(constant: Option<Matrix>, coeffs: Vec<Matrix>) -> Result<LinearPencil> {
        let d = constant.as_ref().or(coeffs.first()).map_or(0, Matrix::nrows);
        for m in constant.iter().chain(&coeffs) {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::SizeMismatch(format!("pencil coefficients must be {d}x{d}")));
            }
        }
        Ok(LinearPencil { constant, coeffs })
    }

    /// `I − Σ Aⱼ xⱼ`.
    pub fn monic(coeffs: Vec<Matrix>) -> Result<LinearPencil> {
        let d = coeffs.first().map_or(0, Matrix::nrows);
        let neg = coeffs.iter().map(|a| a.scale(&Scalar::from_int(-1))).collect();
        LinearPencil::new(Some(Matrix::identity(d)), neg)
    }

    pub fn size(&self) -> usize {
        self.constant.as_ref().or(self.coeffs.first()).map_or(0, Matrix::nrows)
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_none()
    }

    /// `A₀ x₀ + Σ Aⱼ xⱼ`, with the constant part as coefficient of a new first variable.
    pub fn homogenized(&self) -> LinearPencil {
        match &self.constant {
            None => self.clone(),
            Some(c) => LinearPencil { constant: None, coeffs: std::iter::once(c.clone()).chain(self.coeffs.clone()).collect() },
        }
    }
}

/// `A₀ ⊗ I + Σ Aⱼ ⊗ Xⱼ`.
pub fn pencil_eval(l: &LinearPencil, x: &MatrixTuple) -> Result<Matrix> {
    if x.len() != l.arity() {
        return Err(Error::SizeMismatch(format!("pencil in {} variables, tuple of {}", l.arity(), x.len())));
    }
    let k = x.size();
    let d = l.size();
    let mut out = match &l.constant {
        Some(c) => c.kron(&Matrix::identity(k)),
        None => Matrix::zeros(d * k, d * k),
    };
    for (a, m) in l.coeffs.iter().zip(x.matrices()) {
        out = &out + &a.kron(m);
    }
    Ok(out)
}

/// Lower bound for the inner rank of a pencil by random evaluation.
pub fn pencil_rank_lower_bound(l: &LinearPencil, max_size: usize, samples: usize, seed: u64) -> usize {
    let sampler = Sampler::new(l.arity(), seed);
    let mut best = 0;
    for k in 1..=max_size {
        for i in 0..samples {
            let r = pencil_eval(l, &sampler.tuple(k, i)).map(|m| m.rank()).unwrap_or(0);
            best = best.max(r.div_ceil(k));
            if best == l.size() {
                return best;
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimilarityVerdict {
    /// `P·Aⱼ = Bⱼ·P` for all `j`, `P` invertible.
    Similar(Matrix),
    NotSimilar(String),
    Undecided(String),
}

pub fn verify_similarity(a: &[Matrix], b: &[Matrix], p: &Matrix) -> bool {
    !p.det().is_zero() && a.iter().zip(b).all(|(x, y)| p * x == y * p)
}

/// Basis of `{P : P·Aⱼ = Bⱼ·P}`.
pub fn hom_space(a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    let c = a.first().map_or(0, Matrix::nrows);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (x, y) in a.iter().zip(b) {
        for r in 0..c {
            for s in 0..c {
                // (P X − Y P)[r][s] = Σ_t P[r][t] X[t][s] − Y[r][t] P[t][s]
                let mut row = vec![Scalar::zero(); c * c];
                for t in 0..c {
                    row[r * c + t] = &row[r * c + t] + &x[(t, s)];
                    row[t * c + s] = &row[t * c + s] - &y[(r, t)];
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return (0..c * c).map(|k| Matrix::from_fn(c, c, |i, j| if i * c + j == k { Scalar::one() } else { Scalar::zero() })).collect();
    }
    Matrix::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(c, c, |i, j| v[i * c + j].clone()))
        .collect()
}

fn word_invariants(a: &[Matrix], b: &[Matrix]) -> Option<String> {
    let c = a.first().map_or(0, Matrix::nrows);
    let mut words: Vec<Vec<usize>> = (0..a.len()).map(|i| vec![i]).collect();
    let mut len = 1;
    while len <= 2 {
        for w in &words {
            let eval = |m: &[Matrix]| w.iter().fold(Matrix::identity(c), |acc, &i| &acc * &m[i]);
            let (wa, wb) = (eval(a), eval(b));
            if wa.rank() != wb.rank() {
                return Some(format!("rank of word {w:?}: {} vs {}", wa.rank(), wb.rank()));
            }
            if wa.trace() != wb.trace() {
                return Some(format!("trace of word {w:?}: {} vs {}", wa.trace(), wb.trace()));
            }
        }
        words = words.iter().flat_map(|w| (0..a.len()).map(move |i| [w.clone(), vec![i]].concat())).collect();
        len += 1;
    }
    None
}

/// Decides whether `Bⱼ = P Aⱼ P⁻¹` for one invertible `P`. Two tuples are
/// similar exactly when `dim Hom(A, B) = dim End(A) = dim End(B)`; an
/// invertible `P` is then searched among random elements of `Hom(A, B)`.
pub fn joint_similarity(a: &[Matrix], b: &[Matrix], combos: usize, seed: u64) -> Result<SimilarityVerdict> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch("tuples of different length".into()));
    }
    let c = a.first().map_or(0, Matrix::nrows);
    if a.iter().chain(b).any(|m| m.nrows() != c || m.ncols() != c) {
        return Err(Error::SizeMismatch("all matrices must be square of one size".into()));
    }
    if a == b {
        return Ok(SimilarityVerdict::Similar(Matrix::identity(c)));
    }
    if let Some(reason) = word_invariants(a, b) {
        return Ok(SimilarityVerdict::NotSimilar(reason));
    }
    let hab = hom_space(a, b);
    let (daa, dbb) = (hom_space(a, a).len(), hom_space(b, b).len());
    if hab.len() != daa || daa != dbb {
        return Ok(SimilarityVerdict::NotSimilar(format!(
            "dim Hom(A,B) = {}, dim End(A) = {daa}, dim End(B) = {dbb}",
            hab.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = hab.clone();
    for _ in 0..combos {
        let mut p = Matrix::zeros(c, c);
        for h in &hab {
            p = &p + &h.scale(&Scalar::from_int(rng.gen_range(-10..=10)));
        }
        candidates.push(p);
    }
    for p in candidates {
        if verify_similarity(a, b, &p) {
            return Ok(SimilarityVerdict::Similar(p));
        }
    }
    Ok(SimilarityVerdict::Undecided("no invertible intertwiner among sampled combinations".into()))
}

/// The padded affine matrix of a full homogeneous pencil and a rectangular tuple.
#[derive(Clone, Debug)]
pub struct PaddedPencil {
    pub p: usize,
    pub q: usize,
    pub d: usize,
    pub p_tilde: usize,
    /// `Σ Aᵢ ⊗ [Tᵢ; 0 | Yᵢ]` as an affine pencil in the variables `y`.
    pub pencil: LinearPencil,
    pub kernel_dim: usize,
    pub claimed_rank: usize,
    /// Largest `⌈rank 𝓛(Y)/ℓ⌉` over the random substitutions.
    pub verified_rank: usize,
}

impl PaddedPencil {
    pub fn is_verified(&self) -> bool {
        self.verified_rank == self.claimed_rank
    }
}

fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |r, c| if r == i && c == j { Scalar::one() } else { Scalar::zero() })
}

/// `Σ Aᵢ ⊗ Mᵢ` with `Mᵢ = [Tᵢ ⊗ I_ℓ; 0 | Yᵢ]` built blockwise.
fn padded_value(a: &[Matrix], t: &[Matrix], p_tilde: usize, l: usize, y: &[Vec<Matrix>]) -> Matrix {
    let q = t[0].ncols();
    let d = a[0].nrows();
    let mut out = Matrix::zeros(d * p_tilde * l, d * p_tilde * l);
    for (i, ai) in a.iter().enumerate() {
        let mut m = Matrix::zeros(p_tilde * l, p_tilde * l);
        m.set_block(0, 0, &t[i].kron(&Matrix::identity(l)));
        for (k, yk) in y[i].iter().enumerate() {
            let (r, c) = (k / (p_tilde - q), k % (p_tilde - q));
            m.set_block(r * l, (q + c) * l, yk);
        }
        out = &out + &ai.kron(&m);
    }
    out
}

/// Builds the padded matrix and checks its inner rank from below by
/// substituting random `ℓ×ℓ` matrices, `ℓ = 1..=3`, for the `y` variables.
pub fn pad_pencil(lambda: &LinearPencil, t: &[Matrix], samples: usize, seed: u64) -> Result<PaddedPencil> {
    if !lambda.is_homogeneous() {
        return Err(Error::Precondition("pad_pencil expects a homogeneous pencil".into()));
    }
    let n = lambda.arity();
    if t.len() != n || n == 0 {
        return Err(Error::SizeMismatch(format!("pencil in {n} variables, tuple of {}", t.len())));
    }
    let (p, q) = (t[0].nrows(), t[0].ncols());
    if t.iter().any(|m| m.nrows() != p || m.ncols() != q) {
        return Err(Error::SizeMismatch("tuple matrices must share one shape".into()));
    }
    if p < q {
        return Err(Error::Precondition(format!("need p >= q, got {p}x{q}")));
    }
    let d = lambda.size();
    if pencil_rank_lower_bound(lambda, 3, 8, seed) < d {
        return Err(Error::Precondition("pencil not verified full".into()));
    }
    let p_tilde = p + (p - q) * (d.max(1) - 1);
    let a = &lambda.coeffs;
    let lt = Matrix::from_fn(d * p, d * q, |_, _| Scalar::zero());
    let lt = a.iter().zip(t).fold(lt, |acc, (ai, ti)| &acc + &ai.kron(ti));
    let kernel_dim = d * q - lt.rank();
    let claimed_rank = p_tilde * d - kernel_dim;
    let width = p_tilde - q;

    let zero_y: Vec<Vec<Matrix>> = (0..n).map(|_| vec![Matrix::zeros(1, 1); p_tilde * width]).collect();
    let constant = padded_value(a, t, p_tilde, 1, &zero_y);
    let mut coeffs = Vec::with_capacity(n * p_tilde * width);
    for ai in a {
        for r in 0..p_tilde {
            for c in 0..width {
                let mut m = Matrix::zeros(p_tilde, p_tilde);
                m.set_block(0, 0, &unit(p_tilde, p_tilde, r, q + c));
                coeffs.push(ai.kron(&m));
            }
        }
    }
    let pencil = LinearPencil::new(Some(constant), coeffs)?;

    let mut verified = 0;
    'outer: for l in 1..=3 {
        for s in 0..samples {
            let mut rng = tuple_rng(seed, l, s);
            let y: Vec<Vec<Matrix>> = (0..n)
                .map(|_| {
                    (0..p_tilde * width)
                        .map(|_| {
                            Matrix::from_rows(
                                (0..l).map(|_| (0..l).map(|_| Scalar::from_int(rng.gen_range(-10..=10))).collect()).collect(),
                            )
                        })
                        .collect()
                })
                .collect();
            let r = padded_value(a, t, p_tilde, l, &y).rank();
            verified = verified.max(r.div_ceil(l));
            if verified >= claimed_rank {
                break 'outer;
            }
        }
    }
    Ok(PaddedPencil { p, q, d, p_tilde, pencil, kernel_dim, claimed_rank, verified_rank: verified })
}

/// Random tuple of `n` integer `c×c` matrices.
pub fn random_matrices(n: usize, c: usize, bound: i64, seed: u64) -> Vec<Matrix> {
    crate::eval::sample_tuple(c, n, &Field::rationals(), bound, seed).matrices().to_vec()
}

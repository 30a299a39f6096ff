//! Reproducible random and structured evaluation points.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::MatrixTuple;
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

/// Independent RNG stream for sample `index` at matrix size `size`.
pub fn tuple_rng(seed: u64, size: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((size as u64) << 40) ^ index as u64);
    rng
}

/// Entry bound used for the `index`-th sample: tiny entries first, since
/// structured witnesses tend to have them.
pub fn bound_for_index(index: usize, bound: i64) -> i64 {
    match index {
        0 | 1 => 1.min(bound),
        2 => 2.min(bound),
        3 => 3.min(bound),
        _ => bound,
    }
}

#[derive(Clone, Debug)]
pub struct Sampler {
    pub nvars: usize,
    /// Entries are Gaussian integers when the field contains `i`, integers otherwise.
    pub field: Field,
    pub bound: i64,
    pub hermitian: bool,
    pub seed: u64,
}

impl Sampler {
    pub fn new(nvars: usize, seed: u64) -> Sampler {
        Sampler { nvars, field: Field::rationals(), bound: 10, hermitian: false, seed }
    }

    fn entry(&self, rng: &mut ChaCha8Rng, bound: i64, real: bool) -> Scalar {
        let re = rng.gen_range(-bound..=bound);
        if self.field.has_imaginary_unit() && !real {
            let im = rng.gen_range(-bound..=bound);
            Scalar::gaussian(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
        } else {
            Scalar::from_int(re)
        }
    }

    pub fn tuple_with_bound(&self, size: usize, index: usize, bound: i64) -> MatrixTuple {
        let mut rng = tuple_rng(self.seed, size, index);
        let matrices = (0..self.nvars)
            .map(|_| {
                let mut m = Matrix::zeros(size, size);
                for i in 0..size {
                    for j in 0..size {
                        if self.hermitian {
                            if j < i {
                                continue;
                            }
                            let e = self.entry(&mut rng, bound, i == j);
                            m[(j, i)] = e.conj();
                            m[(i, j)] = e;
                        } else {
                            m[(i, j)] = self.entry(&mut rng, bound, false);
                        }
                    }
                }
                m
            })
            .collect();
        MatrixTuple::new(matrices).expect("square")
    }

    pub fn tuple(&self, size: usize, index: usize) -> MatrixTuple {
        self.tuple_with_bound(size, index, self.bound)
    }
}

/// One random tuple of `nvars` integer matrices with entries in `[-bound, bound]`.
pub fn sample_tuple(size: usize, nvars: usize, field: &Field, bound: i64, seed: u64) -> MatrixTuple {
    Sampler { nvars, field: field.clone(), bound, hermitian: false, seed }.tuple(size, 0)
}

/// All 2×2 tuples built from a small family of sparse matrices, with the
/// first variable varying slowest. Empty for more than four variables.
pub fn structured_tuples(nvars: usize) -> Vec<MatrixTuple> {
    if nvars == 0 || nvars > 4 {
        return Vec::new();
    }
    let family = [
        Matrix::from_ints(&[&[0, 0], &[0, 0]]),
        Matrix::from_ints(&[&[1, 0], &[0, 1]]),
        Matrix::from_ints(&[&[1, 0], &[0, 0]]),
        Matrix::from_ints(&[&[0, 1], &[0, 0]]),
        Matrix::from_ints(&[&[0, 0], &[1, 0]]),
        Matrix::from_ints(&[&[0, 0], &[0, 1]]),
        Matrix::from_ints(&[&[0, 1], &[1, 0]]),
        Matrix::from_ints(&[&[0, 1], &[-1, 0]]),
    ];
    let total = family.len().pow(nvars as u32);
    (0..total)
        .map(|mut code| {
            let mut idx = vec![0; nvars];
            for slot in idx.iter_mut().rev() {
                *slot = code % family.len();
                code /= family.len();
            }
            MatrixTuple::new(idx.into_iter().map(|i| family[i].clone()).collect()).expect("square")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let a = sample_tuple(3, 2, &Field::rationals(), 10, 7);
        assert_eq!(a, sample_tuple(3, 2, &Field::rationals(), 10, 7));
        assert_ne!(a, sample_tuple(3, 2, &Field::rationals(), 10, 8));
    }

    #[test]
    fn hermitian_variant() {
        let s = Sampler { nvars: 2, field: Field::gaussian(), bound: 5, hermitian: true, seed: 1 };
        for m in s.tuple(3, 0).matrices() {
            assert_eq!(*m, m.conj_transpose());
        }
    }

    #[test]
    fn structured_family() {
        let t = structured_tuples(2);
        assert_eq!(t.len(), 64);
        assert_eq!(t[2 * 8 + 3].matrices()[1], Matrix::from_ints(&[&[0, 1], &[0, 0]]));
    }
}

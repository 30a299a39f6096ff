#![allow(dead_code)]

use ncpoly::linalg::Matrix;
use ncpoly::word::{Letter, Word};
use ncpoly::{Context, NcPoly, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(src: &str) -> NcPoly {
    Context::with_arity(3).parse(src).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(r: &mut ChaCha8Rng, nvars: usize, len: usize, star: bool) -> Word {
    Word::from_letters((0..len).map(|_| Letter::new(r.gen_range(0..nvars), star && r.gen_bool(0.5))))
}

/// Up to `terms` random monomials of length at most `deg`, integer coefficients in `[-4, 4]`.
pub fn random_poly(r: &mut ChaCha8Rng, nvars: usize, deg: usize, terms: usize, star: bool) -> NcPoly {
    let mut f = NcPoly::zero();
    for _ in 0..terms {
        let len = r.gen_range(0..=deg);
        f.add_term(random_word(r, nvars, len, star), &Scalar::from_int(r.gen_range(-4..=4)));
    }
    f
}

/// Like [`random_poly`] but with an exact degree `deg` and a nonzero result.
pub fn random_poly_deg(r: &mut ChaCha8Rng, nvars: usize, deg: usize, terms: usize) -> NcPoly {
    loop {
        let mut f = random_poly(r, nvars, deg, terms, false);
        f.add_term(random_word(r, nvars, deg, false), &Scalar::from_int(r.gen_range(1..=3)));
        if f.deg0() == deg && !f.is_zero() {
            return f;
        }
    }
}

pub fn random_homogeneous(r: &mut ChaCha8Rng, nvars: usize, deg: usize, terms: usize) -> NcPoly {
    loop {
        let mut f = NcPoly::zero();
        for _ in 0..terms {
            f.add_term(random_word(r, nvars, deg, false), &Scalar::from_int(r.gen_range(-3..=3)));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| Scalar::from_int(r.gen_range(-bound..=bound))).collect()).collect())
}

pub fn random_invertible(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = random_matrix(r, n, n, 3);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn poly_strategy(nvars: usize, deg: usize, star: bool) -> impl Strategy<Value = NcPoly> {
    let letter = (0..nvars, any::<bool>()).prop_map(move |(v, s)| Letter::new(v, star && s));
    let term = (prop::collection::vec(letter, 0..=deg), -5i64..=5);
    prop::collection::vec(term, 0..6).prop_map(|terms| {
        let mut f = NcPoly::zero();
        for (w, c) in terms {
            f.add_term(Word::from_letters(w), &Scalar::from_int(c));
        }
        f
    })
}

//! Pointwise similarity and noncommutativity witnesses.

use rayon::prelude::*;

use crate::equiv::Budget;
use crate::eval::{bound_for_index, evaluate, refute, structured_tuples, MatrixTuple, RefutationWitness, Sampler, WitnessKind};
use crate::poly::NcPoly;
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub enum SimilarVerdict {
    Similar,
    NotSimilar(Option<RefutationWitness>),
}

/// `f(X)` and `g(X)` are similar at every `X` exactly when `f = g`; on
/// inequality a tuple with different Jordan structure is searched for.
pub fn pointwise_similar(f: &NcPoly, g: &NcPoly, budget: &Budget) -> SimilarVerdict {
    if f == g {
        return SimilarVerdict::Similar;
    }
    let w = budget.refute_witnesses.then(|| refute(f, g, WitnessKind::Jordan, &budget.refute, None)).flatten();
    SimilarVerdict::NotSimilar(w)
}

/// `X` and `k` with `rank (ab)(X)^k ≠ rank (ba)(X)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NcWitness {
    pub tuple: MatrixTuple,
    pub k: u32,
    pub ranks: (usize, usize),
}

impl NcWitness {
    pub fn verify(&self, a: &NcPoly, b: &NcPoly) -> bool {
        check(&(a * b), &(b * a), &self.tuple).is_some_and(|(k, r)| k == self.k && r == self.ranks)
    }
}

fn check(ab: &NcPoly, ba: &NcPoly, x: &MatrixTuple) -> Option<(u32, (usize, usize))> {
    let f = evaluate(ab, x).ok()?;
    let g = evaluate(ba, x).ok()?;
    let (mut fk, mut gk) = (f.clone(), g.clone());
    for k in 1..=x.size().max(1) as u32 {
        let r = (fk.rank(), gk.rank());
        if r.0 != r.1 {
            return Some((k, r));
        }
        fk = &fk * &f;
        gk = &gk * &g;
    }
    None
}

pub fn noncommutativity_witness(a: &NcPoly, b: &NcPoly, budget: &Budget) -> Option<NcWitness> {
    let ab = a * b;
    let ba = b * a;
    if ab == ba {
        return None;
    }
    let cfg = &budget.refute;
    let nvars = ab.arity().max(1);
    let sampler = Sampler {
        nvars,
        field: cfg.field.clone().unwrap_or_else(Field::rationals),
        bound: cfg.bound,
        hermitian: false,
        seed: cfg.seed,
    };
    let wrap = |x: &MatrixTuple| check(&ab, &ba, x).map(|(k, ranks)| NcWitness { tuple: x.clone(), k, ranks });
    for size in cfg.min_size..=cfg.max_size {
        if size == 2 && cfg.structured {
            if let Some(w) = structured_tuples(nvars).par_iter().find_map_first(wrap) {
                return Some(w);
            }
        }
        let hit = (0..cfg.samples)
            .into_par_iter()
            .find_map_first(|i| wrap(&sampler.tuple_with_bound(size, i, bound_for_index(i, cfg.bound))));
        if hit.is_some() {
            return hit;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::parse::Context;

    fn p(s: &str) -> NcPoly {
        Context::default().parse(s).unwrap()
    }

    #[test]
    fn similarity_witness_is_the_matrix_unit_pair() {
        match pointwise_similar(&p("x*y + 1"), &p("y*x + 1"), &Budget::default()) {
            SimilarVerdict::NotSimilar(Some(w)) => {
                assert_eq!(w.tuple.matrices()[0], Matrix::from_ints(&[&[1, 0], &[0, 0]]));
                assert_eq!(w.tuple.matrices()[1], Matrix::from_ints(&[&[0, 1], &[0, 0]]));
            }
            v => panic!("{v:?}"),
        }
        assert!(matches!(pointwise_similar(&p("x*y + 1"), &p("x*y + 1"), &Budget::default()), SimilarVerdict::Similar));
    }

    #[test]
    fn nc_witnesses() {
        let w = noncommutativity_witness(&p("x"), &p("y"), &Budget::default()).unwrap();
        assert_eq!((w.k, w.ranks), (1, (1, 0)));
        assert!(w.verify(&p("x"), &p("y")));
        assert!(noncommutativity_witness(&p("x"), &p("x^2"), &Budget::default()).is_none());
    }
}

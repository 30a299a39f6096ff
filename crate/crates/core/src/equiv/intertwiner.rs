//! Intertwiners `f·a = a·g` and elementary intertwining steps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::system::basis;
use crate::linalg::PolySystem;
use crate::poly::{alphabet, NcPoly};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerSpace {
    pub degree: usize,
    pub basis: Vec<NcPoly>,
}

impl IntertwinerSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, a: &NcPoly) -> bool {
        // a lies in the span iff adding it does not raise the rank
        let words: Vec<_> = {
            let mut w: Vec<_> = self.basis.iter().chain(std::iter::once(a)).flat_map(|p| p.terms().map(|(w, _)| w.clone())).collect();
            w.sort();
            w.dedup();
            w
        };
        let mat = |polys: &[&NcPoly]| {
            crate::linalg::Matrix::from_fn(polys.len(), words.len(), |i, j| polys[i].coeff(&words[j]))
        };
        let base: Vec<&NcPoly> = self.basis.iter().collect();
        let mut ext = base.clone();
        ext.push(a);
        mat(&base).rank() == mat(&ext).rank()
    }
}

/// `f·a = a·g` for a step `from = λ + a·b`, `to = λ + b·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub lambda: Scalar,
    pub a: NcPoly,
    pub b: NcPoly,
    pub from: NcPoly,
    pub to: NcPoly,
}

impl ChainStep {
    pub fn verify(&self) -> bool {
        let l = NcPoly::constant(self.lambda.clone());
        self.from == &l + &(&self.a * &self.b) && self.to == &l + &(&self.b * &self.a)
    }
}

/// All `a` with `deg a ≤ d` and `f·a = a·g`.
pub fn intertwiner_space(f: &NcPoly, g: &NcPoly, d: usize) -> IntertwinerSpace {
    let letters = alphabet(&[f, g]);
    let mut sys = PolySystem::new();
    let a = sys.add_block(basis(&letters, d as isize));
    let one = NcPoly::one();
    sys.add_term(a, f, &one, &Scalar::one());
    sys.add_term(a, &one, g, &Scalar::from_int(-1));
    let sol = sys.solve();
    let basis = sol.nullspace.iter().map(|v| sys.reconstruct(v).remove(0)).collect();
    IntertwinerSpace { degree: d, basis }
}

/// The intertwiner of least degree up to `d_max`, with leading coefficient one.
pub fn minimal_intertwiner(f: &NcPoly, g: &NcPoly, d_max: usize) -> Option<NcPoly> {
    (0..=d_max).find_map(|d| {
        let space = intertwiner_space(f, g, d);
        debug_assert!(space.dim() <= 1, "minimal intertwiner space of dimension {}", space.dim());
        space.basis.first().map(NcPoly::monic)
    })
}

/// `(q, r)` with `f = a·q + r`, where no word of `r` starts with the
/// leading word of `a` once reduction stops.
pub(crate) fn left_reduce(f: &NcPoly, a: &NcPoly) -> (NcPoly, NcPoly) {
    let (lw, lc) = a.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero divisor");
    let lc_inv = lc.inv().expect("nonzero");
    let mut r = f.clone();
    let mut q = NcPoly::zero();
    while let Some((w, c)) = r.leading().map(|(w, c)| (w.clone(), c.clone())) {
        if w.len() < lw.len() || w.prefix(lw.len()) != lw {
            break;
        }
        let m = NcPoly::monomial(w.suffix_from(lw.len()), &c * &lc_inv);
        r = &r - &(a * &m);
        q = &q + &m;
    }
    (q, r)
}

/// Tries `f = λ + a·b`, `g = λ + b·a` for the given `a`.
pub fn elementary_step_with(f: &NcPoly, g: &NcPoly, a: &NcPoly) -> Option<ChainStep> {
    if a.is_zero() || a.is_constant() {
        return None;
    }
    let (b, r) = left_reduce(f, a);
    if !r.is_constant() {
        return None;
    }
    let lambda = r.constant_term();
    let step = ChainStep { lambda, a: a.monic(), b: b.scale(&a.leading_coeff()), from: f.clone(), to: g.clone() };
    step.verify().then_some(step)
}

/// Random integer combinations of basis vectors, reproducible from `seed`.
pub(crate) fn random_combinations<T: Clone>(
    basis: &[T],
    count: usize,
    seed: u64,
    combine: impl Fn(&[(i64, &T)]) -> T,
) -> Vec<T> {
    if basis.len() < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coeffs: Vec<(i64, &T)> = basis.iter().map(|b| (rng.gen_range(-3..=3), b)).collect();
            combine(&coeffs)
        })
        .collect()
}

pub(crate) fn combine_polys(terms: &[(i64, &NcPoly)]) -> NcPoly {
    let mut out = NcPoly::zero();
    for (c, p) in terms {
        out.add_scaled(p, &Scalar::from_int(*c));
    }
    out
}

/// An elementary intertwining `f = λ + a·b`, `g = λ + b·a`, searched among
/// intertwiners of degree below `deg f` and random combinations of them.
pub fn elementary_intertwined(f: &NcPoly, g: &NcPoly, combos: usize, seed: u64) -> Option<ChainStep> {
    if f == g {
        let lambda = f.constant_term();
        let a = f - &NcPoly::constant(lambda.clone());
        if a.is_zero() {
            return None;
        }
        let lc = a.leading_coeff();
        return Some(ChainStep { lambda, a: a.monic(), b: NcPoly::constant(lc), from: f.clone(), to: g.clone() });
    }
    if f.constant_term() != g.constant_term() || f.degree() != g.degree() || f.is_constant() {
        return None;
    }
    let mut prev_dim = 0;
    for e in 1..f.deg0() {
        let space = intertwiner_space(f, g, e);
        if space.dim() == prev_dim {
            continue;
        }
        prev_dim = space.dim();
        let mut candidates = space.basis.clone();
        candidates.extend(random_combinations(&space.basis, combos, seed ^ e as u64, combine_polys));
        if let Some(step) = candidates.iter().find_map(|a| elementary_step_with(f, g, a)) {
            return Some(step);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::Context;

    fn p(s: &str) -> NcPoly {
        Context::default().parse(s).unwrap()
    }

    #[test]
    fn known_intertwiners() {
        assert_eq!(intertwiner_space(&p("x*y + 1"), &p("y*x + 1"), 1).basis, vec![p("x")]);
        assert_eq!(intertwiner_space(&p("x*y"), &p("x*y"), 0).basis, vec![p("1")]);
        assert!(intertwiner_space(&p("x"), &p("y"), 4).basis.is_empty());
        let f = p("(x - 1)*(x - 2)*y + x");
        let g = p("y*(x - 1)*(x - 2) + x");
        assert_eq!(minimal_intertwiner(&f, &g, 4), Some(p("(x - 1)*(x - 2)")));
        assert_eq!(minimal_intertwiner(&g, &f, 4).map(|a| a.deg0()), Some(4));
        assert_eq!(minimal_intertwiner(&p("x"), &p("x"), 2), Some(p("1")));
    }

    #[test]
    fn elementary_steps() {
        let s = elementary_intertwined(&p("x*y"), &p("y*x"), 32, 0).unwrap();
        assert_eq!((s.lambda.clone(), s.a.clone(), s.b.clone()), (Scalar::zero(), p("x"), p("y")));
        let f = p("(x - 1)*(x - 2)*y + x");
        let g = p("y*(x - 1)*(x - 2) + x");
        assert!(elementary_intertwined(&f, &g, 32, 0).is_none());
        let same = elementary_intertwined(&p("1 + x*y"), &p("1 + x*y"), 32, 0).unwrap();
        assert!(same.verify());
        assert_eq!(same.a, p("x*y"));
    }
}

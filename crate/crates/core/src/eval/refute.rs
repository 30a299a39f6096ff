//! Randomized search for evaluation points separating two polynomials.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::eval::charpoly::{char_poly, jordan_profile, JordanProfile};
use crate::eval::sample::{bound_for_index, structured_tuples, Sampler};
use crate::eval::{evaluate, evaluate_matrix, frobenius_sq, to_complex_matrix, MatrixTuple};
use crate::linalg::Matrix;
use crate::poly::NcPoly;
use crate::scalar::Field;
use crate::unipoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    Rank,
    Charpoly,
    Jordan,
    Norm,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Rank => "rank",
            WitnessKind::Charpoly => "charpoly",
            WitnessKind::Jordan => "jordan",
            WitnessKind::Norm => "norm",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Discrepancy {
    Rank { f: usize, g: usize },
    Charpoly { f: UniPoly, g: UniPoly },
    Jordan { f: Box<JordanProfile>, g: Box<JordanProfile> },
    /// Frobenius and operator norms of `f(X)` and `g(X)`.
    Norm { frobenius: (f64, f64), operator: (f64, f64) },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefutationWitness {
    pub tuple: MatrixTuple,
    pub kind: WitnessKind,
    pub discrepancy: Discrepancy,
    /// Position of the witness in the deterministic search order, from 1.
    pub attempts: usize,
}

#[derive(Clone, Debug)]
pub struct RefuteConfig {
    pub min_size: usize,
    pub max_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub bound: i64,
    /// Try the 2×2 structured family before random tuples of size 2.
    pub structured: bool,
    /// Entry field for sampled tuples; chosen from the inputs when `None`.
    pub field: Option<Field>,
    pub tol: f64,
}

impl Default for RefuteConfig {
    fn default() -> Self {
        RefuteConfig {
            min_size: 1,
            max_size: 5,
            samples: 50,
            seed: 0,
            bound: 10,
            structured: true,
            field: None,
            tol: 1e-8,
        }
    }
}

/// Frobenius and operator norm of an exact matrix.
pub fn norms(m: &Matrix) -> (f64, f64) {
    let frob = frobenius_sq(m).to_complex().re.max(0.0).sqrt();
    let op = if m.nrows() == 0 {
        0.0
    } else {
        to_complex_matrix(m).singular_values().iter().cloned().fold(0.0, f64::max)
    };
    (frob, op)
}

/// Relative gap `|a − b| / max(1, a)`.
pub fn norm_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.max(1.0)
}

fn compare(f: &NcPoly, g: &NcPoly, x: &MatrixTuple, kind: WitnessKind, tol: f64) -> Option<Discrepancy> {
    let fv = evaluate(f, x).ok()?;
    let gv = evaluate(g, x).ok()?;
    match kind {
        WitnessKind::Rank => {
            let (rf, rg) = (fv.rank(), gv.rank());
            (rf != rg).then_some(Discrepancy::Rank { f: rf, g: rg })
        }
        WitnessKind::Charpoly => {
            let (cf, cg) = (char_poly(&fv), char_poly(&gv));
            (cf != cg).then_some(Discrepancy::Charpoly { f: cf, g: cg })
        }
        WitnessKind::Jordan => {
            if fv == gv {
                return None;
            }
            let (pf, pg) = (jordan_profile(&fv), jordan_profile(&gv));
            (pf != pg).then(|| Discrepancy::Jordan { f: Box::new(pf), g: Box::new(pg) })
        }
        WitnessKind::Norm => {
            let (ff, fo) = norms(&fv);
            let (gf, go) = norms(&gv);
            (norm_gap(ff, gf) > tol || norm_gap(fo, go) > tol)
                .then_some(Discrepancy::Norm { frobenius: (ff, gf), operator: (fo, go) })
        }
    }
}

fn default_field(f: &NcPoly, g: &NcPoly, kind: WitnessKind) -> Field {
    let complex = f.has_star()
        || g.has_star()
        || [f, g].iter().any(|p| p.terms().any(|(_, c)| !c.is_rational()));
    if kind == WitnessKind::Norm && complex {
        Field::gaussian()
    } else {
        Field::rationals()
    }
}

/// First tuple, in a fixed search order, at which `f` and `g` differ in the
/// given invariant. Sizes ascend; at size 2 the structured family comes
/// first. The result does not depend on thread scheduling.
pub fn refute(
    f: &NcPoly,
    g: &NcPoly,
    kind: WitnessKind,
    cfg: &RefuteConfig,
    cancel: Option<&AtomicBool>,
) -> Option<RefutationWitness> {
    let nvars = f.arity().max(g.arity()).max(1);
    let field = cfg.field.clone().unwrap_or_else(|| default_field(f, g, kind));
    let sampler = Sampler { nvars, field, bound: cfg.bound, hermitian: false, seed: cfg.seed };
    let cancelled = || cancel.is_some_and(|c| c.load(Ordering::Relaxed));
    let mut attempts = 0;
    for size in cfg.min_size..=cfg.max_size {
        if size == 2 && cfg.structured {
            let family = structured_tuples(nvars);
            let hit = family.par_iter().enumerate().find_map_first(|(i, x)| {
                if cancelled() {
                    return None;
                }
                compare(f, g, x, kind, cfg.tol).map(|d| (i, x.clone(), d))
            });
            if let Some((i, tuple, discrepancy)) = hit {
                return Some(RefutationWitness { tuple, kind, discrepancy, attempts: attempts + i + 1 });
            }
            attempts += family.len();
        }
        let hit = (0..cfg.samples).into_par_iter().find_map_first(|i| {
            if cancelled() {
                return None;
            }
            let x = sampler.tuple_with_bound(size, i, bound_for_index(i, cfg.bound));
            compare(f, g, &x, kind, cfg.tol).map(|d| (i, x, d))
        });
        if let Some((i, tuple, discrepancy)) = hit {
            return Some(RefutationWitness { tuple, kind, discrepancy, attempts: attempts + i + 1 });
        }
        if cancelled() {
            return None;
        }
        attempts += cfg.samples;
    }
    None
}

impl RefutationWitness {
    /// Re-evaluates `f` and `g` at the witness and checks the discrepancy.
    pub fn verify(&self, f: &NcPoly, g: &NcPoly, tol: f64) -> bool {
        match compare(f, g, &self.tuple, self.kind, tol) {
            Some(d) => match (&d, &self.discrepancy) {
                (Discrepancy::Norm { .. }, Discrepancy::Norm { .. }) => true,
                _ => d == self.discrepancy,
            },
            None => false,
        }
    }
}

/// Lower bound for the inner rank of a matrix over the free algebra:
/// the largest `⌈rank F(X) / k⌉` over sampled `X` of size `k`.
pub fn inner_rank_lower_bound(entries: &[Vec<NcPoly>], cfg: &RefuteConfig) -> usize {
    let rows = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    let nvars = entries.iter().flatten().map(NcPoly::arity).max().unwrap_or(0).max(1);
    let field = cfg.field.clone().unwrap_or_else(Field::rationals);
    let sampler = Sampler { nvars, field, bound: cfg.bound, hermitian: false, seed: cfg.seed };
    let full = rows.min(cols);
    let mut best = 0;
    for size in cfg.min_size.max(1)..=cfg.max_size {
        let b = (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let x = sampler.tuple(size, i);
                let r = evaluate_matrix(entries, &x).map(|m| m.rank()).unwrap_or(0);
                r.div_ceil(size)
            })
            .max()
            .unwrap_or(0);
        best = best.max(b);
        if best == full {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::Context;

    fn p(s: &str) -> NcPoly {
        Context::default().parse(s).unwrap()
    }

    #[test]
    fn rank_witness_for_xy_yx() {
        let w = refute(&p("x*y"), &p("y*x"), WitnessKind::Rank, &RefuteConfig::default(), None).unwrap();
        assert_eq!(w.tuple.size(), 2);
        assert_eq!(w.discrepancy, Discrepancy::Rank { f: 1, g: 0 });
        assert!(w.verify(&p("x*y"), &p("y*x"), 1e-8));
        assert!(refute(&p("x*y"), &p("x*y"), WitnessKind::Rank, &RefuteConfig { max_size: 3, ..Default::default() }, None)
            .is_none());
    }

    #[test]
    fn powers_witness() {
        let f3 = p("x*y*x*y + x*y + x");
        let g3 = p("x*y^2*x + x*y + x");
        let w = refute(&f3.pow(2), &g3.pow(2), WitnessKind::Rank, &RefuteConfig::default(), None).unwrap();
        assert_eq!(w.tuple.matrices()[0], Matrix::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(w.tuple.matrices()[1], Matrix::from_ints(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn inner_rank_examples() {
        let cfg = RefuteConfig { max_size: 2, samples: 5, ..Default::default() };
        assert_eq!(inner_rank_lower_bound(&[vec![p("x")]], &cfg), 1);
        assert_eq!(inner_rank_lower_bound(&[vec![p("x"), p("0")], vec![p("0"), p("x")]], &cfg), 2);
        assert_eq!(inner_rank_lower_bound(&[vec![p("0")]], &cfg), 0);
    }
}

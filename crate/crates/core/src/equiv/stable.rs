//! Stable association (equivalently, rank-equivalence).

use std::sync::atomic::{AtomicBool, Ordering};

use crate::equiv::intertwiner::{combine_polys, random_combinations};
use crate::equiv::Budget;
use crate::error::{Error, Result};
use crate::eval::{refute, RefutationWitness, WitnessKind};
use crate::ideal::{comaximality_certificate, ComaxCertificate, Side};
use crate::linalg::system::basis;
use crate::linalg::PolySystem;
use crate::poly::{alphabet, NcPoly};
use crate::scalar::Scalar;

/// `f·a = b·g` with `f·u + b·v = 1` and `u'·a + v'·g = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationCertificate {
    pub a: NcPoly,
    pub b: NcPoly,
    pub right: ComaxCertificate,
    pub left: ComaxCertificate,
}

impl AssociationCertificate {
    pub fn verify(&self, f: &NcPoly, g: &NcPoly) -> bool {
        f * &self.a == &self.b * g
            && self.right.side == Side::Right
            && self.right.f == *f
            && self.right.g == self.b
            && self.right.verify()
            && self.left.side == Side::Left
            && self.left.f == self.a
            && self.left.g == *g
            && self.left.verify()
    }
}

#[derive(Clone, Debug)]
pub enum StableAssocVerdict {
    Associated(AssociationCertificate),
    NotAssociated { reason: String, witness: Option<RefutationWitness> },
    Undecided(String),
}

fn certify(f: &NcPoly, g: &NcPoly, a: &NcPoly, b: &NcPoly) -> Option<AssociationCertificate> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let right = comaximality_certificate(f, b, Side::Right)?;
    let left = comaximality_certificate(a, g, Side::Left)?;
    Some(AssociationCertificate { a: a.clone(), b: b.clone(), right, left })
}

fn search(f: &NcPoly, g: &NcPoly, budget: &Budget, cancel: &AtomicBool) -> Option<AssociationCertificate> {
    if f.is_constant() {
        let b = NcPoly::constant(&f.constant_term() / &g.constant_term());
        return certify(f, g, &NcPoly::one(), &b);
    }
    if f == g {
        if let Some(c) = certify(f, g, &NcPoly::one(), &NcPoly::one()) {
            return Some(c);
        }
    }
    let letters = alphabet(&[f, g]);
    let d = f.deg0() as isize - 1;
    let mut sys = PolySystem::new();
    let ab = sys.add_block(basis(&letters, d));
    let bb = sys.add_block(basis(&letters, d));
    let one = NcPoly::one();
    sys.add_term(ab, f, &one, &Scalar::one());
    sys.add_term(bb, &one, g, &Scalar::from_int(-1));
    let sol = sys.solve_cancellable(Some(cancel)).ok()?;
    let pairs: Vec<NcPoly> = sol
        .nullspace
        .iter()
        .map(|v| {
            // pack (a, b) as one polynomial list via reconstruct
            let parts = sys.reconstruct(v);
            pack(&parts[0], &parts[1])
        })
        .collect();
    let mut candidates = pairs.clone();
    candidates.extend(random_combinations(&pairs, budget.combos, budget.seed, combine_polys));
    for c in candidates {
        if cancel.load(Ordering::Relaxed) {
            return None;
        }
        let (a, b) = unpack(&c);
        if let Some(cert) = certify(f, g, &a, &b) {
            return Some(cert);
        }
    }
    None
}

// A pair (a, b) is carried as a + z·b with a fresh variable z so that
// random combinations act on both components at once.
const PACK_VAR: usize = 1000;

fn pack(a: &NcPoly, b: &NcPoly) -> NcPoly {
    a + &(&NcPoly::var(PACK_VAR) * b)
}

fn unpack(p: &NcPoly) -> (NcPoly, NcPoly) {
    let mut a = NcPoly::zero();
    let mut b = NcPoly::zero();
    for (w, c) in p.terms() {
        match w.letters().first() {
            Some(l) if l.var() == PACK_VAR => b.add_term(w.suffix_from(1), c),
            _ => a.add_term(w.clone(), c),
        }
    }
    (a, b)
}

/// Searches a certificate of stable association and, in parallel, a tuple
/// where the ranks of `f(X)` and `g(X)` differ. The first conclusive result
/// wins; both kinds are sound, so the verdict does not depend on timing.
pub fn stable_association(f: &NcPoly, g: &NcPoly, budget: &Budget) -> Result<StableAssocVerdict> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("stable association of the zero polynomial".into()));
    }
    let cancel = AtomicBool::new(false);
    if f.degree() != g.degree() {
        let witness =
            budget.refute_witnesses.then(|| refute(f, g, WitnessKind::Rank, &budget.refute, None)).flatten();
        return Ok(StableAssocVerdict::NotAssociated { reason: "degrees differ".into(), witness });
    }
    let (cert, witness) = std::thread::scope(|s| {
        let refuter = budget.refute_witnesses.then(|| {
            s.spawn(|| {
                let w = refute(f, g, WitnessKind::Rank, &budget.refute, Some(&cancel));
                if w.is_some() {
                    cancel.store(true, Ordering::Relaxed);
                }
                w
            })
        });
        let cert = search(f, g, budget, &cancel);
        if cert.is_some() {
            cancel.store(true, Ordering::Relaxed);
        }
        let witness = refuter.and_then(|h| h.join().expect("refuter thread"));
        (cert, witness)
    });
    Ok(match (cert, witness) {
        (Some(c), _) => StableAssocVerdict::Associated(c),
        (None, Some(w)) => StableAssocVerdict::NotAssociated { reason: "ranks differ".into(), witness: Some(w) },
        (None, None) => StableAssocVerdict::Undecided("no certificate or witness within budget".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::Context;

    fn p(s: &str) -> NcPoly {
        Context::default().parse(s).unwrap()
    }

    #[test]
    fn worked_examples() {
        let b = Budget::default();
        let f3 = p("x*y*x*y + x*y + x");
        let g3 = p("x*y^2*x + x*y + x");
        match stable_association(&f3, &g3, &b).unwrap() {
            StableAssocVerdict::Associated(c) => assert!(c.verify(&f3, &g3)),
            v => panic!("{v:?}"),
        }
        match stable_association(&p("x*y"), &p("y*x"), &b).unwrap() {
            StableAssocVerdict::NotAssociated { witness: Some(w), .. } => assert_eq!(w.tuple.size(), 2),
            v => panic!("{v:?}"),
        }
        match stable_association(&p("x + 1"), &p("x + 1"), &b).unwrap() {
            StableAssocVerdict::Associated(c) => assert_eq!((c.a, c.b), (p("1"), p("1"))),
            v => panic!("{v:?}"),
        }
    }
}

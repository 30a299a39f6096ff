//! Isospectrality of two polynomials.

use crate::equiv::decompose::decompose;
use crate::equiv::intertwiner::minimal_intertwiner;
use crate::equiv::Budget;
use crate::eval::{refute, RefutationWitness, WitnessKind};
use crate::linalg::system::basis;
use crate::linalg::PolySystem;
use crate::poly::{alphabet, NcPoly};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsospectralCertificate {
    Equal,
    /// `f·a = a·g` with `a ≠ 0`.
    Intertwiner(NcPoly),
    /// `f = p(F)`, `g = p(G)` and `(F − t)·A(t) = B(t)·(G − t)` over `k[t]`,
    /// with `A`, `B` given by their `t`-coefficients.
    Parametric { p: UniPoly, core_f: NcPoly, core_g: NcPoly, a: Vec<NcPoly>, b: Vec<NcPoly> },
}

impl IsospectralCertificate {
    pub fn verify(&self, f: &NcPoly, g: &NcPoly) -> bool {
        match self {
            IsospectralCertificate::Equal => f == g,
            IsospectralCertificate::Intertwiner(a) => !a.is_zero() && f * a == a * g,
            IsospectralCertificate::Parametric { p, core_f, core_g, a, b } => {
                core_f.compose(p) == *f
                    && core_g.compose(p) == *g
                    && a.iter().any(|x| !x.is_zero())
                    && parametric_identity(core_f, core_g, a, b)
            }
        }
    }
}

/// Checks `(F − t)A(t) = B(t)(G − t)` coefficientwise in `t`.
fn parametric_identity(f: &NcPoly, g: &NcPoly, a: &[NcPoly], b: &[NcPoly]) -> bool {
    let n = a.len().max(b.len());
    let at = |k: usize| a.get(k).cloned().unwrap_or_default();
    let bt = |k: usize| b.get(k).cloned().unwrap_or_default();
    (0..=n).all(|k| {
        let mut c = &(f * &at(k)) - &(&bt(k) * g);
        if k > 0 {
            c = &(&c - &at(k - 1)) + &bt(k - 1);
        }
        c.is_zero()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotIsospectralReason {
    Degree,
    ConstantTerm,
    LeadingCoefficient,
    /// `f − g` is not a sum of commutators, so traces differ somewhere.
    Traces,
    /// Outer polynomials of the decompositions differ.
    Outer { p: UniPoly, q: UniPoly },
    /// The parametric system has only the zero solution; full rank was
    /// observed after specialising `t`.
    FullRank { lambda: Scalar },
    Constant,
}

#[derive(Clone, Debug)]
pub enum IsospectralVerdict {
    Isospectral(IsospectralCertificate),
    NotIsospectral { reason: NotIsospectralReason, witness: Option<RefutationWitness> },
    Undecided(String),
}

impl IsospectralVerdict {
    pub fn is_isospectral(&self) -> Option<bool> {
        match self {
            IsospectralVerdict::Isospectral(_) => Some(true),
            IsospectralVerdict::NotIsospectral { .. } => Some(false),
            IsospectralVerdict::Undecided(_) => None,
        }
    }
}

fn quick_reject(f: &NcPoly, g: &NcPoly) -> Option<NotIsospectralReason> {
    if f.is_constant() || g.is_constant() {
        return (f != g).then_some(NotIsospectralReason::Constant);
    }
    if f.degree() != g.degree() {
        return Some(NotIsospectralReason::Degree);
    }
    if f.constant_term() != g.constant_term() {
        return Some(NotIsospectralReason::ConstantTerm);
    }
    if f.leading_coeff() != g.leading_coeff() {
        return Some(NotIsospectralReason::LeadingCoefficient);
    }
    if !f.cyclically_equivalent(g) {
        return Some(NotIsospectralReason::Traces);
    }
    None
}

/// `(F − t)·A = B·(G − t)` with `deg A, deg B < deg F`.
fn parametric_system(f: &NcPoly, g: &NcPoly) -> PolySystem {
    let letters = alphabet(&[f, g]);
    let d = f.deg0() as isize - 1;
    let mut sys = PolySystem::new();
    let a = sys.add_block(basis(&letters, d));
    let b = sys.add_block(basis(&letters, d));
    let one = NcPoly::one();
    sys.add_term(a, f, &one, &Scalar::one());
    sys.add_term_t(a, &one, &one, &Scalar::from_int(-1), 1);
    sys.add_term(b, &one, g, &Scalar::from_int(-1));
    sys.add_term_t(b, &one, &one, &Scalar::one(), 1);
    sys
}

/// Specialisation points tried before exact `k(t)` elimination.
fn probe_points(seed: u64) -> [Scalar; 2] {
    [Scalar::from_ratio(7919 + (seed % 1000) as i64, 13), Scalar::from_ratio(-104_729, 17 + (seed % 89) as i64)]
}

fn not_iso(f: &NcPoly, g: &NcPoly, reason: NotIsospectralReason, budget: &Budget) -> IsospectralVerdict {
    let witness = budget.refute_witnesses.then(|| refute(f, g, WitnessKind::Charpoly, &budget.refute, None)).flatten();
    IsospectralVerdict::NotIsospectral { reason, witness }
}

/// Decides whether `f(X)` and `g(X)` have the same characteristic
/// polynomial at every matrix tuple `X`.
pub fn is_isospectral(f: &NcPoly, g: &NcPoly, budget: &Budget) -> IsospectralVerdict {
    if f == g {
        return IsospectralVerdict::Isospectral(IsospectralCertificate::Equal);
    }
    if let Some(reason) = quick_reject(f, g) {
        return not_iso(f, g, reason, budget);
    }
    let (df, dg) = match (decompose(f), decompose(g)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return IsospectralVerdict::Undecided(e.to_string()),
    };
    if df.p != dg.p {
        return not_iso(f, g, NotIsospectralReason::Outer { p: df.p, q: dg.p }, budget);
    }
    let (cf, cg) = (&df.core, &dg.core);
    // cheap certificate first
    let small = budget.max_deg.min(cf.deg0());
    if let Some(a) = minimal_intertwiner(cf, cg, small) {
        return IsospectralVerdict::Isospectral(IsospectralCertificate::Intertwiner(a));
    }
    let sys = parametric_system(cf, cg);
    for lambda in probe_points(budget.seed) {
        let ech = sys.echelon_at(&lambda, None).expect("not cancelled");
        if ech.is_full_rank() {
            return not_iso(f, g, NotIsospectralReason::FullRank { lambda }, budget);
        }
    }
    if sys.ncols() <= budget.dense_limit {
        let m = sys.poly_matrix();
        let ker = m.nullspace_over_kt();
        let Some(v) = ker.first() else {
            return not_iso(f, g, NotIsospectralReason::FullRank { lambda: Scalar::zero() }, budget);
        };
        let parts = sys.reconstruct_kt(v);
        let cert = IsospectralCertificate::Parametric {
            p: df.p.clone(),
            core_f: cf.clone(),
            core_g: cg.clone(),
            a: parts[0].clone(),
            b: parts[1].clone(),
        };
        if cert.verify(f, g) {
            if let Some(a) = minimal_intertwiner(cf, cg, budget.max_deg) {
                return IsospectralVerdict::Isospectral(IsospectralCertificate::Intertwiner(a));
            }
            return IsospectralVerdict::Isospectral(cert);
        }
        return IsospectralVerdict::Undecided("parametric kernel vector failed verification".into());
    }
    match minimal_intertwiner(cf, cg, budget.max_deg) {
        Some(a) => IsospectralVerdict::Isospectral(IsospectralCertificate::Intertwiner(a)),
        None => IsospectralVerdict::Undecided(format!(
            "no intertwiner of degree <= {} and the parametric system ({} unknowns) exceeds the dense limit",
            budget.max_deg,
            sys.ncols()
        )),
    }
}

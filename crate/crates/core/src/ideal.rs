//! One-sided divisibility, comaximality certificates, bounded GCRD search
//! and factorization of homogeneous polynomials.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::system::basis;
use crate::linalg::{Matrix, PolySystem};
use crate::poly::{alphabet, NcPoly};
use crate::scalar::Scalar;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `f·u + g·v = 1`
    Right,
    /// `u·f + v·g = 1`
    Left,
}

/// Witness that `(f, g)` generates the whole ring on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComaxCertificate {
    pub f: NcPoly,
    pub g: NcPoly,
    pub u: NcPoly,
    pub v: NcPoly,
    pub side: Side,
}

impl ComaxCertificate {
    pub fn verify(&self) -> bool {
        let lhs = match self.side {
            Side::Right => &(&self.f * &self.u) + &(&self.g * &self.v),
            Side::Left => &(&self.u * &self.f) + &(&self.v * &self.g),
        };
        lhs == NcPoly::one()
    }
}

/// A verified common right divisor `h` of `p` and `q` with `s·p + t·q = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcrdResult {
    pub h: NcPoly,
    pub qp: NcPoly,
    pub qq: NcPoly,
    pub s: NcPoly,
    pub t: NcPoly,
}

impl GcrdResult {
    pub fn verify(&self, p: &NcPoly, q: &NcPoly) -> bool {
        &self.qp * &self.h == *p && &self.qq * &self.h == *q && &(&self.s * p) + &(&self.t * q) == self.h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GcrdOutcome {
    Found(GcrdResult),
    Undecided,
}

/// `q` with `f = q·h`, or `None` when `h` is not a right divisor.
pub fn divide_right_by(f: &NcPoly, h: &NcPoly) -> Result<Option<NcPoly>> {
    if h.is_zero() {
        return Err(Error::Domain("division by the zero polynomial".into()));
    }
    let (lw, lc) = h.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
    let lc_inv = lc.inv().expect("nonzero");
    let mut r = f.clone();
    let mut q = NcPoly::zero();
    // Every element of R·h has a leading word ending in lead(h), so leading-term
    // reduction decides membership.
    while let Some((w, c)) = r.leading().map(|(w, c)| (w.clone(), c.clone())) {
        if w.len() < lw.len() || w.suffix_from(w.len() - lw.len()) != lw {
            return Ok(None);
        }
        let m = NcPoly::monomial(w.prefix(w.len() - lw.len()), &c * &lc_inv);
        r = &r - &(&m * h);
        q = &q + &m;
    }
    Ok(Some(q))
}

/// `q` with `f = h·q`, or `None`.
pub fn divide_left_by(f: &NcPoly, h: &NcPoly) -> Result<Option<NcPoly>> {
    Ok(divide_right_by(&f.reversed(), &h.reversed())?.map(|q| q.reversed()))
}

/// Searches `f·u + g·v = 1` (right) or `u·f + v·g = 1` (left) with
/// `deg u < deg g` and `deg v < deg f`. These bounds are complete, so `None`
/// means the pair is not comaximal on that side.
pub fn comaximality_certificate(f: &NcPoly, g: &NcPoly, side: Side) -> Option<ComaxCertificate> {
    let cert = |u: NcPoly, v: NcPoly| ComaxCertificate { f: f.clone(), g: g.clone(), u, v, side };
    if f.is_constant() && !f.is_zero() {
        return Some(cert(NcPoly::constant(f.constant_term().inv()?), NcPoly::zero()));
    }
    if g.is_constant() && !g.is_zero() {
        return Some(cert(NcPoly::zero(), NcPoly::constant(g.constant_term().inv()?)));
    }
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let letters = alphabet(&[f, g]);
    let mut sys = PolySystem::new();
    let u = sys.add_block(basis(&letters, g.deg0() as isize - 1));
    let v = sys.add_block(basis(&letters, f.deg0() as isize - 1));
    let one = NcPoly::one();
    match side {
        Side::Right => {
            sys.add_term(u, f, &one, &Scalar::one());
            sys.add_term(v, g, &one, &Scalar::one());
        }
        Side::Left => {
            sys.add_term(u, &one, f, &Scalar::one());
            sys.add_term(v, &one, g, &Scalar::one());
        }
    }
    sys.set_target(NcPoly::one());
    let sol = sys.solve();
    let parts = sys.reconstruct(sol.particular.as_ref()?);
    let c = cert(parts[0].clone(), parts[1].clone());
    debug_assert!(c.verify());
    Some(c)
}

/// Certified search for a generator of the left ideal `R·p + R·q`.
///
/// Candidates `h = s·p + t·q` are taken of increasing degree, with
/// `deg s ≤ bound_s` and `deg t ≤ bound_t`; a candidate is accepted only
/// once both right divisions succeed. Default bounds `deg q - 1`, `deg p - 1`.
pub fn gcrd_bounded(p: &NcPoly, q: &NcPoly, bounds: Option<(usize, usize)>) -> Result<GcrdOutcome> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Domain("gcrd of the zero polynomial".into()));
    }
    let (dp, dq) = (p.deg0(), q.deg0());
    if dp == 0 || dq == 0 {
        let (s, t, h) = if dp == 0 {
            (NcPoly::constant(p.constant_term().inv().expect("nonzero")), NcPoly::zero(), NcPoly::one())
        } else {
            (NcPoly::zero(), NcPoly::constant(q.constant_term().inv().expect("nonzero")), NcPoly::one())
        };
        return Ok(GcrdOutcome::Found(GcrdResult { h, qp: p.clone(), qq: q.clone(), s, t }));
    }
    let (bs, bt) = bounds.unwrap_or((dq - 1, dp - 1));
    let letters = alphabet(&[p, q]);
    let mut sys = PolySystem::new();
    let sb = sys.add_block(basis(&letters, bs as isize));
    let tb = sys.add_block(basis(&letters, bt as isize));
    let one = NcPoly::one();
    sys.add_term(sb, &one, p, &Scalar::one());
    sys.add_term(tb, &one, q, &Scalar::one());
    for e in 0..=dp.min(dq) {
        let sol = sys.solve_rows_where(&|w: &Word| w.len() > e);
        let mut seen: Vec<NcPoly> = Vec::new();
        for v in &sol.nullspace {
            let parts = sys.reconstruct(v);
            let h = &(&parts[0] * p) + &(&parts[1] * q);
            if h.is_zero() {
                continue;
            }
            let lc_inv = h.leading_coeff().inv().expect("nonzero");
            let hm = h.scale(&lc_inv);
            if seen.contains(&hm) {
                continue;
            }
            seen.push(hm.clone());
            if let (Some(qp), Some(qq)) = (divide_right_by(p, &hm)?, divide_right_by(q, &hm)?) {
                let res = GcrdResult { h: hm, qp, qq, s: parts[0].scale(&lc_inv), t: parts[1].scale(&lc_inv) };
                debug_assert!(res.verify(p, q));
                return Ok(GcrdOutcome::Found(res));
            }
        }
    }
    Ok(GcrdOutcome::Undecided)
}

fn flattening(f: &NcPoly, split: usize) -> (Vec<Word>, Vec<Word>, Matrix) {
    let mut rows: BTreeMap<Word, usize> = BTreeMap::new();
    let mut cols: BTreeMap<Word, usize> = BTreeMap::new();
    for (w, _) in f.terms() {
        let n = rows.len();
        rows.entry(w.prefix(split)).or_insert(n);
        let m = cols.len();
        cols.entry(w.suffix_from(split)).or_insert(m);
    }
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (w, c) in f.terms() {
        m[(rows[&w.prefix(split)], cols[&w.suffix_from(split)])] = c.clone();
    }
    let mut rw = vec![Word::empty(); rows.len()];
    for (w, i) in rows {
        rw[i] = w;
    }
    let mut cw = vec![Word::empty(); cols.len()];
    for (w, j) in cols {
        cw[j] = w;
    }
    (rw, cw, m)
}

/// Rank of the flattening of a homogeneous polynomial at `split`.
pub fn flattening_rank(f: &NcPoly, split: usize) -> usize {
    flattening(f, split).2.rank()
}

/// Irreducible factors of a homogeneous polynomial, left to right. Every
/// factor except the last is normalised to leading coefficient one.
pub fn factor_homogeneous(f: &NcPoly) -> Result<Vec<NcPoly>> {
    if f.is_zero() {
        return Err(Error::Domain("cannot factor the zero polynomial".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::Domain("factor_homogeneous requires a homogeneous polynomial".into()));
    }
    let d = f.deg0();
    for split in 1..d {
        let (rw, cw, m) = flattening(f, split);
        if m.rank() != 1 {
            continue;
        }
        // rank one: f = (Σ u_i rw_i)(Σ v_j cw_j) with u the first nonzero column
        // scaled to leading entry one, v the matching row
        let j0 = (0..m.ncols()).find(|&j| (0..m.nrows()).any(|i| !m[(i, j)].is_zero())).expect("nonzero");
        let left = NcPoly::from_terms((0..m.nrows()).map(|i| (rw[i].clone(), m[(i, j0)].clone())));
        let left_lc = left.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
        let i0 = rw.iter().position(|w| *w == left_lc.0).expect("row");
        let left = left.scale(&left_lc.1.inv().expect("nonzero"));
        let right = NcPoly::from_terms((0..m.ncols()).map(|j| (cw[j].clone(), m[(i0, j)].clone())));
        debug_assert_eq!(&left * &right, *f);
        let mut out = vec![left];
        out.extend(factor_homogeneous(&right)?);
        return Ok(out);
    }
    Ok(vec![f.clone()])
}

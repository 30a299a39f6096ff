//! Composition structure `f = p(f̃)` with `f̃` non-composite.

use crate::equiv::intertwiner::intertwiner_space;
use crate::error::{Error, Result};
use crate::poly::NcPoly;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

/// `original = p(core)`; the core is monic with zero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub p: UniPoly,
    pub core: NcPoly,
}

impl Decomposition {
    pub fn verify(&self, f: &NcPoly) -> bool {
        self.core.compose(&self.p) == *f
    }
}

/// Smallest-degree nonconstant `h` commuting with `f`, normalised, if its
/// degree is below `deg f`.
fn commuting_generator(f: &NcPoly) -> Option<NcPoly> {
    let n = f.deg0();
    for e in (1..n).filter(|e| n.is_multiple_of(*e)) {
        let space = intertwiner_space(f, f, e);
        if let Some(h) = space.basis.iter().find(|h| !h.is_constant()) {
            let h = h - &NcPoly::constant(h.constant_term());
            return Some(h.monic());
        }
    }
    None
}

/// Writes `f` as a polynomial in `h` by peeling off leading terms.
fn express_in(f: &NcPoly, h: &NcPoly) -> Result<UniPoly> {
    let e = h.deg0();
    let (hw, hc) = h.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonconstant");
    let mut r = f.clone();
    let mut coeffs = vec![Scalar::zero(); f.deg0() / e + 1];
    while !r.is_constant() {
        let (w, c) = r.leading().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
        let k = w.len() / e;
        let hk = h.pow(k as u32);
        if w.len() % e != 0 || hk.leading().map(|(lw, _)| lw) != Some(&w) {
            return Err(Error::Internal(format!("leading word of degree {} is not a power of {hw:?}", w.len())));
        }
        let ck = &c / &hc.pow(k as u32);
        r = &r - &hk.scale(&ck);
        coeffs[k] = ck;
    }
    coeffs[0] = r.constant_term();
    Ok(UniPoly::from_coeffs(coeffs))
}

/// `p(q(t))`.
pub fn compose_uni(p: &UniPoly, q: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * q) + &UniPoly::constant(c.clone());
    }
    acc
}

pub fn decompose(f: &NcPoly) -> Result<Decomposition> {
    if f.is_constant() {
        return Err(Error::Domain("decomposition of a constant".into()));
    }
    match commuting_generator(f) {
        None => {
            // f = lc·core + c0
            let c0 = f.constant_term();
            let lc = f.leading_coeff();
            let core = (f - &NcPoly::constant(c0.clone())).monic();
            Ok(Decomposition { p: UniPoly::from_coeffs(vec![c0, lc]), core })
        }
        Some(h) => {
            let outer = express_in(f, &h)?;
            let inner = decompose(&h)?;
            let d = Decomposition { p: compose_uni(&outer, &inner.p), core: inner.core };
            if !d.verify(f) {
                return Err(Error::Internal("decomposition does not reconstruct".into()));
            }
            Ok(d)
        }
    }
}

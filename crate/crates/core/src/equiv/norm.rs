//! Pointwise norm equality, which holds exactly for unimodular multiples.

use crate::equiv::Budget;
use crate::error::{Error, Result};
use crate::eval::{refute, RefutationWitness, WitnessKind};
use crate::poly::NcPoly;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug)]
pub enum NormVerdict {
    /// `g = ζ·f` with `ζ·conj(ζ) = 1`.
    Equivalent { zeta: Scalar },
    NotEquivalent { witness: Option<RefutationWitness> },
}

fn check_field(p: &NcPoly) -> Result<()> {
    for (_, c) in p.terms() {
        if let Some(f) = c.field() {
            if *f != Field::gaussian() {
                return Err(Error::Domain(format!("coefficients must lie in Q or Q(i), found {}", f.describe())));
            }
        }
    }
    Ok(())
}

pub fn norm_equivalent(f: &NcPoly, g: &NcPoly, budget: &Budget) -> Result<NormVerdict> {
    check_field(f)?;
    check_field(g)?;
    let refuse = || {
        let cfg = crate::eval::RefuteConfig { max_size: budget.refute.max_size.min(3), ..budget.refute.clone() };
        let witness = budget.refute_witnesses.then(|| refute(f, g, WitnessKind::Norm, &cfg, None)).flatten();
        Ok(NormVerdict::NotEquivalent { witness })
    };
    if f.is_zero() && g.is_zero() {
        return Ok(NormVerdict::Equivalent { zeta: Scalar::one() });
    }
    let Some((w, _)) = f.leading().or_else(|| g.leading()) else {
        return refuse();
    };
    let gw = g.coeff(w);
    let fw = f.coeff(w);
    if fw.is_zero() || gw.is_zero() {
        return refuse();
    }
    let zeta = &gw / &fw;
    if *g != f.scale(&zeta) || !(&zeta * &zeta.conj()).is_one() {
        return refuse();
    }
    let ff = f * &f.star();
    let gg = g * &g.star();
    if !ff.cyclically_equivalent(&gg) {
        return Err(Error::Internal("unimodular multiple with different cyclic class of f·f*".into()));
    }
    Ok(NormVerdict::Equivalent { zeta: zeta.simplify() })
}

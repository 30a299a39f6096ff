//! Chains of elementary intertwinings between isospectral polynomials.

use crate::equiv::intertwiner::{elementary_intertwined, elementary_step_with, minimal_intertwiner, ChainStep};
use crate::equiv::Budget;
use crate::eval::char_poly;
use crate::ideal::{divide_right_by, gcrd_bounded, GcrdOutcome};
use crate::linalg::system::basis;
use crate::linalg::{Matrix, PolySystem};
use crate::poly::{alphabet, NcPoly};
use crate::scalar::Scalar;
use crate::word::Word;

/// True when the steps join `f` to `g` and each one expands correctly.
pub fn verify_chain(f: &NcPoly, g: &NcPoly, steps: &[ChainStep]) -> bool {
    if steps.is_empty() {
        return f == g;
    }
    steps.first().map(|s| &s.from) == Some(f)
        && steps.last().map(|s| &s.to) == Some(g)
        && steps.windows(2).all(|w| w[0].to == w[1].from)
        && steps.iter().all(ChainStep::verify)
}

/// Basis of the eigenring of `a`: all `c` with `deg c < deg a` and
/// `a·c ∈ R·a`.
pub fn eigenring_basis(a: &NcPoly, letters: &[crate::word::Letter]) -> Vec<NcPoly> {
    let d = a.deg0() as isize - 1;
    let mut sys = PolySystem::new();
    let c = sys.add_block(basis(letters, d));
    let c2 = sys.add_block(basis(letters, d));
    let one = NcPoly::one();
    sys.add_term(c, a, &one, &Scalar::one());
    sys.add_term(c2, &one, a, &Scalar::from_int(-1));
    sys.solve().nullspace.iter().map(|v| sys.reconstruct(v).remove(0)).filter(|p| !p.is_zero()).collect()
}

/// Matrix of `c ↦ g·c mod R·a` on the eigenring basis (columns are images).
fn left_action(g: &NcPoly, a: &NcPoly, eig: &[NcPoly], letters: &[crate::word::Letter]) -> Option<Matrix> {
    let n = eig.len();
    let mut m = Matrix::zeros(n, n);
    for (i, ci) in eig.iter().enumerate() {
        let mut sys = PolySystem::new();
        let unit = vec![Word::empty()];
        let betas: Vec<usize> = eig.iter().map(|_| sys.add_block(unit.clone())).collect();
        let hdeg = (g.deg0() + ci.deg0()) as isize - a.deg0() as isize;
        let h = sys.add_block(basis(letters, hdeg));
        let one = NcPoly::one();
        for (b, cj) in betas.iter().zip(eig) {
            sys.add_term(*b, cj, &one, &Scalar::one());
        }
        sys.add_term(h, &one, a, &Scalar::one());
        sys.set_target(g * ci);
        let sol = sys.solve();
        let x = sol.particular?;
        for j in 0..n {
            m[(j, i)] = x[j].clone();
        }
    }
    Some(m)
}

fn chain_rec(f: &NcPoly, g: &NcPoly, a: &NcPoly, budget: &Budget, depth: usize) -> Result<Vec<ChainStep>, String> {
    if f == g {
        return Ok(Vec::new());
    }
    if depth > budget.max_chain {
        return Err(format!("chain longer than {}", budget.max_chain));
    }
    if a.is_constant() {
        return Err("constant intertwiner between distinct polynomials".into());
    }
    if let Some(step) = elementary_step_with(f, g, a) {
        return Ok(vec![step]);
    }
    if let Some(step) = elementary_intertwined(f, g, budget.combos, budget.seed) {
        return Ok(vec![step]);
    }
    let letters = alphabet(&[f, g, a]);
    let eig = eigenring_basis(a, &letters);
    let action = left_action(g, a, &eig, &letters).ok_or("left multiplication by g does not preserve the eigenring")?;
    let chi = char_poly(&action);
    let roots = chi.rational_roots();
    if roots.roots.is_empty() {
        return Err(format!("no rational eigenvalue; characteristic polynomial {chi}"));
    }
    for lambda in &roots.roots {
        let shifted = g - &NcPoly::constant(lambda.clone());
        let Ok(GcrdOutcome::Found(res)) = gcrd_bounded(&shifted, a, None) else {
            continue;
        };
        let a1 = res.h;
        if a1.is_constant() {
            continue;
        }
        let (Ok(Some(b)), Ok(Some(a_rest))) = (divide_right_by(&shifted, &a1), divide_right_by(a, &a1)) else {
            continue;
        };
        let g_tilde = &NcPoly::constant(lambda.clone()) + &(&a1 * &b);
        let step = ChainStep { lambda: lambda.clone(), a: a1, b, from: g_tilde.clone(), to: g.clone() };
        if !step.verify() {
            return Err("peeled step failed verification".into());
        }
        let mut steps = chain_rec(f, &g_tilde, &a_rest, budget, depth + 1)?;
        steps.push(step);
        return Ok(steps);
    }
    Err(format!("no eigenvalue of {chi} yields a proper common right factor"))
}

/// A verified chain `f = f₀ ⇝ f₁ ⇝ … ⇝ f_m = g` of elementary intertwinings.
pub fn intertwining_chain(f: &NcPoly, g: &NcPoly, budget: &Budget) -> Result<Vec<ChainStep>, String> {
    if f == g {
        return Ok(Vec::new());
    }
    let a = minimal_intertwiner(f, g, budget.max_deg)
        .ok_or_else(|| format!("no intertwiner of degree <= {}", budget.max_deg))?;
    let steps = chain_rec(f, g, &a, budget, 0)?;
    if !verify_chain(f, g, &steps) {
        return Err("assembled chain failed verification".into());
    }
    Ok(steps)
}

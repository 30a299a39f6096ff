//! Golden data: every numeric display of the worked examples, as checks.

use rayon::prelude::*;

use crate::equiv::{intertwining_chain, minimal_intertwiner, Budget};
use crate::eval::{evaluate, MatrixTuple};
use crate::linalg::Matrix;
use crate::parse::{parse_field, parse_scalar, Context};
use crate::poly::NcPoly;
use crate::scalar::{Field, Scalar};

fn p(src: &str) -> NcPoly {
    Context::default().parse(src).expect("corpus polynomial")
}

fn ints(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(rows)
}

fn pair(x: Matrix, y: Matrix) -> MatrixTuple {
    MatrixTuple::new(vec![x, y]).expect("square pair")
}

/// `X = E₁₁`, `Y = E₁₂`.
pub fn first_pair() -> MatrixTuple {
    pair(ints(&[&[1, 0], &[0, 0]]), ints(&[&[0, 1], &[0, 0]]))
}

/// `X = E₁₁`, `Y` the swap.
pub fn swap_pair() -> MatrixTuple {
    pair(ints(&[&[1, 0], &[0, 0]]), ints(&[&[0, 1], &[1, 0]]))
}

/// `X = E₁₁`, `Y` the rotation by a right angle.
pub fn powers_pair() -> MatrixTuple {
    pair(ints(&[&[1, 0], &[0, 0]]), ints(&[&[0, 1], &[-1, 0]]))
}

/// `X = E₁₂`, `Y = ½·J`.
pub fn opspec_pair() -> MatrixTuple {
    let half = Scalar::from_ratio(1, 2);
    pair(ints(&[&[0, 1], &[0, 0]]), Matrix::from_fn(2, 2, |_, _| half.clone()))
}

pub fn f3() -> NcPoly {
    p("x*y*x*y + x*y + x")
}

pub fn g3() -> NcPoly {
    p("x*y^2*x + x*y + x")
}

/// `p_A = Π_{α∈A} (x − α)`.
pub fn p_set(alphas: &[i64]) -> NcPoly {
    alphas.iter().fold(NcPoly::one(), |acc, &a| &acc * &(&NcPoly::var(0) - &NcPoly::from_int(a)))
}

/// `p_A·y·p_{S∖A} + x` for `S = {1..s}` and `A = {k+1..s}`: the `k`-th waypoint.
pub fn long_waypoint(s: i64, k: i64) -> NcPoly {
    let left: Vec<i64> = (k + 1..=s).collect();
    let right: Vec<i64> = (1..=k).collect();
    &(&(&p_set(&left) * &NcPoly::var(1)) * &p_set(&right)) + &NcPoly::var(0)
}

/// `(a, b, u, v, w)` with `b·u = v·a` and `a·v = w·b`.
pub fn unexpected_polys() -> [NcPoly; 5] {
    [
        p("y*x^3*y + x*y + y*x"),
        p("x*y*x*y*x + x*y + y*x"),
        p("1 + x^2*y"),
        p("1 + x*y*x"),
        p("1 + y*x^2"),
    ]
}

pub fn unexpected_field() -> Field {
    parse_field("Q(sqrt5)(xi: xi^2 = 29 + 13*sqrt5)").expect("tower")
}

/// The 4×4 pair where `(ab)(X,Y)² = 0` but `(ba)(X,Y)² ≠ 0`.
pub fn unexpected_tuple() -> MatrixTuple {
    let field = unexpected_field();
    let m = |rows: [[&str; 4]; 4]| {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|e| parse_scalar(e, &field).expect("entry")).collect()).collect(),
        )
    };
    let x = m([
        ["1", "0", "0", "0"],
        ["0", "(sqrt5 - 1)/2", "0", "0"],
        ["0", "0", "-1", "0"],
        ["0", "0", "0", "(11 - 5*sqrt5)/4*xi"],
    ]);
    let y = m([
        ["0", "(-5 - sqrt5)/10", "0", "0"],
        ["1", "-1", "2", "0"],
        ["1", "-1/(2*sqrt5)", "0", "(5 - 3*sqrt5)/10*xi"],
        ["(sqrt5 - 3)/4", "-sqrt5/2", "(sqrt5 - 3)/2", "xi - 4 - 2*sqrt5"],
    ]);
    pair(x, y)
}

/// One golden check and its outcome.
#[derive(Clone, Debug)]
pub struct CorpusResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<String, String>;

fn expect_eval(f: &NcPoly, x: &MatrixTuple, want: &Matrix, label: &str) -> Result<(), String> {
    let got = evaluate(f, x).map_err(|e| e.to_string())?;
    if &got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, expected {want}"))
    }
}

fn first_example() -> Result<String, String> {
    let x = first_pair();
    expect_eval(&p("x*y + 1"), &x, &ints(&[&[1, 1], &[0, 1]]), "f1")?;
    expect_eval(&p("y*x + 1"), &x, &Matrix::identity(2), "g1")?;
    expect_eval(&p("x*y"), &x, &ints(&[&[0, 1], &[0, 0]]), "f2")?;
    expect_eval(&p("y*x"), &x, &Matrix::zeros(2, 2), "g2")?;
    let x = swap_pair();
    expect_eval(&f3(), &x, &ints(&[&[1, 1], &[0, 0]]), "f3")?;
    expect_eval(&g3(), &x, &ints(&[&[2, 1], &[0, 0]]), "g3")?;
    Ok("six displayed values reproduced".into())
}

fn first_relations() -> Result<String, String> {
    let x = p("x");
    let checks = [
        (&p("x*y + 1") * &x, &x * &p("y*x + 1"), "f1 x = x g1"),
        (&p("x*y") * &x, &x * &p("y*x"), "f2 x = x g2"),
        (&f3() * &p("y*x + 1"), &p("x*y + 1") * &g3(), "f3 (yx+1) = (xy+1) g3"),
    ];
    for (l, r, name) in checks {
        if l != r {
            return Err(format!("{name} fails"));
        }
    }
    Ok("three relations hold".into())
}

fn powers() -> Result<String, String> {
    let x = powers_pair();
    let f = evaluate(&f3(), &x).map_err(|e| e.to_string())?;
    let g = evaluate(&g3(), &x).map_err(|e| e.to_string())?;
    let (f2, g2) = (&f * &f, &g * &g);
    if f2.is_zero() || !g2.is_zero() {
        return Err(format!("f^2 = {f2}, g^2 = {g2}"));
    }
    Ok(format!("rank f(X,Y)^2 = {}, g(X,Y)^2 = 0", f2.rank()))
}

fn long_chain(s: i64) -> Result<String, String> {
    let f = long_waypoint(s, 0);
    let g = long_waypoint(s, s);
    let budget = Budget::default();
    let fwd = minimal_intertwiner(&f, &g, (s * s) as usize).map(|a| a.deg0());
    let rev = minimal_intertwiner(&g, &f, (s * s) as usize).map(|a| a.deg0());
    if fwd != Some(s as usize) || rev != Some((s * s) as usize) {
        return Err(format!("minimal intertwiner degrees {fwd:?} / {rev:?}"));
    }
    let chain = intertwining_chain(&f, &g, &budget)?;
    if chain.len() != s as usize {
        return Err(format!("chain of length {}", chain.len()));
    }
    for (k, step) in chain.iter().enumerate() {
        let want = long_waypoint(s, k as i64 + 1);
        if step.to != want {
            return Err(format!("waypoint {} is {:?}", k + 1, Context::default().print(&step.to)));
        }
    }
    Ok(format!("chain of length {s}, intertwiner degrees {s} and {}", s * s))
}

fn long_chain_2() -> Result<String, String> {
    long_chain(2)
}

fn long_chain_3() -> Result<String, String> {
    long_chain(3)
}

fn unexpected_identities() -> Result<String, String> {
    let [a, b, u, v, w] = unexpected_polys();
    if &b * &u != &v * &a {
        return Err("b u = v a fails".into());
    }
    if &a * &v != &w * &b {
        return Err("a v = w b fails".into());
    }
    if &(&a * &b) * &u != &w * &(&b * &a) {
        return Err("(ab) u = w (ba) fails".into());
    }
    Ok("b u = v a, a v = w b, (ab) u = w (ba)".into())
}

fn unexpected_witness() -> Result<String, String> {
    let [a, b, ..] = unexpected_polys();
    let x = unexpected_tuple();
    let f = evaluate(&(&a * &b), &x).map_err(|e| e.to_string())?;
    let g = evaluate(&(&b * &a), &x).map_err(|e| e.to_string())?;
    let (f2, g2) = (&f * &f, &g * &g);
    if !f2.is_zero() || g2.is_zero() {
        return Err("expected f(X,Y)^2 = 0 and g(X,Y)^2 != 0".into());
    }
    Ok(format!("f(X,Y)^2 = 0, rank g(X,Y)^2 = {}", g2.rank()))
}

fn opspec() -> Result<String, String> {
    let x = opspec_pair();
    let half_x = x.matrices()[0].scale(&Scalar::from_ratio(1, 2));
    expect_eval(&p("y*x^2*y"), &x, &Matrix::zeros(2, 2), "g")?;
    expect_eval(&p("x*y^2*x"), &x, &half_x, "f")?;
    Ok("g(X,Y) = 0, f(X,Y) = X/2".into())
}

const CHECKS: &[(&str, Check)] = &[
    ("first-examples", first_example),
    ("first-relations", first_relations),
    ("powers", powers),
    ("long-chain-2", long_chain_2),
    ("long-chain-3", long_chain_3),
    ("unexpected-identities", unexpected_identities),
    ("unexpected-witness", unexpected_witness),
    ("opspec", opspec),
];

/// Runs every golden check, in parallel, reporting in a fixed order.
pub fn verify_paper() -> Vec<CorpusResult> {
    CHECKS
        .par_iter()
        .map(|(name, check)| match check() {
            Ok(detail) => CorpusResult { name, passed: true, detail },
            Err(detail) => CorpusResult { name, passed: false, detail },
        })
        .collect()
}

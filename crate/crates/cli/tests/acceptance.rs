//! Acceptance run: one line per criterion, exit status 1 if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ncpoly::equiv::{
    intertwining_chain, is_isospectral, minimal_intertwiner, norm_equivalent, intertwiner_space, stable_association,
    Budget, IsospectralCertificate, IsospectralVerdict, NormVerdict, StableAssocVerdict,
};
use ncpoly::eval::{char_poly, evaluate, jordan_profile, norms, MatrixTuple, RefuteConfig, WitnessKind};
use ncpoly::linalg::Matrix;
use ncpoly::parse::{parse_field, parse_scalar};
use ncpoly::pencils::{joint_similarity, pad_pencil, verify_similarity, LinearPencil, SimilarityVerdict};
use ncpoly::word::{Letter, Word};
use ncpoly::{Context, Field, NcPoly, Scalar, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn p(src: &str) -> NcPoly {
    Context::default().parse(src).unwrap()
}

fn ints(rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(rows)
}

fn tuple(m: Vec<Matrix>) -> MatrixTuple {
    MatrixTuple::new(m).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eval(f: &NcPoly, x: &MatrixTuple) -> Matrix {
    evaluate(f, x).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_int_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| Scalar::from_int(r.gen_range(-bound..=bound))).collect()).collect())
}

fn random_tuple(r: &mut ChaCha8Rng, n: usize, k: usize, bound: i64) -> MatrixTuple {
    tuple((0..n).map(|_| random_int_matrix(r, k, k, bound)).collect())
}

fn random_invertible(r: &mut ChaCha8Rng, k: usize) -> Matrix {
    loop {
        let m = random_int_matrix(r, k, k, 3);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random polynomial of degree at most `deg` in `x, y`, coefficients drawn by `coeff`.
fn random_poly(r: &mut ChaCha8Rng, deg: usize, terms: usize, coeff: impl Fn(&mut ChaCha8Rng) -> Scalar) -> NcPoly {
    loop {
        let mut f = NcPoly::zero();
        for _ in 0..terms {
            let len = r.gen_range(0..=deg);
            let w = Word::from_letters((0..len).map(|_| Letter::new(r.gen_range(0..2), false)));
            f.add_term(w, &coeff(r));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

fn int_coeff(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_int(r.gen_range(-4..=4))
}

fn gaussian_coeff(r: &mut ChaCha8Rng) -> Scalar {
    let re = Scalar::from_int(r.gen_range(-3..=3));
    let im = Scalar::from_int(r.gen_range(-3..=3));
    &re + &(&im * &Scalar::imaginary_unit())
}

/// Characteristic polynomial by the Faddeev-LeVerrier recursion.
fn leverrier(m: &Matrix) -> UniPoly {
    let n = m.nrows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut acc = Matrix::zeros(n, n);
    for k in 1..=n {
        let shifted = &acc + &Matrix::scalar(n, &coeffs[n + 1 - k]);
        acc = m * &shifted;
        coeffs[n - k] = (&acc.trace() * &Scalar::from_ratio(-1, k as i64)).simplify();
    }
    UniPoly::from_coeffs(coeffs)
}

fn ncpoly_json(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_ncpoly")).args(args).arg("--json").output().unwrap();
    (out.status.code().unwrap_or(-1), serde_json::from_slice(&out.stdout).unwrap_or(Value::Null))
}

fn golden_evaluations() -> Outcome {
    let x = tuple(vec![ints(&[&[1, 0], &[0, 0]]), ints(&[&[0, 1], &[0, 0]])]);
    let s = tuple(vec![ints(&[&[1, 0], &[0, 0]]), ints(&[&[0, 1], &[1, 0]])]);
    let displayed = [
        ("xy+1", "x*y + 1", &x, ints(&[&[1, 1], &[0, 1]])),
        ("yx+1", "y*x + 1", &x, ints(&[&[1, 0], &[0, 1]])),
        ("xy", "x*y", &x, ints(&[&[0, 1], &[0, 0]])),
        ("yx", "y*x", &x, ints(&[&[0, 0], &[0, 0]])),
        ("f3", "x*y*x*y + x*y + x", &s, ints(&[&[1, 1], &[0, 0]])),
        ("g3", "x*y^2*x + x*y + x", &s, ints(&[&[2, 1], &[0, 0]])),
    ];
    for (name, src, at, want) in displayed {
        let got = eval(&p(src), at);
        ensure(got == want, || format!("{name}(X,Y) = {got}, expected {want}"))?;
    }
    Ok("6 displayed values reproduced exactly".into())
}

fn stable_association_cli() -> Outcome {
    let (code, v) = ncpoly_json(&["stable-assoc", "x*y*x*y+x*y+x", "x*y^2*x+x*y+x"]);
    ensure(code == 0, || format!("stable-assoc f3 g3 exited {code}"))?;
    let (f, g) = (p("x*y*x*y + x*y + x"), p("x*y^2*x + x*y + x"));
    let cert = &v["certificate"];
    let (a, b) = (p(cert["a"].as_str().unwrap_or("0")), p(cert["b"].as_str().unwrap_or("0")));
    ensure(!a.is_zero() && &f * &a == &b * &g, || "relation f·a = b·g fails".into())?;
    let right = &cert["right"];
    let (u, w) = (p(right["u"].as_str().unwrap_or("0")), p(right["v"].as_str().unwrap_or("0")));
    ensure(&(&f * &u) + &(&b * &w) == NcPoly::one(), || format!("right comaximality fails: {right}"))?;
    let left = &cert["left"];
    let (s, t) = (p(left["u"].as_str().unwrap_or("0")), p(left["v"].as_str().unwrap_or("0")));
    ensure(&(&s * &a) + &(&t * &g) == NcPoly::one(), || format!("left comaximality fails: {left}"))?;
    let (code, v) = ncpoly_json(&["stable-assoc", "x*y", "y*x"]);
    ensure(code == 1, || format!("stable-assoc xy yx exited {code}"))?;
    let w = &v["witness"];
    ensure(w["kind"] == "rank" && w["size"] == 2, || format!("witness {w}"))?;
    let x = tuple(
        w["matrices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| ncpoly::json::matrix_from_json(m, &Field::rationals()).unwrap())
            .collect(),
    );
    let (rf, rg) = (eval(&p("x*y"), &x).rank(), eval(&p("y*x"), &x).rank());
    ensure(rf != rg, || "witness ranks agree".into())?;
    Ok(format!("f3·({}) = ({})·g3 with both comaximality identities; xy/yx ranks {rf} vs {rg} at size 2", cert["a"].as_str().unwrap(), cert["b"].as_str().unwrap()))
}

fn isospectrality() -> Outcome {
    let budget = Budget::default();
    let (f, g) = (p("x*y + 1"), p("y*x + 1"));
    match is_isospectral(&f, &g, &budget) {
        IsospectralVerdict::Isospectral(IsospectralCertificate::Intertwiner(a)) => {
            ensure(a == p("x"), || "intertwiner is not x".into())?;
            ensure(&f * &a == &a * &g, || "(xy+1)x = x(yx+1) fails".into())?;
        }
        other => return Err(format!("xy+1 vs yx+1: {other:?}")),
    }
    let refute = RefuteConfig { structured: false, samples: 16, max_size: 3, ..RefuteConfig::default() };
    let budget = Budget { refute, ..Budget::default() };
    let (f, g) = (p("x*y*x*y + x*y + x"), p("x*y^2*x + x*y + x"));
    match is_isospectral(&f, &g, &budget) {
        IsospectralVerdict::NotIsospectral { witness: Some(w), .. } => {
            ensure(w.kind == WitnessKind::Charpoly, || format!("witness of kind {}", w.kind.name()))?;
            ensure(w.attempts <= 50 && w.tuple.size() <= 3, || format!("witness after {} samples", w.attempts))?;
            let (cf, cg) = (leverrier(&eval(&f, &w.tuple)), leverrier(&eval(&g, &w.tuple)));
            ensure(cf != cg, || "char polys agree at the witness".into())?;
            Ok(format!("intertwiner x; f3/g3 char-poly witness at size {} after {} samples", w.tuple.size(), w.attempts))
        }
        other => Err(format!("f3 vs g3: {other:?}")),
    }
}

fn p_set(alphas: &[i64]) -> String {
    alphas.iter().map(|a| format!("(x - {a})")).collect::<Vec<_>>().join("*")
}

fn waypoint(s: i64, k: i64) -> NcPoly {
    let left: Vec<i64> = (k + 1..=s).collect();
    let right: Vec<i64> = (1..=k).collect();
    let mut src = String::new();
    if !left.is_empty() {
        src += &p_set(&left);
        src += "*";
    }
    src += "y";
    if !right.is_empty() {
        src += "*";
        src += &p_set(&right);
    }
    p(&format!("{src} + x"))
}

fn proportional(a: &NcPoly, b: &NcPoly) -> bool {
    let Some((w, c)) = b.leading() else { return a.is_zero() };
    let r = &a.coeff(w) / c;
    !r.is_zero() && *a == b.scale(&r)
}

fn chains() -> Outcome {
    let mut parts = Vec::new();
    for s in [2i64, 3] {
        let (f, g) = (waypoint(s, 0), waypoint(s, s));
        let chain = intertwining_chain(&f, &g, &Budget::default())?;
        ensure(chain.len() == s as usize, || format!("s = {s}: chain of length {}", chain.len()))?;
        let mut cur = f.clone();
        for (k, step) in chain.iter().enumerate() {
            ensure(step.from == cur, || format!("s = {s}: step {} is not contiguous", k + 1))?;
            let lambda = NcPoly::constant(step.lambda.clone());
            ensure(step.from == &lambda + &(&step.a * &step.b), || format!("s = {s}: from ≠ λ + ab"))?;
            ensure(step.to == &lambda + &(&step.b * &step.a), || format!("s = {s}: to ≠ λ + ba"))?;
            let want = waypoint(s, k as i64 + 1);
            let (to_lin, want_lin) = (&step.to - &p("x"), &want - &p("x"));
            ensure(proportional(&to_lin, &want_lin), || format!("s = {s}: waypoint {} differs", k + 1))?;
            cur = step.to.clone();
        }
        ensure(cur == g, || format!("s = {s}: chain does not end at g"))?;
        let d = (s * s) as usize;
        let fwd = minimal_intertwiner(&f, &g, d).map(|a| a.deg0());
        let rev = minimal_intertwiner(&g, &f, d).map(|a| a.deg0());
        ensure(fwd == Some(s as usize) && rev == Some(d), || format!("s = {s}: degrees {fwd:?} / {rev:?}"))?;
        parts.push(format!("s={s}: length {s}, degrees {s}/{d}"));
    }
    Ok(parts.join("; "))
}

fn powers() -> Outcome {
    let (f, g) = (p("x*y*x*y + x*y + x"), p("x*y^2*x + x*y + x"));
    let x = tuple(vec![ints(&[&[1, 0], &[0, 0]]), ints(&[&[0, 1], &[-1, 0]])]);
    let (fx, gx) = (eval(&f, &x), eval(&g, &x));
    let (f2, g2) = (&fx * &fx, &gx * &gx);
    ensure(f2.rank() >= 1 && g2.is_zero(), || format!("f(X,Y)^2 = {f2}, g(X,Y)^2 = {g2}"))?;
    let (ff, gg) = (f.pow(2), g.pow(2));
    match stable_association(&ff, &gg, &Budget::default()).map_err(|e| e.to_string())? {
        StableAssocVerdict::Associated(_) => Err("certificate produced for f3^2, g3^2".into()),
        StableAssocVerdict::NotAssociated { witness: Some(w), .. } => {
            ensure(w.tuple == x, || format!("refuter found a different tuple: {:?}", w.tuple))?;
            ensure(eval(&ff, &w.tuple).rank() != eval(&gg, &w.tuple).rank(), || "ranks agree".into())?;
            Ok(format!("rank f(X,Y)^2 = {}, g(X,Y)^2 = 0; no certificate, witness after {} samples", f2.rank(), w.attempts))
        }
        other => Err(format!("no witness: {other:?}")),
    }
}

fn unexpected() -> Outcome {
    let a = p("y*x^3*y + x*y + y*x");
    let b = p("x*y*x*y*x + x*y + y*x");
    let u = p("1 + x^2*y");
    let v = p("1 + x*y*x");
    let w = p("1 + y*x^2");
    ensure(&b * &u == &v * &a, || "b·u = v·a fails".into())?;
    ensure(&a * &v == &w * &b, || "a·v = w·b fails".into())?;
    let (f, g) = (&a * &b, &b * &a);
    ensure(&f * &u == &w * &g, || "(ab)u = w(ba) fails".into())?;
    let cert = match stable_association(&f, &g, &Budget::default()).map_err(|e| e.to_string())? {
        StableAssocVerdict::Associated(c) => c,
        other => return Err(format!("ab vs ba: {other:?}")),
    };
    ensure(cert.verify(&f, &g), || "certificate does not verify".into())?;
    ensure(&f * &cert.a == &cert.b * &g, || "certificate relation fails".into())?;
    let is_uw = cert.a == u && cert.b == w;
    let mut r = rng(6);
    for _ in 0..10 {
        let x = random_tuple(&mut r, 2, 3, 3);
        let (jf, jg) = (jordan_profile(&eval(&f, &x)), jordan_profile(&eval(&g, &x)));
        ensure(jf == jg, || format!("jordan profiles differ at {x:?}"))?;
    }
    let field = parse_field("Q(sqrt5)(xi: xi^2 = 29 + 13*sqrt5)").unwrap();
    let m = |rows: [[&str; 4]; 4]| {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|e| parse_scalar(e, &field).unwrap()).collect()).collect())
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
    let xy = tuple(vec![x, y]);
    let (fx, gx) = (eval(&f, &xy), eval(&g, &xy));
    ensure((&fx * &fx).is_zero(), || "f(X,Y)^2 ≠ 0".into())?;
    ensure(!(&gx * &gx).is_zero(), || "g(X,Y)^2 = 0".into())?;
    Ok(format!(
        "identities hold; certificate (a, b) = ({}, {}){}; 10 jordan profiles agree; f(X,Y)^2 = 0, g(X,Y)^2 ≠ 0",
        Context::default().print(&cert.a),
        Context::default().print(&cert.b),
        if is_uw { " = (u, w)" } else { "" }
    ))
}

fn unimodular(f: &NcPoly, g: &NcPoly) -> bool {
    let Some((w, c)) = f.leading() else { return g.is_zero() };
    let z = &g.coeff(w) / c;
    (&z * &z.conj()).is_one() && *g == f.scale(&z)
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

fn norms_suite() -> Outcome {
    let i = Scalar::imaginary_unit();
    let zetas = [Scalar::one(), Scalar::from_int(-1), i.clone(), &Scalar::from_int(-1) * &i];
    let mut r = rng(7);
    for k in 0..50 {
        let f = random_poly(&mut r, 3, 5, gaussian_coeff);
        let zeta = &zetas[k % 4];
        match norm_equivalent(&f, &f.scale(zeta), &Budget::default()).map_err(|e| e.to_string())? {
            NormVerdict::Equivalent { zeta: z } => ensure(z == *zeta, || format!("ζ = {z:?}"))?,
            other => return Err(format!("f vs ζf: {other:?}")),
        }
    }
    let refute = RefuteConfig { min_size: 1, max_size: 3, samples: 6, structured: false, tol: 1e-4, ..RefuteConfig::default() };
    let budget = Budget { refute, ..Budget::default() };
    let mut most = 0;
    for _ in 0..50 {
        let (f, g) = loop {
            let f = random_poly(&mut r, 3, 5, gaussian_coeff);
            let g = random_poly(&mut r, 3, 5, gaussian_coeff);
            if !unimodular(&f, &g) {
                break (f, g);
            }
        };
        let w = match norm_equivalent(&f, &g, &budget).map_err(|e| e.to_string())? {
            NormVerdict::NotEquivalent { witness: Some(w) } => w,
            other => return Err(format!("no witness for a non-unimodular pair: {other:?}")),
        };
        ensure(w.attempts <= 20 && w.tuple.size() <= 3, || format!("witness after {} samples", w.attempts))?;
        let (nf, ng) = (norms(&eval(&f, &w.tuple)), norms(&eval(&g, &w.tuple)));
        let gap = relative_gap(nf.0, ng.0).max(relative_gap(nf.1, ng.1));
        ensure(gap > 1e-4, || format!("gap {gap:e}"))?;
        most = most.max(w.attempts);
    }
    Ok(format!("50 unimodular multiples certified; 50 pairs refuted, at most {most} samples each"))
}

fn isospectral_forward() -> Outcome {
    let mut r = rng(8);
    for _ in 0..100 {
        let a = loop {
            let a = random_poly(&mut r, 2, 3, int_coeff);
            if !a.is_constant() {
                break a;
            }
        };
        let b = random_poly(&mut r, 2, 3, int_coeff);
        let lambda = NcPoly::from_int(r.gen_range(-5..=5));
        let (f, g) = (&lambda + &(&a * &b), &lambda + &(&b * &a));
        for k in 2..=4 {
            for _ in 0..5 {
                let x = random_tuple(&mut r, 2, k, 4);
                let (cf, cg) = (leverrier(&eval(&f, &x)), leverrier(&eval(&g, &x)));
                ensure(cf == cg, || format!("char polys differ for a = {a:?}, b = {b:?}"))?;
                ensure(cf == char_poly(&eval(&f, &x)), || "library char poly disagrees".into())?;
            }
        }
        let space = intertwiner_space(&f, &g, a.deg0());
        ensure(space.contains(&a), || format!("intertwiner space misses a = {a:?}"))?;
    }
    Ok("100 triples, 1500 char-poly comparisons, a in every intertwiner space".into())
}

fn rank_forward() -> Outcome {
    let mut r = rng(9);
    for _ in 0..50 {
        let a = random_poly(&mut r, 2, 3, int_coeff);
        let b = random_poly(&mut r, 2, 3, int_coeff);
        let lambda = NcPoly::from_int([-3, -2, -1, 1, 2, 3][r.gen_range(0..6)]);
        let (f, g) = (&lambda + &(&a * &b), &lambda + &(&b * &a));
        ensure(&f * &a == &a * &g, || "relation (λ+ab)a = a(λ+ba) fails".into())?;
        for k in 2..=4 {
            for _ in 0..10 {
                let x = random_tuple(&mut r, 2, k, 4);
                let (rf, rg) = (eval(&f, &x).rank(), eval(&g, &x).rank());
                ensure(rf == rg, || format!("ranks {rf} vs {rg}"))?;
            }
        }
    }
    Ok("50 pairs, 1500 rank comparisons".into())
}

fn evaluation_axioms() -> Outcome {
    let mut r = rng(10);
    for _ in 0..100 {
        let f = random_poly(&mut r, 3, 6, int_coeff);
        let (k1, k2) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let (x, y) = (random_tuple(&mut r, 2, k1, 4), random_tuple(&mut r, 2, k2, 4));
        let sum = tuple(x.matrices().iter().zip(y.matrices()).map(|(a, b)| a.direct_sum(b)).collect());
        ensure(eval(&f, &sum) == eval(&f, &x).direct_sum(&eval(&f, &y)), || "direct sum fails".into())?;
        let s = random_invertible(&mut r, k1);
        let si = s.inverse().unwrap();
        let conj = tuple(x.matrices().iter().map(|m| &(&s * m) * &si).collect());
        ensure(eval(&f, &conj) == &(&s * &eval(&f, &x)) * &si, || "conjugation fails".into())?;
    }
    Ok("100 direct sums and 100 conjugations".into())
}

fn joint_similarity_suite() -> Outcome {
    let mut r = rng(11);
    for k in 0..50 {
        let c = r.gen_range(1..=4);
        let n = r.gen_range(1..=3);
        let a: Vec<Matrix> = (0..n).map(|_| random_int_matrix(&mut r, c, c, 3)).collect();
        let pm = random_invertible(&mut r, c);
        let pi = pm.inverse().unwrap();
        let b: Vec<Matrix> = a.iter().map(|m| &(&pm * m) * &pi).collect();
        match joint_similarity(&a, &b, 32, k).map_err(|e| e.to_string())? {
            SimilarityVerdict::Similar(q) => {
                ensure(!q.det().is_zero(), || "singular certificate".into())?;
                ensure(a.iter().zip(&b).all(|(x, y)| &q * x == y * &q), || "Q·A ≠ B·Q".into())?;
                ensure(verify_similarity(&a, &b, &q), || "library verifier disagrees".into())?;
            }
            other => return Err(format!("similar tuples not certified: {other:?}")),
        }
    }
    let a = vec![ints(&[&[0, 1], &[0, 0]])];
    let b = vec![ints(&[&[0, 0], &[0, 0]])];
    match joint_similarity(&a, &b, 32, 0).map_err(|e| e.to_string())? {
        SimilarityVerdict::NotSimilar(_) => Ok("50 certificates recovered; n = 1 pair refuted".into()),
        other => Err(format!("n = 1 pair: {other:?}")),
    }
}

fn pad_pencil_suite() -> Outcome {
    let mut r = rng(12);
    let mut seen = Vec::new();
    for s in 0..20 {
        let d = r.gen_range(1..=3);
        let n = 2;
        let mut coeffs = vec![random_invertible(&mut r, d)];
        coeffs.push(random_int_matrix(&mut r, d, d, 3));
        let lambda = LinearPencil::new(None, coeffs.clone()).map_err(|e| e.to_string())?;
        let pp_rows = r.gen_range(1..=4);
        let q = r.gen_range(1..=pp_rows);
        let degenerate = s % 2 == 0;
        let t: Vec<Matrix> = (0..n)
            .map(|_| {
                let mut m = random_int_matrix(&mut r, pp_rows, q, 2);
                if degenerate {
                    for i in 0..pp_rows {
                        m[(i, q - 1)] = Scalar::zero();
                    }
                }
                m
            })
            .collect();
        let pp = pad_pencil(&lambda, &t, 20, s).map_err(|e| e.to_string())?;
        let big = coeffs.iter().zip(&t).fold(Matrix::zeros(d * pp_rows, d * q), |acc, (a, m)| &acc + &a.kron(m));
        let kernel = d * q - big.rank();
        let p_tilde = pp_rows + (pp_rows - q) * (d - 1);
        let formula = p_tilde * d - kernel;
        ensure(pp.kernel_dim == kernel && pp.claimed_rank == formula, || format!("claimed {} vs {formula}", pp.claimed_rank))?;
        ensure(pp.verified_rank == formula, || format!("verified rank {} below {formula} (d={d}, {pp_rows}x{q})", pp.verified_rank))?;
        seen.push(kernel);
    }
    Ok(format!("20 padded pencils verified, kernel dimensions {seen:?}"))
}

fn opspec() -> Outcome {
    let half = Scalar::from_ratio(1, 2);
    let x = ints(&[&[0, 1], &[0, 0]]);
    let y = Matrix::from_fn(2, 2, |_, _| half.clone());
    let xy = tuple(vec![x.clone(), y]);
    let g = eval(&p("y*x^2*y"), &xy);
    let f = eval(&p("x*y^2*x"), &xy);
    ensure(g.is_zero(), || format!("g(X,Y) = {g}"))?;
    ensure(f == x.scale(&half), || format!("f(X,Y) = {f}"))?;
    Ok("g(X,Y) = 0, f(X,Y) = X/2".into())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "golden evaluations", limit: Duration::from_secs(1), run: golden_evaluations },
        Criterion { name: "stable association", limit: Duration::from_secs(5), run: stable_association_cli },
        Criterion { name: "isospectrality", limit: Duration::from_secs(10), run: isospectrality },
        Criterion { name: "intertwining chains", limit: Duration::from_secs(60), run: chains },
        Criterion { name: "powers counterexample", limit: Duration::from_secs(5), run: powers },
        Criterion { name: "ab versus ba", limit: Duration::from_secs(120), run: unexpected },
        Criterion { name: "norm equivalence", limit: Duration::from_secs(60), run: norms_suite },
        Criterion { name: "elementary intertwining", limit: Duration::from_secs(60), run: isospectral_forward },
        Criterion { name: "rank equivalence", limit: Duration::from_secs(60), run: rank_forward },
        Criterion { name: "evaluation axioms", limit: Duration::from_secs(10), run: evaluation_axioms },
        Criterion { name: "joint similarity", limit: Duration::from_secs(30), run: joint_similarity_suite },
        Criterion { name: "padded pencils", limit: Duration::from_secs(60), run: pad_pencil_suite },
        Criterion { name: "operator isospectral pair", limit: Duration::from_secs(1), run: opspec },
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time: {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {:>2} {:<26} {:>8.2}s / {:>4}s  {detail}",
            k + 1,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

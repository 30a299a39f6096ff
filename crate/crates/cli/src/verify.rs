//! Re-checks reports by expanding their certificates, without calling any solver.

use ncpoly::corpus::verify_paper;
use ncpoly::eval::{char_poly, evaluate, jordan_profile, norm_gap, norms, MatrixTuple};
use ncpoly::json::{matrix_from_json, pencil_from_json, rect_tuple_from_json, tuple_from_json};
use ncpoly::linalg::Matrix;
use ncpoly::parse::{parse_field, parse_scalar, parse_unipoly};
use ncpoly::{Context, Field, NcPoly, Scalar, UniPoly};
use serde_json::Value;

use crate::Outcome;

struct Doc<'a> {
    v: &'a Value,
    ctx: Context,
}

impl Doc<'_> {
    fn str_at<'b>(&self, v: &'b Value, key: &str) -> Result<&'b str, String> {
        v.get(key).and_then(Value::as_str).ok_or_else(|| format!("missing string field `{key}`"))
    }

    fn poly_at(&self, v: &Value, key: &str) -> Result<NcPoly, String> {
        self.ctx.parse(self.str_at(v, key)?).map_err(|e| format!("field `{key}`: {e}"))
    }

    fn polys_at(&self, v: &Value, key: &str) -> Result<Vec<NcPoly>, String> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| format!("missing array `{key}`"))?
            .iter()
            .map(|s| {
                let s = s.as_str().ok_or_else(|| format!("`{key}` must hold strings"))?;
                self.ctx.parse(s).map_err(|e| format!("field `{key}`: {e}"))
            })
            .collect()
    }

    fn input(&self, key: &str) -> Result<NcPoly, String> {
        self.poly_at(&self.v["inputs"], key)
    }

    fn cert(&self) -> Result<&Value, String> {
        self.v.get("certificate").filter(|c| c.is_object()).ok_or_else(|| "missing certificate".into())
    }

    fn scalar(&self, v: &Value, key: &str) -> Result<Scalar, String> {
        parse_scalar(self.str_at(v, key)?, &self.ctx.field).map_err(|e| format!("field `{key}`: {e}"))
    }
}

fn check(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{what} does not hold"))
    }
}

/// Returns the verification outcome and a one-line account. `Err` means the
/// report itself is malformed.
pub fn verify_report(v: &Value) -> Result<(Outcome, String), String> {
    let command = v.get("command").and_then(Value::as_str).ok_or("report has no `command`")?;
    let outcome = v.get("outcome").and_then(Value::as_str).ok_or("report has no `outcome`")?;
    let field = match v.get("field").and_then(Value::as_str) {
        Some(s) => parse_field(s).map_err(|e| e.to_string())?,
        None => Field::rationals(),
    };
    let vars: Vec<String> = match v.get("vars").and_then(Value::as_array) {
        Some(a) => a.iter().filter_map(|s| s.as_str().map(str::to_string)).collect(),
        None => ncpoly::parse::default_var_names(3),
    };
    let doc = Doc { v, ctx: Context::new(vars, field) };
    let result = match outcome {
        "certificate" => certificate(&doc, command).map(|m| format!("certificate verified: {m}")),
        "refuted" => match v.get("witness").filter(|w| w.is_object()) {
            Some(w) => witness(&doc, command, w).map(|m| format!("witness verified: {m}")),
            None => {
                return Ok((Outcome::Undecided, "refutation carries no witness to re-check".into()));
            }
        },
        _ => return Ok((Outcome::Undecided, format!("nothing to check in a report with outcome `{outcome}`"))),
    };
    Ok(match result {
        Ok(m) => (Outcome::Certificate, m),
        Err(m) => (Outcome::Refuted, format!("verification failed: {m}")),
    })
}

fn certificate(doc: &Doc, command: &str) -> Result<String, String> {
    match command {
        "eval" => {
            let f = doc.input("f")?;
            let x = tuple_from_json(&doc.v["inputs"]["tuple"]).map_err(|e| e.to_string())?;
            let tf = doc.v["inputs"]["tuple"]["field"].as_str().unwrap_or("Q");
            let tf = parse_field(tf).map_err(|e| e.to_string())?;
            let value = &doc.cert()?["value"];
            let want = matrix_from_json(value, &doc.ctx.field)
                .or_else(|_| matrix_from_json(value, &tf))
                .map_err(|e| e.to_string())?;
            check(evaluate(&f, &x).map_err(|e| e.to_string())? == want, "f(X) = value")?;
            Ok("f(X) recomputed".into())
        }
        "intertwiner" => {
            let (f, g) = (doc.input("f")?, doc.input("g")?);
            let a = doc.poly_at(doc.cert()?, "a")?;
            check(!a.is_zero() && &f * &a == &a * &g, "f·a = a·g")?;
            Ok("f·a = a·g".into())
        }
        "isospectral" => isospectral(doc),
        "chain" => {
            let (f, g) = (doc.input("f")?, doc.input("g")?);
            let steps = doc.cert()?["steps"].as_array().ok_or("missing `steps`")?;
            let mut cur = f.clone();
            for (k, s) in steps.iter().enumerate() {
                let l = NcPoly::constant(doc.scalar(s, "lambda")?);
                let (a, b) = (doc.poly_at(s, "a")?, doc.poly_at(s, "b")?);
                let (from, to) = (doc.poly_at(s, "from")?, doc.poly_at(s, "to")?);
                check(from == cur, &format!("step {} starts where the previous ended", k + 1))?;
                check(from == &l + &(&a * &b), &format!("step {}: from = λ + ab", k + 1))?;
                check(to == &l + &(&b * &a), &format!("step {}: to = λ + ba", k + 1))?;
                cur = to;
            }
            check(cur == g, "the chain ends at g")?;
            Ok(format!("{} elementary steps from f to g", steps.len()))
        }
        "stable-assoc" => {
            let (f, g) = (doc.input("f")?, doc.input("g")?);
            let c = doc.cert()?;
            let (a, b) = (doc.poly_at(c, "a")?, doc.poly_at(c, "b")?);
            check(!a.is_zero() && !b.is_zero() && &f * &a == &b * &g, "f·a = b·g")?;
            let (u, v) = (doc.poly_at(&c["right"], "u")?, doc.poly_at(&c["right"], "v")?);
            check(&(&f * &u) + &(&b * &v) == NcPoly::one(), "f·u + b·v = 1")?;
            let (u, v) = (doc.poly_at(&c["left"], "u")?, doc.poly_at(&c["left"], "v")?);
            check(&(&u * &a) + &(&v * &g) == NcPoly::one(), "u'·a + v'·g = 1")?;
            Ok("f·a = b·g with both comaximality relations".into())
        }
        "similar" => {
            check(doc.input("f")? == doc.input("g")?, "f = g")?;
            Ok("f = g".into())
        }
        "nc-witness" => {
            let (a, b) = (doc.input("a")?, doc.input("b")?);
            check(&a * &b == &b * &a, "ab = ba")?;
            Ok("ab = ba".into())
        }
        "norm-equiv" => {
            let (f, g) = (doc.input("f")?, doc.input("g")?);
            let z = doc.scalar(doc.cert()?, "zeta")?;
            check(g == f.scale(&z), "g = ζ·f")?;
            check((&z * &z.conj()).is_one(), "|ζ| = 1")?;
            Ok("g = ζ·f with |ζ| = 1".into())
        }
        "decompose" => {
            let f = doc.input("f")?;
            let c = doc.cert()?;
            let p = unipoly(doc, c, "p")?;
            check(doc.poly_at(c, "core")?.compose(&p) == f, "f = p(core)")?;
            Ok("f = p(core)".into())
        }
        "factor-homog" => {
            let f = doc.input("f")?;
            let fs = doc.polys_at(doc.cert()?, "factors")?;
            check(fs.iter().all(|p| !p.is_constant()), "factors are nonconstant")?;
            check(fs.iter().fold(NcPoly::one(), |acc, p| &acc * p) == f, "product of factors = f")?;
            Ok(format!("product of {} factors equals f", fs.len()))
        }
        "gcrd" => {
            let (p, q) = (doc.input("p")?, doc.input("q")?);
            let c = doc.cert()?;
            let [h, qp, qq, s, t] = ["h", "qp", "qq", "s", "t"].map(|k| doc.poly_at(c, k));
            let (h, qp, qq, s, t) = (h?, qp?, qq?, s?, t?);
            check(&qp * &h == p && &qq * &h == q, "p = qp·h and q = qq·h")?;
            check(&(&s * &p) + &(&t * &q) == h, "s·p + t·q = h")?;
            Ok("h divides p and q on the right and lies in Rp + Rq".into())
        }
        "comax" => {
            let (f, g) = (doc.input("f")?, doc.input("g")?);
            let c = doc.cert()?;
            let (u, v) = (doc.poly_at(c, "u")?, doc.poly_at(c, "v")?);
            let lhs = match c["side"].as_str() {
                Some("right") => &(&f * &u) + &(&g * &v),
                Some("left") => &(&u * &f) + &(&v * &g),
                _ => return Err("`side` must be `right` or `left`".into()),
            };
            check(lhs == NcPoly::one(), "Bezout relation")?;
            Ok("Bezout relation equals 1".into())
        }
        "pencil-sim" => {
            let a = tuple_from_json(&doc.v["inputs"]["a"]).map_err(|e| e.to_string())?;
            let b = tuple_from_json(&doc.v["inputs"]["b"]).map_err(|e| e.to_string())?;
            let pf = ncpoly::json::field_of(a.matrices().iter().chain(b.matrices()).flat_map(|m| m.entries()));
            let p = matrix_from_json(&doc.cert()?["p"], &pf).map_err(|e| e.to_string())?;
            check(!p.det().is_zero(), "det P ≠ 0")?;
            check(a.matrices().iter().zip(b.matrices()).all(|(x, y)| &p * x == y * &p), "P·Aⱼ = Bⱼ·P")?;
            Ok("P is invertible and intertwines every pair".into())
        }
        "pad-pencil" => pad(doc),
        "verify-paper" => {
            let failed: Vec<_> = verify_paper().into_iter().filter(|r| !r.passed).map(|r| r.name).collect();
            check(failed.is_empty(), &format!("corpus items {failed:?}"))?;
            Ok("corpus re-run".into())
        }
        other => Err(format!("no certificate checker for `{other}`")),
    }
}

fn unipoly(doc: &Doc, v: &Value, key: &str) -> Result<UniPoly, String> {
    parse_unipoly(doc.str_at(v, key)?, &doc.ctx.field).map_err(|e| format!("field `{key}`: {e}"))
}

fn isospectral(doc: &Doc) -> Result<String, String> {
    let (f, g) = (doc.input("f")?, doc.input("g")?);
    let c = doc.cert()?;
    match c["kind"].as_str() {
        Some("equal") => {
            check(f == g, "f = g")?;
            Ok("f = g".into())
        }
        Some("intertwiner") => {
            let a = doc.poly_at(c, "a")?;
            check(!a.is_zero() && &f * &a == &a * &g, "f·a = a·g")?;
            Ok("f·a = a·g".into())
        }
        Some("parametric") => {
            let p = unipoly(doc, c, "p")?;
            let (cf, cg) = (doc.poly_at(c, "core_f")?, doc.poly_at(c, "core_g")?);
            check(cf.compose(&p) == f && cg.compose(&p) == g, "f = p(F) and g = p(G)")?;
            let (a, b) = (doc.polys_at(c, "a")?, doc.polys_at(c, "b")?);
            check(a.iter().any(|x| !x.is_zero()), "A ≠ 0")?;
            let at = |k: usize| a.get(k).cloned().unwrap_or_default();
            let bt = |k: usize| b.get(k).cloned().unwrap_or_default();
            for k in 0..=a.len().max(b.len()) {
                // coefficient of t^k in (F − t)A(t) − B(t)(G − t)
                let mut e = &(&cf * &at(k)) - &(&bt(k) * &cg);
                if k > 0 {
                    e = &(&e - &at(k - 1)) + &bt(k - 1);
                }
                check(e.is_zero(), &format!("coefficient of t^{k} in (F − t)A = B(G − t)"))?;
            }
            Ok("f = p(F), g = p(G) and (F − t)A(t) = B(t)(G − t)".into())
        }
        _ => Err("unknown isospectral certificate kind".into()),
    }
}

fn pad(doc: &Doc) -> Result<String, String> {
    let l = pencil_from_json(&doc.v["inputs"]["pencil"]).map_err(|e| e.to_string())?;
    let t = rect_tuple_from_json(&doc.v["inputs"]["t"]).map_err(|e| e.to_string())?;
    let c = doc.cert()?;
    let num = |k: &str| c[k].as_u64().map(|x| x as usize).ok_or_else(|| format!("missing number `{k}`"));
    let (p, q, d) = (t[0].nrows(), t[0].ncols(), l.size());
    let p_tilde = p + (p - q) * (d - 1);
    let mut lt = Matrix::zeros(d * p, d * q);
    for (a, ti) in l.coeffs.iter().zip(&t) {
        lt = &lt + &a.kron(ti);
    }
    let kernel = d * q - lt.rank();
    check(num("p_tilde")? == p_tilde, "p̃ = p + (p − q)(d − 1)")?;
    check(num("kernel_dim")? == kernel, "dim ker Λ(T)")?;
    check(num("claimed_rank")? == p_tilde * d - kernel, "claimed rank = p̃d − dim ker Λ(T)")?;
    check(num("verified_rank")? == num("claimed_rank")?, "sampled rank reaches the claim")?;
    Ok(format!("p̃ = {p_tilde}, dim ker Λ(T) = {kernel}, rank {}", p_tilde * d - kernel))
}

fn witness(doc: &Doc, command: &str, w: &Value) -> Result<String, String> {
    let x: MatrixTuple = tuple_from_json(w).map_err(|e| e.to_string())?;
    if command == "nc-witness" {
        let (a, b) = (doc.input("a")?, doc.input("b")?);
        let k = w["k"].as_u64().ok_or("missing `k`")? as u32;
        let fv = evaluate(&(&a * &b), &x).map_err(|e| e.to_string())?.pow(k);
        let gv = evaluate(&(&b * &a), &x).map_err(|e| e.to_string())?.pow(k);
        let want: Vec<usize> = w["ranks"].as_array().into_iter().flatten().filter_map(Value::as_u64).map(|r| r as usize).collect();
        let got = vec![fv.rank(), gv.rank()];
        check(got == want && got[0] != got[1], "rank (ab)(X)^k ≠ rank (ba)(X)^k")?;
        return Ok(format!("ranks {} and {} at power {k}", got[0], got[1]));
    }
    let (f, g) = (doc.input("f")?, doc.input("g")?);
    let fv = evaluate(&f, &x).map_err(|e| e.to_string())?;
    let gv = evaluate(&g, &x).map_err(|e| e.to_string())?;
    match w["kind"].as_str() {
        Some("rank") => {
            check(fv.rank() != gv.rank(), "rank f(X) ≠ rank g(X)")?;
            Ok(format!("rank f(X) = {}, rank g(X) = {}", fv.rank(), gv.rank()))
        }
        Some("charpoly") => {
            check(char_poly(&fv) != char_poly(&gv), "char polys differ")?;
            Ok("char polys of f(X) and g(X) differ".into())
        }
        Some("jordan") => {
            check(fv != gv && jordan_profile(&fv) != jordan_profile(&gv), "Jordan structures differ")?;
            Ok("f(X) and g(X) are not similar".into())
        }
        Some("norm") => {
            let tol = w["tol"].as_f64().unwrap_or(1e-8);
            let ((ff, fo), (gf, go)) = (norms(&fv), norms(&gv));
            check(norm_gap(ff, gf) > tol || norm_gap(fo, go) > tol, "norm gap above tolerance")?;
            Ok(format!("norm gap {:.3e}", norm_gap(ff, gf).max(norm_gap(fo, go))))
        }
        _ => Err("unknown witness kind".into()),
    }
}

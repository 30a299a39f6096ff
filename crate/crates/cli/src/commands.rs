use std::io::Read as _;

use clap::{Subcommand, ValueEnum};
use ncpoly::corpus::verify_paper;
use ncpoly::equiv::{
    decompose, intertwining_chain, is_isospectral, minimal_intertwiner, noncommutativity_witness, norm_equivalent,
    pointwise_similar, stable_association, ChainStep, IsospectralCertificate, IsospectralVerdict, NormVerdict,
    NotIsospectralReason, SimilarVerdict, StableAssocVerdict,
};
use ncpoly::eval::{evaluate, Discrepancy, MatrixTuple, RefutationWitness};
use ncpoly::ideal::{self, comaximality_certificate, factor_homogeneous, gcrd_bounded, ComaxCertificate, GcrdOutcome};
use ncpoly::json::{
    matrix_to_json, pencil_from_json, pencil_to_json, rect_tuple_from_json, tuple_from_json, tuple_to_json,
    witness_to_json,
};
use ncpoly::pencils::{joint_similarity, pad_pencil, SimilarityVerdict};
use ncpoly::NcPoly;
use serde_json::{json, Value};

use crate::{verify_report, Outcome, Report, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    fn core(self) -> ideal::Side {
        match self {
            Side::Right => ideal::Side::Right,
            Side::Left => ideal::Side::Left,
        }
    }
}

/// Matrix arguments are a file path, `-` for stdin, or inline JSON.
#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Evaluate f at a matrix tuple.
    Eval { f: String, tuple: String },
    /// Find a nonzero a of least degree with f·a = a·g.
    Intertwiner { f: String, g: String },
    /// Decide whether f(X) and g(X) have equal spectra for every X.
    Isospectral { f: String, g: String },
    /// Join isospectral f and g by elementary steps λ + ab → λ + ba.
    Chain { f: String, g: String },
    /// Decide stable association (equal ranks of f(X) and g(X) for every X).
    StableAssoc { f: String, g: String },
    /// Decide whether f(X) and g(X) are similar for every X.
    Similar { f: String, g: String },
    /// Decide whether f(X) and g(X) have equal norms for every X.
    NormEquiv { f: String, g: String },
    /// Write f = p(f̃) with f̃ not composite.
    Decompose { f: String },
    /// Factor a homogeneous polynomial into irreducibles.
    FactorHomog { f: String },
    /// Greatest common right divisor with Bezout cofactors.
    Gcrd { p: String, q: String },
    /// Certify that f and g generate the ring on one side.
    Comax {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Decide joint similarity of two matrix tuples.
    PencilSim { a: String, b: String },
    /// Pad a full homogeneous pencil with a rectangular tuple and verify its inner rank.
    PadPencil { pencil: String, t: String },
    /// Find X and k with rank (ab)(X)^k ≠ rank (ba)(X)^k.
    NcWitness { a: String, b: String },
    /// Reproduce every numeric example of the golden corpus.
    VerifyPaper,
    /// Re-check the certificate or witness embedded in a JSON report.
    Verify { report: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Intertwiner { .. } => "intertwiner",
            Command::Isospectral { .. } => "isospectral",
            Command::Chain { .. } => "chain",
            Command::StableAssoc { .. } => "stable-assoc",
            Command::Similar { .. } => "similar",
            Command::NormEquiv { .. } => "norm-equiv",
            Command::Decompose { .. } => "decompose",
            Command::FactorHomog { .. } => "factor-homog",
            Command::Gcrd { .. } => "gcrd",
            Command::Comax { .. } => "comax",
            Command::PencilSim { .. } => "pencil-sim",
            Command::PadPencil { .. } => "pad-pencil",
            Command::NcWitness { .. } => "nc-witness",
            Command::VerifyPaper => "verify-paper",
            Command::Verify { .. } => "verify",
        }
    }
}

pub fn load_json(name: &str, arg: &str) -> Result<Value, String> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("argument {name}: {e}"))?;
        s
    } else if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("argument {name}: cannot read {arg}: {e}"))?
    };
    serde_json::from_str(&text)
        .map_err(|e| format!("argument {name}: invalid JSON at line {}, column {}: {e}", e.line(), e.column()))
}

fn load_tuple(name: &str, arg: &str) -> Result<MatrixTuple, String> {
    tuple_from_json(&load_json(name, arg)?).map_err(|e| format!("argument {name}: {e}"))
}

/// Runs one command. Never panics on bad input; malformed input yields a
/// usage report.
pub fn run(cmd: &Command, cfg: &RunConfig) -> Report {
    let name = cmd.name();
    let mut r = Report::new(name, Outcome::Undecided, cfg);
    match dispatch(cmd, cfg, &mut r) {
        Ok(()) => r,
        Err(msg) => Report::usage(name, msg, cfg),
    }
}

fn two(cfg: &RunConfig, f: &str, g: &str, r: &mut Report) -> Result<(NcPoly, NcPoly), String> {
    let (f, g) = (cfg.poly("f", f)?, cfg.poly("g", g)?);
    r.set("inputs", json!({"f": cfg.print(&f), "g": cfg.print(&g)}));
    r.line(format!("  f = {}", cfg.print(&f)));
    r.line(format!("  g = {}", cfg.print(&g)));
    Ok((f, g))
}

fn dispatch(cmd: &Command, cfg: &RunConfig, r: &mut Report) -> Result<(), String> {
    let budget = cfg.budget();
    let pr = |p: &NcPoly| cfg.print(p);
    match cmd {
        Command::Eval { f, tuple } => {
            let f = cfg.poly("f", f)?;
            let x = load_tuple("tuple", tuple)?;
            let v = evaluate(&f, &x).map_err(|e| e.to_string())?;
            r.set("inputs", json!({"f": pr(&f), "tuple": tuple_to_json(&x)}));
            r.set("certificate", json!({"value": matrix_to_json(&v)}));
            r.set_outcome(Outcome::Certificate);
            r.line(format!("  f(X) = {v}"));
            r.line(format!("  rank {}", v.rank()));
        }
        Command::Intertwiner { f, g } => {
            let (f, g) = two(cfg, f, g, r)?;
            match minimal_intertwiner(&f, &g, cfg.max_deg) {
                Some(a) => {
                    r.set("certificate", json!({"a": pr(&a)}));
                    r.set_outcome(Outcome::Certificate);
                    r.line(format!("  f·a = a·g with a = {} (degree {})", pr(&a), a.deg0()));
                }
                None => undecided(r, format!("no intertwiner of degree at most {}", cfg.max_deg)),
            }
        }
        Command::Isospectral { f, g } => {
            let (f, g) = two(cfg, f, g, r)?;
            isospectral_report(cfg, &is_isospectral(&f, &g, &budget), r);
        }
        Command::Chain { f, g } => {
            let (f, g) = two(cfg, f, g, r)?;
            match intertwining_chain(&f, &g, &budget) {
                Ok(steps) => {
                    r.set("certificate", json!({"steps": steps.iter().map(|s| step_json(cfg, s)).collect::<Vec<_>>()}));
                    r.set_outcome(Outcome::Certificate);
                    r.line(format!("  chain of {} elementary steps", steps.len()));
                    for (k, s) in steps.iter().enumerate() {
                        r.line(format!(
                            "  step {}: λ = {}, a = {}, b = {}",
                            k + 1,
                            s.lambda,
                            pr(&s.a),
                            pr(&s.b)
                        ));
                        r.line(format!("          {} → {}", pr(&s.from), pr(&s.to)));
                    }
                }
                Err(msg) => match is_isospectral(&f, &g, &budget) {
                    v @ IsospectralVerdict::NotIsospectral { .. } => isospectral_report(cfg, &v, r),
                    _ => undecided(r, msg),
                },
            }
        }
        Command::StableAssoc { f, g } => {
            let (f, g) = two(cfg, f, g, r)?;
            match stable_association(&f, &g, &budget).map_err(|e| e.to_string())? {
                StableAssocVerdict::Associated(c) => {
                    r.set(
                        "certificate",
                        json!({
                            "a": pr(&c.a),
                            "b": pr(&c.b),
                            "right": comax_json(cfg, &c.right),
                            "left": comax_json(cfg, &c.left),
                        }),
                    );
                    r.set_outcome(Outcome::Certificate);
                    r.line(format!("  f·a = b·g with a = {}, b = {}", pr(&c.a), pr(&c.b)));
                    r.line(format!("  f·u + b·v = 1 with u = {}, v = {}", pr(&c.right.u), pr(&c.right.v)));
                    r.line(format!("  u'·a + v'·g = 1 with u' = {}, v' = {}", pr(&c.left.u), pr(&c.left.v)));
                }
                StableAssocVerdict::NotAssociated { reason, witness } => refuted(cfg, r, &reason, witness.as_ref()),
                StableAssocVerdict::Undecided(msg) => undecided(r, msg),
            }
        }
        Command::Similar { f, g } => {
            let (f, g) = two(cfg, f, g, r)?;
            match pointwise_similar(&f, &g, &budget) {
                SimilarVerdict::Similar => {
                    r.set("certificate", json!({"kind": "equal"}));
                    r.set_outcome(Outcome::Certificate);
                    r.line("  f = g");
                }
                SimilarVerdict::NotSimilar(w) => refuted(cfg, r, "f ≠ g", w.as_ref()),
            }
        }
        Command::NormEquiv { f, g } => {
            let (f, g) = two(cfg, f, g, r)?;
            match norm_equivalent(&f, &g, &budget).map_err(|e| e.to_string())? {
                NormVerdict::Equivalent { zeta } => {
                    r.set("certificate", json!({"zeta": zeta.to_string()}));
                    r.set_outcome(Outcome::Certificate);
                    r.line(format!("  g = ζ·f with ζ = {zeta}, |ζ| = 1"));
                }
                NormVerdict::NotEquivalent { witness } => {
                    refuted(cfg, r, "g is not a unimodular multiple of f", witness.as_ref())
                }
            }
        }
        Command::Decompose { f } => {
            let f = cfg.poly("f", f)?;
            r.set("inputs", json!({"f": pr(&f)}));
            let d = decompose(&f).map_err(|e| e.to_string())?;
            r.set("certificate", json!({"p": d.p.to_string(), "core": pr(&d.core)}));
            r.set_outcome(Outcome::Certificate);
            r.line(format!("  f = p(f̃) with p(t) = {}, f̃ = {}", d.p, pr(&d.core)));
        }
        Command::FactorHomog { f } => {
            let f = cfg.poly("f", f)?;
            r.set("inputs", json!({"f": pr(&f)}));
            let fs = factor_homogeneous(&f).map_err(|e| e.to_string())?;
            r.set("certificate", json!({"factors": fs.iter().map(pr).collect::<Vec<_>>()}));
            r.set_outcome(Outcome::Certificate);
            let shown: Vec<String> = fs.iter().map(|p| format!("({})", pr(p))).collect();
            r.line(format!("  f = {}", shown.join("·")));
        }
        Command::Gcrd { p, q } => {
            let (p, q) = (cfg.poly("p", p)?, cfg.poly("q", q)?);
            r.set("inputs", json!({"p": pr(&p), "q": pr(&q)}));
            match gcrd_bounded(&p, &q, None).map_err(|e| e.to_string())? {
                GcrdOutcome::Found(h) => {
                    r.set(
                        "certificate",
                        json!({"h": pr(&h.h), "qp": pr(&h.qp), "qq": pr(&h.qq), "s": pr(&h.s), "t": pr(&h.t)}),
                    );
                    r.set_outcome(Outcome::Certificate);
                    r.line(format!("  h = {}", pr(&h.h)));
                    r.line(format!("  p = ({})·h, q = ({})·h", pr(&h.qp), pr(&h.qq)));
                    r.line(format!("  h = ({})·p + ({})·q", pr(&h.s), pr(&h.t)));
                }
                GcrdOutcome::Undecided => undecided(r, "no common right divisor found within the degree bounds".into()),
            }
        }
        Command::Comax { f, g, side } => {
            let (f, g) = two(cfg, f, g, r)?;
            match comaximality_certificate(&f, &g, side.core()) {
                Some(c) => {
                    r.set("certificate", comax_json(cfg, &c));
                    r.set_outcome(Outcome::Certificate);
                    let eq = match side {
                        Side::Right => "f·u + g·v = 1",
                        Side::Left => "u·f + v·g = 1",
                    };
                    r.line(format!("  {eq} with u = {}, v = {}", pr(&c.u), pr(&c.v)));
                }
                None => refuted(cfg, r, "no Bezout relation within the degree bounds, so none exists", None),
            }
        }
        Command::PencilSim { a, b } => {
            let (a, b) = (load_tuple("a", a)?, load_tuple("b", b)?);
            r.set("inputs", json!({"a": tuple_to_json(&a), "b": tuple_to_json(&b)}));
            match joint_similarity(a.matrices(), b.matrices(), budget.combos, cfg.seed).map_err(|e| e.to_string())? {
                SimilarityVerdict::Similar(p) => {
                    r.set("certificate", json!({"p": matrix_to_json(&p)}));
                    r.set_outcome(Outcome::Certificate);
                    r.line(format!("  P·Aⱼ = Bⱼ·P with P = {p}"));
                }
                SimilarityVerdict::NotSimilar(msg) => refuted(cfg, r, &msg, None),
                SimilarityVerdict::Undecided(msg) => undecided(r, msg),
            }
        }
        Command::PadPencil { pencil, t } => {
            let l = pencil_from_json(&load_json("pencil", pencil)?).map_err(|e| format!("argument pencil: {e}"))?;
            let tv = load_json("t", t)?;
            let tm = rect_tuple_from_json(&tv).map_err(|e| format!("argument t: {e}"))?;
            r.set("inputs", json!({"pencil": pencil_to_json(&l), "t": tv}));
            let pp = pad_pencil(&l, &tm, cfg.samples, cfg.seed).map_err(|e| e.to_string())?;
            r.set(
                "certificate",
                json!({
                    "p": pp.p, "q": pp.q, "d": pp.d, "p_tilde": pp.p_tilde,
                    "kernel_dim": pp.kernel_dim, "claimed_rank": pp.claimed_rank, "verified_rank": pp.verified_rank,
                }),
            );
            r.line(format!("  p = {}, q = {}, d = {}, p̃ = {}", pp.p, pp.q, pp.d, pp.p_tilde));
            r.line(format!(
                "  claimed inner rank p̃d − dim ker Λ(T) = {} − {} = {}",
                pp.p_tilde * pp.d,
                pp.kernel_dim,
                pp.claimed_rank
            ));
            r.line(format!("  rank reached by random substitution: {}", pp.verified_rank));
            if pp.is_verified() {
                r.set_outcome(Outcome::Certificate);
            } else {
                undecided(r, "random substitutions stayed below the claimed rank".into());
            }
        }
        Command::NcWitness { a, b } => {
            let (a, b) = (cfg.poly("a", a)?, cfg.poly("b", b)?);
            r.set("inputs", json!({"a": pr(&a), "b": pr(&b)}));
            if &a * &b == &b * &a {
                r.set("certificate", json!({"kind": "equal"}));
                r.set_outcome(Outcome::Certificate);
                r.line("  ab = ba");
            } else if let Some(w) = noncommutativity_witness(&a, &b, &budget) {
                let mut v = tuple_to_json(&w.tuple);
                v["k"] = json!(w.k);
                v["ranks"] = json!([w.ranks.0, w.ranks.1]);
                r.set("witness", v);
                r.set_outcome(Outcome::Refuted);
                r.line(format!("  at size {}: rank (ab)(X)^{k} = {}, rank (ba)(X)^{k} = {}", w.tuple.size(), w.ranks.0, w.ranks.1, k = w.k));
                tuple_lines(cfg, r, &w.tuple);
            } else {
                undecided(r, "no witness among sampled tuples".into());
            }
        }
        Command::VerifyPaper => {
            let items = verify_paper();
            let ok = items.iter().all(|i| i.passed);
            r.set(
                "items",
                Value::Array(
                    items.iter().map(|i| json!({"name": i.name, "passed": i.passed, "detail": i.detail})).collect(),
                ),
            );
            for i in &items {
                r.line(format!("  [{}] {}: {}", if i.passed { "pass" } else { "FAIL" }, i.name, i.detail));
            }
            r.set_outcome(if ok { Outcome::Certificate } else { Outcome::Refuted });
        }
        Command::Verify { report } => {
            let v = load_json("report", report)?;
            let (outcome, msg) = verify_report(&v)?;
            r.set("checked", json!(msg));
            r.set_outcome(outcome);
            r.line(format!("  {msg}"));
        }
    }
    Ok(())
}

fn undecided(r: &mut Report, msg: String) {
    r.set("reason", json!(msg));
    r.set_outcome(Outcome::Undecided);
    r.line(format!("  {msg}"));
}

fn refuted(cfg: &RunConfig, r: &mut Report, reason: &str, witness: Option<&RefutationWitness>) {
    r.set("reason", json!(reason));
    r.set_outcome(Outcome::Refuted);
    r.line(format!("  {reason}"));
    if let Some(w) = witness {
        let mut v = witness_to_json(w);
        v["tol"] = json!(cfg.tol);
        r.set("witness", v);
        r.line(format!("  {} witness at size {} (attempt {}):", w.kind.name(), w.tuple.size(), w.attempts));
        tuple_lines(cfg, r, &w.tuple);
        r.line(format!("    {}", discrepancy_text(&w.discrepancy)));
    }
}

fn tuple_lines(cfg: &RunConfig, r: &mut Report, x: &MatrixTuple) {
    for (k, m) in x.matrices().iter().enumerate() {
        let name = cfg.vars.get(k).cloned().unwrap_or_else(|| format!("X{}", k + 1));
        r.line(format!("    {} = {m}", name.to_uppercase()));
    }
}

fn discrepancy_text(d: &Discrepancy) -> String {
    match d {
        Discrepancy::Rank { f, g } => format!("rank f(X) = {f}, rank g(X) = {g}"),
        Discrepancy::Charpoly { f, g } => format!("char poly of f(X) = {f}, of g(X) = {g}"),
        Discrepancy::Jordan { f, g } => {
            if f.char_poly != g.char_poly {
                format!("char poly of f(X) = {}, of g(X) = {}", f.char_poly, g.char_poly)
            } else {
                format!("equal char poly {} but different Jordan structure", f.char_poly)
            }
        }
        Discrepancy::Norm { frobenius, operator } => format!(
            "Frobenius norms {:.6} vs {:.6}, operator norms {:.6} vs {:.6}",
            frobenius.0, frobenius.1, operator.0, operator.1
        ),
    }
}

fn comax_json(cfg: &RunConfig, c: &ComaxCertificate) -> Value {
    json!({
        "side": match c.side { ideal::Side::Right => "right", ideal::Side::Left => "left" },
        "f": cfg.print(&c.f),
        "g": cfg.print(&c.g),
        "u": cfg.print(&c.u),
        "v": cfg.print(&c.v),
    })
}

fn step_json(cfg: &RunConfig, s: &ChainStep) -> Value {
    json!({
        "lambda": s.lambda.to_string(),
        "a": cfg.print(&s.a),
        "b": cfg.print(&s.b),
        "from": cfg.print(&s.from),
        "to": cfg.print(&s.to),
    })
}

fn reason_text(r: &NotIsospectralReason) -> String {
    match r {
        NotIsospectralReason::Degree => "degrees differ".into(),
        NotIsospectralReason::ConstantTerm => "constant terms differ".into(),
        NotIsospectralReason::LeadingCoefficient => "leading coefficients differ".into(),
        NotIsospectralReason::Traces => "f − g is not a sum of commutators, so some traces differ".into(),
        NotIsospectralReason::Outer { p, q } => format!("outer polynomials differ: {p} vs {q}"),
        NotIsospectralReason::FullRank { lambda } => {
            format!("(F − t)A = B(G − t) has only the zero solution (full rank at t = {lambda})")
        }
        NotIsospectralReason::Constant => "distinct constants".into(),
    }
}

fn isospectral_report(cfg: &RunConfig, v: &IsospectralVerdict, r: &mut Report) {
    let pr = |p: &NcPoly| cfg.print(p);
    match v {
        IsospectralVerdict::Isospectral(c) => {
            let cert = match c {
                IsospectralCertificate::Equal => {
                    r.line("  f = g");
                    json!({"kind": "equal"})
                }
                IsospectralCertificate::Intertwiner(a) => {
                    r.line(format!("  f·a = a·g with a = {}", pr(a)));
                    json!({"kind": "intertwiner", "a": pr(a)})
                }
                IsospectralCertificate::Parametric { p, core_f, core_g, a, b } => {
                    r.line(format!("  f = p(F), g = p(G) with p(t) = {p}, F = {}, G = {}", pr(core_f), pr(core_g)));
                    r.line("  (F − t)·A(t) = B(t)·(G − t) with A = Σ Aₖtᵏ, B = Σ Bₖtᵏ:");
                    for (k, (ak, bk)) in a.iter().zip(b).enumerate() {
                        r.line(format!("    A{k} = {}, B{k} = {}", pr(ak), pr(bk)));
                    }
                    json!({
                        "kind": "parametric",
                        "p": p.to_string(),
                        "core_f": pr(core_f),
                        "core_g": pr(core_g),
                        "a": a.iter().map(pr).collect::<Vec<_>>(),
                        "b": b.iter().map(pr).collect::<Vec<_>>(),
                    })
                }
            };
            r.set("certificate", cert);
            r.set_outcome(Outcome::Certificate);
        }
        IsospectralVerdict::NotIsospectral { reason, witness } => refuted(cfg, r, &reason_text(reason), witness.as_ref()),
        IsospectralVerdict::Undecided(msg) => undecided(r, msg.clone()),
    }
}

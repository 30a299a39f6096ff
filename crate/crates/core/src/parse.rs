//! Text front-end for polynomials, scalars and field declarations.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*'? power)*
//! power  := atom ('^' nat)*
//! atom   := rational ['i'] | ident ['*'] | '(' expr ')'
//! ```
//!
//! Juxtaposition is multiplication and never commutes. A `*` directly after
//! a variable denotes its adjoint when it is followed by another `*` or by
//! something that cannot start a factor (`x*y` is a product, `x**y` is `x*·y`).

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::NcPoly;
use crate::scalar::{Field, Scalar};
use crate::unipoly::UniPoly;
use crate::word::{Letter, Word};

/// Variable names and coefficient field used for parsing and printing.
#[derive(Clone, Debug)]
pub struct Context {
    pub vars: Vec<String>,
    pub field: Field,
}

impl Context {
    pub fn new(vars: Vec<String>, field: Field) -> Context {
        Context { vars, field }
    }

    /// Default names `x, y, z` for up to three variables, else `x1..xn`, over `Q`.
    pub fn with_arity(n: usize) -> Context {
        Context::new(default_var_names(n), Field::rationals())
    }

    pub fn parse(&self, src: &str) -> Result<NcPoly> {
        parse_poly(src, self)
    }

    pub fn print(&self, f: &NcPoly) -> String {
        format_poly(f, &self.vars)
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::with_arity(2)
    }
}

pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"].iter().take(n.max(2)).map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Parses a comma-separated variable list such as `x,y` or `a, b, c`.
pub fn parse_var_list(src: &str) -> Result<Vec<String>> {
    let vars: Vec<String> = src.split(',').map(|s| s.trim().to_string()).collect();
    for (k, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Parse { line: 1, col: k + 1, msg: format!("invalid variable name `{v}`") });
        }
    }
    Ok(vars)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
    field: Field,
    // offset of the first character, for error positions in multi-line input
    origin: (usize, usize),
}

enum Ident {
    Var(usize),
    Scalar(Scalar),
}

impl<'a> Parser<'a> {
    fn new(src: &str, vars: &'a [String], field: Field, origin: (usize, usize)) -> Parser<'a> {
        Parser { chars: src.chars().collect(), pos: 0, vars, field, origin }
    }

    fn error(&self, pos: usize, msg: impl Into<String>) -> Error {
        let mut line = self.origin.0;
        let mut col = self.origin.1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Error::Parse { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_factor_start(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '_')
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.try_sub(&t) } else { acc.try_add(&t) }.map_err(|e| self.error(self.pos, e.to_string()))?;
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    if !self.at_factor_start() {
                        return Err(self.error(self.pos, "expected a factor after `*`"));
                    }
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    let d = self.power()?;
                    let inv = if d.is_constant() { d.constant_term().inv() } else { None };
                    let Some(inv) = inv else {
                        return Err(self.error(start, "can only divide by a nonzero constant"));
                    };
                    acc = acc.scale(&inv);
                    continue;
                }
                _ if self.at_factor_start() => {}
                _ => return Ok(acc),
            }
            let start = self.pos;
            let f = self.power()?;
            acc = acc.try_mul(&f).map_err(|e| self.error(start, e.to_string()))?;
        }
    }

    fn power(&mut self) -> Result<NcPoly> {
        let base = self.atom()?;
        let mut acc = base;
        while self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.chars.get(self.pos) == Some(&'-') {
                return Err(self.error(start, "negative exponents are not allowed"));
            }
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error(start, "expected a natural exponent"));
            }
            let k: u32 = digits.parse().map_err(|_| self.error(start, "exponent too large"))?;
            if k > 4096 {
                return Err(self.error(start, "exponent too large"));
            }
            acc = acc.pow(k);
        }
        Ok(acc)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<NcPoly> {
        let start = self.pos;
        match self.peek() {
            None => Err(self.error(self.pos, "unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let mut r = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
                if self.chars.get(self.pos) == Some(&'/')
                    && self.chars.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                    let dpos = self.pos;
                    let den: BigInt = self.digits().parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(self.error(dpos, "zero denominator"));
                    }
                    r /= BigRational::from_integer(den);
                }
                let s = Scalar::from_rational(r);
                // a trailing `i` not starting a longer identifier is the imaginary unit
                if self.chars.get(self.pos) == Some(&'i')
                    && !self.chars.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                    && !self.vars.iter().any(|v| v == "i")
                {
                    self.pos += 1;
                    let i = self.imaginary_unit(start)?;
                    return Ok(NcPoly::constant(&s * &i));
                }
                Ok(NcPoly::constant(s))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => match self.ident()? {
                Ident::Var(v) => {
                    let star = self.star_suffix();
                    Ok(NcPoly::monomial(Word::from_letters([Letter::new(v, star)]), Scalar::one()))
                }
                Ident::Scalar(s) => Ok(NcPoly::constant(s)),
            },
            Some(c) => Err(self.error(start, format!("unexpected character `{c}`"))),
        }
    }

    fn star_suffix(&mut self) -> bool {
        if self.chars.get(self.pos) != Some(&'*') {
            return false;
        }
        let save = self.pos;
        self.pos += 1;
        if self.chars.get(self.pos) == Some(&'*') {
            return true;
        }
        let factor_next = self.at_factor_start();
        self.pos = if factor_next { save } else { save + 1 };
        !factor_next
    }

    fn imaginary_unit(&self, pos: usize) -> Result<Scalar> {
        if let Some(i) = self.field.imaginary_unit() {
            return Ok(i);
        }
        if self.field.is_rational() {
            return Ok(Scalar::imaginary_unit());
        }
        Err(self.error(pos, format!("the field {} has no imaginary unit", self.field)))
    }

    /// Longest match among variables, generators and the imaginary unit.
    fn ident(&mut self) -> Result<Ident> {
        let start = self.pos;
        let rest: String = self.chars[self.pos..].iter().collect();
        let mut best: Option<(usize, Ident)> = None;
        for (k, v) in self.vars.iter().enumerate() {
            if rest.starts_with(v.as_str()) && best.as_ref().is_none_or(|(l, _)| v.len() > *l) {
                best = Some((v.len(), Ident::Var(k)));
            }
        }
        for g in self.field.generators() {
            if rest.starts_with(g.name.as_str()) && best.as_ref().is_none_or(|(l, _)| g.name.len() > *l) {
                best = Some((g.name.len(), Ident::Scalar(self.field.generator(&g.name).expect("declared"))));
            }
        }
        if best.is_none() && rest.starts_with('i') {
            best = Some((1, Ident::Scalar(self.imaginary_unit(start)?)));
        }
        match best {
            Some((len, id)) => {
                self.pos += rest[..len].chars().count();
                Ok(id)
            }
            None => {
                let name: String = rest.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
                Err(self.error(start, format!("unknown identifier `{name}`")))
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(self.pos, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses a polynomial in the given context. A leading `field ...` line
/// overrides the context's field.
pub fn parse_poly(src: &str, ctx: &Context) -> Result<NcPoly> {
    Ok(parse_with_preamble(src, ctx)?.1)
}

/// Parses an optional `field ...` preamble line followed by an expression.
pub fn parse_with_preamble(src: &str, ctx: &Context) -> Result<(Context, NcPoly)> {
    let trimmed = src.trim_start();
    let mut ctx = ctx.clone();
    let mut body = src;
    let mut origin = (1, 1);
    if let Some(rest) = trimmed.strip_prefix("field ") {
        let (decl, tail) = match rest.find(['\n', ';']) {
            Some(k) => (&rest[..k], &rest[k + 1..]),
            None => return Err(Error::Parse { line: 1, col: 1, msg: "field preamble without expression".into() }),
        };
        ctx.field = parse_field(decl.trim())?;
        body = tail;
        origin = (2, 1);
    }
    let mut p = Parser::new(body, &ctx.vars, ctx.field.clone(), origin);
    let e = p.expr()?;
    p.finish()?;
    Ok((ctx, e))
}

/// Parses an exact scalar expression over `field`.
pub fn parse_scalar(src: &str, field: &Field) -> Result<Scalar> {
    let mut p = Parser::new(src, &[], field.clone(), (1, 1));
    let e = p.expr()?;
    p.finish()?;
    Ok(e.constant_term())
}

/// Parses a univariate polynomial in `t`.
pub fn parse_unipoly(src: &str, field: &Field) -> Result<UniPoly> {
    let vars = vec!["t".to_string()];
    let mut p = Parser::new(src, &vars, field.clone(), (1, 1));
    let e = p.expr()?;
    p.finish()?;
    if e.has_star() {
        return Err(Error::Parse { line: 1, col: 1, msg: "adjoints are not allowed in univariate input".into() });
    }
    let mut coeffs = vec![Scalar::zero(); e.deg0() + 1];
    for (w, c) in e.terms() {
        coeffs[w.len()] = c.clone();
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

/// Parses a field declaration such as `Q`, `Q(i)`, `Q(sqrt5)` or
/// `Q(sqrt5)(xi: xi^2 = 29 + 13*sqrt5)`.
pub fn parse_field(src: &str) -> Result<Field> {
    let s = src.trim();
    let err = |col: usize, msg: &str| Error::Parse { line: 1, col, msg: msg.to_string() };
    let Some(mut rest) = s.strip_prefix('Q') else {
        return Err(err(1, "field declarations start with `Q`"));
    };
    let mut field = Field::rationals();
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            return Ok(field);
        }
        let col = s.len() - rest.len() + 1;
        if !rest.starts_with('(') {
            return Err(err(col, "expected `(`"));
        }
        let close = matching_paren(rest).ok_or_else(|| err(col, "unbalanced parentheses"))?;
        let inner = rest[1..close].trim();
        rest = &rest[close + 1..];
        field = if inner == "i" {
            let i2 = Scalar::from_int(-1);
            field.extend("i", &i2, false)?
        } else if let Some((name, rel)) = inner.split_once(':') {
            let name = name.trim();
            let rel = rel.trim();
            let (lhs, rhs) = rel.split_once('=').ok_or_else(|| err(col, "expected `name^2 = value`"))?;
            if lhs.replace(' ', "") != format!("{name}^2") {
                return Err(err(col, "relation must have the form `name^2 = value`"));
            }
            let sq = parse_scalar(rhs, &field).map_err(|e| shift_error(e, col))?;
            let real = sq.to_complex().re >= 0.0;
            field.extend(name, &sq, real)?
        } else if let Some(n) = inner.strip_prefix("sqrt") {
            let v: i64 = n.trim().parse().map_err(|_| err(col, "expected `sqrtN` with integer N"))?;
            field.extend(inner, &Scalar::from_int(v), v >= 0)?
        } else {
            return Err(err(col, "unrecognised generator declaration"));
        };
    }
}

fn shift_error(e: Error, col: usize) -> Error {
    match e {
        Error::Parse { line, col: c, msg } => Error::Parse { line, col: c + col, msg },
        other => other,
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
    }
    None
}

fn format_word(w: &Word, vars: &[String]) -> String {
    let letters = w.letters();
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < letters.len() {
        let l = letters[k];
        let mut run = 1;
        while k + run < letters.len() && letters[k + run] == l {
            run += 1;
        }
        let name = match vars.get(l.var()) {
            Some(n) => n.clone(),
            None => format!("x{}", l.var() + 1),
        };
        let base = if l.is_star() { format!("{name}*") } else { name };
        parts.push(if run > 1 { format!("{base}^{run}") } else { base });
        k += run;
    }
    parts.join("*")
}

/// Canonical text form: descending graded-lex order, explicit `*`.
pub fn format_poly(f: &NcPoly, vars: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (w, c) in f.terms() {
        let (neg, mag) = if c.is_compound() {
            (false, format!("({c})"))
        } else if c.is_negative_leading() {
            (true, (-c).to_string())
        } else {
            (false, c.to_string())
        };
        let body = if w.is_empty() {
            mag
        } else if mag == "1" {
            format_word(w, vars)
        } else {
            format!("{mag}*{}", format_word(w, vars))
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

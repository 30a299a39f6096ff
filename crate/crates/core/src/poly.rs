//! Noncommutative polynomials: finitely supported maps from words to scalars.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{common_field, Field, Scalar};
use crate::unipoly::UniPoly;
use crate::word::{Degree, Word};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn one() -> NcPoly {
        NcPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> NcPoly {
        NcPoly::monomial(Word::empty(), c)
    }

    pub fn from_int(n: i64) -> NcPoly {
        NcPoly::constant(Scalar::from_int(n))
    }

    /// The variable with index `var` (0-based).
    pub fn var(var: usize) -> NcPoly {
        NcPoly::monomial(Word::letter(var), Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> NcPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c.simplify());
        }
        NcPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> NcPoly {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    /// Adds `c·w` in place.
    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone().simplify());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Word::is_empty)
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(w) => Degree::Finite(w.len()),
            None => Degree::NegInfinity,
        }
    }

    /// Degree as a number, with `0` for the zero polynomial.
    pub fn deg0(&self) -> usize {
        self.degree().finite().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    /// The largest word in the support together with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> NcPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => NcPoly::zero(),
        }
    }

    /// Number of variables referenced (largest index plus one).
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Word::arity).max().unwrap_or(0)
    }

    pub fn has_star(&self) -> bool {
        self.terms.keys().any(Word::has_star)
    }

    /// The tower containing all coefficients, if any coefficient is irrational.
    pub fn field(&self) -> Result<Option<Field>> {
        let mut out: Option<Field> = None;
        for c in self.terms.values() {
            if let Some(f) = c.field() {
                out = Some(match out {
                    None => f.clone(),
                    Some(g) => common_field(&g, f)?,
                });
            }
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &NcPoly) -> Result<()> {
        if let (Some(a), Some(b)) = (self.field()?, other.field()?) {
            common_field(&a, &b)?;
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_compatible(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check_compatible(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), (v * c).simplify())).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), &(v * c));
        }
    }

    pub fn pow(&self, k: u32) -> NcPoly {
        let mut acc = NcPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The involution reversing words, toggling stars and conjugating coefficients.
    pub fn star(&self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.star(), c.conj())).collect(),
        }
    }

    /// `p(self)`, with the constant term of `p` mapped to a multiple of 1.
    pub fn compose(&self, p: &UniPoly) -> NcPoly {
        // Horner evaluation
        let mut acc = NcPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &NcPoly::constant(c.clone());
        }
        acc
    }

    pub fn homogeneous_component(&self, d: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components, lowest degree first.
    pub fn homogeneous_components(&self) -> Vec<(usize, NcPoly)> {
        let mut out: BTreeMap<usize, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.len()).or_default().terms.insert(w.clone(), c.clone());
        }
        out.into_iter().collect()
    }

    pub fn top_component(&self) -> NcPoly {
        match self.degree() {
            Degree::Finite(d) => self.homogeneous_component(d),
            Degree::NegInfinity => NcPoly::zero(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            Some(l) => lens.all(|m| m == l),
            None => true,
        }
    }

    /// Reverses every word, keeping coefficients; an anti-automorphism.
    pub fn reversed(&self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())).collect(),
        }
    }

    /// Sums coefficients over rotation classes of words.
    pub fn cyclic_normal_form(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.min_rotation(), c);
        }
        out
    }

    /// Whether `self - other` is a sum of commutators.
    pub fn cyclically_equivalent(&self, other: &NcPoly) -> bool {
        (self - other).cyclic_normal_form().is_zero()
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &'a NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &'a NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &'a NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: NcPoly) -> NcPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: &'a NcPoly) -> NcPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<NcPoly> for &'a NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: NcPoly) -> NcPoly {
                self.$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::parse::default_var_names(self.arity());
        f.write_str(&crate::parse::format_poly(self, &names))
    }
}

/// Letters occurring in any of the polynomials, sorted descending (`x` first).
pub fn alphabet(polys: &[&NcPoly]) -> Vec<crate::word::Letter> {
    let mut set = std::collections::BTreeSet::new();
    for p in polys {
        for (w, _) in p.terms() {
            set.extend(w.letters().iter().copied());
        }
    }
    set.into_iter().rev().collect()
}

/// Checks that a polynomial's coefficients are compatible with a field.
pub fn ensure_field(p: &NcPoly, field: &Field) -> Result<()> {
    if let Some(f) = p.field()? {
        if common_field(&f, field)? != *field {
            return Err(Error::FieldMismatch(f.describe(), field.describe()));
        }
    }
    Ok(())
}

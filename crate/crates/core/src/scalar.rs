//! Exact scalars: rationals and elements of towers of quadratic extensions.
//!
//! A tower `Q(α₁)(α₂)…(α_m)` is described by the squares `α_j² = s_j`, where
//! `s_j` lives in the previous level. An element of the tower is stored as
//! `2^m` rational coefficients over the basis of products of generators;
//! bit `j` of a basis index says whether `α_{j+1}` occurs. The Gaussian
//! rationals are the one-step tower with the imaginary generator `i² = -1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// One generator of a quadratic tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Coefficients of `α²` over the preceding levels; length is `2^level`.
    pub square: Vec<BigRational>,
    /// Real generators are fixed by complex conjugation, imaginary ones negated.
    pub real: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FieldSpec {
    gens: Vec<Generator>,
}

/// A field of definition: `Q` or a declared quadratic tower over it.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        static Q: OnceLock<Field> = OnceLock::new();
        Q.get_or_init(|| Field(Arc::new(FieldSpec::default()))).clone()
    }

    /// `Q(i)` with `i² = -1`.
    pub fn gaussian() -> Field {
        static QI: OnceLock<Field> = OnceLock::new();
        QI.get_or_init(|| {
            Field(Arc::new(FieldSpec {
                gens: vec![Generator {
                    name: "i".into(),
                    square: vec![-BigRational::one()],
                    real: false,
                }],
            }))
        })
        .clone()
    }

    /// Adjoins a square root of `square` (an element of `self`) named `name`.
    pub fn extend(&self, name: &str, square: &Scalar, real: bool) -> Result<Field> {
        if self.generator_index(name).is_some() {
            return Err(Error::Domain(format!("generator `{name}` declared twice")));
        }
        let coeffs = square.coeffs_in(self)?;
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Domain(format!("generator `{name}` has zero square")));
        }
        let mut spec = (*self.0).clone();
        spec.gens.push(Generator {
            name: name.to_string(),
            square: coeffs,
            real,
        });
        Ok(Field(Arc::new(spec)))
    }

    pub fn is_rational(&self) -> bool {
        self.0.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0.gens
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.gens.iter().position(|g| g.name == name)
    }

    /// The generator as a field element.
    pub fn generator(&self, name: &str) -> Option<Scalar> {
        let j = self.generator_index(name)?;
        let mut c = vec![BigRational::zero(); self.dimension()];
        c[1 << j] = BigRational::one();
        Some(Scalar::Ext(self.clone(), c))
    }

    pub fn has_imaginary_unit(&self) -> bool {
        self.0.gens.iter().any(|g| !g.real && g.square.len() == 1 && g.square[0] == -BigRational::one())
    }

    pub fn imaginary_unit(&self) -> Option<Scalar> {
        let g = self.0.gens.iter().find(|g| !g.real && g.square.iter().skip(1).all(Zero::is_zero) && g.square[0] == -BigRational::one())?;
        self.generator(&g.name)
    }

    /// Degree over `Q`.
    pub fn dimension(&self) -> usize {
        1 << self.0.gens.len()
    }

    fn levels(&self) -> usize {
        self.0.gens.len()
    }

    /// Numeric values of the generators, used for floating-point cross-checks.
    fn numeric_generators(&self) -> Vec<Complex64> {
        let mut vals: Vec<Complex64> = Vec::with_capacity(self.levels());
        for (j, g) in self.0.gens.iter().enumerate() {
            let sq = numeric_value(&g.square, j, &vals);
            let v = if g.real {
                Complex64::new(sq.re.max(0.0).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, (-sq.re).max(0.0).sqrt())
            };
            vals.push(v);
        }
        vals
    }

    /// Text form accepted by the parser, e.g. `Q(i)` or `Q(sqrt5)(xi: xi^2 = 29 + 13*sqrt5)`.
    pub fn describe(&self) -> String {
        let mut s = String::from("Q");
        for (j, g) in self.0.gens.iter().enumerate() {
            let sq = Scalar::from_coeffs_truncated(self, &g.square, j);
            let plain_sqrt = g.square.len() == 1
                && g.square[0].is_integer()
                && g.real
                && g.name == format!("sqrt{}", g.square[0]);
            if g.name == "i" && !g.real && g.square.len() == 1 && g.square[0] == -BigRational::one() {
                s.push_str("(i)");
            } else if plain_sqrt {
                s.push_str(&format!("({})", g.name));
            } else {
                s.push_str(&format!("({}: {}^2 = {})", g.name, g.name, sq));
            }
        }
        s
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn numeric_value(c: &[BigRational], level: usize, gens: &[Complex64]) -> Complex64 {
    if level == 0 {
        return Complex64::new(c[0].to_f64().unwrap_or(f64::NAN), 0.0);
    }
    let half = c.len() / 2;
    numeric_value(&c[..half], level - 1, gens) + numeric_value(&c[half..], level - 1, gens) * gens[level - 1]
}

// Coefficient-vector arithmetic, recursive over tower levels.

fn vadd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vmul(a: &[BigRational], b: &[BigRational], gens: &[Generator]) -> Vec<BigRational> {
    let level = gens.len();
    if level == 0 {
        return vec![&a[0] * &b[0]];
    }
    let half = a.len() / 2;
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let lower = &gens[..level - 1];
    let a1_zero = a1.iter().all(Zero::is_zero);
    let b1_zero = b1.iter().all(Zero::is_zero);
    let mut lo = vmul(a0, b0, lower);
    let hi = match (a1_zero, b1_zero) {
        (true, true) => vec![BigRational::zero(); half],
        (true, false) => vmul(a0, b1, lower),
        (false, true) => vmul(a1, b0, lower),
        (false, false) => {
            let cross = vmul(a1, b1, lower);
            lo = vadd(&lo, &vmul(&cross, &gens[level - 1].square, lower));
            vadd(&vmul(a0, b1, lower), &vmul(a1, b0, lower))
        }
    };
    lo.extend(hi);
    lo
}

fn vinv(a: &[BigRational], gens: &[Generator]) -> Option<Vec<BigRational>> {
    let level = gens.len();
    if level == 0 {
        return if a[0].is_zero() { None } else { Some(vec![a[0].recip()]) };
    }
    let half = a.len() / 2;
    let (a0, a1) = a.split_at(half);
    let lower = &gens[..level - 1];
    if a1.iter().all(Zero::is_zero) {
        let mut inv = vinv(a0, lower)?;
        inv.extend(std::iter::repeat_n(BigRational::zero(), half));
        return Some(inv);
    }
    // (a0 + a1 α)^{-1} = (a0 - a1 α) / (a0² - a1² α²)
    let norm = vsub(
        &vmul(a0, a0, lower),
        &vmul(&vmul(a1, a1, lower), &gens[level - 1].square, lower),
    );
    let ninv = vinv(&norm, lower)?;
    let mut lo = vmul(a0, &ninv, lower);
    let hi: Vec<BigRational> = vmul(a1, &ninv, lower).into_iter().map(|x| -x).collect();
    lo.extend(hi);
    Some(lo)
}

fn vconj(a: &[BigRational], gens: &[Generator]) -> Vec<BigRational> {
    let level = gens.len();
    if level == 0 {
        return a.to_vec();
    }
    let half = a.len() / 2;
    let lower = &gens[..level - 1];
    let mut lo = vconj(&a[..half], lower);
    let mut hi = vconj(&a[half..], lower);
    if !gens[level - 1].real {
        hi = hi.into_iter().map(|x| -x).collect();
    }
    lo.append(&mut hi);
    lo
}

/// An exact field element.
///
/// Rationals are field-agnostic and combine with elements of any tower.
/// Combining elements of two different towers panics; the checked entry
/// points (`NcPoly::try_add`, …) report [`Error::FieldMismatch`] instead.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Ext(Field, Vec<BigRational>),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    /// `re + im·i` in the Gaussian rationals.
    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        if im.is_zero() {
            return Scalar::Rat(re);
        }
        Scalar::Ext(Field::gaussian(), vec![re, im])
    }

    pub fn imaginary_unit() -> Scalar {
        Scalar::gaussian(BigRational::zero(), BigRational::one())
    }

    fn from_coeffs_truncated(field: &Field, c: &[BigRational], level: usize) -> Scalar {
        if level == 0 {
            return Scalar::Rat(c[0].clone());
        }
        let mut full = c.to_vec();
        full.resize(field.dimension(), BigRational::zero());
        Scalar::Ext(field.clone(), full)
    }

    /// Field this element lives in, `None` for plain rationals.
    pub fn field(&self) -> Option<&Field> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Ext(f, _) => Some(f),
        }
    }

    pub fn compatible(&self, other: &Scalar) -> bool {
        match (self.field(), other.field()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Coefficient vector with respect to `field`'s basis.
    pub fn coeffs_in(&self, field: &Field) -> Result<Vec<BigRational>> {
        match self {
            Scalar::Rat(r) => {
                let mut c = vec![BigRational::zero(); field.dimension()];
                c[0] = r.clone();
                Ok(c)
            }
            Scalar::Ext(f, c) if f == field => Ok(c.clone()),
            Scalar::Ext(f, c) => {
                // A subfield of `field` given by a prefix of its generators embeds directly.
                let k = f.levels();
                if k <= field.levels() && f.generators() == &field.generators()[..k] {
                    let mut out = c.clone();
                    out.resize(field.dimension(), BigRational::zero());
                    Ok(out)
                } else {
                    Err(Error::FieldMismatch(f.describe(), field.describe()))
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Ext(_, c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Ext(_, c) => c[0].is_one() && c[1..].iter().all(Zero::is_zero),
        }
    }

    /// The rational value, if this element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Ext(_, c) => {
                if c[1..].iter().all(Zero::is_zero) {
                    Some(&c[0])
                } else {
                    None
                }
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Drops the field tag when the value is rational.
    pub fn simplify(self) -> Scalar {
        match self {
            Scalar::Ext(_, ref c) if c[1..].iter().all(Zero::is_zero) => Scalar::Rat(c[0].clone()),
            s => s,
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        ext: impl Fn(&[BigRational], &[BigRational], &Field) -> Vec<BigRational>,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rat(a, b)),
            _ => {
                let field = self
                    .common_field(other)
                    .unwrap_or_else(|e| panic!("{e}"));
                let a = self.coeffs_in(&field).expect("checked");
                let b = other.coeffs_in(&field).expect("checked");
                Scalar::Ext(field.clone(), ext(&a, &b, &field))
            }
        }
    }

    /// The smallest declared field containing both operands.
    pub fn common_field(&self, other: &Scalar) -> Result<Field> {
        match (self.field(), other.field()) {
            (None, None) => Ok(Field::rationals()),
            (Some(f), None) | (None, Some(f)) => Ok(f.clone()),
            (Some(a), Some(b)) => common_field(a, b),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => (!r.is_zero()).then(|| Scalar::Rat(r.recip())),
            Scalar::Ext(f, c) => vinv(c, f.generators()).map(|c| Scalar::Ext(f.clone(), c)),
        }
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => self.clone(),
            Scalar::Ext(f, c) => Scalar::Ext(f.clone(), vconj(c, f.generators())),
        }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rat(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Ext(f, c) => numeric_value(c, f.levels(), &f.numeric_generators()),
        }
    }

    /// Multiplies by a common denominator so all coefficients become integers.
    pub fn denominator_lcm(&self) -> BigInt {
        let coeffs: Vec<&BigRational> = match self {
            Scalar::Rat(r) => vec![r],
            Scalar::Ext(_, c) => c.iter().collect(),
        };
        coeffs
            .into_iter()
            .fold(BigInt::one(), |acc, r| num_integer::Integer::lcm(&acc, r.denom()))
    }
}

/// Smallest common field of two towers when one extends the other.
pub fn common_field(a: &Field, b: &Field) -> Result<Field> {
    if a == b {
        return Ok(a.clone());
    }
    let (small, big) = if a.levels() <= b.levels() { (a, b) } else { (b, a) };
    if small.generators() == &big.generators()[..small.levels()] {
        Ok(big.clone())
    } else {
        Err(Error::FieldMismatch(a.describe(), b.describe()))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            _ => match self.common_field(other) {
                Ok(f) => self.coeffs_in(&f).ok() == other.coeffs_in(&f).ok(),
                Err(_) => false,
            },
        }
    }
}
impl Eq for Scalar {}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, |a, b, _| vadd(a, b))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, |a, b, _| vsub(a, b))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, |a, b| a * b, |a, b, f| vmul(a, b, f.generators()))
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Ext(f, c) => Scalar::Ext(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a -= b;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar {
    /// Whether printing needs parentheses when used as a coefficient.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Rat(_) => false,
            Scalar::Ext(_, c) => c.iter().filter(|x| !x.is_zero()).count() > 1,
        }
    }

    /// Sign used when printing as the first term of a sum.
    pub fn is_negative_leading(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Ext(_, c) => c.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => f.write_str(&fmt_rational(r)),
            Scalar::Ext(field, c) => {
                let gens = field.generators();
                let mut out = String::new();
                for (idx, coeff) in c.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let basis: Vec<&str> = (0..gens.len())
                        .filter(|j| idx & (1 << j) != 0)
                        .map(|j| gens[j].name.as_str())
                        .collect();
                    let neg = coeff.is_negative();
                    let mag = fmt_rational(&coeff.abs());
                    let body = if basis.is_empty() {
                        mag
                    } else if coeff.abs().is_one() {
                        basis.join("*")
                    } else {
                        format!("{}*{}", mag, basis.join("*"))
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
                if out.is_empty() {
                    out.push('0');
                }
                f.write_str(&out)
            }
        }
    }
}

/// Total order on rationals, used for deterministic sorting of eigenvalues.
pub fn cmp_rational(a: &Scalar, b: &Scalar) -> Ordering {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => Ordering::Greater,
        (None, Some(_)) => Ordering::Less,
        (None, None) => a.to_string().cmp(&b.to_string()),
    }
}

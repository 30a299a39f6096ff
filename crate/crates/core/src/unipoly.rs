//! Dense univariate polynomials in `t` over exact scalars.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    // ascending powers; no trailing zeros
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> UniPoly {
        UniPoly::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    /// `t - c`.
    pub fn linear_root(c: &Scalar) -> UniPoly {
        UniPoly::from_coeffs(vec![-c, Scalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let coeffs = coeffs.into_iter().map(Scalar::simplify).collect();
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.leading_coeff().inv().expect("nonzero"))
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    /// `p(α t + β)`.
    pub fn affine_substitute(&self, alpha: &Scalar, beta: &Scalar) -> UniPoly {
        let lin = UniPoly::from_coeffs(vec![beta.clone(), alpha.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lc_inv = d.leading_coeff().inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    /// Division that is known to be exact.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: returns `(k, s_k)` with `self = c·Π s_k^k`,
    /// each `s_k` monic, square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UniPoly)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((k, a.clone()));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Rational roots (distinct, descending) of a polynomial with rational
    /// coefficients. Candidates come from the rational root theorem, so the
    /// search is skipped when the extreme coefficients are too large to
    /// enumerate divisors; `complete` reports whether every rational root
    /// was guaranteed to be found.
    pub fn rational_roots(&self) -> RationalRoots {
        let mut roots = Vec::new();
        if self.is_constant() {
            return RationalRoots { roots, complete: true };
        }
        let rats: Option<Vec<BigRational>> =
            self.coeffs.iter().map(|c| c.as_rational().cloned()).collect();
        let Some(rats) = rats else {
            // tower coefficients: only zero is checked
            if self.coeff(0).is_zero() {
                roots.push(Scalar::zero());
            }
            return RationalRoots { roots, complete: false };
        };
        let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut ints: Vec<BigInt> = rats.iter().map(|r| (r * &den).to_integer()).collect();
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if shift > 0 {
            roots.push(Scalar::zero());
            ints.drain(..shift);
        }
        let mut complete = true;
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            match (divisors(&a0), divisors(&an)) {
                (Some(ps), Some(qs)) => {
                    let mut seen = Vec::new();
                    for p in &ps {
                        for q in &qs {
                            for sign in [1i64, -1] {
                                let r = BigRational::new(p * BigInt::from(sign), q.clone());
                                if seen.contains(&r) {
                                    continue;
                                }
                                let s = Scalar::from_rational(r.clone());
                                if self.eval(&s).is_zero() {
                                    roots.push(s);
                                }
                                seen.push(r);
                            }
                        }
                    }
                }
                _ => complete = false,
            }
        }
        roots.sort_by(|a, b| crate::scalar::cmp_rational(b, a));
        roots.dedup();
        RationalRoots { roots, complete }
    }

    /// Multiplicity of `c` as a root.
    pub fn root_multiplicity(&self, c: &Scalar) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = UniPoly::linear_root(c);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Text form in the variable `var`, e.g. `t^2 - 3*t + 2`.
    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let (neg, mag) = if c.is_compound() {
                (false, format!("({c})"))
            } else if c.is_negative_leading() {
                (true, (-c).to_string())
            } else {
                (false, c.to_string())
            };
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!("{mag}*{mono}")
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
}

#[derive(Clone, Debug)]
pub struct RationalRoots {
    pub roots: Vec<Scalar>,
    pub complete: bool,
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.to_u64()?;
    if v == 0 || v > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let p = UniPoly::from_ints(&[2, -3, 1]); // (t-1)(t-2)
        let q = UniPoly::from_ints(&[-1, 1]);
        let (quo, rem) = p.div_rem(&q);
        assert!(rem.is_zero());
        assert_eq!(quo, UniPoly::from_ints(&[-2, 1]));
        assert_eq!(p.gcd(&UniPoly::from_ints(&[-3, 4, -1])), q); // -(t-1)(t-3)
    }

    #[test]
    fn squarefree_and_roots() {
        // (t-1)^2 (t+2)
        let p = &(&UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[-1, 1])) * &UniPoly::from_ints(&[2, 1]);
        let sf = p.squarefree_decomposition();
        assert_eq!(sf, vec![(1, UniPoly::from_ints(&[2, 1])), (2, UniPoly::from_ints(&[-1, 1]))]);
        let r = p.rational_roots();
        assert!(r.complete);
        assert_eq!(r.roots, vec![Scalar::from_int(1), Scalar::from_int(-2)]);
        assert_eq!(p.root_multiplicity(&Scalar::one()), 2);
        let half = UniPoly::from_ints(&[-1, 2]);
        assert_eq!(half.rational_roots().roots, vec![Scalar::from_ratio(1, 2)]);
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[2, -3, 1]).to_string(), "t^2 - 3*t + 2");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}

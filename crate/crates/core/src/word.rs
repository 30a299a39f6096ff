//! Words over the alphabet `x₁..xₙ, x₁*..xₙ*`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use smallvec::SmallVec;

/// A letter: variable index (0-based) and a star flag, packed as `var << 1 | star`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter(u16);

impl Letter {
    pub fn new(var: usize, star: bool) -> Letter {
        Letter(((var as u16) << 1) | star as u16)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_star(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn toggled(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn code(self) -> u16 {
        self.0
    }
}

// Smaller codes rank higher, so x > y > z and x > x*.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial of the free algebra. Ordered graded-lexicographically:
/// longer words are larger, words of equal length compare letter by letter.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(SmallVec<[Letter; 12]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    /// Word in unstarred variables given by indices.
    pub fn from_vars(vars: &[usize]) -> Word {
        Word(vars.iter().map(|&v| Letter::new(v, false)).collect())
    }

    pub fn letter(var: usize) -> Word {
        Word::from_vars(&[var])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reverses the word and toggles every star flag.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.toggled()).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].iter().copied().collect())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].iter().copied().collect())
    }

    pub fn has_star(&self) -> bool {
        self.0.iter().any(|l| l.is_star())
    }

    /// Largest variable index used plus one.
    pub fn arity(&self) -> usize {
        self.0.iter().map(|l| l.var() + 1).max().unwrap_or(0)
    }

    /// Canonical representative of the rotation class: the lexicographically
    /// minimal rotation by letter code.
    pub fn min_rotation(&self) -> Word {
        let n = self.0.len();
        if n <= 1 {
            return self.clone();
        }
        let codes: Vec<u16> = self.0.iter().map(|l| l.code()).collect();
        let best = (0..n)
            .min_by(|&a, &b| {
                (0..n)
                    .map(|k| codes[(a + k) % n].cmp(&codes[(b + k) % n]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .unwrap_or(0);
        Word((0..n).map(|k| self.0[(best + k) % n]).collect())
    }

    /// All words of length exactly `len` over `letters`, in descending order
    /// when `letters` is sorted descending.
    pub fn all_over(letters: &[Letter], len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * letters.len());
            for w in &out {
                for &l in letters {
                    let mut ww = w.clone();
                    ww.0.push(l);
                    next.push(ww);
                }
            }
            out = next;
        }
        out
    }

    /// All words over `letters` of length at most `max_len`, descending.
    pub fn all_over_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
        (0..=max_len).rev().flat_map(|l| Word::all_over(letters, l)).collect()
    }

    /// All words of length exactly `len` over `nvars` unstarred variables,
    /// in descending order.
    pub fn all_of_length(nvars: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * nvars);
            for w in &out {
                for v in 0..nvars {
                    let mut ww = w.clone();
                    ww.0.push(Letter::new(v, false));
                    next.push(ww);
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `max_len`, descending.
    pub fn all_up_to(nvars: usize, max_len: usize) -> Vec<Word> {
        (0..=max_len)
            .rev()
            .flat_map(|l| Word::all_of_length(nvars, l))
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    /// Unwraps a finite degree; panics on the zero polynomial.
    pub fn unwrap(self) -> usize {
        self.finite().expect("degree of the zero polynomial")
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// The monomial `x^x y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };
    pub const X: Monomial = Monomial { x: 1, y: 0 };
    pub const Y: Monomial = Monomial { x: 0, y: 1 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub const fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// `other / self`; the caller guarantees divisibility.
    pub fn quotient_of(self, other: Monomial) -> Monomial {
        Monomial { x: other.x - self.x, y: other.y - self.y }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial { x: self.x.max(other.x), y: self.y.max(other.y) }
    }

    pub fn swapped(self) -> Monomial {
        Monomial { x: self.y, y: self.x }
    }

    /// All monomials of degree `d`, `x^d` first.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).map(move |y| Monomial { x: d - y, y })
    }

    /// All monomials of degree `< n`, by increasing degree.
    pub fn below_degree(n: u32) -> impl Iterator<Item = Monomial> {
        (0..n).flat_map(Monomial::of_degree)
    }

    /// Position in [`Monomial::below_degree`] order.
    pub fn index(self) -> usize {
        let d = self.degree() as usize;
        d * (d + 1) / 2 + self.y as usize
    }
}

impl core::ops::Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { x: self.x + rhs.x, y: self.y + rhs.y }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |f: &mut fmt::Formatter<'_>, name: &str, e: u32| match e {
            0 => Ok(()),
            1 => f.write_str(name),
            _ => write!(f, "{name}^{e}"),
        };
        match (self.x, self.y) {
            (0, 0) => f.write_str("1"),
            (_, 0) => var(f, "x", self.x),
            (0, _) => var(f, "y", self.y),
            _ => {
                var(f, "x", self.x)?;
                f.write_char('*')?;
                var(f, "y", self.y)
            }
        }
    }
}

/// Which variable wins among monomials of equal degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TieBreak {
    #[default]
    XoverY,
    YoverX,
}

/// A local degree ordering: lower total degree is larger, ties broken
/// lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalOrdering {
    pub tie_break: TieBreak,
}

impl LocalOrdering {
    pub const X_OVER_Y: LocalOrdering = LocalOrdering { tie_break: TieBreak::XoverY };
    pub const Y_OVER_X: LocalOrdering = LocalOrdering { tie_break: TieBreak::YoverX };

    /// `Greater` means `a` is the larger monomial, i.e. `a` leads.
    pub fn cmp(&self, a: Monomial, b: Monomial) -> Ordering {
        b.degree().cmp(&a.degree()).then_with(|| match self.tie_break {
            TieBreak::XoverY => a.x.cmp(&b.x),
            TieBreak::YoverX => a.y.cmp(&b.y),
        })
    }
}

/// A bivariate polynomial modulo `<x, y>^N`, with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
    truncation: u32,
}

impl TruncatedPolynomial {
    pub fn zero(truncation: u32) -> Self {
        assert!(truncation > 0, "truncation must be positive");
        TruncatedPolynomial { terms: BTreeMap::new(), truncation }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>, truncation: u32) -> Self {
        let mut p = Self::zero(truncation);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(terms: &[(i64, u32, u32)], truncation: u32) -> Self {
        Self::from_terms(
            terms.iter().map(|&(c, x, y)| (Monomial::new(x, y), BigRational::from_integer(BigInt::from(c)))),
            truncation,
        )
    }

    pub fn term(m: Monomial, c: BigRational, truncation: u32) -> Self {
        Self::from_terms([(m, c)], truncation)
    }

    pub fn monomial(m: Monomial, truncation: u32) -> Self {
        Self::term(m, BigRational::one(), truncation)
    }

    pub fn constant(c: BigRational, truncation: u32) -> Self {
        Self::term(Monomial::ONE, c, truncation)
    }

    pub fn x(truncation: u32) -> Self {
        Self::monomial(Monomial::X, truncation)
    }

    pub fn y(truncation: u32) -> Self {
        Self::monomial(Monomial::Y, truncation)
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c * m`, dropping it when `deg(m) >= N`.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if m.degree() >= self.truncation || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The same polynomial read modulo `<x, y>^n`.
    pub fn with_truncation(&self, n: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone())), n)
    }

    /// Lowest degree of a term: the multiplicity at the origin.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Highest degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Terms of degree at most `k`.
    pub fn jet(&self, k: u32) -> Self {
        TruncatedPolynomial {
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= k).map(|(m, c)| (*m, c.clone())).collect(),
            truncation: self.truncation,
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        TruncatedPolynomial {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
            truncation: self.truncation,
        }
    }

    pub fn leading_term(&self, ord: &LocalOrdering) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().max_by(|a, b| ord.cmp(*a.0, *b.0)).map(|(m, c)| (*m, c))
    }

    pub fn leading_monomial(&self, ord: &LocalOrdering) -> Option<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// `deg(f) - deg(LM(f))`.
    pub fn ecart(&self, ord: &LocalOrdering) -> u32 {
        match (self.degree(), self.leading_monomial(ord)) {
            (Some(d), Some(m)) => d - m.degree(),
            _ => 0,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        TruncatedPolynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
            truncation: self.truncation,
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: Monomial, c: &BigRational) -> Self {
        let mut out = Self::zero(self.truncation);
        for (n, a) in &self.terms {
            out.add_term(m * *n, a * c);
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, ord: &LocalOrdering) -> Self {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&(BigRational::one() / c)),
            None => self.clone(),
        }
    }

    pub fn diff_x(&self) -> Self {
        let mut out = Self::zero(self.truncation);
        for (m, c) in &self.terms {
            if m.x > 0 {
                out.add_term(Monomial::new(m.x - 1, m.y), c * BigInt::from(m.x));
            }
        }
        out
    }

    pub fn diff_y(&self) -> Self {
        let mut out = Self::zero(self.truncation);
        for (m, c) in &self.terms {
            if m.y > 0 {
                out.add_term(Monomial::new(m.x, m.y - 1), c * BigInt::from(m.y));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::constant(BigRational::one(), self.truncation);
        if !self.terms.contains_key(&Monomial::ONE) && e >= u64::from(self.truncation) {
            return Self::zero(self.truncation);
        }
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The image under `x -> a x + b y`, `y -> c x + d y`.
    pub fn linear_substitution(&self, a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> Self {
        let n = self.truncation;
        let new_x = Self::from_terms([(Monomial::X, a.clone()), (Monomial::Y, b.clone())], n);
        let new_y = Self::from_terms([(Monomial::X, c.clone()), (Monomial::Y, d.clone())], n);
        let max_deg = self.degree().unwrap_or(0) as usize;
        let mut xp = Vec::with_capacity(max_deg + 1);
        let mut yp = Vec::with_capacity(max_deg + 1);
        xp.push(Self::constant(BigRational::one(), n));
        yp.push(Self::constant(BigRational::one(), n));
        for i in 1..=max_deg {
            xp.push(&xp[i - 1] * &new_x);
            yp.push(&yp[i - 1] * &new_y);
        }
        let mut out = Self::zero(n);
        for (m, coeff) in &self.terms {
            let prod = &xp[m.x as usize] * &yp[m.y as usize];
            out = &out + &prod.scale(coeff);
        }
        out
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_variables(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.swapped(), c.clone())), self.truncation)
    }
}

impl core::ops::Add for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn add(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        let n = self.truncation.min(rhs.truncation);
        let mut out = self.with_truncation(n);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl core::ops::Sub for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn sub(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        let n = self.truncation.min(rhs.truncation);
        let mut out = self.with_truncation(n);
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl core::ops::Neg for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn neg(self) -> TruncatedPolynomial {
        self.scale(&-BigRational::one())
    }
}

impl core::ops::Mul for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn mul(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        let n = self.truncation.min(rhs.truncation);
        let mut out = TruncatedPolynomial::zero(n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(*m1 * *m2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for TruncatedPolynomial {
    /// Terms by increasing degree, `x` before `y` within a degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| LocalOrdering::X_OVER_Y.cmp(*b.0, *a.0));
        let mut s = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                write!(s, "{a}")?;
            } else if a.is_one() {
                write!(s, "{m}")?;
            } else {
                write!(s, "{a}*{m}")?;
            }
        }
        f.write_str(&s)
    }
}

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, TruncatedPolynomial};

/// Root pattern of the tangent cone of a plane-curve germ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JetClass {
    /// Three distinct tangent lines, e.g. `x^3 - y^3`.
    ThreeDistinctLines,
    /// A double and a simple tangent, e.g. `x^2 y`.
    DoublePlusSimple,
    /// One triple tangent, e.g. `x^3`.
    TripleLine,
    /// The germ has multiplicity below three.
    LowerMultiplicity,
    /// The cubic part vanishes.
    Zero,
}

/// The binary cubic `c0 x^3 + c1 x^2 y + c2 x y^2 + c3 y^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCubic {
    pub coefficients: [BigRational; 4],
}

impl BinaryCubic {
    pub fn new(coefficients: [BigRational; 4]) -> Self {
        BinaryCubic { coefficients }
    }

    pub fn from_integers(c: [i64; 4]) -> Self {
        BinaryCubic { coefficients: c.map(|v| BigRational::from_integer(v.into())) }
    }

    /// The degree-3 part of `f`.
    pub fn of_polynomial(f: &TruncatedPolynomial) -> Self {
        BinaryCubic { coefficients: [0u32, 1, 2, 3].map(|y| f.coefficient(Monomial::new(3 - y, y))) }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

/// Classifies a binary cubic by root multiplicities.
///
/// Dehomogenizes in a variable whose cube has nonzero coefficient and
/// reads the pattern off `deg gcd(p, p')`: 0 for three distinct roots, 1
/// for a double root, 2 for a triple root.
pub fn classify_cubic_jet(cubic: &BinaryCubic) -> JetClass {
    let [c0, c1, c2, c3] = &cubic.coefficients;
    if cubic.is_zero() {
        return JetClass::Zero;
    }
    // p(t) coefficients, low degree first.
    let univariate: Vec<BigRational> = if !c0.is_zero() {
        // F(t, 1)
        [c3, c2, c1, c0].into_iter().cloned().collect()
    } else if !c3.is_zero() {
        // F(1, s)
        [c0, c1, c2, c3].into_iter().cloned().collect()
    } else {
        // F = x y (c1 x + c2 y)
        return if !c1.is_zero() && !c2.is_zero() { JetClass::ThreeDistinctLines } else { JetClass::DoublePlusSimple };
    };
    let derivative: Vec<BigRational> =
        univariate.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect();
    match gcd(univariate, derivative).len().saturating_sub(1) {
        0 => JetClass::ThreeDistinctLines,
        1 => JetClass::DoublePlusSimple,
        _ => JetClass::TripleLine,
    }
}

/// Jet class of a germ: its multiplicity first, then the cubic pattern.
pub fn classify_germ(f: &TruncatedPolynomial) -> JetClass {
    match f.order() {
        Some(m) if m < 3 => JetClass::LowerMultiplicity,
        _ => classify_cubic_jet(&BinaryCubic::of_polynomial(f)),
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        r.pop();
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Monic gcd of univariate polynomials, coefficients low degree first.
fn gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> Vec<BigRational> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        let inv = BigRational::one() / lead;
        for c in a.iter_mut() {
            *c *= &inv;
        }
    }
    a
}

//! Picard lattices of the supported rational surfaces.
//!
//! A [`SurfaceModel`] fixes an ordered basis of the Picard group together
//! with its intersection matrix and canonical class. Divisor classes are
//! dense coefficient vectors over that basis.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default upper bound on the number of blown-up points.
pub const DEFAULT_MAX_BLOWUPS: u32 = 16;

/// The surface families with an explicit Picard lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    ProjectivePlane,
    /// The Hirzebruch surface `F_e`.
    Hirzebruch { e: u32 },
    /// The plane blown up in `n` points.
    BlowupPlane { n: u32 },
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::ProjectivePlane => f.write_str("p2"),
            SurfaceKind::Hirzebruch { e } => write!(f, "hirzebruch:{e}"),
            SurfaceKind::BlowupPlane { n } => write!(f, "blowup-p2:{n}"),
        }
    }
}

/// Parses `p2`, `hirzebruch:<e>` or `blowup-p2:<n>`.
impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let number = |rest: &str, offset: usize| -> Result<u32> {
            rest.trim().parse::<u32>().map_err(|_| Error::Parse {
                position: offset,
                message: format!("expected a nonnegative integer, found `{rest}`"),
            })
        };
        if s == "p2" {
            Ok(SurfaceKind::ProjectivePlane)
        } else if let Some(rest) = s.strip_prefix("hirzebruch:") {
            Ok(SurfaceKind::Hirzebruch { e: number(rest, 11)? })
        } else if let Some(rest) = s.strip_prefix("blowup-p2:") {
            let n = number(rest, 10)?;
            if n == 0 {
                return Err(Error::Parse {
                    position: 10,
                    message: "blowup-p2 needs at least one point".to_string(),
                });
            }
            Ok(SurfaceKind::BlowupPlane { n })
        } else {
            Err(Error::Parse {
                position: 0,
                message: format!(
                    "unknown surface `{s}`; expected p2, hirzebruch:<e> or blowup-p2:<n>"
                ),
            })
        }
    }
}

/// A divisor class: integer coefficients over a surface's Picard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coefficients: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        DivisorClass { coefficients }
    }

    pub fn from_i64s(coefficients: &[i64]) -> Self {
        DivisorClass { coefficients: coefficients.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass { coefficients: vec![BigInt::zero(); rank] }
    }

    /// The `index`-th basis class.
    pub fn basis(rank: usize, index: usize) -> Self {
        let mut d = Self::zero(rank);
        d.coefficients[index] = BigInt::one();
        d
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Coefficient `i` as an `i64`, if it fits.
    pub fn coefficient_i64(&self, i: usize) -> Option<i64> {
        self.coefficients.get(i).and_then(ToPrimitive::to_i64)
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.len(), rhs.len(), "divisor classes over different bases");
        DivisorClass {
            coefficients: self.coefficients.iter().zip(&rhs.coefficients).map(|(a, b)| op(a, b)).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { coefficients: self.coefficients.iter().map(|c| -c).collect() }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        let k = BigInt::from(self);
        DivisorClass { coefficients: rhs.coefficients.iter().map(|c| &k * c).collect() }
    }
}

/// A rational surface with a fixed Picard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    kind: SurfaceKind,
    basis_labels: Vec<String>,
    intersection_matrix: Vec<Vec<i64>>,
    canonical: DivisorClass,
}

impl SurfaceModel {
    pub fn projective_plane() -> Self {
        SurfaceModel {
            kind: SurfaceKind::ProjectivePlane,
            basis_labels: vec!["H".to_string()],
            intersection_matrix: vec![vec![1]],
            canonical: DivisorClass::from_i64s(&[-3]),
        }
    }

    /// `F_e` with basis `(C0, F)`: `C0^2 = -e`, `C0.F = 1`, `F^2 = 0`.
    pub fn hirzebruch(e: u32) -> Self {
        let e = i64::from(e);
        SurfaceModel {
            kind: SurfaceKind::Hirzebruch { e: e as u32 },
            basis_labels: vec!["C0".to_string(), "F".to_string()],
            intersection_matrix: vec![vec![-e, 1], vec![1, 0]],
            canonical: DivisorClass::from_i64s(&[-2, -(e + 2)]),
        }
    }

    /// The plane blown up in `n` points, basis `(H, E1, ..., En)`.
    pub fn blowup_plane(n: u32) -> Result<Self> {
        Self::blowup_plane_bounded(n, DEFAULT_MAX_BLOWUPS)
    }

    pub fn blowup_plane_bounded(n: u32, max_points: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("blowup needs at least one point".to_string()));
        }
        if n > max_points {
            return Err(Error::OutOfScope(format!(
                "blowup of {n} points exceeds the configured bound {max_points}"
            )));
        }
        let size = n as usize + 1;
        let mut labels = vec!["H".to_string()];
        labels.extend((1..=n).map(|i| format!("E{i}")));
        let mut matrix = vec![vec![0i64; size]; size];
        matrix[0][0] = 1;
        for (i, row) in matrix.iter_mut().enumerate().skip(1) {
            row[i] = -1;
        }
        let mut canonical = vec![1i64; size];
        canonical[0] = -3;
        Ok(SurfaceModel {
            kind: SurfaceKind::BlowupPlane { n },
            basis_labels: labels,
            intersection_matrix: matrix,
            canonical: DivisorClass::from_i64s(&canonical),
        })
    }

    pub fn from_kind(kind: SurfaceKind) -> Result<Self> {
        match kind {
            SurfaceKind::ProjectivePlane => Ok(Self::projective_plane()),
            SurfaceKind::Hirzebruch { e } => Ok(Self::hirzebruch(e)),
            SurfaceKind::BlowupPlane { n } => Self::blowup_plane(n),
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.intersection_matrix
    }

    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    /// Index of a basis symbol, e.g. `"C0"` or `"E3"`.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    /// The class of the basis symbol `label`.
    pub fn class(&self, label: &str) -> Result<DivisorClass> {
        self.basis_index(label)
            .map(|i| DivisorClass::basis(self.rank(), i))
            .ok_or_else(|| Error::UnknownSymbol(label.to_string()))
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: d.len() });
        }
        Ok(())
    }

    /// The intersection number `D1 . D2`.
    pub fn intersect(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<BigInt> {
        self.check(d1)?;
        self.check(d2)?;
        let mut total = BigInt::zero();
        for (i, a) in d1.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in d2.coefficients.iter().enumerate() {
                let m = self.intersection_matrix[i][j];
                if m != 0 {
                    total += a * b * m;
                }
            }
        }
        Ok(total)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<BigInt> {
        self.intersect(d, d)
    }

    pub fn canonical_class(&self) -> &DivisorClass {
        &self.canonical
    }

    /// `p_a(D) = (D^2 + D.K)/2 + 1`.
    pub fn arithmetic_genus(&self, d: &DivisorClass) -> Result<BigRational> {
        let d2 = self.intersect(d, d)?;
        let dk = self.intersect(d, &self.canonical)?;
        Ok(BigRational::new(d2 + dk, BigInt::from(2)) + BigRational::one())
    }

    /// Parses a divisor such as `3C0+8F` or `-2H + E1 + E2`.
    ///
    /// Terms are an optional sign, an optional integer coefficient, an
    /// optional `*`, and a basis symbol. A bare integer `0` is the zero class.
    pub fn parse_divisor(&self, input: &str) -> Result<DivisorClass> {
        let chars: Vec<(usize, char)> = input.char_indices().collect();
        let skip_ws = |mut i: usize| {
            while i < chars.len() && chars[i].1.is_whitespace() {
                i += 1;
            }
            i
        };
        let mut i = skip_ws(0);
        if i == chars.len() {
            return Err(Error::Parse { position: 0, message: "empty divisor".to_string() });
        }
        let mut out = DivisorClass::zero(self.rank());
        let mut first = true;
        while i < chars.len() {
            let mut sign = BigInt::one();
            match chars[i].1 {
                '+' => i += 1,
                '-' => {
                    sign = -sign;
                    i += 1;
                }
                _ if first => {}
                c => {
                    return Err(Error::Parse {
                        position: chars[i].0,
                        message: format!("expected `+` or `-`, found `{c}`"),
                    })
                }
            }
            first = false;
            i = skip_ws(i);
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let coefficient = if i > start {
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                digits.parse::<BigInt>().map_err(|_| Error::Parse {
                    position: chars[start].0,
                    message: "bad integer".to_string(),
                })?
            } else {
                BigInt::one()
            };
            i = skip_ws(i);
            if i < chars.len() && chars[i].1 == '*' {
                i = skip_ws(i + 1);
            }
            let sym_start = i;
            if i < chars.len() && chars[i].1.is_ascii_alphabetic() {
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                    i += 1;
                }
            }
            if sym_start == i {
                // A bare zero is allowed as the empty class.
                if i > start && coefficient.is_zero() {
                    i = skip_ws(i);
                    continue;
                }
                let position = chars.get(i).map_or(input.len(), |c| c.0);
                return Err(Error::Parse { position, message: "expected a basis symbol".to_string() });
            }
            let symbol: String = chars[sym_start..i].iter().map(|(_, c)| c).collect();
            let index = self.basis_index(&symbol).ok_or(Error::UnknownSymbol(symbol))?;
            out.coefficients[index] += sign * coefficient;
            i = skip_ws(i);
        }
        Ok(out)
    }

    /// Renders a class in the divisor grammar, e.g. `3C0+8F`.
    pub fn format_divisor(&self, d: &DivisorClass) -> String {
        let mut s = String::new();
        for (c, label) in d.coefficients.iter().zip(&self.basis_labels) {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let a = c.abs();
            if !a.is_one() {
                s.push_str(&a.to_string());
            }
            s.push_str(label);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Largest admissible `R^2` for an irreducible curve `R` of degree
/// `(L-K).R = deg_lk` and arithmetic genus `genus` on a surface embedded by
/// a very ample `L`.
///
/// Uses `1 <= L.R = deg_lk + 2(p_a - 1) - R^2`, sharpened to `L.R >= 3` for
/// a degree-3 curve of genus 1. Curves of degree 1 or 2 are smooth rational
/// and a degree-3 curve has genus at most 1; other genera are rejected.
pub fn curve_selfint_bound(deg_lk: i64, genus: i64) -> Result<i64> {
    if !(1..=3).contains(&deg_lk) {
        return Err(Error::OutOfScope(format!(
            "curve bounds cover (L-K).R in {{1,2,3}}, got {deg_lk}"
        )));
    }
    let max_genus = if deg_lk == 3 { 1 } else { 0 };
    if !(0..=max_genus).contains(&genus) {
        return Err(Error::OutOfScope(format!(
            "no irreducible curve of degree {deg_lk} with arithmetic genus {genus}"
        )));
    }
    let min_lr = if deg_lk == 3 && genus == 1 { 3 } else { 1 };
    Ok(deg_lk + 2 * (genus - 1) - min_lr)
}

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{LocalOrdering, Monomial, TruncatedPolynomial};
use crate::linalg::EchelonBasis;
use crate::{Error, Result};

/// `dim_Q R/I`, or a marker that the ideal does not contain
/// `<x, y>^(N-1)` at the current truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Colength {
    Finite(u64),
    InfiniteAtTruncation,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::InfiniteAtTruncation => None,
        }
    }
}

/// Generators of an ideal of `Q[[x, y]]`, read modulo `<x, y>^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    generators: Vec<TruncatedPolynomial>,
    truncation: u32,
    ordering: LocalOrdering,
}

impl IdealPresentation {
    /// Zero generators (after truncation) are dropped.
    pub fn new(generators: impl IntoIterator<Item = TruncatedPolynomial>, truncation: u32) -> Self {
        let generators = generators
            .into_iter()
            .map(|g| g.with_truncation(truncation))
            .filter(|g| !g.is_zero())
            .collect();
        IdealPresentation { generators, truncation, ordering: LocalOrdering::default() }
    }

    /// The ideal generated by monomials.
    pub fn monomial(monomials: &[Monomial], truncation: u32) -> Self {
        Self::new(monomials.iter().map(|&m| TruncatedPolynomial::monomial(m, truncation)), truncation)
    }

    pub fn with_ordering(mut self, ordering: LocalOrdering) -> Self {
        self.ordering = ordering;
        self
    }

    /// Adds `<x, y>^k` to the ideal.
    pub fn plus_max_ideal_power(mut self, k: u32) -> Self {
        let n = self.truncation;
        self.generators
            .extend(Monomial::of_degree(k).filter(|m| m.degree() < n).map(|m| TruncatedPolynomial::monomial(m, n)));
        self
    }

    pub fn generators(&self) -> &[TruncatedPolynomial] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn ordering(&self) -> LocalOrdering {
        self.ordering
    }

    /// Exchanges `x` and `y` in every generator.
    pub fn swap_variables(&self) -> Self {
        IdealPresentation {
            generators: self.generators.iter().map(TruncatedPolynomial::swap_variables).collect(),
            truncation: self.truncation,
            ordering: self.ordering,
        }
    }

    fn vector(&self, f: &TruncatedPolynomial) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); monomial_count(self.truncation)];
        for (m, c) in f.terms() {
            if m.degree() < self.truncation {
                v[m.index()] = c.clone();
            }
        }
        v
    }

    /// `(I + m^N) / m^N` as a subspace of the monomials of degree `< N`.
    fn span(&self) -> EchelonBasis {
        let n = self.truncation;
        let mut basis = EchelonBasis::new(monomial_count(n));
        for g in &self.generators {
            let order = g.order().unwrap_or(n);
            for m in Monomial::below_degree(n.saturating_sub(order)) {
                let shifted = g.mul_term(m, &BigRational::from_integer(1.into()));
                if !shifted.is_zero() {
                    basis.insert(self.vector(&shifted));
                }
            }
        }
        basis
    }

    fn contains_top_degree(&self, span: &EchelonBasis) -> bool {
        let top = self.truncation - 1;
        Monomial::of_degree(top).all(|m| span.contains(self.vector(&TruncatedPolynomial::monomial(m, self.truncation))))
    }

    /// `dim R/(I + m^N)`, which equals `dim R/I` once `m^(N-1)` lies in `I`.
    pub fn colength(&self) -> Colength {
        let span = self.span();
        if !self.contains_top_degree(&span) {
            return Colength::InfiniteAtTruncation;
        }
        Colength::Finite((span.width() - span.rank()) as u64)
    }

    /// Ideal membership; needs finite colength at the current truncation.
    pub fn contains(&self, f: &TruncatedPolynomial) -> Result<bool> {
        let span = self.span();
        if !self.contains_top_degree(&span) {
            return Err(Error::TruncationTooLow { truncation: self.truncation });
        }
        Ok(span.contains(self.vector(f)))
    }

    /// Whether `<x, y>^k` lies in the ideal.
    pub fn contains_max_ideal_power(&self, k: u32) -> Result<bool> {
        let span = self.span();
        if !self.contains_top_degree(&span) {
            return Err(Error::TruncationTooLow { truncation: self.truncation });
        }
        Ok(Monomial::of_degree(k)
            .filter(|m| m.degree() < self.truncation)
            .all(|m| span.contains(self.vector(&TruncatedPolynomial::monomial(m, self.truncation)))))
    }

    /// Equality of ideals by mutual containment.
    pub fn same_ideal(&self, other: &IdealPresentation) -> Result<bool> {
        let n = self.truncation.min(other.truncation);
        let a = Self::new(self.generators.iter().cloned(), n);
        let b = Self::new(other.generators.iter().cloned(), n);
        for g in b.generators() {
            if !a.contains(g)? {
                return Ok(false);
            }
        }
        for g in a.generators() {
            if !b.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

fn monomial_count(n: u32) -> usize {
    (n as usize) * (n as usize + 1) / 2
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Keeps the minimal generators, sorted by increasing `y` exponent.
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = monomials.into_iter().collect();
        all.sort_by_key(|m| (m.y, m.x));
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in all {
            if !minimal.iter().any(|g| g.divides(m)) {
                minimal.retain(|g| !m.divides(*g));
                minimal.push(m);
            }
        }
        MonomialIdeal { generators: minimal }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Monomials outside the ideal, if there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let xbound = self.generators.iter().filter(|g| g.y == 0).map(|g| g.x).min()?;
        let ybound = self.generators.iter().filter(|g| g.x == 0).map(|g| g.y).min()?;
        let mut out = Vec::new();
        for x in 0..xbound {
            for y in 0..ybound {
                let m = Monomial::new(x, y);
                if !self.contains(m) {
                    out.push(m);
                }
            }
        }
        out.sort_by_key(|m| (m.degree(), m.y));
        Some(out)
    }

    pub fn colength(&self) -> Option<u64> {
        self.standard_monomials().map(|s| s.len() as u64)
    }

    /// Number of standard monomials in each degree, trailing zeros trimmed.
    pub fn hilbert_samuel(&self) -> Option<Vec<u64>> {
        let standard = self.standard_monomials()?;
        let top = standard.iter().map(|m| m.degree()).max();
        let mut counts = vec![0u64; top.map_or(0, |t| t as usize + 1)];
        for m in standard {
            counts[m.degree() as usize] += 1;
        }
        Some(counts)
    }

    /// The ideal as a presentation with monomial generators.
    pub fn to_presentation(&self, truncation: u32) -> IdealPresentation {
        IdealPresentation::monomial(&self.generators, truncation)
    }

    pub fn swap_variables(&self) -> Self {
        Self::new(self.generators.iter().map(|m| m.swapped()))
    }

    /// Parses `x^2, x*y, y^3` style lists.
    pub fn parse(input: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (i, part) in input.split(',').enumerate() {
            let p = super::parse::parse_polynomial(part, 64)?;
            match p.terms().iter().next() {
                Some((m, c)) if p.terms().len() == 1 && c == &BigRational::from_integer(1.into()) => out.push(*m),
                _ => {
                    return Err(Error::Parse {
                        position: i,
                        message: format!("`{}` is not a monomial", part.trim()),
                    })
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Parse { position: 0, message: "empty monomial list".to_string() });
        }
        Ok(Self::new(out))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(list: &[(u32, u32)]) -> Vec<Monomial> {
        list.iter().map(|&(x, y)| Monomial::new(x, y)).collect()
    }

    #[test]
    fn colength_examples() {
        assert_eq!(IdealPresentation::monomial(&mono(&[(2, 0), (0, 2)]), 6).colength(), Colength::Finite(4));
        assert_eq!(IdealPresentation::monomial(&mono(&[(1, 0), (0, 3)]), 6).colength(), Colength::Finite(3));
        assert_eq!(IdealPresentation::monomial(&mono(&[(1, 0)]), 6).colength(), Colength::InfiniteAtTruncation);
        assert_eq!(IdealPresentation::monomial(&mono(&[(2, 0), (0, 2)]), 3).colength(), Colength::InfiniteAtTruncation);
        assert_eq!(IdealPresentation::new([], 6).colength(), Colength::InfiniteAtTruncation);
        let unit = IdealPresentation::new([TruncatedPolynomial::from_int_terms(&[(1, 0, 0), (1, 1, 0)], 6)], 6);
        assert_eq!(unit.colength(), Colength::Finite(0));
    }

    #[test]
    fn membership() {
        let i = IdealPresentation::new(
            [
                TruncatedPolynomial::from_int_terms(&[(1, 2, 0)], 6),
                TruncatedPolynomial::from_int_terms(&[(1, 1, 1), (1, 0, 2)], 6),
            ],
            6,
        );
        assert!(i.contains(&TruncatedPolynomial::from_int_terms(&[(1, 0, 3)], 6)).unwrap());
        assert!(!i.contains(&TruncatedPolynomial::from_int_terms(&[(1, 0, 2)], 6)).unwrap());
        assert!(i.contains_max_ideal_power(3).unwrap());
        assert!(!i.contains_max_ideal_power(2).unwrap());
        let x_only = IdealPresentation::monomial(&mono(&[(1, 0)]), 6);
        assert_eq!(x_only.contains(&TruncatedPolynomial::x(6)), Err(Error::TruncationTooLow { truncation: 6 }));
    }

    #[test]
    fn monomial_ideals() {
        let m = MonomialIdeal::new(mono(&[(2, 0), (1, 2), (0, 3), (3, 0), (2, 2)]));
        assert_eq!(m.generators(), &mono(&[(2, 0), (1, 2), (0, 3)])[..]);
        assert_eq!(m.colength(), Some(5));
        assert_eq!(m.hilbert_samuel(), Some(vec![1, 2, 2]));
        assert_eq!(MonomialIdeal::new(mono(&[(2, 0), (1, 1), (0, 2)])).hilbert_samuel(), Some(vec![1, 2]));
        assert_eq!(MonomialIdeal::new(mono(&[(1, 0), (0, 1)])).hilbert_samuel(), Some(vec![1]));
        assert_eq!(MonomialIdeal::new(mono(&[(0, 0)])).hilbert_samuel(), Some(vec![]));
        assert_eq!(MonomialIdeal::new(mono(&[(1, 0)])).colength(), None);
        assert_eq!(MonomialIdeal::parse("x^2, x*y^2, y^3").unwrap(), m);
        assert_eq!(m.to_string(), "<x^2, x*y^2, y^3>");
        assert!(MonomialIdeal::parse("x+y").is_err());
    }
}

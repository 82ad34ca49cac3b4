//! Standard bases for local degree orderings via Mora's normal form.
//!
//! All polynomials are read modulo `<x, y>^N`, so the computation is the
//! standard basis of `I + <x, y>^N`. Truncation plays the role of reducing
//! by the monomial generators of `<x, y>^N`, which keeps every descending
//! chain of leading monomials finite.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::ideal::{IdealPresentation, MonomialIdeal};
use super::poly::{LocalOrdering, Monomial, TruncatedPolynomial};
use crate::{Error, Result};

/// `h - (LT(h) / LT(g)) * g`, cancelling the leading term of `h`.
fn reduce_once(h: &TruncatedPolynomial, g: &TruncatedPolynomial, ord: &LocalOrdering) -> TruncatedPolynomial {
    let (mh, ch) = h.leading_term(ord).expect("nonzero h");
    let (mg, cg) = g.leading_term(ord).expect("nonzero g");
    let factor: BigRational = ch / cg;
    h - &g.mul_term(mg.quotient_of(mh), &factor)
}

/// Mora's weak normal form of `f` with respect to `basis`.
///
/// Among reducers whose leading monomial divides `LM(h)` the one of least
/// ecart is used; when even that one has larger ecart than `h`, the
/// current `h` joins the reducer set first.
pub fn mora_normal_form(
    f: &TruncatedPolynomial,
    basis: &[TruncatedPolynomial],
    ord: &LocalOrdering,
) -> TruncatedPolynomial {
    let mut h = f.clone();
    let mut reducers: Vec<(Monomial, u32, TruncatedPolynomial)> =
        basis.iter().filter_map(|g| Some((g.leading_monomial(ord)?, g.ecart(ord), g.clone()))).collect();
    loop {
        let Some(lm) = h.leading_monomial(ord) else {
            return h;
        };
        let best = reducers
            .iter()
            .enumerate()
            .filter(|(_, (m, _, _))| m.divides(lm))
            .min_by_key(|(i, (_, e, _))| (*e, *i))
            .map(|(i, _)| i);
        let Some(i) = best else {
            return h;
        };
        let h_ecart = h.ecart(ord);
        let g = reducers[i].2.clone();
        if reducers[i].1 > h_ecart {
            reducers.push((lm, h_ecart, h.clone()));
        }
        h = reduce_once(&h, &g, ord);
    }
}

fn s_polynomial(f: &TruncatedPolynomial, g: &TruncatedPolynomial, ord: &LocalOrdering) -> TruncatedPolynomial {
    let (mf, cf) = f.leading_term(ord).expect("nonzero f");
    let (mg, cg) = g.leading_term(ord).expect("nonzero g");
    let l = mf.lcm(mg);
    let a = f.mul_term(mf.quotient_of(l), &cf.recip());
    let b = g.mul_term(mg.quotient_of(l), &cg.recip());
    &a - &b
}

/// A standard basis of `I + <x, y>^N` for the ideal's ordering; elements
/// are monic.
pub fn standard_basis(ideal: &IdealPresentation) -> Vec<TruncatedPolynomial> {
    let ord = ideal.ordering();
    let mut basis: Vec<TruncatedPolynomial> = Vec::new();
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    let push =|h: TruncatedPolynomial, basis: &mut Vec<TruncatedPolynomial>, pairs: &mut VecDeque<(usize, usize)>| {
        let j = basis.len();
        pairs.extend((0..j).map(|i| (i, j)));
        basis.push(h.monic(&ord));
    };
    for g in ideal.generators() {
        let h = mora_normal_form(g, &basis, &ord);
        if !h.is_zero() {
            push(h, &mut basis, &mut pairs);
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let s = s_polynomial(&basis[i], &basis[j], &ord);
        let h = mora_normal_form(&s, &basis, &ord);
        if !h.is_zero() {
            push(h, &mut basis, &mut pairs);
        }
    }
    basis
}

/// Minimal generators of the leading ideal `L_>(I)` for the ideal's
/// ordering.
///
/// Fails with [`Error::TruncationTooLow`] when the computed leading ideal
/// misses a monomial of degree `N - 1`: then `I` need not contain
/// `<x, y>^(N-1)` and the truncation hides part of the leading ideal.
pub fn leading_ideal(ideal: &IdealPresentation) -> Result<MonomialIdeal> {
    let ord = ideal.ordering();
    let basis = standard_basis(ideal);
    let lead = MonomialIdeal::new(basis.iter().filter_map(|g| g.leading_monomial(&ord)));
    let top = ideal.truncation() - 1;
    if !Monomial::of_degree(top).all(|m| lead.contains(m)) {
        return Err(Error::TruncationTooLow { truncation: ideal.truncation() });
    }
    Ok(lead)
}

/// Slope of the Hilbert-Samuel function of `R/I`, read off the leading
/// ideal: the number of standard monomials in each degree.
pub fn hilbert_samuel(ideal: &IdealPresentation) -> Result<Vec<u64>> {
    let lead = leading_ideal(ideal)?;
    lead.hilbert_samuel().ok_or(Error::TruncationTooLow { truncation: ideal.truncation() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(terms: &[(i64, u32, u32)]) -> TruncatedPolynomial {
        TruncatedPolynomial::from_int_terms(terms, 6)
    }

    fn mono(list: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::new(list.iter().map(|&(x, y)| Monomial::new(x, y)))
    }

    #[test]
    fn leading_ideal_examples() {
        // <x^2 + y^3, y^2>: y^3 reduces away through y^2.
        let i = IdealPresentation::new([p(&[(1, 2, 0), (1, 0, 3)]), p(&[(1, 0, 2)])], 6);
        assert_eq!(leading_ideal(&i), Ok(mono(&[(2, 0), (0, 2)])));

        let i = IdealPresentation::monomial(&[Monomial::new(2, 0), Monomial::new(0, 2)], 6);
        assert_eq!(leading_ideal(&i), Ok(mono(&[(2, 0), (0, 2)])));

        // <x + y^2, y^3>: x -> -y^2 leaves y^3.
        let i = IdealPresentation::new([p(&[(1, 1, 0), (1, 0, 2)]), p(&[(1, 0, 3)])], 6);
        assert_eq!(leading_ideal(&i), Ok(mono(&[(1, 0), (0, 3)])));
    }

    #[test]
    fn tie_break_changes_leading_ideal() {
        // <x^2, xy + y^2>: under y > x the lead of xy + y^2 is y^2.
        let i = IdealPresentation::new([p(&[(1, 2, 0)]), p(&[(1, 1, 1), (1, 0, 2)])], 6);
        assert_eq!(leading_ideal(&i), Ok(mono(&[(2, 0), (1, 1), (0, 3)])));
        let j = i.clone().with_ordering(LocalOrdering::Y_OVER_X);
        assert_eq!(leading_ideal(&j), Ok(mono(&[(2, 0), (0, 2)])));
    }

    #[test]
    fn hilbert_samuel_profiles() {
        let i = IdealPresentation::monomial(&[Monomial::new(2, 0), Monomial::new(1, 2), Monomial::new(0, 3)], 6);
        assert_eq!(hilbert_samuel(&i), Ok(vec![1, 2, 2]));
        let i = IdealPresentation::monomial(&[Monomial::new(2, 0), Monomial::new(1, 1), Monomial::new(0, 2)], 6);
        assert_eq!(hilbert_samuel(&i), Ok(vec![1, 2]));
        let i = IdealPresentation::monomial(&[Monomial::X, Monomial::Y], 6);
        assert_eq!(hilbert_samuel(&i), Ok(vec![1]));
    }

    #[test]
    fn truncation_signal() {
        let i = IdealPresentation::monomial(&[Monomial::X], 6);
        assert_eq!(leading_ideal(&i), Err(Error::TruncationTooLow { truncation: 6 }));
        let i = IdealPresentation::monomial(&[Monomial::new(2, 0), Monomial::new(0, 2)], 3);
        assert_eq!(leading_ideal(&i), Err(Error::TruncationTooLow { truncation: 3 }));
    }

    #[test]
    fn unit_ideal() {
        let i = IdealPresentation::new([p(&[(1, 0, 0), (1, 1, 0)])], 6);
        assert_eq!(leading_ideal(&i), Ok(mono(&[(0, 0)])));
        assert_eq!(hilbert_samuel(&i), Ok(vec![]));
    }

    #[test]
    fn normal_form_is_zero_on_members() {
        let ord = LocalOrdering::X_OVER_Y;
        let i = IdealPresentation::new([p(&[(1, 2, 0), (1, 0, 3)]), p(&[(1, 1, 1)])], 6);
        let sb = standard_basis(&i);
        // y * (x^2 + y^3) - x * (xy) = y^4 is in I.
        assert!(mora_normal_form(&p(&[(1, 0, 4)]), &sb, &ord).is_zero());
        assert!(!mora_normal_form(&p(&[(1, 0, 3)]), &sb, &ord).is_zero());
    }
}

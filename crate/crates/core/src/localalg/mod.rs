//! Truncated local algebra in `Q[[x, y]]`.
//!
//! Germs are [`TruncatedPolynomial`]s read modulo `<x, y>^N`. For a germ
//! `f` of multiplicity three the equimultiplicity ideal
//! `<f_x, f_y> + <x, y>^3` cuts a zero-dimensional scheme whose colength
//! depends only on the tangent cone: 4 for three distinct lines, 4 for a
//! double line plus a simple one, 5 for a triple line.
//!
//! Colengths are computed twice over: by linear algebra on the truncated
//! quotient ([`IdealPresentation::colength`]) and from the leading ideal of
//! a Mora standard basis ([`leading_ideal`]). The two agree because a local
//! degree ordering preserves the Hilbert-Samuel function.

mod ideal;
mod jet;
mod parse;
mod poly;
mod stdbasis;

use alloc::format;
use alloc::string::ToString;

use serde::{Deserialize, Serialize};

pub use ideal::{Colength, IdealPresentation, MonomialIdeal};
pub use jet::{classify_cubic_jet, classify_germ, BinaryCubic, JetClass};
pub use parse::parse_polynomial;
pub use poly::{LocalOrdering, Monomial, TieBreak, TruncatedPolynomial};
pub use stdbasis::{hilbert_samuel, leading_ideal, mora_normal_form, standard_basis};

use crate::{Error, Result};

/// Default truncation degree.
pub const DEFAULT_TRUNCATION: u32 = 6;

/// Largest truncation reached by [`with_growing_truncation`].
pub const MAX_TRUNCATION: u32 = 12;

/// Smallest truncation for which equimultiplicity data is computed.
pub const MIN_EQUIMULTIPLICITY_TRUNCATION: u32 = 6;

/// Terms of degree at most `k`.
pub fn jet(f: &TruncatedPolynomial, k: u32) -> TruncatedPolynomial {
    f.jet(k)
}

/// `<f_x, f_y> + <x, y>^3` for a germ of multiplicity exactly three.
pub fn equimultiplicity_ideal(f: &TruncatedPolynomial) -> Result<IdealPresentation> {
    let n = f.truncation();
    if n < MIN_EQUIMULTIPLICITY_TRUNCATION {
        return Err(Error::TruncationTooLow { truncation: n });
    }
    match f.order() {
        Some(3) => {}
        other => return Err(Error::WrongMultiplicity { found: other }),
    }
    Ok(IdealPresentation::new([f.diff_x(), f.diff_y()], n).plus_max_ideal_power(3))
}

/// `dim R/I` by linear algebra on the truncated quotient.
pub fn colength(ideal: &IdealPresentation) -> Colength {
    ideal.colength()
}

/// Runs `compute` at truncation `start`, doubling up to [`MAX_TRUNCATION`]
/// while it reports [`Error::TruncationTooLow`]. Returns the result and
/// the truncation that produced it.
pub fn with_growing_truncation<T>(start: u32, mut compute: impl FnMut(u32) -> Result<T>) -> Result<(T, u32)> {
    let mut n = start.max(1);
    loop {
        match compute(n) {
            Err(Error::TruncationTooLow { .. }) if n < MAX_TRUNCATION => n = (2 * n).min(MAX_TRUNCATION),
            other => return other.map(|v| (v, n)),
        }
    }
}

/// Outcome of the complete-intersection case split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormalForm {
    /// Equal to `<x^2, y^2>` after a coordinate change.
    TypeX2Y2,
    /// Equal to `<x, y^3>` after a coordinate change.
    TypeXY3,
    /// The Hilbert-Samuel slope rules out two generators.
    NotCompleteIntersection,
    /// The leading ideal is none of the five shapes of colength 3 to 5
    /// containing `<x^2, x y^2, y^3>`.
    OutOfScope,
}

/// The case split together with the data it was decided on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiClassification {
    pub form: NormalForm,
    /// Leading ideal for `x > y`, in the possibly swapped coordinates.
    pub leading_ideal: MonomialIdeal,
    /// Whether `x` and `y` were exchanged so that no element has a linear
    /// term in `y` alone.
    pub swapped: bool,
    pub colength: u64,
}

/// Classifies an ideal containing `<x, y>^3` of colength at least 3 by its
/// leading ideal under the local degree ordering with `x > y`.
pub fn ci_classify(ideal: &IdealPresentation) -> Result<CiClassification> {
    let n = ideal.truncation();
    if n < 4 {
        return Err(Error::TruncationTooLow { truncation: n });
    }
    let contains_cube = match ideal.colength() {
        Colength::InfiniteAtTruncation => false,
        Colength::Finite(_) => ideal.contains_max_ideal_power(3)?,
    };
    if !contains_cube {
        return Err(Error::Precondition("the ideal does not contain <x, y>^3".to_string()));
    }
    let colength = ideal.colength().finite().expect("finite once <x,y>^3 is contained");
    if colength < 3 {
        return Err(Error::Precondition(format!("colength {colength} is below 3")));
    }

    // With y > x a linear term in y shows up as the leading monomial y. If
    // the x > y pass does not see a linear x as well, the linear form is y
    // alone and the coordinates are exchanged.
    let y_first = leading_ideal(&ideal.clone().with_ordering(LocalOrdering::Y_OVER_X))?;
    let x_first = leading_ideal(&ideal.clone().with_ordering(LocalOrdering::X_OVER_Y))?;
    let swapped = y_first.contains(Monomial::Y) && !x_first.contains(Monomial::X);
    let lead = if swapped {
        leading_ideal(&ideal.swap_variables().with_ordering(LocalOrdering::X_OVER_Y))?
    } else {
        x_first
    };

    let is = |list: &[(u32, u32)]| lead == MonomialIdeal::new(list.iter().map(|&(x, y)| Monomial::new(x, y)));
    let form = if is(&[(2, 0), (1, 2), (0, 3)]) || is(&[(2, 0), (1, 1), (0, 2)]) {
        NormalForm::NotCompleteIntersection
    } else if is(&[(2, 0), (1, 1), (0, 3)]) || is(&[(2, 0), (0, 2)]) {
        NormalForm::TypeX2Y2
    } else if is(&[(1, 0), (0, 3)]) {
        NormalForm::TypeXY3
    } else {
        NormalForm::OutOfScope
    };
    Ok(CiClassification { form, leading_ideal: lead, swapped, colength })
}

pub fn ci_normal_form(ideal: &IdealPresentation) -> Result<NormalForm> {
    ci_classify(ideal).map(|c| c.form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn parse(s: &str) -> TruncatedPolynomial {
        parse_polynomial(s, 6).unwrap()
    }

    fn ideal(gens: &[&str]) -> IdealPresentation {
        IdealPresentation::new(gens.iter().map(|g| parse(g)), 6)
    }

    fn mono(list: &[(u32, u32)]) -> MonomialIdeal {
        MonomialIdeal::new(list.iter().map(|&(x, y)| Monomial::new(x, y)))
    }

    #[test]
    fn equimultiplicity_table() {
        let cases = [
            ("x^3-y^3", &["x^2", "y^2"][..], 4u64),
            ("x^2*y", &["x^2", "x*y", "y^3"][..], 4),
            ("x^3", &["x^2", "x*y^2", "y^3"][..], 5),
        ];
        for (f, expected, len) in cases {
            let j = equimultiplicity_ideal(&parse(f)).unwrap();
            assert_eq!(j.colength(), Colength::Finite(len), "{f}");
            assert!(j.same_ideal(&ideal(expected)).unwrap(), "{f}");
            assert_eq!(leading_ideal(&j).unwrap().colength(), Some(len));
        }
    }

    #[test]
    fn equimultiplicity_errors() {
        assert_eq!(equimultiplicity_ideal(&parse("x^2+y^3")), Err(Error::WrongMultiplicity { found: Some(2) }));
        assert_eq!(equimultiplicity_ideal(&parse("x^4")), Err(Error::WrongMultiplicity { found: Some(4) }));
        assert_eq!(equimultiplicity_ideal(&parse("0")), Err(Error::WrongMultiplicity { found: None }));
        let low = parse_polynomial("x^3", 5).unwrap();
        assert_eq!(equimultiplicity_ideal(&low), Err(Error::TruncationTooLow { truncation: 5 }));
    }

    #[test]
    fn jet_examples() {
        assert_eq!(jet(&parse("x^3-y^3+x^5"), 3), parse("x^3-y^3"));
        assert_eq!(jet(&parse("x^2*y+x^4"), 3), parse("x^2*y"));
        assert!(jet(&parse("0"), 3).is_zero());
    }

    #[test]
    fn normal_forms() {
        assert_eq!(ci_normal_form(&ideal(&["x^2", "x*y+y^2"])), Ok(NormalForm::TypeX2Y2));
        let i = ideal(&["x+y^5", "y^3+x^2*y"]).plus_max_ideal_power(3);
        assert_eq!(ci_normal_form(&i), Ok(NormalForm::TypeXY3));
        assert_eq!(ci_normal_form(&ideal(&["x^2", "y^2"])), Ok(NormalForm::TypeX2Y2));
        assert_eq!(ci_normal_form(&ideal(&["x^2", "x*y", "y^3"])), Ok(NormalForm::TypeX2Y2));
        assert_eq!(ci_normal_form(&ideal(&["x^2", "x*y^2", "y^3"])), Ok(NormalForm::NotCompleteIntersection));
        assert_eq!(ci_normal_form(&ideal(&["x^2", "x*y", "y^2"])), Ok(NormalForm::NotCompleteIntersection));
        assert_eq!(ci_normal_form(&ideal(&["x", "y^3"])), Ok(NormalForm::TypeXY3));
    }

    #[test]
    fn normal_form_swaps_pure_y_linear_terms() {
        let c = ci_classify(&ideal(&["y+x^2", "x^3"])).unwrap();
        assert!(c.swapped);
        assert_eq!(c.form, NormalForm::TypeXY3);
        assert_eq!(c.leading_ideal, mono(&[(1, 0), (0, 3)]));
        // A linear form involving x needs no swap.
        let c = ci_classify(&ideal(&["x+y", "y^3"])).unwrap();
        assert!(!c.swapped);
        assert_eq!(c.form, NormalForm::TypeXY3);
    }

    #[test]
    fn normal_form_preconditions() {
        // <x^2 + y^3, x y> has colength 5 and leading ideal <x^2, x y, y^4>,
        // so it does not contain <x, y>^3.
        let i = ideal(&["x^2+y^3", "x*y"]);
        assert_eq!(i.colength(), Colength::Finite(5));
        assert_eq!(leading_ideal(&i), Ok(mono(&[(2, 0), (1, 1), (0, 4)])));
        assert!(matches!(ci_normal_form(&i), Err(Error::Precondition(_))));
        assert!(matches!(ci_normal_form(&ideal(&["x", "y^2"])), Err(Error::Precondition(_))));
        assert!(matches!(ci_normal_form(&ideal(&["x"])), Err(Error::Precondition(_))));
        let low = IdealPresentation::monomial(&[Monomial::new(2, 0), Monomial::new(0, 2)], 3);
        assert_eq!(ci_normal_form(&low), Err(Error::TruncationTooLow { truncation: 3 }));
    }

    #[test]
    fn outside_the_five_shapes() {
        // <x^3, y> + m^3 has leading ideal <y, x^3> under x > y; after the
        // swap it is <x, y^3>.
        let c = ci_classify(&ideal(&["y", "x^3"])).unwrap();
        assert_eq!(c.form, NormalForm::TypeXY3);
        // <x^2, y^2> + <x y> pieces: <x^2, xy, y^2> is not a complete intersection;
        // <x^3, x^2 y, ...> with colength 6 falls outside the list.
        let i = ideal(&["x^3", "x^2*y", "x*y^2", "y^3"]);
        assert_eq!(ci_normal_form(&i), Ok(NormalForm::OutOfScope));
    }

    #[test]
    fn growing_truncation() {
        let mut seen = vec![];
        let (c, n) = with_growing_truncation(3, |n| {
            seen.push(n);
            let i = IdealPresentation::monomial(&[Monomial::new(4, 0), Monomial::new(0, 4)], n);
            i.colength().finite().ok_or(Error::TruncationTooLow { truncation: n })
        })
        .unwrap();
        assert_eq!((c, n), (16, 12));
        assert_eq!(seen, vec![3, 6, 12]);
        let r: Result<(u64, u32)> = with_growing_truncation(6, |n| Err(Error::TruncationTooLow { truncation: n }));
        assert_eq!(r, Err(Error::TruncationTooLow { truncation: 12 }));
    }
}

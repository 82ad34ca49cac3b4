//! Exact linear algebra over `Q`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// An incrementally built row-echelon basis of a subspace of `Q^n`.
///
/// Rows are stored fully reduced against each other and normalized so the
/// pivot entry is one; `pivots` maps pivot column to row.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: BTreeMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        EchelonBasis { width, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the current basis; the result is zero exactly
    /// when `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        assert_eq!(v.len(), self.width);
        for (&col, &r) in &self.pivots {
            if v[col].is_zero() {
                continue;
            }
            let factor = v[col].clone();
            for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<BigRational>) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let mut v = self.reduce(v);
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &v[col];
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // Keep the basis fully reduced so `reduce` is one pass.
        for row in self.rows.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.pivots.insert(col, self.rows.len());
        self.rows.push(v);
        true
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: impl IntoIterator<Item = Vec<BigRational>>, width: usize) -> usize {
    let mut basis = EchelonBasis::new(width);
    for row in rows {
        basis.insert(row);
        if basis.rank() == width {
            break;
        }
    }
    basis.rank()
}

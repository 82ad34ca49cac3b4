//! Numerical case analysis for destabilizing divisors.
//!
//! For a rank-two bundle with `c1 = L - K` and `c2 = length(Z')` the
//! Bogomolov condition `c1^2 - 4 c2 > 0` yields a decomposition
//! `L - K = A + B`. The functions here enumerate what intersection numbers
//! `(A.B, B^2)` survive the Hodge index inequality, and which splittings
//! `B = C + D` (with `C` the fixed part) are numerically possible.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default `(L-K)^2`: the least integer above 16.
pub const DEFAULT_LK_SQ: i64 = 17;

/// Shape note attached to rows with `length = 4` and `D^2 = 0`.
pub const D_SHAPE_MULTIPLE_FIBRE: &str = "kE,k≥2";

/// `c1^2 - 4 c2 > 0`.
pub fn bogomolov_unstable(lk_sq: i64, c2: i64) -> bool {
    lk_sq - 4 * c2 > 0
}

/// Pairs `(A.B, B^2)` compatible with Bogomolov instability and the Hodge
/// index theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstabilityProfile {
    pub lk_sq: i64,
    pub c2: i64,
    /// Sorted pairs `(ab, b2)`.
    pub feasible_pairs: BTreeSet<(i64, i64)>,
}

impl InstabilityProfile {
    /// The projection to `B^2`.
    pub fn b2_values(&self) -> BTreeSet<i64> {
        self.feasible_pairs.iter().map(|&(_, b2)| b2).collect()
    }

    pub fn ab_values(&self) -> BTreeSet<i64> {
        self.feasible_pairs.iter().map(|&(ab, _)| ab).collect()
    }
}

/// All integer pairs with `1 <= ab <= c2`, `0 <= b2 <= ab - 1` and
/// `ab^2 >= (lk_sq - 2 ab - b2) b2`, the last being `(A.B)^2 >= A^2 B^2`
/// with `A^2 = (A+B)^2 - 2 A.B - B^2`.
pub fn feasible_pairs(lk_sq: i64, c2: i64) -> Result<InstabilityProfile> {
    if c2 < 0 {
        return Err(Error::InvalidInput(format!("c2 must be nonnegative, got {c2}")));
    }
    if !bogomolov_unstable(lk_sq, c2) {
        return Err(Error::NotApplicable(format!(
            "(L-K)^2 = {lk_sq} and c2 = {c2} give c1^2 - 4 c2 = {} <= 0",
            lk_sq - 4 * c2
        )));
    }
    let mut pairs = BTreeSet::new();
    for ab in 1..=c2 {
        for b2 in 0..ab {
            let a2 = lk_sq - 2 * ab - b2;
            if ab * ab >= a2 * b2 {
                pairs.insert((ab, b2));
            }
        }
    }
    Ok(InstabilityProfile { lk_sq, c2, feasible_pairs: pairs })
}

/// `(A.D, A.C)` forced when `A.B` reaches the length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub ad: i64,
    pub ac: i64,
}

/// When `A.B = length(Z')`, the splitting forces `A.D = length` and
/// `A.C = 0`.
pub fn splitting_annotation(ab: i64, length: i64) -> Option<Splitting> {
    (ab == length).then_some(Splitting { ad: length, ac: 0 })
}

/// One numerical case for `B = C + D`.
///
/// Rows with `C^2 <= 0` carry `r` (the number of components of `C`), rows
/// with `C^2 > 0` carry `C.D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub length: i64,
    pub d2: i64,
    pub c2_div: i64,
    pub cd: Option<i64>,
    pub r: Option<i64>,
    pub ab_values: Vec<i64>,
    pub ad: Option<i64>,
    pub ac: Option<i64>,
    pub d_shape: Option<String>,
    pub extra: bool,
}

impl CaseRow {
    /// Lower bound on `A.B` from the row's fields.
    pub fn ab_lower_bound(&self) -> i64 {
        match (self.r, self.cd) {
            (Some(r), _) => r - self.c2_div + self.d2 + 1,
            (None, Some(cd)) => self.d2 + 2 * cd + self.c2_div + 1,
            (None, None) => unreachable!("rows carry r or C.D"),
        }
    }

    /// `B^2 = D^2 + 2 C.D + C^2`, known only when `C.D` is.
    pub fn b2(&self) -> Option<i64> {
        self.cd.map(|cd| self.d2 + 2 * cd + self.c2_div)
    }

    fn key(&self) -> (u8, i64, i64, i64, i64) {
        match (self.r, self.cd) {
            (Some(r), _) => (1, self.length, self.d2, self.c2_div, r),
            (_, cd) => (2, self.length, self.d2, self.c2_div, cd.unwrap_or(0)),
        }
    }
}

/// `(block, length, D^2, C^2, r or C.D)` of the published table.
const PUBLISHED_CASES: [(u8, i64, i64, i64, i64); 17] = [
    (1, 4, 0, -2, 1),
    (1, 4, 0, -1, 2),
    (1, 4, 0, 0, 3),
    (1, 4, 0, -1, 1),
    (1, 4, 2, 0, 1),
    (1, 4, 0, 0, 2),
    (1, 4, 0, 0, 1),
    (1, 3, 0, -1, 1),
    (1, 3, 0, 0, 2),
    (1, 3, 1, 0, 1),
    (1, 3, 0, 0, 1),
    (2, 4, 0, 1, 1),
    (2, 4, 2, 1, 0),
    (2, 4, 0, 1, 0),
    (2, 4, 0, 2, 0),
    (2, 3, 1, 1, 0),
    (2, 3, 0, 1, 0),
];

fn build_row(length: i64, d2: i64, c2_div: i64, r: Option<i64>, cd: Option<i64>, lower: i64) -> CaseRow {
    let ab_values: Vec<i64> = (lower.max(1)..=length).collect();
    let forced = ab_values.first().and_then(|&ab| splitting_annotation(ab, length));
    let mut row = CaseRow {
        length,
        d2,
        c2_div,
        cd,
        r,
        ab_values,
        ad: forced.map(|s| s.ad),
        ac: forced.map(|s| s.ac),
        d_shape: (length == 4 && d2 == 0).then(|| D_SHAPE_MULTIPLE_FIBRE.to_string()),
        extra: false,
    };
    row.extra = !PUBLISHED_CASES.contains(&row.key());
    row
}

/// Enumerates the cases for `length(Z') ∈ {3, 4}`.
///
/// Block 1 (`C^2 <= 0`) needs `A.B >= r - C^2 + D^2 + 1`, block 2
/// (`C^2 > 0`) needs `A.B >= D^2 + 2 C.D + C^2 + 1`; both need
/// `A.B <= length` and, for length 4, `D^2 != 1`. With `apply_hodge`,
/// block-2 rows whose `B^2` is not feasible for `(lk_sq, length)` are
/// dropped; block-1 rows do not determine `B^2` and are kept.
///
/// Rows come ordered by block, then decreasing length, then decreasing
/// smallest `A.B`, then `(D^2, C^2, r or C.D)`.
pub fn enumerate_cases(length: i64, apply_hodge: bool, lk_sq: i64) -> Result<Vec<CaseRow>> {
    if length != 3 && length != 4 {
        return Err(Error::OutOfScope(format!("case table covers lengths 3 and 4, got {length}")));
    }
    let feasible_b2 = if apply_hodge { Some(feasible_pairs(lk_sq, length)?.b2_values()) } else { None };
    let d2_allowed = |d2: i64| !(length == 4 && d2 == 1);
    let mut rows = Vec::new();

    // Every summand of the lower bounds is nonnegative, so each is at most length - 1.
    for d2 in (0..length).filter(|&d| d2_allowed(d)) {
        for neg_c2 in 0..length {
            for r in 1..length {
                let lower = r + neg_c2 + d2 + 1;
                if lower <= length {
                    rows.push(build_row(length, d2, -neg_c2, Some(r), None, lower));
                }
            }
        }
    }
    for d2 in (0..length).filter(|&d| d2_allowed(d)) {
        for c2_div in 1..length {
            for cd in 0..length {
                let lower = d2 + 2 * cd + c2_div + 1;
                if lower > length {
                    continue;
                }
                if let Some(b2s) = &feasible_b2 {
                    if !b2s.contains(&(d2 + 2 * cd + c2_div)) {
                        continue;
                    }
                }
                rows.push(build_row(length, d2, c2_div, None, Some(cd), lower));
            }
        }
    }
    rows.sort_by_key(|row| {
        let (block, _, d2, c2, last) = row.key();
        (block, -row.length, -row.ab_values[0], d2, c2, last)
    });
    Ok(rows)
}

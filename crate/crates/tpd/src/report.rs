//! The triple-point analysis report for one linear system.

use serde::{Deserialize, Serialize};
use tpd_core::caseanalysis::feasible_pairs;
use tpd_core::lattice::{DivisorClass, SurfaceKind, SurfaceModel};
use tpd_core::sections::{self, FatPointSpec, TrialRecord};
use tpd_core::Error;

use crate::config::Config;
use crate::CliError;

/// Label attached to every Monte-Carlo dimension in a report.
pub const MONTE_CARLO_LABEL: &str = "dimensions: Monte-Carlo exact (agreed trials)";

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub surface: String,
    pub divisor: String,
    pub dim_L: i64,
    pub expdim: i64,
    pub actual_dim: i64,
    pub defect: u64,
    pub defective: bool,
    pub lk2: i64,
    pub bogomolov_applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasible_b2: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_fiber: Option<bool>,
    pub trials: Vec<TrialRecord>,
    pub notes: Vec<String>,
}

/// The report together with whether every Monte-Carlo run agreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub agreed: bool,
}

fn small<'a, T>(value: &'a T, what: &str) -> Result<i64, CliError>
where
    i64: TryFrom<&'a T>,
{
    i64::try_from(value).map_err(|_| CliError::Core(Error::OutOfScope(format!("{what} does not fit in 64 bits"))))
}

/// `L = C0 + (e+2)F` on `F_e`, whose adjoint square depends on `e`.
fn is_example_class(surface: &SurfaceModel, d: &DivisorClass) -> Option<u32> {
    match surface.kind() {
        SurfaceKind::Hirzebruch { e } if *d == DivisorClass::from_i64s(&[1, i64::from(e) + 2]) => Some(e),
        _ => None,
    }
}

/// Runs the full analysis of `|L - 3p|` at a general point `p`.
///
/// With `require_unstable`, a class with `(L-K)^2 <= 16` is rejected as
/// not applicable.
pub fn analyze(
    surface_spec: &str,
    divisor: &str,
    config: &Config,
    require_unstable: bool,
) -> Result<Analysis, CliError> {
    let kind: SurfaceKind = surface_spec.parse()?;
    let surface = SurfaceModel::from_kind(kind)?;
    let l = surface.parse_divisor(divisor)?;
    let rank = config.rank_config();

    let lk = &l - surface.canonical_class();
    let lk2 = small(&surface.self_intersection(&lk)?, "(L-K)^2")?;
    let bogomolov_applicable = lk2 > 16;
    if require_unstable && !bogomolov_applicable {
        return Err(CliError::Core(Error::NotApplicable(format!("(L-K)^2 = {lk2} is not above 16"))));
    }

    let mut agreed = true;
    let (dim_l, expdim) = match kind {
        SurfaceKind::BlowupPlane { .. } => {
            let free = sections::dim_fat_point_system_with(&surface, &l, &FatPointSpec::random(&[], config.seed)?, &rank)?;
            agreed &= free.agreed;
            (free.projective_dim, (free.projective_dim - 6).max(-1))
        }
        _ => {
            let h0 = sections::h0(&surface, &l)? as i64;
            (h0 - 1, sections::expected_dim(&surface, &l, &[3])?)
        }
    };
    let actual = sections::dim_fat_point_system_with(&surface, &l, &FatPointSpec::random(&[3], config.seed)?, &rank)?;
    agreed &= actual.agreed;
    let defect = (actual.projective_dim - expdim).max(0) as u64;

    let mut notes = vec![MONTE_CARLO_LABEL.to_string()];
    notes.extend(actual.warnings.iter().cloned());

    let feasible_b2 = if bogomolov_applicable {
        let mut b2 = std::collections::BTreeSet::new();
        for c2 in [3, 4] {
            b2.extend(feasible_pairs(lk2, c2)?.b2_values());
        }
        Some(b2.into_iter().collect())
    } else {
        None
    };

    let double_fiber = match kind {
        SurfaceKind::Hirzebruch { .. } => match sections::verify_double_fiber_with(&surface, &l, config.seed, &rank) {
            Ok(v) => Some(v),
            Err(Error::Precondition(msg)) => {
                notes.push(format!("double fibre check skipped: {msg}"));
                None
            }
            Err(e) => return Err(e.into()),
        },
        _ => None,
    };

    if let Some(e) = is_example_class(&surface, &l) {
        if e != 0 {
            notes.push(format!(
                "(L-K)^2 = (3C0+{}F)^2 = 3e+24 = {lk2}; the value 24 holds only for e = 0",
                2 * e + 4
            ));
        }
    }

    let report = AnalysisReport {
        surface: kind.to_string(),
        divisor: surface.format_divisor(&l),
        dim_L: dim_l,
        expdim,
        actual_dim: actual.projective_dim,
        defect,
        defective: defect > 0,
        lk2,
        bogomolov_applicable,
        feasible_b2,
        double_fiber,
        trials: actual.trials,
        notes,
    };
    Ok(Analysis { report, agreed })
}

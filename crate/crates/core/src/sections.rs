//! Global sections and fat-point conditions.
//!
//! Sections of a line bundle are written as polynomials in an affine chart
//! `(x, y)`. On `F_e` the class `aC0 + bF` has the basis `y^k x^j` with
//! `0 <= k <= a` and `0 <= j <= b - ke`; on the plane `rH` has all monomials
//! of degree at most `r`. A fat point `m p` imposes the vanishing of every
//! partial derivative of order `< m` at `p`, i.e. `binom(m+1, 2)` linear
//! conditions.
//!
//! Dimensions of `|D - m1 p1 - ... - mn pn|` at general points are computed
//! by Monte-Carlo: each trial draws a prime `p` and random chart coordinates
//! in `Z/p` and takes the rank of the interpolation matrix. Specialization
//! and reduction mod `p` can only lower the rank, so the maximum over trials
//! is reported.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::lattice::{DivisorClass, SurfaceKind, SurfaceModel};
use crate::{linalg, modp, Error, Result};

/// Largest section space the interpolation code will build.
pub const MAX_SECTIONS: u64 = 4096;

/// Default number of Monte-Carlo trials.
pub const DEFAULT_TRIALS: u32 = 3;

/// Default prime size: primes are drawn from `(2^30, 2^31)`.
pub const DEFAULT_PRIME_BITS: u32 = 31;

/// A chart monomial `x^x y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Exponent {
    pub x: u32,
    pub y: u32,
}

/// A monomial basis of `H^0(S, D)` in the affine chart.
#[derive(Clone, Debug)]
pub struct SectionBasis<'a> {
    surface: &'a SurfaceModel,
    divisor: DivisorClass,
    monomials: Vec<Exponent>,
}

impl<'a> SectionBasis<'a> {
    pub fn new(surface: &'a SurfaceModel, divisor: &DivisorClass) -> Result<Self> {
        let count = h0(surface, divisor)?;
        if count > MAX_SECTIONS {
            return Err(Error::OutOfScope(format!(
                "h0 = {count} exceeds the supported basis size {MAX_SECTIONS}"
            )));
        }
        let monomials = match surface.kind() {
            SurfaceKind::ProjectivePlane => plane_monomials(small_coefficient(divisor, 0)?),
            SurfaceKind::Hirzebruch { e } => {
                let a = small_coefficient(divisor, 0)?;
                let b = small_coefficient(divisor, 1)?;
                let mut out = Vec::new();
                for k in 0..=a.max(-1) {
                    let top = b - k * i64::from(e);
                    for j in 0..=top.max(-1) {
                        out.push(Exponent { x: j as u32, y: k as u32 });
                    }
                }
                out
            }
            SurfaceKind::BlowupPlane { .. } => unreachable!("h0 rejects blowups"),
        };
        debug_assert_eq!(monomials.len() as u64, count);
        Ok(SectionBasis { surface, divisor: divisor.clone(), monomials })
    }

    pub fn surface(&self) -> &SurfaceModel {
        self.surface
    }

    pub fn divisor(&self) -> &DivisorClass {
        &self.divisor
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

fn plane_monomials(r: i64) -> Vec<Exponent> {
    let mut out = Vec::new();
    for d in 0..=r.max(-1) {
        for y in 0..=d {
            out.push(Exponent { x: (d - y) as u32, y: y as u32 });
        }
    }
    out
}

fn small_coefficient(d: &DivisorClass, i: usize) -> Result<i64> {
    let c = d.coefficient_i64(i).filter(|c| c.abs() <= 1 << 20);
    c.ok_or_else(|| Error::OutOfScope("divisor coefficient too large for section bases".to_string()))
}

/// Number of independent global sections of `D`.
///
/// Zero when `D` has no sections in the implemented range (`a < 0` on
/// `F_e`, `r < 0` on the plane). Blowups of the plane are handled as plane
/// systems with fat points, see [`dim_fat_point_system`].
pub fn h0(surface: &SurfaceModel, d: &DivisorClass) -> Result<u64> {
    if d.len() != surface.rank() {
        return Err(Error::DimensionMismatch { expected: surface.rank(), found: d.len() });
    }
    match surface.kind() {
        SurfaceKind::ProjectivePlane => {
            let r = BigInt::from(small_coefficient(d, 0)?);
            if r.is_negative() {
                return Ok(0);
            }
            let n: BigInt = (&r + 1) * (&r + 2) / 2;
            n.to_u64().ok_or_else(|| Error::OutOfScope("h0 overflow".to_string()))
        }
        SurfaceKind::Hirzebruch { e } => {
            let a = small_coefficient(d, 0)?;
            let b = small_coefficient(d, 1)?;
            let e = i64::from(e);
            if a < 0 || b < 0 {
                return Ok(0);
            }
            if e == 0 {
                return Ok(((a + 1) * (b + 1)) as u64);
            }
            let kmax = a.min(b / e);
            Ok((0..=kmax).map(|k| (b - k * e + 1) as u64).sum())
        }
        SurfaceKind::BlowupPlane { .. } => Err(Error::Unsupported(
            "h0 on a blowup of the plane; evaluate it as a plane system with fat points".to_string(),
        )),
    }
}

/// One fat point: an identifier and the imposed multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatPoint {
    pub id: String,
    pub multiplicity: u32,
}

/// Where the fat points sit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Placement {
    /// Uniformly random chart coordinates, redrawn in every trial.
    Random { seed: u64 },
    /// Fixed rational chart coordinates. On a blowup of the plane the list
    /// starts with the `n` blown-up centers, followed by the fat points.
    Explicit(Vec<(BigRational, BigRational)>),
}

/// Parses `random:<seed>` or a list of pairs such as `(0,0);(1/2,-3)`.
impl FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("random:") {
            let seed = rest.trim().parse::<u64>().map_err(|_| Error::Parse {
                position: 7,
                message: format!("bad seed `{rest}`"),
            })?;
            return Ok(Placement::Random { seed });
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut points = Vec::new();
        let mut rest = compact.as_str();
        let mut offset = 0;
        while !rest.is_empty() {
            let bad = |message: &str| Error::Parse { position: offset, message: message.to_string() };
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = body.find(')').ok_or_else(|| bad("missing `)`"))?;
            let (x, y) = body[..close].split_once(',').ok_or_else(|| bad("expected `x,y`"))?;
            points.push((parse_rational(x, offset)?, parse_rational(y, offset)?));
            rest = &body[close + 1..];
            offset += close + 2;
            if let Some(r) = rest.strip_prefix(';').or_else(|| rest.strip_prefix(',')) {
                rest = r;
                offset += 1;
            }
        }
        if points.is_empty() {
            return Err(Error::Parse { position: 0, message: "expected `random:<seed>` or `(x,y)` pairs".to_string() });
        }
        Ok(Placement::Explicit(points))
    }
}

/// Parses `-3`, `7/2` and the like.
pub fn parse_rational(s: &str, position: usize) -> Result<BigRational> {
    let bad = || Error::Parse { position, message: format!("bad rational `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Fat points `m1 p1 + ... + mn pn` and their placement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPointSpec {
    pub points: Vec<FatPoint>,
    pub placement: Placement,
}

impl FatPointSpec {
    pub fn new(points: Vec<FatPoint>, placement: Placement) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.multiplicity == 0) {
            return Err(Error::InvalidInput(format!("point {} has multiplicity 0", p.id)));
        }
        Ok(FatPointSpec { points, placement })
    }

    /// Points `p1, p2, ...` with the given multiplicities at random positions.
    pub fn random(multiplicities: &[u32], seed: u64) -> Result<Self> {
        Self::new(Self::named(multiplicities), Placement::Random { seed })
    }

    pub fn explicit(multiplicities: &[u32], coordinates: Vec<(BigRational, BigRational)>) -> Result<Self> {
        Self::new(Self::named(multiplicities), Placement::Explicit(coordinates))
    }

    fn named(multiplicities: &[u32]) -> Vec<FatPoint> {
        multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| FatPoint { id: format!("p{}", i + 1), multiplicity: m })
            .collect()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.multiplicity).collect()
    }
}

/// Monte-Carlo settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankConfig {
    pub trials: u32,
    /// Primes are drawn from `(2^(prime_bits-1), 2^prime_bits)`.
    pub prime_bits: u32,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig { trials: DEFAULT_TRIALS, prime_bits: DEFAULT_PRIME_BITS }
    }
}

impl RankConfig {
    pub fn with_trials(trials: u32) -> Self {
        RankConfig { trials, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrialRecord {
    pub prime: u64,
    pub seed: u64,
    pub rank: u64,
}

/// Outcome of a Monte-Carlo dimension computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionResult {
    /// `h0 - rank - 1`; `-1` for an empty system.
    pub projective_dim: i64,
    pub h0: u64,
    /// Maximum rank over the trials.
    pub rank: u64,
    /// Sorted by `(prime, seed)`.
    pub trials: Vec<TrialRecord>,
    /// Whether every trial found the same rank.
    pub agreed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// A plane or Hirzebruch linear system with the base-point conditions
/// coming from exceptional classes.
struct ChartSystem {
    monomials: Vec<Exponent>,
    multiplicities: Vec<u32>,
}

fn chart_system(surface: &SurfaceModel, d: &DivisorClass, fat: &FatPointSpec) -> Result<ChartSystem> {
    if d.len() != surface.rank() {
        return Err(Error::DimensionMismatch { expected: surface.rank(), found: d.len() });
    }
    let (monomials, mut multiplicities) = match surface.kind() {
        SurfaceKind::BlowupPlane { n } => {
            let plane = SurfaceModel::projective_plane();
            let degree = DivisorClass::new(vec![d.coefficients()[0].clone()]);
            let basis = SectionBasis::new(&plane, &degree)?;
            // dH - sum a_i E_i becomes a plane system through a_i p_i;
            // a positive E_i coefficient is a fixed component and imposes nothing.
            let mut base = Vec::with_capacity(n as usize);
            for i in 1..=n as usize {
                let c = small_coefficient(d, i)?;
                base.push(if c < 0 { (-c) as u32 } else { 0 });
            }
            (basis.monomials, base)
        }
        _ => (SectionBasis::new(surface, d)?.monomials, Vec::new()),
    };
    multiplicities.extend(fat.points.iter().map(|p| p.multiplicity));
    if let Placement::Explicit(coords) = &fat.placement {
        if coords.len() != multiplicities.len() {
            return Err(Error::InvalidInput(format!(
                "explicit placement lists {} points, the system needs {}",
                coords.len(),
                multiplicities.len()
            )));
        }
    }
    Ok(ChartSystem { monomials, multiplicities })
}

fn binom2(m: u32) -> i64 {
    let m = i64::from(m);
    m * (m + 1) / 2
}

/// `j (j-1) ... (j-a+1)`, the coefficient from differentiating `t^j` `a` times.
fn falling(j: u32, a: u32) -> u64 {
    (0..a).map(|i| u64::from(j - i)).product()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for trial `t` derived from the base seed.
pub fn trial_seed(seed: u64, t: u32) -> u64 {
    splitmix64(seed ^ splitmix64(u64::from(t)))
}

fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    Some(modp::mul_mod(num, modp::inv_mod(den, p)?, p))
}

fn interpolation_rows_mod(system: &ChartSystem, points: &[(u64, u64)], p: u64) -> Vec<Vec<u64>> {
    let mut rows = Vec::new();
    for (&(x0, y0), &m) in points.iter().zip(&system.multiplicities) {
        for order in 0..m {
            for b in 0..=order {
                let a = order - b;
                let row = system
                    .monomials
                    .iter()
                    .map(|mon| {
                        if mon.x < a || mon.y < b {
                            return 0;
                        }
                        let c = falling(mon.x, a) % p * (falling(mon.y, b) % p) % p;
                        let v = modp::mul_mod(modp::pow_mod(x0, u64::from(mon.x - a), p), modp::pow_mod(y0, u64::from(mon.y - b), p), p);
                        modp::mul_mod(c, v, p)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    rows
}

fn run_trial(
    system: &ChartSystem,
    placement: &Placement,
    seed: u64,
    bits: u32,
    used: &BTreeSet<u64>,
) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_mult = system.multiplicities.iter().copied().max().unwrap_or(0);
    loop {
        let p = modp::random_prime(&mut rng, bits);
        if used.contains(&p) || p <= u64::from(max_mult) {
            continue;
        }
        let points: Vec<(u64, u64)> = match placement {
            Placement::Random { .. } => {
                let mut pts: Vec<(u64, u64)> = Vec::with_capacity(system.multiplicities.len());
                while pts.len() < system.multiplicities.len() {
                    let q = (modp::random_nonzero(&mut rng, p), modp::random_nonzero(&mut rng, p));
                    if !pts.contains(&q) {
                        pts.push(q);
                    }
                }
                pts
            }
            Placement::Explicit(coords) => {
                let reduced: Option<Vec<(u64, u64)>> = coords
                    .iter()
                    .map(|(x, y)| Some((reduce_rational(x, p)?, reduce_rational(y, p)?)))
                    .collect();
                match reduced {
                    Some(r) => r,
                    // A denominator vanishes mod p; draw another prime.
                    None => continue,
                }
            }
        };
        let rank = if system.monomials.is_empty() {
            0
        } else {
            modp::rank_mod(interpolation_rows_mod(system, &points, p), p)
        };
        return (p, rank as u64);
    }
}

/// `dim |D - m1 p1 - ... - mn pn|` with the given number of trials and the
/// default prime size.
pub fn dim_fat_point_system(
    surface: &SurfaceModel,
    d: &DivisorClass,
    fat: &FatPointSpec,
    trials: u32,
) -> Result<DimensionResult> {
    dim_fat_point_system_with(surface, d, fat, &RankConfig::with_trials(trials))
}

pub fn dim_fat_point_system_with(
    surface: &SurfaceModel,
    d: &DivisorClass,
    fat: &FatPointSpec,
    config: &RankConfig,
) -> Result<DimensionResult> {
    if config.trials == 0 {
        return Err(Error::InvalidInput("at least one trial is required".to_string()));
    }
    if !(8..=32).contains(&config.prime_bits) {
        return Err(Error::InvalidInput(format!("prime_bits must be in 8..=32, got {}", config.prime_bits)));
    }
    let system = chart_system(surface, d, fat)?;
    let max_mult = system.multiplicities.iter().copied().max().unwrap_or(0);
    if u64::from(max_mult) >= 1u64 << (config.prime_bits - 1) {
        return Err(Error::InvalidInput("multiplicity exceeds the prime field characteristic".to_string()));
    }
    let mut warnings = Vec::new();
    if let Placement::Explicit(coords) = &fat.placement {
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                if coords[i] == coords[j] {
                    warnings.push(format!("degenerate input: points {} and {} coincide", i + 1, j + 1));
                }
            }
        }
    }
    let base_seed = match fat.placement {
        Placement::Random { seed } => seed,
        Placement::Explicit(_) => 0,
    };
    let mut used = BTreeSet::new();
    let mut trials = Vec::with_capacity(config.trials as usize);
    for t in 0..config.trials {
        let seed = trial_seed(base_seed, t);
        let (prime, rank) = run_trial(&system, &fat.placement, seed, config.prime_bits, &used);
        used.insert(prime);
        trials.push(TrialRecord { prime, seed, rank });
    }
    trials.sort();
    let rank = trials.iter().map(|t| t.rank).max().unwrap_or(0);
    let agreed = trials.iter().all(|t| t.rank == rank);
    let h0 = system.monomials.len() as u64;
    Ok(DimensionResult { projective_dim: h0 as i64 - rank as i64 - 1, h0, rank, trials, agreed, warnings })
}

/// Exact dimension over `Q` at explicitly placed points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactDimension {
    pub projective_dim: i64,
    pub h0: u64,
    pub rank: u64,
}

/// Rank of the interpolation matrix over `Q` at the explicit points of `fat`.
pub fn dim_fat_point_system_exact(
    surface: &SurfaceModel,
    d: &DivisorClass,
    fat: &FatPointSpec,
) -> Result<ExactDimension> {
    let Placement::Explicit(coords) = &fat.placement else {
        return Err(Error::InvalidInput("exact rank needs explicit point coordinates".to_string()));
    };
    let system = chart_system(surface, d, fat)?;
    let width = system.monomials.len();
    let pow = |base: &BigRational, e: u32| -> BigRational { num_traits::pow(base.clone(), e as usize) };
    let mut rows = Vec::new();
    for ((x0, y0), &m) in coords.iter().zip(&system.multiplicities) {
        for order in 0..m {
            for b in 0..=order {
                let a = order - b;
                let row: Vec<BigRational> = system
                    .monomials
                    .iter()
                    .map(|mon| {
                        if mon.x < a || mon.y < b {
                            return BigRational::zero();
                        }
                        let c = BigInt::from(falling(mon.x, a)) * BigInt::from(falling(mon.y, b));
                        BigRational::from_integer(c) * pow(x0, mon.x - a) * pow(y0, mon.y - b)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    let rank = linalg::rank(rows, width) as u64;
    Ok(ExactDimension { projective_dim: width as i64 - rank as i64 - 1, h0: width as u64, rank })
}

/// `max(-1, dim|D| - sum binom(m_i + 1, 2))`.
pub fn expected_dim(surface: &SurfaceModel, d: &DivisorClass, multiplicities: &[u32]) -> Result<i64> {
    let h = h0(surface, d)? as i64;
    let conditions: i64 = multiplicities.iter().map(|&m| binom2(m)).sum();
    Ok((h - 1 - conditions).max(-1))
}

/// Excess of the observed dimension over the expected one, floored at zero.
pub fn defect(surface: &SurfaceModel, d: &DivisorClass, fat: &FatPointSpec, trials: u32) -> Result<u64> {
    let expected = expected_dim(surface, d, &fat.multiplicities())?;
    let actual = dim_fat_point_system(surface, d, fat, trials)?;
    Ok((actual.projective_dim - expected).max(0) as u64)
}

/// Checks `dim |D - 3p| = dim |(D - 2F) - p|` at one random point `p`,
/// i.e. that every curve of `|D - 3p|` contains the fibre through `p`
/// twice.
pub fn verify_double_fiber(surface: &SurfaceModel, d: &DivisorClass, seed: u64) -> Result<bool> {
    verify_double_fiber_with(surface, d, seed, &RankConfig::default())
}

pub fn verify_double_fiber_with(
    surface: &SurfaceModel,
    d: &DivisorClass,
    seed: u64,
    config: &RankConfig,
) -> Result<bool> {
    if !matches!(surface.kind(), SurfaceKind::Hirzebruch { .. }) {
        return Err(Error::NotApplicable("double fibres are defined on Hirzebruch surfaces".to_string()));
    }
    let fibre = surface.class("F")?;
    let residual = d - &(2 * &fibre);
    if h0(surface, &residual)? == 0 {
        return Err(Error::Precondition(format!(
            "{} has no sections",
            surface.format_divisor(&residual)
        )));
    }
    // Both systems use the same seed and hence the same primes and point.
    let triple = dim_fat_point_system_with(surface, d, &FatPointSpec::random(&[3], seed)?, config)?;
    let simple = dim_fat_point_system_with(surface, &residual, &FatPointSpec::random(&[1], seed)?, config)?;
    Ok(triple.projective_dim == simple.projective_dim)
}

//! Argument parsing and command dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{error::ErrorKind, Parser, Subcommand};
use serde::Serialize;
use tpd_core::caseanalysis::{self, CaseRow};
use tpd_core::lattice::{SurfaceKind, SurfaceModel};
use tpd_core::localalg::{
    self, classify_germ, parse_polynomial, JetClass, NormalForm, MAX_TRUNCATION,
};
use tpd_core::sections::{self, DimensionResult, FatPointSpec, Placement};

use crate::config::{Config, ConfigLayer};
use crate::report::{self, AnalysisReport};
use crate::{verify, CliError, EXIT_DISAGREEMENT, EXIT_FAILURE, EXIT_OK, EXIT_PARSE};

#[derive(Debug, Parser)]
#[command(name = "tpd", version, about = "Triple-point defectiveness of linear systems on rational surfaces")]
pub struct Cli {
    /// TOML file with default_trials, default_seed, prime_bits, truncation.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Base seed for random points and primes.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of Monte-Carlo trials.
    #[arg(long, global = true)]
    pub trials: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for |L - 3p| at a general point.
    Analyze {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        divisor: String,
        /// Exit 2 unless (L-K)^2 > 16.
        #[arg(long)]
        require_unstable: bool,
    },
    /// dim |D - m1 p1 - ... - mn pn|.
    Dim {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        divisor: String,
        /// Comma-separated multiplicities, e.g. `3,2,2`.
        #[arg(long, default_value = "")]
        mults: String,
        /// `random:<seed>` or `(x,y);(x,y);...`; defaults to random with --seed.
        #[arg(long)]
        points: Option<String>,
    },
    /// Tangent-cone class of a germ and its equimultiplicity colength.
    Jet {
        #[arg(long)]
        poly: String,
    },
    /// Equimultiplicity ideal, leading ideal, Hilbert-Samuel slope, normal form.
    Equimult {
        #[arg(long)]
        poly: String,
    },
    /// Numerical cases for B = C + D.
    Cases {
        #[arg(long)]
        length: i64,
        /// Drop rows whose B^2 fails the Hodge index inequality.
        #[arg(long)]
        hodge: bool,
        #[arg(long, default_value_t = caseanalysis::DEFAULT_LK_SQ)]
        lk2: i64,
    },
    /// Feasible (A.B, B^2) pairs.
    Hodge {
        #[arg(long)]
        lk2: i64,
        #[arg(long)]
        c2: i64,
    },
    /// Run the built-in checklist.
    VerifyPaper,
}

/// What a command printed and the exit code it asks for.
pub struct Rendered {
    pub body: String,
    pub code: i32,
}

fn render<T: Serialize>(value: &T, pretty: bool) -> Result<String, CliError> {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    text.map_err(|e| CliError::Internal(e.to_string()))
}

fn agreed_code(agreed: bool) -> i32 {
    if agreed {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    }
}

pub fn parse_multiplicities(text: &str) -> Result<Vec<u32>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|m| m.trim().parse::<u32>().map_err(|_| CliError::Parse(format!("bad multiplicity `{m}`"))))
        .collect()
}

#[derive(Debug, Serialize)]
struct DimOutput {
    surface: String,
    divisor: String,
    multiplicities: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expdim: Option<i64>,
    result: DimensionResult,
}

#[derive(Debug, Serialize)]
struct JetOutput {
    poly: String,
    jet3: String,
    multiplicity: Option<u32>,
    class: JetClass,
    colength: Option<u64>,
    truncation: u32,
}

#[derive(Debug, Serialize)]
struct EquimultOutput {
    poly: String,
    generators: Vec<String>,
    colength: u64,
    leading_ideal: String,
    hilbert_samuel: Vec<u64>,
    normal_form: NormalForm,
    swapped: bool,
    truncation: u32,
}

#[derive(Debug, Serialize)]
struct CasesOutput {
    length: i64,
    hodge: bool,
    lk2: i64,
    rows: Vec<CaseRow>,
}

#[derive(Debug, Serialize)]
struct HodgeOutput {
    lk2: i64,
    c2: i64,
    pairs: Vec<(i64, i64)>,
    b2: Vec<i64>,
}

/// Executes one parsed command.
pub fn execute(command: &Command, config: &Config, pretty: bool) -> Result<Rendered, CliError> {
    match command {
        Command::Analyze { surface, divisor, require_unstable } => {
            let analysis = report::analyze(surface, divisor, config, *require_unstable)?;
            Ok(Rendered { body: render::<AnalysisReport>(&analysis.report, pretty)?, code: agreed_code(analysis.agreed) })
        }
        Command::Dim { surface, divisor, mults, points } => {
            let kind: SurfaceKind = surface.parse()?;
            let model = SurfaceModel::from_kind(kind)?;
            let d = model.parse_divisor(divisor)?;
            let multiplicities = parse_multiplicities(mults)?;
            let placement = match points {
                Some(p) => p.parse::<Placement>()?,
                None => Placement::Random { seed: config.seed },
            };
            let fat = match placement {
                Placement::Random { seed } => FatPointSpec::random(&multiplicities, seed)?,
                Placement::Explicit(coords) => FatPointSpec::explicit(&multiplicities, coords)?,
            };
            let result = sections::dim_fat_point_system_with(&model, &d, &fat, &config.rank_config())?;
            let expdim = match kind {
                SurfaceKind::BlowupPlane { .. } => None,
                _ => Some(sections::expected_dim(&model, &d, &multiplicities)?),
            };
            let code = agreed_code(result.agreed);
            let out = DimOutput { surface: kind.to_string(), divisor: model.format_divisor(&d), multiplicities, expdim, result };
            Ok(Rendered { body: render(&out, pretty)?, code })
        }
        Command::Jet { poly } => {
            let f = parse_polynomial(poly, MAX_TRUNCATION)?;
            let colength = match f.order() {
                Some(3) => {
                    let ideal = localalg::equimultiplicity_ideal(&f.with_truncation(config.truncation))?;
                    ideal.colength().finite()
                }
                _ => None,
            };
            let out = JetOutput {
                poly: f.to_string(),
                jet3: f.jet(3).to_string(),
                multiplicity: f.order(),
                class: classify_germ(&f),
                colength,
                truncation: config.truncation,
            };
            Ok(Rendered { body: render(&out, pretty)?, code: EXIT_OK })
        }
        Command::Equimult { poly } => {
            let f = parse_polynomial(poly, MAX_TRUNCATION)?;
            let ideal = localalg::equimultiplicity_ideal(&f.with_truncation(config.truncation))?;
            let class = localalg::ci_classify(&ideal)?;
            let out = EquimultOutput {
                poly: f.to_string(),
                generators: ideal.generators().iter().map(ToString::to_string).collect(),
                colength: class.colength,
                leading_ideal: localalg::leading_ideal(&ideal)?.to_string(),
                hilbert_samuel: localalg::hilbert_samuel(&ideal)?,
                normal_form: class.form,
                swapped: class.swapped,
                truncation: config.truncation,
            };
            Ok(Rendered { body: render(&out, pretty)?, code: EXIT_OK })
        }
        Command::Cases { length, hodge, lk2 } => {
            let rows = caseanalysis::enumerate_cases(*length, *hodge, *lk2)?;
            let out = CasesOutput { length: *length, hodge: *hodge, lk2: *lk2, rows };
            Ok(Rendered { body: render(&out, pretty)?, code: EXIT_OK })
        }
        Command::Hodge { lk2, c2 } => {
            let profile = caseanalysis::feasible_pairs(*lk2, *c2)?;
            let out = HodgeOutput {
                lk2: *lk2,
                c2: *c2,
                b2: profile.b2_values().into_iter().collect(),
                pairs: profile.feasible_pairs.into_iter().collect(),
            };
            Ok(Rendered { body: render(&out, pretty)?, code: EXIT_OK })
        }
        Command::VerifyPaper => {
            let summary = verify::run_checks(config);
            Ok(Rendered { body: render(&summary, pretty)?, code: summary.exit_code() })
        }
    }
}

fn resolve_config(cli: &Cli, env: &dyn Fn(&str) -> Option<String>) -> Result<Config, CliError> {
    let file = match &cli.config {
        Some(path) => ConfigLayer::from_file(path)?,
        None => ConfigLayer::default(),
    };
    let env = ConfigLayer::from_env_with(env)?;
    let flags = ConfigLayer { default_trials: cli.trials, default_seed: cli.seed, ..ConfigLayer::default() };
    flags.over(env.over(file)).resolve()
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code.
pub fn run<I, T>(
    args: I,
    env: &dyn Fn(&str) -> Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = resolve_config(&cli, env).and_then(|config| execute(&cli.command, &config, cli.pretty));
    match result {
        Ok(rendered) => {
            if writeln!(out, "{}", rendered.body).is_err() {
                return EXIT_FAILURE;
            }
            if rendered.code == EXIT_DISAGREEMENT {
                let _ = writeln!(err, "warning: Monte-Carlo trials disagree; rerun with more trials or another seed");
            }
            rendered.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("tpd").chain(args.iter().copied()), &|_| None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["hodge", "--lk2", "17", "--c2", "4"]).0, 0);
        assert_eq!(call(&["hodge", "--lk2", "16", "--c2", "4"]).0, 2);
        assert_eq!(call(&["analyze", "--surface", "p3", "--divisor", "H"]).0, 1);
        assert_eq!(call(&["analyze", "--surface", "p2", "--divisor", "H+"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["cases", "--length", "5"]).0, 2);
        assert_eq!(call(&["jet", "--poly", "x^3-"]).0, 1);
        assert_eq!(call(&["equimult", "--poly", "x^2"]).0, 2);
    }

    #[test]
    fn multiplicity_lists() {
        assert_eq!(parse_multiplicities("3, 2,2").unwrap(), vec![3, 2, 2]);
        assert_eq!(parse_multiplicities("").unwrap(), Vec::<u32>::new());
        assert!(parse_multiplicities("3,,2").is_err());
    }

    #[test]
    fn jet_summary() {
        let (code, out) = call(&["jet", "--poly", "x^3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["class"], "TripleLine");
        assert_eq!(v["colength"], 5);
    }
}

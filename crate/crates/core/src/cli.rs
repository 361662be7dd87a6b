//! Command-line front end. Reads a cone (or strata) description as JSON from
//! a file or stdin, runs part of the pipeline, and prints a JSON or text
//! report. Exit codes: 0 success, 1 a failed check or computation error,
//! 2 malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cone::{GradedCone, ValidationReport};
use crate::decomposition::{BoxDecomposition, BoxSet, GenericDirection, PartitionReport, PointDecomposition, Sign};
use crate::exactmath::Rational;
use crate::pairing::{build_pairing, check_nondegeneracy, NondegeneracyReport, PairingData};
use crate::quotient::{
    make_forms_q, monotone_check, regularity_check, Flavor, MonotoneReport, QuotientPresentation, RegularityReport,
};
use crate::series::{check_duality, hilbert_numerator_truncated, s_polynomial, t_polynomial, GradedPolynomial};
use crate::stringy::{string_e_polynomial, BivariatePolynomial, StratumRecord, StringyResult};
use crate::triangulation::{Heights, Simplex, Triangulation};
use crate::Error;

const RETRIES: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "conering", version, about = "Box decompositions, S/T polynomials and quotient certificates for graded cones")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation degree D (default 2r+2).
    #[arg(long, global = true)]
    pub degree_cap: Option<i64>,
    /// Seed for heights, xi and coefficients (overrides the input's seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Use c_i = q^psi(e_i) instead of random coefficients.
    #[arg(long, global = true, value_name = "q")]
    pub q_mode: Option<Rational>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the standing assumptions on the cone.
    Validate { input: Option<PathBuf> },
    /// Regular triangulation from heights.
    Triangulate { input: Option<PathBuf> },
    /// Box sets and the partition check for both signs.
    Decompose { input: Option<PathBuf> },
    /// S and T polynomials and the duality check.
    Series { input: Option<PathBuf> },
    /// Quotient dimensions and regularity for R and R^open.
    Quotient { input: Option<PathBuf> },
    /// Pairing matrices and their ranks.
    Pairing { input: Option<PathBuf> },
    /// String-theoretic E-polynomial from strata.
    Stringy { input: Option<PathBuf> },
    /// The whole chain, stopping at the first failure.
    Certify { input: Option<PathBuf> },
}

impl Command {
    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate { input }
            | Command::Triangulate { input }
            | Command::Decompose { input }
            | Command::Series { input }
            | Command::Quotient { input }
            | Command::Pairing { input }
            | Command::Stringy { input }
            | Command::Certify { input } => input.as_ref(),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Cone description as read from JSON. `points` defaults to the rays.
#[derive(Deserialize, Debug, Clone)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConeInput {
    pub rank: usize,
    pub ray_generators: Vec<Vec<i64>>,
    pub degree: Vec<i64>,
    #[serde(default)]
    pub points: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub heights: Option<Heights>,
    #[serde(default)]
    pub xi: Option<Vec<Rational>>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Optional lattice point to decompose.
    #[serde(default)]
    pub point: Option<Vec<i64>>,
}

impl ConeInput {
    pub fn cone(&self) -> Result<GradedCone, Error> {
        let points = self.points.clone().unwrap_or_else(|| self.ray_generators.clone());
        GradedCone::new(self.rank, self.ray_generators.clone(), self.degree.clone(), points)
    }
}

#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum LocalConeInput {
    Smooth(String),
    Cone(ConeInput),
}

#[derive(Deserialize, Debug, Clone)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct StratumInput {
    e_polynomial: BivariatePolynomial,
    cone: LocalConeInput,
}

#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum StrataInput {
    List(Vec<StratumInput>),
    WithDimension { dimension: Option<u32>, strata: Vec<StratumInput> },
}

enum Failure {
    Malformed(String),
    Computation { error: Error, seed: u64 },
    /// A report was produced but a check in it failed.
    Check(Value),
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidInput(_) => "InvalidInput",
        Error::InvalidCone(_) => "InvalidCone",
        Error::LinAlg(_) => "LinAlg",
        Error::DegenerateConfiguration => "DegenerateConfiguration",
        Error::NotStrictlyConvex(_) => "NotStrictlyConvex",
        Error::InvalidTriangulation(_) => "InvalidTriangulation",
        Error::PointOutsideCone => "PointOutsideCone",
        Error::NotInAnySimplex => "NotInAnySimplex",
        Error::AmbiguousLocation => "AmbiguousLocation",
        Error::NonGenericDirection(_) => "NonGenericDirection",
        Error::PointNotInDomain(_) => "PointNotInDomain",
        Error::NonGenericCoefficients(_) => "NonGenericCoefficients",
        Error::PresentationNotCertified(_) => "PresentationNotCertified",
        Error::RetriesExhausted { .. } => "RetriesExhausted",
    }
}

fn error_json(e: &Error, seed: u64) -> Value {
    let mut v = json!({ "kind": error_kind(e), "message": e.to_string(), "seed": seed });
    if let Error::RetriesExhausted { attempts, .. } = e {
        v["attempts"] = json!(attempts);
    }
    json!({ "error": v })
}

/// Parses arguments, reads input, runs the command and writes the report.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let text = match read_input(args.command.input(), stdin) {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(stderr, "{msg}");
            return 2;
        }
    };
    let (value, code) = match execute(&args, &text) {
        Ok(v) => (v, 0),
        Err(Failure::Malformed(msg)) => {
            let _ = writeln!(stderr, "malformed input: {msg}");
            return 2;
        }
        Err(Failure::Computation { error, seed }) => (error_json(&error, seed), 1),
        Err(Failure::Check(v)) => (v, 1),
    };
    let rendered = match args.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("reports serialize"),
        Format::Text => render_text(&value),
    };
    let _ = writeln!(stdout, "{rendered}");
    code
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn execute(args: &Args, text: &str) -> Result<Value, Failure> {
    if let Command::Stringy { .. } = args.command {
        let seed = args.seed.unwrap_or(0);
        let input: StrataInput = serde_json::from_str(text)?;
        let (dimension, strata) = match input {
            StrataInput::List(s) => (None, s),
            StrataInput::WithDimension { dimension, strata } => (dimension, strata),
        };
        let records = strata
            .into_iter()
            .map(|s| match s.cone {
                LocalConeInput::Smooth(ref word) if word == "smooth" => Ok(StratumRecord::smooth(s.e_polynomial)),
                LocalConeInput::Smooth(word) => Err(Failure::Malformed(format!("unknown cone keyword {word:?}"))),
                LocalConeInput::Cone(c) => {
                    let cone = c.cone().map_err(|e| Failure::Malformed(e.to_string()))?;
                    Ok(StratumRecord { e_polynomial: s.e_polynomial, local_cone: Some(cone), heights: c.heights })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let res = string_e_polynomial(&records, dimension, seed).map_err(|error| Failure::Computation { error, seed })?;
        return Ok(serde_json::to_value(StringyOutput { seed, result: res })?);
    }

    let input: ConeInput = serde_json::from_str(text)?;
    let seed = args.seed.or(input.seed).unwrap_or(0);
    let cone = input.cone().map_err(|e| Failure::Malformed(e.to_string()))?;
    let fail = |error: Error| Failure::Computation { error, seed };
    let r = cone.rank() as i64;
    let cap = args.degree_cap.unwrap_or(2 * r + 2);
    if cap < r {
        return Err(Failure::Malformed(format!("degree cap {cap} is below the rank {r}")));
    }

    match &args.command {
        Command::Validate { .. } => {
            let report = cone.validate();
            let v = serde_json::to_value(&report)?;
            if report.valid {
                Ok(v)
            } else {
                Err(Failure::Check(v))
            }
        }
        Command::Triangulate { .. } => {
            let (tri, attempts) = triangulate(&cone, &input, seed).map_err(fail)?;
            Ok(serde_json::to_value(TriangulationOutput::new(&tri, seed, attempts))?)
        }
        Command::Decompose { .. } => {
            let p = Pipeline::new(&cone, &input, seed).map_err(fail)?;
            let point = match &input.point {
                Some(n) => Some(PointOutput {
                    plus: p.decomp.decompose(n, Sign::Plus).map_err(fail)?,
                    minus: p.decomp.decompose(n, Sign::Minus).ok(),
                }),
                None => None,
            };
            let out = DecomposeOutput {
                replay: p.replay(),
                box_sets: BoxSetsOutput {
                    plus: p.decomp.box_sets(Sign::Plus).to_vec(),
                    minus: p.decomp.box_sets(Sign::Minus).to_vec(),
                },
                partition: [p.decomp.verify_partition(cap, Sign::Plus), p.decomp.verify_partition(cap, Sign::Minus)],
                point,
            };
            let passed = out.partition.iter().all(|r| r.passed);
            let v = serde_json::to_value(out)?;
            if passed {
                Ok(v)
            } else {
                Err(Failure::Check(v))
            }
        }
        Command::Series { .. } => {
            let p = Pipeline::new(&cone, &input, seed).map_err(fail)?;
            let s = s_polynomial(&p.decomp);
            let t = t_polynomial(&p.decomp);
            let duality = check_duality(&s, &t, cone.rank());
            let v = serde_json::to_value(SeriesOutput { s, t, duality, replay: p.replay() })?;
            if duality {
                Ok(v)
            } else {
                Err(Failure::Check(v))
            }
        }
        Command::Quotient { .. } => {
            let p = Pipeline::new(&cone, &input, seed).map_err(fail)?;
            let mut flavors = Vec::new();
            for flavor in [Flavor::R, Flavor::ROpen] {
                let (pres, attempts) = p.presentation(flavor, cap, args.q_mode.as_ref(), seed).map_err(fail)?;
                flavors.push(QuotientOutput::new(&pres, attempts));
            }
            let passed = flavors.iter().all(|f| f.certified && f.regularity.passed);
            let v = serde_json::to_value(QuotientsOutput { replay: p.replay(), r: flavors.remove(0), r_open: flavors.remove(0) })?;
            if passed {
                Ok(v)
            } else {
                Err(Failure::Check(v))
            }
        }
        Command::Pairing { .. } => {
            let p = Pipeline::new(&cone, &input, seed).map_err(fail)?;
            let (ring, _) = p.presentation(Flavor::R, cap, args.q_mode.as_ref(), seed).map_err(fail)?;
            let (open, _) = p.presentation(Flavor::ROpen, cap, args.q_mode.as_ref(), seed).map_err(fail)?;
            let data = build_pairing(&ring, &open).map_err(fail)?;
            let report = check_nondegeneracy(&data);
            let passed = report.passed;
            let v = serde_json::to_value(PairingOutput {
                replay: p.replay(),
                coefficients: ring.forms.first().map(|z| z.coefficients.clone()).unwrap_or_default(),
                pairing: data,
                nondegeneracy: report,
            })?;
            if passed {
                Ok(v)
            } else {
                Err(Failure::Check(v))
            }
        }
        Command::Certify { .. } => certify(&cone, &input, seed, cap, args.q_mode.as_ref()),
        Command::Stringy { .. } => unreachable!("handled above"),
    }
}

fn triangulate(cone: &GradedCone, input: &ConeInput, seed: u64) -> Result<(Triangulation, usize), Error> {
    match &input.heights {
        Some(h) => Ok((Triangulation::build(cone, h)?, 1)),
        None => Triangulation::build_random(cone, seed, RETRIES),
    }
}

struct Pipeline {
    tri: Triangulation,
    decomp: BoxDecomposition,
    seed: u64,
    height_attempts: usize,
    xi_attempts: usize,
}

impl Pipeline {
    fn new(cone: &GradedCone, input: &ConeInput, seed: u64) -> Result<Self, Error> {
        let (tri, height_attempts) = triangulate(cone, input, seed)?;
        Self::from_triangulation(tri, input, seed, height_attempts)
    }

    fn from_triangulation(tri: Triangulation, input: &ConeInput, seed: u64, height_attempts: usize) -> Result<Self, Error> {
        let (dir, xi_attempts) = match &input.xi {
            Some(xi) => (GenericDirection::new(&tri, xi.clone())?, 1),
            None => GenericDirection::choose(&tri, seed, RETRIES)?,
        };
        let decomp = BoxDecomposition::new(tri.clone(), dir);
        Ok(Pipeline { tri, decomp, seed, height_attempts, xi_attempts })
    }

    fn replay(&self) -> Replay {
        Replay {
            seed: self.seed,
            heights: self.tri.heights().clone(),
            height_attempts: self.height_attempts,
            xi: self.decomp.direction().xi().to_vec(),
            xi_attempts: self.xi_attempts,
        }
    }

    fn presentation(
        &self,
        flavor: Flavor,
        cap: i64,
        q: Option<&Rational>,
        seed: u64,
    ) -> Result<(QuotientPresentation, usize), Error> {
        match q {
            Some(q) => Ok((QuotientPresentation::build(&self.decomp, flavor, make_forms_q(&self.tri, q)?, cap), 1)),
            None => QuotientPresentation::build_certified(&self.decomp, flavor, cap, seed, RETRIES),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Replay {
    seed: u64,
    heights: Heights,
    height_attempts: usize,
    xi: Vec<Rational>,
    xi_attempts: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TriangulationOutput {
    seed: u64,
    heights: Heights,
    attempts: usize,
    simplices: Vec<Simplex>,
    normalized_volume: u64,
}

impl TriangulationOutput {
    fn new(tri: &Triangulation, seed: u64, attempts: usize) -> Self {
        TriangulationOutput {
            seed,
            heights: tri.heights().clone(),
            attempts,
            simplices: tri.simplices().to_vec(),
            normalized_volume: tri.normalized_volume(),
        }
    }
}

#[derive(Serialize)]
struct BoxSetsOutput {
    #[serde(rename = "+xi")]
    plus: Vec<BoxSet>,
    #[serde(rename = "-xi")]
    minus: Vec<BoxSet>,
}

#[derive(Serialize)]
struct PointOutput {
    #[serde(rename = "+xi")]
    plus: PointDecomposition,
    #[serde(rename = "-xi")]
    minus: Option<PointDecomposition>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DecomposeOutput {
    #[serde(flatten)]
    replay: Replay,
    box_sets: BoxSetsOutput,
    partition: [PartitionReport; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<PointOutput>,
}

#[derive(Serialize)]
struct SeriesOutput {
    #[serde(rename = "S")]
    s: GradedPolynomial,
    #[serde(rename = "T")]
    t: GradedPolynomial,
    duality: bool,
    #[serde(flatten)]
    replay: Replay,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct QuotientOutput {
    attempts: usize,
    coefficients: Vec<Rational>,
    dimensions: Vec<Vec<i64>>,
    /// False when the degrees in `modular_degrees` hold only upper bounds.
    exact: bool,
    modular_degrees: Vec<usize>,
    expected: GradedPolynomial,
    certified: bool,
    regularity: RegularityReport,
    monotone: MonotoneReport,
    basis: Vec<Vec<crate::cone::LatticePoint>>,
}

impl QuotientOutput {
    fn new(p: &QuotientPresentation, attempts: usize) -> Self {
        QuotientOutput {
            attempts,
            coefficients: p.forms.first().map(|z| z.coefficients.clone()).unwrap_or_default(),
            dimensions: p.dimensions.dims.clone(),
            exact: p.dimensions.exact,
            modular_degrees: p.dimensions.modular_degrees.clone(),
            expected: p.expected.clone(),
            certified: p.is_certified(),
            regularity: regularity_check(&p.dimensions),
            monotone: monotone_check(&p.dimensions),
            basis: p.basis.clone(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct QuotientsOutput {
    #[serde(flatten)]
    replay: Replay,
    #[serde(rename = "R")]
    r: QuotientOutput,
    #[serde(rename = "Ropen")]
    r_open: QuotientOutput,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PairingOutput {
    #[serde(flatten)]
    replay: Replay,
    coefficients: Vec<Rational>,
    pairing: PairingData,
    nondegeneracy: NondegeneracyReport,
}

#[derive(Serialize)]
struct StringyOutput {
    seed: u64,
    #[serde(flatten)]
    result: StringyResult,
}

#[derive(Serialize)]
struct Stage {
    name: &'static str,
    passed: bool,
    detail: Value,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CertifyReport {
    seed: u64,
    degree_cap: i64,
    passed: bool,
    stages: Vec<Stage>,
}

fn certify(cone: &GradedCone, input: &ConeInput, seed: u64, cap: i64, q: Option<&Rational>) -> Result<Value, Failure> {
    let mut stages = Vec::new();
    let finish = |stages: Vec<Stage>| -> Result<Value, Failure> {
        let passed = stages.iter().all(|s| s.passed);
        let v = serde_json::to_value(CertifyReport { seed, degree_cap: cap, passed, stages })?;
        if passed {
            Ok(v)
        } else {
            Err(Failure::Check(v))
        }
    };
    let failed = |name: &'static str, e: Error| Stage { name, passed: false, detail: error_json(&e, seed)["error"].clone() };

    let report: ValidationReport = cone.validate();
    stages.push(Stage { name: "validate", passed: report.valid, detail: serde_json::to_value(&report)? });
    if !report.valid {
        return finish(stages);
    }

    let (tri, attempts) = match triangulate(cone, input, seed) {
        Ok(t) => t,
        Err(e) => {
            stages.push(failed("triangulate", e));
            return finish(stages);
        }
    };
    stages.push(Stage {
        name: "triangulate",
        passed: true,
        detail: serde_json::to_value(TriangulationOutput::new(&tri, seed, attempts))?,
    });

    let p = match Pipeline::from_triangulation(tri, input, seed, attempts) {
        Ok(p) => p,
        Err(e) => {
            stages.push(failed("boxes", e));
            return finish(stages);
        }
    };
    let sizes: Vec<usize> = p.decomp.box_sets(Sign::Plus).iter().map(|b| b.points.len()).collect();
    let indices: Vec<u64> = p.tri.simplices().iter().map(Simplex::lattice_index).collect();
    let boxes_ok = sizes.iter().zip(&indices).all(|(&s, &i)| s as u64 == i);
    stages.push(Stage {
        name: "boxes",
        passed: boxes_ok,
        detail: json!({ "xi": p.decomp.direction().xi(), "xiAttempts": p.xi_attempts, "boxSizes": sizes, "latticeIndices": indices }),
    });
    if !boxes_ok {
        return finish(stages);
    }

    let partition = [p.decomp.verify_partition(cap, Sign::Plus), p.decomp.verify_partition(cap, Sign::Minus)];
    let ok = partition.iter().all(|r| r.passed);
    let summary: Vec<Value> = partition
        .iter()
        .map(|r| json!({ "sign": r.sign, "domainPoints": r.domain_points, "passed": r.passed }))
        .collect();
    stages.push(Stage { name: "partition", passed: ok, detail: if ok { json!(summary) } else { serde_json::to_value(&partition)? } });
    if !ok {
        return finish(stages);
    }

    let s = s_polynomial(&p.decomp);
    let t = t_polynomial(&p.decomp);
    let r = cone.rank();
    let duality = check_duality(&s, &t, r);
    let hs = hilbert_numerator_truncated(&p.tri, cap as usize, false);
    let ht = hilbert_numerator_truncated(&p.tri, cap as usize, true);
    let ok = duality && hs == s && ht == t;
    stages.push(Stage {
        name: "series",
        passed: ok,
        detail: json!({ "S": s, "T": t, "duality": duality, "hilbertS": hs, "hilbertT": ht }),
    });
    if !ok {
        return finish(stages);
    }

    let mut presentations = Vec::new();
    for flavor in [Flavor::R, Flavor::ROpen] {
        let (pres, attempts) = match p.presentation(flavor, cap, q, seed) {
            Ok(x) => x,
            Err(e) => {
                stages.push(failed("quotient", e));
                return finish(stages);
            }
        };
        let out = QuotientOutput::new(&pres, attempts);
        let ok = out.certified && out.regularity.passed;
        stages.push(Stage {
            name: if flavor == Flavor::R { "quotient R" } else { "quotient Ropen" },
            passed: ok,
            detail: json!({
                "attempts": out.attempts,
                "coefficients": out.coefficients,
                "dims": out.dimensions.last(),
                "regularity": out.regularity,
            }),
        });
        if !ok {
            return finish(stages);
        }
        presentations.push(pres);
    }

    match build_pairing(&presentations[0], &presentations[1]) {
        Ok(data) => {
            let report = check_nondegeneracy(&data);
            stages.push(Stage { name: "pairing", passed: report.passed, detail: serde_json::to_value(&report)? });
        }
        Err(e) => stages.push(failed("pairing", e)),
    }
    finish(stages)
}

/// Flattens a JSON report into `path: value` lines, printing short arrays
/// of scalars inline.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, "", &mut out);
    out.pop();
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render_into(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                render_into(x, &p, out);
            }
        }
        Value::Array(a) if !is_flat(v) => {
            for (i, x) in a.iter().enumerate() {
                render_into(x, &format!("{path}[{i}]"), out);
            }
        }
        _ => {
            out.push_str(&format!("{path}: {}\n", scalar(v)));
        }
    }
}

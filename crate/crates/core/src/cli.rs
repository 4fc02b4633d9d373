//! Command-line driver: parses a run configuration, dispatches to the modules and
//! renders one JSON document per invocation.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, ComplexRational, Rational};
use crate::measure::{orthogonality_gram, OrthoConfig, MAX_DOUBLINGS};
use crate::operators::{
    build_l, iso_inverse, structure_constants, verify_anticommutator_algebra, verify_bi_algebra, verify_bi_eigen,
    verify_casimir, verify_daha_relations, verify_iso_forward, verify_nc_algebra, verify_nonsym_wilson_eigen,
    verify_prop1_operator_transform, verify_q_eigen, AlgebraForm, DifferenceOperator,
};
use crate::polyfam::{
    bi_family_document, bi_polynomials, nonsym_wilson_family, q_family_document, q_polynomials, q_symmetry_check,
    verify_prop1_coefficients, wilson_family_document, DahaParameterSet, ParameterSet, RealParameterQuad,
};
use crate::reptheory::{build_rep, positivity_scan, verify_rep_relations};

pub const SCHEMA: &str = "biwkit/1";
pub const DEFAULT_PRECISION: u32 = 50;
pub const POSITIVITY_RANGE: usize = 500;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Bannai–Ito polynomials, recurrence data and eigenvalues.
    Poly,
    /// The modified family Q_n(x) = (-i)^n B_n(ix).
    QPoly,
    /// Non-symmetric Wilson polynomials for DAHA parameters.
    Wilson,
    /// Eigenvalue equations of L, M and T0 + T1.
    VerifyEigen,
    /// Compact and non-compact anticommutator algebras and their Casimirs.
    VerifyAlgebra,
    /// Relations of the degenerate DAHA generators.
    VerifyDaha,
    /// Both directions of the algebra isomorphism.
    VerifyIso,
    /// Operator and coefficient forms of the Wilson / Bannai–Ito correspondence.
    VerifyProp1,
    /// Truncated tridiagonal representation and the positivity scan.
    Rep,
    /// Gram matrix of Q_n under the continuous weight.
    Ortho,
    /// The whole certification suite.
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Poly => "poly",
            Command::QPoly => "q-poly",
            Command::Wilson => "wilson",
            Command::VerifyEigen => "verify-eigen",
            Command::VerifyAlgebra => "verify-algebra",
            Command::VerifyDaha => "verify-daha",
            Command::VerifyIso => "verify-iso",
            Command::VerifyProp1 => "verify-prop1",
            Command::Rep => "rep",
            Command::Ortho => "ortho",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "biwkit",
    version,
    about = "Exact construction and certification of Bannai–Ito type polynomial families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Bannai–Ito parameters a,b,c,d as exact complex rationals (e.g. 1/2+1/3i).
    #[arg(long, global = true)]
    params: Option<String>,
    /// Real quadruple alpha,beta,gamma,delta giving a = alpha+i beta, b = gamma+i delta, c = conj(a), d = conj(b).
    #[arg(long, global = true)]
    real_params: Option<String>,
    /// DAHA parameters t0,t1,u0,u1.
    #[arg(long, global = true)]
    daha_params: Option<String>,
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Highest monomial degree used by operator identity checks.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Significant decimal digits for floating-point stages.
    #[arg(long, global = true, env = "BIWKIT_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long, global = true, default_value = "1e-8")]
    tol: String,
    /// Half-width L of the integration interval.
    #[arg(long, global = true)]
    truncation: Option<String>,
    /// Panel doublings allowed in the Gram quadrature before reporting non-convergence.
    #[arg(long, global = true)]
    max_doublings: Option<u32>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for the randomized parameter sets of `all`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, hide = true)]
    debug_tamper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamInput {
    Bi(ParameterSet),
    Real(RealParameterQuad),
    Daha(DahaParameterSet),
}

impl ParamInput {
    pub fn bi(&self) -> ParameterSet {
        match self {
            ParamInput::Bi(p) => p.clone(),
            ParamInput::Real(q) => q.to_parameter_set(),
            ParamInput::Daha(t) => t.to_bi(),
        }
    }

    pub fn daha(&self) -> DahaParameterSet {
        match self {
            ParamInput::Daha(t) => t.clone(),
            other => other.bi().to_daha(),
        }
    }

    pub fn quad(&self) -> Result<RealParameterQuad> {
        match self {
            ParamInput::Real(q) => Ok(q.clone()),
            _ => Err(Error::InvalidParameters("this stage needs --real-params".into())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub params: ParamInput,
    pub n_max: Option<usize>,
    pub degree: Option<usize>,
    pub precision_digits: u32,
    pub tol: String,
    pub truncation: Option<String>,
    pub max_doublings: Option<u32>,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    /// Perturbs ω₁ in the compact-algebra check (negative control).
    pub tamper: bool,
}

impl RunConfig {
    pub fn new(command: Command, params: ParamInput) -> Self {
        RunConfig {
            command,
            params,
            n_max: None,
            degree: None,
            precision_digits: DEFAULT_PRECISION,
            tol: "1e-8".into(),
            truncation: None,
            max_doublings: None,
            output_path: None,
            seed: 0,
            tamper: false,
        }
    }

    fn tol_f64(&self) -> Result<f64> {
        let r = parse_rational(&self.tol)?;
        if r.cmp0().is_le() {
            return Err(Error::InvalidParameters(format!("tolerance {} must be positive", self.tol)));
        }
        Ok(r.to_f64())
    }

    fn ortho_config(&self, n_max: usize) -> Result<OrthoConfig> {
        Ok(OrthoConfig {
            n_max,
            precision_digits: self.precision_digits,
            tol: self.tol_f64()?,
            truncation: self.truncation_f64()?,
            max_doublings: self.max_doublings.unwrap_or(MAX_DOUBLINGS),
        })
    }

    fn truncation_f64(&self) -> Result<Option<f64>> {
        self.truncation
            .as_deref()
            .map(|s| {
                let r = parse_rational(s)?;
                if r.cmp0().is_le() {
                    return Err(Error::InvalidParameters(format!("truncation {s} must be positive")));
                }
                Ok(r.to_f64())
            })
            .transpose()
    }
}

fn split4(text: &str) -> Result<[&str; 4]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    parts.try_into().map_err(|v: Vec<&str>| Error::Parse(format!("expected 4 comma-separated values, got {}", v.len())))
}

pub fn parse_params(text: &str) -> Result<ParameterSet> {
    let [a, b, c, d] = split4(text)?.map(ComplexRational::parse);
    Ok(ParameterSet::new(a?, b?, c?, d?))
}

pub fn parse_daha_params(text: &str) -> Result<DahaParameterSet> {
    let [t0, t1, u0, u1] = split4(text)?.map(ComplexRational::parse);
    Ok(DahaParameterSet::new(t0?, t1?, u0?, u1?))
}

pub fn parse_real_params(text: &str) -> Result<RealParameterQuad> {
    let [a, b, g, d] = split4(text)?.map(parse_rational);
    Ok(RealParameterQuad::new(a?, b?, g?, d?))
}

fn config_from_cli(cli: Cli) -> Result<RunConfig> {
    let given = [&cli.params, &cli.real_params, &cli.daha_params].iter().filter(|p| p.is_some()).count();
    if given > 1 {
        return Err(Error::InvalidParameters("use exactly one of --params, --real-params, --daha-params".into()));
    }
    let params = if let Some(s) = &cli.params {
        ParamInput::Bi(parse_params(s)?)
    } else if let Some(s) = &cli.real_params {
        ParamInput::Real(parse_real_params(s)?)
    } else if let Some(s) = &cli.daha_params {
        ParamInput::Daha(parse_daha_params(s)?)
    } else {
        return Err(Error::InvalidParameters("one of --params, --real-params, --daha-params is required".into()));
    };
    Ok(RunConfig {
        command: cli.command,
        params,
        n_max: cli.n_max,
        degree: cli.degree,
        precision_digits: cli.precision,
        tol: cli.tol,
        truncation: cli.truncation,
        max_doublings: cli.max_doublings,
        output_path: cli.output,
        seed: cli.seed,
        tamper: cli.debug_tamper,
    })
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::DegenerateParameters { .. }
        | Error::InvalidParameters(_)
        | Error::PoleError(_)
        | Error::DivisionByZero
        | Error::Parse(_) => EXIT_INVALID,
        Error::QuadratureNotConverged { .. } => EXIT_NOT_CONVERGED,
        Error::NonzeroRemainder { .. }
        | Error::OperatorNotPolynomialPreserving { .. }
        | Error::IdentityViolation(_) => EXIT_FAIL,
    }
}

#[derive(Serialize)]
struct Document<'a> {
    schema: &'static str,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
    result: Value,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    detail: String,
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    schema: &'static str,
    command: &'a str,
    error: ErrorBody,
}

/// Outcome of a run: the exit code and the JSON document text.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub json: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn render<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn error_document(command: &str, e: &Error) -> String {
    render(&ErrorDocument { schema: SCHEMA, command, error: ErrorBody { kind: e.kind(), detail: e.to_string() } })
}

/// Dispatches one configuration. Never panics on bad input; errors become exit codes.
pub fn run(config: &RunConfig) -> RunOutcome {
    let name = config.command.name();
    match dispatch(config) {
        Ok((pass, result)) => RunOutcome {
            exit_code: if pass == Some(false) { EXIT_FAIL } else { EXIT_PASS },
            json: render(&Document { schema: SCHEMA, command: name, pass, result }),
        },
        Err(e) => RunOutcome { exit_code: exit_code_for(&e), json: error_document(name, &e) },
    }
}

#[derive(Serialize)]
struct Stage {
    stage: String,
    pass: bool,
    result: Value,
}

#[derive(Default)]
struct Stages(Vec<Stage>);

impl Stages {
    fn push<T: Serialize>(&mut self, stage: &str, pass: bool, result: &T) {
        self.0.push(Stage { stage: stage.to_string(), pass, result: to_value(result) });
    }

    fn pass(&self) -> bool {
        self.0.iter().all(|s| s.pass)
    }

    fn into_result(self) -> (Option<bool>, Value) {
        let pass = self.pass();
        let summary: Vec<Value> =
            self.0.iter().map(|s| serde_json::json!({"stage": s.stage, "pass": s.pass})).collect();
        (Some(pass), serde_json::json!({"pass": pass, "summary": summary, "stages": to_value(&self.0)}))
    }
}

fn deg(config: &RunConfig, default: usize) -> usize {
    config.degree.unwrap_or(default)
}

fn nmax(config: &RunConfig, default: usize) -> usize {
    config.n_max.unwrap_or(default)
}

fn eigen_stages(stages: &mut Stages, p: &ParameterSet, t: &DahaParameterSet, n: usize) -> Result<()> {
    let bi = verify_bi_eigen(n, p)?;
    stages.push("eigen-L", bi.pass, &bi);
    let q = verify_q_eigen(n, p)?;
    stages.push("eigen-M", q.pass, &q);
    let w = verify_nonsym_wilson_eigen(n, t)?;
    stages.push("eigen-T0+T1", w.pass, &w);
    Ok(())
}

fn algebra_stages(stages: &mut Stages, p: &ParameterSet, d: usize, tamper: bool) -> Result<()> {
    p.check_nondegenerate(d)?;
    let bi = if tamper {
        let mut omega = structure_constants(p).omega();
        omega[0] = &omega[0] + &ComplexRational::one();
        verify_anticommutator_algebra(&build_l(p), &DifferenceOperator::x(), &omega, AlgebraForm::Compact, d)?
    } else {
        verify_bi_algebra(p, d)?
    };
    stages.push("bi-algebra", bi.pass, &bi);
    let nc = verify_nc_algebra(p, d)?;
    stages.push("nc-algebra", nc.pass, &nc);
    let cd = d.min(12);
    let q = verify_casimir(p, cd, AlgebraForm::Compact)?;
    let z = verify_casimir(p, cd, AlgebraForm::NonCompact)?;
    let same = q.expected == z.expected;
    stages.push("casimir-compact", q.realized_ok, &q);
    stages.push("casimir-noncompact", z.realized_ok && same, &z);
    Ok(())
}

fn iso_stages(stages: &mut Stages, p: &ParameterSet, t: &DahaParameterSet, d: usize) -> Result<()> {
    let fwd = verify_iso_forward(p, d)?;
    stages.push("iso-forward", fwd.pass, &fwd);
    let inv = iso_inverse(t, d)?;
    stages.push("iso-inverse", inv.pass, &inv);
    Ok(())
}

fn correspondence_stages(stages: &mut Stages, p: &ParameterSet, d: usize, n: usize) -> Result<()> {
    let op = verify_prop1_operator_transform(p, d)?;
    stages.push("wilson-bi-operator", op.pass, &op);
    let coeff = verify_prop1_coefficients(n, p)?;
    stages.push("wilson-bi-coefficients", coeff.pass, &coeff);
    Ok(())
}

fn rep_stages(stages: &mut Stages, q: &RealParameterQuad, size: usize, digits: u32) -> Result<()> {
    let positivity = positivity_scan(q, POSITIVITY_RANGE.max(size))?;
    let ok = positivity.all_u_positive && positivity.all_c_real;
    stages.push("positivity", ok, &positivity);
    let rep = build_rep(size, q, digits)?;
    let report = verify_rep_relations(&rep)?;
    stages.push("rep-relations", report.pass, &report);
    Ok(())
}

#[derive(Serialize)]
struct FamiliesCheck {
    n_max: usize,
    monic_with_exact_degree: bool,
}

fn families_stage(stages: &mut Stages, p: &ParameterSet, n: usize) -> Result<()> {
    let ok = [bi_polynomials(n, p)?, q_polynomials(n, p)?, nonsym_wilson_family(n, &p.to_daha())?]
        .iter()
        .all(|fam| fam.iter().enumerate().all(|(k, f)| f.is_monic() && f.degree() == Some(k)));
    stages.push("families", ok, &FamiliesCheck { n_max: n, monic_with_exact_degree: ok });
    Ok(())
}

/// Nondegenerate random parameter sets with small rational parts.
pub fn random_parameter_sets(seed: u64, count: usize, n_max: usize) -> Vec<ParameterSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut part = || Rational::from((rng.gen_range(-9i64..=9), rng.gen_range(1i64..=6)));
        let mut z = || ComplexRational::new(part(), part());
        let p = ParameterSet::new(z(), z(), z(), z());
        if p.check_nondegenerate(n_max).is_ok() {
            out.push(p);
        }
    }
    out
}

fn dispatch(config: &RunConfig) -> Result<(Option<bool>, Value)> {
    let p = config.params.bi();
    let t = config.params.daha();
    match config.command {
        Command::Poly => Ok((None, to_value(&bi_family_document(nmax(config, 10), &p)?))),
        Command::QPoly => Ok((None, to_value(&q_family_document(nmax(config, 10), &p)?))),
        Command::Wilson => Ok((None, to_value(&wilson_family_document(nmax(config, 10), &t)?))),
        Command::VerifyEigen => {
            let mut stages = Stages::default();
            eigen_stages(&mut stages, &p, &t, nmax(config, 20))?;
            Ok(stages.into_result())
        }
        Command::VerifyAlgebra => {
            let mut stages = Stages::default();
            algebra_stages(&mut stages, &p, deg(config, 20), config.tamper)?;
            Ok(stages.into_result())
        }
        Command::VerifyDaha => {
            let report = verify_daha_relations(&t, deg(config, 20))?;
            Ok((Some(report.pass), to_value(&report)))
        }
        Command::VerifyIso => {
            let mut stages = Stages::default();
            iso_stages(&mut stages, &p, &t, deg(config, 12))?;
            Ok(stages.into_result())
        }
        Command::VerifyProp1 => {
            let mut stages = Stages::default();
            correspondence_stages(&mut stages, &p, deg(config, 20), nmax(config, 20))?;
            Ok(stages.into_result())
        }
        Command::Rep => {
            let mut stages = Stages::default();
            rep_stages(&mut stages, &config.params.quad()?, nmax(config, 50), config.precision_digits)?;
            Ok(stages.into_result())
        }
        Command::Ortho => {
            let cfg = config.ortho_config(nmax(config, 6))?;
            let report = orthogonality_gram(&p, &cfg)?;
            Ok((Some(report.pass), to_value(&report)))
        }
        Command::All => run_all(config),
    }
}

fn run_all(config: &RunConfig) -> Result<(Option<bool>, Value)> {
    let q = config.params.quad()?;
    let p = q.to_parameter_set();
    let t = p.to_daha();
    let mut stages = Stages::default();
    families_stage(&mut stages, &p, nmax(config, 20))?;
    eigen_stages(&mut stages, &p, &t, nmax(config, 20))?;
    algebra_stages(&mut stages, &p, deg(config, 20), config.tamper)?;
    let daha = verify_daha_relations(&t, deg(config, 20))?;
    stages.push("daha", daha.pass, &daha);
    iso_stages(&mut stages, &p, &t, deg(config, 12))?;
    correspondence_stages(&mut stages, &p, deg(config, 20), nmax(config, 20))?;
    let sym = q_symmetry_check(10, &p)?;
    stages.push("q-symmetries", sym.pass, &sym);
    rep_stages(&mut stages, &q, 50, config.precision_digits)?;
    let ortho_cfg = config.ortho_config(6)?;
    let ortho = orthogonality_gram(&p, &ortho_cfg)?;
    stages.push("orthogonality", ortho.pass, &ortho);

    let random = random_parameter_sets(config.seed, 3, 12);
    let mut random_pass = true;
    let mut random_reports = Vec::new();
    for rp in &random {
        let eig = verify_bi_eigen(12, rp)?;
        let alg = verify_bi_algebra(rp, 10)?;
        let sym = q_symmetry_check(10, rp)?;
        random_pass &= eig.pass && alg.pass && sym.pass;
        random_reports.push(serde_json::json!({
            "params": to_value(rp),
            "eigen_pass": eig.pass,
            "algebra_pass": alg.pass,
            "symmetry_pass": sym.pass,
        }));
    }
    stages.push("random-sets", random_pass, &serde_json::json!({"seed": config.seed, "sets": random_reports}));
    Ok(stages.into_result())
}

/// Parses `args` (program name first) and runs them. Argument errors become a
/// `ParseError` document with exit code 3; `--output` is honoured.
pub fn run_args<I, T>(args: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_cli(cli),
        Err(e) => {
            let err = Error::Parse(e.to_string().lines().next().unwrap_or_default().to_string());
            RunOutcome { exit_code: EXIT_INVALID, json: error_document("", &err) }
        }
    }
}

fn run_cli(cli: Cli) -> RunOutcome {
    let name = cli.command.name();
    let output = cli.output.clone();
    let outcome = match config_from_cli(cli) {
        Ok(config) => run(&config),
        Err(e) => RunOutcome { exit_code: exit_code_for(&e), json: error_document(name, &e) },
    };
    if let Some(path) = output {
        if let Err(e) = std::fs::write(&path, &outcome.json) {
            let err = Error::InvalidParameters(format!("cannot write {}: {e}", path.display()));
            return RunOutcome { exit_code: EXIT_INVALID, json: error_document(name, &err) };
        }
    }
    outcome
}

/// Entry point used by the binary: prints the document unless `--output` was
/// given and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_PASS;
            }
            let _ = e.print();
            let err = Error::Parse(e.to_string().lines().next().unwrap_or_default().to_string());
            print!("{}", error_document("", &err));
            return EXIT_INVALID;
        }
    };
    let to_stdout = cli.output.is_none();
    let outcome = run_cli(cli);
    if to_stdout || outcome.exit_code == EXIT_INVALID && outcome.json.contains("cannot write") {
        print!("{}", outcome.json);
    }
    outcome.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero() -> ParamInput {
        ParamInput::Bi(ParameterSet::zero())
    }

    #[test]
    fn parses_parameter_styles() {
        let p = parse_params("0.5, 1/3+i, -2i, 0").unwrap();
        assert_eq!(p.a, ComplexRational::ratio(1, 2));
        assert_eq!(p.c, ComplexRational::new(Rational::new(), Rational::from(-2)));
        assert!(parse_params("1,2,3").is_err());
        let q = parse_real_params("0.5,1/2,.5,5e-1").unwrap();
        assert_eq!(q, RealParameterQuad::from_ratios([(1, 2); 4]));
        assert!(parse_real_params("1,2,3,i").is_err());
    }

    #[test]
    fn poly_document() {
        let mut cfg = RunConfig::new(Command::Poly, zero());
        cfg.n_max = Some(2);
        let out = run(&cfg);
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        let b2: Vec<&str> =
            v["result"]["polynomials"][2].as_array().unwrap().iter().map(|c| c["re"].as_str().unwrap()).collect();
        assert_eq!(b2, ["1", "0", "1"]);
    }

    #[test]
    fn degenerate_parameters_exit_3() {
        let p = ParamInput::Bi(ParameterSet::from_ratios([(0, 1), (0, 1), (-2, 1), (0, 1)]));
        let mut cfg = RunConfig::new(Command::VerifyAlgebra, p);
        cfg.degree = Some(4);
        let out = run(&cfg);
        assert_eq!(out.exit_code, EXIT_INVALID);
        let v: Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["error"]["kind"], "DegenerateParameters");
    }

    #[test]
    fn tamper_fails_with_exit_2() {
        let mut cfg = RunConfig::new(Command::VerifyAlgebra, zero());
        cfg.degree = Some(6);
        assert_eq!(run(&cfg).exit_code, 0);
        cfg.tamper = true;
        let out = run(&cfg);
        assert_eq!(out.exit_code, EXIT_FAIL);
        let v: Value = serde_json::from_str(&out.json).unwrap();
        assert_eq!(v["result"]["summary"][0]["pass"], false);
    }

    #[test]
    fn rep_needs_real_params() {
        let out = run(&RunConfig::new(Command::Rep, zero()));
        assert_eq!(out.exit_code, EXIT_INVALID);
    }

    #[test]
    fn runs_are_deterministic() {
        let mut cfg = RunConfig::new(Command::Rep, ParamInput::Real(RealParameterQuad::from_ratios([(1, 2); 4])));
        cfg.n_max = Some(12);
        cfg.precision_digits = 30;
        let a = run(&cfg);
        let b = run(&cfg);
        assert_eq!(a.exit_code, 0);
        assert_eq!(a.json, b.json);
    }

    #[test]
    fn random_sets_follow_the_seed() {
        assert_eq!(random_parameter_sets(7, 3, 12), random_parameter_sets(7, 3, 12));
        assert_ne!(random_parameter_sets(7, 3, 12), random_parameter_sets(8, 3, 12));
    }

    #[test]
    fn conflicting_styles_are_rejected() {
        let code = main_with_args([
            "biwkit",
            "poly",
            "--params",
            "0,0,0,0",
            "--real-params",
            "1,1,1,1",
            "--output",
            "/dev/null",
        ]);
        assert_eq!(code, EXIT_INVALID);
    }
}

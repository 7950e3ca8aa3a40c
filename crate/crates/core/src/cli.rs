//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::gallery::{self, HjParams, RandomOptions};
use crate::hustad;
use crate::report::{self, Report, SuiteSection};
use crate::representation::Condition;
use crate::scalar::{Field, Scalar};
use crate::settings::Settings;
use crate::space::{self, FunctionSpace};
use crate::suite;
use crate::verdict::MeasureMap;

#[derive(Parser, Debug)]
#[command(name = "choquet-lab", version, about = "Exact Choquet boundary and simpliciality analysis on finite compact sets")]
pub struct Cli {
    /// Reinterpret the input space over another field (real|complex).
    #[arg(long, global = true)]
    pub field_override: Option<Field>,
    /// Phase grid resolution N for complex mode (power of two).
    #[arg(long, global = true, default_value_t = 64)]
    pub phase_grid: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the full JSON report on stdout instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Boundary and conditions I–VI for a space file.
    Analyze {
        space: PathBuf,
        /// Comma-separated subset of I,II,III,IV,V,VI.
        #[arg(long, value_delimiter = ',')]
        conditions: Option<Vec<Condition>>,
    },
    /// Choquet boundary with per-point certificates.
    Boundary { space: PathBuf },
    /// Dilation operators on a simplicial real space.
    Dirichlet {
        space: PathBuf,
        /// Run the property suite.
        #[arg(long)]
        suite: bool,
        /// JSON map label → scalar to apply D and D̃ to.
        #[arg(long)]
        apply: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        batch: usize,
    },
    /// Build a gallery space and analyze it (or print it with --emit-space).
    Example(ExampleArgs),
    /// Regression and property sweeps.
    Suite(SuiteArgs),
    /// Re-check every witness in a report.
    Verify { report: PathBuf },
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    /// interval1|interval2|interval3|hj1|hj2|porcupine|square-affine|two-point|full|balanced-sum|random
    pub name: String,
    #[arg(long, default_value_t = 2)]
    pub grid: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Porcupine index set L (comma-separated labels).
    #[arg(long, value_delimiter = ',', default_value = "t1,t2,t3")]
    pub l: Vec<String>,
    /// Porcupine subset A of L.
    #[arg(long, value_delimiter = ',', default_value = "t1")]
    pub a: Vec<String>,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long)]
    pub complex: bool,
    /// Print the space document instead of analyzing it.
    #[arg(long)]
    pub emit_space: bool,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Number of random real spaces for the implication suite.
    #[arg(long)]
    pub random: Option<usize>,
    /// Maximum number of cases in the prubeh sweep.
    #[arg(long)]
    pub prubeh_sweep: Option<usize>,
    /// Number of random measures for the transfer-map suite.
    #[arg(long)]
    pub hustad: Option<usize>,
    /// Cross-validate the four-number criterion (grid of H_1).
    #[arg(long)]
    pub c14: Option<usize>,
    /// Number of random complex functionals for the enclosure sandwich.
    #[arg(long)]
    pub sandwich: Option<usize>,
    /// Where reproducers for violations are written.
    #[arg(long, default_value = "reproducers")]
    pub reproducers: PathBuf,
}

/// Exit code for an error: 1 input, 2 inconsistency, 3 witness failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InternalInconsistency(_) => 2,
        Error::WitnessFailure(_) => 3,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path, over: Option<Field>) -> Result<FunctionSpace> {
    let s = space::load_space(&read(path)?)?;
    match over {
        Some(f) if f != s.field() => s.with_field(f),
        _ => Ok(s),
    }
}

fn parse_scalar(s: &Option<String>, default: &str) -> Result<Scalar> {
    Scalar::parse(s.as_deref().unwrap_or(default))
}

pub fn example_space(a: &ExampleArgs, seed: u64) -> Result<FunctionSpace> {
    let field = if a.complex { Field::Complex } else { Field::Real };
    let sp = match a.name.as_str() {
        "interval1" => gallery::make_interval_space(1, a.grid, &Scalar::zero())?,
        "interval2" => gallery::make_interval_space(2, a.grid, &parse_scalar(&a.alpha, "-1")?)?,
        "interval3" => gallery::make_interval_space(3, a.grid, &parse_scalar(&a.beta, "1/2")?)?,
        "hj1" | "hj2" => {
            let variant = if a.name == "hj1" { 1 } else { 2 };
            let p = HjParams::new(variant, a.grid, parse_scalar(&a.alpha, "1/4")?, parse_scalar(&a.beta, "1/2")?);
            gallery::make_hj(&p)?
        }
        "porcupine" => {
            let l: Vec<&str> = a.l.iter().map(String::as_str).collect();
            let aa: Vec<&str> = a.a.iter().map(String::as_str).collect();
            gallery::make_porcupine(&l, &aa)?
        }
        "square-affine" => gallery::make_square_affine(),
        "two-point" => gallery::make_two_point(),
        "full" => gallery::make_full(a.n),
        "balanced-sum" => gallery::make_balanced_sum(a.grid)?,
        "random" => gallery::random_space(a.n, a.m, seed, field, &RandomOptions::default())?,
        other => return Err(Error::BadParam(format!("unknown example '{other}'"))),
    };
    if a.complex && sp.field() == Field::Real {
        return sp.with_field(Field::Complex);
    }
    Ok(sp)
}

fn summary(rep: &Report) -> String {
    let mut out = Vec::new();
    if let Some(d) = &rep.digest {
        out.push(format!("space {} (n={}, m={}, {}) sha256:{}", d.name, d.n, d.m, d.field, &d.sha256[..12]));
    }
    if let Some(b) = &rep.boundary {
        out.push(format!("boundary: {{{}}}", b.boundary.join(", ")));
        if !b.unknown.is_empty() {
            out.push(format!("undecided: {{{}}}", b.unknown.join(", ")));
        }
    }
    if let Some(c) = &rep.conditions {
        out.push(format!("conditions: {}", c.summary));
        out.push(format!("theta injective on S×K: {}", c.theta_full.status));
    }
    if let Some(d) = &rep.dirichlet {
        for (x, delta) in &d.delta {
            let terms: Vec<String> = delta.iter().filter(|(_, v)| !v.is_zero()).map(|(y, v)| format!("{v}·ε_{y}")).collect();
            out.push(format!("δ_{x} = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") }));
        }
        out.push(format!("D = D̃: {}", d.d_equals_dtilde));
        if let Some(a) = &d.applied {
            let show = |m: &MeasureMap| m.iter().map(|(x, v)| format!("{x}: {v}")).collect::<Vec<_>>().join(", ");
            out.push(format!("Df = {{{}}}", show(&a.d)));
            out.push(format!("D̃f = {{{}}}", show(&a.dtilde)));
        }
        if let Some(s) = &d.suite {
            out.push(format!("property suite: {} failures {:?}", s.total_failures(), s.failures));
        }
    }
    if let Some(s) = &rep.suite {
        if let Some(r) = &s.random {
            out.push(format!("random suite: {} spaces, {} dilation runs, {} violations", r.spaces, r.dirichlet_runs, r.violations.len()));
        }
        if let Some(p) = &s.prubeh {
            out.push(format!(
                "prubeh sweep: {} cases, {} failures, {} non-strict at z ≠ ±1, {} mismatches at z = ±1",
                p.cases, p.failures, p.nonstrict_nonreal, p.real_mismatch
            ));
        }
        if let Some(h) = &s.hustad {
            out.push(format!("transfer suite: {} cases, {} failures", h.cases, h.failures()));
        }
        if let Some(c) = &s.c14 {
            let agree = c.iter().filter(|k| !(k.c14.is_decided() && k.generic.is_decided()) || k.c14 == k.generic).count();
            out.push(format!("four-number cross-validation: {agree}/{} agree", c.len()));
        }
        if let Some(w) = &s.sandwich {
            out.push(format!("sandwich: {} functionals, {} nested, {} within ratio", w.len(), w.iter().filter(|c| c.nested).count(), w.iter().filter(|c| c.ratio_ok).count()));
        }
        out.push(format!("violations: {}", s.violations.len()));
        out.extend(s.violations.iter().map(|v| format!("  {v}")));
    }
    out.join("\n")
}

fn run_suite(a: &SuiteArgs, settings: &Settings) -> Result<Report> {
    let start = std::time::Instant::now();
    let mut sec = SuiteSection::default();
    let mut repro: Vec<(String, serde_json::Value)> = Vec::new();
    if let Some(count) = a.random {
        let opts = suite::RandomSuiteOptions { count, seed: settings.seed, ..Default::default() };
        let r = suite::random_implication_suite(&opts, settings);
        for (i, v) in r.violations.iter().enumerate() {
            sec.violations.push(format!("{}: {}", v.check, v.message));
            repro.push((format!("random-{i}"), serde_json::to_value(v)?));
        }
        sec.random = Some(r);
    }
    if let Some(limit) = a.prubeh_sweep {
        let p = suite::prubeh_sweep(20, limit);
        if p.failures + p.nonstrict_nonreal + p.real_mismatch > 0 {
            sec.violations.push(format!("prubeh: {p:?}"));
        }
        sec.prubeh = Some(p);
    }
    if let Some(count) = a.hustad {
        let h = hustad::property_suite(count, settings.seed);
        if h.failures() > 0 {
            sec.violations.push(format!("transfer: {} failures", h.failures()));
            repro.push(("hustad".into(), serde_json::json!({ "seed": settings.seed, "count": count })));
        }
        sec.hustad = Some(h);
    }
    if let Some(g) = a.c14 {
        let cases = suite::c14_cross_validation(&suite::c14_default_pairs(), g.max(1), settings)?;
        for c in &cases {
            if c.c14.is_decided() && c.generic.is_decided() && c.c14 != c.generic {
                sec.violations.push(format!("four-number: α={} β={} gives {} vs {}", c.alpha, c.beta, c.c14, c.generic));
            }
        }
        sec.c14 = Some(cases);
    }
    if let Some(count) = a.sandwich {
        let cases = suite::sandwich_suite(count, settings.seed, settings)?;
        for c in &cases {
            if !c.nested || !c.ratio_ok {
                sec.violations.push(format!("sandwich: functional #{} nested={} ratio={}", c.functional, c.nested, c.ratio_ok));
            }
        }
        sec.sandwich = Some(cases);
    }
    if !repro.is_empty() {
        std::fs::create_dir_all(&a.reproducers)?;
        for (name, v) in &repro {
            let path = a.reproducers.join(format!("{name}.json"));
            std::fs::write(&path, serde_json::to_string_pretty(v)?)?;
        }
    }
    let mut rep = Report::new("suite", settings, None);
    rep.suite = Some(sec);
    rep.timing_ms.insert("total".into(), start.elapsed().as_millis());
    Ok(rep)
}

fn parse_apply(path: &Path) -> Result<MeasureMap> {
    let value: serde_json::Value = serde_json::from_str(&read(path)?)?;
    let obj = value.as_object().ok_or_else(|| Error::Schema("f must be a map from labels to scalars".into()))?;
    obj.iter().map(|(k, v)| Ok((k.clone(), space::parse_scalar_value(v)?))).collect()
}

/// Executes a parsed command line; returns the report and whether it signals a failure.
pub fn execute(cli: &Cli) -> Result<(Report, i32)> {
    let settings = Settings { seed: cli.seed, ..Settings::default() }.with_grid(cli.phase_grid);
    settings.grid()?;
    let over = cli.field_override;
    let rep = match &cli.command {
        Command::Analyze { space, conditions } => {
            let s = load(space, over)?;
            let wanted = conditions.clone().unwrap_or_else(|| Condition::ALL.to_vec());
            report::analyze(&s, &settings, &wanted, "analyze")?
        }
        Command::Boundary { space } => report::boundary_report(&load(space, over)?, &settings)?,
        Command::Dirichlet { space, suite, apply, batch } => {
            let s = load(space, over)?;
            let f = apply.as_deref().map(parse_apply).transpose()?;
            let rep = report::dirichlet_report(&s, &settings, f.as_ref(), suite.then_some(*batch))?;
            let failed = rep.dirichlet.as_ref().and_then(|d| d.suite.as_ref()).is_some_and(|r| !r.passed());
            return Ok((rep, if failed { 2 } else { 0 }));
        }
        Command::Example(a) => {
            let s = example_space(a, cli.seed)?;
            let s = match over {
                Some(f) if f != s.field() => s.with_field(f)?,
                _ => s,
            };
            if a.emit_space {
                let mut rep = Report::new("example", &settings, Some(&s));
                rep.timing_ms = BTreeMap::new();
                rep
            } else {
                report::analyze(&s, &settings, &Condition::ALL, "example")?
            }
        }
        Command::Suite(a) => {
            let rep = run_suite(a, &settings)?;
            let code = if rep.suite.as_ref().is_some_and(|s| !s.violations.is_empty()) { 2 } else { 0 };
            return Ok((rep, code));
        }
        Command::Verify { report: path } => {
            let rep = Report::from_json(&read(path)?)?;
            let s = report::verify(&rep)?;
            let _ = writeln!(std::io::stdout(), "verified {} witnesses ({} by recomputation)", s.checked, s.recomputed);
            return Ok((rep, 0));
        }
    };
    Ok((rep, 0))
}

/// Full CLI run: parse, execute, emit. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((rep, code)) => {
            if matches!(cli.command, Command::Verify { .. }) {
                return code;
            }
            if let Command::Example(a) = &cli.command {
                if a.emit_space {
                    let text = rep.space.as_ref().map(|d| serde_json::to_string_pretty(d).expect("serializable")).unwrap_or_default();
                    return emit(&cli, &text, &text, code);
                }
            }
            emit(&cli, &rep.to_json(), &summary(&rep), code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, json: &str, human: &str, code: i32) -> i32 {
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, json) {
            eprintln!("error: {}: {e}", path.display());
            return 1;
        }
    }
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{}", if cli.json { json } else { human });
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("choquet-lab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_global_flags_anywhere() {
        let c = parse(&["analyze", "x.json", "--conditions", "I,III", "--phase-grid", "32", "--json"]);
        assert_eq!(c.phase_grid, 32);
        assert!(c.json);
        match c.command {
            Command::Analyze { conditions, .. } => assert_eq!(conditions.unwrap(), vec![Condition::I, Condition::III]),
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn negative_parameters_parse() {
        let c = parse(&["example", "hj1", "--alpha", "-1/4", "--beta", "1/2"]);
        let Command::Example(a) = c.command else { panic!("wrong subcommand") };
        assert_eq!(example_space(&a, 0).unwrap().n(), 11);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InternalInconsistency("x".into())), 2);
        assert_eq!(exit_code(&Error::WitnessFailure("x".into())), 3);
        assert_eq!(exit_code(&Error::BadParam("x".into())), 1);
        assert_eq!(run(["choquet-lab", "analyze", "/nonexistent/space.json"]), 1);
        assert_eq!(run(["choquet-lab", "example", "nope"]), 1);
    }

    #[test]
    fn empty_suite() {
        let (rep, code) = execute(&parse(&["suite", "--random", "0"])).unwrap();
        assert_eq!(code, 0);
        assert_eq!(rep.suite.unwrap().random.unwrap().spaces, 0);
    }
}

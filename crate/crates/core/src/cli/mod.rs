//! The `kh` command line: argument parsing, job execution and reports.

mod corpus;
mod input;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

pub use corpus::{invariant_suite, run_corpus, CorpusSummary, JobOutcome};
pub use input::{from_braid, from_pd, from_text, golden_values, LinkInput};
pub use report::{kh_summary, Report};

use crate::annular::{akh_homology, kappa, plamenevskaya_cycle, psi_nonzero, self_linking, AnnularError, KappaMethod};
use crate::chain::{homology, ungraded_homology, ChainError, Ring};
use crate::cobordism_scan::{scan_compute, ScanError};
use crate::frobenius_cube::{build_cube_complex, builtin_spec, ng_tb_bound, CubeError, Theory};
use crate::laurent::{kauffman_bracket, unnormalized_jones};
use crate::lee_s::{s_levels, LeeError};
use crate::links::{ArcId, LinkError};
use crate::spectral::{akh_to_kh_ss, kh_to_localized_ss, Page, SpectralError};

/// Exit status 2: bad input. Exit status 3: an internal consistency check failed.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<CubeError> for CliError {
    fn from(e: CubeError) -> Self {
        match e {
            CubeError::Chain(c) => c.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::UnsupportedTheory => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<LeeError> for CliError {
    fn from(e: LeeError) -> Self {
        match e {
            LeeError::NotAKnot(_) | LeeError::BadOrientation { .. } => CliError::Input(e.to_string()),
            LeeError::Cube(c) => c.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<AnnularError> for CliError {
    fn from(e: AnnularError) -> Self {
        match e {
            AnnularError::NoMarking | AnnularError::NotAField => CliError::Input(e.to_string()),
            AnnularError::Cube(c) => c.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::NotAField(_) | SpectralError::Unsupported(_) => CliError::Input(e.to_string()),
            SpectralError::Cube(c) => c.into(),
            SpectralError::Annular(a) => a.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "kh", about = "Khovanov homology and related link invariants", version)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Braid word, e.g. "b=2; s1 s1 s1"
    #[arg(long, group = "src")]
    pub braid: Option<String>,
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
    #[arg(long, group = "src")]
    pub pd: Option<String>,
    /// File holding a braid word or PD code
    #[arg(long, group = "src")]
    pub input: Option<PathBuf>,
}

impl InputArgs {
    pub fn load(&self) -> Result<LinkInput, CliError> {
        match (&self.braid, &self.pd, &self.input) {
            (Some(b), _, _) => Ok(from_braid(b)?),
            (_, Some(p), _) => Ok(from_pd(p)?),
            (_, _, Some(f)) => Ok(from_text(&input::read_file(f).map_err(CliError::Input)?)?),
            _ => Err(CliError::Input("one of --braid, --pd or --input is required".into())),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Naive,
    Scan,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsFrom {
    Kh,
    Akh,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsTo {
    Lee,
    Bn,
    Kh,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaArg {
    Direct,
    Pages,
    Both,
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    Ring::parse(s).ok_or_else(|| format!("unknown ring '{s}' (use Z, Q, F2, F3, ...)"))
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    Theory::parse(s).ok_or_else(|| format!("unknown theory '{s}' (use kh, lee or bn)"))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unnormalized Jones polynomial
    Jones(InputArgs),
    /// Kauffman bracket
    Bracket(InputArgs),
    /// Homology of a Frobenius theory
    Compute {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "kh", value_parser = parse_theory)]
        theory: Theory,
        /// Coefficients (default: Z for kh, Q for lee, F2 for bn)
        #[arg(long, value_parser = parse_ring)]
        ring: Option<Ring>,
        #[arg(long, value_enum, default_value = "naive")]
        engine: Engine,
        #[arg(long)]
        reduced: bool,
        /// Basepoint arc for --reduced (default: the diagram's basepoint, else the lowest arc)
        #[arg(long)]
        basepoint: Option<ArcId>,
    },
    /// Reduced Khovanov homology
    Reduced {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: Ring,
        #[arg(long)]
        basepoint: Option<ArcId>,
    },
    /// Rasmussen invariant of a knot
    S(InputArgs),
    /// Annular Khovanov homology of a marked diagram
    Annular {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: Ring,
    },
    /// Plamenevskaya class of a braid closure
    Psi {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: Ring,
    },
    /// Hubbard–Saltz κ of a braid
    Kappa {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "F2", value_parser = parse_ring)]
        ring: Ring,
        #[arg(long, value_enum, default_value = "direct")]
        method: KappaArg,
    },
    /// Filtration spectral sequences
    Ss {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        from: SsFrom,
        #[arg(long, value_enum)]
        to: SsTo,
        /// Field for --from akh
        #[arg(long, default_value = "F2", value_parser = parse_ring)]
        ring: Ring,
    },
    /// Upper bound on the Thurston–Bennequin number from Kh
    Ngbound(InputArgs),
    /// Run every input file of a directory and compare with embedded golden values
    Corpus {
        dir: PathBuf,
        /// Directory for per-input JSON results
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn base_json(command: &str, input: &LinkInput) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(1));
    m.insert("command".into(), json!(command));
    m.insert("input".into(), json!(input.text));
    m
}

fn pages_json(pages: &[Page]) -> Value {
    Value::Array(
        pages
            .iter()
            .map(|p| {
                json!({
                    "r": p.r,
                    "rank": p.rank,
                    "collapsed": p.collapsed,
                    "total": p.total_dim(),
                    "dims": p.dims.iter().map(|(&(h, f), &n)| json!({"h": h, "f": f, "dim": n})).collect::<Vec<_>>(),
                    "differential": p.differential.iter().map(|a| json!([a.from, a.to, a.coeff])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn pages_text(pages: &[Page]) -> String {
    let mut out = String::new();
    for p in pages {
        out.push_str(&format!("E{}: total {} rank(d{}) = {}{}\n", p.r, p.total_dim(), p.r, p.rank, if p.collapsed { " (collapsed)" } else { "" }));
        for (&(h, f), &n) in &p.dims {
            out.push_str(&format!("  ({h},{f}): {n}\n"));
        }
    }
    out
}

fn auto_basepoint(input: &LinkInput, flag: Option<ArcId>) -> ArcId {
    flag.or(input.diagram.basepoint()).unwrap_or(if input.diagram.n() == 0 { 0 } else { 1 })
}

fn require_braid(input: &LinkInput) -> Result<&crate::links::BraidWord, CliError> {
    input.braid.as_ref().ok_or_else(|| CliError::Input("this command needs a braid word".into()))
}

/// Execute one command and build its report.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Jones(a) | Command::Bracket(a) => {
            let inp = a.load()?;
            let (name, p) = match command {
                Command::Jones(_) => ("jones", unnormalized_jones(&inp.diagram)),
                _ => ("bracket", kauffman_bracket(&inp.diagram)),
            };
            let mut j = base_json(name, &inp);
            j.insert("polynomial".into(), json!(p.to_string()));
            j.insert("terms".into(), json!(p.terms().map(|(e, c)| json!([e, c])).collect::<Vec<_>>()));
            Ok(Report { text: format!("{p}\n"), json: Value::Object(j) })
        }
        Command::Compute { input, theory, ring, engine, reduced, basepoint } => compute(input, *theory, *ring, *engine, *reduced, *basepoint),
        Command::Reduced { input, ring, basepoint } => compute(input, Theory::Kh, Some(*ring), Engine::Naive, true, *basepoint),
        Command::S(a) => {
            let inp = a.load()?;
            let lv = s_levels(&inp.diagram)?;
            let mut j = base_json("s", &inp);
            j.insert("s".into(), json!(lv.s));
            j.insert("s_min".into(), json!(lv.s_min));
            j.insert("s_max".into(), json!(lv.s_max));
            let g4 = (lv.s.abs() + 1) / 2;
            j.insert("g4_lower_bound".into(), json!(g4));
            Ok(Report { text: format!("s = {}\ng4_lower_bound = {g4}\ns_min = {}\ns_max = {}\n", lv.s, lv.s_min, lv.s_max), json: Value::Object(j) })
        }
        Command::Annular { input, ring } => {
            let inp = input.load()?;
            let g = akh_homology(&inp.diagram, *ring)?;
            let mut j = base_json("annular", &inp);
            j.insert("homology".into(), serde_json::from_str(&g.to_json()).expect("valid json"));
            Ok(Report { text: g.to_string(), json: Value::Object(j) })
        }
        Command::Psi { input, ring } => {
            let inp = input.load()?;
            let b = require_braid(&inp)?;
            let p = plamenevskaya_cycle(b, *ring)?;
            let nz = psi_nonzero(b, *ring)?;
            let mut j = base_json("psi", &inp);
            j.insert("ring".into(), json!(ring.to_string()));
            j.insert("nonzero".into(), json!(nz));
            j.insert("gr_q".into(), json!(p.gr_q()));
            j.insert("gr_k".into(), json!(p.gr_k()));
            j.insert("self_linking".into(), json!(self_linking(b)));
            let text = format!("psi = {}\ngr_q = {}\nsl = {}\n", if nz { "nonzero" } else { "zero" }, p.gr_q(), self_linking(b));
            Ok(Report { text, json: Value::Object(j) })
        }
        Command::Kappa { input, ring, method } => {
            let inp = input.load()?;
            let b = require_braid(&inp)?;
            let k = match method {
                KappaArg::Direct => kappa(b, *ring, KappaMethod::Direct)?,
                KappaArg::Pages => kappa(b, *ring, KappaMethod::PageCount)?,
                KappaArg::Both => {
                    let (x, y) = (kappa(b, *ring, KappaMethod::Direct)?, kappa(b, *ring, KappaMethod::PageCount)?);
                    if x != y {
                        return Err(CliError::Internal(format!("kappa methods disagree: {x} vs {y}")));
                    }
                    x
                }
            };
            let mut j = base_json("kappa", &inp);
            j.insert("ring".into(), json!(ring.to_string()));
            j.insert("kappa".into(), json!(k.to_string()));
            Ok(Report { text: format!("kappa = {k}\n"), json: Value::Object(j) })
        }
        Command::Ss { input, from, to, ring } => {
            let inp = input.load()?;
            let pages = match (from, to) {
                (SsFrom::Kh, SsTo::Lee) => kh_to_localized_ss(&inp.diagram, Theory::Lee)?,
                (SsFrom::Kh, SsTo::Bn) => kh_to_localized_ss(&inp.diagram, Theory::Bn)?,
                (SsFrom::Akh, SsTo::Kh) => akh_to_kh_ss(&inp.diagram, *ring)?,
                _ => return Err(CliError::Input("supported: --from kh --to lee|bn, --from akh --to kh".into())),
            };
            let mut j = base_json("ss", &inp);
            j.insert("pages".into(), pages_json(&pages));
            Ok(Report { text: pages_text(&pages), json: Value::Object(j) })
        }
        Command::Ngbound(a) => {
            let inp = a.load()?;
            let b = ng_tb_bound(&inp.diagram)?;
            let mut j = base_json("ngbound", &inp);
            j.insert("tb_bound".into(), json!(b));
            Ok(Report { text: format!("tb <= {}\n", b.map_or("none".into(), |v| v.to_string())), json: Value::Object(j) })
        }
        Command::Corpus { .. } => unreachable!("handled by main"),
    }
}

fn compute(input: &InputArgs, theory: Theory, ring: Option<Ring>, engine: Engine, reduced: bool, basepoint: Option<ArcId>) -> Result<Report, CliError> {
    let inp = input.load()?;
    if engine != Engine::Naive && theory != Theory::Kh {
        return Err(CliError::Input("--engine scan requires --theory kh".into()));
    }
    if engine != Engine::Naive && reduced {
        return Err(CliError::Input("--engine scan computes unreduced homology only".into()));
    }
    let ring = ring.unwrap_or(builtin_spec(theory).ring);
    let spec = match theory {
        Theory::Kh => builtin_spec(theory).with_ring(ring),
        _ => {
            let s = builtin_spec(theory);
            if ring != s.ring {
                return Err(CliError::Input(format!("{theory:?} is defined over {} only", s.ring)));
            }
            s
        }
    };
    let bp = reduced.then(|| auto_basepoint(&inp, basepoint));
    let mut j = base_json(if reduced { "reduced" } else { "compute" }, &inp);
    j.insert("theory".into(), json!(format!("{theory:?}").to_lowercase()));
    j.insert("ring".into(), json!(ring.to_string()));
    if let Some(b) = bp {
        j.insert("basepoint".into(), json!(b));
    }
    if theory != Theory::Kh {
        let c = build_cube_complex(&inp.diagram, &spec, None)?;
        let h = ungraded_homology(&c.complex)?;
        let ranks: Vec<(i64, usize)> = h.iter().map(|(&i, g)| (i, g.rank)).filter(|e| e.1 > 0).collect();
        j.insert("ranks".into(), json!(ranks.iter().map(|&(i, r)| json!({"i": i, "rank": r})).collect::<Vec<_>>()));
        let text: String = ranks.iter().map(|(i, r)| format!("H^{i}: {ring}^{r}\n")).collect();
        return Ok(Report { text, json: Value::Object(j) });
    }
    let naive = || -> Result<_, CliError> { Ok(homology(&build_cube_complex(&inp.diagram, &spec, bp)?.complex)?) };
    let scan = || -> Result<_, CliError> { Ok(homology(&scan_compute(&inp.diagram, &spec)?)?) };
    let g = match engine {
        Engine::Naive => naive()?,
        Engine::Scan => scan()?,
        Engine::Both => {
            let (a, b) = rayon::join(naive, scan);
            let (a, b) = (a?, b?);
            if a != b {
                return Err(CliError::Internal(format!("engines disagree\nnaive:\n{a}scan:\n{b}")));
            }
            j.insert("engines_agree".into(), json!(true));
            a
        }
    };
    j.insert("homology".into(), serde_json::from_str(&g.to_json()).expect("valid json"));
    let mut text = g.to_string();
    if let Some(b) = bp {
        text = format!("basepoint arc {b}\n{text}");
    }
    Ok(Report { text, json: Value::Object(j) })
}

/// Honour KH_THREADS, parse arguments, run, print; returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    if let Some(n) = std::env::var("KH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Command::Corpus { dir, out } = &cli.command {
        return match run_corpus(dir, out.as_deref()) {
            Ok(summary) => {
                print!("{}", summary.render());
                summary.exit_code()
            }
            Err(e) => {
                eprintln!("{e}");
                e.exit_code()
            }
        };
    }
    match execute(&cli.command) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json_string());
            } else {
                print!("{}", r.text);
            }
            0
        }
        Err(e) => {
            eprintln!("kh: {e}");
            e.exit_code()
        }
    }
}

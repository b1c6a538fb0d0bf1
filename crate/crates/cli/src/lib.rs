//! The `zelcoh` command line.
//!
//! Exit codes: 0 success or equal verdict, 1 unequal verdict, 2 inconsistent
//! input, 64 usage error, 65 stratum out of range, 66 unreadable or
//! schema-invalid input.

pub mod config;
pub mod render;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use config::{parse_kappa, Config, Format};
use zelcoh::congruence::{
    d_sequence, generate_dataset, infer_all, infer_b, theorem_check, Dataset, DimensionOracle, HashOracle, Shape,
    UnitOracle,
};
use zelcoh::diagram::{constituent, diagram, superpose, trace_back, Diagram, DiagramPoint, LocalComponent};
use zelcoh::ledger::{filtration_graded, ledger_to_json, resolution_terms, GlobalContext, Infinitesimal, LedgerTerm};
use zelcoh::zelevinsky::Cuspidal;
use zelcoh::Error;

pub const EXIT_UNEQUAL: u8 = 1;
pub const EXIT_INCONSISTENT: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_STRATUM: u8 = 65;
pub const EXIT_SCHEMA: u8 = 66;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(EXIT_USAGE, message)
    }

    pub fn schema(message: impl Into<String>) -> Self {
        CliError::new(EXIT_SCHEMA, message)
    }

    fn inconsistent(e: impl fmt::Display) -> Self {
        CliError::new(EXIT_INCONSISTENT, e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// What a successful (or verdict-carrying) run prints and returns.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

#[derive(Parser, Debug)]
#[command(name = "zelcoh", version, about = "Cohomology diagrams, sheaf ledgers and congruence checks")]
struct Cli {
    /// TOML file with defaults for d, g, e_pi, kappa, levels and format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Render the diagram of Speh_s(St_t(π)) or the superposition of a local component.
    Diagram(DiagramArgs),
    /// List the terms of the resolution of p j_!*^{=t} HT(π, Π_t).
    Resolution(LedgerArgs),
    /// List the graded parts of the filtration of j_!^{=t} HT(π, Π_t).
    Filtration(LedgerArgs),
    /// Compare both sides of the congruence identity for two datasets.
    Congruence(CongruenceArgs),
    /// Compute d_{k,n} for a dataset and peel off the contributing shapes.
    Infer(InferArgs),
    /// Write a pseudo-random dataset.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
struct DiagramArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), requires = "t", required_unless_present = "component")]
    s: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), requires = "s")]
    t: Option<u32>,
    /// Local component JSON file.
    #[arg(long, conflicts_with_all = ["s", "t"])]
    component: Option<PathBuf>,
    /// List the constituents at (r, i) instead of drawing.
    #[arg(long)]
    at_r: Option<i64>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    at_i: i64,
    /// Shorthand for --format ascii.
    #[arg(long)]
    ascii: bool,
}

#[derive(Args, Debug)]
struct ContextArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    d: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    g: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    e_pi: Option<u32>,
    /// Positive rational `num/den`.
    #[arg(long)]
    kappa: Option<String>,
    /// Name of the cuspidal π.
    #[arg(long, default_value = "π")]
    pi: String,
    /// Name of the mod-ℓ class of π.
    #[arg(long, default_value = "ρ")]
    modl_class: String,
}

#[derive(Args, Debug)]
struct LedgerArgs {
    #[command(flatten)]
    context: ContextArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    t: u32,
}

#[derive(Args, Debug)]
struct CongruenceArgs {
    dataset_a: PathBuf,
    dataset_b: PathBuf,
    /// Defaults to the maximal r of the first dataset.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    s: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Unit,
    Hash,
}

#[derive(Args, Debug)]
struct InferArgs {
    dataset: PathBuf,
    /// Defaults to every r from the maximal one down to 1.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r: Option<u32>,
    #[arg(long, value_enum, default_value = "unit")]
    oracle: OracleKind,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    context: ContextArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
    /// Shapes `s,t` to realize; repeatable.
    #[arg(long, value_parser = parse_pair)]
    target: Vec<(u32, u32)>,
    #[arg(long)]
    torsion: bool,
    #[arg(long)]
    decoys: bool,
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<u32>>,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected s,t, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<Output, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Ok(Output::ok(e.to_string())),
        Err(e) => return Err(CliError::usage(e.render().to_string())),
    };
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let format = cli.format.or(config.format);
    match cli.command {
        Command::Diagram(a) => cmd_diagram(a, format),
        Command::Resolution(a) => cmd_ledger(a, &config, format, LedgerKind::Resolution),
        Command::Filtration(a) => cmd_ledger(a, &config, format, LedgerKind::Filtration),
        Command::Congruence(a) => cmd_congruence(a, format),
        Command::Infer(a) => cmd_infer(a, format),
        Command::Generate(a) => cmd_generate(a, &config),
    }
}

/// Reads JSON with the path of the first schema violation in the error.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        CliError::schema(format!("{}: schema violation at `{at}`: {}", path.display(), e.inner()))
    })
}

pub fn load_dataset(path: &Path) -> Result<Dataset, CliError> {
    let ds: Dataset = read_json(path)?;
    ds.validate().map_err(|e| match e {
        Error::InvalidArgument(msg) => CliError::schema(format!("{}: schema violation at {msg}", path.display())),
        other => CliError::inconsistent(format!("{}: {other}", path.display())),
    })?;
    Ok(ds)
}

fn cmd_diagram(a: DiagramArgs, format: Option<Format>) -> Result<Output, CliError> {
    let format = if a.ascii { Format::Ascii } else { format.unwrap_or(Format::Ascii) };
    let component: Option<LocalComponent> = a.component.as_deref().map(read_json).transpose()?;
    let d: Diagram = match (&component, a.s, a.t) {
        (Some(c), _, _) => superpose(c),
        (None, Some(s), Some(t)) => diagram(s, t).map_err(|e| CliError::usage(e.to_string()))?,
        _ => return Err(CliError::usage("give --s and --t, or --component")),
    };
    let Some(r) = a.at_r else {
        return Ok(Output::ok(match format {
            Format::Json => d.to_json() + "\n",
            Format::Ascii => render::ascii(&d),
            Format::Svg => render::svg(&d),
        }));
    };
    let p = DiagramPoint::new(r, a.at_i);
    let c = match component {
        Some(c) => c,
        None => {
            let base = Cuspidal::new("π", 1, 1, "ρ").expect("valid cuspidal");
            LocalComponent::new(
                a.s.expect("checked"),
                vec![zelcoh::diagram::Factor {
                    t: a.t.expect("checked"),
                    base,
                }],
                None,
            )
            .map_err(|e| CliError::usage(e.to_string()))?
        }
    };
    #[derive(Serialize)]
    struct Entry {
        k: usize,
        label: String,
        marker: String,
        origin: Option<DiagramPoint>,
    }
    let mut entries = Vec::new();
    for &k in d.factors_at(p) {
        let label = constituent(&c, p, k).map_err(|e| CliError::usage(e.to_string()))?;
        let origin = trace_back(&c, p, k).map_err(|e| CliError::usage(e.to_string()))?;
        entries.push(Entry {
            k,
            label: label.to_string(),
            marker: label.marker(),
            origin,
        });
    }
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "schema_version": 1,
            "point": p,
            "constituents": entries,
        }))
        .expect("serializable")
            + "\n",
        Format::Ascii => {
            let mut out = format!("{p}: {} constituent(s)\n", entries.len());
            for e in &entries {
                let from = match e.origin {
                    Some(o) => format!("comes from {o}"),
                    None => format!("does not come from any (r',0) with r' > {r}"),
                };
                out.push_str(&format!("  k={}  {} ⊗ ({})  {from}\n", e.k, e.label, e.marker));
            }
            out
        }
        Format::Svg => return Err(CliError::usage("--at-r output is text or json")),
    };
    Ok(Output::ok(stdout))
}

fn context(a: &ContextArgs, config: &Config) -> Result<GlobalContext, CliError> {
    let d = a.d.or(config.d).ok_or_else(|| CliError::usage("missing --d"))?;
    let g = a.g.or(config.g).unwrap_or(1);
    let e_pi = a.e_pi.or(config.e_pi).unwrap_or(1);
    if g > d {
        return Err(CliError::usage(format!("need d >= g (d={d}, g={g})")));
    }
    let pi = Cuspidal::new(a.pi.clone(), g, e_pi, a.modl_class.clone()).map_err(|e| CliError::usage(e.to_string()))?;
    let ctx = match a.kappa.as_deref().or(config.kappa.as_deref()) {
        Some(k) => GlobalContext::with_kappa(d, pi, parse_kappa(k)?),
        None => GlobalContext::new(d, pi),
    };
    ctx.map_err(|e| CliError::usage(e.to_string()))
}

enum LedgerKind {
    Resolution,
    Filtration,
}

/// `d - hg + deg(infinitesimal)`: the size of the Levi `GL_{hg} × GL_{d-hg}`
/// the term lives on; equal to `d` for every well-formed term.
fn levi_degree(ctx: &GlobalContext, term: &LedgerTerm) -> u64 {
    ctx.d() as u64 - term.stratum as u64 * ctx.g() as u64 + term.infinitesimal.degree()
}

fn cmd_ledger(a: LedgerArgs, config: &Config, format: Option<Format>, kind: LedgerKind) -> Result<Output, CliError> {
    let ctx = context(&a.context, config)?;
    if a.t > ctx.s_g() {
        return Err(CliError::new(
            EXIT_STRATUM,
            format!("t = {} exceeds s_g = {} (d = {}, g = {})", a.t, ctx.s_g(), ctx.d(), ctx.g()),
        ));
    }
    let inf = Infinitesimal::opaque(&ctx, a.t);
    let terms = match kind {
        LedgerKind::Resolution => resolution_terms(&ctx, a.t, &inf),
        LedgerKind::Filtration => filtration_graded(&ctx, a.t, &inf),
    }
    .map_err(CliError::inconsistent)?;
    match format.unwrap_or(Format::Ascii) {
        Format::Json => Ok(Output::ok(ledger_to_json(&terms) + "\n")),
        Format::Ascii => Ok(Output::ok(
            terms
                .iter()
                .map(|t| format!("{}\t{}\n", levi_degree(&ctx, t), t.line()))
                .collect(),
        )),
        Format::Svg => Err(CliError::usage("ledgers are printed as text or json")),
    }
}

fn cmd_congruence(a: CongruenceArgs, format: Option<Format>) -> Result<Output, CliError> {
    let ds_a = load_dataset(&a.dataset_a)?;
    let ds_b = load_dataset(&a.dataset_b)?;
    let (pi_a, pi_b) = (ds_a.context.pi().clone(), ds_b.context.pi().clone());
    let r = match a.r {
        Some(r) => r,
        None => ds_a
            .max_r(&pi_a)
            .ok_or_else(|| CliError::inconsistent("dataset A has no datum over its π; give --r"))?,
    };
    if a.s > r {
        return Err(CliError::usage(format!("need s <= r (r={r}, s={})", a.s)));
    }
    let mut notes = Vec::new();
    for (name, ds, pi) in [("A", &ds_a, &pi_a), ("B", &ds_b, &pi_b)] {
        let table = d_sequence(ds, pi, r, &UnitOracle).map_err(CliError::inconsistent)?;
        let b = infer_b(&table, &ds.torsion).map_err(|e| CliError::inconsistent(format!("dataset {name}: {e}")))?;
        notes.push(format!("B({name}) at {b}"));
    }
    let verdict = theorem_check(&ds_a, &pi_a, &ds_b, &pi_b, r, a.s).map_err(CliError::inconsistent)?;
    let stdout = match format.unwrap_or(Format::Ascii) {
        Format::Json => verdict.to_json() + "\n",
        _ => {
            let mut out = verdict.report();
            for n in notes {
                out.push_str(&n);
                out.push('\n');
            }
            out
        }
    };
    Ok(Output {
        stdout,
        code: if verdict.is_equal() { 0 } else { EXIT_UNEQUAL },
    })
}

fn cmd_infer(a: InferArgs, format: Option<Format>) -> Result<Output, CliError> {
    let ds = load_dataset(&a.dataset)?;
    let oracle: &dyn DimensionOracle = match a.oracle {
        OracleKind::Unit => &UnitOracle,
        OracleKind::Hash => &HashOracle::default(),
    };
    let pi = ds.context.pi().clone();
    let rs: Vec<u32> = match a.r {
        Some(r) => vec![r],
        None => (1..=ds.max_r(&pi).unwrap_or(0)).rev().collect(),
    };
    let mut tables = Vec::new();
    for &r in &rs {
        tables.push(d_sequence(&ds, &pi, r, oracle).map_err(CliError::inconsistent)?);
    }
    let sets = match a.r {
        Some(_) => vec![infer_b(&tables[0], &ds.torsion).map_err(CliError::inconsistent)?],
        None => infer_all(&ds, &pi, oracle).map_err(CliError::inconsistent)?,
    };
    let stdout = match format.unwrap_or(Format::Ascii) {
        Format::Json => {
            let results: Vec<_> = tables
                .iter()
                .zip(&sets)
                .map(|(t, b)| serde_json::json!({"table": t, "contributions": b.to_json_value()}))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({"schema_version": 1, "results": results}))
                .expect("serializable")
                + "\n"
        }
        _ => tables
            .iter()
            .zip(&sets)
            .map(|(t, b)| format!("{t}\n{b}\n\n"))
            .collect(),
    };
    Ok(Output::ok(stdout))
}

fn cmd_generate(a: GenerateArgs, config: &Config) -> Result<Output, CliError> {
    let ctx = context(&a.context, config)?;
    let mut shape = Shape::new(a.r);
    if let Some(levels) = a.levels.or_else(|| config.levels.clone()) {
        shape.levels = levels;
    }
    shape.torsion = a.torsion;
    shape.decoys = a.decoys;
    if !a.target.is_empty() {
        shape.target = Some(a.target);
    }
    let ds = generate_dataset(a.seed, &ctx, &shape).map_err(|e| CliError::usage(e.to_string()))?;
    Ok(Output::ok(ds.to_json() + "\n"))
}

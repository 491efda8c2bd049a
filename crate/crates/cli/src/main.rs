//! `gorcheck`: injective dimensions of string algebras from the command line.
//!
//! Every subcommand except `gen` prints one JSON document on stdout. Exit
//! codes: 0 success, 1 validation failure, 2 usage error, 3 internal
//! invariant failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gorcheck_core::crosscheck::{consistent, crosscheck, CrosscheckReport};
use gorcheck_core::oracle::is_prime;
use gorcheck_core::gen::{random_gentle_algebra, random_string_algebra, GenLimits};
use gorcheck_core::{
    is_self_injective, parse_algebra, validate_string_quiver, ElisConfig, ElisOutcome, Error,
    InjDim, Oracle, OracleDim, ParseError, ProjectiveAnalysis, RelationId, StringAlgebra,
    TraceStep, ValidationReport, VertexId,
};

#[derive(Parser, Debug)]
#[command(name = "gorcheck", version, about = "Self-injective dimension of string algebras")]
struct Cli {
    /// Characteristic of the field used by the oracle.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u32,
    /// Maximum number of distinct cosyzygy summands explored per projective.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    state_budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the string quiver axioms and finite dimensionality.
    Validate { file: PathBuf },
    /// Injective dimension of each projective, or of one.
    Injdim {
        file: PathBuf,
        #[arg(long)]
        vertex: Option<u32>,
    },
    /// Self-injective dimension and the Gorenstein verdict.
    Gorenstein { file: PathBuf },
    /// Witness chains for one projective.
    Elis {
        file: PathBuf,
        #[arg(long)]
        vertex: u32,
        /// Print the cosyzygy trace on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Injective dimensions from explicit coresolutions.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
    },
    /// Compare the engine with the oracle, optionally on generated algebras too.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
        #[arg(long)]
        seeds: Option<u64>,
    },
    /// Print a random algebra description.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::String)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_vertices: u32,
        #[arg(long, default_value_t = 10)]
        max_arrows: usize,
        #[arg(long, default_value_t = 4)]
        max_relation_len: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    String,
    Gentle,
}

enum Failure {
    Usage(String),
    Validation(serde_json::Value),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownVertex(_) | Error::UnknownArrow(_) | Error::InvalidString(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Invariant(e.to_string()),
        }
    }
}

type Outcome = Result<serde_json::Value, Failure>;

fn json(v: impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("plain data serializes")
}

#[derive(Serialize)]
struct ParseFailure<'a> {
    valid: bool,
    parse_errors: &'a [ParseError],
}

#[derive(Serialize)]
struct ValidateOut<'a> {
    algebra: &'a str,
    #[serde(flatten)]
    report: &'a ValidationReport,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    dropped_relations: &'a [String],
}

/// Reads and parses `path` without validating.
fn read(path: &Path) -> Result<gorcheck_core::Parsed, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|errs| {
        Failure::Validation(json(ParseFailure {
            valid: false,
            parse_errors: &errs,
        }))
    })
}

fn load(path: &Path) -> Result<StringAlgebra, Failure> {
    let parsed = read(path)?;
    let name = parsed.algebra.name.clone();
    StringAlgebra::new(parsed.algebra).map_err(|report| {
        Failure::Validation(json(ValidateOut {
            algebra: &name,
            report: &report,
            dropped_relations: &[],
        }))
    })
}

fn vertex(alg: &StringAlgebra, v: u32) -> Result<VertexId, Failure> {
    let v = VertexId(v);
    alg.check_vertex(v).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(v)
}

fn config(cli: &Cli) -> ElisConfig {
    ElisConfig {
        state_budget: cli.state_budget,
    }
}

fn validate(path: &Path) -> Outcome {
    let mut parsed = read(path)?;
    let report = validate_string_quiver(&mut parsed.algebra);
    let out = json(ValidateOut {
        algebra: &parsed.algebra.name,
        report: &report,
        dropped_relations: &parsed.dropped,
    });
    if report.valid() {
        Ok(out)
    } else {
        Err(Failure::Validation(out))
    }
}

#[derive(Serialize)]
struct VertexDim {
    vertex: VertexId,
    inj_dim: InjDim,
}

#[derive(Serialize)]
struct InjdimOut {
    algebra: String,
    inj_dim: InjDim,
    projectives: Vec<VertexDim>,
}

fn injdim(cli: &Cli, path: &Path, only: Option<u32>) -> Outcome {
    let alg = load(path)?;
    let cfg = config(cli);
    if let Some(v) = only {
        let v = vertex(&alg, v)?;
        let d = ProjectiveAnalysis::new(&alg, v, &cfg)?.inj_dim;
        return Ok(json(VertexDim { vertex: v, inj_dim: d }));
    }
    let mut projectives = Vec::new();
    for v in alg.vertices() {
        projectives.push(VertexDim {
            vertex: v,
            inj_dim: ProjectiveAnalysis::new(&alg, v, &cfg)?.inj_dim,
        });
    }
    let inj_dim = projectives.iter().map(|p| p.inj_dim).max().unwrap_or(InjDim::Finite(0));
    Ok(json(InjdimOut {
        algebra: alg.name().to_string(),
        inj_dim,
        projectives,
    }))
}

#[derive(Serialize)]
struct GorensteinOut {
    algebra: String,
    self_injective: bool,
    inj_dim: InjDim,
    gorenstein: bool,
}

fn gorenstein(cli: &Cli, path: &Path) -> Outcome {
    let alg = load(path)?;
    let inj_dim = gorcheck_core::inj_dim_algebra_with(&alg, &config(cli))?;
    Ok(json(GorensteinOut {
        algebra: alg.name().to_string(),
        self_injective: is_self_injective(&alg)?,
        inj_dim,
        gorenstein: inj_dim.is_finite(),
    }))
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ElisJson {
    Finite {
        length: usize,
        witnesses: Vec<Vec<String>>,
    },
    Infinite {
        prefix: Vec<String>,
        cycle: Vec<String>,
        cycle_states: Vec<String>,
    },
}

#[derive(Serialize)]
struct ElisOut {
    vertex: VertexId,
    elis: ElisJson,
    inj_dim: InjDim,
}

fn labels(alg: &StringAlgebra, rels: &[RelationId]) -> Vec<String> {
    rels.iter().map(|&r| alg.render_relation(r)).collect()
}

fn elis(cli: &Cli, path: &Path, v: u32, trace: bool) -> Outcome {
    let alg = load(path)?;
    let v = vertex(&alg, v)?;
    let analysis = ProjectiveAnalysis::new(&alg, v, &config(cli))?;
    let elis = match analysis.outcome() {
        ElisOutcome::Finite { length, witnesses } => ElisJson::Finite {
            length,
            witnesses: witnesses.iter().map(|w| labels(&alg, w)).collect(),
        },
        ElisOutcome::Infinite {
            prefix,
            cycle,
            cycle_states,
        } => ElisJson::Infinite {
            prefix: labels(&alg, &prefix),
            cycle: labels(&alg, &cycle),
            cycle_states: cycle_states.iter().map(|s| s.render(&alg)).collect(),
        },
    };
    if trace {
        let color = std::env::var("GORCHECK_COLOR").is_ok_and(|c| c == "1");
        eprint!("{}", render_trace(v, &analysis.trace(), analysis.inj_dim, color));
    }
    Ok(json(ElisOut {
        vertex: v,
        elis,
        inj_dim: analysis.inj_dim,
    }))
}

/// One row per cosyzygy level, columns padded to a common width; the
/// bounding relation is highlighted when `color` is set.
fn render_trace(v: VertexId, steps: &[TraceStep], inj_dim: InjDim, color: bool) -> String {
    let rows: Vec<[String; 4]> = steps
        .iter()
        .map(|s| {
            [
                s.level.to_string(),
                s.summand.clone(),
                s.via.clone().unwrap_or_else(|| "-".into()),
                s.relation.clone().unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    let head = ["level", "summand", "via", "relation"];
    let mut width = head.map(str::len);
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = format!("P({v}): inj.dim {inj_dim}\n");
    let mut line = |cells: [&str; 4], highlight: bool| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            let pad = width[i] - c.chars().count();
            if i == 3 && highlight && *c != "-" {
                let _ = write!(s, "\x1b[1;33m{c}\x1b[0m");
            } else {
                let _ = write!(s, "{c}{}", " ".repeat(pad));
            }
            if i < 3 {
                s.push_str("  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(head, false);
    for r in &rows {
        line([&r[0], &r[1], &r[2], &r[3]], color);
    }
    out
}

#[derive(Serialize)]
struct OracleVertex {
    vertex: VertexId,
    oracle_dim: OracleDim,
}

#[derive(Serialize)]
struct OracleOut {
    algebra: String,
    prime: u32,
    cutoff: usize,
    projectives: Vec<OracleVertex>,
}

fn oracle(cli: &Cli, path: &Path, cutoff: usize) -> Outcome {
    let alg = load(path)?;
    let o = Oracle::new(alg.bound_quiver(), cli.prime)?;
    let projectives = o
        .projective_dims(cutoff)?
        .into_iter()
        .map(|(vertex, oracle_dim)| OracleVertex { vertex, oracle_dim })
        .collect();
    Ok(json(OracleOut {
        algebra: alg.name().to_string(),
        prime: cli.prime,
        cutoff,
        projectives,
    }))
}

#[derive(Serialize)]
struct Sweep {
    seeds: u64,
    projectives: usize,
    infinite: usize,
    mismatches: Vec<String>,
}

#[derive(Serialize)]
struct CheckOut {
    ok: bool,
    report: CrosscheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<Sweep>,
}

fn check(cli: &Cli, path: &Path, cutoff: usize, seeds: Option<u64>) -> Outcome {
    let alg = load(path)?;
    let cfg = config(cli);
    let report = crosscheck(&alg, cutoff, cli.prime, &cfg)?;
    let sweep = match seeds {
        None => None,
        Some(k) => {
            let mut sweep = Sweep {
                seeds: k,
                projectives: 0,
                infinite: 0,
                mismatches: Vec::new(),
            };
            for seed in 0..k {
                let bq = random_string_algebra(&GenLimits::new(6, 10, 4, seed))?;
                let g = StringAlgebra::new(bq)
                    .map_err(|r| Failure::Invariant(format!("generated seed {seed} invalid: {:?}", r.violations)))?;
                for c in crosscheck(&g, cutoff, cli.prime, &cfg)?.vertices {
                    sweep.projectives += 1;
                    sweep.infinite += (c.engine == InjDim::Infinite) as usize;
                    if !consistent(c.engine, c.oracle_dim) {
                        sweep.mismatches.push(format!(
                            "seed {seed} P({}): engine {} oracle {:?}",
                            c.vertex, c.engine, c.oracle_dim
                        ));
                    }
                }
            }
            Some(sweep)
        }
    };
    let ok = report.ok() && sweep.as_ref().is_none_or(|s| s.mismatches.is_empty());
    let out = json(CheckOut { ok, report, sweep });
    if ok {
        Ok(out)
    } else {
        Err(Failure::Invariant(serde_json::to_string_pretty(&out).expect("serializes")))
    }
}

fn gen(kind: Kind, lim: GenLimits) -> Result<String, Failure> {
    let bq = match kind {
        Kind::String => random_string_algebra(&lim),
        Kind::Gentle => random_gentle_algebra(&lim),
    }
    .map_err(|e| match e {
        Error::Invariant(m) => Failure::Usage(m),
        e => Failure::Invariant(e.to_string()),
    })?;
    Ok(bq.to_string())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    if !is_prime(cli.prime) {
        return Err(Failure::Usage(format!("--prime {} is not prime", cli.prime)));
    }
    let value = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Injdim { file, vertex } => injdim(cli, file, *vertex),
        Command::Gorenstein { file } => gorenstein(cli, file),
        Command::Elis { file, vertex, trace } => elis(cli, file, *vertex, *trace),
        Command::Oracle { file, cutoff } => oracle(cli, file, *cutoff),
        Command::Check { file, cutoff, seeds } => check(cli, file, *cutoff, *seeds),
        Command::Gen {
            kind,
            seed,
            max_vertices,
            max_arrows,
            max_relation_len,
        } => {
            let lim = GenLimits::new(*max_vertices, *max_arrows, *max_relation_len, *seed);
            return gen(*kind, lim);
        }
    }?;
    Ok(serde_json::to_string_pretty(&value).expect("serializes") + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("internal failure: {m}");
            ExitCode::from(3)
        }
    }
}

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use pospace::constructions::pushout_embeddings;
use pospace::corelation::phi;
use pospace::duality::{dual_poset, upset_lattice};
use pospace::enumeration::{enumerate_corelations, enumerate_posets, enumerate_preorders_extending};
use pospace::io::{poset_json, subset_labels, to_dot, CoRelationJson, LatticeJson, MapJson, PreorderJson, PushoutJson};
use pospace::verify::{theorem_info, verify, VerificationReport, MANIFEST};
use pospace::{EnumerationBudget, Poset};

/// Environment variable overriding the default `--max-n` of `verify`.
const MAX_N_ENV: &str = "POSPACE_MAX_N";

#[derive(Parser)]
#[command(name = "pospace", version, about = "Finite ordered spaces: constructions, co-relations, duality and exhaustive checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream posets or pre-orders of a given size as JSON lines.
    #[command(group(ArgGroup::new("kind").required(true).args(["posets", "preorders"])))]
    Enumerate {
        /// Number of points of each poset.
        #[arg(long, value_name = "N")]
        posets: Option<usize>,
        /// Number of points of each pre-order.
        #[arg(long, value_name = "N")]
        preorders: Option<usize>,
        /// One representative per isomorphism class (posets only).
        #[arg(long, requires = "posets")]
        unlabeled: bool,
    },
    /// Exhaustively check a registered statement and write a JSON report.
    Verify {
        /// Theorem id from the manifest, or `all`.
        #[arg(long, value_name = "ID")]
        theorem: String,
        /// Largest instance size; defaults to $POSPACE_MAX_N, then the theorem's default.
        #[arg(long, value_name = "K")]
        max_n: Option<usize>,
        /// Worker threads.
        #[arg(long, value_name = "K", default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        parallel: u16,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Pushout of two order-embeddings with a common domain.
    Pushout {
        #[arg(long, value_name = "FILE")]
        f0: PathBuf,
        #[arg(long, value_name = "FILE")]
        f1: PathBuf,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// List every equivalence co-relation on a poset with its Φ subset.
    Corelations {
        poset: PathBuf,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Poset file: its lattice of up-sets. Lattice file: its poset of join-irreducibles.
    Dual {
        file: PathBuf,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Write the Hasse diagram of a poset or lattice file.
    Export {
        file: PathBuf,
        /// Graphviz DOT output (the only format).
        #[arg(long, required = true)]
        dot: bool,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

/// A failure with its exit status.
struct Fail {
    code: u8,
    message: String,
}

impl Fail {
    fn input(message: impl Into<String>) -> Self {
        Fail { code: 2, message: message.into() }
    }
}

type Outcome = Result<u8, Fail>;

fn main() -> ExitCode {
    let manifest: String = MANIFEST
        .iter()
        .map(|t| format!("  {:<20} {} (default max-n {}, limit {})\n", t.id, t.statement, t.default_max_n, t.max_n_limit))
        .collect();
    let command = Cli::command().after_help(format!("Theorem ids for `verify --theorem`:\n{manifest}  all"));
    let matches = command.get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Enumerate { posets, preorders, unlabeled } => enumerate(posets, preorders, unlabeled),
        Command::Verify { theorem, max_n, parallel, timing, output } => {
            run_verify(&theorem, max_n, parallel as usize, timing, output.as_deref())
        }
        Command::Pushout { f0, f1, output } => {
            let (f0, f1) = (read_json::<MapJson>(&f0)?, read_json::<MapJson>(&f1)?);
            let f0 = f0.to_map().map_err(|e| Fail::input(format!("f0: {e}")))?;
            let f1 = f1.to_map().map_err(|e| Fail::input(format!("f1: {e}")))?;
            let po = pushout_embeddings(&f0, &f1).map_err(|e| Fail::input(e.to_string()))?;
            emit_json(&PushoutJson::from_pushout(&po), output.as_deref())
        }
        Command::Corelations { poset, output } => corelations(&poset, output.as_deref()),
        Command::Dual { file, output } => match read_order_file(&file)? {
            OrderFile::Poset(p) => {
                let l = upset_lattice(&p).map_err(|e| Fail::input(e.to_string()))?;
                emit_json(&LatticeJson::from_lattice(l.lattice()), output.as_deref())
            }
            OrderFile::Lattice(l) => {
                let l = l.to_dist_lattice().map_err(|e| Fail::input(e.to_string()))?;
                emit_json(&poset_json(&dual_poset(&l)), output.as_deref())
            }
        },
        Command::Export { file, dot: _, output } => {
            let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("poset").to_string();
            let p = match read_order_file(&file)? {
                OrderFile::Poset(p) => p,
                OrderFile::Lattice(l) => l.to_lattice().map_err(|e| Fail::input(e.to_string()))?.order().clone(),
            };
            emit_text(&to_dot(&p, &name), output.as_deref())
        }
    }
}

fn enumerate(posets: Option<usize>, preorders: Option<usize>, unlabeled: bool) -> Outcome {
    let budget_err = |e: pospace::enumeration::EnumerationError| Fail::input(e.to_string());
    let items: Vec<PreorderJson> = match (posets, preorders) {
        (Some(n), _) => enumerate_posets(n, !unlabeled).map_err(budget_err)?.iter().map(poset_json).collect(),
        (None, Some(n)) => enumerate_preorders_extending(&Poset::antichain(n))
            .map_err(budget_err)?
            .iter()
            .map(PreorderJson::from_preorder)
            .collect(),
        (None, None) => unreachable!("clap requires one of --posets, --preorders"),
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for item in &items {
        let line = serde_json::to_string(item).expect("serializable");
        writeln!(out, "{line}").map_err(write_fail)?;
    }
    out.flush().map_err(write_fail)?;
    Ok(0)
}

fn run_verify(theorem: &str, max_n: Option<usize>, parallel: usize, timing: bool, output: Option<&Path>) -> Outcome {
    let env_n = match std::env::var(MAX_N_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| Fail::input(format!("{MAX_N_ENV}={v:?} is not a size")))?),
        Err(_) => None,
    };
    let ids: Vec<&str> = if theorem == "all" {
        MANIFEST.iter().map(|t| t.id).collect()
    } else {
        vec![theorem]
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    for id in ids {
        let info = theorem_info(id).ok_or_else(|| {
            let known: Vec<&str> = MANIFEST.iter().map(|t| t.id).collect();
            Fail::input(format!("unknown theorem id {id:?}; known ids: {}, all", known.join(", ")))
        })?;
        let n = max_n.or(env_n).unwrap_or(info.default_max_n);
        let budget = EnumerationBudget { parallelism: parallel, ..EnumerationBudget::with_max_n(n) };
        let mut report = verify(id, &budget).map_err(|e| Fail::input(e.to_string()))?;
        if !timing {
            report.elapsed_ms = None;
        }
        reports.push(report);
    }
    let failed = reports.iter().any(|r| !r.passed());
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("{}: {} failure(s), first: {} ({})", r.theorem_id, r.failures.len(), r.failures[0].axiom, r.failures[0].witness);
    }
    if theorem == "all" {
        emit_json(&reports, output)?;
    } else {
        emit_json(&reports[0], output)?;
    }
    Ok(if failed { 1 } else { 0 })
}

#[derive(Serialize)]
struct CoRelationEntry {
    phi: Vec<String>,
    corelation: CoRelationJson,
}

#[derive(Serialize)]
struct CoRelationListing {
    base: PreorderJson,
    count: usize,
    corelations: Vec<CoRelationEntry>,
}

fn corelations(path: &Path, output: Option<&Path>) -> Outcome {
    let base = read_poset(path)?;
    let scan = enumerate_corelations(&base).map_err(|e| Fail::input(e.to_string()))?;
    let mut entries: Vec<(Vec<usize>, CoRelationEntry)> = scan
        .corelations
        .iter()
        .map(|c| {
            let y = phi(c);
            let key: Vec<usize> = y.iter().collect();
            (key, CoRelationEntry { phi: subset_labels(base.carrier(), &y), corelation: CoRelationJson::from_corelation(c) })
        })
        .collect();
    // smaller Φ first, then lexicographic by element index
    entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let listing = CoRelationListing {
        base: poset_json(&base),
        count: entries.len(),
        corelations: entries.into_iter().map(|(_, e)| e).collect(),
    };
    emit_json(&listing, output)
}

enum OrderFile {
    Poset(Poset),
    Lattice(LatticeJson),
}

fn read_order_file(path: &Path) -> Result<OrderFile, Fail> {
    let value: Value = read_json(path)?;
    let describe = |e: serde_json::Error| Fail::input(format!("{}: {e}", path.display()));
    if value.get("bot").is_some() || value.get("top").is_some() {
        Ok(OrderFile::Lattice(serde_json::from_value(value).map_err(describe)?))
    } else {
        let p: PreorderJson = serde_json::from_value(value).map_err(describe)?;
        Ok(OrderFile::Poset(p.to_poset().map_err(|e| Fail::input(format!("{}: {e}", path.display())))?))
    }
}

fn read_poset(path: &Path) -> Result<Poset, Fail> {
    let p: PreorderJson = read_json(path)?;
    p.to_poset().map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Fail::input(format!("{}: malformed JSON: {e}", path.display())))
}

fn write_fail(e: io::Error) -> Fail {
    Fail::input(format!("write failed: {e}"))
}

fn emit_json<T: Serialize>(value: &T, output: Option<&Path>) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    emit_text(&text, output)
}

fn emit_text(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Fail::input(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(write_fail)?;
        }
    }
    Ok(0)
}

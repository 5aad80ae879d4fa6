//! The `elect-advice` command line.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::encoding::{read_advice_file, write_advice_file, AdviceFormat, BitString, EncodingError};
use crate::families::{FamilyError, FamilySpec};
use crate::graph::{GraphError, PortGraph};
use crate::oracle::{compute_advice, OracleError};
use crate::sim::{
    dphi_advice, run_election_dphi, run_election_variant, run_elect, run_generic, variant_advice,
    verify_outcome, BudgetError, ElectionOutcome, NodeResult, TimeBudget, Variant,
};
use crate::views::election_index;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error("{path}: {source}")]
    Advice {
        path: PathBuf,
        source: EncodingError,
    },
    #[error("{path}: line {line}: {msg}")]
    Outcome {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unknown bench variant {0:?}")]
    BenchVariant(String),
}

#[derive(Parser, Debug)]
#[command(name = "elect-advice", version, about = "Leader election with advice in anonymous networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Hex,
    Bits,
}

impl From<Format> for AdviceFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Hex => AdviceFormat::Hex,
            Format::Bits => AdviceFormat::Bits,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print node count, diameter and election index.
    Index { graph: PathBuf },
    /// Compute the minimum-time advice for a graph.
    Advise {
        graph: PathBuf,
        out: PathBuf,
        #[arg(long, value_enum, default_value = "bits")]
        format: Format,
    },
    /// Run minimum-time election with an advice file.
    Elect {
        graph: PathBuf,
        advice: PathBuf,
        /// Write per-node outputs here.
        #[arg(long)]
        outcome: Option<PathBuf>,
    },
    /// Run the generic algorithm with a known bound `x` on the election index.
    Generic {
        graph: PathBuf,
        x: u64,
        #[arg(long)]
        outcome: Option<PathBuf>,
    },
    /// Run large-time election variant 1-4 with constant `c`.
    ElectLarge {
        graph: PathBuf,
        variant: u8,
        c: u64,
        #[arg(long)]
        outcome: Option<PathBuf>,
    },
    /// Generate a family member from a spec file or inline `key=value` pairs.
    Gen {
        family: String,
        params: String,
        out: PathBuf,
    },
    /// Check an outcome file against a graph.
    Verify { graph: PathBuf, outcome: PathBuf },
    /// Run every `*.graph` in a directory and write a CSV table.
    Bench {
        corpus_dir: PathBuf,
        csv_out: PathBuf,
        /// Comma separated: elect, dphi, generic, election1..election4.
        #[arg(long, default_value = "elect")]
        variants: String,
        /// Constant for the election variants.
        #[arg(long, default_value_t = 2)]
        c: u64,
    },
}

/// One algorithm run on one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub graph: String,
    pub n: usize,
    pub diameter: usize,
    pub phi: Option<usize>,
    pub variant: Variant,
    pub rounds: usize,
    pub advice_bits: usize,
    pub verdict: Verdict,
    pub leader: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// Correct election that took longer than the variant's time bound.
    Late { bound: u128 },
    Fail(String),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        *self == Verdict::Ok
    }

    fn short(&self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Late { .. } => "late",
            Verdict::Fail(_) => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => f.write_str("ok"),
            Verdict::Late { bound } => write!(f, "late (bound {bound})"),
            Verdict::Fail(msg) => write!(f, "fail ({msg})"),
        }
    }
}

fn phi_text(phi: Option<usize>) -> String {
    phi.map_or_else(|| "infeasible".to_string(), |p| p.to_string())
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph={} n={} D={} phi={} variant={} rounds={} advice_bits={} verdict={}",
            self.graph,
            self.n,
            self.diameter,
            phi_text(self.phi),
            self.variant,
            self.rounds,
            self.advice_bits,
            self.verdict
        )?;
        if let Some(l) = self.leader {
            write!(f, " leader={l}")?;
        }
        Ok(())
    }
}

impl RunReport {
    /// Verifies `outcome` and checks it against the variant's time bound.
    pub fn new(name: &str, g: &PortGraph, variant: Variant, advice_bits: usize, outcome: &ElectionOutcome) -> Self {
        let phi = election_index(g).value();
        let diameter = g.diameter();
        let (verdict, leader) = match verify_outcome(g, outcome) {
            Err(e) => (Verdict::Fail(e.to_string()), None),
            Ok(leader) => {
                let budget = phi.map(|p| TimeBudget::new(variant, diameter as u64, p as u64));
                let verdict = match budget {
                    Some(Ok(b)) if !b.allows(outcome.rounds) => Verdict::Late {
                        bound: b.bound.unwrap_or(u128::MAX),
                    },
                    Some(Err(e)) => Verdict::Fail(e.to_string()),
                    _ => Verdict::Ok,
                };
                (verdict, Some(leader))
            }
        };
        RunReport {
            graph: name.to_string(),
            n: g.node_count(),
            diameter,
            phi,
            variant,
            rounds: outcome.rounds,
            advice_bits,
            verdict,
            leader,
        }
    }

    pub fn csv_record(&self) -> [String; 8] {
        [
            self.graph.clone(),
            self.n.to_string(),
            self.diameter.to_string(),
            phi_text(self.phi),
            self.variant.to_string(),
            self.rounds.to_string(),
            self.advice_bits.to_string(),
            self.verdict.short().to_string(),
        ]
    }
}

pub const CSV_HEADER: [&str; 8] = ["graph", "n", "D", "phi", "variant", "rounds", "advice_bits", "verdict"];

/// Runs `variant` on `g`, with the oracle supplying whatever advice the
/// variant needs.
pub fn run_variant(name: &str, g: &PortGraph, variant: Variant) -> Result<(RunReport, ElectionOutcome), CliError> {
    let (advice, outcome) = match variant {
        Variant::MinTime => {
            let a = compute_advice(g)?;
            let o = run_elect(g, &a.bits);
            (a.bits, o)
        }
        Variant::DPhi => {
            let phi = election_index(g).value().ok_or(OracleError::Infeasible)?;
            let a = dphi_advice(g.diameter() as u64, phi as u64);
            let o = run_election_dphi(g, &a);
            (a, o)
        }
        Variant::Generic(x) => (BitString::new(), run_generic(g, x)),
        Variant::Election { i, .. } => {
            let phi = election_index(g).value().ok_or(OracleError::Infeasible)?;
            // validates i and c up front
            TimeBudget::new(variant, 0, phi as u64)?;
            let a = variant_advice(i, phi as u64)?;
            let o = run_election_variant(g, i, &a)?;
            (a, o)
        }
    };
    Ok((RunReport::new(name, g, variant, advice.len(), &outcome), outcome))
}

pub fn read_graph(path: &Path) -> Result<PortGraph, CliError> {
    let text = read(path)?;
    PortGraph::parse_text(&text).map_err(|source| CliError::Graph {
        path: path.to_path_buf(),
        source,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `# rounds <r>`, then `v k p1 q1 ... pk qk` per node (`v fail <reason>`
/// for a node that gave up).
pub fn format_outcome(o: &ElectionOutcome) -> String {
    let mut s = format!("# rounds {}\n", o.rounds);
    for (v, r) in o.nodes.iter().enumerate() {
        match &r.output {
            Ok(seq) => {
                s.push_str(&format!("{v} {}", seq.len() / 2));
                for p in seq {
                    s.push_str(&format!(" {p}"));
                }
            }
            Err(msg) => s.push_str(&format!("{v} fail {}", msg.replace('\n', " "))),
        }
        s.push('\n');
    }
    s
}

pub fn parse_outcome(text: &str) -> Result<ElectionOutcome, (usize, String)> {
    let mut rounds = 0;
    let mut nodes: Vec<Option<NodeResult>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |m: String| (line_no, m);
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(r) = rest.trim().strip_prefix("rounds") {
                rounds = r.trim().parse().map_err(|_| err(format!("bad round count {r:?}")))?;
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let v: usize = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|_| err("node id is not a number".into()))?;
        let second = fields.next().ok_or_else(|| err("missing path length".into()))?;
        let output = if second == "fail" {
            Err(fields.collect::<Vec<_>>().join(" "))
        } else {
            let k: usize = second.parse().map_err(|_| err(format!("bad path length {second:?}")))?;
            let seq = fields
                .map(|f| f.parse::<usize>().map_err(|_| err(format!("bad port {f:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if seq.len() != 2 * k {
                return Err(err(format!("expected {} ports, found {}", 2 * k, seq.len())));
            }
            Ok(seq)
        };
        if nodes.len() <= v {
            nodes.resize(v + 1, None);
        }
        if nodes[v].is_some() {
            return Err(err(format!("node {v} listed twice")));
        }
        nodes[v] = Some(NodeResult { output, rounds: 0 });
    }
    let nodes = nodes
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or((0, format!("node {v} missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    let nodes = nodes
        .into_iter()
        .map(|r| NodeResult { rounds, ..r })
        .collect();
    Ok(ElectionOutcome { nodes, rounds })
}

fn parse_variant(s: &str, c: u64) -> Result<Variant, CliError> {
    Ok(match s {
        "elect" => Variant::MinTime,
        "dphi" => Variant::DPhi,
        "generic" => Variant::Generic(0),
        _ => match s.strip_prefix("election").and_then(|i| i.parse().ok()) {
            Some(i @ 1..=4) => Variant::Election { i, c },
            _ => return Err(CliError::BenchVariant(s.to_string())),
        },
    })
}

/// Runs every `*.graph` under `dir` with each variant; rows sorted by path.
pub fn bench(dir: &Path, variants: &[Variant]) -> Result<Vec<RunReport>, CliError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    paths.sort();
    let rows: Vec<Vec<RunReport>> = paths
        .par_iter()
        .map(|p| {
            let g = read_graph(p)?;
            let name = p.display().to_string();
            variants
                .iter()
                .map(|&v| {
                    // generic without a bound runs with x = phi
                    let v = match v {
                        Variant::Generic(0) => {
                            let phi = election_index(&g).value().unwrap_or(1);
                            Variant::Generic(phi as u64)
                        }
                        v => v,
                    };
                    match run_variant(&name, &g, v) {
                        Ok((r, _)) => Ok(r),
                        Err(CliError::Oracle(OracleError::Infeasible)) => Ok(RunReport {
                            graph: name.clone(),
                            n: g.node_count(),
                            diameter: g.diameter(),
                            phi: None,
                            variant: v,
                            rounds: 0,
                            advice_bits: 0,
                            verdict: Verdict::Fail("infeasible".into()),
                            leader: None,
                        }),
                        Err(e) => Err(e),
                    }
                })
                .collect()
        })
        .collect::<Result<_, CliError>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_csv(path: &Path, rows: &[RunReport]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.csv_record())?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn finish(report: &RunReport, outcome: &ElectionOutcome, out: Option<&Path>) -> Result<bool, CliError> {
    println!("{report}");
    if let Some(p) = out {
        write(p, &format_outcome(outcome))?;
    }
    Ok(report.verdict.is_ok())
}

/// Executes one command; `Ok(false)` means a verification did not pass.
pub fn execute(cmd: &Command) -> Result<bool, CliError> {
    match cmd {
        Command::Index { graph } => {
            let g = read_graph(graph)?;
            let phi = election_index(&g).value();
            let tail = phi.map_or_else(|| "infeasible".to_string(), |p| format!("phi={p}"));
            println!("n={} D={} {tail}", g.node_count(), g.diameter());
            Ok(true)
        }
        Command::Advise { graph, out, format } => {
            let g = read_graph(graph)?;
            let a = compute_advice(&g)?;
            write(out, &write_advice_file(&a.bits, (*format).into()))?;
            println!("phi={} advice_bits={}", a.phi, a.bits.len());
            Ok(true)
        }
        Command::Elect { graph, advice, outcome } => {
            let g = read_graph(graph)?;
            let bits = read_advice_file(&read(advice)?).map_err(|source| CliError::Advice {
                path: advice.clone(),
                source,
            })?;
            let o = run_elect(&g, &bits);
            let r = RunReport::new(&graph.display().to_string(), &g, Variant::MinTime, bits.len(), &o);
            finish(&r, &o, outcome.as_deref())
        }
        Command::Generic { graph, x, outcome } => {
            let g = read_graph(graph)?;
            let (r, o) = run_variant(&graph.display().to_string(), &g, Variant::Generic(*x))?;
            finish(&r, &o, outcome.as_deref())
        }
        Command::ElectLarge {
            graph,
            variant,
            c,
            outcome,
        } => {
            let g = read_graph(graph)?;
            let v = Variant::Election { i: *variant, c: *c };
            let (r, o) = run_variant(&graph.display().to_string(), &g, v)?;
            finish(&r, &o, outcome.as_deref())
        }
        Command::Gen { family, params, out } => {
            let p = Path::new(params);
            let text = if p.is_file() { read(p)? } else { params.clone() };
            let spec = FamilySpec::parse(Some(family), &text)?;
            let g = spec.generate_certified()?;
            write(out, &g.to_text())?;
            println!("{} n={} phi={}", spec.name(), g.node_count(), phi_text(election_index(&g).value()));
            Ok(true)
        }
        Command::Verify { graph, outcome } => {
            let g = read_graph(graph)?;
            let o = parse_outcome(&read(outcome)?).map_err(|(line, msg)| CliError::Outcome {
                path: outcome.clone(),
                line,
                msg,
            })?;
            match verify_outcome(&g, &o) {
                Ok(leader) => {
                    println!("verdict=ok leader={leader} rounds={}", o.rounds);
                    Ok(true)
                }
                Err(e) => {
                    println!("verdict=fail ({e})");
                    Ok(false)
                }
            }
        }
        Command::Bench {
            corpus_dir,
            csv_out,
            variants,
            c,
        } => {
            let vs = variants
                .split(',')
                .map(|s| parse_variant(s.trim(), *c))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = bench(corpus_dir, &vs)?;
            write_csv(csv_out, &rows)?;
            let ok = rows.iter().filter(|r| r.verdict.is_ok()).count();
            println!("{} rows, {ok} ok", rows.len());
            Ok(ok == rows.len())
        }
    }
}

/// Entry point for the binary: exit 0 on success, 1 when a verification
/// fails, 2 on errors.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

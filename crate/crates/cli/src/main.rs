use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cbc_core::constructions::{ConstructionKind, ConstructionSpec};
use cbc_core::metrics::{certified_k, girth};
use cbc_core::search::{greedy_lower, max_cbc, Budget, SeedOrder};
use cbc_core::verifier::{find_violation_with, Method, VerifyOptions};
use cbc_core::{parse_hypergraph, BoundReport, Girth, Hypergraph, WitnessReport};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cbc", version, about = "Construct, verify and search combinatorial batch codes")]
struct Cli {
    /// Worker threads for the parallel passes (default: all cores).
    #[arg(long, global = true, env = "CBC_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the explicit families and write it in the text format.
    Construct(ConstructArgs),
    /// Check the batch condition up to k and report a minimal violation.
    Verify(VerifyArgs),
    /// Girth of a simple graph and the k it certifies.
    Girth {
        /// Input file, or `-` for standard input.
        #[arg(short, long, default_value = "-")]
        input: PathBuf,
    },
    /// Largest r-uniform batch code on n vertices for parameter k.
    Search(SearchArgs),
    /// Evaluate the bound formulas as JSON.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Bipartite,
    Multipartite,
    Theta,
    Pg2,
    ErdosWitness,
    Multicopy,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    u: Option<u64>,
    #[arg(long)]
    v: Option<u64>,
    #[arg(long)]
    copies: Option<u64>,
    /// Output file (default: standard output).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Dfs,
    Bruteforce,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input file, or `-` for standard input.
    #[arg(short, long, default_value = "-")]
    input: PathBuf,
    #[arg(short, long)]
    k: usize,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Exit with status 1 when a violation is found.
    #[arg(long)]
    expect_cbc: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    k: usize,
    /// Wall-clock limit; past it the result is only a lower bound.
    #[arg(long, value_parser = positive_seconds)]
    budget_seconds: Option<f64>,
    /// Only run the greedy lower bound.
    #[arg(long)]
    greedy: bool,
    /// Write the witness here instead of after the summary.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number of seconds, got `{s}`")),
    }
}

enum Failure {
    /// Bad input files or I/O trouble.
    Usage(String),
    /// Parameters the mathematics rejects, or a violation under `--expect-cbc`.
    Domain(String),
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn read_input(path: &Path) -> Result<Hypergraph, Failure> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| usage(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    parse_hypergraph(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(usage),
    }
}

fn construct(args: &ConstructArgs) -> Result<(), Failure> {
    let kind = match args.kind {
        Kind::Bipartite => ConstructionKind::CompleteBipartite,
        Kind::Multipartite => ConstructionKind::BalancedMultipartite,
        Kind::Theta => ConstructionKind::Theta,
        Kind::Pg2 => ConstructionKind::Pg2Incidence,
        Kind::ErdosWitness => ConstructionKind::ErdosWitness,
        Kind::Multicopy => ConstructionKind::CompleteUniformMulticopy,
    };
    let mut spec = ConstructionSpec::new(kind);
    let given = [
        ("n", args.n),
        ("r", args.r),
        ("k", args.k),
        ("q", args.q),
        ("u", args.u),
        ("v", args.v),
        ("copies", args.copies),
    ];
    for (name, value) in given {
        if let Some(value) = value {
            spec = spec.with(name, value);
        }
    }
    let h = spec.build().map_err(domain)?;
    emit(args.output.as_deref(), &h.to_text())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let h = read_input(&args.input)?;
    let method = match args.method {
        MethodArg::Auto => Method::Auto,
        MethodArg::Dfs => Method::Dfs,
        MethodArg::Bruteforce => Method::BruteForce,
    };
    let opts = VerifyOptions { method, ..VerifyOptions::default() };
    let violation = find_violation_with(&h, args.k, &opts).map_err(domain)?;
    let found = violation.is_some();
    let out = match args.format {
        Format::Json => {
            let report = WitnessReport { k: args.k, violation };
            serde_json::to_string(&report).map_err(usage)? + "\n"
        }
        Format::Text => match &violation {
            None => "no violation\n".to_string(),
            Some(v) => format!(
                "violation: {} edges on {} vertices\nedges: {}\nvertices: {}\n",
                v.num_edges(),
                v.num_vertices(),
                join(v.edge_indices()),
                join(v.spanned_vertices()),
            ),
        },
    };
    emit(None, &out)?;
    if found && args.expect_cbc {
        return Err(domain(format!("not a batch code for k = {}", args.k)));
    }
    Ok(())
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn girth_cmd(input: &Path) -> Result<(), Failure> {
    let g = read_input(input)?;
    let gi = girth(&g).map_err(domain)?;
    let out = match &gi {
        Girth::Acyclic => "girth: acyclic\ncertified k: unbounded\n".to_string(),
        Girth::Cycle { length, cycle } => format!(
            "girth: {length}\ncertified k: {}\ncycle: {}\n",
            certified_k(&gi).expect("finite girth"),
            join(cycle),
        ),
    };
    emit(None, &out)
}

fn search(args: &SearchArgs) -> Result<(), Failure> {
    let res = if args.greedy {
        greedy_lower(args.n, args.r, args.k, &SeedOrder::Lexicographic)
    } else {
        let budget = args.budget_seconds.map_or_else(Budget::unlimited, Budget::seconds);
        max_cbc(args.n, args.r, args.k, &budget)
    }
    .map_err(domain)?;
    let summary =
        format!("m_value: {}\nstatus: {}\nnodes: {}\n", res.m_value, res.status.as_str(), res.nodes_explored);
    match &args.output {
        Some(path) => {
            emit(Some(path), &res.witness.to_text())?;
            emit(None, &summary)
        }
        None => emit(None, &format!("{summary}\n{}", res.witness.to_text())),
    }
}

fn bounds(n: u64, r: u64, k: u64) -> Result<(), Failure> {
    let report = BoundReport::new(n, r, k);
    let json = serde_json::to_string_pretty(&report).map_err(usage)?;
    emit(None, &(json + "\n"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(usage)?;
    }
    match &cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
        Command::Girth { input } => girth_cmd(input),
        Command::Search(args) => search(args),
        Command::Bounds { n, r, k } => bounds(*n, *r, *k),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors by itself.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("cbc: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("cbc: {msg}");
            ExitCode::from(2)
        }
    }
}

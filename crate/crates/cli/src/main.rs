use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use twofactor_core::altcycle::BlowupSearch;
use twofactor_core::dot::{aux_to_dot, graph_to_dot};
use twofactor_core::generate::{extremal_hamilton_order, gen_extremal, gen_planted_blowup, gen_planted_blowup_in, gen_random_hamiltonian};
use twofactor_core::oracle::{brute_force_two_factors, find_hamilton_cycle, DEFAULT_ORACLE_CAP};
use twofactor_core::pipeline::{solve, theoretical_params, PipelineConfig};
use twofactor_core::transforms::DirectSearch;
use twofactor_core::{
    build_auxiliary, count_components, parse_graph_file, validate_hamiltonian, write_graph, Colour, Execution, Graph,
    HamiltonianInstance, OracleError, TwoFactor,
};

const EXIT_USAGE: u8 = 1;
const EXIT_SEARCH_FAILED: u8 = 2;
const EXIT_IMPOSSIBLE: u8 = 3;
const HAMILTON_BUDGET: u64 = 5_000_000;

#[derive(Parser)]
#[command(name = "twofactor", version, about = "2-factors with a prescribed number of cycles in Hamiltonian graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a 2-factor with exactly k cycles.
    Solve(SolveArgs),
    /// Check a cycle listing against a graph.
    Verify { graph: PathBuf, factor: PathBuf },
    /// Exhaustively list the achievable cycle counts (small graphs only).
    Oracle {
        graph: PathBuf,
        /// Largest n accepted; defaults to TWOFACTOR_ORACLE_CAP or 14.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Generate an instance in the graph text format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Inspect the auxiliary graph.
    Aux {
        graph: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        hamilton: HamiltonArg,
    },
    /// Print the constants of the asymptotic argument.
    Params {
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Write the graph, optionally with a highlighted 2-factor, as DOT.
    ExportDot {
        graph: PathBuf,
        #[arg(long)]
        factor: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct HamiltonArg {
    /// Hamilton cycle as 1-based vertices, used when the file has no H: line.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    hamilton: Option<Vec<usize>>,
}

#[derive(Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node budget per placement attempt.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    fallback_budget: Option<u64>,
    #[arg(long)]
    no_fallback: bool,
    /// Skip the exhaustive confirmation after a failed search.
    #[arg(long)]
    no_oracle: bool,
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also write the cycles in the verify input format.
    #[arg(long)]
    factor_out: Option<PathBuf>,
    #[command(flatten)]
    hamilton: HamiltonArg,
}

#[derive(Subcommand)]
enum GenKind {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Planted {
        #[arg(long, default_value_t = 4)]
        pattern_len: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Host size; smallest comfortable size when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify { graph, factor } => cmd_verify(&graph, &factor),
        Command::Oracle { graph, cap } => {
            let g = read_graph(&graph)?.graph;
            let result = brute_force_two_factors(&g, cap.unwrap_or_else(oracle_cap))?;
            println!("{}", serde_json::to_string_pretty(&result)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { kind } => cmd_gen(kind),
        Command::Aux { graph, dot, hamilton } => {
            let inst = resolve_instance(&graph, &hamilton)?;
            let aux = build_auxiliary(inst);
            for colour in [Colour::Red, Colour::Blue] {
                println!(
                    "{colour}: {} edges, min degree {}",
                    aux.edge_count(colour),
                    aux.min_degree(colour)
                );
            }
            if let Some(path) = dot {
                fs::write(&path, aux_to_dot(&aux)).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Params { epsilon, k, n } => {
            let p = theoretical_params(epsilon, k, n)?;
            println!("{}", serde_json::to_string_pretty(&p)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportDot { graph, factor, out } => {
            let g = read_graph(&graph)?.graph;
            let f = factor.map(|p| read_factor(&g, &p)).transpose()?;
            emit(out.as_deref(), &graph_to_dot(&g, f.as_ref()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn oracle_cap() -> usize {
    std::env::var("TWOFACTOR_ORACLE_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_ORACLE_CAP)
}

fn read_graph(path: &Path) -> Result<twofactor_core::GraphFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph_file(&text).with_context(|| format!("parsing {}", path.display()))
}

/// H: line, then --hamilton, then search.
fn resolve_instance(path: &Path, arg: &HamiltonArg) -> Result<HamiltonianInstance> {
    let file = read_graph(path)?;
    let order = match (file.hamilton, &arg.hamilton) {
        (Some(h), _) => h,
        (None, Some(h)) => {
            if h.contains(&0) {
                bail!("--hamilton takes 1-based vertices");
            }
            h.iter().map(|v| v - 1).collect()
        }
        (None, None) => match find_hamilton_cycle(&file.graph, HAMILTON_BUDGET) {
            Ok(h) => h,
            Err(OracleError::NoHamiltonCycle { exhaustive: true, .. }) => bail!("no Hamilton cycle found (exhaustive)"),
            Err(OracleError::NoHamiltonCycle { budget, .. }) => {
                bail!("no Hamilton cycle found within {budget} nodes (budget exhausted)")
            }
            Err(e) => return Err(e.into()),
        },
    };
    Ok(validate_hamiltonian(file.graph, order)?)
}

/// One cycle per line, 1-based vertices; an optional `i:` prefix is ignored.
fn parse_factor(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        let line = line.split_once(':').map_or(line, |(_, rest)| rest).trim();
        if line.is_empty() {
            continue;
        }
        let cycle = line
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => bail!("line {}: bad vertex {t:?}", no + 1),
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
    }
    Ok(cycles)
}

fn read_factor(graph: &Graph, path: &Path) -> Result<TwoFactor> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(TwoFactor::from_cycles(graph, parse_factor(&text)?)?)
}

fn format_cycles(f: &TwoFactor, numbered: bool) -> String {
    let mut out = String::new();
    for (i, c) in f.cycles().iter().enumerate() {
        let vs: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
        if numbered {
            out.push_str(&format!("{}: ", i + 1));
        }
        out.push_str(&vs.join(" "));
        out.push('\n');
    }
    out
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_verify(graph: &Path, factor: &Path) -> Result<ExitCode> {
    let g = read_graph(graph)?.graph;
    let f = read_factor(&g, factor)?;
    println!("components: {}", count_components(&f));
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    let inst = Arc::new(resolve_instance(&args.graph, &args.hamilton)?);
    let defaults = PipelineConfig::default();
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let config = PipelineConfig {
        target_k: args.k as usize,
        epsilon: args.epsilon,
        seed: args.seed,
        fallback_enabled: !args.no_fallback,
        blowup: BlowupSearch { exec, ..defaults.blowup },
        embed: DirectSearch { budget: args.budget.unwrap_or(defaults.embed.budget), shuffle_seed: None },
        fallback_budget: args.fallback_budget.unwrap_or(defaults.fallback_budget),
        ..defaults
    };
    match solve(Arc::clone(&inst), &config) {
        Ok(sol) => {
            print!("{}", format_cycles(&sol.factor, true));
            if let Some(p) = &args.factor_out {
                fs::write(p, format_cycles(&sol.factor, false)).with_context(|| format!("writing {}", p.display()))?;
            }
            write_report(args.report.as_deref(), &sol.report)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(failure) => {
            let mut report = *failure.report;
            eprintln!("search failed: {}", failure.error);
            for d in &report.diagnostics {
                eprintln!("  {d}");
            }
            let k = config.target_k;
            let cap = oracle_cap();
            let mut code = EXIT_SEARCH_FAILED;
            if !args.no_oracle && inst.n() <= cap {
                let oracle = brute_force_two_factors(inst.graph(), cap)?;
                let achievable: Vec<String> = oracle.achievable.iter().map(usize::to_string).collect();
                let line = if oracle.contains(k) {
                    format!("oracle: a 2-factor with {k} cycles exists (achievable: {})", achievable.join(" "))
                } else {
                    code = EXIT_IMPOSSIBLE;
                    format!("oracle: no 2-factor with {k} cycles exists (achievable: {})", achievable.join(" "))
                };
                eprintln!("{line}");
                report.diagnostics.push(line);
            }
            write_report(args.report.as_deref(), &report)?;
            Ok(ExitCode::from(code))
        }
    }
}

fn write_report(path: Option<&Path>, report: &twofactor_core::RunReport) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn cmd_gen(kind: GenKind) -> Result<ExitCode> {
    match kind {
        GenKind::Random { n, delta, seed, out } => {
            let inst = gen_random_hamiltonian(n, delta, seed)?;
            emit(out.as_deref(), &write_graph(inst.graph(), Some(inst.order())))?;
        }
        GenKind::Extremal { n, k, out } => {
            let g = gen_extremal(n, k)?;
            let order = extremal_hamilton_order(n, k)?;
            emit(out.as_deref(), &write_graph(&g, Some(&order)))?;
        }
        GenKind::Planted { pattern_len, t, noise, seed, n, certificate, out } => {
            let (inst, cert) = match n {
                Some(n) => gen_planted_blowup_in(n, pattern_len, t, noise, seed)?,
                None => gen_planted_blowup(pattern_len, t, noise, seed)?,
            };
            emit(out.as_deref(), &write_graph(inst.graph(), Some(inst.order())))?;
            if let Some(p) = certificate {
                fs::write(&p, serde_json::to_string_pretty(&cert)?).with_context(|| format!("writing {}", p.display()))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

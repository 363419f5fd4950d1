use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alliance_core::alliance::{check_defensive, check_instance_solution, AllianceInstance, InstanceParams};
use alliance_core::graph::{parse_edge_list, write_edge_list, Graph, VertexSet};
use alliance_core::harness::{
    gen_cycle_diagram, gen_grid, gen_random_circle, gen_random_ds, gen_random_graph, gen_random_mrss,
    gen_random_phs, gen_random_strings, gen_random_vc3, run_equiv_check, run_lift_check, run_roundtrip_check,
    suite, CheckReport, SuiteConfig, Verdict,
};
use alliance_core::reductions::{Choice, ReductionKind, Source, Witness};
use alliance_core::solvers::{
    solve_branching, solve_bruteforce, solve_by_twin_orbits, solve_via_vertex_cover, SearchBudget, SolveOutcome,
};
use alliance_core::source::SourceInstance;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_NONE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

/// Offensive alliance verification, exact solving and executable reductions.
#[derive(Parser)]
#[command(name = "alliance", version)]
struct Cli {
    /// Seed for generators and construction choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Candidate sets or branch nodes a search may visit.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_nodes: u64,
    /// Wall-clock limit of a search, in seconds.
    #[arg(long, global = true, default_value_t = 60.0)]
    budget_secs: f64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a vertex set against an instance (exit 0 valid, 1 not).
    Verify(VerifyArgs),
    /// Find a minimum alliance (exit 0 found, 3 none within r, 4 budget).
    Solve(SolveArgs),
    /// Build the target instance of a reduction.
    Reduce(ReduceArgs),
    /// Run one tier of the reduction checks.
    Check {
        #[arg(value_enum)]
        tier: TierArg,
        #[command(flatten)]
        args: CheckArgs,
    },
    /// Generate a random or structured instance.
    Gen(GenArgs),
    /// Run lift, round-trip and equivalence checks on every reduction.
    Suite {
        /// Random cases per reduction.
        #[arg(long, default_value_t = 5)]
        cases: usize,
        /// Cases per reduction that also get the equivalence tier.
        #[arg(long, default_value_t = 1)]
        equiv_cases: usize,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Edge-list file ("n m" then one "u v" per line).
    #[arg(long)]
    graph: PathBuf,
    /// Size bound.
    #[arg(long)]
    r: Option<usize>,
    /// Required slack of the offensive inequality.
    #[arg(long, default_value_t = 1)]
    strength: i64,
    /// Comma-separated vertices barred from the solution.
    #[arg(long, value_parser = parse_set, default_value = "")]
    forbidden: VertexSet,
    /// Comma-separated vertices the solution must contain.
    #[arg(long, value_parser = parse_set, default_value = "")]
    necessary: VertexSet,
    /// Ask for size exactly r.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Comma-separated candidate set.
    #[arg(long, value_parser = parse_set)]
    set: VertexSet,
    /// Check the defensive condition instead.
    #[arg(long)]
    defensive: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Branch,
    Vc,
    Orbit,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "branch")]
    method: Method,
}

#[derive(Args)]
struct ReduceArgs {
    /// Reduction name, e.g. vc-split.
    name: ReductionKind,
    /// Source instance (JSON, tagged by "kind").
    #[arg(long = "in")]
    input: PathBuf,
    /// Target graph as an edge list.
    #[arg(long)]
    out: PathBuf,
    /// Identifier-to-role map (JSON).
    #[arg(long)]
    roles: Option<PathBuf>,
    /// Parameters, stages and structural claims (JSON).
    #[arg(long)]
    provenance: Option<PathBuf>,
    /// Full target instance as an "alliance" JSON instance, usable as input
    /// to the next stage.
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Lift,
    Roundtrip,
    Equiv,
}

#[derive(Args)]
struct CheckArgs {
    name: ReductionKind,
    #[arg(long = "in")]
    input: PathBuf,
    /// Source witness (JSON such as {"subset": [0, 2]}); the oracle is used
    /// when absent.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Graph,
    Vc3,
    Mrss,
    Phs,
    Strings,
    CycleDiagram,
    Circle,
    Grid,
    Ds,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Vertices, vectors, string length or chords.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Dimension, grid side, number of strings; grid width.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Edge probability.
    #[arg(long, default_value_t = 0.4)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    max_entry: u64,
    /// Family size.
    #[arg(long, default_value_t = 3)]
    sets: usize,
    /// Distance bound.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Grid height.
    #[arg(long, default_value_t = 3)]
    h: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_set(s: &str) -> Result<VertexSet, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn pretty<T: Serialize>(x: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(x)?)
}

fn load_instance(args: &InstanceArgs) -> Result<AllianceInstance> {
    let graph: Graph = parse_edge_list(&read(&args.graph)?)?;
    let params = InstanceParams {
        r: args.r.unwrap_or(graph.order()),
        strength: args.strength,
        forbidden: args.forbidden.clone(),
        necessary: args.necessary.clone(),
        exact: args.exact,
    };
    Ok(AllianceInstance::with_constraints(graph, &params)?)
}

fn source(path: &Path) -> Result<Source> {
    Ok(Source::Problem(read_json::<SourceInstance>(path)?))
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<u8> {
    let inst = load_instance(&args.instance)?;
    let report = if args.defensive {
        check_defensive(&inst.graph, &args.set)
    } else {
        check_instance_solution(&inst, &args.set)
    };
    if cli.json {
        println!("{}", pretty(&report)?);
    } else if report.is_valid() {
        println!("valid");
    } else {
        for v in &report.violations {
            println!(
                "vertex {}: {} inside, {} outside, slack {} required",
                v.vertex, v.inside, v.outside, v.required_slack
            );
        }
        for f in &report.constraint_failures {
            println!("{}", serde_json::to_string(f)?);
        }
    }
    Ok(if report.is_valid() { 0 } else { EXIT_FAIL })
}

fn solve(cli: &Cli, args: &SolveArgs, budget: &SearchBudget) -> Result<u8> {
    let inst = load_instance(&args.instance)?;
    let outcome = match args.method {
        Method::Brute => solve_bruteforce(&inst, budget),
        Method::Branch => solve_branching(&inst, budget),
        Method::Orbit => solve_by_twin_orbits(&inst, budget),
        Method::Vc => {
            if inst.strength != 1 || !inst.forbidden.is_empty() || !inst.necessary.is_empty() || inst.exact {
                bail!("--method vc solves the plain problem only (strength 1, no constraints)");
            }
            solve_via_vertex_cover(&inst.graph, budget)
        }
    };
    if cli.json {
        println!("{}", pretty(&outcome)?);
    } else {
        match &outcome {
            SolveOutcome::Found { solution, size } => {
                let ids: Vec<String> = solution.iter().map(ToString::to_string).collect();
                println!("found size {size}: {}", ids.join(","));
            }
            SolveOutcome::NoneWithinBound => println!("no alliance within r = {}", inst.r),
            SolveOutcome::BudgetExhausted { explored } => println!("budget exhausted after {explored}"),
        }
    }
    Ok(match outcome {
        SolveOutcome::Found { .. } => 0,
        SolveOutcome::NoneWithinBound => EXIT_NONE,
        SolveOutcome::BudgetExhausted { .. } => EXIT_BUDGET,
    })
}

#[derive(Serialize)]
struct ProvenanceFile<'a> {
    #[serde(flatten)]
    provenance: &'a alliance_core::reductions::Provenance,
    order: usize,
    edges: usize,
    strength: i64,
    modulator: &'a VertexSet,
    claims: &'a alliance_core::reductions::StructuralClaims,
    diagram: Option<&'a alliance_core::graph::ChordDiagram>,
}

fn reduce(cli: &Cli, args: &ReduceArgs) -> Result<u8> {
    let src = source(&args.input)?;
    let mut choice = cli.seed.map_or_else(Choice::lowest, Choice::seeded);
    let ri = args.name.reduce(&src, &mut choice)?;
    write(&args.out, &write_edge_list(&ri.instance.graph)?)?;
    if let Some(path) = &args.roles {
        write(path, &pretty(&ri.role_table()?)?)?;
    }
    let prov = ProvenanceFile {
        provenance: &ri.provenance,
        order: ri.instance.graph.order(),
        edges: ri.instance.graph.edge_count(),
        strength: ri.instance.strength,
        modulator: &ri.modulator,
        claims: &ri.claims,
        diagram: ri.diagram.as_ref(),
    };
    if let Some(path) = &args.provenance {
        write(path, &pretty(&prov)?)?;
    }
    if let Some(path) = &args.instance {
        write(path, &pretty(&SourceInstance::Alliance(ri.alliance_spec()?))?)?;
    }
    if cli.json {
        println!("{}", pretty(&prov)?);
    } else {
        println!(
            "{}: {} vertices, {} edges, r = {}, strength {}",
            args.name,
            prov.order,
            prov.edges,
            ri.instance.r,
            ri.instance.strength
        );
    }
    Ok(0)
}

fn exit_for(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.verdict == Verdict::Budget) {
        EXIT_BUDGET
    } else {
        0
    }
}

fn print_report(r: &CheckReport) {
    let verdict = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Budget => "budget",
    };
    let tier = serde_json::to_value(r.tier).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let seed = r.seed.map_or(String::new(), |s| format!(" seed {s}"));
    println!("{verdict:6} {:13} {tier:9}{seed} ({:.3}s)", r.reduction, r.wall_seconds);
    if r.verdict == Verdict::Fail {
        for d in r.details.iter().filter(|d| !d.passed) {
            println!("       {}: {}", d.check, d.value);
        }
    }
}

fn check(cli: &Cli, tier: TierArg, args: &CheckArgs, budget: &SearchBudget) -> Result<u8> {
    let src = source(&args.input)?;
    let witness: Option<Witness> = args.witness.as_deref().map(read_json).transpose()?;
    let report = match tier {
        TierArg::Lift => run_lift_check(args.name, &src, witness.as_ref(), cli.seed)?,
        TierArg::Roundtrip => run_roundtrip_check(args.name, &src, witness.as_ref(), cli.seed)?,
        TierArg::Equiv => run_equiv_check(args.name, &src, budget, cli.seed)?,
    };
    if cli.json {
        println!("{}", pretty(&report)?);
    } else {
        print_report(&report);
    }
    Ok(exit_for(std::slice::from_ref(&report)))
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<u8> {
    let seed = cli.seed.unwrap_or(0);
    let text = match args.kind {
        GenKind::Graph => write_edge_list(&gen_random_graph(args.n, args.p, seed)?)?,
        kind => {
            let inst = match kind {
                GenKind::Vc3 => SourceInstance::VertexCover(gen_random_vc3(args.n, seed)?),
                GenKind::Mrss => SourceInstance::Mrss(gen_random_mrss(args.k, args.n, args.max_entry, seed)?),
                GenKind::Phs => SourceInstance::Phs(gen_random_phs(args.k, args.sets, seed)?),
                GenKind::Strings => SourceInstance::ClosestString(gen_random_strings(args.k, args.n, args.d, seed)?),
                GenKind::CycleDiagram => SourceInstance::CircleDs(gen_cycle_diagram(args.n)?),
                GenKind::Circle => SourceInstance::CircleDs(gen_random_circle(args.n, seed)?),
                GenKind::Grid => SourceInstance::DominatingSet(gen_grid(args.k, args.h)?),
                GenKind::Ds => SourceInstance::DominatingSet(gen_random_ds(args.n, args.p, seed)?),
                GenKind::Graph => unreachable!(),
            };
            pretty(&inst)? + "\n"
        }
    };
    match &args.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn run_suite(cli: &Cli, cases: usize, equiv_cases: usize, budget: SearchBudget) -> Result<u8> {
    let config = SuiteConfig { seed: cli.seed.unwrap_or(0), cases, equiv_cases, budget };
    let reports = suite(&config)?;
    if cli.json {
        println!("{}", pretty(&reports)?);
    } else {
        for r in &reports {
            print_report(r);
        }
        let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
        println!(
            "{} checks: {} pass, {} fail, {} budget",
            reports.len(),
            count(Verdict::Pass),
            count(Verdict::Fail),
            count(Verdict::Budget)
        );
    }
    // Budget verdicts are expected for the larger constructions.
    Ok(if reports.iter().any(|r| r.verdict == Verdict::Fail) { EXIT_FAIL } else { 0 })
}

fn run(cli: &Cli) -> Result<u8> {
    let budget = SearchBudget::new(cli.budget_nodes, cli.budget_secs);
    match &cli.command {
        Command::Verify(args) => verify(cli, args),
        Command::Solve(args) => solve(cli, args, &budget),
        Command::Reduce(args) => reduce(cli, args),
        Command::Check { tier, args } => check(cli, *tier, args, &budget),
        Command::Gen(args) => gen(cli, args),
        Command::Suite { cases, equiv_cases } => run_suite(cli, *cases, *equiv_cases, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

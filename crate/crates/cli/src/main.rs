//! `treeskel`: skeletons, clique numbers, exact solvers and verification
//! checks for spanning tree polytopes with leaf and degree constraints.
//!
//! Exit codes: 0 success, 1 verification counterexample (or solver
//! disagreement), 2 argument error, 3 resource limit, 4 I/O, 5 infeasible
//! instance.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use treeskel::clique::clique_number;
use treeskel::constructions::{
    clique_bound, hp_vertex_set, tsp_vertex_set, verify_dc_projection, verify_dc_transfer, verify_hp_tsp_merge,
    verify_lc_projection, verify_lc_transfer, BoundTheorem, DegreeFamilySpec, LeafFamilySpec,
};
use treeskel::graph::DEFAULT_MAX_N;
use treeskel::skeleton::{
    build_skeleton, clique_csv_row, integral_hull_check, skeleton_dot, skeleton_json, AdjacencyOracle,
    Family, SkeletonGraph, VertexSet, CLIQUE_CSV_HEADER, DEFAULT_PAIR_BUDGET, HULL_CHECK_MAX_N,
};
use treeskel::solvers::{model_feasible_set_check, solve_bnb, solve_enumerate, SolveOutcome, Variant};
use treeskel::GraphInstance;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] treeskel::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(treeskel::Error::ResourceLimit { .. }) => 3,
            CliError::Core(treeskel::Error::ContractViolation(_)) => 1,
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Io { .. } => 4,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "treeskel", version, about = "Spanning tree polytope skeletons, clique numbers and exact solvers")]
struct Cli {
    /// Worker threads for independent adjacency tests (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest n for which all spanning trees may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the 1-skeleton of a family's polytope.
    Skeleton(SkeletonArgs),
    /// Clique number of a family's skeleton, as a CSV row.
    Clique(SkeletonArgs),
    /// Solve a minimum spanning tree variant exactly.
    Solve(SolveArgs),
    /// Run one of the verification checks; exit 0 iff no counterexample.
    Verify(VerifyArgs),
    /// Evaluate a clique number lower bound.
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Mst,
    Lcmst,
    Rlsmst,
    Svmst,
    Dcmst,
    Hp,
    Tsp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Lp,
    EdgeExchange,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Number of vertices of K_n.
    #[arg(long)]
    n: Option<usize>,
    /// Leaf or degree bound.
    #[arg(long)]
    k: Option<usize>,
    /// Vertex subset U, comma separated (e.g. 0,1,2).
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Instance JSON (n, weights, optional subset).
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SkeletonArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[command(flatten)]
    problem: ProblemArgs,
    /// Path endpoints for --family hp.
    #[arg(long)]
    u: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long, value_enum, default_value = "lp")]
    oracle: OracleArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Maximum number of vertex pairs to test.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    pair_budget: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Mst,
    Lcmst,
    Rlsmst,
    Svmst,
    Dcmst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Enumerate,
    Bnb,
    Both,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[command(flatten)]
    problem: ProblemArgs,
    /// Seed for random rational weights p/q, p in [1,100], q in [1,10].
    #[arg(long)]
    seed: Option<u64>,
    /// All weights 1 instead of random ones.
    #[arg(long, conflicts_with = "seed")]
    unit_weights: bool,
    #[arg(long, value_enum, default_value = "both")]
    method: MethodArg,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Hrep,
    MstClique,
    LcProjection,
    DcProjection,
    LcAdjacency,
    DcAdjacency,
    HpTspMerge,
    IpFeasibleSet,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: CheckArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Leaves hung at the first hub for lc-adjacency (default: 1).
    #[arg(long)]
    on_u: Option<usize>,
    /// Path endpoints for hp-tsp-merge (default: 0 and n-1).
    #[arg(long)]
    u: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    /// Variant for ip-feasible-set.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Drop the leaf repair rows (ip-feasible-set).
    #[arg(long)]
    no_repair: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Lcmst,
    Rlsmst,
    Svmst,
    Dcmst,
    Tsp,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// |U| for rlsmst and svmst.
    #[arg(long)]
    subset_size: Option<usize>,
}

/// Tool version, command line and seed, attached to every output.
fn provenance(seed: Option<u64>) -> Value {
    let args: Vec<String> = std::env::args().collect();
    json!({
        "tool": format!("treeskel {}", env!("CARGO_PKG_VERSION")),
        "command": args.join(" "),
        "seed": seed,
    })
}

fn provenance_lines(seed: Option<u64>) -> String {
    let p = provenance(seed);
    let mut s = format!("{}\ncommand: {}", p["tool"].as_str().unwrap_or_default(), p["command"].as_str().unwrap_or_default());
    if let Some(seed) = seed {
        s.push_str(&format!("\nseed: {seed}"));
    }
    s
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(mut doc: Value, seed: Option<u64>, output: Option<&Path>) -> CliResult<()> {
    doc["provenance"] = provenance(seed);
    let text = serde_json::to_string_pretty(&doc).expect("JSON serializes");
    emit(&format!("{text}\n"), output)
}

fn read_instance(path: &Path) -> CliResult<GraphInstance> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(GraphInstance::from_json(&text)?)
}

/// `n` and `U` from the flags, or from the instance file when given.
fn resolve_problem(p: &ProblemArgs) -> CliResult<(usize, Option<GraphInstance>, Option<BTreeSet<usize>>)> {
    let instance = p.instance.as_deref().map(read_instance).transpose()?;
    let n = match (&instance, p.n) {
        (Some(g), Some(n)) if g.n() != n => {
            return Err(usage(format!("--n {n} disagrees with the instance ({} vertices)", g.n())))
        }
        (Some(g), _) => g.n(),
        (None, Some(n)) => n,
        (None, None) => return Err(usage("either --n or --instance is required")),
    };
    let subset = match (&p.subset, &instance) {
        (Some(s), _) => Some(s.iter().copied().collect()),
        (None, Some(g)) => g.subset().cloned(),
        (None, None) => None,
    };
    Ok((n, instance, subset))
}

fn need<T>(value: Option<T>, flag: &str, what: &str) -> CliResult<T> {
    value.ok_or_else(|| usage(format!("{flag} is required for {what}")))
}

fn family_vertex_set(a: &SkeletonArgs, max_n: usize) -> CliResult<VertexSet> {
    let (n, _, subset) = resolve_problem(&a.problem)?;
    let k = a.problem.k;
    let name = format!("--family {:?}", a.family).to_lowercase();
    let family = match a.family {
        FamilyArg::Mst => Family::Mst,
        FamilyArg::Lcmst => Family::Lcmst { k: need(k, "--k", &name)? },
        FamilyArg::Dcmst => Family::Dcmst { k: need(k, "--k", &name)? },
        FamilyArg::Rlsmst => Family::Rlsmst {
            subset: need(subset, "--subset", &name)?,
            k: need(k, "--k", &name)?,
        },
        FamilyArg::Svmst => Family::Svmst {
            subset: need(subset, "--subset", &name)?,
        },
        FamilyArg::Hp => {
            check_n(n, max_n)?;
            let ground = (0..n).collect();
            return Ok(hp_vertex_set(n, &ground, a.u.unwrap_or(0), a.w.unwrap_or(n.saturating_sub(1)))?);
        }
        FamilyArg::Tsp => {
            check_n(n, max_n)?;
            return Ok(tsp_vertex_set(n, &(0..n).collect())?);
        }
    };
    Ok(VertexSet::for_family(n, family, max_n)?)
}

fn check_n(n: usize, max_n: usize) -> CliResult<()> {
    if n > max_n {
        return Err(treeskel::Error::ResourceLimit {
            what: "vertices",
            requested: n,
            cap: max_n,
        }
        .into());
    }
    Ok(())
}

fn oracle_of(a: OracleArg) -> AdjacencyOracle {
    match a {
        OracleArg::Lp => AdjacencyOracle::Lp,
        OracleArg::EdgeExchange => AdjacencyOracle::EdgeExchange,
    }
}

fn stats_line(g: &SkeletonGraph) -> String {
    let deg = g.degrees();
    format!(
        "vertices {} edges {} min_degree {} max_degree {}",
        g.num_vertices(),
        g.num_edges(),
        deg.iter().min().copied().unwrap_or(0),
        deg.iter().max().copied().unwrap_or(0)
    )
}

fn cmd_skeleton(a: &SkeletonArgs, max_n: usize) -> CliResult<u8> {
    let vs = family_vertex_set(a, max_n)?;
    let g = build_skeleton(&vs, oracle_of(a.oracle), a.pair_budget)?;
    let out = a.output.as_deref();
    match a.format {
        Format::Json => emit_json(skeleton_json(&g, &vs), None, out)?,
        Format::Dot => emit(&skeleton_dot(&g, &vs, Some(&provenance_lines(None))), out)?,
        Format::Csv => {
            let mut text = comment_block(&provenance_lines(None));
            text.push_str("i,j\n");
            for (i, j) in g.edges() {
                text.push_str(&format!("{i},{j}\n"));
            }
            emit(&text, out)?
        }
    }
    eprintln!("{}", stats_line(&g));
    Ok(0)
}

fn comment_block(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

fn cmd_clique(a: &SkeletonArgs, max_n: usize) -> CliResult<u8> {
    let vs = family_vertex_set(a, max_n)?;
    let g = build_skeleton(&vs, oracle_of(a.oracle), a.pair_budget)?;
    let c = clique_number(&g);
    let out = a.output.as_deref();
    match a.format {
        Format::Json => emit_json(
            json!({
                "family": vs.family(),
                "n": vs.n(),
                "num_vertices": g.num_vertices(),
                "num_edges": g.num_edges(),
                "clique_number": c.size,
                "witness": c.witness,
                "witness_labels": c.witness.iter().map(|&i| vs.label(i)).collect::<Vec<_>>(),
            }),
            None,
            out,
        )?,
        Format::Csv | Format::Dot => {
            let text = format!(
                "{}{CLIQUE_CSV_HEADER}\n{}\n",
                comment_block(&provenance_lines(None)),
                clique_csv_row(&vs, &g, &c)
            );
            emit(&text, out)?
        }
    }
    eprintln!("{}", stats_line(&g));
    Ok(0)
}

fn variant_of(v: VariantArg, k: Option<usize>, subset: Option<BTreeSet<usize>>) -> CliResult<Variant> {
    let name = format!("--variant {v:?}").to_lowercase();
    Ok(match v {
        VariantArg::Mst => Variant::Mst,
        VariantArg::Lcmst => Variant::Lcmst { k: need(k, "--k", &name)? },
        VariantArg::Dcmst => Variant::Dcmst { k: need(k, "--k", &name)? },
        VariantArg::Rlsmst => Variant::Rlsmst {
            subset: need(subset, "--subset", &name)?,
            k: need(k, "--k", &name)?,
        },
        VariantArg::Svmst => Variant::Svmst {
            subset: need(subset, "--subset", &name)?,
        },
    })
}

fn cmd_solve(a: &SolveArgs, max_n: usize) -> CliResult<u8> {
    let (n, instance, subset) = resolve_problem(&a.problem)?;
    let g = match instance {
        Some(g) => g,
        None if a.unit_weights => GraphInstance::unit(n)?,
        None => match a.seed {
            Some(seed) => GraphInstance::random(n, seed)?,
            None => return Err(usage("random weights need --seed (or pass --unit-weights / --instance)")),
        },
    };
    let variant = variant_of(a.variant, a.problem.k, subset)?;
    let outcomes: Vec<SolveOutcome> = match a.method {
        MethodArg::Enumerate => vec![solve_enumerate(&g, &variant, max_n)?],
        MethodArg::Bnb => vec![solve_bnb(&g, &variant)?],
        MethodArg::Both => vec![solve_enumerate(&g, &variant, max_n)?, solve_bnb(&g, &variant)?],
    };
    let primary = outcomes.last().expect("at least one method");
    let mut doc = primary.to_json();
    let mut code = if primary.is_infeasible() { 5 } else { 0 };
    if let [e, b] = outcomes.as_slice() {
        let agree = e.weight() == b.weight();
        doc["agreement"] = json!(agree);
        doc["enumerate"] = e.to_json();
        if !agree {
            code = 1;
        }
    }
    emit_json(doc, a.seed, a.output.as_deref())?;
    Ok(code)
}

fn verdict(passed: bool) -> u8 {
    if passed {
        0
    } else {
        1
    }
}

fn cmd_verify(a: &VerifyArgs, max_n: usize) -> CliResult<u8> {
    let n = a.n;
    let (doc, passed) = match a.check {
        CheckArg::Hrep => {
            let h = integral_hull_check(n, HULL_CHECK_MAX_N)?;
            (json!({ "lemma": "hrep", "params": { "n": n }, "report": h }), h.matches)
        }
        CheckArg::MstClique => {
            let oracle = if n <= 5 { AdjacencyOracle::Lp } else { AdjacencyOracle::EdgeExchange };
            let vs = VertexSet::for_family(n, Family::Mst, max_n)?;
            let g = build_skeleton(&vs, oracle, DEFAULT_PAIR_BUDGET)?;
            let c = clique_number(&g);
            let expected = n * n / 4;
            (
                json!({
                    "lemma": "mst-clique",
                    "params": { "n": n },
                    "oracle": oracle,
                    "clique_number": c.size,
                    "expected": expected,
                    "witness": c.witness,
                }),
                c.size == expected,
            )
        }
        CheckArg::LcProjection => {
            let r = verify_lc_projection(n, a.k, max_n)?;
            (serde_json::to_value(&r).expect("report"), r.passed())
        }
        CheckArg::DcProjection => {
            let r = verify_dc_projection(n, need(a.k, "--k", "dc-projection")?, max_n)?;
            (serde_json::to_value(&r).expect("report"), r.passed())
        }
        CheckArg::LcAdjacency => {
            let k = need(a.k, "--k", "lc-adjacency")?;
            let spec = LeafFamilySpec::standard(n, k, a.on_u.unwrap_or(1))?;
            let r = verify_lc_transfer(&spec, max_n)?;
            (serde_json::to_value(&r).expect("report"), r.passed())
        }
        CheckArg::DcAdjacency => {
            let spec = DegreeFamilySpec::standard(n, need(a.k, "--k", "dc-adjacency")?)?;
            let r = verify_dc_transfer(&spec, max_n)?;
            (serde_json::to_value(&r).expect("report"), r.passed())
        }
        CheckArg::HpTspMerge => {
            check_n(n, max_n)?;
            let ground = (0..n).collect();
            let r = verify_hp_tsp_merge(n, &ground, a.u.unwrap_or(0), a.w.unwrap_or(n.saturating_sub(1)))?;
            (serde_json::to_value(&r).expect("report"), r.passed())
        }
        CheckArg::IpFeasibleSet => {
            let variant = variant_of(
                need(a.variant, "--variant", "ip-feasible-set")?,
                a.k,
                a.subset.as_ref().map(|s| s.iter().copied().collect()),
            )?;
            let r = model_feasible_set_check(n, &variant, !a.no_repair)?;
            (json!({ "lemma": "ip-feasible-set", "report": r }), r.passed())
        }
    };
    let mut doc = doc;
    doc["passed"] = json!(passed);
    emit_json(doc, None, a.output.as_deref())?;
    Ok(verdict(passed))
}

fn cmd_bound(a: &BoundArgs) -> CliResult<u8> {
    let n = || need(a.n, "--n", "this theorem");
    let k = || need(a.k, "--k", "this theorem");
    let u = || need(a.subset_size, "--subset-size", "this theorem");
    let theorem = match a.theorem {
        TheoremArg::Lcmst => BoundTheorem::Lcmst { n: n()?, k: k()? },
        TheoremArg::Rlsmst => BoundTheorem::Rlsmst {
            subset_size: u()?,
            k: k()?,
        },
        TheoremArg::Svmst => BoundTheorem::Svmst {
            n: n()?,
            subset_size: u()?,
        },
        TheoremArg::Dcmst => BoundTheorem::Dcmst { n: n()?, k: k()? },
        TheoremArg::Tsp => BoundTheorem::Tsp { n: n()? },
    };
    let b = clique_bound(theorem)?;
    let mut text = comment_block(&provenance_lines(None));
    text.push_str(&format!("clique number >= {}", b.render()));
    if b.vacuous {
        text.push_str(" (vacuous at this scale: below 1)");
    }
    text.push('\n');
    emit(&text, None)?;
    Ok(0)
}

fn run(cli: &Cli) -> CliResult<u8> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Skeleton(a) => cmd_skeleton(a, cli.max_n),
        Command::Clique(a) => cmd_clique(a, cli.max_n),
        Command::Solve(a) => cmd_solve(a, cli.max_n),
        Command::Verify(a) => cmd_verify(a, cli.max_n),
        Command::Bound(a) => cmd_bound(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

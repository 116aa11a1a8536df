mod play;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use robber_core::families::{
    complete, complete_bipartite, cycle, gn, gnk, path, random_connected_max_degree, tree_truncated,
};
use robber_core::solver::{
    is_k_locatable, metric_dimension, rlp, rls_scan, Budget, GameRules, Rlp, SolveStatus, StrategyTree, Variant,
};
use robber_core::strategies::tree_game::{bfs_tree_cop, random_tree_cop, simulate_tree, tree_evader, TreeCop};
use robber_core::strategies::{
    cycling_cop, exhaustive_adversary, extracted_cop, fixed_probe_cop, greedy_adversary, lifted_subdivision_cop,
    maxdeg3_cop, quadratic_cop, resolving_set_cop, simulate, split_greedy_cop, verify_strategy, CopStrategy, Outcome,
    RobberAdversary, Transcript, Verification,
};
use robber_core::subdivision::subdivide;
use robber_core::Graph;

#[derive(Parser)]
#[command(name = "robber", version, about = "Solve, simulate and verify the Robber Locating game")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Stop the solver after exploring this many belief states.
    #[arg(long, global = true)]
    budget_nodes: Option<usize>,
    /// Stop the solver after this many milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Free)]
    variant: VariantArg,
    /// Machine-readable output where supported.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// The robber may move to any neighbour.
    Free,
    /// The robber may not move onto a vertex probed this turn.
    Seager,
}

impl Global {
    fn variant(&self) -> Variant {
        match self.variant {
            VariantArg::Free => Variant::FreeMove,
            VariantArg::Seager => Variant::NoMoveToLastProbes,
        }
    }

    fn rules(&self, k: usize) -> GameRules {
        GameRules::with_variant(k, self.variant())
    }

    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(n) = self.budget_nodes {
            b = Budget::nodes(n);
        }
        if let Some(ms) = self.budget_ms {
            b = b.with_time(Duration::from_millis(ms));
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family as an edge list.
    Gen {
        /// complete | cycle | path | kbipartite | gnk | gn | tree | random
        family: String,
        /// Family parameters, e.g. `gnk 4 2` or `random 10 3`.
        params: Vec<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide k-locatability, or find the least such k.
    Solve {
        graph: PathBuf,
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        find_rlp: bool,
        #[arg(long)]
        kmax: Option<usize>,
        /// Write the winning strategy tree here.
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Single-probe status of each subdivision `G^{1/m}` in a range.
    ScanM {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        from: u32,
        #[arg(long)]
        to: u32,
    },
    /// Metric dimension and a minimum resolving set.
    MetricDim { graph: PathBuf },
    /// Replace every edge by a path of length m.
    Subdivide {
        graph: PathBuf,
        #[arg(short)]
        m: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Play a cop strategy against an adversarial robber.
    Simulate {
        /// Edge-list file; not needed for the tree evader.
        graph: Option<PathBuf>,
        #[command(flatten)]
        cop: CopArgs,
        /// greedy | exhaustive | tree-evader
        #[arg(long)]
        robber: String,
        #[arg(long, default_value_t = 50)]
        max_turns: u32,
        /// Search depth of the exhaustive robber; defaults to --max-turns.
        #[arg(long)]
        horizon: Option<u32>,
        /// Tree evader: degree of the infinite tree.
        #[arg(long, default_value_t = 4)]
        delta: usize,
        /// Tree evader: distance kept from the anchor.
        #[arg(long, default_value_t = 5)]
        r: u32,
        /// Write the transcript here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a cop strategy against every robber.
    Verify {
        graph: PathBuf,
        #[command(flatten)]
        cop: CopArgs,
        #[arg(long, default_value_t = 50)]
        max_turns: u32,
    },
    /// Play the robber yourself from the terminal.
    Play {
        graph: PathBuf,
        #[command(flatten)]
        cop: CopArgs,
    },
}

#[derive(Args, Clone)]
struct CopArgs {
    /// resolving | quadratic | maxdeg3 | lifted | extracted | fixed | cycling | split-greedy
    #[arg(long)]
    cop: String,
    /// Probes per turn (for lifted: of the base strategy).
    #[arg(short)]
    k: Option<usize>,
    /// Strategy tree file for extracted and lifted cops.
    #[arg(long)]
    strategy: Option<PathBuf>,
    /// Subdivision factor for the lifted cop; the graph file is the base.
    #[arg(long)]
    m: Option<u32>,
    /// Comma-separated vertex labels for the fixed cop.
    #[arg(long, value_delimiter = ',')]
    probes: Vec<String>,
}

/// Input graph with more than one component.
#[derive(Debug)]
struct Disconnected(String);

impl std::fmt::Display for Disconnected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Disconnected {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<Disconnected>().is_some() { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    match cli.command {
        Command::Gen { family, params, out } => cmd_gen(g, &family, &params, out.as_deref()),
        Command::Solve { graph, k, find_rlp, kmax, strategy_out } => {
            let graph = read_connected(&graph)?;
            if find_rlp {
                cmd_rlp(g, &graph, kmax.unwrap_or(graph.vertex_count()))
            } else {
                cmd_solve(g, &graph, k, strategy_out.as_deref())
            }
        }
        Command::ScanM { graph, from, to } => cmd_scan(g, &read_connected(&graph)?, from, to),
        Command::MetricDim { graph } => {
            let graph = read_graph(&graph)?;
            let (mu, set) = metric_dimension(&graph);
            println!("metric dimension = {mu}");
            println!("resolving set: {}", labels(&graph, &set).join(" "));
            Ok(0)
        }
        Command::Subdivide { graph, m, out } => {
            let sg = subdivide(&read_graph(&graph)?, m)?;
            emit(out.as_deref(), &sg.to_edge_list())?;
            Ok(0)
        }
        Command::Simulate { graph, cop, robber, max_turns, horizon, delta, r, out } => {
            let transcript = if robber == "tree-evader" {
                simulate_on_tree(g, &cop, delta, r, max_turns)?
            } else {
                let path = graph.ok_or_else(|| anyhow!("a graph file is required for robber `{robber}`"))?;
                let base = read_connected(&path)?;
                let (arena, mut c) = build_cop(g, &base, &cop)?;
                let rules = g.rules(c.budget());
                let mut rob: Box<dyn RobberAdversary + '_> = match robber.as_str() {
                    "greedy" => Box::new(greedy_adversary(&arena, &rules)),
                    "exhaustive" => Box::new(exhaustive_adversary(&arena, &rules, horizon.unwrap_or(max_turns))),
                    other => bail!("unknown robber `{other}` (expected greedy, exhaustive or tree-evader)"),
                };
                simulate(&arena, c.as_mut(), rob.as_mut(), &rules, max_turns)?
            };
            emit(out.as_deref(), &transcript.to_jsonl())?;
            Ok(report_outcome(&transcript))
        }
        Command::Verify { graph, cop, max_turns } => {
            let base = read_connected(&graph)?;
            let (arena, c) = build_cop(g, &base, &cop)?;
            let rules = g.rules(c.budget());
            Ok(match verify_strategy(&arena, c.as_ref(), &rules, max_turns)? {
                Verification::VerifiedWin { depth } => {
                    println!("VERIFIED_WIN depth {depth}");
                    0
                }
                Verification::Counterexample(t) => {
                    println!("COUNTEREXAMPLE");
                    print!("{}", t.to_jsonl());
                    1
                }
                Verification::HorizonExceeded => {
                    println!("HORIZON_EXCEEDED after {max_turns} turns");
                    4
                }
            })
        }
        Command::Play { graph, cop } => {
            let base = read_connected(&graph)?;
            let (arena, c) = build_cop(g, &base, &cop)?;
            let rules = g.rules(c.budget());
            play::run(&arena, c, &rules, std::io::stdin().lock(), std::io::stdout().lock())
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_connected(path: &Path) -> Result<Graph> {
    let g = read_graph(path)?;
    let comps = g.components();
    if comps.len() > 1 {
        let mut msg = format!("graph is disconnected ({} components); probe each component separately:", comps.len());
        for (i, c) in comps.iter().enumerate() {
            msg.push_str(&format!("\n  component {}: {}", i + 1, labels(&g, c).join(" ")));
        }
        return Err(Disconnected(msg).into());
    }
    Ok(g)
}

fn labels(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(g: &Global, family: &str, params: &[usize], out: Option<&Path>) -> Result<u8> {
    let arity = match family {
        "complete" | "cycle" | "path" | "gn" => 1,
        "kbipartite" | "gnk" | "tree" | "random" => 2,
        other => bail!("unknown family `{other}`"),
    };
    if params.len() != arity {
        bail!("family `{family}` takes {arity} parameter(s), got {}", params.len());
    }
    let p = |i: usize| params[i];
    let graph = match family {
        "complete" => complete(p(0)),
        "cycle" => cycle(p(0)),
        "path" => path(p(0)),
        "gn" => gn(p(0)),
        "kbipartite" => complete_bipartite(p(0), p(1)),
        "gnk" => gnk(p(0), p(1)),
        "tree" => tree_truncated(p(0), p(1)),
        _ => random_connected_max_degree(p(0), p(1), g.seed),
    }?;
    emit(out, &graph.to_edge_list())?;
    Ok(0)
}

fn cmd_solve(g: &Global, graph: &Graph, k: usize, strategy_out: Option<&Path>) -> Result<u8> {
    let r = is_k_locatable(graph, &g.rules(k), &g.budget())?;
    println!("{}", r.status);
    if let Some(d) = r.turn_bound {
        println!("turn bound: {d}");
    }
    println!("beliefs explored: {}", r.stats.beliefs);
    if let (Some(p), Some(tree)) = (strategy_out, &r.strategy) {
        fs::write(p, tree.to_text(graph)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(status_code(r.status))
}

fn cmd_rlp(g: &Global, graph: &Graph, kmax: usize) -> Result<u8> {
    let r = rlp(graph, g.variant(), kmax, &g.budget())?;
    for (k, res) in &r.attempts {
        println!("k = {k}: {}", res.status);
    }
    println!("rlp = {}", r.value);
    Ok(match r.value {
        Rlp::Exact(_) => 0,
        Rlp::ExceedsMax(_) => 1,
        Rlp::Unknown { .. } => 4,
    })
}

fn cmd_scan(g: &Global, graph: &Graph, from: u32, to: u32) -> Result<u8> {
    let rows = rls_scan(graph, g.variant(), from, to, &g.budget())?;
    if g.csv {
        println!("m,status,beliefs,elapsed_ms");
    }
    for row in &rows {
        let ms = row.elapsed.as_secs_f64() * 1000.0;
        if g.csv {
            println!("{},{},{},{ms:.3}", row.m, row.status, row.beliefs);
        } else {
            println!("m = {:<3} {:<14} beliefs {:<10} {ms:.1} ms", row.m, row.status.to_string(), row.beliefs);
        }
    }
    Ok(if rows.iter().any(|r| r.status == SolveStatus::Unknown) { 4 } else { 0 })
}

fn status_code(s: SolveStatus) -> u8 {
    match s {
        SolveStatus::Locatable => 0,
        SolveStatus::NonLocatable => 1,
        SolveStatus::Unknown => 4,
    }
}

fn report_outcome(t: &Transcript) -> u8 {
    match &t.outcome {
        Outcome::Win { vertex, turn } => {
            eprintln!("WIN: robber located at {vertex} on turn {turn}");
            0
        }
        Outcome::Escape { turns } => {
            eprintln!("ESCAPE: robber certified free after {turns} turns");
            1
        }
        Outcome::Timeout { turns } => {
            eprintln!("TIMEOUT after {turns} turns");
            4
        }
    }
}

fn load_or_solve_tree(g: &Global, graph: &Graph, args: &CopArgs) -> Result<StrategyTree> {
    if let Some(p) = &args.strategy {
        let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        return Ok(StrategyTree::from_text(graph, &text)?);
    }
    let k = args.k.ok_or_else(|| anyhow!("pass -k or --strategy"))?;
    let r = is_k_locatable(graph, &GameRules::new(k), &g.budget())?;
    r.strategy.ok_or_else(|| anyhow!("the graph is not {k}-locatable ({}), so there is no strategy tree", r.status))
}

/// The cop and the graph it plays on, which differs from `base` only for
/// the lifted cop.
fn build_cop(g: &Global, base: &Graph, args: &CopArgs) -> Result<(Graph, Box<dyn CopStrategy>)> {
    let need_k = || args.k.ok_or_else(|| anyhow!("cop `{}` needs -k", args.cop));
    let cop: Box<dyn CopStrategy> = match args.cop.as_str() {
        "resolving" => Box::new(resolving_set_cop(base)),
        "quadratic" => Box::new(quadratic_cop(base)?),
        "maxdeg3" => Box::new(maxdeg3_cop(base)?),
        "extracted" => Box::new(extracted_cop(load_or_solve_tree(g, base, args)?)),
        "fixed" => {
            if args.probes.is_empty() {
                bail!("cop `fixed` needs --probes");
            }
            Box::new(fixed_probe_cop(base.vertices_by_labels(&args.probes)?))
        }
        "cycling" => Box::new(cycling_cop(base, need_k()?)),
        "split-greedy" => Box::new(split_greedy_cop(base, need_k()?, g.variant())),
        "lifted" => {
            let m = args.m.ok_or_else(|| anyhow!("cop `lifted` needs --m"))?;
            let tree = load_or_solve_tree(g, base, args)?;
            let sg = subdivide(base, m)?;
            let cop = lifted_subdivision_cop(&sg, tree)?;
            return Ok((sg.graph().clone(), Box::new(cop)));
        }
        other => bail!("unknown cop `{other}`"),
    };
    Ok((base.clone(), cop))
}

fn simulate_on_tree(g: &Global, args: &CopArgs, delta: usize, r: u32, max_turns: u32) -> Result<Transcript> {
    let k = args.k.ok_or_else(|| anyhow!("the tree game needs -k for the cop budget"))?;
    let mut cop: Box<dyn TreeCop> = match args.cop.as_str() {
        "random" => Box::new(random_tree_cop(delta, k, g.seed)),
        "bfs" => Box::new(bfs_tree_cop(delta, k)),
        other => bail!("unknown tree cop `{other}` (expected random or bfs)"),
    };
    let mut evader = tree_evader(delta, k, r)?;
    Ok(simulate_tree(&mut evader, cop.as_mut(), max_turns)?)
}

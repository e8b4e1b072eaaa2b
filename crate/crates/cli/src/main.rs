use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use majority_paint::engine::{
    coloring_from_trace, kappa_game, play_game, verify_coloring, verify_ranked_coloring, ColoringReport, EngineConfig,
    GameTrace,
};
use majority_paint::io::{parse_coloring, parse_graph, parse_lists, parse_ranks, parse_vector, write_undirected};
use majority_paint::kernel::select_kernel;
use majority_paint::lister::{
    CliqueLister, GreedyLister, InteractiveLister, ListAssignment, ListLister, Lister, RandomLister,
};
use majority_paint::oracle::{all_permutations, rotations, solve_kappa_game, KappaState, KappaStrategy, SolveConfig};
use majority_paint::painter::{GeneralPainter, Painter, SccPainter, UndirectedPainter};
use majority_paint::spectral::{left_eigenvector, symmetrized_graph, DEFAULT_RESIDUAL_TOLERANCE};
use majority_paint::verify::{run_claim, Claim, VerifyConfig};
use majority_paint::{Rational, Scalar, UndirectedView, WeightedDigraph};

/// Ranked-majority painting games: play, verify, solve and inspect.
#[derive(Parser)]
#[command(name = "mpaint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and optionally write its trace.
    Play(PlayArgs),
    /// Run randomized and exhaustive checks of the painting guarantees.
    Verify(VerifyArgs),
    /// Solve a small kappa game exactly.
    Solve(SolveArgs),
    /// Select a kernel for a rank function on an undirected graph.
    Kernel(KernelArgs),
    /// Left eigenvector and symmetrization of a strongly connected digraph.
    Spectral(SpectralArgs),
    /// Check a coloring against tolerances or ranked lists.
    CheckColor(CheckColorArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PainterKind {
    Undirected,
    Scc,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListerKind {
    Random,
    Greedy,
    Clique,
    List,
    Interactive,
}

#[derive(Args)]
struct PlayArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Budget: one value for every vertex or a comma-separated vector.
    #[arg(long, conflicts_with_all = ["tau", "kappa"])]
    lambda: Option<String>,
    /// Fixed tolerance per presentation (kappa mode).
    #[arg(long, requires = "kappa")]
    tau: Option<String>,
    /// Presentations allowed per vertex (kappa mode).
    #[arg(long, requires = "tau")]
    kappa: Option<String>,
    #[arg(long, value_enum, default_value = "general")]
    painter: PainterKind,
    #[arg(long, value_enum, default_value = "random")]
    lister: ListerKind,
    /// List file for `--lister list`. Ranked lists need no tolerance.
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Write the game trace as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Read Lister moves from standard input.
    #[arg(long)]
    interactive: bool,
    /// Use floating point instead of exact rationals.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim to check, or `all`.
    #[arg(long, default_value = "all")]
    claim: String,
    /// Largest vertex count drawn.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryKind {
    None,
    Rotations,
    All,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tau: String,
    #[arg(long)]
    kappa: String,
    /// Print the winning strategy as a position table.
    #[arg(long)]
    witness: bool,
    /// Automorphisms to merge positions with; only for uniform tau and kappa.
    #[arg(long, value_enum, default_value = "none")]
    symmetry: SymmetryKind,
    #[arg(long)]
    max_states: Option<usize>,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long)]
    graph: PathBuf,
    /// `v:r v:r ...` inline, or a file of such pairs.
    #[arg(long)]
    ranks: String,
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct SpectralArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Print the symmetrized graph as well.
    #[arg(long)]
    symmetrized: bool,
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct CheckColorArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Colors in vertex order, inline or as a file.
    #[arg(long)]
    coloring: String,
    #[arg(long, required_unless_present = "lists")]
    tau: Option<String>,
    /// With ranks: check `mono(v) <= r(v, c(v))`. Without: list membership.
    #[arg(long)]
    lists: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Play(a) if a.float => play::<f64>(a),
        Command::Play(a) => play::<Rational>(a),
        Command::Verify(a) => verify(a),
        Command::Solve(a) => solve(a),
        Command::Kernel(a) if a.float => kernel::<f64>(a),
        Command::Kernel(a) => kernel::<Rational>(a),
        Command::Spectral(a) if a.float => spectral::<f64>(a),
        Command::Spectral(a) => spectral::<Rational>(a),
        Command::CheckColor(a) => check_color(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph<S: Scalar>(path: &Path) -> Result<WeightedDigraph<S>> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_lists<S: Scalar>(path: &Path) -> Result<ListAssignment<S>> {
    parse_lists(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Inline text, unless it names an existing file.
fn inline_or_file(value: &str) -> Result<String> {
    let path = Path::new(value);
    if path.is_file() {
        read(path)
    } else {
        Ok(value.to_string())
    }
}

fn counts(text: &str, n: usize) -> Result<Vec<u32>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parsed: Vec<u32> = parts
        .iter()
        .map(|p| p.parse().with_context(|| format!("bad count `{p}`")))
        .collect::<Result<_>>()?;
    match parsed.len() {
        1 => Ok(vec![parsed[0]; n]),
        len if len == n => Ok(parsed),
        len => bail!("expected 1 or {n} counts, found {len}"),
    }
}

fn fmt_vector<S: Scalar>(xs: &[S]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn fmt_set(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn build_painter<S: Scalar>(kind: PainterKind, g: &WeightedDigraph<S>) -> Result<Box<dyn Painter<S>>> {
    Ok(match kind {
        PainterKind::Undirected => Box::new(UndirectedPainter::new(g.clone()).context("undirected painter")?),
        PainterKind::Scc => Box::new(SccPainter::new(g).context("scc painter")?),
        PainterKind::General => Box::new(GeneralPainter::new(g.clone()).context("general painter")?),
    })
}

fn play<S: Scalar + 'static>(args: PlayArgs) -> Result<bool> {
    let g: WeightedDigraph<S> = load_graph(&args.graph)?;
    let n = g.vertex_count();
    let kappa_mode = match (&args.tau, &args.kappa) {
        (Some(t), Some(k)) => Some(kappa_game(parse_vector::<S>(t, n)?, counts(k, n)?)?),
        _ => None,
    };
    let lambda: Vec<S> = match (&kappa_mode, &args.lambda) {
        (Some(game), _) => game.lambda.clone(),
        (None, Some(l)) => parse_vector(l, n)?,
        (None, None) => vec![S::one(); n],
    };
    let kind = if args.interactive {
        ListerKind::Interactive
    } else {
        args.lister
    };
    let mut painter = build_painter(args.painter, &g)?;
    let config = EngineConfig::default().with_env_overrides();

    let mut list_lister = None;
    let trace = if let ListerKind::List = kind {
        let path = args.lists.as_ref().context("--lister list needs --lists")?;
        let lists: ListAssignment<S> = load_lists(path)?;
        let ll = list_lister.insert(match &kappa_mode {
            Some(game) => ListLister::new(lists, game.tolerance.clone())?,
            None => ListLister::ranked(lists, &g).context("without --tau the lists need ranks")?,
        });
        play_game(&g, &lambda, ll, &mut painter, &config)?
    } else {
        let mut lister: Box<dyn Lister<S>> = match kind {
            ListerKind::Random => Box::new(RandomLister::new(args.seed)),
            ListerKind::Greedy => Box::new(GreedyLister::new()),
            ListerKind::Clique => Box::new(CliqueLister::lower_bound(n.max(1))),
            _ => Box::new(InteractiveLister::new(io::stdin().lock(), io::stdout())),
        };
        if let Some(game) = &kappa_mode {
            lister = Box::new(game.wrap(lister));
        }
        play_game(&g, &lambda, &mut lister, &mut painter, &config)?
    };
    report_game(&trace, list_lister.as_ref())?;
    if let Some(path) = &args.trace {
        fs::write(path, trace.to_jsonl()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(true)
}

fn report_game<S: Scalar>(trace: &GameTrace<S>, lists: Option<&ListLister<S>>) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "winner: {}", trace.winner)?;
    writeln!(out, "rounds: {}", trace.rounds.len())?;
    for r in &trace.rounds {
        let presented: Vec<usize> = r.presented.vertices().collect();
        writeln!(
            out,
            "round {}: X = {} Y = {}",
            r.round,
            fmt_set(&presented),
            fmt_set(&r.painted)
        )?;
    }
    if let Some(c) = coloring_from_trace(trace) {
        let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        writeln!(out, "coloring: {}", parts.join(" "))?;
        if let Some(ll) = lists {
            let parts: Vec<String> = ll.list_coloring(&c).iter().map(|x| x.to_string()).collect();
            writeln!(out, "list coloring: {}", parts.join(" "))?;
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let claims: Vec<Claim> = if args.claim == "all" {
        Claim::ALL.to_vec()
    } else {
        vec![args.claim.parse()?]
    };
    let engine = EngineConfig::default().with_env_overrides();
    let mut text = String::new();
    let mut ok = true;
    for claim in claims {
        let mut config = VerifyConfig::new(claim, args.seed);
        config.engine = engine.clone();
        if let Some(t) = args.trials {
            config.trials = t;
        }
        if let Some(n) = args.n {
            config.max_n = n;
        }
        let report = run_claim(&config);
        ok &= report.passed();
        text.push_str(&report.to_string());
    }
    print!("{text}");
    if let Some(path) = &args.output {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ok)
}

fn fmt_state(state: &KappaState) -> String {
    let parts: Vec<String> = state
        .iter()
        .map(|s| s.map_or_else(|| "c".to_string(), |r| r.to_string()))
        .collect();
    format!("[{}]", parts.join(" "))
}

fn solve(args: SolveArgs) -> Result<bool> {
    let g: WeightedDigraph<Rational> = load_graph(&args.graph)?;
    let n = g.vertex_count();
    let tau: Vec<Rational> = parse_vector(&args.tau, n)?;
    let kappa = counts(&args.kappa, n)?;
    let mut config = SolveConfig {
        witness: args.witness,
        symmetries: match args.symmetry {
            SymmetryKind::None => Vec::new(),
            SymmetryKind::Rotations => rotations(n),
            SymmetryKind::All => all_permutations(n),
        },
        ..SolveConfig::default()
    };
    if let Some(m) = args.max_states {
        config.state_bound = m;
    }
    let solution = solve_kappa_game(&g, &tau, &kappa, &config)?;
    let mut out = io::stdout().lock();
    writeln!(out, "winner: {}", solution.winner)?;
    writeln!(out, "positions: {}", solution.states)?;
    match &solution.witness {
        Some(KappaStrategy::Lister(moves)) => {
            writeln!(out, "lister strategy (remaining presentations, c = colored):")?;
            for (state, x) in moves {
                writeln!(out, "{} -> present {}", fmt_state(state), fmt_set(x))?;
            }
        }
        Some(KappaStrategy::Painter(answers)) => {
            writeln!(out, "painter strategy (remaining presentations, c = colored):")?;
            for ((state, x), y) in answers {
                writeln!(out, "{} X = {} -> Y = {}", fmt_state(state), fmt_set(x), fmt_set(y))?;
            }
        }
        None => {}
    }
    Ok(true)
}

fn kernel<S: Scalar>(args: KernelArgs) -> Result<bool> {
    let g: WeightedDigraph<S> = load_graph(&args.graph)?;
    let g = UndirectedView::new(g).context("kernel selection needs a symmetric graph")?;
    let ranks = parse_ranks::<S>(&inline_or_file(&args.ranks)?)?;
    if let Some(v) = ranks.domain().find(|&v| v >= g.vertex_count()) {
        bail!("rank given for vertex {v}, graph has {}", g.vertex_count());
    }
    let cert = select_kernel(&g, &ranks);
    let mut out = io::stdout().lock();
    writeln!(out, "Y = {}", fmt_set(&cert.members))?;
    writeln!(out, "cost = {}", cert.cost)?;
    for (v, r) in ranks.iter() {
        let into = &cert.weight_into_kernel[&v];
        let side = if cert.members.contains(&v) { "in" } else { "out" };
        writeln!(out, "v{v} {side}: rank {r}, weight into Y {into}")?;
    }
    Ok(true)
}

fn spectral<S: Scalar>(args: SpectralArgs) -> Result<bool> {
    let g: WeightedDigraph<S> = load_graph(&args.graph)?;
    let t = g.normalize_out_weights()?;
    let eigen = left_eigenvector(&t, DEFAULT_RESIDUAL_TOLERANCE)?;
    let mut out = io::stdout().lock();
    writeln!(out, "x = {}", fmt_vector(&eigen.x))?;
    writeln!(out, "residual = {:e}", eigen.residual)?;
    if args.symmetrized {
        write!(out, "{}", write_undirected(&symmetrized_graph(&t, &eigen)))?;
    }
    Ok(true)
}

fn print_report<S: Scalar>(report: &ColoringReport<S>) {
    for v in &report.violations {
        println!(
            "violation: v{} monochromatic weight {} exceeds {}",
            v.vertex, v.monochromatic, v.allowed
        );
    }
    println!("{}", if report.is_ok() { "ok" } else { "violated" });
}

fn check_color(args: CheckColorArgs) -> Result<bool> {
    let g: WeightedDigraph<Rational> = load_graph(&args.graph)?;
    let n = g.vertex_count();
    let coloring = parse_coloring(&inline_or_file(&args.coloring)?)?;
    if coloring.len() != n {
        bail!("coloring has {} entries, graph has {n} vertices", coloring.len());
    }
    if coloring.contains(&0) {
        bail!("colors are positive integers");
    }
    let lists = args.lists.as_deref().map(load_lists::<Rational>).transpose()?;
    let mut ok = true;
    if let Some(lists) = &lists {
        lists.check_vertex_count(n)?;
        for (v, &c) in coloring.iter().enumerate() {
            if !lists.contains(v, c as u32) {
                println!("violation: v{v} color {c} is not in its list");
                ok = false;
            }
        }
    }
    let report = match (&args.tau, &lists) {
        (Some(t), _) => {
            let tau: Vec<Rational> = parse_vector(t, n)?;
            verify_coloring(&g, &coloring, |v, _| tau[v].clone())
        }
        (None, Some(lists)) => {
            lists.check_ranked()?;
            if !ok {
                println!("violated");
                return Ok(false);
            }
            verify_ranked_coloring(&g, &coloring, |v, c| {
                lists.rank(v, c as u32).cloned().expect("ranked, membership checked")
            })
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    print_report(&report);
    Ok(ok && report.is_ok())
}

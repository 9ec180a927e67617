use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pickroute::brute::{solve_exhaustive_with_budget, Filter, SolveError, DEFAULT_BUDGET};
use pickroute::dp::{solve_dp, DpMode};
use pickroute::rewrite::eliminate_outer_doubles;
use pickroute::tour::TourSubgraph;
use pickroute::verify::{enumerate_family, instance_hash, run_family, sample_family};
use pickroute::warehouse::{Len, PickInstance};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_PARSE: u8 = 4;

#[derive(Parser)]
#[command(name = "pickroute", about = "Exact order-picker routing in rectangular warehouses")]
struct Cli {
    /// Search budget for the exhaustive solver.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Worker threads for verification campaigns (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance to optimality and dump the witness tour.
    Solve(SolveArgs),
    /// Generate seeded random instance files named by hash.
    Generate(GenerateArgs),
    /// Remove doubled outer-subaisle runs from a tour dump.
    Rewrite(RewriteArgs),
    /// Run theorem checks over an instance family.
    Verify(VerifyArgs),
    /// Render an instance and tour as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Brute,
    Dp,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    None,
    NoOuterDoubles,
    NoDoubles,
    NoConnectingDoubles,
    NoReducibleStates,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Filter {
        match f {
            FilterArg::None => Filter::None,
            FilterArg::NoOuterDoubles => Filter::NoOuterDoubles,
            FilterArg::NoDoubles => Filter::NoDoublesAtAll,
            FilterArg::NoConnectingDoubles => Filter::NoConnectingDoubles,
            FilterArg::NoReducibleStates => Filter::NoReducibleStates,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    RestrictOuter,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (JSON).
    #[arg(short, long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "brute")]
    solver: SolverKind,
    /// Oracle search filter (brute solver only).
    #[arg(long, value_enum, default_value = "none")]
    filter: FilterArg,
    /// DP mode (dp solver only).
    #[arg(long, value_enum, default_value = "full")]
    mode: ModeArg,
    /// Tour dump destination; defaults next to the instance.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    aisles: usize,
    #[arg(long)]
    blocks: usize,
    #[arg(long)]
    cells: usize,
    #[arg(long)]
    count: usize,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RewriteArgs {
    #[arg(short, long)]
    instance: PathBuf,
    /// Tour dump to rewrite.
    #[arg(short, long)]
    tour: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// All layouts up to the bounds, all depots, pick sets up to size 3.
    Exhaustive,
    /// Seeded random instances at exactly the given bounds.
    Random,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    aisles: usize,
    #[arg(long, default_value_t = 2)]
    blocks: usize,
    #[arg(long, default_value_t = 2)]
    cells: usize,
    /// Report destination (JSON).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(short, long)]
    instance: PathBuf,
    #[arg(short, long)]
    tour: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args, cli.budget),
        Command::Generate(args) => cmd_generate(args),
        Command::Rewrite(args) => cmd_rewrite(args),
        Command::Verify(args) => cmd_verify(args, cli.budget),
        Command::Render(args) => cmd_render(args),
    }
}

fn load_instance(path: &Path) -> Result<Option<PickInstance>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match PickInstance::from_json(&text) {
        Ok(i) => Ok(Some(i)),
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            Ok(None)
        }
    }
}

fn fmt_len(l: Len) -> String {
    if l.is_integer() {
        l.to_integer().to_string()
    } else {
        format!("{}/{}", l.numer(), l.denom())
    }
}

fn cmd_solve(args: SolveArgs, budget: u128) -> Result<ExitCode> {
    let Some(instance) = load_instance(&args.instance)? else {
        return Ok(ExitCode::from(EXIT_PARSE));
    };
    let solved = match args.solver {
        SolverKind::Brute => solve_exhaustive_with_budget(&instance, args.filter.into(), budget),
        SolverKind::Dp => solve_dp(
            &instance,
            match args.mode {
                ModeArg::Full => DpMode::Full,
                ModeArg::RestrictOuter => DpMode::RestrictOuter,
            },
        ),
    };
    let solution = match solved {
        Ok(s) => s,
        Err(SolveError::Infeasible) => {
            eprintln!("infeasible under the requested filter");
            return Ok(ExitCode::from(EXIT_INFEASIBLE));
        }
        Err(e @ SolveError::BudgetExceeded { .. }) | Err(e @ SolveError::StateGuardExceeded { .. }) => {
            eprintln!("{e}");
            return Ok(ExitCode::from(EXIT_BUDGET));
        }
    };
    println!("optimal {}", fmt_len(solution.length));
    let out = args
        .out
        .unwrap_or_else(|| args.instance.with_extension("tour.json"));
    fs::write(&out, solution.tour.to_dump()).with_context(|| format!("writing {}", out.display()))?;
    println!("tour dump written to {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let one = Len::from_integer(1);
    let instances = sample_family(args.aisles, args.blocks, args.cells, args.count, args.seed, one, one);
    for instance in &instances {
        let path = args.out.join(format!("{}.json", instance_hash(instance)));
        fs::write(&path, instance.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("wrote {} instances to {}", instances.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_rewrite(args: RewriteArgs) -> Result<ExitCode> {
    let Some(instance) = load_instance(&args.instance)? else {
        return Ok(ExitCode::from(EXIT_PARSE));
    };
    let text = fs::read_to_string(&args.tour).with_context(|| format!("reading {}", args.tour.display()))?;
    let tour = match TourSubgraph::from_dump(&instance, &text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.tour.display());
            return Ok(ExitCode::from(EXIT_PARSE));
        }
    };
    let outcome = eliminate_outer_doubles(&tour)?;
    for step in &outcome.steps {
        println!(
            "{:?} on aisle {} span {}..{}",
            step.kind, step.aisle, step.top_cross, step.bottom_cross
        );
    }
    println!(
        "length {} -> {} ({} steps)",
        fmt_len(tour.tour_length()),
        fmt_len(outcome.tour.tour_length()),
        outcome.steps.len()
    );
    let out = args.out.unwrap_or_else(|| args.tour.with_extension("rewritten.json"));
    fs::write(&out, outcome.tour.to_dump()).with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs, budget: u128) -> Result<ExitCode> {
    let one = Len::from_integer(1);
    let instances = match args.family {
        FamilyArg::Exhaustive => enumerate_family(args.aisles, args.blocks, args.cells, 3, one, one),
        FamilyArg::Random => {
            sample_family(args.aisles, args.blocks, args.cells, args.samples, args.seed, one, one)
        }
    };
    let report = run_family(&instances, budget);
    fs::write(&args.out, report.to_json()).with_context(|| format!("writing {}", args.out.display()))?;
    for (check, counts) in &report.summary {
        println!("{check}: {counts:?}");
    }
    if report.all_applicable_pass() {
        println!("all applicable checks passed over {} instances", report.rows.len());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failures recorded in {}", args.out.display());
        Ok(ExitCode::from(1))
    }
}

fn cmd_render(args: RenderArgs) -> Result<ExitCode> {
    let Some(instance) = load_instance(&args.instance)? else {
        return Ok(ExitCode::from(EXIT_PARSE));
    };
    let text = fs::read_to_string(&args.tour).with_context(|| format!("reading {}", args.tour.display()))?;
    let tour = match TourSubgraph::from_dump(&instance, &text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.tour.display());
            return Ok(ExitCode::from(EXIT_PARSE));
        }
    };
    if tour.multiplicities().iter().all(|&m| m == 0) {
        bail!("tour dump is empty");
    }
    fs::write(&args.out, render_svg(&tour)).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {}", args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn render_svg(tour: &TourSubgraph<'_>) -> String {
    use pickroute::warehouse::{EdgeId, VertexId};

    let instance = tour.instance();
    let layout = instance.layout();
    let (a, b, c) = (layout.num_aisles(), layout.num_blocks(), layout.cells_per_subaisle());
    let scale = 40.0;
    let margin = 30.0;
    let step: f64 = rational_f64(layout.cell_step());

    // x position of each aisle by accumulating gaps.
    let mut xs = vec![0.0f64];
    for g in layout.aisle_gaps() {
        xs.push(xs.last().unwrap() + rational_f64(*g));
    }
    let y_of = |cross: usize, slot: usize| ((cross * (c + 1) + slot) as f64) * step;
    let pos = |v: VertexId| match v {
        VertexId::Intersection { aisle, cross_aisle } => (xs[aisle], y_of(cross_aisle, 0)),
        VertexId::Cell { aisle, subaisle, cell } => (xs[aisle], y_of(subaisle, cell)),
    };
    let px = |x: f64| margin + x * scale;
    let py = |y: f64| margin + y * scale;

    let width = px(xs[a - 1]) + margin;
    let height = py(y_of(b, 0)) + margin;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Grid skeleton, then the tour: singles as one stroke, doubles as two
    // parallel strokes.
    for e in layout.enumerate_edges() {
        let (u, v) = layout.edge_endpoints(e);
        let ((x1, y1), (x2, y2)) = (pos(u), pos(v));
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#ddd\" stroke-width=\"1\"/>\n",
            px(x1), py(y1), px(x2), py(y2)
        ));
    }
    for e in layout.enumerate_edges() {
        let m = tour.mult(e);
        if m == 0 {
            continue;
        }
        let (u, v) = layout.edge_endpoints(e);
        let ((x1, y1), (x2, y2)) = (pos(u), pos(v));
        let vertical = matches!(e, EdgeId::VerticalUnit { .. });
        let offsets: &[f64] = if m == 1 { &[0.0] } else { &[-3.0, 3.0] };
        for d in offsets {
            let (dx, dy) = if vertical { (*d, 0.0) } else { (0.0, *d) };
            svg.push_str(&format!(
                "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\" stroke-width=\"2\"/>\n",
                px(x1) + dx, py(y1) + dy, px(x2) + dx, py(y2) + dy
            ));
        }
    }
    for p in instance.picks() {
        let (x, y) = pos(*p);
        svg.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"5\" fill=\"#c00\"/>\n",
            px(x), py(y)
        ));
    }
    let (x, y) = pos(instance.depot());
    svg.push_str(&format!(
        "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"12\" height=\"12\" fill=\"#06c\"/>\n",
        px(x) - 6.0, py(y) - 6.0
    ));
    svg.push_str("</svg>\n");
    svg
}

fn rational_f64(l: Len) -> f64 {
    *l.numer() as f64 / *l.denom() as f64
}

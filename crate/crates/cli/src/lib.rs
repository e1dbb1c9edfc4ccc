//! Command-line front end for the `hadopt` solvers.
//!
//! Subcommands: `run` (solve a median or p-mean problem and write a CSV trace),
//! `distance` and `geodesic` (tree-space queries on a Newick file) and `fopt`
//! (high-accuracy reference optimum for supported instances).

pub mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use config::{
    input, lookup_preset, parse_point, parse_points, parse_space, parse_stepsize, parse_weights, read_trees,
    InputError, StepChoice,
};
use hadopt_core::experiments::{example7_1_fopt_numeric, example7_2_reference};
use hadopt_core::reference::euclidean_pmean;
use hadopt_core::solvers::{
    cyclic_proximal_median, format_sig, incremental_median, pmean_setup, stochastic_median, IndexRng, MedianProblem,
    RunOptions, RunTrace,
};
use hadopt_core::treespace::{bhv_distance, bhv_point, serialize_newick_with, PhyloTree};
use hadopt_core::{ExtensionPolicy, Point, Space};

#[derive(Debug, Parser)]
#[command(name = "hadopt", version, about = "Busemann subgradient methods on Hadamard spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a weighted median or p-mean problem and write the trace as CSV.
    Run(RunArgs),
    /// Print BHV distances between the trees of a Newick file.
    Distance(TreeFile),
    /// Print the tree at a given position on the geodesic between the first two trees of a file.
    Geodesic(GeodesicArgs),
    /// Print a high-accuracy reference optimum for the problem.
    Fopt(ProblemArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Built-in instance: example7_1 or example7_2.
    #[arg(long)]
    pub preset: Option<String>,
    /// euclidean:N, hyperbolic, spider:K, cone:S or tree.
    #[arg(long)]
    pub space: Option<String>,
    /// Newick file with the anchor trees.
    #[arg(long, value_name = "FILE")]
    pub trees: Option<PathBuf>,
    /// Semicolon-separated anchor points, e.g. "0,0;1,2" or "0:1;2:0.5".
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub anchors: Option<String>,
    /// Comma-separated weights (default: uniform).
    #[arg(long, value_name = "LIST")]
    pub weights: Option<String>,
    /// Exponent of the p-mean objective.
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// Start point (default: the basepoint, or the star tree).
    #[arg(long, value_name = "POINT", allow_hyphen_values = true)]
    pub x0: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Stochastic,
    Incremental,
    Proximal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Error,
    Clamp,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = Algorithm::Incremental)]
    pub alg: Algorithm,
    /// theory, harmonic[:C] or explicit:FILE.
    #[arg(long, default_value = "theory", value_name = "NAME[:PARAM]")]
    pub stepsize: String,
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Known optimal value; enables the gap column (presets supply their own).
    #[arg(long, allow_hyphen_values = true)]
    pub fopt: Option<f64>,
    /// Output CSV file (default: standard output).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Keep every stride-th row (the last row is always kept).
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    /// What to do when a tree-space step would pass its anchor.
    #[arg(long, value_enum, default_value_t = Policy::Error)]
    pub policy: Policy,
}

#[derive(Debug, Clone, Args)]
pub struct TreeFile {
    #[arg(long, value_name = "FILE")]
    pub trees: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GeodesicArgs {
    #[arg(long, value_name = "FILE")]
    pub trees: PathBuf,
    /// Arc length from the first tree.
    #[arg(long, conflicts_with = "frac", required_unless_present = "frac")]
    pub t: Option<f64>,
    /// Fraction of the geodesic, in [0, 1].
    #[arg(long)]
    pub frac: Option<f64>,
}

/// Exit status for an error: 2 for malformed input, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let bad_input = err.chain().any(|e| {
        e.downcast_ref::<InputError>().is_some()
            || matches!(e.downcast_ref::<hadopt_core::Error>(), Some(hadopt_core::Error::Newick { .. }))
    });
    if bad_input {
        2
    } else {
        1
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Run(args) => cmd_run(&args, out, err),
        Command::Distance(args) => cmd_distance(&args, out),
        Command::Geodesic(args) => cmd_geodesic(&args, out),
        Command::Fopt(args) => cmd_fopt(&args, out),
    }
}

/// A fully resolved median or p-mean instance.
#[derive(Debug, Clone)]
pub struct Problem {
    pub space: Space,
    pub anchors: Vec<Point>,
    pub weights: Vec<f64>,
    pub p: f64,
    pub x0: Point,
    pub f_opt: Option<f64>,
    pub preset: Option<&'static str>,
}

impl Problem {
    pub fn from_args(args: &ProblemArgs) -> Result<Problem> {
        if !(args.p >= 1.0) || !args.p.is_finite() {
            return input(format!("--p {} must be finite and >= 1", args.p));
        }
        if let Some(name) = &args.preset {
            let p = lookup_preset(name)?;
            if args.trees.is_some() || args.anchors.is_some() || args.weights.is_some() {
                return input("--preset fixes the anchors and weights; drop --trees, --anchors and --weights");
            }
            if args.space.as_deref().is_some_and(|s| s != "tree") {
                return input("presets live in tree space");
            }
            if args.p != 1.0 {
                return input("presets are median problems; --p must be 1");
            }
            let space = Space::tree(Default::default());
            let x0 = match &args.x0 {
                Some(s) => parse_point(&space, s).context("--x0")?,
                None => Point::from(p.x0.clone()),
            };
            return Ok(Problem {
                space,
                anchors: p.trees.into_iter().map(Point::from).collect(),
                weights: p.weights,
                p: 1.0,
                x0,
                f_opt: Some(p.f_opt),
                preset: Some(p.name),
            });
        }

        let space = match (&args.space, &args.trees) {
            (Some(s), _) => parse_space(s)?,
            (None, Some(_)) => Space::tree(Default::default()),
            (None, None) => return input("give --preset, --trees, or --space with --anchors"),
        };
        let anchors: Vec<Point> = match (&space, &args.trees, &args.anchors) {
            (Space::Tree(_), Some(path), None) => read_trees(path)?.into_iter().map(Point::from).collect(),
            (Space::Tree(_), _, _) => return input("tree space takes its anchors from --trees"),
            (_, None, Some(list)) => parse_points(&space, list).context("--anchors")?,
            _ => return input("this space takes its anchors from --anchors"),
        };
        if anchors.is_empty() {
            return input("no anchors given");
        }
        if let Space::Tree(_) = space {
            let first = anchors[0].as_tree().expect("tree anchors");
            if anchors.iter().any(|a| !a.as_tree().expect("tree anchors").same_leaves(first)) {
                return input("all trees must have the same leaf set");
            }
        }
        let weights = match &args.weights {
            Some(w) => parse_weights(w)?,
            None => vec![1.0 / anchors.len() as f64; anchors.len()],
        };
        if weights.len() != anchors.len() {
            return input(format!("{} weights for {} anchors", weights.len(), anchors.len()));
        }
        let x0 = match (&args.x0, &space) {
            (Some(s), _) => parse_point(&space, s).context("--x0")?,
            (None, Space::Tree(_)) => {
                let first = anchors[0].as_tree().expect("tree anchors");
                Point::from(PhyloTree::star(first.leaves())?)
            }
            (None, _) => space.basepoint()?,
        };
        if let (Point::Euclidean(a), Point::Euclidean(x)) = (&anchors[0], &x0) {
            if a.len() != x.len() {
                return input("--x0 and the anchors have different dimensions");
            }
        }
        Ok(Problem { space, anchors, weights, p: args.p, x0, f_opt: None, preset: None })
    }

    pub fn setup(&self) -> Result<MedianProblem> {
        pmean_setup(&self.space, &self.anchors, &self.weights, self.p, &self.x0)
            .map_err(|e| InputError(format!("problem setup: {e}")).into())
    }
}

/// Renders a point in the syntax accepted by `--x0`, with 12 significant digits.
pub fn format_point(p: &Point) -> String {
    let list = |v: &[f64]| v.iter().map(|x| format_sig(*x)).collect::<Vec<_>>().join(",");
    match p {
        Point::Euclidean(v) => list(v),
        Point::Hyperbolic(v) => list(v),
        Point::Spider { leg, offset } => format!("{leg}:{}", format_sig(*offset)),
        Point::Cone { sector, u, v } => format!("{sector}:{},{}", format_sig(*u), format_sig(*v)),
        Point::Tree(t) => serialize_newick_with(t, &format_sig),
    }
}

/// Runs the configured solver and returns its trace.
pub fn solve(args: &RunArgs) -> Result<(Problem, RunTrace)> {
    if args.iters == 0 {
        return input("--iters must be >= 1");
    }
    if args.stride == 0 {
        return input("--stride must be >= 1");
    }
    let mut problem = Problem::from_args(&args.problem)?;
    if args.fopt.is_some() {
        problem.f_opt = args.fopt;
    }
    let setup = problem.setup()?;
    let step = parse_stepsize(&args.stepsize)?;
    let policy = match args.policy {
        Policy::Error => ExtensionPolicy::Error,
        Policy::Clamp => ExtensionPolicy::Clamp,
    };
    let mut opts = RunOptions::new(args.iters).policy(policy);
    if let Some(f) = problem.f_opt {
        opts = opts.f_opt(f);
    }
    let schedule = match step {
        StepChoice::Theory => None,
        StepChoice::Given(s) => Some(s),
    };
    info!(
        "{:?} on {} anchors, p = {}, {} iterations, f(x0) = {}",
        args.alg,
        problem.anchors.len(),
        problem.p,
        args.iters,
        format_sig(setup.f0)
    );
    let trace = match args.alg {
        Algorithm::Stochastic => stochastic_median(&setup, &problem.x0, schedule, &mut IndexRng::new(args.seed), &opts),
        Algorithm::Incremental => incremental_median(&setup, &problem.x0, schedule, &opts),
        Algorithm::Proximal => {
            if problem.p != 1.0 {
                return input("the proximal algorithm solves median problems only (p = 1)");
            }
            let schedule = schedule.unwrap_or_else(|| setup.theory_schedule());
            cyclic_proximal_median(&setup, &problem.x0, &schedule, &opts)
        }
    }?;
    Ok((problem, trace))
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (_, trace) = solve(args)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            trace.write_csv(&mut w, args.stride)?;
            w.flush().with_context(|| format!("writing {}", path.display()))?;
        }
        None => trace.write_csv(&mut *out, args.stride)?,
    }
    writeln!(err, "f_best {}", format_sig(trace.f_best()))?;
    writeln!(err, "best {}", format_point(&trace.best_point))?;
    Ok(())
}

fn two_or_more(path: &Path) -> Result<Vec<PhyloTree>> {
    let trees = read_trees(path)?;
    if trees.len() < 2 {
        return input(format!("{} holds {} tree(s); at least 2 are needed", path.display(), trees.len()));
    }
    if trees.iter().any(|t| !t.same_leaves(&trees[0])) {
        return input(format!("trees in {} have different leaf sets", path.display()));
    }
    Ok(trees)
}

/// Two trees: their distance. More: the distance matrix, one comma-separated row per tree.
fn cmd_distance(args: &TreeFile, out: &mut dyn Write) -> Result<()> {
    let trees = two_or_more(&args.trees)?;
    if trees.len() == 2 {
        writeln!(out, "{}", format_sig(bhv_distance(&trees[0], &trees[1])?))?;
        return Ok(());
    }
    for a in &trees {
        let row = trees.iter().map(|b| bhv_distance(a, b).map(format_sig)).collect::<hadopt_core::Result<Vec<_>>>()?;
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

fn cmd_geodesic(args: &GeodesicArgs, out: &mut dyn Write) -> Result<()> {
    let trees = two_or_more(&args.trees)?;
    let d = bhv_distance(&trees[0], &trees[1])?;
    let t = match (args.t, args.frac) {
        (Some(t), _) => t,
        (None, Some(f)) if (0.0..=1.0).contains(&f) => f * d,
        (None, Some(f)) => return input(format!("--frac {f} must lie in [0, 1]")),
        (None, None) => unreachable!("clap requires --t or --frac"),
    };
    let p = bhv_point(&trees[0], &trees[1], t).map_err(|e| InputError(format!("--t: {e}")))?;
    writeln!(out, "{}", serialize_newick_with(&p, &format_sig))?;
    Ok(())
}

/// Reference optimum by the reduction available for the instance.
pub fn reference_fopt(problem: &Problem) -> Result<f64> {
    match problem.preset {
        Some("example7_1") => return Ok(example7_1_fopt_numeric()?),
        Some("example7_2") => {
            let (y, f) = example7_2_reference();
            info!("optimal spine length {}", format_sig(y));
            return Ok(f);
        }
        _ => {}
    }
    if problem.anchors.len() == 1 {
        return Ok(0.0);
    }
    let coords: Option<Vec<Vec<f64>>> = problem
        .anchors
        .iter()
        .map(|a| match a {
            Point::Euclidean(v) => Some(v.clone()),
            _ => None,
        })
        .collect();
    match coords {
        Some(c) if problem.p <= 2.0 => Ok(euclidean_pmean(&c, &problem.weights, problem.p)?.1),
        _ => {
            bail!("no reference solver for this instance (supported: presets, a single anchor, euclidean with p <= 2)")
        }
    }
}

fn cmd_fopt(args: &ProblemArgs, out: &mut dyn Write) -> Result<()> {
    let problem = Problem::from_args(args)?;
    // weights are normalized as the solvers do
    let total: f64 = problem.weights.iter().sum();
    if !(total > 0.0) || problem.weights.iter().any(|w| !(*w >= 0.0)) {
        return input("weights must be >= 0 with a positive sum");
    }
    let problem = Problem { weights: problem.weights.iter().map(|w| w / total).collect(), ..problem };
    writeln!(out, "{}", format_sig(reference_fopt(&problem)?))?;
    Ok(())
}

/// Parses arguments, runs the command and reports errors; returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let result = execute(cli, &mut stdout.lock(), &mut stderr.lock());
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

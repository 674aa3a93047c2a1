use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use minfill::fillings::{mf, mpf_dual, mpf_primal};
use minfill::metric::load_metric;
use minfill::trees::{enumerate_topologies, shape_tree};
use minfill::verify::{run, VerifyConfig};
use minfill::{build_cut_matrix, emit_formula, enumerate_vertices, solve, tour_from_vertex, BinaryTree, LpOutcome, StandardLp};

#[derive(Parser)]
#[command(name = "minfill", version, about = "Minimal parametric fillings of finite pseudo-metric spaces")]
struct Cli {
    /// Worker threads for vertex enumeration and topology sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct TreeArgs {
    /// Tree in Newick form, e.g. "((1,2),(3,4));".
    #[arg(long)]
    tree: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// caterpillar | snowflake (aliases two-moustache, three-moustache).
    #[arg(long)]
    shape: Option<String>,
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long)]
    metric: PathBuf,
    /// Reject triangle-inequality violations.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a metric file.
    Validate(MetricArgs),
    /// List every labeled binary tree on n leaves.
    Topologies {
        #[arg(long)]
        n: usize,
    },
    /// Print the cut matrix C(G).
    Cutmatrix(TreeArgs),
    /// Enumerate the vertices of the dual polyhedron.
    Vertices(TreeArgs),
    /// Multi-tour behind every vertex.
    Tours(TreeArgs),
    /// Closed-form weight formula of the minimal parametric filling.
    Formula(TreeArgs),
    /// Minimal parametric filling of one tree type.
    Mpf {
        #[command(flatten)]
        metric: MetricArgs,
        #[command(flatten)]
        tree: TreeArgs,
        /// Classical filling: restrict to non-negative weights.
        #[arg(long)]
        nonneg: bool,
    },
    /// Minimal filling over all tree types.
    Mf(MetricArgs),
    /// Run the self-check suite.
    Verify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Include the seven-leaf counts and multiplicity bounds.
        #[arg(long)]
        slow: bool,
    },
    /// Solve a standard-form LP given as JSON {"a", "b", "c"}.
    LpDebug {
        file: PathBuf,
    },
}

fn resolve_tree(args: &TreeArgs) -> anyhow::Result<BinaryTree> {
    match (&args.tree, args.n, &args.shape) {
        (Some(newick), None, None) => Ok(BinaryTree::parse_newick(newick)?),
        (None, Some(n), Some(shape)) => Ok(shape_tree(shape, n)?),
        (None, Some(n), None) if n <= 5 => Ok(shape_tree("caterpillar", n)?),
        _ => bail!(UsageError("give either --tree NEWICK or --n N --shape NAME")),
    }
}

#[derive(Debug)]
struct UsageError(&'static str);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.0)
    }
}

impl std::error::Error for UsageError {}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn execute(cli: &Cli) -> anyhow::Result<(String, bool)> {
    let format = cli.format;
    let out = match &cli.command {
        Command::Validate(m) => {
            let space = load_metric(&m.metric, m.strict)?;
            match format {
                Format::Json => pretty(&json!({"valid": true, "n": space.n()})),
                _ => format!("valid: {} points\n", space.n()),
            }
        }
        Command::Topologies { n } => {
            let trees: Vec<String> = enumerate_topologies(*n)?.iter().map(BinaryTree::to_newick).collect();
            match format {
                Format::Json => pretty(&trees),
                _ => trees.join("\n") + "\n",
            }
        }
        Command::Cutmatrix(t) => {
            let m = build_cut_matrix(&resolve_tree(t)?);
            match format {
                Format::Text => m.to_text(),
                Format::Latex => m.to_latex(),
                Format::Json => pretty(&m.to_rows()),
            }
        }
        Command::Vertices(t) => {
            let tree = resolve_tree(t)?;
            let vertices = enumerate_vertices(&build_cut_matrix(&tree))?;
            match format {
                Format::Json => pretty(&vertices.iter().map(|v| v.to_json(tree.n())).collect::<Vec<_>>()),
                _ => vertices.iter().map(|v| v.to_listing() + "\n").collect(),
            }
        }
        Command::Tours(t) => {
            let tree = resolve_tree(t)?;
            let mut rows = Vec::new();
            for v in enumerate_vertices(&build_cut_matrix(&tree))? {
                let tour = tour_from_vertex(&v, tree.n())?;
                rows.push((v, tour));
            }
            match format {
                Format::Json => pretty(
                    &rows
                        .iter()
                        .map(|(v, t)| {
                            json!({
                                "vertex": v.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
                                "k": t.k,
                                "tour": t.sequence.iter().map(|l| l + 1).collect::<Vec<_>>(),
                                "perimeter": t.perimeter_expression(),
                            })
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Latex => rows.iter().map(|(_, t)| t.perimeter_latex() + "\n").collect(),
                Format::Text => rows
                    .iter()
                    .map(|(_, t)| format!("{t}    {}\n", t.perimeter_expression()))
                    .collect(),
            }
        }
        Command::Formula(t) => {
            let doc = emit_formula(&resolve_tree(t)?)?;
            match format {
                Format::Text => doc.to_text(),
                Format::Latex => doc.to_latex(),
                Format::Json => pretty(&doc),
            }
        }
        Command::Mpf { metric, tree, nonneg } => {
            let space = load_metric(&metric.metric, metric.strict)?;
            let tree = resolve_tree(tree)?;
            if *nonneg {
                let (weight, omega) = mpf_primal(&space, &tree, true)?;
                match format {
                    Format::Json => pretty(&json!({
                        "tree": tree.to_newick(),
                        "weight": weight.to_string(),
                        "omega": omega.omega_json(),
                    })),
                    _ => format!("tree: {tree}\nweight: {weight}\n"),
                }
            } else {
                let result = mpf_dual(&space, &tree)?;
                match format {
                    Format::Json => pretty(&result.to_json()),
                    _ => result.to_text(),
                }
            }
        }
        Command::Mf(metric) => {
            let space = load_metric(&metric.metric, metric.strict)?;
            let best = mf(&space)?;
            match format {
                Format::Json => pretty(&best.result.to_json()),
                _ => best.result.to_text(),
            }
        }
        Command::Verify { seed, slow } => {
            let reports = run(&VerifyConfig {
                seed: *seed,
                slow: *slow,
                ..VerifyConfig::default()
            });
            let ok = reports.iter().all(|r| r.passed);
            let text = match format {
                Format::Json => pretty(
                    &reports
                        .iter()
                        .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                        .collect::<Vec<_>>(),
                ),
                _ => reports.iter().map(|r| r.line() + "\n").collect(),
            };
            return Ok((text, ok));
        }
        Command::LpDebug { file } => {
            let text = std::fs::read_to_string(file).with_context(|| file.display().to_string())?;
            let lp = StandardLp::from_json(&text)?;
            let outcome = solve(&lp)?;
            match (format, outcome) {
                (Format::Json, LpOutcome::Optimal { value, x }) => pretty(&json!({
                    "status": "optimal",
                    "value": value.to_string(),
                    "x": x.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })),
                (Format::Json, other) => pretty(&json!({
                    "status": if other == LpOutcome::Infeasible { "infeasible" } else { "unbounded" },
                })),
                (_, LpOutcome::Optimal { value, x }) => {
                    let x: Vec<String> = x.iter().map(ToString::to_string).collect();
                    format!("optimal {value}\nx = ({})\n", x.join(", "))
                }
                (_, LpOutcome::Infeasible) => "infeasible\n".into(),
                (_, LpOutcome::Unbounded) => "unbounded\n".into(),
            }
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}\n\n{}", <Cli as clap::CommandFactory>::command().render_usage());
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

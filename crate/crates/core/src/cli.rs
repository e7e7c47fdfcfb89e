//! The `dpcolor` command line.
//!
//! Exit codes: 0 the command ran (whatever the answer), 1 the input cover
//! failed validation, 2 unreadable or malformed input, 3 a resource cap or
//! node budget was hit, 4 an internal consistency check failed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::census::{canonical_form, connected_census};
use crate::characterization::decide_degree_colorable_any;
use crate::config::{Limits, DEFAULT_MAX_LIST_SUM, DEFAULT_MAX_PAIR_CHOICES, DEFAULT_NODE_BUDGET};
use crate::cover::{build_bad_complete, build_bad_cycle, reduce_list, Cover, Violation};
use crate::critical::{
    check_bound_multigraph, check_bound_simple, check_critical_with, check_gdp_edge_bound, format_rational, is_gdp_tree,
    Deletion, VERTEX_CHECK_MAX_N,
};
use crate::error::{Error, Result};
use crate::format::{parse_cover, parse_lists, parse_multigraph, write_cover};
use crate::multigraph::{BlockClass, Multigraph};
use crate::solver::{chi_dp_with, degree_colorable_oracle_with, solve_with, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    /// One whitespace-separated record per line, fixed field order.
    Lines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// The bad degree cover of `K_n^k`.
    Complete,
    /// The twisted degree cover of `C_n^k`.
    Cycle,
}

fn positive_u128(s: &str) -> std::result::Result<u128, String> {
    match s.trim().parse::<u128>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Debug, Parser)]
#[command(name = "dpcolor", version, about = "DP-coloring of small multigraphs")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Treat cover violations as malformed input.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads for census runs (default: all cores).
    #[arg(long, env = "DPCOLOR_WORKERS", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    #[arg(long, env = "DPCOLOR_NODE_BUDGET", global = true, default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: u64,
    #[arg(long, env = "DPCOLOR_MAX_LIST_SUM", global = true, default_value_t = DEFAULT_MAX_LIST_SUM as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_list_sum: u64,
    #[arg(long, env = "DPCOLOR_MAX_PAIR_CHOICES", global = true, default_value_t = DEFAULT_MAX_PAIR_CHOICES,
          value_parser = positive_u128)]
    pub max_pair_choices: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the cover axioms; violations are listed one per line.
    Validate {
        cover: PathBuf,
        /// Base multigraph; overrides pairs declared in the cover file.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Decide whether a cover has a coloring.
    Solve { graph: PathBuf, cover: PathBuf },
    /// DP-chromatic number.
    ChiDp { graph: PathBuf },
    /// Degree-colorability from the block structure.
    DegreeColorable {
        graph: PathBuf,
        /// Write an uncolorable degree cover here when there is one.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Cross-check every component against the exhaustive cover search.
        #[arg(long)]
        oracle: bool,
    },
    /// DP-k-criticality and the edge bounds for critical graphs.
    CheckCritical {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// The cover of a list assignment on a simple graph.
    Reduce {
        graph: PathBuf,
        lists: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// One record per connected multigraph up to isomorphism:
    /// `graph-id n 2E k slack verdict`.
    Census {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        max_mult: u32,
        /// Instead, check the GDP-tree edge bound for this k on every
        /// GDP-tree with maximum degree below k and no K_k.
        #[arg(long)]
        gdp_bound: Option<usize>,
    },
    /// Print one of the bad degree covers.
    Construct {
        #[arg(value_enum)]
        family: Family,
        n: usize,
        k: u32,
    },
}

/// What a command prints and how it exits.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_resource() => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

impl Cli {
    pub fn limits(&self) -> Limits {
        Limits {
            node_budget: self.node_budget,
            max_list_sum: self.max_list_sum as usize,
            max_pair_choices: self.max_pair_choices,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    parse_multigraph(&read(path)?)
}

fn violation_record(v: &Violation) -> String {
    match *v {
        Violation::NonAdjacentPair { u, v, i, j } => format!("non-adjacent {u} {i} {v} {j}"),
        Violation::DegreeExceeded { vertex, color, other, degree, mult } => {
            format!("degree-exceeded {vertex} {color} {other} {degree} {mult}")
        }
    }
}

fn report_violations(cli: &Cli, violations: &[Violation]) -> Result<Outcome> {
    if cli.strict {
        return Err(Error::InvalidCover(violations[0].to_string()));
    }
    let mut out = String::new();
    for v in violations {
        match cli.format {
            OutputFormat::Text => writeln!(out, "{v}"),
            OutputFormat::Lines => writeln!(out, "{}", violation_record(v)),
        }
        .expect("write to string");
    }
    Ok(Outcome { stdout: out, code: 1 })
}

fn load_cover(graph: Option<&Path>, cover: &Path) -> Result<Cover> {
    let base = graph.map(load_graph).transpose()?;
    parse_cover(&read(cover)?, base.as_ref())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let limits = cli.limits();
    match &cli.command {
        Command::Validate { cover, graph } => {
            let c = load_cover(graph.as_deref(), cover)?;
            let violations = c.validate();
            if violations.is_empty() {
                Ok(Outcome::ok("valid\n".into()))
            } else {
                report_violations(cli, &violations)
            }
        }
        Command::Solve { graph, cover } => {
            let c = load_cover(Some(graph), cover)?;
            let violations = c.validate();
            if !violations.is_empty() {
                return report_violations(cli, &violations);
            }
            let r = solve_with(&c, &limits)?;
            let out = match (&r.status, cli.format) {
                (SolveStatus::Colorable(t), OutputFormat::Text) => {
                    format!("COLORABLE\n{}\n", join(&t.0))
                }
                (SolveStatus::Colorable(t), OutputFormat::Lines) => format!("colorable {}\n", join(&t.0)),
                (SolveStatus::Uncolorable, OutputFormat::Text) => "UNCOLORABLE\n".into(),
                (SolveStatus::Uncolorable, OutputFormat::Lines) => "uncolorable\n".into(),
            };
            Ok(Outcome::ok(out))
        }
        Command::ChiDp { graph } => {
            let chi = chi_dp_with(&load_graph(graph)?, &limits)?;
            Ok(Outcome::ok(match cli.format {
                OutputFormat::Text => format!("{chi}\n"),
                OutputFormat::Lines => format!("chi_dp {chi}\n"),
            }))
        }
        Command::DegreeColorable { graph, witness, oracle } => {
            degree_colorable(cli, &load_graph(graph)?, witness.as_deref(), *oracle, &limits)
        }
        Command::CheckCritical { graph, k } => check_critical_cmd(cli, &load_graph(graph)?, *k, &limits),
        Command::Reduce { graph, lists, output } => {
            let g = load_graph(graph)?;
            let lists = parse_lists(&read(lists)?)?;
            let text = write_cover(&reduce_list(&g, &lists)?);
            match output {
                Some(path) => {
                    write(path, &text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Census { max_n, max_mult, gdp_bound } => census(cli, *max_n, *max_mult, *gdp_bound, &limits),
        Command::Construct { family, n, k } => {
            let c = match family {
                Family::Complete => build_bad_complete(*n, *k)?,
                Family::Cycle => build_bad_cycle(*n, *k)?,
            };
            Ok(Outcome::ok(write_cover(&c)))
        }
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn class_name(c: BlockClass) -> String {
    match c {
        BlockClass::CompletePower { n, k } => format!("K_{n}^{k}"),
        BlockClass::CyclePower { n, k } => format!("C_{n}^{k}"),
        BlockClass::Other => "other".into(),
    }
}

fn degree_colorable(cli: &Cli, g: &Multigraph, witness: Option<&Path>, oracle: bool, limits: &Limits) -> Result<Outcome> {
    let parts = decide_degree_colorable_any(g)?;
    let colorable = parts.iter().all(|(_, v)| v.colorable);
    let mut out = String::new();
    let word = match (colorable, cli.format) {
        (true, OutputFormat::Text) => "DEGREE-COLORABLE",
        (false, OutputFormat::Text) => "NOT-DEGREE-COLORABLE",
        (true, OutputFormat::Lines) => "degree-colorable",
        (false, OutputFormat::Lines) => "not-degree-colorable",
    };
    writeln!(out, "{word}").expect("write to string");
    for (comp, verdict) in &parts {
        for b in &verdict.reason {
            let vs: Vec<usize> = b.vertices.iter().map(|&v| comp[v - 1]).collect();
            writeln!(out, "block {} {}", class_name(b.class), join(&vs)).expect("write to string");
        }
        if oracle {
            let o = degree_colorable_oracle_with(&g.induced(comp), limits)?;
            if o.colorable != verdict.colorable {
                return Err(Error::Internal(format!("exhaustive search disagrees on component {}", join(comp))));
            }
        }
    }
    if oracle {
        writeln!(out, "oracle agrees").expect("write to string");
    }
    if let Some(path) = witness {
        if let Some((comp, verdict)) = parts.iter().find(|(_, v)| !v.colorable) {
            let w = component_witness(g, comp, verdict.witness.as_ref().expect("witness when not colorable"))?;
            if !w.is_valid() || !w.is_degree_cover() || solve_with(&w, limits)?.is_colorable() {
                return Err(Error::Internal("glued witness is not an uncolorable degree cover".into()));
            }
            write(path, &write_cover(&w))?;
        }
    }
    Ok(Outcome::ok(out))
}

/// A degree cover of `g` that restricts to `local` on `comp` and has no
/// cross edges elsewhere; uncolorable whenever `local` is.
fn component_witness(g: &Multigraph, comp: &[usize], local: &Cover) -> Result<Cover> {
    let placed = local.embed(g.n(), comp)?;
    let sizes: Vec<usize> = g.degrees().iter().map(|&d| d as usize).collect();
    let mut w = Cover::new(g.clone(), sizes)?;
    for (u, i, v, j) in placed.all_cross_edges() {
        w.add_cross_edge(u, i, v, j)?;
    }
    Ok(w)
}

fn check_critical_cmd(cli: &Cli, g: &Multigraph, k: usize, limits: &Limits) -> Result<Outcome> {
    let r = check_critical_with(g, k, limits, VERTEX_CHECK_MAX_N)?;
    let failing = match r.failing_subgraph {
        Some(Deletion::Edge(u, v)) => format!("edge {u}-{v}"),
        Some(Deletion::Vertex(v)) => format!("vertex {v}"),
        None => "-".into(),
    };
    let multi = format_rational(&check_bound_multigraph(g, k).slack);
    let simple = match check_bound_simple(g, k) {
        Ok(b) => format_rational(&b.slack),
        Err(_) => "-".into(),
    };
    let out = match cli.format {
        OutputFormat::Text => {
            let mut s = format!("{} chi_dp={}\n", if r.is_critical { "CRITICAL" } else { "NOT-CRITICAL" }, r.chi);
            if r.failing_subgraph.is_some() {
                writeln!(s, "deleting {failing} keeps chi_dp = {k}").expect("write to string");
            }
            writeln!(s, "multigraph bound slack {multi}").expect("write to string");
            if simple != "-" {
                writeln!(s, "simple bound slack {simple}").expect("write to string");
            }
            s
        }
        OutputFormat::Lines => format!(
            "{} {} {} {multi} {simple}\n",
            if r.is_critical { "critical" } else { "not-critical" },
            r.chi,
            failing.replace(' ', ":")
        ),
    };
    Ok(Outcome::ok(out))
}

fn pool(cli: &Cli) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        b = b.num_threads(w as usize);
    }
    b.build().map_err(|e| Error::Io(format!("cannot start workers: {e}")))
}

fn census(cli: &Cli, max_n: usize, max_mult: u32, gdp_bound: Option<usize>, limits: &Limits) -> Result<Outcome> {
    if max_mult == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let records: Vec<Result<String>> = match gdp_bound {
        Some(k) => {
            if k < 4 {
                return Err(Error::Precondition("the GDP-tree bound needs k >= 4".into()));
            }
            let graphs = connected_census(max_n, 1, |g| {
                g.max_degree() < k as u32 && g.clique_number() < k && is_gdp_tree(g).unwrap_or(false)
            });
            pool(cli)?.install(|| {
                graphs
                    .par_iter()
                    .map(|code| {
                        let g = code.graph();
                        let b = check_gdp_edge_bound(&g, k)?;
                        let verdict = if b.holds { "holds" } else { "violated" };
                        Ok(format!("{code} {} {} {k} {} {verdict}", g.n(), 2 * g.edge_count(), format_rational(&b.slack)))
                    })
                    .collect()
            })
        }
        None => {
            let graphs = connected_census(max_n, max_mult, |_| true);
            pool(cli)?.install(|| graphs.par_iter().map(|code| census_record(&code.graph(), limits)).collect())
        }
    };
    let mut out = String::new();
    if cli.format == OutputFormat::Text {
        out.push_str("# graph-id n 2E k slack verdict\n");
    }
    let mut code = 0;
    for r in records {
        match r {
            Ok(line) => writeln!(out, "{line}").expect("write to string"),
            Err(e) => {
                code = code.max(exit_code(&e));
                writeln!(out, "# error: {e}").expect("write to string");
            }
        }
    }
    Ok(Outcome { stdout: out, code })
}

/// `k` is the DP-chromatic number; the slack is that of the critical
/// multigraph bound at that `k`.
pub fn census_record(g: &Multigraph, limits: &Limits) -> Result<String> {
    let id = canonical_form(g);
    let chi = chi_dp_with(g, limits)?;
    let critical = check_critical_with(g, chi, limits, VERTEX_CHECK_MAX_N)?.is_critical;
    let dc = decide_degree_colorable_any(g)?.iter().all(|(_, v)| v.colorable);
    let slack = format_rational(&check_bound_multigraph(g, chi).slack);
    Ok(format!(
        "{id} {} {} {chi} {slack} {},{}",
        g.n(),
        2 * g.edge_count(),
        if critical { "critical" } else { "not-critical" },
        if dc { "degree-colorable" } else { "not-degree-colorable" }
    ))
}

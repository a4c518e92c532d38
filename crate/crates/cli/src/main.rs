//! `graphlie` command-line tool.
//!
//! Standard output carries only machine-readable results; logs go to standard
//! error. Exit status: 0 on success, 1 on domain errors (bad input, unmet
//! preconditions), 2 when an internal mathematical invariant fails.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphlie::basis::structure_constants;
use graphlie::cohomology::{h2_nil, h2_nil_graded};
use graphlie::graph::enumerate_graphs;
use graphlie::lie::{GradedLieAlgebra, LieAlgebra};
use graphlie::report::{classification_json, render_report, ReportFormat};
use graphlie::rigidity::{classify, find_witness, sweep, verify_witness, witness_deformation};
use graphlie::{Error, Rational, Result, SimpleGraph};
use log::info;

#[derive(Parser)]
#[command(name = "graphlie", version, about = "Nilpotent graph Lie algebras: construction, nil-cohomology, rigidity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build g(k, G) and write its structure constants.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Second nil-cohomology of 2-step algebras.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Rigidity verdicts with certificates.
    #[command(subcommand)]
    Rigidity(RigidityCmd),
    /// Linear deformations from non-rigidity witnesses.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Isomorphism classes of small graphs.
    #[command(subcommand)]
    Graphs(GraphsCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Build {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CohomologyCmd {
    /// H^2_{2-nil} of g(2, G), or of an algebra file given with --in.
    H2nil {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RigidityCmd {
    Classify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Sweep {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DeformCmd {
    /// Write mu_t = mu + t sigma for the first witness found.
    Emit {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GraphsCmd {
    /// One graph6 code per isomorphism class on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Edge list JSON, e.g. '{"m":3,"edges":[[1,2],[1,3]]}'.
    #[arg(long)]
    edges: Option<String>,
    #[arg(long)]
    graph6: Option<String>,
    /// File holding an edge list, a graph6 code or (for cohomology) an algebra.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

enum Input {
    Graph(SimpleGraph),
    Algebra(serde_json::Value),
}

impl GraphInput {
    fn read(&self) -> Result<Input> {
        if let Some(e) = &self.edges {
            return SimpleGraph::from_edge_list_json(e).map(Input::Graph);
        }
        if let Some(code) = &self.graph6 {
            return SimpleGraph::from_graph6(code).map(Input::Graph);
        }
        let path = self.input.as_ref().expect("clap enforces one input");
        let text = std::fs::read_to_string(path)?;
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let value: serde_json::Value = serde_json::from_str(trimmed)?;
            if value.get("brackets").is_some() {
                return Ok(Input::Algebra(value));
            }
            return SimpleGraph::from_edge_list_json(trimmed).map(Input::Graph);
        }
        SimpleGraph::from_graph6(trimmed).map(Input::Graph)
    }

    fn graph(&self) -> Result<SimpleGraph> {
        match self.read()? {
            Input::Graph(g) => Ok(g),
            Input::Algebra(_) => Err(Error::Precondition("this command needs a graph, not an algebra".into())),
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            info!("wrote {}", path.display());
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn json_text(value: &serde_json::Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Algebra(AlgebraCmd::Build { input, k, out }) => {
            let g = input.graph()?;
            if k < 1 {
                return Err(Error::Precondition("k must be at least 1".into()));
            }
            let a = structure_constants(&g, k)?;
            info!("built g({k}, G) of dimension {} with grading {:?}", a.dim(), a.grading());
            emit(out.as_deref(), &json_text(&a.to_json())?)
        }
        Command::Cohomology(CohomologyCmd::H2nil { input, k, out }) => {
            let report = match input.read()? {
                Input::Graph(g) => {
                    if k != 2 {
                        return Err(Error::Precondition("nil-cohomology is computed for k = 2".into()));
                    }
                    h2_nil_graded(&structure_constants(&g, 2)?)?
                }
                Input::Algebra(v) => match GradedLieAlgebra::from_json(&v) {
                    Ok(a) => h2_nil_graded(&a)?,
                    Err(_) => h2_nil(&LieAlgebra::from_json(&v)?)?,
                },
            };
            emit(out.as_deref(), &json_text(&serde_json::to_value(report)?)?)
        }
        Command::Rigidity(RigidityCmd::Classify { input, k, format, out }) => {
            let format: ReportFormat = format.parse()?;
            let g = input.graph()?;
            let c = classify(&g, k)?;
            info!("g({k}, G): {}", c.verdict.tag());
            let text = match format {
                ReportFormat::Json => json_text(&classification_json(&c)?)?,
                ReportFormat::Table => render_report(std::slice::from_ref(&c), format)?,
            };
            emit(out.as_deref(), &text)
        }
        Command::Rigidity(RigidityCmd::Sweep { n_max, k, format, out }) => {
            let format: ReportFormat = format.parse()?;
            let report = sweep(n_max, k)?;
            info!("classified {} graphs", report.len());
            emit(out.as_deref(), &render_report(&report, format)?)
        }
        Command::Deform(DeformCmd::Emit { input, k, t, out }) => {
            let t: Rational = t.parse()?;
            let g = input.graph()?;
            let a = structure_constants(&g, k)?;
            let cert = find_witness(&g, &a, k)?
                .ok_or_else(|| Error::Precondition("no non-rigidity witness for this graph and k".into()))?;
            if !verify_witness(&a, &cert)? {
                return Err(Error::Invariant(format!("witness {cert:?} failed re-verification")));
            }
            info!("deforming along {}", cert.kind());
            let d = witness_deformation(&a, &cert)?.expect("witnesses carry a deformation");
            emit(out.as_deref(), &json_text(&d.at(&t).to_json())?)
        }
        Command::Graphs(GraphsCmd::Enumerate { n, out }) => {
            let mut text = String::new();
            for g in enumerate_graphs(n)? {
                text.push_str(&g.to_graph6()?);
                text.push('\n');
            }
            emit(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_invariant_violation() { 2 } else { 1 })
        }
    }
}

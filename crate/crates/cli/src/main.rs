use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kbase::basesize::{
    base_size_with, find_base_controlling, stabilizer_graph, BaseSizeReportJson, Methods,
};
use kbase::classfun::restrict;
use kbase::irreducibles::{character_table, CharacterTable, CharacterTableJson};
use kbase::permcore::{GroupAction, DEFAULT_CAP};
use kbase::verify::{verify_action, VerifyOptions, VerifyReport};

mod catalog;
mod render;

use catalog::GroupSpec;

/// Base sizes of finite permutation groups by exhaustive search, powers of
/// the permutation character, and Kuelshammer graphs.
///
/// GROUP is one of: `snk N K`, `pgl2 Q`, `dihedral N`, `sym N`, `file PATH`.
/// Group files hold `degree n` on the first line and one generator per
/// line as space-separated 0-based images.
#[derive(Debug, Parser)]
#[command(name = "kbase", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of group elements to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for the parallel loops (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest power of the permutation character to try.
    #[arg(long, global = true)]
    lmax: Option<usize>,
    /// Allow `snk N K` with N < 2K.
    #[arg(long, global = true)]
    allow_small_n: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Base size by the selected methods; exits nonzero if they disagree.
    Basesize {
        #[arg(required = true, num_args = 1..=3, value_name = "GROUP")]
        group: Vec<String>,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// The Kuelshammer graph of the stabilizer of point 0.
    Kgraph {
        #[arg(required = true, num_args = 1..=3, value_name = "GROUP")]
        group: Vec<String>,
        /// Also write the graph in Graphviz format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Character table of the group or of the stabilizer of point 0.
    Chartab {
        #[arg(required = true, num_args = 1..=3, value_name = "GROUP")]
        group: Vec<String>,
        #[arg(long, value_enum, default_value_t = Which::Group)]
        which: Which,
    },
    /// Runs every consistency check; exits nonzero if any fails.
    Verify {
        #[arg(required = true, num_args = 1..=3, value_name = "GROUP")]
        group: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Search,
    Character,
    Kuelshammer,
    All,
}

impl Method {
    fn selection(self) -> Methods {
        match self {
            Method::Search => Methods {
                search: true,
                character: false,
                kuelshammer: false,
            },
            Method::Character => Methods {
                search: false,
                character: true,
                kuelshammer: false,
            },
            Method::Kuelshammer => Methods {
                search: false,
                character: false,
                kuelshammer: true,
            },
            Method::All => Methods::ALL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Group,
    Stabilizer,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupInfo {
    pub description: String,
    pub order: usize,
    pub degree: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BaseSizeOutput {
    pub group: GroupInfo,
    pub report: BaseSizeReportJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KGraphOutput {
    pub group: GroupInfo,
    pub stabilizer_order: usize,
    pub degrees: Vec<u64>,
    pub edges: Vec<(usize, usize)>,
    pub diameter: usize,
    /// Vertex of the restricted base-controlling character, if one exists.
    pub phi_vertex: Option<usize>,
    pub d: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChartabOutput {
    pub group: GroupInfo,
    pub which: String,
    pub table: CharacterTableJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub group: GroupInfo,
    pub passed: bool,
    pub report: VerifyReport,
}

struct Loaded {
    spec: GroupSpec,
    action: GroupAction,
}

impl Loaded {
    fn info(&self) -> GroupInfo {
        GroupInfo {
            description: self.spec.to_string(),
            order: self.action.group().order(),
            degree: self.action.domain_size(),
        }
    }
}

fn load(cli: &Cli, tokens: &[String]) -> anyhow::Result<Loaded> {
    let spec = GroupSpec::parse(tokens)?;
    let action = spec.build(cli.cap, cli.allow_small_n)?;
    Ok(Loaded { spec, action })
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Runs a command; `Ok(false)` means it completed but the result is a failure.
fn run(cli: &Cli, out: &mut impl Write) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Basesize { group, method } => {
            let ctx = load(cli, group)?;
            let report = base_size_with(&ctx.action, method.selection(), cli.lmax)?;
            let ran_requested = match method {
                Method::Search => report.search.is_some(),
                Method::Character => report.char_formula.is_some(),
                Method::Kuelshammer => report.kuelshammer.is_some(),
                Method::All => report.search.is_some(),
            };
            if cli.json {
                print_json(
                    out,
                    &BaseSizeOutput {
                        group: ctx.info(),
                        report: report.to_json(),
                    },
                )?;
            } else {
                render::basesize(out, &ctx.info(), &ctx.action, &report)?;
            }
            if !ran_requested {
                bail!(
                    "the requested method could not run: {}",
                    report.notes.join("; ")
                );
            }
            Ok(report.agree)
        }
        Command::Kgraph { group, dot } => {
            let ctx = load(cli, group)?;
            let (sub, graph) = stabilizer_graph(&ctx.action, 0)?;
            let phi_vertex = match find_base_controlling(&ctx.action)? {
                Some(phi) => graph.vertex_of(&restrict(&phi, &sub)?),
                None => None,
            };
            let result = KGraphOutput {
                group: ctx.info(),
                stabilizer_order: sub.order(),
                degrees: graph.table().degrees().to_vec(),
                edges: graph.edges(),
                diameter: graph.diameter(),
                phi_vertex,
                d: phi_vertex.map(|v| graph.distance(0, v)),
            };
            if let Some(path) = dot {
                std::fs::write(path, graph.to_dot(phi_vertex))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if cli.json {
                print_json(out, &result)?;
            } else {
                render::kgraph(out, &result)?;
            }
            Ok(true)
        }
        Command::Chartab { group, which } => {
            let ctx = load(cli, group)?;
            let table: CharacterTable = match which {
                Which::Group => character_table(ctx.action.group())?,
                Which::Stabilizer => {
                    let sub = ctx.action.point_stabilizer(0)?;
                    character_table(sub.group())?
                }
            };
            let which = match which {
                Which::Group => "group",
                Which::Stabilizer => "stabilizer",
            };
            let result = ChartabOutput {
                group: ctx.info(),
                which: which.into(),
                table: table.to_json(),
            };
            if cli.json {
                print_json(out, &result)?;
            } else {
                render::chartab(out, &result)?;
            }
            Ok(true)
        }
        Command::Verify { group } => {
            let ctx = load(cli, group)?;
            let report = verify_action(&ctx.action, &VerifyOptions::default())?;
            let passed = report.passed();
            if cli.json {
                print_json(
                    out,
                    &VerifyOutput {
                        group: ctx.info(),
                        passed,
                        report,
                    },
                )?;
            } else {
                render::verify(out, &ctx.info(), &report)?;
            }
            Ok(passed)
        }
    }
}

fn configure_threads(threads: Option<usize>) -> anyhow::Result<()> {
    let Some(n) = threads else {
        return Ok(());
    };
    if n == 0 {
        bail!("--threads must be at least 1");
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = configure_threads(cli.threads).and_then(|()| run(&cli, &mut out));
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mindmap_core::mindmap::{export_dot, MindMap, NodeId};
use mindmap_core::resolve::score_outcomes;
use mindmap_core::thesaurus::Thesaurus;

use crate::config::{Config, FileConfig, Overrides};
use crate::error::AppError;
use crate::repl::{self, Session};
use crate::state::StateDump;
use crate::{formats, render, run};

#[derive(Debug, Parser)]
#[command(name = "mindmap", version, about = "Build and query actor-centric mind-maps from CoNLL-U text streams")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML configuration file; flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Sliding window capacity in sentences
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Per-sentence decay factor for short-term links, in (0, 1]
    #[arg(long, global = true)]
    pub decay: Option<f64>,
    /// Occurrences needed to move a link to long-term memory
    #[arg(long, global = true)]
    pub promotion: Option<u32>,
    /// Short-term links lighter than this are pruned
    #[arg(long, global = true)]
    pub prune: Option<f64>,
    /// Actor registry (canonical TAB gender [TAB alias|alias...])
    #[arg(long, global = true)]
    pub actors: Option<PathBuf>,
    /// Directory with male_names.txt, female_names.txt, gendered_nouns.tsv, animate.txt
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    /// Pleonastic pattern file
    #[arg(long, global = true)]
    pub patterns: Option<PathBuf>,
}

/// Where the map comes from: a saved state, or CoNLL-U input streamed now.
#[derive(Debug, Args)]
pub struct MapSource {
    /// JSON state written by `stream --state`
    #[arg(long, conflicts_with = "input")]
    pub state: Option<PathBuf>,
    /// CoNLL-U input file (repeatable)
    #[arg(long, short)]
    pub input: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream CoNLL-U input through the pipeline
    Stream {
        inputs: Vec<PathBuf>,
        /// Event log destination (JSON lines), `-` for stdout
        #[arg(long, default_value = "-")]
        events: PathBuf,
        /// Write the final state as JSON
        #[arg(long)]
        state: Option<PathBuf>,
        /// Write the final map as Graphviz
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run one MindQL query
    Query {
        query: String,
        #[command(flatten)]
        source: MapSource,
        /// Depth for queries without a `with depth` clause
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Interactive MindQL prompt
    Repl {
        #[command(flatten)]
        source: MapSource,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Score pronoun resolution against gold annotations
    Score {
        inputs: Vec<PathBuf>,
        /// Gold file (seq TAB index TAB seq:index|PLEONASTIC|NONE)
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Export the map, or the neighbourhood of one node
    Export {
        #[command(flatten)]
        source: MapSource,
        #[arg(long, value_enum, default_value = "dot")]
        format: ExportFormat,
        /// Actor name or concept label to centre on
        #[arg(long, requires = "depth")]
        root: Option<String>,
        #[arg(long, requires = "root")]
        depth: Option<usize>,
        /// Output file, stdout when absent
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn config(global: &GlobalArgs, inputs: Vec<PathBuf>) -> Result<Config, AppError> {
    let file = match &global.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    Config::resolve(
        file,
        Overrides {
            window: global.window,
            decay: global.decay,
            promotion: global.promotion,
            prune: global.prune,
            actors: global.actors.clone(),
            lexicon: global.lexicon.clone(),
            patterns: global.patterns.clone(),
            inputs,
        },
    )
}

fn write_to(path: &Path, text: &str, stdout: &mut dyn Write) -> Result<(), AppError> {
    if path == Path::new("-") {
        stdout.write_all(text.as_bytes()).map_err(|e| AppError::Input(format!("stdout: {e}")))
    } else {
        std::fs::write(path, text).map_err(|e| AppError::io(path, e))
    }
}

fn load_map(cfg: &Config, source: &MapSource) -> Result<(MindMap, Thesaurus), AppError> {
    match &source.state {
        Some(p) => {
            let dump = StateDump::load(p)?;
            Ok((dump.map, dump.actors))
        }
        None => {
            let (engine, _) = run::run(cfg, &source.input)?;
            Ok(engine.into_parts())
        }
    }
}

fn root_node(map: &MindMap, thesaurus: &Thesaurus, name: &str) -> Result<NodeId, AppError> {
    map.actor_by_name(name, thesaurus)
        .ok()
        .or_else(|| map.find_concept(name).map(|n| n.id))
        .ok_or_else(|| AppError::Query(format!("no actor or concept named `{name}`")))
}

/// Execute a parsed command line, writing results to `stdout`.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), AppError> {
    let out_err = |e: std::io::Error| AppError::Input(format!("stdout: {e}"));
    match cli.command {
        Command::Stream { inputs, events, state, dot } => {
            let cfg = config(&cli.global, inputs)?;
            let (engine, log) = run::run(&cfg, &[])?;
            write_to(&events, &run::event_log(&log), stdout)?;
            if let Some(p) = state {
                write_to(&p, &run::snapshot(&engine).to_json(), stdout)?;
            }
            if let Some(p) = dot {
                write_to(&p, &export_dot(engine.map()), stdout)?;
            }
        }
        Command::Query { query, source, depth, json } => {
            let cfg = config(&cli.global, Vec::new())?;
            let (map, thesaurus) = load_map(&cfg, &source)?;
            let session = Session { map: &map, thesaurus: &thesaurus, depth, json };
            stdout.write_all(session.answer(&query)?.as_bytes()).map_err(out_err)?;
        }
        Command::Repl { source, depth, json } => {
            let cfg = config(&cli.global, Vec::new())?;
            let (map, thesaurus) = load_map(&cfg, &source)?;
            let stdin = std::io::stdin();
            let prompt = stdin.is_terminal();
            let session = Session { map: &map, thesaurus: &thesaurus, depth, json };
            let mut w = std::io::BufWriter::new(stdout);
            repl::run(session, stdin.lock(), &mut w, prompt).map_err(out_err)?;
            w.flush().map_err(out_err)?;
        }
        Command::Score { inputs, gold, json } => {
            let cfg = config(&cli.global, inputs)?;
            let (_, log) = run::run(&cfg, &[])?;
            let outcomes: Vec<_> = log.into_iter().flat_map(|e| e.resolutions).collect();
            let gold = formats::load_gold(&gold)?;
            let table =
                score_outcomes(&outcomes, &gold).map_err(|e| AppError::Input(format!("gold file misaligned: {e}")))?;
            let text = if json { render::accuracy_json(&table) } else { render::accuracy_text(&table) };
            stdout.write_all(text.as_bytes()).map_err(out_err)?;
        }
        Command::Export { source, format, root, depth, output } => {
            let cfg = config(&cli.global, Vec::new())?;
            let (map, thesaurus) = load_map(&cfg, &source)?;
            let map = match (root, depth) {
                (Some(name), Some(d)) => {
                    let id = root_node(&map, &thesaurus, &name)?;
                    map.neighborhood(id, d).map_err(|e| AppError::Query(e.to_string()))?
                }
                _ => map,
            };
            let text = match format {
                ExportFormat::Dot => export_dot(&map),
                ExportFormat::Json => StateDump::new(map, thesaurus, cfg.window).to_json(),
            };
            write_to(output.as_deref().unwrap_or(Path::new("-")), &text, stdout)?;
        }
    }
    Ok(())
}

//! Argument model and dispatch for the `ntk` binary.
//!
//! [`run`] never prints or exits; it returns the exit code together with the
//! text destined for standard output and standard error.

use std::fmt::Display;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ntk_core::fat_tk::{find_fat_tk, is_dispersed, verify_fat_tk, FatTkCertificate, FatTkSearch};
use ntk_core::generator::{builtin, truncate, GraphGenerator, BUILTIN_GENERATORS};
use ntk_core::io::{parse_graph, tree_to_dot};
use ntk_core::nst::{construct, levels_of, Goal, RunOptions};
use ntk_core::{
    dfs_nst, is_normal, local_normal_tree, max_independent_paths, min_separator, nst_from_dispersed_cover,
    DispersedCover, Graph, RootedTree, Vertex, VertexSet,
};
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_BAD_INPUT: u8 = 2;

#[derive(Parser, Debug, Clone)]
#[command(name = "ntk", version, about = "Normal spanning trees, Menger connectivity and fat-TK certificates")]
pub struct RunConfig {
    #[command(flatten)]
    pub input: InputArgs,

    /// Root vertex (default: the generator root, or the least vertex).
    #[arg(long, global = true)]
    pub root: Option<Vertex>,

    /// Maximum number of construction rounds.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// Graph file: JSON `{"vertices":[..],"edges":[[u,v],..]}` or an edge list.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Built-in generator, e.g. `grid` or `fat-tk-gen:3,2` (see `gen-list`).
    #[arg(long = "gen", global = true, requires = "radius")]
    pub generator: Option<String>,

    /// Truncation radius for `--gen`.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Depth-first normal spanning tree.
    Nst,
    /// Round-by-round construction driven by independent path families.
    Omega {
        /// Only pairs with kappa at most this get a path family.
        #[arg(long)]
        kappa_small: Option<usize>,
    },
    /// Normal tree containing the target set.
    Local {
        /// Comma-separated vertex ids.
        #[arg(long, value_parser = parse_set)]
        targets: VertexSet,
    },
    /// Normal spanning tree guided by a cover file (JSON list of id lists).
    CoverNst {
        #[arg(long)]
        cover: PathBuf,
    },
    /// Distance classes of a tree (default: the DFS tree from the root).
    Levels {
        #[arg(long)]
        tree: Option<PathBuf>,
    },
    /// Check a tree file for normality; exit 1 if it is not normal.
    CheckNormal {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Maximum number of independent v-w paths, with a canonical family.
    Kappa {
        #[arg(long)]
        v: Vertex,
        #[arg(long)]
        w: Vertex,
    },
    /// Minimum vertex set separating A from B.
    Separator {
        #[arg(long, value_parser = parse_set)]
        a: VertexSet,
        #[arg(long, value_parser = parse_set)]
        b: VertexSet,
    },
    /// Greedy search for a fat TK(|branch|, m); exit 1 when blocked.
    FatTkFind {
        /// Comma-separated branch vertices.
        #[arg(long, value_parser = parse_set)]
        branch: VertexSet,
        /// Paths required per branch pair.
        #[arg(long)]
        m: usize,
    },
    /// Verify a certificate file; exit 1 if invalid.
    FatTkVerify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Bounded dispersedness check of a probe set; exit 1 if not dispersed.
    Dispersed {
        /// Comma-separated probe vertices.
        #[arg(long, value_parser = parse_set)]
        probe: VertexSet,
        /// Number of branch vertices.
        #[arg(long)]
        n: usize,
        /// Paths required per branch pair.
        #[arg(long)]
        m: usize,
        /// Largest allowed separator.
        #[arg(long)]
        s: usize,
        /// Number of candidate branch sets to examine.
        #[arg(long, default_value_t = 32)]
        search_budget: usize,
    },
    /// List the built-in generators.
    GenList,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nst => "nst",
            Command::Omega { .. } => "omega",
            Command::Local { .. } => "local",
            Command::CoverNst { .. } => "cover-nst",
            Command::Levels { .. } => "levels",
            Command::CheckNormal { .. } => "check-normal",
            Command::Kappa { .. } => "kappa",
            Command::Separator { .. } => "separator",
            Command::FatTkFind { .. } => "fat-tk-find",
            Command::FatTkVerify { .. } => "fat-tk-verify",
            Command::Dispersed { .. } => "dispersed",
            Command::GenList => "gen-list",
        }
    }
}

fn parse_set(text: &str) -> Result<VertexSet, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Vertex>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn failed_check(stdout: String) -> Self {
        Outcome { code: EXIT_FAILED_CHECK, stdout, stderr: String::new() }
    }

    fn bad_input(msg: impl Display) -> Self {
        Outcome { code: EXIT_BAD_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// A loaded graph and how to label its vertices in DOT output.
struct Input {
    graph: Graph,
    generator: Option<Box<dyn GraphGenerator>>,
}

impl Input {
    fn default_root(&self) -> Option<Vertex> {
        match &self.generator {
            Some(gen) => Some(gen.root()),
            None => self.graph.vertices().next(),
        }
    }

    fn label(&self, v: Vertex) -> String {
        self.generator.as_ref().map_or_else(|| v.to_string(), |g| g.label(v))
    }
}

fn read(path: &FsPath) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &FsPath) -> Result<T, String> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Accepts a bare tree or the output of a construction, which carries its tree under `tree`.
fn read_tree(path: &FsPath) -> Result<RootedTree, String> {
    let mut value: serde_json::Value = read_json(path)?;
    if value.get("steps").is_some() {
        value = value["tree"].take();
    }
    serde_json::from_value(value).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(args: &InputArgs) -> Result<Input, String> {
    match (&args.input, &args.generator) {
        (Some(_), Some(_)) => Err("give either --input or --gen, not both".into()),
        (None, None) => Err("no graph given; use --input FILE or --gen NAME --radius K".into()),
        (Some(path), None) => {
            let graph = parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(Input { graph, generator: None })
        }
        (None, Some(spec)) => {
            let generator = builtin(spec).map_err(|e| e.to_string())?;
            let radius = args.radius.ok_or("--gen needs --radius")?;
            let graph = truncate(generator.as_ref(), radius).map_err(|e| e.to_string())?;
            Ok(Input { graph, generator: Some(generator) })
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serialises");
    text.push('\n');
    text
}

pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(config) {
        Ok(outcome) => outcome,
        Err(msg) => Outcome::bad_input(msg),
    }
}

fn dispatch(config: &RunConfig) -> Result<Outcome, String> {
    let cmd = &config.command;
    let dot_capable = matches!(
        cmd,
        Command::Nst
            | Command::Omega { .. }
            | Command::Local { .. }
            | Command::CoverNst { .. }
            | Command::CheckNormal { .. }
    );
    if config.format == Format::Dot && !dot_capable {
        return Err(format!("--format dot is not available for {}", cmd.name()));
    }
    if let Command::GenList = cmd {
        let list: Vec<_> = BUILTIN_GENERATORS
            .iter()
            .map(|(name, description)| json!({ "name": name, "description": description }))
            .collect();
        return Ok(Outcome::ok(to_json(&list)));
    }

    let input = load(&config.input)?;
    let g = &input.graph;
    let err = |e: ntk_core::Error| e.to_string();
    let root = match config.root.or_else(|| input.default_root()) {
        Some(r) => r,
        None => return Err("the graph is empty".into()),
    };
    let budget = config.budget.map(|b| b as usize);
    let tree_output = |tree: &RootedTree, json: String| match config.format {
        Format::Json => json,
        Format::Dot => tree_to_dot(g, tree, &|v| input.label(v)),
    };

    let outcome = match cmd {
        Command::Nst => {
            let tree = dfs_nst(g, root).map_err(err)?;
            Outcome::ok(tree_output(&tree, to_json(&tree)))
        }
        Command::Omega { kappa_small } => {
            let opts = RunOptions { step_budget: budget, kappa_small: *kappa_small };
            let trace = construct(g, root, &Goal::Spanning, opts).map_err(err)?;
            Outcome::ok(tree_output(&trace.tree, to_json(&trace)))
        }
        Command::Local { targets } => {
            let trace = local_normal_tree(g, targets, root, budget).map_err(err)?;
            Outcome::ok(tree_output(&trace.tree, to_json(&trace)))
        }
        Command::CoverNst { cover } => {
            let cover: DispersedCover = read_json(cover)?;
            let trace = match budget {
                None => nst_from_dispersed_cover(g, &cover, root),
                Some(b) => {
                    cover.validate(g).map_err(err)?;
                    construct(g, root, &Goal::Cover(cover), RunOptions { step_budget: Some(b), kappa_small: None })
                }
            }
            .map_err(err)?;
            Outcome::ok(tree_output(&trace.tree, to_json(&trace)))
        }
        Command::Levels { tree } => {
            let tree = match tree {
                Some(path) => read_tree(path)?,
                None => dfs_nst(g, root).map_err(err)?,
            };
            Outcome::ok(to_json(&levels_of(&tree)))
        }
        Command::CheckNormal { tree } => {
            let tree = read_tree(tree)?;
            let report = is_normal(g, &tree).map_err(err)?;
            let text = tree_output(&tree, to_json(&report));
            if report.normal {
                Outcome::ok(text)
            } else {
                Outcome::failed_check(text)
            }
        }
        Command::Kappa { v, w } => {
            let family = max_independent_paths(g, *v, *w).map_err(err)?;
            Outcome::ok(to_json(&json!({ "kappa": family.len(), "paths": family.paths() })))
        }
        Command::Separator { a, b } => {
            let sep = min_separator(g, a, b).map_err(err)?;
            Outcome::ok(to_json(&json!({ "separator": sep.vertices })))
        }
        Command::FatTkFind { branch, m } => match find_fat_tk(g, branch, *m).map_err(err)? {
            FatTkSearch::Found(cert) => Outcome::ok(to_json(&cert)),
            FatTkSearch::Blocked(blocked) => Outcome::failed_check(to_json(&json!({ "blocked": blocked }))),
        },
        Command::FatTkVerify { cert } => {
            let cert: FatTkCertificate = read_json(cert)?;
            match verify_fat_tk(g, &cert) {
                Ok(()) => Outcome::ok(to_json(&json!({ "valid": true }))),
                Err(defect) => Outcome::failed_check(to_json(&json!({ "valid": false, "reason": defect.to_string() }))),
            }
        }
        Command::Dispersed { probe, n, m, s, search_budget } => {
            let verdict = is_dispersed(g, probe, *n, *m, *s, *search_budget).map_err(err)?;
            let text = to_json(&verdict);
            if verdict.dispersed {
                Outcome::ok(text)
            } else {
                Outcome::failed_check(text)
            }
        }
        Command::GenList => unreachable!("handled before loading a graph"),
    };
    Ok(outcome)
}

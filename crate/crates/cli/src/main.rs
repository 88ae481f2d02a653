//! `heroes`: batch front end for generating, checking, coloring and
//! classifying digraphs, and for running the property sweeps.
//!
//! Exit codes: 0 the claim holds, 1 refuted (a certificate is printed),
//! 2 usage or input error, 3 a budget ran out.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{FileConfig, FlagConfig, Format, Settings};

#[derive(Parser, Debug)]
#[command(name = "heroes", version, about = "Dicoloring toolkit for oriented chordal graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// TOML file with default settings (flags override it).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Exact solver node cap.
    #[arg(long, global = true)]
    node_cap: Option<u64>,
    /// Cap on enumerated transitive sets.
    #[arg(long, global = true)]
    set_cap: Option<usize>,
    /// Cap on generated vertices.
    #[arg(long, global = true)]
    vertex_cap: Option<usize>,
    /// Wall-clock cap for sweeps, in seconds.
    #[arg(long, global = true)]
    time_cap: Option<f64>,
    /// Largest witness handed to the exact solver by `generate`.
    #[arg(long, global = true)]
    exact_limit: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Directory for sweep results and counterexamples.
    #[arg(long, global = true)]
    results_dir: Option<PathBuf>,
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family member and write it with its certificate report.
    Generate {
        /// delta122 | c3k1 | cograph | amplifier | random-chordal
        family: String,
        /// Level (vertex count for random-chordal).
        k: usize,
        /// Graph output path (default `<family>-<k>.graph`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pattern to avoid (random-chordal only).
        #[arg(long)]
        avoid: Option<String>,
    },
    /// Check a property of a graph file.
    Check {
        input: PathBuf,
        /// chordal | p4-free | free:<pattern> | dicoloring:<path> | unit-interval:<path>
        what: String,
    },
    /// Color a graph file and write the coloring.
    Color {
        input: PathBuf,
        /// exact | delta-free | ttk-free | unit-interval
        method: String,
        /// Pattern parameter: D(1,1,k) for delta-free (default 2), TT_k for ttk-free (default 3).
        #[arg(long)]
        k: Option<usize>,
        /// Unit interval representation (unit-interval method).
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Coloring output path (default: input with extension `col`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the exact solver in parallel mode.
        #[arg(long)]
        parallel: bool,
    },
    /// Classify a tournament given as a pattern spec or a graph file.
    Classify { pattern: String },
    /// Run a registered property sweep.
    Verify {
        /// Property name or unique prefix; `list` prints the registry.
        property: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        instance_cap: Option<u64>,
    },
    /// Write Graphviz DOT for a graph file.
    ExportDot {
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// File of `v part` lines; parts become clusters.
        #[arg(long)]
        parts: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn settings(g: &GlobalArgs) -> Result<Settings, String> {
    let file = match &g.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FlagConfig {
        node_cap: g.node_cap,
        set_cap: g.set_cap,
        vertex_cap: g.vertex_cap,
        time_cap: g.time_cap,
        exact_limit: g.exact_limit,
        seed: g.seed,
        format: g.format,
        results_dir: g.results_dir.clone(),
        verbose: g.verbose,
    };
    Settings::resolve(&flags, &file, &|k| std::env::var(k).ok())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = match settings(&cli.global) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(commands::Code::Usage as u8);
        }
    };
    let result = match cli.command {
        Command::Generate { family, k, out, avoid } => commands::generate(&settings, &family, k, out, avoid.as_deref()),
        Command::Check { input, what } => commands::check(&settings, &input, &what),
        Command::Color { input, method, k, rep, out, parallel } => {
            commands::color(&settings, &input, &method, k, rep.as_deref(), out, parallel)
        }
        Command::Classify { pattern } => commands::classify(&settings, &pattern),
        Command::Verify { property, n, k, samples, instance_cap } => {
            commands::verify(&settings, &property, n, k, samples, instance_cap)
        }
        Command::ExportDot { input, coloring, parts, out } => {
            commands::export_dot(&input, coloring.as_deref(), parts.as_deref(), out)
        }
    };
    match result {
        Ok(report) => {
            report.print(settings.format);
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code as u8)
        }
    }
}

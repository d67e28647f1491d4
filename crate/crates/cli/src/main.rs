//! `orbitkit`: command-line access to automaton semigroup computations.
//!
//! Exit codes: 0 definite verdict, 1 usage or parse error, 2 unknown verdict
//! or exhausted budget, 3 internal invariant failure.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{error_report, run_report, Inputs, EXIT_DEFINITE, EXIT_USAGE};

/// Default bound on exploration depth (word length, generator length).
pub const DEFAULT_DEPTH: usize = 12;
/// Default bound on explored nodes.
pub const DEFAULT_NODES: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "orbitkit", version, about = "Orbits, torsion and finiteness of automaton semigroups")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print Graphviz output where the subcommand has a graph.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

/// Generator language; without options every state is a generator.
#[derive(Debug, Args, Clone, Default)]
pub struct LangArgs {
    /// Generator block (comma-separated states, application order); repeatable.
    #[arg(long = "block", value_name = "SEQ", conflicts_with = "ideal")]
    pub blocks: Vec<String>,
    /// Principal left ideal: sequences applying SEQ first.
    #[arg(long, value_name = "SEQ")]
    pub ideal: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Act with a state sequence on a finite or ultimately periodic word.
    Act {
        /// Automaton file, or `@name` for a corpus automaton.
        automaton: String,
        /// State sequence, comma-separated in application order.
        #[arg(long)]
        seq: String,
        /// Finite word.
        #[arg(long, required_unless_present = "up", conflicts_with = "up")]
        word: Option<String>,
        /// Ultimately periodic word `prefix|period`.
        #[arg(long)]
        up: Option<String>,
    },
    /// Orbital graph of a finite word.
    Orbit {
        automaton: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        lang: LangArgs,
    },
    /// Orbit of an ultimately periodic word.
    OrbitUp {
        automaton: String,
        /// Word `prefix|period`.
        #[arg(long)]
        up: String,
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long, default_value_t = 100_000)]
        nodes: usize,
        /// Also try to certify an orbit of at least this size (full language only).
        #[arg(long, value_name = "SIZE")]
        certify: Option<usize>,
        /// Longest prefix examined when certifying.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Search for a chain of words with strictly growing orbits.
    Witness {
        automaton: String,
        /// Orbit size to reach.
        #[arg(long)]
        target: usize,
        #[command(flatten)]
        lang: LangArgs,
        /// Extension length tried at each step.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Search for a simple path of given length in the orbital graph of a word.
    Path {
        automaton: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        length: usize,
        #[command(flatten)]
        lang: LangArgs,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Enumerate the ball of the generated semigroup.
    Ball {
        automaton: String,
        /// Generator (comma-separated states); repeatable, defaults to every state.
        #[arg(long = "gen", value_name = "SEQ")]
        gens: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Largest number of elements kept.
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Decide whether some powers of an element coincide.
    Torsion {
        automaton: String,
        #[arg(long)]
        seq: String,
        /// Largest exponent compared.
        #[arg(long, default_value_t = 32)]
        budget: usize,
        /// `rows` compares canons of powers, `dual` uses the dual orbit of
        /// the sequence, `both` tries rows first.
        #[arg(long, default_value = "both", value_parser = ["rows", "dual", "both"])]
        route: String,
        /// Node budget of the dual orbit.
        #[arg(long, default_value_t = 10_000)]
        nodes: usize,
        /// Dual orbit size needed for a torsion-freeness certificate.
        #[arg(long, default_value_t = 32)]
        target: usize,
    },
    /// Smallest power of an element equal to the identity.
    Order {
        automaton: String,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// Left Cayley graph of the ball.
    Cayley {
        automaton: String,
        #[arg(long = "gen", value_name = "SEQ")]
        gens: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Structural properties of an automaton.
    Classify { automaton: String },
    /// Letters whose periodic words have infinite orbits.
    ClassifyLetters {
        automaton: String,
        /// Also predict the orbit of this word `prefix|period`.
        #[arg(long)]
        up: Option<String>,
    },
    /// Extract an ultimately periodic word with a finite orbit.
    ExtractFinite {
        automaton: String,
        /// Word `prefix|period` with a finite orbit.
        #[arg(long)]
        up: String,
        #[arg(long, default_value_t = 100_000)]
        nodes: usize,
        /// Pairs of prefix lengths examined; defaults to a size-based bound.
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Wang tile sets.
    #[command(subcommand)]
    Wang(WangCommand),
    /// Gadget automaton counting through a state sequence.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Bundled automata.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Dual automaton.
    Dual { automaton: String },
    /// Composite automaton with states `second∘first`.
    Compose {
        /// Automaton applied first.
        #[arg(long)]
        first: String,
        /// Automaton applied second.
        #[arg(long)]
        second: String,
    },
    /// k-fold composite of an automaton with itself.
    Power {
        automaton: String,
        #[arg(long)]
        k: usize,
    },
    /// Inverse automaton.
    Inverse { automaton: String },
    /// Disjoint union of two automata over the same alphabet.
    Union { left: String, right: String },
}

#[derive(Debug, Subcommand)]
pub enum WangCommand {
    /// Report whether the tile set is SW-deterministic.
    Check { tiles: String },
    /// Automaton with one transition per tile.
    ToAutomaton { tiles: String },
    /// Tile set with one tile per transition.
    FromAutomaton { automaton: String },
    /// Search for a rectangle whose horizontal color rows are pairwise distinct.
    Find {
        tiles: String,
        /// Number of tile rows minus one.
        #[arg(long)]
        height: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        width: usize,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        steps: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    /// Print the gadget automaton.
    Build {
        automaton: String,
        /// State reached when the counter overflows.
        #[arg(long)]
        dollar: String,
    },
    /// Check that the marker state cycles through the expanded sequence.
    Verify {
        automaton: String,
        #[arg(long)]
        dollar: String,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// List bundled automata.
    List,
    /// Print a bundled automaton in the text format.
    Dump { name: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Act { .. } => "act",
            Command::Orbit { .. } => "orbit",
            Command::OrbitUp { .. } => "orbit-up",
            Command::Witness { .. } => "witness",
            Command::Path { .. } => "path",
            Command::Ball { .. } => "ball",
            Command::Torsion { .. } => "torsion",
            Command::Order { .. } => "order",
            Command::Cayley { .. } => "cayley",
            Command::Classify { .. } => "classify",
            Command::ClassifyLetters { .. } => "classify-letters",
            Command::ExtractFinite { .. } => "extract-finite",
            Command::Wang(_) => "wang",
            Command::Gadget(_) => "gadget",
            Command::Corpus(_) => "corpus",
            Command::Dual { .. } => "dual",
            Command::Compose { .. } => "compose",
            Command::Power { .. } => "power",
            Command::Inverse { .. } => "inverse",
            Command::Union { .. } => "union",
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_DEFINITE });
        }
    };
    let subcommand = cli.command.name();
    let mut inputs = Inputs::new(&args[1..]);
    let result = commands::run(&cli.command, &mut inputs);
    let (digest, wall_ms) = inputs.finish();
    match result {
        Ok(outcome) => {
            if cli.json {
                let report = run_report(subcommand, &digest, wall_ms, &outcome);
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
            } else if let (true, Some(dot)) = (cli.dot, &outcome.dot) {
                print!("{dot}");
            } else {
                print!("{}", outcome.text);
                if !outcome.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(outcome.status.exit_code())
        }
        Err(err) => {
            if cli.json {
                let report = error_report(subcommand, &digest, wall_ms, &err);
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

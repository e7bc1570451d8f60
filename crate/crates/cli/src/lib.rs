//! The `hlcalc` command line. [`run`] does all the work so tests can drive it
//! without spawning a process.
//!
//! Exit codes: 0 success (derivable, valid), 1 negative answer (not
//! derivable, invalid derivation), 2 timeout, 3 malformed input or usage.

use std::io::Read;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlcalc::calculus::{verify_derivation, DerivationTree, Mode};
use hlcalc::embeddings::{parse_sequent, translate, Flavor};
use hlcalc::foint::foint_sequent;
use hlcalc::prover::{Outcome, Prover, ProverConfig, SearchError};
use hlcalc::{Hypergraph, Sequent};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_TIMEOUT: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

pub const TIMEOUT_ENV: &str = "HLCALC_TIMEOUT_SECS";

#[derive(Parser, Debug)]
#[command(name = "hlcalc", version, about = "Hypergraph Lambek calculus toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide a sequent. Exit 0 if derivable, 1 if not, 2 on timeout.
    Check {
        /// Sequent JSON file, or `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        prover: ProverArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a cut-free derivation as JSON, or NOT_DERIVABLE.
    Derive {
        input: PathBuf,
        #[command(flatten)]
        prover: ProverArgs,
        /// `text` prints an indented outline instead of JSON.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Re-check a derivation JSON file.
    Verify {
        input: PathBuf,
        /// Accept cut nodes.
        #[arg(long)]
        with_cut: bool,
    },
    /// Translate a string-calculus sequent into an HL sequent.
    Translate {
        #[arg(long, value_enum)]
        from: FlavorArg,
        /// e.g. "p/q, q/r -> p/r"; `-` reads stdin.
        sequent: String,
        /// Print the antecedent as Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Print the first-order translation of a sequent.
    Foint {
        input: PathBuf,
        /// Print TPTP `fof` syntax instead.
        #[arg(long)]
        tptp: bool,
    },
    /// Print the canonical key of a graph as hex.
    Canon { input: PathBuf },
    /// Replace an edge of a graph by another graph.
    Replace {
        graph: PathBuf,
        edge: String,
        replacement: PathBuf,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ProverArgs {
    /// Seconds before giving up. Defaults to $HLCALC_TIMEOUT_SECS, then 30.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Reject goals above this size.
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long)]
    pub no_wolf_pruning: bool,
    #[arg(long)]
    pub no_count_check: bool,
    #[arg(long)]
    pub no_invertible_first: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlavorArg {
    L,
    Lp,
    Nl,
    Nlp,
    Nld,
    Lr,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::L => Flavor::L,
            FlavorArg::Lp => Flavor::LP,
            FlavorArg::Nl => Flavor::NL,
            FlavorArg::Nlp => Flavor::NLP,
            FlavorArg::Nld => Flavor::NLD,
            FlavorArg::Lr => Flavor::LR,
        }
    }
}

/// What a command wrote and how it exited.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(code: i32, stdout: String) -> Self {
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

impl ProverArgs {
    fn config(&self, env_timeout: Option<&str>) -> Result<ProverConfig, String> {
        let mut cfg = ProverConfig::default();
        let secs = match (self.timeout, env_timeout) {
            (Some(s), _) => Some(s),
            (None, Some(v)) => Some(
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("{TIMEOUT_ENV} is not a number: `{v}`"))?,
            ),
            (None, None) => None,
        };
        if let Some(s) = secs {
            cfg.timeout = Duration::try_from_secs_f64(s).map_err(|_| format!("bad timeout {s}"))?;
        }
        cfg.max_seq_size = self.max_size;
        cfg.enable_wolf_pruning = !self.no_wolf_pruning;
        cfg.enable_count_check = !self.no_count_check;
        cfg.invertible_first = !self.no_invertible_first;
        Ok(cfg)
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    env_timeout: Option<String>,
}

impl Io<'_> {
    fn read(&mut self, path: &std::path::Path) -> Result<String, String> {
        if path.as_os_str() == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn input_error(source: &str, err: impl std::fmt::Display) -> Output {
    Output::fail(EXIT_INPUT, format!("{source}: {err}\n"))
}

/// Runs one invocation. `argv[0]` is the program name. Reads `-` inputs from
/// stdin and the timeout override from the environment.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env_timeout = std::env::var(TIMEOUT_ENV).ok();
    run_with(argv, &mut std::io::stdin(), env_timeout)
}

/// [`run`] with explicit stdin and timeout override.
pub fn run_with<I, T>(argv: I, stdin: &mut dyn Read, env_timeout: Option<String>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::fail(EXIT_INPUT, text)
            } else {
                Output::ok(EXIT_OK, text)
            };
        }
    };
    let mut io = Io { stdin, env_timeout };
    dispatch(cli.command, &mut io)
}

fn read_sequent(io: &mut Io<'_>, path: &std::path::Path) -> Result<Sequent, Output> {
    let text = io.read(path).map_err(|e| Output::fail(EXIT_INPUT, e + "\n"))?;
    Sequent::from_json(&text).map_err(|e| input_error(&path.display().to_string(), e))
}

fn read_graph(io: &mut Io<'_>, path: &std::path::Path) -> Result<Hypergraph, Output> {
    let text = io.read(path).map_err(|e| Output::fail(EXIT_INPUT, e + "\n"))?;
    Hypergraph::from_json(&text).map_err(|e| input_error(&path.display().to_string(), e))
}

fn search(io: &Io<'_>, args: &ProverArgs, goal: &Sequent) -> Result<Outcome, Output> {
    let cfg = args
        .config(io.env_timeout.as_deref())
        .map_err(|e| Output::fail(EXIT_INPUT, e + "\n"))?;
    match Prover::new(cfg).prove(goal) {
        Ok(out) => Ok(out),
        Err(e @ SearchError::Timeout(_)) => Err(Output::fail(EXIT_TIMEOUT, format!("TIMEOUT: {e}\n"))),
        Err(e @ SearchError::SizeLimit { .. }) => Err(Output::fail(EXIT_INPUT, format!("{e}\n"))),
    }
}

fn outline(tree: &DerivationTree, depth: usize, out: &mut String) {
    out.push_str(&format!("{}{}: {}\n", "  ".repeat(depth), tree.rule.tag(), tree.conclusion));
    for c in &tree.children {
        outline(c, depth + 1, out);
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Output {
    let result = match command {
        Command::Check { input, prover, format } => read_sequent(io, &input).and_then(|goal| {
            let out = search(io, &prover, &goal)?;
            let derivable = out.is_derivable();
            let code = if derivable { EXIT_OK } else { EXIT_NO };
            let text = match format {
                Format::Text => format!("{}\n", if derivable { "DERIVABLE" } else { "NOT_DERIVABLE" }),
                Format::Json => format!("{}\n", serde_json::json!({ "derivable": derivable })),
            };
            Ok(Output::ok(code, text))
        }),
        Command::Derive { input, prover, format } => read_sequent(io, &input).and_then(|goal| {
            Ok(match search(io, &prover, &goal)?.tree() {
                None => Output::ok(EXIT_NO, "NOT_DERIVABLE\n".into()),
                Some(tree) => {
                    let mut text = String::new();
                    match format {
                        Format::Json => {
                            text = tree.to_json();
                            text.push('\n');
                        }
                        Format::Text => outline(tree, 0, &mut text),
                    }
                    Output::ok(EXIT_OK, text)
                }
            })
        }),
        Command::Verify { input, with_cut } => io
            .read(&input)
            .map_err(|e| Output::fail(EXIT_INPUT, e + "\n"))
            .and_then(|text| {
                DerivationTree::from_json(&text).map_err(|e| input_error(&input.display().to_string(), e))
            })
            .map(|tree| {
                let mode = if with_cut { Mode::WithCut } else { Mode::CutFree };
                match verify_derivation(&tree, mode) {
                    Ok(()) => Output::ok(EXIT_OK, "VALID\n".into()),
                    Err(e) => Output {
                        code: EXIT_NO,
                        stdout: "INVALID\n".into(),
                        stderr: format!("{e}\n"),
                    },
                }
            }),
        Command::Translate { from, sequent, dot } => {
            let text = if sequent == "-" {
                io.read(std::path::Path::new("-")).map_err(|e| Output::fail(EXIT_INPUT, e + "\n"))
            } else {
                Ok(sequent)
            };
            text.and_then(|text| {
                let seq = parse_sequent(from.into(), text.trim()).map_err(|e| input_error("sequent", e))?;
                let hl = translate(&seq).map_err(|e| input_error("sequent", e))?;
                Ok(if dot {
                    Output::ok(EXIT_OK, hl.antecedent().to_dot())
                } else {
                    Output::ok(EXIT_OK, hl.to_json() + "\n")
                })
            })
        }
        Command::Foint { input, tptp } => read_sequent(io, &input).map(|s| {
            let f = foint_sequent(&s);
            let text = if tptp { f.to_tptp("goal") } else { f.to_string() };
            Output::ok(EXIT_OK, text + "\n")
        }),
        Command::Canon { input } => {
            read_graph(io, &input).map(|g| Output::ok(EXIT_OK, g.canonical_key().to_hex() + "\n"))
        }
        Command::Replace {
            graph,
            edge,
            replacement,
            dot,
        } => read_graph(io, &graph).and_then(|g| {
            let h = read_graph(io, &replacement)?;
            let r = g.replace(&edge, &h).map_err(|e| input_error("replace", e))?;
            Ok(Output::ok(EXIT_OK, if dot { r.to_dot() } else { r.to_json() + "\n" }))
        }),
    };
    result.unwrap_or_else(|e| e)
}

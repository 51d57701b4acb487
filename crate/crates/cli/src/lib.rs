//! `threshold` command-line front end. Everything goes through [`run`], so the
//! binary and the tests exercise the same code path.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use threshold_core::alpha::{compute_alpha_exact_with, verify_conjecture_corpus, verify_conjecture_games};
use threshold_core::complete::{complete_order_with, csg_payoff, random_weighted_game};
use threshold_core::spec::{game_from_spec, graph_from_spec, spec_numbers};
use threshold_core::graphic::{alpha_graph_with, build_gadget, decide_alpha_at_most_with, Graph};
use threshold_core::minnorm::{min_norm_point_with, strengthened_bound, tightness_check_with, DEFAULT_TOLERANCE};
use threshold_core::rational;
use threshold_core::{Error, Limits, SimpleGame};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "threshold", version, about = "Critical threshold value of simple games")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Raise the player/vertex caps of exhaustive routines to this value.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact α with an optimal payoff.
    Alpha(GameArg),
    /// Certified min-norm point of Q(W) and the bound it implies.
    MinNorm {
        #[command(flatten)]
        game: GameArg,
        /// Gap tolerance of the certificate.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Whether α = n/4, with convex-combination witnesses.
    Tightness(GameArg),
    /// α of the graphic game of a graph.
    GraphAlpha(GraphArg),
    /// Decide α_G ≤ a.
    GraphDecide {
        #[command(flatten)]
        graph: GraphArg,
        /// Threshold, as an integer, p/q or decimal.
        #[arg(long)]
        a: String,
    },
    /// The doubled graph whose α is half the independence number.
    Gadget(GraphArg),
    /// Suffix-size payoff of a complete game.
    Csg(GameArg),
    /// Generate a game or graph: cycle:n, random-game:n:size, random-graph:n:m, wvg:n.
    Gen { spec: String },
    /// Check α ≤ n/4 on given games or a random corpus.
    VerifyConjecture {
        /// Game specs or files; when empty a random corpus is used.
        games: Vec<String>,
        /// Players per random game.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Number of seeds, starting at --seed.
        #[arg(long, default_value_t = 20)]
        count: u64,
        /// Target antichain size of each random game.
        #[arg(long, default_value_t = 6)]
        size: usize,
    },
}

#[derive(clap::Args, Debug)]
struct GameArg {
    /// Game JSON file or generator spec (cycle:n, random-game:n:size, wvg:n).
    #[arg(long)]
    game: String,
}

#[derive(clap::Args, Debug)]
struct GraphArg {
    /// Graph file (JSON or DIMACS) or generator spec (cycle:n, random-graph:n:m).
    #[arg(value_name = "GRAPH", required_unless_present = "graph_flag")]
    path: Option<String>,
    #[arg(long = "graph", value_name = "GRAPH", conflicts_with = "path")]
    graph_flag: Option<String>,
}

impl GraphArg {
    fn source(&self) -> &str {
        self.path.as_deref().or(self.graph_flag.as_deref()).expect("clap enforces one")
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<(Value, i32), Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let limits = match cli.budget {
        Some(b) => Limits::default().with_player_budget(b),
        None => Limits::default(),
    };
    match execute(&cli, &limits) {
        Ok((value, code)) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("JSON value") + "\n",
                Format::Table => table(&value),
            };
            match &cli.out {
                Some(path) => match fs::write(path, &text) {
                    Ok(()) => Output { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => failure(EXIT_INVALID, format!("cannot write {path}: {e}")),
                },
                None => Output { code, stdout: text, stderr: String::new() },
            }
        }
        Err(Failure::Core(e)) => failure(if e.is_budget() { EXIT_BUDGET } else { EXIT_INVALID }, e.to_string()),
        Err(Failure::Input(msg)) => failure(EXIT_INVALID, msg),
    }
}

fn failure(code: i32, msg: String) -> Output {
    Output { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn execute(cli: &Cli, limits: &Limits) -> CmdResult {
    match &cli.command {
        Command::Alpha(arg) => {
            let game = load_game(&arg.game, cli.seed)?;
            let cert = compute_alpha_exact_with(&game, limits)?;
            let mut v = serde_json::to_value(&cert).expect("serializes");
            v["n"] = json!(game.n());
            v["quarter_n"] = json!(rational::format(&rational::ratio(game.n() as i64, 4)));
            v["weighted"] = json!(cert.alpha < rational::one());
            Ok((v, EXIT_OK))
        }
        Command::MinNorm { game, tol } => {
            if !(*tol > 0.0 && tol.is_finite()) {
                return Err(Failure::Input(format!("--tol must be positive, got {tol}")));
            }
            let game = load_game(&game.game, cli.seed)?;
            let (p, cert) = min_norm_point_with(&game, *tol, limits)?;
            let bound = strengthened_bound(&game, &p)?;
            let mut v = serde_json::to_value(&cert).expect("serializes");
            v["payoff"] = serde_json::to_value(&p).expect("serializes");
            v["strengthened_bound"] = json!(rational::format(&bound));
            v["quarter_n"] = json!(rational::format(&rational::ratio(game.n() as i64, 4)));
            v["iterations"] = json!(cert.iterations);
            Ok((v, EXIT_OK))
        }
        Command::Tightness(arg) => {
            let game = load_game(&arg.game, cli.seed)?;
            let report = tightness_check_with(&game, limits)?;
            let mut v = serde_json::to_value(&report).expect("serializes");
            v["n"] = json!(game.n());
            Ok((v, EXIT_OK))
        }
        Command::GraphAlpha(arg) => {
            let g = load_graph(arg.source(), cli.seed)?;
            let cert = alpha_graph_with(&g, limits)?;
            let mut v = serde_json::to_value(&cert).expect("serializes");
            v["n"] = json!(g.n());
            Ok((v, EXIT_OK))
        }
        Command::GraphDecide { graph, a } => {
            let g = load_graph(graph.source(), cli.seed)?;
            let a = rational::parse(a)?;
            let decision = decide_alpha_at_most_with(&g, &a, limits)?;
            let mut v = serde_json::to_value(&decision).expect("serializes");
            if let Some(alpha) = decision.alpha() {
                v["alpha"] = json!(rational::format(alpha));
            }
            let code = if decision.answer { EXIT_OK } else { EXIT_FALSE };
            Ok((v, code))
        }
        Command::Gadget(arg) => {
            let g = load_graph(arg.source(), cli.seed)?;
            Ok((serde_json::to_value(build_gadget(&g)?).expect("serializes"), EXIT_OK))
        }
        Command::Csg(arg) => {
            let game = load_game(&arg.game, cli.seed)?;
            let cg = complete_order_with(&game, limits)?
                .ok_or_else(|| Failure::Input("the game is not complete (desirability is not total)".into()))?;
            let report = csg_payoff(&cg)?;
            let mut v = serde_json::to_value(&report).expect("serializes");
            v["ordering"] = json!(cg.ordering());
            v["alpha"] = json!(rational::format(&compute_alpha_exact_with(&game, limits)?.alpha));
            Ok((v, EXIT_OK))
        }
        Command::Gen { spec } => Ok((generate(spec, cli.seed)?, EXIT_OK)),
        Command::VerifyConjecture { games, n, count, size } => {
            let report = if games.is_empty() {
                let seeds: Vec<u64> = (cli.seed..cli.seed.saturating_add(*count)).collect();
                verify_conjecture_corpus(*n, &seeds, *size)?
            } else {
                let loaded = games
                    .iter()
                    .map(|s| Ok((s.clone(), load_game(s, cli.seed)?)))
                    .collect::<Result<Vec<_>, Failure>>()?;
                verify_conjecture_games(&loaded)?
            };
            let code = if report.all_hold { EXIT_OK } else { EXIT_FALSE };
            Ok((serde_json::to_value(&report).expect("serializes"), code))
        }
    }
}

fn generate(spec: &str, seed: u64) -> Result<Value, Failure> {
    if let Some(g) = game_from_spec(spec, seed)? {
        let mut v = serde_json::to_value(&g).expect("serializes");
        if let Some(nums) = spec_numbers(spec, "wvg", 1)? {
            let wvg = random_weighted_game(nums[0], seed)?;
            v["weights"] = json!(wvg.weights);
            v["quota"] = json!(wvg.quota);
        }
        return Ok(v);
    }
    if let Some(g) = graph_from_spec(spec, seed)? {
        return Ok(serde_json::to_value(&g).expect("serializes"));
    }
    Err(Failure::Input(format!(
        "unknown generator {spec:?}; expected cycle:n, random-game:n:size, random-graph:n:m or wvg:n"
    )))
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(Path::new(path)).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
}

fn load_game(source: &str, seed: u64) -> Result<SimpleGame, Failure> {
    match game_from_spec(source, seed)? {
        Some(g) => Ok(g),
        None => Ok(SimpleGame::from_json(&read(source)?)?),
    }
}

fn load_graph(source: &str, seed: u64) -> Result<Graph, Failure> {
    match graph_from_spec(source, seed)? {
        Some(g) => Ok(g),
        None => Ok(Graph::parse(&read(source)?)?),
    }
}

/// Two-column rendering of the top-level fields.
fn table(value: &Value) -> String {
    let Value::Object(map) = value else {
        return format!("{value}\n");
    };
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    map.iter()
        .map(|(k, v)| {
            let cell = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            format!("{k:<width$}  {cell}\n")
        })
        .collect()
}

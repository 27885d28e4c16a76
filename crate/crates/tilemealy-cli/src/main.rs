//! Command-line front end: tile set and automaton file I/O, solver and
//! engine invocations, JSON reports, and SVG rendering.
//!
//! Exit codes: 0 for a definitive answer, 1 for a domain negative
//! (NW-determinism conflict, a failed verification), 2 for parse or usage
//! errors, 3 when a budget ran out before an answer was established.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tilemealy::format::{parse_automaton, parse_tileset, print_automaton};
use tilemealy::reduction::{
    add_sink, build_reduction, diagonal_word, semidecide, verify_claim, verify_lemma1, ClaimMode,
    Lemma1Params, ReductionError, SemidecideBudgets, SemidecideOutcome, CLAIM_EXHAUSTIVE_CAP,
};
use tilemealy::render::{render_rect_svg, render_torus_svg};
use tilemealy::report::{
    to_json, EnumerateReport, LeastNReport, NwCheckReport, OrderReport, RectGrid,
    SemidecideReport, TileReport, TilingGrid, TorusGrid, TorusReport,
};
use tilemealy::semigroup::{enumerate, order_search, Budget, OrderOutcome, OrderStop};
use tilemealy::wang::{
    find_torus_tiling, is_nw_deterministic, least_untileable_n, tile_rectangle,
    validate_rect_tiling, validate_torus_tiling, LeastNOutcome, SolveOutcome, TileSet,
};
use tilemealy::words::Word;
use tilemealy::MealyAutomaton;

/// Fixed default seed so sampled checks are reproducible.
const DEFAULT_SEED: u64 = 42;
const DEFAULT_NODE_BUDGET: u64 = 5_000_000;
/// Environment variable overriding the default node and element budgets.
const BUDGET_ENV: &str = "TILEMEALY_DEFAULT_BUDGET";

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tilemealy",
    version,
    about = "Wang tilings, Mealy automata, and the semigroups between them"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct JsonOut {
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct EngineBudget {
    /// Cap on distinct semigroup elements.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    budget_elements: Option<u64>,
    /// Cap on reachable states per power machine.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    budget_power_states: Option<u64>,
    /// Cap on indexing-word length during enumeration.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    budget_word_length: Option<u64>,
}

impl EngineBudget {
    fn resolve(&self) -> Budget {
        let defaults = Budget::default();
        Budget {
            max_elements: self
                .budget_elements
                .map(|b| b as usize)
                .or_else(|| env_budget().map(|b| b as usize))
                .unwrap_or(defaults.max_elements),
            max_power_states: self
                .budget_power_states
                .map(|b| b as usize)
                .unwrap_or(defaults.max_power_states),
            max_word_length: self
                .budget_word_length
                .map(|b| b as usize)
                .unwrap_or(defaults.max_word_length),
        }
    }
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok()?.trim().parse().ok()
}

fn node_budget(flag: Option<u64>) -> u64 {
    flag.or_else(env_budget).unwrap_or(DEFAULT_NODE_BUDGET)
}

#[derive(Subcommand)]
enum Cmd {
    /// Check NW-determinism of a tile set.
    NwCheck {
        tileset: PathBuf,
        #[command(flatten)]
        json: JsonOut,
    },
    /// Search for a valid width × height rectangle tiling.
    Tile {
        tileset: PathBuf,
        width: usize,
        height: usize,
        #[arg(long, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: Option<u64>,
        #[command(flatten)]
        json: JsonOut,
        /// Render a found tiling to this SVG path.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Search for a periodic (torus) tiling, smallest area first.
    Torus {
        tileset: PathBuf,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_px: usize,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_py: usize,
        #[arg(long, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: Option<u64>,
        #[command(flatten)]
        json: JsonOut,
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Find the least n such that the (n+1) × (n+1) square is untileable.
    LeastN {
        tileset: PathBuf,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_n: usize,
        #[arg(long, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: Option<u64>,
        #[command(flatten)]
        json: JsonOut,
    },
    /// Emit the Mealy automaton of an NW-deterministic tile set.
    Reduce {
        tileset: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
        /// Add the absorbing sink state to the emitted machine.
        #[arg(long)]
        with_sink: bool,
    },
    /// Enumerate the semigroup generated by an automaton, under a budget.
    Enumerate {
        automaton: PathBuf,
        #[command(flatten)]
        budget: EngineBudget,
        #[command(flatten)]
        json: JsonOut,
    },
    /// Find the least n with f^n = g, for state words f and g.
    Order {
        automaton: PathBuf,
        /// State word f: whitespace-separated state names.
        #[arg(short = 'f', long = "f", value_name = "STATES")]
        f: String,
        /// State word g: whitespace-separated state names.
        #[arg(short = 'g', long = "g", value_name = "STATES")]
        g: String,
        #[arg(long, default_value_t = 64, value_name = "N")]
        max_n: u64,
        #[command(flatten)]
        budget: EngineBudget,
        #[command(flatten)]
        json: JsonOut,
    },
    /// Check the diagonal-shift identity against a found torus tiling.
    VerifyLemma1 {
        tileset: PathBuf,
        #[arg(long, default_value_t = 6, value_name = "N")]
        m_max: usize,
        #[arg(long, default_value_t = 6, value_name = "N")]
        n_max: usize,
        /// Length of compared prefixes; defaults to 4 (m_max + n_max).
        #[arg(long, value_name = "L")]
        prefix_len: Option<usize>,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_px: usize,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_py: usize,
        #[arg(long, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: Option<u64>,
        #[command(flatten)]
        json: JsonOut,
    },
    /// Check the tail-collapse claim for an untileable square.
    VerifyClaim {
        tileset: PathBuf,
        /// Square parameter n; auto-certified via least-n search if omitted.
        #[arg(long, value_name = "N")]
        claim_n: Option<usize>,
        /// Sample this many triples instead of exhausting the space.
        #[arg(long, value_name = "COUNT")]
        sample: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED, value_name = "SEED")]
        seed: u64,
        #[arg(long, default_value_t = 3, value_name = "L")]
        prefix_len: usize,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_n: usize,
        #[arg(long, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: Option<u64>,
        /// Cap on exhaustive evaluations.
        #[arg(long, default_value_t = CLAIM_EXHAUSTIVE_CAP, value_name = "N")]
        cap: u64,
        #[command(flatten)]
        json: JsonOut,
    },
    /// Interleave both certificate searches until one side lands.
    Semidecide {
        tileset: PathBuf,
        #[arg(long, default_value_t = 6, value_name = "N")]
        max_px: usize,
        #[arg(long, default_value_t = 6, value_name = "N")]
        max_py: usize,
        #[arg(long, default_value_t = 6, value_name = "N")]
        max_n: usize,
        #[arg(long, value_name = "NODES", value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: Option<u64>,
        #[command(flatten)]
        budget: EngineBudget,
        #[command(flatten)]
        json: JsonOut,
    },
    /// Render a tiling from a solver's JSON report to SVG.
    Render {
        tileset: PathBuf,
        /// JSON report produced by `tile` or `torus`.
        #[arg(long, value_name = "PATH")]
        tiling: PathBuf,
        #[arg(long, value_name = "PATH")]
        svg: PathBuf,
    },
}

/// Errors that reach the user; each knows its exit code.
#[derive(Debug)]
enum CliError {
    Input(String),
    Negative(String),
    Budget(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Negative(m) | CliError::Budget(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Negative(_) => EXIT_NEGATIVE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_tileset(path: &Path) -> Result<TileSet, CliError> {
    let text = read_file(path)?;
    parse_tileset(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_automaton(path: &Path) -> Result<MealyAutomaton, CliError> {
    let text = read_file(path)?;
    parse_automaton(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit_json<T: serde::Serialize>(out: &JsonOut, report: &T) -> Result<(), CliError> {
    if let Some(path) = &out.json {
        let json = to_json(report);
        if path.as_os_str() == "-" {
            print!("{json}");
        } else {
            write_file(path, &json)?;
        }
    }
    Ok(())
}

fn parse_state_word(m: &MealyAutomaton, input: &str, which: &str) -> Result<Word, CliError> {
    let names: Vec<&str> = input.split_whitespace().collect();
    if names.is_empty() {
        return Err(CliError::Input(format!("{which} must name at least one state")));
    }
    m.state_word(&names)
        .map_err(|e| CliError::Input(format!("{which}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::NwCheck { tileset, json } => {
            let ts = load_tileset(&tileset)?;
            let (report, code) = match is_nw_deterministic(&ts) {
                Ok(()) => (
                    NwCheckReport {
                        nw_deterministic: true,
                        conflict: None,
                    },
                    EXIT_OK,
                ),
                Err(c) => (
                    NwCheckReport {
                        nw_deterministic: false,
                        conflict: Some((
                            ts.tile_name(c.first).to_owned(),
                            ts.tile_name(c.second).to_owned(),
                        )),
                    },
                    EXIT_NEGATIVE,
                ),
            };
            match &report.conflict {
                None => println!("NW-deterministic: yes"),
                Some((a, b)) => {
                    println!("NW-deterministic: no (tiles `{a}` and `{b}` share north and west colors)")
                }
            }
            emit_json(&json, &report)?;
            Ok(code)
        }

        Cmd::Tile {
            tileset,
            width,
            height,
            budget_nodes,
            json,
            svg,
        } => {
            if width == 0 || height == 0 {
                return Err(CliError::Input("width and height must be at least 1".into()));
            }
            let ts = load_tileset(&tileset)?;
            let (outcome, stats) = tile_rectangle(&ts, width, height, node_budget(budget_nodes));
            let report = match &outcome {
                SolveOutcome::Found(t) => {
                    debug_assert!(validate_rect_tiling(&ts, t).is_ok());
                    println!("found a {width}x{height} tiling ({} nodes)", stats.nodes);
                    if let Some(path) = &svg {
                        write_file(path, &render_rect_svg(&ts, t))?;
                    }
                    TileReport {
                        command: "tile",
                        outcome: "found",
                        nodes: stats.nodes,
                        grid: Some(RectGrid::from_tiling(&ts, t)),
                    }
                }
                SolveOutcome::Exhausted => {
                    println!("no {width}x{height} tiling exists (exhaustive, {} nodes)", stats.nodes);
                    TileReport {
                        command: "tile",
                        outcome: "none",
                        nodes: stats.nodes,
                        grid: None,
                    }
                }
                SolveOutcome::BudgetExceeded => {
                    println!("budget exceeded after {} nodes", stats.nodes);
                    TileReport {
                        command: "tile",
                        outcome: "budget_exceeded",
                        nodes: stats.nodes,
                        grid: None,
                    }
                }
            };
            emit_json(&json, &report)?;
            Ok(EXIT_OK)
        }

        Cmd::Torus {
            tileset,
            max_px,
            max_py,
            budget_nodes,
            json,
            svg,
        } => {
            let ts = load_tileset(&tileset)?;
            let (outcome, stats) = find_torus_tiling(&ts, max_px, max_py, node_budget(budget_nodes));
            let report = match &outcome {
                SolveOutcome::Found(t) => {
                    debug_assert!(validate_torus_tiling(&ts, t).is_ok());
                    println!("found a {}x{} torus tiling ({} nodes)", t.px, t.py, stats.nodes);
                    if let Some(path) = &svg {
                        write_file(path, &render_torus_svg(&ts, t))?;
                    }
                    TorusReport {
                        command: "torus",
                        outcome: "found",
                        nodes: stats.nodes,
                        grid: Some(TorusGrid::from_tiling(&ts, t)),
                    }
                }
                SolveOutcome::Exhausted => {
                    println!("no torus tiling up to {max_px}x{max_py} ({} nodes)", stats.nodes);
                    TorusReport {
                        command: "torus",
                        outcome: "none_up_to_max",
                        nodes: stats.nodes,
                        grid: None,
                    }
                }
                SolveOutcome::BudgetExceeded => {
                    println!("budget exceeded after {} nodes", stats.nodes);
                    TorusReport {
                        command: "torus",
                        outcome: "budget_exceeded",
                        nodes: stats.nodes,
                        grid: None,
                    }
                }
            };
            emit_json(&json, &report)?;
            Ok(EXIT_OK)
        }

        Cmd::LeastN {
            tileset,
            max_n,
            budget_nodes,
            json,
        } => {
            let ts = load_tileset(&tileset)?;
            let (outcome, stats) = least_untileable_n(&ts, max_n, node_budget(budget_nodes));
            let report = match outcome {
                LeastNOutcome::Found { n } => {
                    println!("least untileable square: n = {n} (side {})", n + 1);
                    LeastNReport {
                        command: "least-n",
                        outcome: "found",
                        n: Some(n),
                        max_n,
                        nodes: stats.nodes,
                    }
                }
                LeastNOutcome::NoneUpToMax => {
                    println!("every square up to side {} is tileable", max_n + 1);
                    LeastNReport {
                        command: "least-n",
                        outcome: "none_up_to_max",
                        n: None,
                        max_n,
                        nodes: stats.nodes,
                    }
                }
                LeastNOutcome::BudgetExceeded { at_n } => {
                    println!("budget exceeded while deciding side {}", at_n + 1);
                    LeastNReport {
                        command: "least-n",
                        outcome: "budget_exceeded",
                        n: Some(at_n),
                        max_n,
                        nodes: stats.nodes,
                    }
                }
            };
            emit_json(&json, &report)?;
            Ok(EXIT_OK)
        }

        Cmd::Reduce {
            tileset,
            output,
            with_sink,
        } => {
            let ts = load_tileset(&tileset)?;
            let r = build_reduction(&ts).map_err(|e| CliError::Negative(e.to_string()))?;
            let machine = if with_sink { add_sink(&r) } else { r.machine().clone() };
            let text = print_automaton(&machine);
            match output {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }

        Cmd::Enumerate {
            automaton,
            budget,
            json,
        } => {
            let m = load_automaton(&automaton)?;
            let b = budget.resolve();
            let verdict = enumerate(&m, &b);
            let report = EnumerateReport::new(&verdict, &b);
            println!(
                "{}: {} element(s)",
                report.verdict.replace('_', " "),
                report.size
            );
            emit_json(&json, &report)?;
            Ok(EXIT_OK)
        }

        Cmd::Order {
            automaton,
            f,
            g,
            max_n,
            budget,
            json,
        } => {
            let m = load_automaton(&automaton)?;
            let fw = parse_state_word(&m, &f, "f")?;
            let gw = parse_state_word(&m, &g, "g")?;
            let b = budget.resolve();
            let outcome = order_search(&m, &fw, &gw, max_n, &b)
                .map_err(|e| CliError::Budget(e.to_string()))?;
            let report = match outcome {
                OrderOutcome::Found(n) => {
                    println!("f^{n} = g");
                    OrderReport {
                        command: "order",
                        found: true,
                        n: Some(n),
                        stop: None,
                        max_n,
                    }
                }
                OrderOutcome::NotFound(stop) => {
                    let stop_str = match stop {
                        OrderStop::EnteredCycle { .. } => "entered_cycle",
                        OrderStop::MaxReached => "max_reached",
                    };
                    println!("no n ≤ {max_n} with f^n = g ({stop_str})");
                    OrderReport {
                        command: "order",
                        found: false,
                        n: None,
                        stop: Some(stop_str),
                        max_n,
                    }
                }
            };
            emit_json(&json, &report)?;
            Ok(EXIT_OK)
        }

        Cmd::VerifyLemma1 {
            tileset,
            m_max,
            n_max,
            prefix_len,
            max_px,
            max_py,
            budget_nodes,
            json,
        } => {
            let ts = load_tileset(&tileset)?;
            let r = build_reduction(&ts).map_err(|e| CliError::Negative(e.to_string()))?;
            let (outcome, stats) = find_torus_tiling(&ts, max_px, max_py, node_budget(budget_nodes));
            let torus = match outcome {
                SolveOutcome::Found(t) => t,
                SolveOutcome::Exhausted => {
                    return Err(CliError::Budget(format!(
                        "no torus tiling up to {max_px}x{max_py}; the check's hypothesis cannot be established"
                    )))
                }
                SolveOutcome::BudgetExceeded => {
                    return Err(CliError::Budget(format!(
                        "torus search budget exhausted after {} nodes",
                        stats.nodes
                    )))
                }
            };
            let params = match prefix_len {
                Some(l) => Lemma1Params {
                    m_max,
                    n_max,
                    prefix_len: l,
                },
                None => Lemma1Params::with_default_prefix(m_max, n_max),
            };
            let report = verify_lemma1(&r, &torus, &params).map_err(reduction_error)?;
            println!(
                "lemma1 on a {}x{} torus: {}",
                torus.px,
                torus.py,
                if report.pass { "pass" } else { "FAIL" }
            );
            emit_json(&json, &report)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_NEGATIVE })
        }

        Cmd::VerifyClaim {
            tileset,
            claim_n,
            sample,
            seed,
            prefix_len,
            max_n,
            budget_nodes,
            cap,
            json,
        } => {
            let ts = load_tileset(&tileset)?;
            let r = build_reduction(&ts).map_err(|e| CliError::Negative(e.to_string()))?;
            let nodes = node_budget(budget_nodes);
            let n = match claim_n {
                Some(n) => n,
                None => match least_untileable_n(&ts, max_n, nodes).0 {
                    LeastNOutcome::Found { n } => n,
                    LeastNOutcome::NoneUpToMax => {
                        return Err(CliError::Budget(format!(
                            "every square up to side {} is tileable; the claim's hypothesis cannot be established",
                            max_n + 1
                        )))
                    }
                    LeastNOutcome::BudgetExceeded { at_n } => {
                        return Err(CliError::Budget(format!(
                            "least-n search budget exhausted while deciding side {}",
                            at_n + 1
                        )))
                    }
                },
            };
            let mode = match sample {
                Some(count) => ClaimMode::Sample { count, seed },
                None => ClaimMode::Exhaustive,
            };
            let report = verify_claim(&r, n, mode, prefix_len, nodes, cap).map_err(reduction_error)?;
            println!(
                "claim at n = {n} ({} evaluations): {}",
                report.evaluations,
                if report.pass { "pass" } else { "FAIL" }
            );
            emit_json(&json, &report)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_NEGATIVE })
        }

        Cmd::Semidecide {
            tileset,
            max_px,
            max_py,
            max_n,
            budget_nodes,
            budget,
            json,
        } => {
            let ts = load_tileset(&tileset)?;
            let budgets = SemidecideBudgets {
                max_px,
                max_py,
                max_n,
                node_budget: node_budget(budget_nodes),
                enumerate_budget: budget.resolve(),
                ..SemidecideBudgets::default()
            };
            let (outcome, spent) = semidecide(&ts, &budgets).map_err(reduction_error)?;
            let report = SemidecideReport::new(&ts, &outcome, spent);
            let code = match &outcome {
                SemidecideOutcome::InfiniteCertified { torus, .. } => {
                    println!(
                        "infinite: certified by a {}x{} torus tiling",
                        torus.px, torus.py
                    );
                    EXIT_OK
                }
                SemidecideOutcome::FiniteCertified { n, bound, exact_size } => {
                    match exact_size {
                        Some(size) => println!(
                            "finite: untileable square at n = {n}, bound {bound}, exact size {size}"
                        ),
                        None => println!("finite: untileable square at n = {n}, bound {bound}"),
                    }
                    EXIT_OK
                }
                SemidecideOutcome::Unknown { .. } => {
                    println!("unknown: budgets exhausted without a certificate");
                    EXIT_BUDGET
                }
            };
            emit_json(&json, &report)?;
            Ok(code)
        }

        Cmd::Render { tileset, tiling, svg } => {
            let ts = load_tileset(&tileset)?;
            let text = read_file(&tiling)?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", tiling.display())))?;
            let grid_value = value.get("grid").cloned().unwrap_or(value);
            let grid: TilingGrid = serde_json::from_value(grid_value).map_err(|e| {
                CliError::Input(format!("{}: no tiling grid found: {e}", tiling.display()))
            })?;
            let rendered = match grid {
                TilingGrid::Rect(g) => {
                    let t = g
                        .to_tiling(&ts)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    validate_rect_tiling(&ts, &t)
                        .map_err(|v| CliError::Input(format!("{} violated adjacencies", v.len())))?;
                    render_rect_svg(&ts, &t)
                }
                TilingGrid::Torus(g) => {
                    let t = g
                        .to_tiling(&ts)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    validate_torus_tiling(&ts, &t)
                        .map_err(|v| CliError::Input(format!("{} violated adjacencies", v.len())))?;
                    // Exercise the diagonal reading as a cheap consistency
                    // check of the report before rendering.
                    if let Ok(r) = build_reduction(&ts) {
                        let _ = diagonal_word(&t, &r, 0);
                    }
                    render_torus_svg(&ts, &t)
                }
            };
            write_file(&svg, &rendered)?;
            println!("wrote {}", svg.display());
            Ok(EXIT_OK)
        }
    }
}

fn reduction_error(e: ReductionError) -> CliError {
    match e {
        ReductionError::PreconditionNotCertified { .. } => CliError::Budget(e.to_string()),
        ReductionError::ExhaustiveCapExceeded { .. } => CliError::Input(format!(
            "{e}; rerun with --sample COUNT"
        )),
        ReductionError::NotNwDeterministic { .. } => CliError::Negative(e.to_string()),
        ReductionError::InvalidTorus { .. } | ReductionError::InvalidParameter(_) => {
            CliError::Input(e.to_string())
        }
        other => CliError::Budget(other.to_string()),
    }
}

//! The Mealy automaton of an NW-deterministic tile set, and the machinery
//! certifying both directions of "plane tileable ⇔ generated semigroup
//! infinite".
//!
//! The machine reads a diagonal of tiles and writes the diagonal below it:
//! states and letters are the tiles plus a bottom letter marking an
//! impossible placement, the next state is always the letter just read (a
//! reset automaton), and `σ(s, t)` is the unique tile fitting east of `s`
//! and south of `t`, or bottom when none fits.
//!
//! On the infinite side, a torus tiling yields diagonal words that the
//! bottom state shifts: `σ_⊥^m(w_n) = ⊥^m w_{m+n}`, so the powers of `σ_⊥`
//! are pairwise distinct and the semigroup is infinite. On the finite side,
//! an untileable `(n+1) × (n+1)` square forces every `σ_u` with `|u| = 2n`
//! to blank its output after the first `n` letters, which bounds the
//! semigroup's size. [`semidecide`] interleaves the searches for the two
//! kinds of certificate.

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::mealy::{MealyAutomaton, MealyError};
use crate::semigroup::{
    canonicalize, cascade, enumerate, minimize_canonical, Budget, CanonicalTransformation,
    EngineError, FinitenessVerdict,
};
use crate::wang::{
    find_torus_tiling, is_nw_deterministic, least_untileable_n, tile_rectangle,
    validate_torus_tiling, LeastNOutcome, SolveOutcome, TileSet, TorusTiling,
};
use crate::words::{Alphabet, EventuallyPeriodicWord, Symbol, Word};

/// Letter name of the bottom ("mistake") symbol in emitted automaton files.
pub const BOTTOM_NAME: &str = "_bot";
/// State name of the absorbing sink added by [`add_sink`].
pub const SINK_NAME: &str = "_c";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("tile set is not NW-deterministic: tiles `{first}` and `{second}` share north and west colors")]
    NotNwDeterministic { first: String, second: String },
    #[error("torus tiling is not valid: {violations} violated adjacencies")]
    InvalidTorus { violations: usize },
    #[error("precondition not certified: {reason}")]
    PreconditionNotCertified { reason: String },
    #[error("exhaustive check needs {required} evaluations, above the cap of {cap}")]
    ExhaustiveCapExceeded { required: BigUint, cap: u64 },
    #[error("{0}")]
    InvalidParameter(&'static str),
    #[error("bound exponent does not fit in a machine word; the value cannot be materialized")]
    BoundTooLarge,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Mealy(#[from] MealyError),
}

/// The Mealy automaton of a tile set together with the tile ↔ letter
/// correspondence. States and letters share one alphabet: the tiles in
/// declaration order, then the bottom letter.
#[derive(Clone, Debug)]
pub struct ReductionAutomaton {
    machine: MealyAutomaton,
    tiles: TileSet,
}

impl ReductionAutomaton {
    pub fn machine(&self) -> &MealyAutomaton {
        &self.machine
    }

    pub fn tiles(&self) -> &TileSet {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    /// The bottom symbol (valid as both state and letter).
    pub fn bottom(&self) -> Symbol {
        Symbol::from_index(self.tiles.len())
    }

    pub fn letter_of_tile(&self, tile: usize) -> Symbol {
        debug_assert!(tile < self.tiles.len());
        Symbol::from_index(tile)
    }

    pub fn tile_of_letter(&self, s: Symbol) -> Option<usize> {
        (s.index() < self.tiles.len()).then(|| s.index())
    }
}

/// Builds the Mealy automaton of an NW-deterministic tile set.
///
/// `δ(a, x) = x` for every pair — the automaton only remembers the previous
/// letter — and `σ(s, t)` is the unique tile `r` with `r_N = t_S` and
/// `r_W = s_E`, or bottom when no tile fits or either input is bottom.
/// NW-determinism makes that tile unique, so σ is well defined.
pub fn build_reduction(ts: &TileSet) -> Result<ReductionAutomaton, ReductionError> {
    if let Err(conflict) = is_nw_deterministic(ts) {
        return Err(ReductionError::NotNwDeterministic {
            first: ts.tile_name(conflict.first).to_owned(),
            second: ts.tile_name(conflict.second).to_owned(),
        });
    }
    let mut names: Vec<String> = ts.tile_names().to_vec();
    names.push(BOTTOM_NAME.to_owned());
    let alphabet = Alphabet::new(names).expect("tile names are unique and nonempty");
    let states = alphabet.clone();
    let tile_count = ts.len();
    let bottom = Symbol::from_index(tile_count);
    let machine = MealyAutomaton::from_fn(states, alphabet, |s, t| {
        let out = match (
            (s.index() < tile_count).then(|| ts.tile(s.index())),
            (t.index() < tile_count).then(|| ts.tile(t.index())),
        ) {
            (Some(s_tile), Some(t_tile)) => ts
                .tile_by_north_west(t_tile.south, s_tile.east)
                .map_or(bottom, Symbol::from_index),
            _ => bottom,
        };
        (t, out)
    });
    Ok(ReductionAutomaton {
        machine,
        tiles: ts.clone(),
    })
}

/// Extends the machine with an absorbing sink state: `σ(c, x) = ⊥` and
/// `δ(c, x) = c` for every letter `x`. The sink is a state only, so the
/// result is no longer letter–state symmetric.
pub fn add_sink(r: &ReductionAutomaton) -> MealyAutomaton {
    let mut state_names: Vec<String> = r.machine.states().names().to_vec();
    state_names.push(SINK_NAME.to_owned());
    let states = Alphabet::new(state_names).expect("sink name is fresh");
    let alphabet = r.machine.alphabet().clone();
    let sink = Symbol::from_index(states.len() - 1);
    let bottom = r.bottom();
    let old = r.machine.clone();
    MealyAutomaton::from_fn(states, alphabet, move |a, x| {
        if a == sink {
            (sink, bottom)
        } else {
            (old.delta(a, x), old.sigma(a, x))
        }
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The diagonal word `w_n = (t(k + n, k))_k` of a torus tiling, read from
/// the periodic extension as letters of the reduction machine. Purely
/// periodic with cycle length `lcm(px, py)`.
pub fn diagonal_word(
    torus: &TorusTiling,
    r: &ReductionAutomaton,
    n: usize,
) -> EventuallyPeriodicWord {
    let period = lcm(torus.px, torus.py);
    let cycle: Word = (0..period)
        .map(|k| r.letter_of_tile(torus.get((k + n) as i64, k as i64)))
        .collect();
    EventuallyPeriodicWord::new(Word::empty(), cycle).expect("period is positive")
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Lemma1Params {
    pub m_max: usize,
    pub n_max: usize,
    pub prefix_len: usize,
}

impl Lemma1Params {
    /// Default prefix length `4 (m_max + n_max)` for given shift bounds.
    pub fn with_default_prefix(m_max: usize, n_max: usize) -> Lemma1Params {
        Lemma1Params {
            m_max,
            n_max,
            prefix_len: 4 * (m_max + n_max),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lemma1Counterexample {
    Prefix {
        m: usize,
        n: usize,
        expected: String,
        actual: String,
    },
    DigestCollision {
        first: String,
        second: String,
    },
}

/// Report of the diagonal-shift check; serializes as
/// `{lemma, parameters, pass, counterexample?, …}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Lemma1Report {
    pub lemma: &'static str,
    pub parameters: Lemma1Params,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Lemma1Counterexample>,
    pub pairs_checked: usize,
    /// Digest of a generator baseline followed by the digests of
    /// `σ_⊥^1 .. σ_⊥^m_max`; pairwise distinct when the check passes.
    pub digests: Vec<String>,
}

/// Checks, against a valid torus tiling, that `σ_⊥^m(w_n)` starts with `m`
/// bottoms followed by `w_{m+n}`, for all `m ≤ m_max`, `n ≤ n_max`, on
/// prefixes of length `prefix_len`; and that the canonical digests of the
/// powers of `σ_⊥` are pairwise distinct.
///
/// The zeroth power is the identity of the empty word, which the semigroup
/// excludes, so the distinctness set is `σ_⊥^1 .. σ_⊥^m_max` plus the first
/// tile's generator as a baseline — `m_max + 1` digests in all.
pub fn verify_lemma1(
    r: &ReductionAutomaton,
    torus: &TorusTiling,
    params: &Lemma1Params,
) -> Result<Lemma1Report, ReductionError> {
    if params.prefix_len <= params.m_max {
        return Err(ReductionError::InvalidParameter(
            "prefix_len must exceed m_max",
        ));
    }
    // Precondition recheck: an invalid torus is an input error, never a
    // lemma failure.
    if let Err(violations) = validate_torus_tiling(&r.tiles, torus) {
        return Err(ReductionError::InvalidTorus {
            violations: violations.len(),
        });
    }

    let machine = &r.machine;
    let bottom = r.bottom();
    let diagonals: Vec<EventuallyPeriodicWord> = (0..=params.m_max + params.n_max)
        .map(|n| diagonal_word(torus, r, n))
        .collect();

    let mut pairs_checked = 0usize;
    let mut counterexample = None;
    'outer: for m in 0..=params.m_max {
        let u = Word::repeated(bottom, m);
        for n in 0..=params.n_max {
            let actual = machine.act_prefix(&u, &diagonals[n], params.prefix_len)?;
            let expected = Word::repeated(bottom, m)
                .concat(&diagonals[m + n].prefix_word(params.prefix_len - m));
            pairs_checked += 1;
            if actual != expected {
                counterexample = Some(Lemma1Counterexample::Prefix {
                    m,
                    n,
                    expected: machine.alphabet().format_word(&expected),
                    actual: machine.alphabet().format_word(&actual),
                });
                break 'outer;
            }
        }
    }

    let budget = Budget::default();
    let mut labeled: Vec<(String, CanonicalTransformation)> = Vec::new();
    labeled.push((
        "baseline".into(),
        canonicalize(machine, &Word::new(vec![r.letter_of_tile(0)]), &budget)?,
    ));
    let bot_canon = canonicalize(machine, &Word::new(vec![bottom]), &budget)?;
    let mut cur = bot_canon.clone();
    for m in 1..=params.m_max {
        labeled.push((format!("bot^{m}"), cur.clone()));
        if m < params.m_max {
            cur = minimize_canonical(&cascade(
                cur.raw_ref(),
                bot_canon.raw_ref(),
                budget.max_power_states,
            )?);
        }
    }
    if counterexample.is_none() {
        'collision: for i in 0..labeled.len() {
            for j in i + 1..labeled.len() {
                if labeled[i].1.digest() == labeled[j].1.digest() {
                    counterexample = Some(Lemma1Counterexample::DigestCollision {
                        first: labeled[i].0.clone(),
                        second: labeled[j].0.clone(),
                    });
                    break 'collision;
                }
            }
        }
    }

    Ok(Lemma1Report {
        lemma: "lemma1",
        parameters: params.clone(),
        pass: counterexample.is_none(),
        counterexample,
        pairs_checked,
        digests: labeled.iter().map(|(_, c)| c.digest().to_hex()).collect(),
    })
}

/// How the tail-collapse claim is checked: the whole quantifier space, or a
/// seeded sample of it.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ClaimMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClaimParams {
    pub n: usize,
    #[serde(flatten)]
    pub mode: ClaimMode,
    pub prefix_len: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClaimCounterexample {
    pub u: String,
    pub p: String,
    pub q: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClaimReport {
    pub lemma: &'static str,
    pub parameters: ClaimParams,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<ClaimCounterexample>,
    pub evaluations: u64,
}

/// Default cap on exhaustive claim evaluations.
pub const CLAIM_EXHAUSTIVE_CAP: u64 = 10_000_000;

fn word_from_indices(idx: &[usize]) -> Word {
    idx.iter().map(|&i| Symbol::from_index(i)).collect()
}

fn next_odometer(idx: &mut [usize], base: usize) -> bool {
    let mut pos = idx.len();
    while pos > 0 {
        idx[pos - 1] += 1;
        if idx[pos - 1] < base {
            return true;
        }
        idx[pos - 1] = 0;
        pos -= 1;
    }
    false
}

/// Checks the tail-collapse claim for an untileable `(n+1) × (n+1)` square:
/// for every state word `u` of length `2n`, `σ_u(p q) = σ_u(p) ⊥^{|q|}`
/// with `p` of length `n` and `q` of length `prefix_len`.
///
/// The untileability precondition is re-certified here by exhaustive search
/// within `rect_budget` nodes; a tileable or undecided square is a
/// precondition error, not a claim failure. Exhaustive mode refuses to run
/// when the quantifier space exceeds `exhaustive_cap` evaluations.
pub fn verify_claim(
    r: &ReductionAutomaton,
    n: usize,
    mode: ClaimMode,
    prefix_len: usize,
    rect_budget: u64,
    exhaustive_cap: u64,
) -> Result<ClaimReport, ReductionError> {
    if prefix_len == 0 {
        return Err(ReductionError::InvalidParameter("prefix_len must be ≥ 1"));
    }
    let side = n + 1;
    match tile_rectangle(&r.tiles, side, side, rect_budget).0 {
        SolveOutcome::Exhausted => {}
        SolveOutcome::Found(_) => {
            return Err(ReductionError::PreconditionNotCertified {
                reason: format!("the {side}x{side} square has a valid tiling"),
            })
        }
        SolveOutcome::BudgetExceeded => {
            return Err(ReductionError::PreconditionNotCertified {
                reason: format!("search budget exhausted while deciding the {side}x{side} square"),
            })
        }
    }

    let machine = &r.machine;
    let k = machine.alphabet().len();
    let bottom = r.bottom();
    let mut evaluations = 0u64;
    let mut counterexample = None;

    let mut check = |u: &Word, p: &Word, q: &Word| -> Result<bool, ReductionError> {
        let actual = machine.act(u, &p.concat(q))?;
        let expected = machine.act(u, p)?.concat(&Word::repeated(bottom, q.len()));
        evaluations += 1;
        if actual != expected {
            counterexample = Some(ClaimCounterexample {
                u: machine.states().format_word(u),
                p: machine.alphabet().format_word(p),
                q: machine.alphabet().format_word(q),
                expected: machine.alphabet().format_word(&expected),
                actual: machine.alphabet().format_word(&actual),
            });
            return Ok(false);
        }
        Ok(true)
    };

    match mode {
        ClaimMode::Exhaustive => {
            let required = BigUint::from(k).pow((2 * n + n + prefix_len) as u32);
            if required > BigUint::from(exhaustive_cap) {
                return Err(ReductionError::ExhaustiveCapExceeded {
                    required,
                    cap: exhaustive_cap,
                });
            }
            let mut u_idx = vec![0usize; 2 * n];
            'u: loop {
                let u = word_from_indices(&u_idx);
                let mut p_idx = vec![0usize; n];
                'p: loop {
                    let p = word_from_indices(&p_idx);
                    let mut q_idx = vec![0usize; prefix_len];
                    loop {
                        let q = word_from_indices(&q_idx);
                        if !check(&u, &p, &q)? {
                            break 'u;
                        }
                        if !next_odometer(&mut q_idx, k) {
                            break;
                        }
                    }
                    if !next_odometer(&mut p_idx, k) {
                        break 'p;
                    }
                }
                if !next_odometer(&mut u_idx, k) {
                    break;
                }
            }
        }
        ClaimMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draw = |len: usize, rng: &mut ChaCha8Rng| -> Word {
                (0..len)
                    .map(|_| Symbol::from_index(rng.gen_range(0..k)))
                    .collect()
            };
            for _ in 0..count {
                let u = draw(2 * n, &mut rng);
                let p = draw(n, &mut rng);
                let q = draw(prefix_len, &mut rng);
                if !check(&u, &p, &q)? {
                    break;
                }
            }
        }
    }

    Ok(ClaimReport {
        lemma: "claim",
        parameters: ClaimParams {
            n,
            mode,
            prefix_len,
        },
        pass: counterexample.is_none(),
        counterexample,
        evaluations,
    })
}

/// The size bound forced by an untileable `(n+1) × (n+1)` square:
/// `1 + Σ_{k=1}^{2n−1} |A|^k + (|Σ|^n)^(|Σ|^n)` with `A = Σ = tiles ∪ {⊥}`,
/// in exact arbitrary-precision arithmetic.
pub fn finiteness_bound(ts: &TileSet, n: usize) -> Result<BigUint, ReductionError> {
    if n == 0 {
        return Err(ReductionError::InvalidParameter("n must be ≥ 1"));
    }
    let a = BigUint::from(ts.len() + 1);
    let mut total = BigUint::from(1u32);
    let mut power = BigUint::from(1u32);
    for _ in 1..=(2 * n - 1) {
        power *= &a;
        total += &power;
    }
    let base = a.pow(n as u32);
    let exp: u32 = (&base)
        .try_into()
        .map_err(|_| ReductionError::BoundTooLarge)?;
    total += base.pow(exp);
    Ok(total)
}

/// The table `f(i, j)`: row 0 is `w`, and row `i + 1` is row `i` transformed
/// by the `(i+1)`-th state of `u`, so row `i` is the image of `w` under the
/// length-`i` prefix of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingWindow {
    rows: Vec<Word>,
}

impl TilingWindow {
    /// Number of applied states; rows `0 ..= depth()` exist.
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, i: usize) -> &Word {
        &self.rows[i]
    }

    /// `f(i, j)`, if in range.
    pub fn cell(&self, i: usize, j: usize) -> Option<Symbol> {
        self.rows.get(i).and_then(|r| r.get(j))
    }

    /// The `(n+1) × (n+1)` anti-diagonal block at column offset `k`: entry
    /// `(d, c)` with top row `d = 0` is `f(d + c, c + k)`. `None` when any
    /// index is out of range.
    pub fn figure_grid(&self, n: usize, k: usize) -> Option<Vec<Vec<Symbol>>> {
        let mut grid = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut row = Vec::with_capacity(n + 1);
            for c in 0..=n {
                row.push(self.cell(d + c, c + k)?);
            }
            grid.push(row);
        }
        Some(grid)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WindowViolation {
    pub i: usize,
    pub j: usize,
    pub detail: String,
}

/// Validity of the tile placements a window induces. A placement is the
/// triple `s = f(i, j)`, `t = f(i, j+1)`, `r = f(i+1, j+1)` with all three
/// non-bottom: `r` must fit east of `s` and south of `t`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WindowReport {
    pub placements_checked: usize,
    pub placements_valid: usize,
    pub violations: Vec<WindowViolation>,
    /// Whether any fully non-bottom placement exists at all.
    pub has_valid_placement: bool,
}

/// Materializes the window of intermediate diagonals of `w` under `u` and
/// checks the induced tile placements.
pub fn extract_window(
    r: &ReductionAutomaton,
    u: &Word,
    w: &Word,
) -> Result<(TilingWindow, WindowReport), ReductionError> {
    let machine = &r.machine;
    machine.dstate(u, &Word::empty())?;
    let mut rows = Vec::with_capacity(u.len() + 1);
    rows.push(machine.act(&Word::empty(), w)?);
    for i in 0..u.len() {
        let prev = rows[i].clone();
        rows.push(machine.act(&Word::new(vec![u[i]]), &prev)?);
    }
    let window = TilingWindow { rows };

    let mut checked = 0usize;
    let mut valid = 0usize;
    let mut violations = Vec::new();
    for i in 0..u.len() {
        for j in 0..w.len().saturating_sub(1) {
            let (s, t, out) = (
                window.rows[i][j],
                window.rows[i][j + 1],
                window.rows[i + 1][j + 1],
            );
            let (Some(s_tile), Some(t_tile), Some(r_tile)) = (
                r.tile_of_letter(s),
                r.tile_of_letter(t),
                r.tile_of_letter(out),
            ) else {
                continue;
            };
            checked += 1;
            let fits = r.tiles.tile(r_tile).north == r.tiles.tile(t_tile).south
                && r.tiles.tile(r_tile).west == r.tiles.tile(s_tile).east;
            if fits {
                valid += 1;
            } else {
                violations.push(WindowViolation {
                    i,
                    j,
                    detail: format!(
                        "tile `{}` does not fit east of `{}` under `{}`",
                        machine.alphabet().name(out),
                        machine.alphabet().name(s),
                        machine.alphabet().name(t),
                    ),
                });
            }
        }
    }

    let report = WindowReport {
        placements_checked: checked,
        placements_valid: valid,
        violations,
        has_valid_placement: valid > 0,
    };
    Ok((window, report))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemidecidePartials {
    /// Largest `n` such that every square of side up to `n + 1` was shown
    /// tileable.
    pub squares_tileable_through: Option<usize>,
    pub torus_exhausted_up_to_bounds: bool,
    pub squares_exhausted_up_to_bounds: bool,
}

/// Search effort actually spent, certified or not.
#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SemidecideSpent {
    pub torus_nodes: u64,
    pub rect_nodes: u64,
    pub rounds: u32,
}

#[derive(Clone, Debug)]
pub enum SemidecideOutcome {
    /// A torus tiling certifies infiniteness; the diagonal-shift check is
    /// run as confirmation.
    InfiniteCertified {
        torus: TorusTiling,
        lemma1: Lemma1Report,
    },
    /// An untileable square certifies finiteness with the exact bound, and
    /// the exact size when enumeration fits the budget.
    FiniteCertified {
        n: usize,
        bound: BigUint,
        exact_size: Option<usize>,
    },
    Unknown { partials: SemidecidePartials },
}

#[derive(Clone, Debug)]
pub struct SemidecideBudgets {
    pub max_px: usize,
    pub max_py: usize,
    pub max_n: usize,
    /// Total search nodes allowed per direction.
    pub node_budget: u64,
    /// First round-robin quantum; doubles each round.
    pub initial_quantum: u64,
    /// Shift bounds for the confirming diagonal check.
    pub lemma1_m: usize,
    pub lemma1_n: usize,
    /// Budget for the exact-size enumeration on the finite side.
    pub enumerate_budget: Budget,
}

impl Default for SemidecideBudgets {
    fn default() -> SemidecideBudgets {
        SemidecideBudgets {
            max_px: 6,
            max_py: 6,
            max_n: 6,
            node_budget: 2_000_000,
            initial_quantum: 1_024,
            lemma1_m: 4,
            lemma1_n: 4,
            enumerate_budget: Budget::default(),
        }
    }
}

/// Interleaves the search for a torus tiling (infinite direction) and for
/// an untileable square (finite direction) in deterministic round-robin
/// quanta, doubling the per-direction budget each round, torus side first.
/// Each quantum restarts the search with the larger budget, so the returned
/// certificate is a deterministic function of the tile set and budgets.
/// Returns `Unknown` when both directions exhaust their bounds or budgets.
pub fn semidecide(
    ts: &TileSet,
    budgets: &SemidecideBudgets,
) -> Result<(SemidecideOutcome, SemidecideSpent), ReductionError> {
    let r = build_reduction(ts)?;

    let mut torus_done = false;
    let mut rect_done = false;
    let mut torus_exhausted = false;
    let mut rect_exhausted = false;
    let mut spent = SemidecideSpent::default();
    let mut squares_tileable_through: Option<usize> = None;

    let mut quantum = budgets.initial_quantum.max(1);
    loop {
        spent.rounds += 1;
        let round_budget = quantum.min(budgets.node_budget);
        if !torus_done {
            let (outcome, stats) =
                find_torus_tiling(ts, budgets.max_px, budgets.max_py, round_budget);
            spent.torus_nodes += stats.nodes;
            match outcome {
                SolveOutcome::Found(torus) => {
                    let params =
                        Lemma1Params::with_default_prefix(budgets.lemma1_m, budgets.lemma1_n);
                    let lemma1 = verify_lemma1(&r, &torus, &params)?;
                    return Ok((SemidecideOutcome::InfiniteCertified { torus, lemma1 }, spent));
                }
                SolveOutcome::Exhausted => {
                    torus_done = true;
                    torus_exhausted = true;
                }
                SolveOutcome::BudgetExceeded => {
                    if round_budget >= budgets.node_budget {
                        torus_done = true;
                    }
                }
            }
        }
        if !rect_done {
            let (outcome, stats) = least_untileable_n(ts, budgets.max_n, round_budget);
            spent.rect_nodes += stats.nodes;
            match outcome {
                LeastNOutcome::Found { n } => {
                    let bound = finiteness_bound(ts, n.max(1))?;
                    let exact_size = match enumerate(&r.machine, &budgets.enumerate_budget) {
                        FinitenessVerdict::Finite { size, .. } => Some(size),
                        _ => None,
                    };
                    return Ok((
                        SemidecideOutcome::FiniteCertified {
                            n,
                            bound,
                            exact_size,
                        },
                        spent,
                    ));
                }
                LeastNOutcome::NoneUpToMax => {
                    squares_tileable_through = Some(budgets.max_n);
                    rect_done = true;
                    rect_exhausted = true;
                }
                LeastNOutcome::BudgetExceeded { at_n } => {
                    if at_n > 0 {
                        squares_tileable_through = Some(at_n - 1);
                    }
                    if round_budget >= budgets.node_budget {
                        rect_done = true;
                    }
                }
            }
        }
        if torus_done && rect_done {
            return Ok((
                SemidecideOutcome::Unknown {
                    partials: SemidecidePartials {
                        squares_tileable_through,
                        torus_exhausted_up_to_bounds: torus_exhausted,
                        squares_exhausted_up_to_bounds: rect_exhausted,
                    },
                },
                spent,
            ));
        }
        quantum = quantum.saturating_mul(2);
    }
}

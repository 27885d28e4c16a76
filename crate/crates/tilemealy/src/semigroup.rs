//! The semigroup of word transformations generated by a machine's states.
//!
//! Each nonempty state word `u` induces a length- and prefix-preserving map
//! `σ_u` on words. The engine decides equality of such maps, enumerates the
//! generated semigroup under a budget, and searches for powers.
//!
//! An element is represented by its canonical transformation: the minimal
//! Mealy machine computing the map, relabeled by breadth-first discovery
//! order from its initial state. Two state words induce the same map exactly
//! when their canonical machines are identical, so equality reduces to
//! comparing digests — full table encodings, not lossy hashes.

use std::collections::HashMap;

use thiserror::Error;

use crate::mealy::{MealyAutomaton, MealyError};
use crate::words::{Symbol, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("power machine cap exceeded: more than {cap} reachable states")]
    PowerCapExceeded { cap: usize },
    #[error("state word must be nonempty")]
    EmptyStateWord,
    #[error(transparent)]
    Mealy(#[from] MealyError),
}

/// Resource caps for the engine. Hitting a cap is evidence, never an answer:
/// enumeration reports [`FinitenessVerdict::BudgetExceeded`] rather than
/// guessing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of distinct semigroup elements to collect.
    pub max_elements: usize,
    /// Cap on reachable states per power machine or product machine.
    pub max_power_states: usize,
    /// Cap on the length of indexing words during enumeration.
    pub max_word_length: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_elements: 10_000,
            max_power_states: 100_000,
            max_word_length: 4_096,
        }
    }
}

/// The exact canonical encoding of a transformation's minimal machine.
/// Compared byte-exactly; the hex form appears in JSON reports.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(Vec<u8>);

impl Digest {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl std::fmt::Debug for Digest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

/// A reachable transducer with a designated initial state. Rows are stored
/// in discovery order; state ids are dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawMachine {
    pub n_states: usize,
    pub n_letters: usize,
    /// Row-major `[state][letter] -> state id`.
    pub delta: Vec<u32>,
    /// Row-major `[state][letter] -> letter index`.
    pub sigma: Vec<u16>,
    pub initial: u32,
}

impl RawMachine {
    #[inline]
    fn succ(&self, q: u32, x: usize) -> u32 {
        self.delta[q as usize * self.n_letters + x]
    }

    #[inline]
    fn out(&self, q: u32, x: usize) -> u16 {
        self.sigma[q as usize * self.n_letters + x]
    }
}

/// A minimized, canonically labeled machine representing one semigroup
/// element, with its deduplication digest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTransformation {
    raw: RawMachine,
    digest: Digest,
}

impl CanonicalTransformation {
    pub fn digest(&self) -> &Digest {
        &self.digest
    }

    pub(crate) fn raw_ref(&self) -> &RawMachine {
        &self.raw
    }

    /// Number of states of the minimal machine.
    pub fn state_count(&self) -> usize {
        self.raw.n_states
    }

    pub fn alphabet_len(&self) -> usize {
        self.raw.n_letters
    }

    /// Canonical form of the product `self · other`, i.e. `other` applied
    /// after `self`. Matches concatenating indexing words.
    pub fn then(
        &self,
        other: &CanonicalTransformation,
        budget: &Budget,
    ) -> Result<CanonicalTransformation, EngineError> {
        let product = cascade(&self.raw, &other.raw, budget.max_power_states)?;
        Ok(minimize_canonical(&product))
    }
}

/// Advances one step of the componentwise action: feeds `x` through the
/// state word `v`, returning the successor state word and the output letter.
fn step_state_word(base: &MealyAutomaton, v: &[Symbol], x: Symbol) -> (Vec<Symbol>, Symbol) {
    let mut y = x;
    let mut succ = Vec::with_capacity(v.len());
    for &a in v {
        succ.push(base.delta(a, y));
        y = base.sigma(a, y);
    }
    (succ, y)
}

/// Builds the machine of `σ_u` whose states are the state words reachable
/// from `u` under inputs, up to `cap` states.
pub(crate) fn power_machine(
    base: &MealyAutomaton,
    u: &Word,
    cap: usize,
) -> Result<RawMachine, EngineError> {
    if u.is_empty() {
        return Err(EngineError::EmptyStateWord);
    }
    // Validate u against the machine's state set.
    base.dstate(u, &Word::empty())?;
    let n_letters = base.alphabet().len();
    let mut index: HashMap<Word, u32> = HashMap::new();
    let mut words: Vec<Word> = Vec::new();
    let mut delta: Vec<u32> = Vec::new();
    let mut sigma: Vec<u16> = Vec::new();
    index.insert(u.clone(), 0);
    words.push(u.clone());
    let mut next = 0usize;
    while next < words.len() {
        let v = words[next].clone();
        for x in base.alphabet().symbols() {
            let (succ, out) = step_state_word(base, v.symbols(), x);
            let succ = Word::new(succ);
            let id = match index.get(&succ) {
                Some(&id) => id,
                None => {
                    if words.len() >= cap {
                        return Err(EngineError::PowerCapExceeded { cap });
                    }
                    let id = words.len() as u32;
                    index.insert(succ.clone(), id);
                    words.push(succ);
                    id
                }
            };
            delta.push(id);
            sigma.push(out.index() as u16);
        }
        next += 1;
    }
    Ok(RawMachine {
        n_states: words.len(),
        n_letters,
        delta,
        sigma,
        initial: 0,
    })
}

/// Number of state words reachable from `u`, i.e. the size of the
/// (unminimized) power machine.
pub fn power_state_count(
    base: &MealyAutomaton,
    u: &Word,
    cap: usize,
) -> Result<usize, EngineError> {
    Ok(power_machine(base, u, cap)?.n_states)
}

/// The machine computing `apply second after first`: input letters run
/// through `first`, its outputs through `second`.
pub(crate) fn cascade(
    first: &RawMachine,
    second: &RawMachine,
    cap: usize,
) -> Result<RawMachine, EngineError> {
    debug_assert_eq!(first.n_letters, second.n_letters);
    let n_letters = first.n_letters;
    let mut index: HashMap<(u32, u32), u32> = HashMap::new();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut delta: Vec<u32> = Vec::new();
    let mut sigma: Vec<u16> = Vec::new();
    index.insert((first.initial, second.initial), 0);
    pairs.push((first.initial, second.initial));
    let mut next = 0usize;
    while next < pairs.len() {
        let (qa, qb) = pairs[next];
        for x in 0..n_letters {
            let y = first.out(qa, x) as usize;
            let out = second.out(qb, y);
            let succ = (first.succ(qa, x), second.succ(qb, y));
            let id = match index.get(&succ) {
                Some(&id) => id,
                None => {
                    if pairs.len() >= cap {
                        return Err(EngineError::PowerCapExceeded { cap });
                    }
                    let id = pairs.len() as u32;
                    index.insert(succ, id);
                    pairs.push(succ);
                    id
                }
            };
            delta.push(id);
            sigma.push(out);
        }
        next += 1;
    }
    Ok(RawMachine {
        n_states: pairs.len(),
        n_letters,
        delta,
        sigma,
        initial: 0,
    })
}

/// Minimizes a reachable machine by output-respecting partition refinement
/// and relabels the quotient by breadth-first order from the initial state.
pub(crate) fn minimize_canonical(raw: &RawMachine) -> CanonicalTransformation {
    let n = raw.n_states;
    let k = raw.n_letters;

    // Initial partition: states with the same output row share a class.
    let mut class: Vec<u32> = vec![0; n];
    let mut count = {
        let mut ids: HashMap<&[u16], u32> = HashMap::new();
        for (q, c) in class.iter_mut().enumerate() {
            let row = &raw.sigma[q * k..(q + 1) * k];
            let next_id = ids.len() as u32;
            *c = *ids.entry(row).or_insert(next_id);
        }
        ids.len()
    };

    // Refine by successor classes until stable.
    loop {
        let mut ids: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
        let mut new_class = vec![0u32; n];
        for (q, nc) in new_class.iter_mut().enumerate() {
            let key = (
                class[q],
                (0..k).map(|x| class[raw.succ(q as u32, x) as usize]).collect(),
            );
            let next_id = ids.len() as u32;
            *nc = *ids.entry(key).or_insert(next_id);
        }
        let new_count = ids.len();
        class = new_class;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // One representative per class (first member in state order).
    let mut rep: Vec<u32> = vec![u32::MAX; count];
    for (q, &c) in class.iter().enumerate() {
        if rep[c as usize] == u32::MAX {
            rep[c as usize] = q as u32;
        }
    }

    // Breadth-first relabeling from the initial class, letters in order.
    let mut label: Vec<u32> = vec![u32::MAX; count];
    let mut order: Vec<u32> = Vec::with_capacity(count);
    let start = class[raw.initial as usize];
    label[start as usize] = 0;
    order.push(start);
    let mut next = 0usize;
    while next < order.len() {
        let c = order[next];
        for x in 0..k {
            let succ_class = class[raw.succ(rep[c as usize], x) as usize];
            if label[succ_class as usize] == u32::MAX {
                label[succ_class as usize] = order.len() as u32;
                order.push(succ_class);
            }
        }
        next += 1;
    }

    let m = order.len();
    let mut delta = Vec::with_capacity(m * k);
    let mut sigma = Vec::with_capacity(m * k);
    for &c in &order {
        let q = rep[c as usize];
        for x in 0..k {
            delta.push(label[class[raw.succ(q, x) as usize] as usize]);
            sigma.push(raw.out(q, x));
        }
    }
    let canon = RawMachine {
        n_states: m,
        n_letters: k,
        delta,
        sigma,
        initial: 0,
    };
    let digest = encode(&canon);
    CanonicalTransformation { raw: canon, digest }
}

/// Full canonical-table encoding; byte-exact equality of digests is
/// equality of transformations over a fixed alphabet.
fn encode(raw: &RawMachine) -> Digest {
    let mut bytes = Vec::with_capacity(8 + raw.n_states * raw.n_letters * 6);
    bytes.extend_from_slice(&(raw.n_states as u32).to_le_bytes());
    bytes.extend_from_slice(&(raw.n_letters as u32).to_le_bytes());
    for i in 0..raw.n_states * raw.n_letters {
        bytes.extend_from_slice(&raw.delta[i].to_le_bytes());
        bytes.extend_from_slice(&raw.sigma[i].to_le_bytes());
    }
    Digest(bytes)
}

/// Canonical form of the transformation `σ_u`.
pub fn canonicalize(
    machine: &MealyAutomaton,
    u: &Word,
    budget: &Budget,
) -> Result<CanonicalTransformation, EngineError> {
    let raw = power_machine(machine, u, budget.max_power_states)?;
    Ok(minimize_canonical(&raw))
}

/// Lazily expanded power machine used by the pairwise equality check.
struct LazyPower<'a> {
    base: &'a MealyAutomaton,
    words: Vec<Word>,
    index: HashMap<Word, u32>,
    rows: Vec<Option<(Vec<u32>, Vec<u16>)>>,
}

impl<'a> LazyPower<'a> {
    fn new(base: &'a MealyAutomaton, u: &Word) -> LazyPower<'a> {
        let mut index = HashMap::new();
        index.insert(u.clone(), 0);
        LazyPower {
            base,
            words: vec![u.clone()],
            index,
            rows: vec![None],
        }
    }

    fn row(&mut self, q: u32, cap: usize) -> Result<(Vec<u32>, Vec<u16>), EngineError> {
        if let Some(row) = &self.rows[q as usize] {
            return Ok(row.clone());
        }
        let v = self.words[q as usize].clone();
        let mut succs = Vec::with_capacity(self.base.alphabet().len());
        let mut outs = Vec::with_capacity(self.base.alphabet().len());
        for x in self.base.alphabet().symbols() {
            let (succ, out) = step_state_word(self.base, v.symbols(), x);
            let succ = Word::new(succ);
            let id = match self.index.get(&succ) {
                Some(&id) => id,
                None => {
                    if self.words.len() >= cap {
                        return Err(EngineError::PowerCapExceeded { cap });
                    }
                    let id = self.words.len() as u32;
                    self.index.insert(succ.clone(), id);
                    self.words.push(succ);
                    self.rows.push(None);
                    id
                }
            };
            succs.push(id);
            outs.push(out.index() as u16);
        }
        let row = (succs, outs);
        self.rows[q as usize] = Some(row.clone());
        Ok(row)
    }
}

/// Decides `σ_u = σ_v` by bisimulation between the two power machines,
/// without full minimization.
pub fn equal(
    machine: &MealyAutomaton,
    u: &Word,
    v: &Word,
    budget: &Budget,
) -> Result<bool, EngineError> {
    if u.is_empty() || v.is_empty() {
        return Err(EngineError::EmptyStateWord);
    }
    machine.dstate(u, &Word::empty())?;
    machine.dstate(v, &Word::empty())?;
    let cap = budget.max_power_states;
    let mut left = LazyPower::new(machine, u);
    let mut right = LazyPower::new(machine, v);
    let mut seen: std::collections::HashSet<(u32, u32)> = std::collections::HashSet::new();
    let mut queue: std::collections::VecDeque<(u32, u32)> = std::collections::VecDeque::new();
    seen.insert((0, 0));
    queue.push_back((0, 0));
    while let Some((p, q)) = queue.pop_front() {
        let (psucc, pout) = left.row(p, cap)?;
        let (qsucc, qout) = right.row(q, cap)?;
        if pout != qout {
            return Ok(false);
        }
        for x in 0..psucc.len() {
            let pair = (psucc[x], qsucc[x]);
            if seen.insert(pair) {
                queue.push_back(pair);
            }
        }
    }
    Ok(true)
}

/// Test oracle: compares `σ_u` and `σ_v` on every word of length at most
/// `depth` by direct evaluation. When `depth` is at least the sum of the two
/// machines' state counts this coincides with [`equal`] (two distinguishable
/// states of machines with `n₁ + n₂` states are distinguished by a word
/// shorter than `n₁ + n₂`).
pub fn equal_bruteforce(
    machine: &MealyAutomaton,
    u: &Word,
    v: &Word,
    depth: usize,
) -> Result<bool, MealyError> {
    let k = machine.alphabet().len();
    for len in 1..=depth {
        let mut idx = vec![0usize; len];
        loop {
            let w: Word = idx.iter().map(|&i| Symbol::from_index(i)).collect();
            if machine.act(u, &w)? != machine.act(v, &w)? {
                return Ok(false);
            }
            // Odometer increment.
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                idx[pos - 1] += 1;
                if idx[pos - 1] < k {
                    break;
                }
                idx[pos - 1] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    Ok(true)
}

/// Which cap stopped an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetLimit {
    Elements,
    PowerStates,
    WordLength,
}

impl BudgetLimit {
    pub fn as_str(self) -> &'static str {
        match self {
            BudgetLimit::Elements => "max_elements",
            BudgetLimit::PowerStates => "max_power_states",
            BudgetLimit::WordLength => "max_word_length",
        }
    }
}

/// Outcome of semigroup enumeration. A `Finite` verdict is closed: every
/// product of a listed element with a generator is again listed. Exceeding a
/// budget is reported as such — infiniteness is never claimed without a
/// certificate, which only the reduction machinery can provide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinitenessVerdict {
    Finite {
        size: usize,
        elements: Vec<Digest>,
    },
    InfiniteCertified {
        certificate: String,
    },
    BudgetExceeded {
        elements_found: usize,
        elements: Vec<Digest>,
        exhausted: BudgetLimit,
    },
}

/// Breadth-first closure of the generated semigroup: seeds with the
/// canonical forms of the single generators (the empty word is excluded),
/// then right-multiplies known elements by generators in declared order,
/// deduplicating by digest.
pub fn enumerate(machine: &MealyAutomaton, budget: &Budget) -> FinitenessVerdict {
    let mut elements: Vec<CanonicalTransformation> = Vec::new();
    let mut word_len: Vec<usize> = Vec::new();
    let mut seen: HashMap<Digest, usize> = HashMap::new();

    let exceeded = |elements: &[CanonicalTransformation], limit: BudgetLimit| {
        FinitenessVerdict::BudgetExceeded {
            elements_found: elements.len(),
            elements: elements.iter().map(|e| e.digest().clone()).collect(),
            exhausted: limit,
        }
    };

    // Generators: canonical machines of the single-state words.
    let mut gens: Vec<CanonicalTransformation> = Vec::new();
    for a in machine.states().symbols() {
        let w = Word::new(vec![a]);
        match canonicalize(machine, &w, budget) {
            Ok(c) => gens.push(c),
            Err(_) => return exceeded(&elements, BudgetLimit::PowerStates),
        }
    }

    let mut frontier: Vec<usize> = Vec::new();
    for g in &gens {
        if seen.contains_key(g.digest()) {
            continue;
        }
        if elements.len() >= budget.max_elements {
            return exceeded(&elements, BudgetLimit::Elements);
        }
        seen.insert(g.digest().clone(), elements.len());
        frontier.push(elements.len());
        elements.push(g.clone());
        word_len.push(1);
    }

    while !frontier.is_empty() {
        let mut next_frontier = Vec::new();
        for &i in &frontier {
            for g in &gens {
                if word_len[i] + 1 > budget.max_word_length {
                    return exceeded(&elements, BudgetLimit::WordLength);
                }
                let product = match cascade(&elements[i].raw, &g.raw, budget.max_power_states) {
                    Ok(p) => p,
                    Err(_) => return exceeded(&elements, BudgetLimit::PowerStates),
                };
                let canon = minimize_canonical(&product);
                if seen.contains_key(canon.digest()) {
                    continue;
                }
                if elements.len() >= budget.max_elements {
                    return exceeded(&elements, BudgetLimit::Elements);
                }
                seen.insert(canon.digest().clone(), elements.len());
                next_frontier.push(elements.len());
                word_len.push(word_len[i] + 1);
                elements.push(canon);
            }
        }
        frontier = next_frontier;
    }

    FinitenessVerdict::Finite {
        size: elements.len(),
        elements: elements.iter().map(|e| e.digest().clone()).collect(),
    }
}

/// Why a power search stopped without a hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderStop {
    /// The digest sequence revisited an earlier power before reaching the
    /// target, so no power ever equals it.
    EnteredCycle { first_seen: u64, repeated_at: u64 },
    /// All powers up to `max_n` were checked.
    MaxReached,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderOutcome {
    Found(u64),
    NotFound(OrderStop),
}

/// Least `n ≤ max_n` with `σ_f^n = σ_g`, by walking canonical digests of
/// successive powers with cycle detection.
pub fn order_search(
    machine: &MealyAutomaton,
    f: &Word,
    g: &Word,
    max_n: u64,
    budget: &Budget,
) -> Result<OrderOutcome, EngineError> {
    let f_canon = canonicalize(machine, f, budget)?;
    let g_canon = canonicalize(machine, g, budget)?;
    let mut seen: HashMap<Digest, u64> = HashMap::new();
    let mut cur = f_canon.clone();
    for n in 1..=max_n {
        if cur.digest() == g_canon.digest() {
            return Ok(OrderOutcome::Found(n));
        }
        if let Some(&first) = seen.get(cur.digest()) {
            return Ok(OrderOutcome::NotFound(OrderStop::EnteredCycle {
                first_seen: first,
                repeated_at: n,
            }));
        }
        seen.insert(cur.digest().clone(), n);
        let product = cascade(&cur.raw, &f_canon.raw, budget.max_power_states)?;
        cur = minimize_canonical(&product);
    }
    Ok(OrderOutcome::NotFound(OrderStop::MaxReached))
}

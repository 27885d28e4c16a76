//! Mealy automata and their extended action on words.
//!
//! A machine `(A, Σ, δ, σ)` acts on words over `Σ`: a single state `a`
//! transforms a word letter by letter, emitting `σ(a, x)` and moving to
//! `δ(a, x)`. State words compose left-to-right: the first state of the word
//! acts first, and later states act on the transformed word. Every induced
//! map is length- and prefix-preserving.

use thiserror::Error;

use crate::words::{Alphabet, EventuallyPeriodicWord, Symbol, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MealyError {
    #[error("incomplete transition table: missing entry for ({state}, {letter})")]
    IncompleteTable { state: String, letter: String },
    #[error("duplicate table entry for ({state}, {letter})")]
    DuplicateEntry { state: String, letter: String },
    #[error("table entry for ({state}, {letter}) references an out-of-range symbol")]
    EntryOutOfRange { state: String, letter: String },
    #[error("state word refers to a symbol outside the machine's state set")]
    ForeignState,
    #[error("input word refers to a symbol outside the machine's alphabet")]
    ForeignLetter,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite, total Mealy automaton. Immutable once built, and freely
/// shareable across threads.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MealyAutomaton {
    states: Alphabet,
    alphabet: Alphabet,
    delta: Vec<Symbol>, // row-major: [state][letter] -> state
    sigma: Vec<Symbol>, // row-major: [state][letter] -> letter
}

impl MealyAutomaton {
    /// Builds a machine from closures giving the transition and output for
    /// every (state, letter) pair.
    pub fn from_fn(
        states: Alphabet,
        alphabet: Alphabet,
        mut f: impl FnMut(Symbol, Symbol) -> (Symbol, Symbol),
    ) -> MealyAutomaton {
        let (ns, nl) = (states.len(), alphabet.len());
        let mut delta = Vec::with_capacity(ns * nl);
        let mut sigma = Vec::with_capacity(ns * nl);
        for a in states.symbols() {
            for x in alphabet.symbols() {
                let (d, s) = f(a, x);
                delta.push(d);
                sigma.push(s);
            }
        }
        let m = MealyAutomaton {
            states,
            alphabet,
            delta,
            sigma,
        };
        debug_assert!(m.validate().is_ok());
        m
    }

    pub fn states(&self) -> &Alphabet {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    #[inline]
    fn cell(&self, a: Symbol, x: Symbol) -> usize {
        a.index() * self.alphabet.len() + x.index()
    }

    /// δ(a, x): the next state.
    #[inline]
    pub fn delta(&self, a: Symbol, x: Symbol) -> Symbol {
        self.delta[self.cell(a, x)]
    }

    /// σ(a, x): the output letter.
    #[inline]
    pub fn sigma(&self, a: Symbol, x: Symbol) -> Symbol {
        self.sigma[self.cell(a, x)]
    }

    /// Checks that both tables are total and all entries refer to declared
    /// symbols. Machines assembled by [`MealyBuilder`] or [`from_fn`] are
    /// total by construction; this re-checks entry ranges.
    ///
    /// [`from_fn`]: MealyAutomaton::from_fn
    pub fn validate(&self) -> Result<(), Vec<MealyError>> {
        let mut errors = Vec::new();
        let expected = self.states.len() * self.alphabet.len();
        if self.delta.len() != expected || self.sigma.len() != expected {
            for a in self.states.symbols() {
                for x in self.alphabet.symbols() {
                    if self.cell(a, x) >= self.delta.len() || self.cell(a, x) >= self.sigma.len() {
                        errors.push(MealyError::IncompleteTable {
                            state: self.states.name(a).to_owned(),
                            letter: self.alphabet.name(x).to_owned(),
                        });
                    }
                }
            }
        }
        for a in self.states.symbols() {
            for x in self.alphabet.symbols() {
                let i = self.cell(a, x);
                if i >= self.delta.len() {
                    continue;
                }
                if !self.states.contains(self.delta[i]) || !self.alphabet.contains(self.sigma[i]) {
                    errors.push(MealyError::EntryOutOfRange {
                        state: self.states.name(a).to_owned(),
                        letter: self.alphabet.name(x).to_owned(),
                    });
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    fn check_state_word(&self, u: &Word) -> Result<(), MealyError> {
        if u.symbols().iter().all(|s| self.states.contains(*s)) {
            Ok(())
        } else {
            Err(MealyError::ForeignState)
        }
    }

    fn check_letter_word(&self, w: &Word) -> Result<(), MealyError> {
        if w.symbols().iter().all(|s| self.alphabet.contains(*s)) {
            Ok(())
        } else {
            Err(MealyError::ForeignLetter)
        }
    }

    /// Runs a single state over the word in place, replacing each letter by
    /// its output, and returns the final state.
    #[inline]
    pub(crate) fn run_pass(&self, a: Symbol, w: &mut [Symbol]) -> Symbol {
        let mut s = a;
        for c in w.iter_mut() {
            let x = *c;
            *c = self.sigma(s, x);
            s = self.delta(s, x);
        }
        s
    }

    /// σ_u(w): the action of the state word `u` on `w`. The empty state word
    /// acts as the identity. The result always has the length of `w`.
    pub fn act(&self, u: &Word, w: &Word) -> Result<Word, MealyError> {
        self.check_state_word(u)?;
        self.check_letter_word(w)?;
        let mut out = w.clone();
        for &a in u.symbols() {
            self.run_pass(a, out.as_mut_slice());
        }
        Ok(out)
    }

    /// δ_w(u): the state word after `σ_u` has consumed `w`, componentwise.
    /// Each component sees the word as transformed by the components before
    /// it. Always has the length of `u`; `w = ε` returns `u` unchanged.
    pub fn dstate(&self, u: &Word, w: &Word) -> Result<Word, MealyError> {
        self.check_state_word(u)?;
        self.check_letter_word(w)?;
        let mut cur = w.clone();
        let mut out = Vec::with_capacity(u.len());
        for &a in u.symbols() {
            out.push(self.run_pass(a, cur.as_mut_slice()));
        }
        Ok(Word::new(out))
    }

    /// The length-`len` prefix of `σ_u(w)` for an infinite input `w`.
    /// Because the action is prefix-preserving this agrees with `act` on the
    /// corresponding finite prefix of `w`.
    pub fn act_prefix(
        &self,
        u: &Word,
        w: &EventuallyPeriodicWord,
        len: usize,
    ) -> Result<Word, MealyError> {
        self.act(u, &w.prefix_word(len))
    }

    /// Interns a state word from names.
    pub fn state_word(&self, names: &[&str]) -> Result<Word, WordError> {
        self.states.word(names)
    }

    /// Interns an input word from names.
    pub fn letter_word(&self, names: &[&str]) -> Result<Word, WordError> {
        self.alphabet.word(names)
    }
}

/// Incremental table construction with totality and duplicate checking; used
/// by the text-format parser.
#[derive(Debug)]
pub struct MealyBuilder {
    states: Alphabet,
    alphabet: Alphabet,
    delta: Vec<Option<Symbol>>,
    sigma: Vec<Option<Symbol>>,
}

impl MealyBuilder {
    pub fn new(states: Alphabet, alphabet: Alphabet) -> MealyBuilder {
        let cells = states.len() * alphabet.len();
        MealyBuilder {
            states,
            alphabet,
            delta: vec![None; cells],
            sigma: vec![None; cells],
        }
    }

    pub fn states(&self) -> &Alphabet {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn set(
        &mut self,
        state: Symbol,
        letter: Symbol,
        next: Symbol,
        out: Symbol,
    ) -> Result<(), MealyError> {
        let i = state.index() * self.alphabet.len() + letter.index();
        if self.delta[i].is_some() {
            return Err(MealyError::DuplicateEntry {
                state: self.states.name(state).to_owned(),
                letter: self.alphabet.name(letter).to_owned(),
            });
        }
        self.delta[i] = Some(next);
        self.sigma[i] = Some(out);
        Ok(())
    }

    /// Finishes the machine, reporting every missing table entry.
    pub fn build(self) -> Result<MealyAutomaton, Vec<MealyError>> {
        let mut errors = Vec::new();
        for a in self.states.symbols() {
            for x in self.alphabet.symbols() {
                let i = a.index() * self.alphabet.len() + x.index();
                if self.delta[i].is_none() {
                    errors.push(MealyError::IncompleteTable {
                        state: self.states.name(a).to_owned(),
                        letter: self.alphabet.name(x).to_owned(),
                    });
                }
            }
        }
        if !errors.is_empty() {
            return Err(errors);
        }
        Ok(MealyAutomaton {
            states: self.states,
            alphabet: self.alphabet,
            delta: self.delta.into_iter().map(Option::unwrap).collect(),
            sigma: self.sigma.into_iter().map(Option::unwrap).collect(),
        })
    }
}

/// The one-state machine that copies its input: `σ(a, x) = x`, `δ(a, x) = a`.
pub fn identity_automaton(alphabet: Alphabet) -> MealyAutomaton {
    let states = Alphabet::new(["a"]).expect("nonempty");
    MealyAutomaton::from_fn(states, alphabet, |a, x| (a, x))
}

//! Interned alphabets and the words over them.
//!
//! Symbols are interned to small integers at alphabet construction time; the
//! declaration order is fixed and used everywhere canonical ordering matters
//! (table layout, search order, breadth-first relabeling).

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("cycle of an eventually periodic word must be nonempty")]
    EmptyCycle,
}

/// An interned symbol: an index into the alphabet it was created from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(index: usize) -> Symbol {
        debug_assert!(index < u16::MAX as usize);
        Symbol(index as u16)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An ordered finite set of named symbols.
#[derive(Clone, Debug)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Alphabet, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), Symbol::from_index(i)).is_some() {
                return Err(WordError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Alphabet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<Symbol, WordError> {
        self.symbol(name)
            .ok_or_else(|| WordError::UnknownSymbol(name.to_owned()))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.names.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(Symbol::from_index)
    }

    /// Interns a sequence of symbol names as a word.
    pub fn word(&self, names: &[&str]) -> Result<Word, WordError> {
        names.iter().map(|n| self.require(n)).collect()
    }

    /// Renders a word over this alphabet as space-separated names.
    pub fn format_word(&self, w: &Word) -> String {
        w.symbols()
            .iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A finite sequence of symbols. The empty word has length zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    /// The constant word `s^len`.
    pub fn repeated(s: Symbol, len: usize) -> Word {
        Word(vec![s; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn get(&self, k: usize) -> Option<Symbol> {
        self.0.get(k).copied()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [Symbol] {
        &mut self.0
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Symbol;
    fn index(&self, k: usize) -> &Symbol {
        &self.0[k]
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", s.index())?;
        }
        write!(f, "]")
    }
}

/// An infinite word given by a finite prefix followed by a repeated cycle.
///
/// The value at index `k` is `prefix[k]` when `k < |prefix|`, and
/// `cycle[(k − |prefix|) mod |cycle|]` otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EventuallyPeriodicWord {
    prefix: Word,
    cycle: Word,
}

impl EventuallyPeriodicWord {
    pub fn new(prefix: Word, cycle: Word) -> Result<EventuallyPeriodicWord, WordError> {
        if cycle.is_empty() {
            return Err(WordError::EmptyCycle);
        }
        Ok(EventuallyPeriodicWord { prefix, cycle })
    }

    pub fn constant(s: Symbol) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord {
            prefix: Word::empty(),
            cycle: Word::new(vec![s]),
        }
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    pub fn at(&self, k: usize) -> Symbol {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The finite prefix of the first `len` letters.
    pub fn prefix_word(&self, len: usize) -> Word {
        (0..len).map(|k| self.at(k)).collect()
    }
}

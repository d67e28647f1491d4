//! Letter-to-letter partial deterministic transducers.
//!
//! States and letters are addressed by dense indices that follow declaration
//! order. An automaton is either an explicit finite table or a lazily explored
//! oracle (see [`oracle`]).

mod construct;
mod format;
pub mod oracle;
mod props;

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::{Error, Result};

pub use construct::{compose_state_name, inverse_state_name};
pub use oracle::{OracleKey, TransitionOracle};
pub use props::{Component, PropertyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl LetterId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Finite word over an alphabet, as letter indices.
pub type Word = Vec<LetterId>;

/// Ordered set of symbol names; the position of a name is its index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols(IndexSet<String>);

impl Symbols {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails on the first repeated name.
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Self::new();
        for name in names {
            let name = name.into();
            if !out.0.insert(name.clone()) {
                return Err(Error::DuplicateSymbol(name));
            }
        }
        Ok(out)
    }

    pub fn insert(&mut self, name: impl Into<String>) -> usize {
        self.0.insert_full(name.into()).0
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.0.get_index_of(name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains(name)
    }
}

/// A single transition `state --input/output--> target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub state: StateId,
    pub input: LetterId,
    pub output: LetterId,
    pub target: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Table {
    states: Symbols,
    letters: usize,
    cells: Vec<Option<(LetterId, StateId)>>,
    // Declaration order of transitions, kept for lossless serialization.
    order: Vec<(StateId, LetterId)>,
}

#[derive(Clone, Debug)]
enum Backend {
    Finite(Table),
    Oracle(oracle::OracleBackend),
}

#[derive(Clone, Debug)]
pub struct Automaton {
    name: String,
    alphabet: Symbols,
    backend: Backend,
}

impl PartialEq for Automaton {
    fn eq(&self, other: &Self) -> bool {
        if self.name != other.name || self.alphabet != other.alphabet {
            return false;
        }
        match (&self.backend, &other.backend) {
            (Backend::Finite(a), Backend::Finite(b)) => a == b,
            (Backend::Oracle(a), Backend::Oracle(b)) => a.same_as(b),
            _ => false,
        }
    }
}

/// Read access to an explicitly enumerated automaton.
#[derive(Clone, Copy)]
pub struct FiniteView<'a> {
    automaton: &'a Automaton,
    table: &'a Table,
}

impl<'a> FiniteView<'a> {
    pub fn num_states(&self) -> usize {
        self.table.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.table.letters
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_states() as u32).map(StateId)
    }

    pub fn letters(&self) -> impl Iterator<Item = LetterId> {
        (0..self.table.letters as u32).map(LetterId)
    }

    pub fn delta(&self, state: StateId, letter: LetterId) -> Option<(LetterId, StateId)> {
        self.table.cells[state.index() * self.table.letters + letter.index()]
    }

    pub fn state_names(&self) -> &'a Symbols {
        &self.table.states
    }

    pub fn automaton(&self) -> &'a Automaton {
        self.automaton
    }

    /// Transitions in declaration order.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + 'a {
        let table = self.table;
        table.order.iter().map(move |&(state, input)| {
            let (output, target) = table.cells[state.index() * table.letters + input.index()]
                .expect("ordered transitions are defined");
            Transition {
                state,
                input,
                output,
                target,
            }
        })
    }
}

impl Automaton {
    pub fn builder(name: impl Into<String>) -> AutomatonBuilder {
        AutomatonBuilder {
            name: name.into(),
            alphabet: Vec::new(),
            states: Vec::new(),
            transitions: Vec::new(),
        }
    }

    /// Builds an explicit automaton from indexed parts.
    pub fn from_parts(
        name: impl Into<String>,
        alphabet: Symbols,
        states: Symbols,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if states.is_empty() {
            return Err(Error::EmptyStates);
        }
        let letters = alphabet.len();
        let mut cells = vec![None; states.len() * letters];
        let mut order = Vec::new();
        for t in transitions {
            if t.state.index() >= states.len() || t.target.index() >= states.len() {
                return Err(Error::UnknownState(format!("#{}", t.state.0.max(t.target.0))));
            }
            if t.input.index() >= letters || t.output.index() >= letters {
                return Err(Error::UnknownLetter(format!("#{}", t.input.0.max(t.output.0))));
            }
            let cell = &mut cells[t.state.index() * letters + t.input.index()];
            if cell.is_some() {
                return Err(Error::DuplicateTransition {
                    state: states.name(t.state.index()).to_string(),
                    letter: alphabet.name(t.input.index()).to_string(),
                });
            }
            *cell = Some((t.output, t.target));
            order.push((t.state, t.input));
        }
        Ok(Self {
            name: name.into(),
            alphabet,
            backend: Backend::Finite(Table {
                states,
                letters,
                cells,
                order,
            }),
        })
    }

    /// Wraps a transition oracle; states are interned on first use and at most
    /// `bound` distinct states may be explored.
    pub fn from_oracle(
        name: impl Into<String>,
        alphabet: Symbols,
        oracle: Arc<dyn TransitionOracle>,
        bound: usize,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self {
            name: name.into(),
            alphabet,
            backend: Backend::Oracle(oracle::OracleBackend::new(oracle, bound)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Symbols {
        &self.alphabet
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = LetterId> {
        (0..self.alphabet.len() as u32).map(LetterId)
    }

    pub fn letter(&self, name: &str) -> Result<LetterId> {
        self.alphabet
            .get(name)
            .map(|i| LetterId(i as u32))
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn letter_name(&self, letter: LetterId) -> &str {
        self.alphabet.name(letter.index())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.backend, Backend::Finite(_))
    }

    /// Explicit view, or an `Unsupported` error naming `operation` for oracles.
    pub fn finite(&self, operation: &'static str) -> Result<FiniteView<'_>> {
        match &self.backend {
            Backend::Finite(table) => Ok(FiniteView {
                automaton: self,
                table,
            }),
            Backend::Oracle(_) => Err(Error::Unsupported(operation)),
        }
    }

    pub fn num_states(&self) -> Option<usize> {
        match &self.backend {
            Backend::Finite(t) => Some(t.states.len()),
            Backend::Oracle(_) => None,
        }
    }

    /// Resolves a state name. Oracle states are parsed and interned.
    pub fn state(&self, name: &str) -> Result<StateId> {
        match &self.backend {
            Backend::Finite(t) => t
                .states
                .get(name)
                .map(|i| StateId(i as u32))
                .ok_or_else(|| Error::UnknownState(name.to_string())),
            Backend::Oracle(o) => o.resolve(name),
        }
    }

    pub fn state_name(&self, state: StateId) -> String {
        match &self.backend {
            Backend::Finite(t) => t.states.name(state.index()).to_string(),
            Backend::Oracle(o) => o.name(state),
        }
    }

    pub fn transition(&self, state: StateId, letter: LetterId) -> Result<Option<(LetterId, StateId)>> {
        match &self.backend {
            Backend::Finite(t) => {
                if state.index() >= t.states.len() {
                    return Err(Error::UnknownState(format!("#{}", state.0)));
                }
                if letter.index() >= t.letters {
                    return Err(Error::UnknownLetter(format!("#{}", letter.0)));
                }
                Ok(t.cells[state.index() * t.letters + letter.index()])
            }
            Backend::Oracle(o) => {
                if letter.index() >= self.alphabet.len() {
                    return Err(Error::UnknownLetter(format!("#{}", letter.0)));
                }
                o.transition(state, letter)
            }
        }
    }

    /// Same alphabet, states and transitions by name, ignoring index order and
    /// the automaton name.
    pub fn same_structure(&self, other: &Automaton) -> bool {
        let (Ok(a), Ok(b)) = (self.finite("compare"), other.finite("compare")) else {
            return false;
        };
        let letters = |x: &Automaton| {
            let mut v: Vec<_> = x.alphabet.iter().map(str::to_string).collect();
            v.sort();
            v
        };
        let states = |v: &FiniteView<'_>| {
            let mut s: Vec<_> = v.state_names().iter().map(str::to_string).collect();
            s.sort();
            s
        };
        let trans = |v: &FiniteView<'_>| {
            let x = v.automaton();
            let mut t: Vec<_> = v
                .transitions()
                .map(|t| {
                    (
                        x.state_name(t.state),
                        x.letter_name(t.input).to_string(),
                        x.letter_name(t.output).to_string(),
                        x.state_name(t.target),
                    )
                })
                .collect();
            t.sort();
            t
        };
        letters(self) == letters(other) && states(&a) == states(&b) && trans(&a) == trans(&b)
    }
}

/// Builds an automaton from symbol names.
pub struct AutomatonBuilder {
    name: String,
    alphabet: Vec<String>,
    states: Vec<String>,
    transitions: Vec<[String; 4]>,
}

impl AutomatonBuilder {
    pub fn letters<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.alphabet.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn states<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.states.extend(names.into_iter().map(Into::into));
        self
    }

    /// Adds `state --input/output--> target`.
    pub fn trans(mut self, state: &str, input: &str, output: &str, target: &str) -> Self {
        self.transitions.push([
            state.to_string(),
            input.to_string(),
            output.to_string(),
            target.to_string(),
        ]);
        self
    }

    pub fn build(self) -> Result<Automaton> {
        let alphabet = Symbols::from_names(self.alphabet)?;
        let states = Symbols::from_names(self.states)?;
        let letter = |n: &str| {
            alphabet
                .get(n)
                .map(|i| LetterId(i as u32))
                .ok_or_else(|| Error::UnknownLetter(n.to_string()))
        };
        let state = |n: &str| {
            states
                .get(n)
                .map(|i| StateId(i as u32))
                .ok_or_else(|| Error::UnknownState(n.to_string()))
        };
        let mut ts = Vec::with_capacity(self.transitions.len());
        for [q, a, b, p] in &self.transitions {
            ts.push(Transition {
                state: state(q)?,
                input: letter(a)?,
                output: letter(b)?,
                target: state(p)?,
            });
        }
        Automaton::from_parts(self.name, alphabet, states, ts)
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Ok(text) => f.write_str(&text),
            Err(_) => write!(f, "automaton {} (oracle)", self.name),
        }
    }
}

//! Lazily explored automata with infinitely many (structured) states.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{LetterId, StateId};
use crate::{Error, Result};

/// Structured state name such as `q[2,3]` or `id`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OracleKey {
    pub kind: String,
    pub index: Vec<u64>,
}

impl OracleKey {
    pub fn new(kind: &str, index: &[u64]) -> Self {
        Self {
            kind: kind.to_string(),
            index: index.to_vec(),
        }
    }

    pub fn plain(kind: &str) -> Self {
        Self::new(kind, &[])
    }
}

impl fmt::Display for OracleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind)?;
        if !self.index.is_empty() {
            let parts: Vec<String> = self.index.iter().map(u64::to_string).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for OracleKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownState(s.to_string());
        match s.split_once('[') {
            None => Ok(Self::plain(s)),
            Some((kind, rest)) => {
                let inner = rest.strip_suffix(']').ok_or_else(bad)?;
                let index = inner
                    .split(',')
                    .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::new(kind, &index))
            }
        }
    }
}

/// Transition function of an automaton given by a rule rather than a table.
pub trait TransitionOracle: Send + Sync + fmt::Debug {
    fn family(&self) -> &str;

    /// Whether `key` names a state of this automaton.
    fn is_state(&self, key: &OracleKey) -> bool;

    fn transition(&self, key: &OracleKey, letter: LetterId) -> Option<(LetterId, OracleKey)>;
}

#[derive(Debug, Default)]
struct Interner {
    keys: Vec<OracleKey>,
    ids: HashMap<OracleKey, StateId>,
    memo: HashMap<(StateId, LetterId), Option<(LetterId, StateId)>>,
}

#[derive(Clone, Debug)]
pub(super) struct OracleBackend {
    oracle: Arc<dyn TransitionOracle>,
    table: Arc<Mutex<Interner>>,
    bound: usize,
}

impl OracleBackend {
    pub(super) fn new(oracle: Arc<dyn TransitionOracle>, bound: usize) -> Self {
        Self {
            oracle,
            table: Arc::default(),
            bound,
        }
    }

    pub(super) fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
    }

    fn intern(&self, table: &mut Interner, key: OracleKey) -> Result<StateId> {
        if let Some(&id) = table.ids.get(&key) {
            return Ok(id);
        }
        if table.keys.len() >= self.bound {
            return Err(Error::ExplorationBound(self.bound));
        }
        let id = StateId(table.keys.len() as u32);
        table.keys.push(key.clone());
        table.ids.insert(key, id);
        Ok(id)
    }

    pub(super) fn resolve(&self, name: &str) -> Result<StateId> {
        let key: OracleKey = name.parse()?;
        if !self.oracle.is_state(&key) {
            return Err(Error::UnknownState(name.to_string()));
        }
        let mut table = self.table.lock().unwrap();
        self.intern(&mut table, key)
    }

    pub(super) fn name(&self, state: StateId) -> String {
        let table = self.table.lock().unwrap();
        table
            .keys
            .get(state.index())
            .map(ToString::to_string)
            .unwrap_or_else(|| format!("#{}", state.0))
    }

    pub(super) fn transition(&self, state: StateId, letter: LetterId) -> Result<Option<(LetterId, StateId)>> {
        let mut table = self.table.lock().unwrap();
        if let Some(&hit) = table.memo.get(&(state, letter)) {
            return Ok(hit);
        }
        let key = table
            .keys
            .get(state.index())
            .cloned()
            .ok_or_else(|| Error::UnknownState(format!("#{}", state.0)))?;
        let result = match self.oracle.transition(&key, letter) {
            Some((out, next)) => Some((out, self.intern(&mut table, next)?)),
            None => None,
        };
        table.memo.insert((state, letter), result);
        Ok(result)
    }
}

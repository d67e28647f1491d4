use std::collections::{HashMap, VecDeque};

use super::{Automaton, FiniteView, StateId, Transition};
use crate::Result;

/// Structural properties of an explicit automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub complete: bool,
    pub reversible: bool,
    pub invertible: bool,
    pub inverse_reversible: bool,
    pub bi_reversible: bool,
    pub components: Vec<Component>,
}

/// Connected component of the underlying undirected transition graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub states: Vec<StateId>,
    pub strongly_connected: bool,
    pub bi_reversible: bool,
}

fn injective<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> bool {
    let mut seen = std::collections::HashSet::new();
    keys.into_iter().all(|k| seen.insert(k))
}

fn reversible(ts: &[Transition]) -> bool {
    injective(ts.iter().map(|t| (t.input, t.target)))
}

fn inverse_reversible(ts: &[Transition]) -> bool {
    injective(ts.iter().map(|t| (t.output, t.target)))
}

impl Automaton {
    pub fn classify(&self) -> Result<PropertyReport> {
        let view = self.finite("classify")?;
        let ts: Vec<Transition> = view.transitions().collect();
        let complete = ts.len() == view.num_states() * view.num_letters();
        let rev = reversible(&ts);
        let inv = injective(ts.iter().map(|t| (t.state, t.output)));
        let inv_rev = inverse_reversible(&ts);
        Ok(PropertyReport {
            complete,
            reversible: rev,
            invertible: inv,
            inverse_reversible: inv_rev,
            bi_reversible: rev && inv_rev,
            components: components(&view, &ts),
        })
    }
}

fn components(view: &FiniteView<'_>, ts: &[Transition]) -> Vec<Component> {
    let n = view.num_states();
    let mut undirected = vec![Vec::new(); n];
    let mut forward = vec![Vec::new(); n];
    let mut backward = vec![Vec::new(); n];
    for t in ts {
        undirected[t.state.index()].push(t.target.index());
        undirected[t.target.index()].push(t.state.index());
        forward[t.state.index()].push(t.target.index());
        backward[t.target.index()].push(t.state.index());
    }
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let members = reach(start, &undirected);
        for &m in &members {
            label[m] = id;
        }
        let strongly_connected =
            reach(start, &forward).len() == members.len() && reach(start, &backward).len() == members.len();
        let own: Vec<Transition> = ts
            .iter()
            .filter(|t| label[t.state.index()] == id)
            .copied()
            .collect();
        let mut states: Vec<StateId> = members.iter().map(|&m| StateId(m as u32)).collect();
        states.sort();
        out.push(Component {
            states,
            strongly_connected,
            bi_reversible: reversible(&own) && inverse_reversible(&own),
        });
    }
    out
}

fn reach(start: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut seen = HashMap::new();
    let mut queue = VecDeque::from([start]);
    seen.insert(start, ());
    let mut order = vec![start];
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if seen.insert(w, ()).is_none() {
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

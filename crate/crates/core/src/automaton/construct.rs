//! Dual, inverse, union, composition and powers.

use std::collections::{HashMap, VecDeque};

use super::{Automaton, LetterId, StateId, Symbols, Transition};
use crate::{Error, Result};

const INVERSE_TAG: &str = "^-1";

/// Name of the inverse copy of a state; applying it twice gives the name back.
pub fn inverse_state_name(name: &str) -> String {
    match name.strip_suffix(INVERSE_TAG) {
        Some(base) => base.to_string(),
        None => format!("{name}{INVERSE_TAG}"),
    }
}

/// Name of the product state that applies `first` and then `second`.
pub fn compose_state_name(second: &str, first: &str) -> String {
    format!("{second}∘{first}")
}

impl Automaton {
    /// Swaps the roles of states and letters: `q --a/b--> p` becomes
    /// `a --q/p--> b`.
    pub fn dual(&self) -> Result<Automaton> {
        let view = self.finite("dual")?;
        let ts = view.transitions().map(|t| Transition {
            state: StateId(t.input.0),
            input: LetterId(t.state.0),
            output: LetterId(t.target.0),
            target: StateId(t.output.0),
        });
        Automaton::from_parts(
            format!("dual-{}", self.name),
            view.state_names().clone(),
            self.alphabet.clone(),
            ts.collect::<Vec<_>>(),
        )
    }

    /// Swaps input and output letters on tagged copies of the states.
    pub fn inverse(&self) -> Result<Automaton> {
        let view = self.finite("inverse")?;
        let mut seen: HashMap<(StateId, LetterId), LetterId> = HashMap::new();
        for t in view.transitions() {
            if let Some(first) = seen.insert((t.state, t.output), t.input) {
                return Err(Error::NotInvertible {
                    state: self.state_name(t.state),
                    output: self.letter_name(t.output).to_string(),
                    first: self.letter_name(first).to_string(),
                    second: self.letter_name(t.input).to_string(),
                });
            }
        }
        let states = Symbols::from_names(view.state_names().iter().map(inverse_state_name))?;
        let ts: Vec<_> = view
            .transitions()
            .map(|t| Transition {
                state: t.state,
                input: t.output,
                output: t.input,
                target: t.target,
            })
            .collect();
        Automaton::from_parts(format!("{}{INVERSE_TAG}", self.name), self.alphabet.clone(), states, ts)
    }

    /// Disjoint union over the union of both alphabets. State names are kept
    /// when they do not clash, otherwise they are suffixed with `@1` and `@2`.
    pub fn disjoint_union(&self, other: &Automaton) -> Result<Automaton> {
        let a = self.finite("union")?;
        let b = other.finite("union")?;
        let clash = a.state_names().iter().any(|q| b.state_names().contains(q));
        let tag = |name: &str, side: u8| {
            if clash {
                format!("{name}@{side}")
            } else {
                name.to_string()
            }
        };
        let mut alphabet = self.alphabet.clone();
        for l in other.alphabet.iter() {
            alphabet.insert(l);
        }
        let states = Symbols::from_names(
            a.state_names()
                .iter()
                .map(|q| tag(q, 1))
                .chain(b.state_names().iter().map(|q| tag(q, 2))),
        )?;
        let offset = a.num_states() as u32;
        let remap = |x: &Automaton, l: LetterId| LetterId(alphabet.get(x.letter_name(l)).unwrap() as u32);
        let mut ts: Vec<Transition> = a.transitions().collect();
        for t in b.transitions() {
            ts.push(Transition {
                state: StateId(t.state.0 + offset),
                input: remap(other, t.input),
                output: remap(other, t.output),
                target: StateId(t.target.0 + offset),
            });
        }
        Automaton::from_parts(
            format!("{}+{}", self.name, other.name),
            alphabet.clone(),
            states,
            ts,
        )
    }

    /// Product automaton whose state `q2∘q1` applies `q1 ∈ first` and then
    /// `q2 ∈ second`. No trimming is done.
    pub fn compose(second: &Automaton, first: &Automaton) -> Result<Automaton> {
        let s = second.finite("compose")?;
        let f = first.finite("compose")?;
        let same_set = second.alphabet.len() == first.alphabet.len()
            && first.alphabet.iter().all(|l| second.alphabet.contains(l));
        if !same_set {
            return Err(Error::AlphabetMismatch);
        }
        // Letters of `first` translated into `second`'s indices.
        let to_second: Vec<LetterId> = first
            .alphabet
            .iter()
            .map(|l| LetterId(second.alphabet.get(l).unwrap() as u32))
            .collect();
        let nf = f.num_states();
        let names = s.state_names().iter().flat_map(|q2| {
            f.state_names()
                .iter()
                .map(move |q1| compose_state_name(q2, q1))
        });
        let states = Symbols::from_names(names)?;
        let mut ts = Vec::new();
        for q2 in s.states() {
            for q1 in f.states() {
                for a in second.letters() {
                    let a1 = LetterId(first.alphabet.get(second.letter_name(a)).unwrap() as u32);
                    let Some((b1, p1)) = f.delta(q1, a1) else {
                        continue;
                    };
                    let Some((c, p2)) = s.delta(q2, to_second[b1.index()]) else {
                        continue;
                    };
                    ts.push(Transition {
                        state: StateId((q2.index() * nf + q1.index()) as u32),
                        input: a,
                        output: c,
                        target: StateId((p2.index() * nf + p1.index()) as u32),
                    });
                }
            }
        }
        Automaton::from_parts(
            compose_state_name(&second.name, &first.name),
            second.alphabet.clone(),
            states,
            ts,
        )
    }

    /// `k`-fold composition of the automaton with itself, `k >= 1`.
    pub fn power(&self, k: usize) -> Result<Automaton> {
        if k == 0 {
            return Err(Error::Precondition("power exponent must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = Automaton::compose(self, &acc)?;
        }
        Ok(acc.with_name(format!("{}^{k}", self.name)))
    }

    /// Sub-automaton of states reachable from `roots`, in discovery order.
    pub fn restrict_reachable(&self, roots: &[StateId]) -> Result<Automaton> {
        let view = self.finite("trim")?;
        let mut index: HashMap<StateId, u32> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &r in roots {
            if r.index() >= view.num_states() {
                return Err(Error::UnknownState(format!("#{}", r.0)));
            }
            if !index.contains_key(&r) {
                index.insert(r, order.len() as u32);
                order.push(r);
                queue.push_back(r);
            }
        }
        while let Some(q) = queue.pop_front() {
            for a in view.letters() {
                if let Some((_, p)) = view.delta(q, a) {
                    if !index.contains_key(&p) {
                        index.insert(p, order.len() as u32);
                        order.push(p);
                        queue.push_back(p);
                    }
                }
            }
        }
        let states = Symbols::from_names(order.iter().map(|&q| self.state_name(q)))?;
        let ts: Vec<_> = view
            .transitions()
            .filter(|t| index.contains_key(&t.state))
            .map(|t| Transition {
                state: StateId(index[&t.state]),
                input: t.input,
                output: t.output,
                target: StateId(index[&t.target]),
            })
            .collect();
        Automaton::from_parts(self.name.clone(), self.alphabet.clone(), states, ts)
    }
}

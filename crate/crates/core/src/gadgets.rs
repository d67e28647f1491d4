//! A gadget automaton whose marker state, run on an encoded state sequence,
//! counts through the sequence `Λ(s)` followed by a distinguished state.
//!
//! `Λ(q_1) = q_1` and `Λ(q_1 … q_n) = Λ(q_1 … q_{n-1}) q_n Λ(q_1 … q_{n-1})`.
//! The word `*(a_{q_1},0)…(a_{q_n},0)#` acts as a binary counter: each pass of
//! the marker state increments it and leaves behind the next entry of
//! `Λ(s) $`, so `2^n · k` passes return the word unchanged with residual
//! `(Λ(s) $)^k`.

use std::collections::HashSet;

use crate::action::{act_finite, Act, StateSeq};
use crate::automaton::{Automaton, LetterId, StateId, Symbols, Transition, Word};
use crate::{Error, Result};

/// `Λ(s)`; fails when its length `2^|s| - 1` exceeds `budget`.
pub fn lambda_expand<T: Clone>(s: &[T], budget: usize) -> Result<Vec<T>> {
    let len = u32::try_from(s.len())
        .ok()
        .and_then(|n| 1usize.checked_shl(n))
        .map(|p| p - 1)
        .filter(|&l| l <= budget)
        .ok_or_else(|| Error::Budget(format!("expansion of a length-{} sequence exceeds {budget}", s.len())))?;
    let mut out = Vec::with_capacity(len);
    for q in s {
        let prev = out.clone();
        out.push(q.clone());
        out.extend(prev);
    }
    Ok(out)
}

/// Letter names of the counter alphabet.
pub fn counter_letter(state: &str, bit: u8) -> String {
    format!("aq:{state}:{bit}")
}

/// State names of the per-state skip states.
pub fn skip_state(state: &str) -> String {
    format!("#q:{state}")
}

pub const START_MARK: &str = "*";
pub const END_MARK: &str = "#";
pub const MARKER_STATE: &str = "@s";
pub const COUNTER_STATE: &str = "@t";
pub const IDENTITY_STATE: &str = "@id";

/// Gadget automaton and the indices needed to use it.
#[derive(Clone, Debug)]
pub struct GadgetBundle {
    pub automaton: Automaton,
    /// Source state `q` as a state of the gadget.
    pub source_states: Vec<StateId>,
    pub dollar: StateId,
    pub marker: StateId,
    pub counter: StateId,
    pub identity: StateId,
    /// `(a_q, 0)` and `(a_q, 1)` for every source state `q`.
    pub counter_letters: Vec<[LetterId; 2]>,
    pub start: LetterId,
    pub end: LetterId,
}

/// Builds the gadget over the source automaton `t`, with `dollar` the state
/// reached when the counter overflows. Missing transitions are completed
/// to the identity state.
pub fn build_gadget(t: &Automaton, dollar: StateId) -> Result<GadgetBundle> {
    let view = t.finite("gadget")?;
    if dollar.index() >= view.num_states() {
        return Err(Error::UnknownState(format!("#{}", dollar.0)));
    }
    let names: Vec<String> = view.state_names().iter().map(str::to_string).collect();

    let mut letters: Vec<String> = t.alphabet().iter().map(str::to_string).collect();
    for q in &names {
        letters.push(counter_letter(q, 0));
        letters.push(counter_letter(q, 1));
    }
    letters.push(START_MARK.into());
    letters.push(END_MARK.into());
    let mut states = names.clone();
    states.extend([MARKER_STATE, COUNTER_STATE, IDENTITY_STATE].map(String::from));
    states.extend(names.iter().map(|q| skip_state(q)));
    let clash = |v: &[String]| {
        let mut seen = HashSet::new();
        v.iter().find(|x| !seen.insert(x.as_str())).cloned()
    };
    if let Some(name) = clash(&letters).or_else(|| clash(&states)) {
        return Err(Error::Precondition(format!("gadget symbol `{name}` clashes with the source automaton")));
    }
    let alphabet = Symbols::from_names(letters)?;
    let state_syms = Symbols::from_names(states)?;

    let n = names.len();
    let sigma = t.num_letters();
    let letter = |i: usize| LetterId(i as u32);
    let counter_letters: Vec<[LetterId; 2]> = (0..n).map(|i| [letter(sigma + 2 * i), letter(sigma + 2 * i + 1)]).collect();
    let start = letter(sigma + 2 * n);
    let end = letter(sigma + 2 * n + 1);
    let marker = StateId(n as u32);
    let counter = StateId(n as u32 + 1);
    let identity = StateId(n as u32 + 2);
    let skip = |i: usize| StateId((n + 3 + i) as u32);

    let mut ts: Vec<Transition> = view.transitions().collect();
    let tr = |state, input, output, target| Transition {
        state,
        input,
        output,
        target,
    };
    ts.push(tr(marker, start, start, counter));
    ts.push(tr(counter, end, end, dollar));
    for (i, [zero, one]) in counter_letters.iter().copied().enumerate() {
        ts.push(tr(counter, one, zero, counter));
        ts.push(tr(counter, zero, one, skip(i)));
    }
    for i in 0..n {
        for pair in &counter_letters {
            for &l in pair {
                ts.push(tr(skip(i), l, l, skip(i)));
            }
        }
        ts.push(tr(skip(i), end, end, StateId(i as u32)));
    }
    for l in 0..alphabet.len() {
        ts.push(tr(identity, letter(l), letter(l), identity));
    }
    let defined: HashSet<(StateId, LetterId)> = ts.iter().map(|t| (t.state, t.input)).collect();
    for q in 0..state_syms.len() {
        for l in 0..alphabet.len() {
            let (q, l) = (StateId(q as u32), letter(l));
            if !defined.contains(&(q, l)) {
                ts.push(tr(q, l, l, identity));
            }
        }
    }
    let automaton = Automaton::from_parts(format!("gadget-{}", t.name()), alphabet, state_syms, ts)?;
    Ok(GadgetBundle {
        automaton,
        source_states: (0..n as u32).map(StateId).collect(),
        dollar,
        marker,
        counter,
        identity,
        counter_letters,
        start,
        end,
    })
}

/// `*(a_{q_1},0)…(a_{q_n},0)#` for a sequence of source states.
pub fn encode_word(g: &GadgetBundle, s: &StateSeq) -> Result<Word> {
    let mut w = vec![g.start];
    for q in s.as_slice() {
        let pair = g
            .counter_letters
            .get(q.index())
            .ok_or_else(|| Error::UnknownState(format!("#{}", q.0)))?;
        w.push(pair[0]);
    }
    w.push(g.end);
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DaggerVerdict {
    Verified,
    Mismatch {
        expected_output: Word,
        expected_residual: StateSeq,
        got: Option<(Word, StateSeq)>,
    },
}

/// Checks that `2^|s| · k` passes of the marker state over the encoding of
/// `s` return the encoding with residual `(Λ(s) $)^k` in application order.
pub fn verify_dagger(g: &GadgetBundle, s: &StateSeq, k: usize) -> Result<DaggerVerdict> {
    let u = encode_word(g, s)?;
    let mut period = lambda_expand(s.as_slice(), 1 << 20)?;
    period.push(g.dollar);
    let expected = StateSeq::new(period.clone()).pow(k);
    let passes = StateSeq::single(g.marker).pow(k * period.len());
    let got = match act_finite(&g.automaton, &passes, &u)? {
        Act::Defined(r) => Some((r.output, r.residual)),
        Act::Undefined(_) => None,
    };
    if got.as_ref() == Some(&(u.clone(), expected.clone())) {
        return Ok(DaggerVerdict::Verified);
    }
    Ok(DaggerVerdict::Mismatch {
        expected_output: u,
        expected_residual: expected,
        got,
    })
}

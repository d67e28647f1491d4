//! Actions of state sequences on finite and ultimately periodic words.
//!
//! A [`StateSeq`] is stored in application order: element 0 reads the input
//! first. In left-action notation `q_n ⋯ q_1 ∘ w` the same sequence is written
//! reversed; [`StateSeq::render_left`] produces that form.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::{Automaton, LetterId, StateId, Word};
use crate::{Error, Result};

/// Sequence of states in application order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSeq(pub Vec<StateId>);

impl StateSeq {
    pub fn new(states: Vec<StateId>) -> Self {
        Self(states)
    }

    pub fn single(q: StateId) -> Self {
        Self(vec![q])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[StateId] {
        &self.0
    }

    /// `self` followed by `next`, i.e. `next ∘ self` in left-action notation.
    pub fn then(&self, next: &StateSeq) -> StateSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&next.0);
        StateSeq(v)
    }

    pub fn pow(&self, k: usize) -> StateSeq {
        StateSeq(self.0.repeat(k))
    }

    /// Parses comma-separated state names in application order; `` or `ε`
    /// is the empty sequence.
    pub fn parse(a: &Automaton, text: &str) -> Result<StateSeq> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(StateSeq::default());
        }
        text.split(',')
            .map(|s| a.state(s.trim()))
            .collect::<Result<Vec<_>>>()
            .map(StateSeq)
    }

    /// Comma-separated names in application order.
    pub fn render(&self, a: &Automaton) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        let names: Vec<String> = self.0.iter().map(|&q| a.state_name(q)).collect();
        names.join(",")
    }

    /// Names in left-action order, last applied first.
    pub fn render_left(&self, a: &Automaton) -> String {
        if self.is_empty() {
            return "ε (left-action order)".to_string();
        }
        let names: Vec<String> = self.0.iter().rev().map(|&q| a.state_name(q)).collect();
        format!("{} (left-action order)", names.join(" "))
    }
}

impl FromIterator<StateId> for StateSeq {
    fn from_iter<T: IntoIterator<Item = StateId>>(iter: T) -> Self {
        StateSeq(iter.into_iter().collect())
    }
}

/// Parses a word. Letters may be separated by commas or spaces; otherwise the
/// text is split greedily into the longest matching letter names.
pub fn parse_word(a: &Automaton, text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || text == "ε" {
        return Ok(Vec::new());
    }
    if text.contains(',') || text.contains(' ') {
        return text
            .split([',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| a.letter(s))
            .collect();
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let best = a
            .letters()
            .filter(|&l| rest.starts_with(a.letter_name(l)))
            .max_by_key(|&l| a.letter_name(l).len())
            .ok_or_else(|| Error::UnknownLetter(rest.to_string()))?;
        rest = &rest[a.letter_name(best).len()..];
        out.push(best);
    }
    Ok(out)
}

/// Renders a word, concatenating letters when every letter name is a single
/// character and separating with commas otherwise.
pub fn render_word(a: &Automaton, w: &[LetterId]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    let short = a.alphabet().iter().all(|l| l.chars().count() == 1);
    let parts: Vec<&str> = w.iter().map(|&l| a.letter_name(l)).collect();
    parts.join(if short { "" } else { "," })
}

/// Ultimately periodic word `u v^ω` in canonical form: `v` is primitive and
/// `u` is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPWord {
    prefix: Word,
    period: Word,
}

/// Canonical form of `u v^ω`; fails when `v` is empty.
pub fn up_canonicalize(u: &[LetterId], v: &[LetterId]) -> Result<UPWord> {
    if v.is_empty() {
        return Err(Error::Precondition("period of an ultimately periodic word must be non-empty".into()));
    }
    let n = v.len();
    let root = (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| v[i] == v[i - p]))
        .unwrap_or(n);
    let mut period = v[..root].to_vec();
    let mut prefix = u.to_vec();
    while let Some(&last) = prefix.last() {
        if last != *period.last().unwrap() {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    Ok(UPWord { prefix, period })
}

impl UPWord {
    pub fn new(prefix: &[LetterId], period: &[LetterId]) -> Result<Self> {
        up_canonicalize(prefix, period)
    }

    pub fn periodic(period: &[LetterId]) -> Result<Self> {
        up_canonicalize(&[], period)
    }

    pub fn prefix(&self) -> &[LetterId] {
        &self.prefix
    }

    pub fn period(&self) -> &[LetterId] {
        &self.period
    }

    pub fn letter_at(&self, i: usize) -> LetterId {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// First `n` letters.
    pub fn take(&self, n: usize) -> Word {
        (0..n).map(|i| self.letter_at(i)).collect()
    }

    /// Parses `u|v`.
    pub fn parse(a: &Automaton, text: &str) -> Result<UPWord> {
        let (u, v) = text
            .split_once('|')
            .ok_or_else(|| Error::Precondition(format!("expected `prefix|period`, got `{text}`")))?;
        up_canonicalize(&parse_word(a, u)?, &parse_word(a, v)?)
    }

    pub fn render(&self, a: &Automaton) -> String {
        format!("{}|{}", render_word(a, &self.prefix), render_word(a, &self.period))
    }
}

impl fmt::Display for UPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[LetterId]| w.iter().map(|l| l.0.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.prefix), join(&self.period))
    }
}

/// Cell of the cross diagram where a computation first fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UndefinedAt {
    /// Index of the state in the sequence.
    pub row: usize,
    /// Index of the letter in the word.
    pub position: usize,
    pub state: StateId,
    pub letter: LetterId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Act<T> {
    Defined(T),
    Undefined(UndefinedAt),
}

impl<T> Act<T> {
    pub fn defined(self) -> Option<T> {
        match self {
            Act::Defined(t) => Some(t),
            Act::Undefined(_) => None,
        }
    }
}

/// Output word `s ∘ w` and residual sequence `s · w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActResult {
    pub output: Word,
    pub residual: StateSeq,
}

/// Runs `s` on `w` row by row; on failure reports the first failing cell in
/// row-major order.
pub fn act_finite(a: &Automaton, s: &StateSeq, w: &[LetterId]) -> Result<Act<ActResult>> {
    let mut word = w.to_vec();
    let mut residual = Vec::with_capacity(s.len());
    for (row, &q0) in s.0.iter().enumerate() {
        let mut q = q0;
        for (position, x) in word.iter_mut().enumerate() {
            match a.transition(q, *x)? {
                Some((b, p)) => {
                    *x = b;
                    q = p;
                }
                None => {
                    return Ok(Act::Undefined(UndefinedAt {
                        row,
                        position,
                        state: q,
                        letter: *x,
                    }))
                }
            }
        }
        residual.push(q);
    }
    Ok(Act::Defined(ActResult {
        output: word,
        residual: StateSeq(residual),
    }))
}

/// Residual `s · w` computed column by column, feeding each letter of `w`
/// through the whole sequence before the next one. On failure reports the
/// first failing cell in column-major order.
pub fn act_dual(a: &Automaton, w: &[LetterId], s: &StateSeq) -> Result<Act<StateSeq>> {
    let mut states = s.0.clone();
    for (position, &x0) in w.iter().enumerate() {
        let mut x = x0;
        for (row, q) in states.iter_mut().enumerate() {
            match a.transition(*q, x)? {
                Some((b, p)) => {
                    x = b;
                    *q = p;
                }
                None => {
                    return Ok(Act::Undefined(UndefinedAt {
                        row,
                        position,
                        state: *q,
                        letter: x,
                    }))
                }
            }
        }
    }
    Ok(Act::Defined(StateSeq(states)))
}

/// Result of acting on an ultimately periodic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpAct {
    Defined(UPWord),
    /// The image is undefined on every prefix of length at least `prefix_len`
    /// and defined on shorter ones.
    Undefined { prefix_len: usize },
}

/// Image of `x` under a single state. Terminates once a state repeats at the
/// start of a period pass.
pub fn act_state_up(a: &Automaton, q: StateId, x: &UPWord) -> Result<UpAct> {
    let mut out = Vec::new();
    let mut q = q;
    for (i, &c) in x.prefix.iter().enumerate() {
        match a.transition(q, c)? {
            Some((b, p)) => {
                out.push(b);
                q = p;
            }
            None => return Ok(UpAct::Undefined { prefix_len: i + 1 }),
        }
    }
    let mut seen: HashMap<StateId, usize> = HashMap::new();
    let mut passes: Vec<Word> = Vec::new();
    loop {
        if let Some(&k) = seen.get(&q) {
            let mut prefix = out;
            for p in &passes[..k] {
                prefix.extend_from_slice(p);
            }
            let period: Word = passes[k..].concat();
            return Ok(UpAct::Defined(up_canonicalize(&prefix, &period)?));
        }
        seen.insert(q, passes.len());
        let mut pass = Vec::with_capacity(x.period.len());
        for (j, &c) in x.period.iter().enumerate() {
            match a.transition(q, c)? {
                Some((b, p)) => {
                    pass.push(b);
                    q = p;
                }
                None => {
                    let done = x.prefix.len() + passes.len() * x.period.len();
                    return Ok(UpAct::Undefined {
                        prefix_len: done + j + 1,
                    });
                }
            }
        }
        passes.push(pass);
    }
}

/// Image `s ∘ x` of an ultimately periodic word.
pub fn act_up(a: &Automaton, s: &StateSeq, x: &UPWord) -> Result<UpAct> {
    let mut current = x.clone();
    for (row, &q) in s.0.iter().enumerate() {
        match act_state_up(a, q, &current)? {
            UpAct::Defined(next) => current = next,
            UpAct::Undefined { prefix_len } => {
                // Later rows may fail even earlier on the defined part.
                let defined = current.take(prefix_len - 1);
                let rest = StateSeq(s.0[row..].to_vec());
                let shorter = shortest_undefined_prefix(a, &rest, &defined)?;
                return Ok(UpAct::Undefined {
                    prefix_len: shorter.unwrap_or(prefix_len),
                });
            }
        }
    }
    Ok(UpAct::Defined(current))
}

/// Length of the shortest prefix of `w` on which `s` is undefined.
pub fn shortest_undefined_prefix(a: &Automaton, s: &StateSeq, w: &[LetterId]) -> Result<Option<usize>> {
    let mut word = w.to_vec();
    let mut best = None;
    for &q0 in &s.0 {
        let mut q = q0;
        for i in 0..word.len() {
            match a.transition(q, word[i])? {
                Some((b, p)) => {
                    word[i] = b;
                    q = p;
                }
                None => {
                    best = Some(i + 1);
                    word.truncate(i);
                    break;
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: &[u32]) -> Word {
        v.iter().map(|&x| LetterId(x)).collect()
    }

    #[test]
    fn canonical_form_examples() {
        let x = up_canonicalize(&[], &l(&[0, 1, 0, 1])).unwrap();
        assert_eq!((x.prefix(), x.period()), (&[][..], &l(&[0, 1])[..]));
        let x = up_canonicalize(&l(&[1, 0]), &l(&[0])).unwrap();
        assert_eq!((x.prefix(), x.period()), (&l(&[1])[..], &l(&[0])[..]));
        let x = up_canonicalize(&l(&[3]), &l(&[0, 0])).unwrap();
        assert_eq!((x.prefix(), x.period()), (&l(&[3])[..], &l(&[0])[..]));
        assert!(up_canonicalize(&l(&[1]), &[]).is_err());
    }

    #[test]
    fn canonical_form_rotates_period() {
        // 0 (10)^ω = (01)^ω
        let x = up_canonicalize(&l(&[0]), &l(&[1, 0])).unwrap();
        assert_eq!((x.prefix(), x.period()), (&[][..], &l(&[0, 1])[..]));
    }
}

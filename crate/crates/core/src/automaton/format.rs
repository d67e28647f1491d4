//! Line-oriented text format.
//!
//! ```text
//! automaton adding-machine
//! alphabet 0 1
//! states q id
//! trans q 0 1 id
//! ```
//!
//! Lines whose first non-blank character is `#` are comments, and so is
//! anything after the last argument of an `automaton` or `trans` line when it
//! starts with `#`. Symbols themselves may contain `#`.

use std::str::FromStr;

use super::{Automaton, Symbols};
use crate::{Error, Result};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the text format.
pub fn parse(text: &str) -> Result<Automaton> {
    let mut name: Option<String> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut states: Option<Vec<String>> = None;
    let mut transitions: Vec<(usize, [String; 4])> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some(&keyword) = tokens.first() else {
            continue;
        };
        if keyword.starts_with('#') {
            continue;
        }
        let args = &tokens[1..];
        let fixed = |n: usize| -> Result<&[&str]> {
            if args.len() < n {
                return Err(err(line, format!("`{keyword}` expects {n} arguments")));
            }
            let (head, rest) = args.split_at(n);
            if let Some(extra) = rest.first() {
                if !extra.starts_with('#') {
                    return Err(err(line, format!("unexpected token `{extra}`")));
                }
            }
            Ok(head)
        };
        match keyword {
            "automaton" => {
                if name.is_some() {
                    return Err(err(line, "repeated `automaton` header"));
                }
                name = Some(fixed(1)?[0].to_string());
            }
            "alphabet" | "states" => {
                let slot = if keyword == "alphabet" {
                    &mut alphabet
                } else {
                    &mut states
                };
                if slot.is_some() {
                    return Err(err(line, format!("repeated `{keyword}` line")));
                }
                if args.is_empty() {
                    return Err(err(line, format!("`{keyword}` must not be empty")));
                }
                *slot = Some(args.iter().map(|s| s.to_string()).collect());
            }
            "trans" => {
                let a = fixed(4)?;
                transitions.push((
                    line,
                    [a[0].to_string(), a[1].to_string(), a[2].to_string(), a[3].to_string()],
                ));
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| err(0, "missing `automaton` header"))?;
    let alphabet = alphabet.ok_or_else(|| err(0, "missing `alphabet` line"))?;
    let states = states.ok_or_else(|| err(0, "missing `states` line"))?;
    let alphabet = Symbols::from_names(alphabet).map_err(|e| err(0, e.to_string()))?;
    let states = Symbols::from_names(states).map_err(|e| err(0, e.to_string()))?;

    let mut ts = Vec::with_capacity(transitions.len());
    let mut seen = std::collections::HashSet::new();
    for (line, [q, a, b, p]) in &transitions {
        let state = |n: &str| {
            states
                .get(n)
                .map(|i| super::StateId(i as u32))
                .ok_or_else(|| err(*line, format!("unknown state `{n}`")))
        };
        let letter = |n: &str| {
            alphabet
                .get(n)
                .map(|i| super::LetterId(i as u32))
                .ok_or_else(|| err(*line, format!("unknown letter `{n}`")))
        };
        let t = super::Transition {
            state: state(q)?,
            input: letter(a)?,
            output: letter(b)?,
            target: state(p)?,
        };
        if !seen.insert((t.state, t.input)) {
            return Err(err(*line, format!("duplicate transition for `{q}` on `{a}`")));
        }
        ts.push(t);
    }
    Automaton::from_parts(name, alphabet, states, ts)
}

impl FromStr for Automaton {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl Automaton {
    /// Serializes to the text format; transitions keep declaration order.
    pub fn to_text(&self) -> Result<String> {
        let view = self.finite("serialize")?;
        let mut out = format!("automaton {}\n", self.name);
        out.push_str("alphabet");
        for a in self.alphabet.iter() {
            out.push(' ');
            out.push_str(a);
        }
        out.push_str("\nstates");
        for q in view.state_names().iter() {
            out.push(' ');
            out.push_str(q);
        }
        out.push('\n');
        for t in view.transitions() {
            out.push_str(&format!(
                "trans {} {} {} {}\n",
                self.state_name(t.state),
                self.letter_name(t.input),
                self.letter_name(t.output),
                self.state_name(t.target)
            ));
        }
        Ok(out)
    }
}

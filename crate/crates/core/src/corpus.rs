//! Reference automata: explicit examples, parametric families given by
//! transition oracles, and seeded random generators.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Automaton, LetterId, OracleKey, StateId, Symbols, Transition, TransitionOracle};
use crate::{Error, Result};

/// Default number of distinct states an oracle automaton may explore.
pub const DEFAULT_ORACLE_BOUND: usize = 100_000;

/// Expected structural flags of an explicit corpus automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedProps {
    pub complete: bool,
    pub reversible: bool,
    pub invertible: bool,
    pub inverse_reversible: bool,
    pub bi_reversible: bool,
}

const fn props(complete: bool, reversible: bool, invertible: bool, inverse_reversible: bool) -> ExpectedProps {
    ExpectedProps {
        complete,
        reversible,
        invertible,
        inverse_reversible,
        bi_reversible: reversible && inverse_reversible,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Present for explicit automata.
    pub expected: Option<ExpectedProps>,
    text: Option<&'static str>,
}

const ADDING_MACHINE: &str = "\
automaton adding-machine
alphabet 0 1
states q id
trans q 0 1 id
trans q 1 0 q
trans id 0 0 id
trans id 1 1 id
";

const GRIGORCHUK: &str = "\
automaton grigorchuk
alphabet 0 1
states a b c d id
trans a 0 1 id
trans a 1 0 id
trans b 0 0 a
trans b 1 1 c
trans c 0 0 a
trans c 1 1 d
trans d 0 0 id
trans d 1 1 b
trans id 0 0 id
trans id 1 1 id
";

const GRIGORCHUK_DUAL: &str = "\
automaton grigorchuk-dual
alphabet a b c d id
states 0 1
trans 0 a id 1
trans 1 a id 0
trans 0 b a 0
trans 1 b c 1
trans 0 c a 0
trans 1 c d 1
trans 0 d id 0
trans 1 d b 1
trans 0 id id 0
trans 1 id id 1
";

const RIGHT_IDEAL: &str = "\
automaton right-ideal
alphabet a b
states q id p
trans q a a q
trans q b a id
trans id a a id
trans id b b id
trans p a a p
";

const T1: &str = "\
automaton t1
alphabet a b
states p q
trans q a b p
trans p a a q
trans p b b p
";

const LEFT_ZEROS: &str = "\
automaton left-zeros
alphabet a b
states q p
trans q a b p
trans q b b p
trans p a a q
trans p b a q
";

const MIXED: &str = "\
automaton mixed
alphabet 0 1 0' 1'
states p id q
trans p 0 1 id
trans p 1 0 p
trans p 0' 0' id
trans p 1' 1' id
trans q 0 0 q
trans q 1 1 q
trans q 0' 1' id
trans q 1' 0' q
trans id 0 0 id
trans id 1 1 id
trans id 0' 0' id
trans id 1' 1' id
";

const IDENTITY: &str = "\
automaton identity
alphabet 0 1
states id
trans id 0 0 id
trans id 1 1 id
";

const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "adding-machine",
        description: "binary odometer q: adds one to a reverse-binary word",
        expected: Some(props(true, false, true, false)),
        text: Some(ADDING_MACHINE),
    },
    CorpusEntry {
        name: "grigorchuk",
        description: "first Grigorchuk group generators a, b, c, d",
        expected: Some(props(true, false, true, false)),
        text: Some(GRIGORCHUK),
    },
    CorpusEntry {
        name: "grigorchuk-dual",
        description: "dual of the Grigorchuk automaton, generating a free semigroup",
        expected: Some(props(true, true, false, false)),
        text: Some(GRIGORCHUK_DUAL),
    },
    CorpusEntry {
        name: "right-ideal",
        description: "p q^i sends b^i to a^i while p q^j is undefined there for j < i",
        expected: Some(props(false, false, false, false)),
        text: Some(RIGHT_IDEAL),
    },
    CorpusEntry {
        name: "t1",
        description: "reversible invertible partial automaton generating a 7-element semigroup",
        expected: Some(props(false, true, true, false)),
        text: Some(T1),
    },
    CorpusEntry {
        name: "left-zeros",
        description: "complete reversible non-invertible automaton whose states are left zeros",
        expected: Some(props(true, true, false, false)),
        text: Some(LEFT_ZEROS),
    },
    CorpusEntry {
        name: "mixed",
        description: "invertible automaton with finite and infinite orbits on periodic words",
        expected: Some(props(true, false, true, false)),
        text: Some(MIXED),
    },
    CorpusEntry {
        name: "identity",
        description: "single identity state over {0,1}",
        expected: Some(props(true, true, true, true)),
        text: Some(IDENTITY),
    },
    CorpusEntry {
        name: "fig2",
        description: "q_0 swaps 0 and 1, q_i passes 2 to q_{i-1}; orbits of finite words have size at most 2",
        expected: None,
        text: None,
    },
    CorpusEntry {
        name: "bartholdi",
        description: "states q[i,j]; q[i,1..i^2] act transitively on level-i^2 words of a fixed shape",
        expected: None,
        text: None,
    },
    CorpusEntry {
        name: "q0family",
        description: "q[i] reads 0^n 1 and continues as the adder p[n] on the next n letters",
        expected: None,
        text: None,
    },
];

pub fn corpus_list() -> &'static [CorpusEntry] {
    ENTRIES
}

/// Names of the explicitly enumerated corpus automata.
pub fn finite_names() -> Vec<&'static str> {
    ENTRIES.iter().filter(|e| e.text.is_some()).map(|e| e.name).collect()
}

pub fn corpus_get(name: &str) -> Result<Automaton> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Precondition(format!("no corpus automaton named `{name}`")))?;
    match entry.text {
        Some(text) => text.parse(),
        None => oracle_get(name, DEFAULT_ORACLE_BOUND),
    }
}

/// Oracle-backed family exploring at most `bound` distinct states.
pub fn oracle_get(name: &str, bound: usize) -> Result<Automaton> {
    if !matches!(name, "fig2" | "bartholdi" | "q0family") {
        return Err(Error::Precondition(format!("no oracle family named `{name}`")));
    }
    let letters: &[&str] = if name == "q0family" { &["0", "1"] } else { &["0", "1", "2"] };
    let oracle: Arc<dyn TransitionOracle> = match name {
        "fig2" => Arc::new(Fig2),
        "bartholdi" => Arc::new(Bartholdi),
        _ => Arc::new(Q0Family),
    };
    Automaton::from_oracle(name, Symbols::from_names(letters.iter().copied())?, oracle, bound)
}

fn id() -> OracleKey {
    OracleKey::plain("id")
}

fn is_id(k: &OracleKey) -> bool {
    k.kind == "id" && k.index.is_empty()
}

const L0: LetterId = LetterId(0);
const L1: LetterId = LetterId(1);
const L2: LetterId = LetterId(2);

/// `q[0]` swaps 0 and 1 and becomes the identity; `q[i]` fixes 0 and 1
/// (becoming the identity) and passes 2 on to `q[i-1]`.
#[derive(Debug)]
struct Fig2;

impl TransitionOracle for Fig2 {
    fn family(&self) -> &str {
        "fig2"
    }

    fn is_state(&self, k: &OracleKey) -> bool {
        is_id(k) || (k.kind == "q" && k.index.len() == 1)
    }

    fn transition(&self, k: &OracleKey, a: LetterId) -> Option<(LetterId, OracleKey)> {
        if is_id(k) {
            return Some((a, id()));
        }
        let i = k.index[0];
        Some(match (i, a) {
            (0, L0) => (L1, id()),
            (0, L1) => (L0, id()),
            (0, _) => (L2, id()),
            (_, L2) => (L2, OracleKey::new("q", &[i - 1])),
            _ => (a, id()),
        })
    }
}

/// `q[i,j]` for `1 <= j <= i^2`, with `q[i,0]` the identity. When
/// `j ≡ 1 (mod i)` the state swaps 0 and 1 moving to `q[i,j-1]` and fixes 2
/// moving to the identity; otherwise it fixes 0 and 1 moving to the identity
/// and fixes 2 moving to `q[i,j-1]`.
#[derive(Debug)]
struct Bartholdi;

impl Bartholdi {
    fn step(i: u64, j: u64) -> OracleKey {
        if j <= 1 {
            id()
        } else {
            OracleKey::new("q", &[i, j - 1])
        }
    }
}

impl TransitionOracle for Bartholdi {
    fn family(&self) -> &str {
        "bartholdi"
    }

    fn is_state(&self, k: &OracleKey) -> bool {
        is_id(k) || (k.kind == "q" && k.index.len() == 2 && k.index[0] >= 1 && (1..=k.index[0] * k.index[0]).contains(&k.index[1]))
    }

    fn transition(&self, k: &OracleKey, a: LetterId) -> Option<(LetterId, OracleKey)> {
        if is_id(k) {
            return Some((a, id()));
        }
        let (i, j) = (k.index[0], k.index[1]);
        let marked = j % i == 1 % i;
        Some(match (marked, a) {
            (true, L0) => (L1, Self::step(i, j)),
            (true, L1) => (L0, Self::step(i, j)),
            (true, _) => (L2, id()),
            (false, L2) => (L2, Self::step(i, j)),
            (false, _) => (a, id()),
        })
    }
}

/// `q[i]` reads 0 as `q[i+1]` and 1 as `p[i]`; `p[n]` adds one modulo `2^n`
/// to the next `n` letters (`p[0]` is the identity). `qinv`/`pinv` are the
/// inverses.
#[derive(Debug)]
struct Q0Family;

impl Q0Family {
    fn p(kind: &str, n: u64) -> OracleKey {
        if n == 0 {
            id()
        } else {
            OracleKey::new(kind, &[n])
        }
    }
}

impl TransitionOracle for Q0Family {
    fn family(&self) -> &str {
        "q0family"
    }

    fn is_state(&self, k: &OracleKey) -> bool {
        if is_id(k) {
            return true;
        }
        k.index.len() == 1
            && match k.kind.as_str() {
                "q" | "qinv" => true,
                "p" | "pinv" => k.index[0] >= 1,
                _ => false,
            }
    }

    fn transition(&self, k: &OracleKey, a: LetterId) -> Option<(LetterId, OracleKey)> {
        if is_id(k) {
            return Some((a, id()));
        }
        let n = k.index[0];
        Some(match (k.kind.as_str(), a) {
            ("q", L0) => (L0, OracleKey::new("q", &[n + 1])),
            ("q", _) => (L1, Self::p("p", n)),
            ("qinv", L0) => (L0, OracleKey::new("qinv", &[n + 1])),
            ("qinv", _) => (L1, Self::p("pinv", n)),
            ("p", L0) => (L1, id()),
            ("p", _) => (L0, Self::p("p", n - 1)),
            ("pinv", L1) => (L0, id()),
            (_, _) => (L1, Self::p("pinv", n - 1)),
        })
    }
}

fn names(prefix: &str, n: usize) -> Symbols {
    Symbols::from_names((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct names")
}

/// Random partial automaton: each transition is present with probability
/// `density`, with uniform output and target.
pub fn random_automaton(seed: u64, states: usize, letters: usize, density: f64) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts = Vec::new();
    for q in 0..states {
        for a in 0..letters {
            if rng.random_bool(density) {
                ts.push(Transition {
                    state: StateId(q as u32),
                    input: LetterId(a as u32),
                    output: LetterId(rng.random_range(0..letters) as u32),
                    target: StateId(rng.random_range(0..states) as u32),
                });
            }
        }
    }
    Automaton::from_parts(format!("random-{seed}"), names("", letters), names("s", states), ts)
        .expect("generated automaton is well formed")
}

/// Random complete invertible automaton: every state permutes the letters.
pub fn random_g_automaton(seed: u64, states: usize, letters: usize) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts = Vec::new();
    for q in 0..states {
        let mut perm: Vec<usize> = (0..letters).collect();
        perm.shuffle(&mut rng);
        for a in 0..letters {
            ts.push(Transition {
                state: StateId(q as u32),
                input: LetterId(a as u32),
                output: LetterId(perm[a] as u32),
                target: StateId(rng.random_range(0..states) as u32),
            });
        }
    }
    Automaton::from_parts(format!("random-g-{seed}"), names("", letters), names("s", states), ts)
        .expect("generated automaton is well formed")
}

/// Random complete, invertible and reversible automaton: states permute the
/// letters and every letter permutes the states.
pub fn random_reversible_g_automaton(seed: u64, states: usize, letters: usize) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = |n: usize, count: usize, rng: &mut ChaCha8Rng| -> Vec<Vec<usize>> {
        (0..count)
            .map(|_| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(rng);
                p
            })
            .collect()
    };
    let outputs = perms(letters, states, &mut rng);
    let targets = perms(states, letters, &mut rng);
    let mut ts = Vec::new();
    for q in 0..states {
        for a in 0..letters {
            ts.push(Transition {
                state: StateId(q as u32),
                input: LetterId(a as u32),
                output: LetterId(outputs[q][a] as u32),
                target: StateId(targets[a][q] as u32),
            });
        }
    }
    Automaton::from_parts(format!("random-rev-{seed}"), names("", letters), names("s", states), ts)
        .expect("generated automaton is well formed")
}

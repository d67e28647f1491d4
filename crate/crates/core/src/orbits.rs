//! Orbits of finite and ultimately periodic words under generated languages.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::action::{act_finite, act_up, Act, StateSeq, UPWord, UpAct};
use crate::automaton::{Automaton, LetterId, StateId, Word};
use crate::{Error, Result};

/// Language of state sequences acting on words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenLang {
    /// All sequences over the state set.
    FullStar,
    /// All concatenations of the given blocks (application order).
    FStar(Vec<StateSeq>),
    /// The empty sequence and every sequence applying `p` first.
    PrincipalLeftIdeal(StateSeq),
}

impl GenLang {
    /// Blocks generating the language. For a principal left ideal the first
    /// block is `p` and the others are the single states.
    pub fn blocks(&self, a: &Automaton) -> Result<Vec<StateSeq>> {
        let mut out: Vec<StateSeq> = Vec::new();
        let mut push = |b: StateSeq| {
            if !out.contains(&b) {
                out.push(b);
            }
        };
        match self {
            GenLang::FullStar => {
                let view = a.finite("full state language")?;
                view.states().for_each(|q| push(StateSeq::single(q)));
            }
            GenLang::FStar(blocks) => blocks.iter().cloned().for_each(&mut push),
            GenLang::PrincipalLeftIdeal(p) => {
                push(p.clone());
                let view = a.finite("principal left ideal")?;
                view.states().for_each(|q| push(StateSeq::single(q)));
            }
        }
        Ok(out)
    }

    /// Whether the first block applied must be block 0.
    fn needs_lead(&self) -> bool {
        matches!(self, GenLang::PrincipalLeftIdeal(_))
    }
}

/// Edge `(v, f) -> (f · v, f ∘ v)` of an orbital transducer.
pub type OrbitEdge = Option<(StateSeq, usize)>;

/// Orbit of a word as a transducer: nodes are orbit words, edges are labelled
/// by generating blocks and output the residual sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalTransducer {
    blocks: Vec<StateSeq>,
    nodes: Vec<Word>,
    edges: Vec<Vec<OrbitEdge>>,
}

/// Isomorphism-invariant form of an orbital transducer.
pub type TransducerKey = Vec<Vec<Option<(StateSeq, u32)>>>;

impl OrbitalTransducer {
    pub fn blocks(&self) -> &[StateSeq] {
        &self.blocks
    }

    /// Orbit words in discovery order; node 0 is the root.
    pub fn nodes(&self) -> &[Word] {
        &self.nodes
    }

    pub fn root(&self) -> &Word {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge(&self, node: usize, block: usize) -> &OrbitEdge {
        &self.edges[node][block]
    }

    pub fn index_of(&self, w: &[LetterId]) -> Option<usize> {
        self.nodes.iter().position(|n| n == w)
    }

    /// Renumbers nodes in breadth-first order from the root.
    pub fn canonical_key(&self) -> TransducerKey {
        let mut number = vec![u32::MAX; self.nodes.len()];
        let mut order = vec![0usize];
        number[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for (_, t) in self.edges[v].iter().flatten() {
                if number[*t] == u32::MAX {
                    number[*t] = order.len() as u32;
                    order.push(*t);
                }
            }
        }
        order
            .iter()
            .map(|&v| {
                self.edges[v]
                    .iter()
                    .map(|e| e.as_ref().map(|(r, t)| (r.clone(), number[*t])))
                    .collect()
            })
            .collect()
    }
}

/// Orbit `L ∘ u` with its transducer.
pub fn orbit_word(a: &Automaton, lang: &GenLang, u: &[LetterId]) -> Result<OrbitalTransducer> {
    let blocks = lang.blocks(a)?;
    let mut nodes = vec![u.to_vec()];
    let mut index: HashMap<Word, usize> = HashMap::from([(u.to_vec(), 0)]);
    let mut open = vec![!lang.needs_lead()];
    let mut edges: Vec<Vec<OrbitEdge>> = vec![vec![None; blocks.len()]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (f, block) in blocks.iter().enumerate() {
            if !open[v] && f != 0 {
                continue;
            }
            if edges[v][f].is_some() {
                continue;
            }
            let Act::Defined(r) = act_finite(a, block, &nodes[v])? else {
                continue;
            };
            let t = match index.get(&r.output) {
                Some(&t) => {
                    if !open[t] {
                        open[t] = true;
                        queue.push_back(t);
                    }
                    t
                }
                None => {
                    let t = nodes.len();
                    index.insert(r.output.clone(), t);
                    nodes.push(r.output);
                    open.push(true);
                    edges.push(vec![None; blocks.len()]);
                    queue.push_back(t);
                    t
                }
            };
            edges[v][f] = Some((r.residual, t));
        }
    }
    Ok(OrbitalTransducer { blocks, nodes, edges })
}

/// Why two orbital transducers differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// One side has an edge the other lacks.
    EdgePresence,
    /// Both have the edge but with different residuals.
    Output,
    /// The edge targets cannot be matched consistently.
    Structure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// Node correspondence `(left, right)`.
    Iso(Vec<(usize, usize)>),
    /// Shortest block path from the roots exposing a difference.
    NotIso { path: Vec<usize>, mismatch: Mismatch },
}

/// Root-preserving isomorphism test by synchronized breadth-first search.
pub fn orbital_transducer_iso(o1: &OrbitalTransducer, o2: &OrbitalTransducer) -> Result<IsoResult> {
    if o1.blocks != o2.blocks {
        return Err(Error::Precondition("transducers over different generating blocks".into()));
    }
    let mut left = vec![None; o1.len()];
    let mut right = vec![None; o2.len()];
    left[0] = Some(0);
    right[0] = Some(0);
    let mut queue = VecDeque::from([(0usize, 0usize, Vec::<usize>::new())]);
    while let Some((v1, v2, path)) = queue.pop_front() {
        for f in 0..o1.blocks.len() {
            let mut here = path.clone();
            here.push(f);
            let fail = |mismatch| Ok(IsoResult::NotIso { path: here.clone(), mismatch });
            match (&o1.edges[v1][f], &o2.edges[v2][f]) {
                (None, None) => {}
                (Some(_), None) | (None, Some(_)) => return fail(Mismatch::EdgePresence),
                (Some((r1, t1)), Some((r2, t2))) => {
                    if r1 != r2 {
                        return fail(Mismatch::Output);
                    }
                    match (left[*t1], right[*t2]) {
                        (None, None) => {
                            left[*t1] = Some(*t2);
                            right[*t2] = Some(*t1);
                            queue.push_back((*t1, *t2, here.clone()));
                        }
                        (Some(x), Some(y)) if x == *t2 && y == *t1 => {}
                        _ => return fail(Mismatch::Structure),
                    }
                }
            }
        }
    }
    if o1.len() != o2.len() {
        return Err(Error::Internal("orbit nodes unreachable from the root".into()));
    }
    Ok(IsoResult::Iso(
        left.iter().enumerate().map(|(i, j)| (i, j.unwrap())).collect(),
    ))
}

/// Outcome of searching for an orbit-enlarging extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `|L ∘ ux| > |L ∘ u|`.
    Found { x: Word, size_before: usize, size_after: usize },
    /// No extension up to the length budget. `exhausted` is false when the
    /// node budget stopped the search first.
    NotFoundWithinBudget { exhausted: bool },
}

/// Default number of candidate extensions examined by [`extend_orbit`].
pub const DEFAULT_EXTENSION_NODES: usize = 1_000_000;

/// Shortest (then lexicographically least) `x` with `|x| <= budget` and
/// `|L ∘ ux| > |L ∘ u|`. Extensions whose orbital transducer is isomorphic to
/// one seen earlier are pruned.
pub fn extend_orbit(a: &Automaton, lang: &GenLang, u: &[LetterId], budget: usize) -> Result<Extension> {
    extend_orbit_bounded(a, lang, u, budget, DEFAULT_EXTENSION_NODES)
}

pub fn extend_orbit_bounded(
    a: &Automaton,
    lang: &GenLang,
    u: &[LetterId],
    budget: usize,
    max_nodes: usize,
) -> Result<Extension> {
    let base = orbit_word(a, lang, u)?;
    let size_before = base.len();
    let mut seen: HashSet<TransducerKey> = HashSet::from([base.canonical_key()]);
    let mut level: Vec<Word> = vec![Vec::new()];
    let mut examined = 0usize;
    for _ in 0..budget {
        let mut next = Vec::new();
        for x in &level {
            for c in a.letters() {
                examined += 1;
                if examined > max_nodes {
                    return Ok(Extension::NotFoundWithinBudget { exhausted: false });
                }
                let mut y = x.clone();
                y.push(c);
                let mut w = u.to_vec();
                w.extend_from_slice(&y);
                let o = orbit_word(a, lang, &w)?;
                if o.len() > size_before {
                    return Ok(Extension::Found {
                        x: y,
                        size_before,
                        size_after: o.len(),
                    });
                }
                if seen.insert(o.canonical_key()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok(Extension::NotFoundWithinBudget { exhausted: true })
}

/// Chain of words with strictly growing orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCertificate {
    /// `(u_i, |L ∘ u_i|)`; each word extends the previous one.
    pub chain: Vec<(Word, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Certificate(GrowthCertificate),
    /// No extension of `at` enlarges the orbit within the budget.
    Stalled { at: Word, chain: Vec<(Word, usize)> },
}

/// Grows an orbit from the empty word by repeated [`extend_orbit`] until its
/// size reaches `target`.
pub fn witness_search(a: &Automaton, lang: &GenLang, target: usize, budget: usize) -> Result<WitnessOutcome> {
    let mut current: Word = Vec::new();
    let mut chain = vec![(Vec::new(), orbit_word(a, lang, &[])?.len())];
    loop {
        let size = chain.last().unwrap().1;
        if size >= target {
            return Ok(WitnessOutcome::Certificate(GrowthCertificate { chain }));
        }
        match extend_orbit(a, lang, &current, budget)? {
            Extension::Found { x, size_after, .. } => {
                current.extend_from_slice(&x);
                chain.push((current.clone(), size_after));
            }
            Extension::NotFoundWithinBudget { .. } => {
                return Ok(WitnessOutcome::Stalled { at: current, chain })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpOrbit {
    /// Complete orbit in discovery order, starting with the input word.
    Finite(Vec<UPWord>),
    /// More than `node_budget` words were discovered.
    ExceededBudget { discovered: usize },
}

/// Orbit `L ∘ x` of an ultimately periodic word, explored breadth first.
pub fn orbit_up(a: &Automaton, lang: &GenLang, x: &UPWord, node_budget: usize) -> Result<UpOrbit> {
    let blocks = lang.blocks(a)?;
    let mut nodes = vec![x.clone()];
    let mut index: HashMap<UPWord, usize> = HashMap::from([(x.clone(), 0)]);
    let mut open = vec![!lang.needs_lead()];
    let mut done: Vec<Vec<bool>> = vec![vec![false; blocks.len()]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (f, block) in blocks.iter().enumerate() {
            if (!open[v] && f != 0) || done[v][f] {
                continue;
            }
            done[v][f] = true;
            let UpAct::Defined(y) = act_up(a, block, &nodes[v])? else {
                continue;
            };
            match index.get(&y) {
                Some(&t) => {
                    if !open[t] {
                        open[t] = true;
                        queue.push_back(t);
                    }
                }
                None => {
                    if nodes.len() >= node_budget {
                        return Ok(UpOrbit::ExceededBudget {
                            discovered: nodes.len() + 1,
                        });
                    }
                    index.insert(y.clone(), nodes.len());
                    nodes.push(y);
                    open.push(true);
                    done.push(vec![false; blocks.len()]);
                    queue.push_back(nodes.len() - 1);
                }
            }
        }
    }
    Ok(UpOrbit::Finite(nodes))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpCertificate {
    /// `|Q* ∘ x[0, prefix_len)| = size`, a lower bound on `|Q* ∘ x|`.
    Certified { prefix_len: usize, size: usize },
    Unknown { best_prefix_len: usize, best_size: usize },
}

/// Certifies `|Q* ∘ x| >= size_target` through the orbits of prefixes, which
/// bound the orbit of `x` from below when the automaton is complete.
pub fn certify_infinite_up(
    a: &Automaton,
    x: &UPWord,
    size_target: usize,
    prefix_budget: usize,
) -> Result<UpCertificate> {
    if !a.classify()?.complete {
        return Err(Error::Precondition("prefix orbits bound the orbit only for complete automata".into()));
    }
    let mut best = (0, 1);
    for k in 0..=prefix_budget {
        let size = orbit_word(a, &GenLang::FullStar, &x.take(k))?.len();
        if size >= size_target {
            return Ok(UpCertificate::Certified { prefix_len: k, size });
        }
        if size > best.1 {
            best = (k, size);
        }
    }
    Ok(UpCertificate::Unknown {
        best_prefix_len: best.0,
        best_size: best.1,
    })
}

/// Simple path in an orbital graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPath {
    /// Pairwise distinct words, starting at the root.
    pub nodes: Vec<Word>,
    /// Block index of each edge.
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathOutcome {
    Found(OrbitPath),
    NotFound,
    ExceededBudget,
}

/// Depth-first search for a simple path with `length` edges from `u` in the
/// orbital graph of `L ∘ u`, examining at most `step_budget` edges.
pub fn orbit_path_search(
    a: &Automaton,
    lang: &GenLang,
    u: &[LetterId],
    length: usize,
    step_budget: usize,
) -> Result<PathOutcome> {
    let o = orbit_word(a, lang, u)?;
    Ok(path_in_transducer(&o, lang.needs_lead(), length, step_budget))
}

pub(crate) fn path_in_transducer(
    o: &OrbitalTransducer,
    needs_lead: bool,
    length: usize,
    step_budget: usize,
) -> PathOutcome {
    if o.len() < length + 1 {
        return PathOutcome::NotFound;
    }
    struct Search<'a> {
        o: &'a OrbitalTransducer,
        on_path: Vec<bool>,
        nodes: Vec<usize>,
        labels: Vec<usize>,
        steps: usize,
        budget: usize,
        length: usize,
    }
    impl Search<'_> {
        // Some(true) found, Some(false) exhausted, None out of budget.
        fn go(&mut self, v: usize, started: bool) -> Option<bool> {
            if self.labels.len() == self.length {
                return Some(true);
            }
            for f in 0..self.o.blocks.len() {
                if !started && f != 0 {
                    continue;
                }
                let Some((_, t)) = self.o.edges[v][f] else {
                    continue;
                };
                self.steps += 1;
                if self.steps > self.budget {
                    return None;
                }
                if self.on_path[t] {
                    continue;
                }
                self.on_path[t] = true;
                self.nodes.push(t);
                self.labels.push(f);
                if self.go(t, true)? {
                    return Some(true);
                }
                self.labels.pop();
                self.nodes.pop();
                self.on_path[t] = false;
            }
            Some(false)
        }
    }
    let mut s = Search {
        o,
        on_path: vec![false; o.len()],
        nodes: vec![0],
        labels: Vec::new(),
        steps: 0,
        budget: step_budget,
        length,
    };
    s.on_path[0] = true;
    match s.go(0, !needs_lead) {
        Some(true) => PathOutcome::Found(OrbitPath {
            nodes: s.nodes.iter().map(|&v| o.nodes[v].clone()).collect(),
            labels: s.labels,
        }),
        Some(false) => PathOutcome::NotFound,
        None => PathOutcome::ExceededBudget,
    }
}

/// Single states as blocks, in index order.
pub fn state_blocks(states: &[StateId]) -> Vec<StateSeq> {
    states.iter().map(|&q| StateSeq::single(q)).collect()
}

//! Element equality, ball enumeration, torsion and order.

mod canon;

use std::collections::HashMap;

pub use canon::ElementCanon;

use crate::action::{act_finite, Act, StateSeq, UPWord};
use crate::automaton::{Automaton, FiniteView, LetterId, StateId, Word};
use crate::orbits::{certify_infinite_up, orbit_up, GenLang, UpCertificate, UpOrbit};
use crate::{Error, Result};

/// Caches the canons of single states.
pub struct Canonizer<'a> {
    view: FiniteView<'a>,
    singles: Vec<Option<ElementCanon>>,
}

impl<'a> Canonizer<'a> {
    pub fn new(a: &'a Automaton) -> Result<Self> {
        let view = a.finite("element canon")?;
        Ok(Self {
            singles: vec![None; view.num_states()],
            view,
        })
    }

    pub fn state(&mut self, q: StateId) -> Result<&ElementCanon> {
        if q.index() >= self.singles.len() {
            return Err(Error::UnknownState(format!("#{}", q.0)));
        }
        if self.singles[q.index()].is_none() {
            self.singles[q.index()] = Some(ElementCanon::of_state(&self.view, q));
        }
        Ok(self.singles[q.index()].as_ref().unwrap())
    }

    pub fn canon(&mut self, s: &StateSeq) -> Result<ElementCanon> {
        Ok(self.canon_bounded(s, usize::MAX)?.expect("unbounded canon"))
    }

    /// Like [`Canonizer::canon`], but gives up once an intermediate canon
    /// has more than `limit` states.
    pub fn canon_bounded(&mut self, s: &StateSeq, limit: usize) -> Result<Option<ElementCanon>> {
        let mut acc = ElementCanon::identity(self.view.num_letters());
        for (i, &q) in s.as_slice().iter().enumerate() {
            let c = self.state(q)?;
            acc = if i == 0 { c.clone() } else { acc.then(c) };
            if acc.size() > limit {
                return Ok(None);
            }
        }
        Ok(Some(acc))
    }

    pub fn identity(&self) -> ElementCanon {
        ElementCanon::identity(self.view.num_letters())
    }
}

/// Canonical form of the partial function induced by `s`.
pub fn element_canon(a: &Automaton, s: &StateSeq) -> Result<ElementCanon> {
    Canonizer::new(a)?.canon(s)
}

pub fn elements_equal(a: &Automaton, s1: &StateSeq, s2: &StateSeq) -> Result<bool> {
    let mut c = Canonizer::new(a)?;
    Ok(c.canon(s1)? == c.canon(s2)?)
}

/// Element of a ball: shortest representative first found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallElement {
    pub rep: StateSeq,
    pub canon: ElementCanon,
    /// Generator-word length of `rep`.
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    /// Closed under multiplication by every generator.
    FiniteWithOrder(usize),
    NotClosedAtBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessReport {
    pub verdict: Finiteness,
    /// New elements first reached at generator length 1, 2, ...
    pub sphere_sizes: Vec<usize>,
    /// Elements of length at most 1, 2, ...
    pub ball_sizes: Vec<usize>,
    pub elements: Vec<BallElement>,
}

/// Breadth-first enumeration of the semigroup generated by `gens`, where the
/// product `g ∘ x` applies `x` first. Words up to `max_len` are kept; one
/// further level is probed to detect closure.
pub fn enumerate_ball(a: &Automaton, gens: &[StateSeq], max_len: usize, max_elems: usize) -> Result<FinitenessReport> {
    let mut c = Canonizer::new(a)?;
    let gen_canons: Vec<ElementCanon> = gens.iter().map(|g| c.canon(g)).collect::<Result<_>>()?;
    let mut elements: Vec<BallElement> = Vec::new();
    let mut index: HashMap<ElementCanon, usize> = HashMap::new();
    let report = |elements: Vec<BallElement>, verdict, spheres: Vec<usize>| {
        let ball_sizes = spheres
            .iter()
            .scan(0, |acc, s| {
                *acc += s;
                Some(*acc)
            })
            .collect();
        FinitenessReport {
            verdict,
            sphere_sizes: spheres,
            ball_sizes,
            elements,
        }
    };
    if gens.is_empty() {
        return Ok(report(elements, Finiteness::FiniteWithOrder(0), Vec::new()));
    }
    if max_len == 0 {
        return Ok(report(elements, Finiteness::NotClosedAtBudget, Vec::new()));
    }
    let mut level = Vec::new();
    for (g, canon) in gens.iter().zip(&gen_canons) {
        if !index.contains_key(canon) {
            index.insert(canon.clone(), elements.len());
            level.push(elements.len());
            elements.push(BallElement {
                rep: g.clone(),
                canon: canon.clone(),
                length: 1,
            });
        }
    }
    let mut spheres = vec![level.len()];
    for len in 2..=max_len + 1 {
        let mut next = Vec::new();
        for &x in &level {
            for (g, gc) in gens.iter().zip(&gen_canons) {
                let canon = elements[x].canon.then(gc);
                if index.contains_key(&canon) {
                    continue;
                }
                if len > max_len || elements.len() >= max_elems {
                    return Ok(report(elements, Finiteness::NotClosedAtBudget, spheres));
                }
                index.insert(canon.clone(), elements.len());
                next.push(elements.len());
                elements.push(BallElement {
                    rep: elements[x].rep.then(g),
                    canon,
                    length: len,
                });
            }
        }
        if next.is_empty() {
            let n = elements.len();
            return Ok(report(elements, Finiteness::FiniteWithOrder(n), spheres));
        }
        spheres.push(next.len());
        level = next;
    }
    unreachable!("the closure probe at max_len + 1 always returns")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionVerdict {
    /// `s^i = s^j` with `i < j` minimal.
    Torsion { i: usize, j: usize },
    TorsionFreeCertified(TorsionFreeCertificate),
    Unknown { budget_spent: usize },
}

/// Evidence that `s` has infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFreeCertificate {
    /// Orbit of `s^ω` under the dual reached `dual_orbit_size` through a
    /// prefix of length `prefix_len`.
    pub prefix_len: usize,
    pub dual_orbit_size: usize,
    /// `s^period` fixes `word`, no smaller positive power does, and the
    /// section of `s^period` at `word` equals `s^section_exponent`, which
    /// `period` does not divide.
    pub word: Word,
    pub period: usize,
    pub section_exponent: usize,
}

/// Largest canon (in states) built for a power before giving up.
pub const CANON_SIZE_LIMIT: usize = 1 << 11;

/// Smallest `i < j <= max_exponent` with `s^i = s^j`. Powers whose canon
/// exceeds [`CANON_SIZE_LIMIT`] end the search with `Unknown`.
pub fn torsion_check(a: &Automaton, s: &StateSeq, max_exponent: usize) -> Result<TorsionVerdict> {
    let mut c = Canonizer::new(a)?;
    let base = c.canon(s)?;
    let mut seen: HashMap<ElementCanon, usize> = HashMap::new();
    let mut power = base.clone();
    for k in 1..=max_exponent {
        if k > 1 {
            power = power.then(&base);
            if power.size() > CANON_SIZE_LIMIT {
                return Ok(TorsionVerdict::Unknown { budget_spent: k - 1 });
            }
        }
        if let Some(&i) = seen.get(&power) {
            return Ok(TorsionVerdict::Torsion { i, j: k });
        }
        seen.insert(power.clone(), k);
    }
    Ok(TorsionVerdict::Unknown {
        budget_spent: max_exponent,
    })
}

/// Longest prefix examined when certifying dual orbit growth.
pub const DUAL_PREFIX_BUDGET: usize = 16;
/// Longest word tried as a section-cycle witness.
pub const CYCLE_WORD_LEN: usize = 6;
/// Largest power compared against a section.
pub const CYCLE_MAX_EXPONENT: usize = 64;
const CONFIG_STEPS: usize = 100_000;
/// Longest probe word used to screen section candidates before comparing canons.
const PROBE_LEN: usize = 5;

/// Torsion through the orbit of `s^ω` under the dual automaton. A finite
/// orbit yields a pair of equal powers, which is re-checked on canons and
/// then minimized. An orbit reaching `size_target` together with a section
/// cycle (complete invertible automata only) certifies infinite order.
pub fn torsion_check_dual(a: &Automaton, s: &StateSeq, node_budget: usize, size_target: usize) -> Result<TorsionVerdict> {
    if s.is_empty() {
        return Ok(TorsionVerdict::Torsion { i: 1, j: 2 });
    }
    let dual = a.dual()?;
    let letters: Word = s.as_slice().iter().map(|q| LetterId(q.0)).collect();
    let x = UPWord::periodic(&letters)?;
    match orbit_up(&dual, &GenLang::FullStar, &x, node_budget)? {
        UpOrbit::Finite(orbit) => {
            let (i, j) = equal_powers_from_orbit(&dual, &orbit, s.len())
                .ok_or_else(|| Error::Internal("finite dual orbit without a repeating configuration".into()))?;
            if !elements_equal(a, &s.pow(i), &s.pow(j))? {
                return Err(Error::Internal(format!("dual orbit predicted s^{i} = s^{j}, canons differ")));
            }
            match torsion_check(a, s, j)? {
                t @ TorsionVerdict::Torsion { .. } => Ok(t),
                _ => Err(Error::Internal("canon route missed a verified torsion pair".into())),
            }
        }
        UpOrbit::ExceededBudget { discovered } => {
            let report = a.classify()?;
            if !(report.complete && report.invertible) {
                return Ok(TorsionVerdict::Unknown { budget_spent: discovered });
            }
            let UpCertificate::Certified { prefix_len, size } =
                certify_infinite_up(&dual, &x, size_target, DUAL_PREFIX_BUDGET)?
            else {
                return Ok(TorsionVerdict::Unknown { budget_spent: discovered });
            };
            match section_cycle(a, s, CYCLE_WORD_LEN, CYCLE_MAX_EXPONENT)? {
                Some((word, period, section_exponent)) => {
                    Ok(TorsionVerdict::TorsionFreeCertified(TorsionFreeCertificate {
                        prefix_len,
                        dual_orbit_size: size,
                        word,
                        period,
                        section_exponent,
                    }))
                }
                None => Ok(TorsionVerdict::Unknown { budget_spent: discovered }),
            }
        }
    }
}

/// Given the finite dual orbit `{ψ_i}` of `s^ω` (with `ψ_0 = s^ω`), finds
/// `i < j` with `s^i = s^j` by tracking where every letter ends up after
/// reading each prefix of each `ψ_i`.
fn equal_powers_from_orbit(dual: &Automaton, orbit: &[UPWord], s_len: usize) -> Option<(usize, usize)> {
    let letters: Vec<StateId> = (0..dual.num_states()? as u32).map(StateId).collect();
    let lcm = |a: usize, b: usize| {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        a / x * b
    };
    let pre = orbit.iter().map(|w| w.prefix().len()).max().unwrap_or(0);
    let step = orbit.iter().fold(s_len, |acc, w| lcm(acc, w.period().len()));
    let start = pre.div_ceil(s_len).max(1) * s_len;

    let mut config: Vec<Option<StateId>> = orbit
        .iter()
        .flat_map(|_| letters.iter().map(|&l| Some(l)))
        .collect();
    let advance = |config: &mut Vec<Option<StateId>>, from: usize, to: usize| {
        for (i, w) in orbit.iter().enumerate() {
            for k in 0..letters.len() {
                let cell = &mut config[i * letters.len() + k];
                for pos in from..to {
                    let Some(b) = *cell else { break };
                    *cell = dual.transition(b, w.letter_at(pos)).ok().flatten().map(|(_, p)| p);
                }
            }
        }
    };
    advance(&mut config, 0, start);
    let mut seen: HashMap<Vec<Option<StateId>>, usize> = HashMap::new();
    let mut ell = start;
    for _ in 0..CONFIG_STEPS {
        if let Some(&earlier) = seen.get(&config) {
            return Some((earlier / s_len, ell / s_len));
        }
        seen.insert(config.clone(), ell);
        advance(&mut config, ell, ell + step);
        ell += step;
    }
    None
}

/// Searches for a word `w` whose orbit under `s` has length `m >= 2` and whose
/// section `s^m · w` equals `s^t` with `m ∤ t`. In a group this rules out
/// finite order: `s^K = 1` forces `m | K` and then `s^{tK/m} = 1`.
pub fn section_cycle(a: &Automaton, s: &StateSeq, max_word_len: usize, max_exponent: usize) -> Result<Option<(Word, usize, usize)>> {
    let mut c = Canonizer::new(a)?;
    let n = a.num_letters();
    let words_of = |len: usize| -> Vec<Word> {
        let total = n.checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total)
            .map(|code| {
                let mut w = Vec::with_capacity(len);
                let mut r = code;
                for _ in 0..len {
                    w.push(LetterId((r % n) as u32));
                    r /= n;
                }
                w.reverse();
                w
            })
            .collect()
    };
    let probes: Vec<Word> = (1..=PROBE_LEN).flat_map(words_of).collect();
    let signature = |seq: &StateSeq| -> Result<Vec<Option<Word>>> {
        probes
            .iter()
            .map(|w| Ok(act_finite(a, seq, w)?.defined().map(|r| r.output)))
            .collect()
    };
    let mut power_sigs: Vec<Vec<Option<Word>>> = vec![signature(s)?];
    for t in 1..max_exponent {
        let prev = &power_sigs[t - 1];
        let next = prev
            .iter()
            .map(|w| match w {
                Some(w) => Ok(act_finite(a, s, w)?.defined().map(|r| r.output)),
                None => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        power_sigs.push(next);
    }
    let mut power_canons: HashMap<usize, Option<ElementCanon>> = HashMap::new();
    for len in 1..=max_word_len {
        let words = words_of(len);
        let total = words.len();
        for w in words {
            let mut cur = w.clone();
            let mut m = 0;
            loop {
                let Act::Defined(r) = act_finite(a, s, &cur)? else {
                    break;
                };
                m += 1;
                cur = r.output;
                if cur == w || m > total {
                    break;
                }
            }
            if cur != w || m < 2 {
                continue;
            }
            let Act::Defined(r) = act_finite(a, &s.pow(m), &w)? else {
                continue;
            };
            let section_sig = signature(&r.residual)?;
            let candidates: Vec<usize> = (1..=max_exponent)
                .filter(|&t| t % m != 0 && power_sigs[t - 1] == section_sig)
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let Some(section) = c.canon_bounded(&r.residual, CANON_SIZE_LIMIT)? else {
                continue;
            };
            for t in candidates {
                let power = power_canons
                    .entry(t)
                    .or_insert_with(|| c.canon_bounded(&s.pow(t), CANON_SIZE_LIMIT).ok().flatten());
                if power.as_ref() == Some(&section) {
                    return Ok(Some((w, m, t)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    /// Smallest `k >= 1` with `s^k` the identity.
    FiniteOrder(usize),
    NoIdentityWithinBudget,
}

pub fn order_check(a: &Automaton, s: &StateSeq, max_exponent: usize) -> Result<OrderVerdict> {
    let mut c = Canonizer::new(a)?;
    let id = c.identity();
    let base = c.canon(s)?;
    let mut power = base.clone();
    for k in 1..=max_exponent {
        if k > 1 {
            power = power.then(&base);
        }
        if power == id {
            return Ok(OrderVerdict::FiniteOrder(k));
        }
    }
    Ok(OrderVerdict::NoIdentityWithinBudget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InverseSearch {
    NoInverseUpTo(usize),
    /// `found` applied after `p` is the identity.
    InverseFound(StateSeq),
}

/// Looks for a non-empty `s` with `|s| <= max_len` such that applying `p` and
/// then `s` is the identity, without checking preconditions.
pub fn inverse_in_ball(a: &Automaton, p: StateId, max_len: usize) -> Result<InverseSearch> {
    let view = a.finite("inverse search")?;
    let gens: Vec<StateSeq> = view.states().map(StateSeq::single).collect();
    let ball = enumerate_ball(a, &gens, max_len, usize::MAX)?;
    let mut c = Canonizer::new(a)?;
    let id = c.identity();
    let pc = c.state(p)?.clone();
    for e in &ball.elements {
        if e.length <= max_len && pc.then(&e.canon) == id {
            return Ok(InverseSearch::InverseFound(e.rep.clone()));
        }
    }
    Ok(InverseSearch::NoInverseUpTo(max_len))
}

/// [`inverse_in_ball`] for a state of a reversible invertible automaton
/// lying in a component that is not bi-reversible.
pub fn no_inverse_in_ball(a: &Automaton, p: StateId, max_len: usize) -> Result<InverseSearch> {
    let report = a.classify()?;
    if !(report.reversible && report.invertible) {
        return Err(Error::Precondition("automaton must be reversible and invertible".into()));
    }
    let component = report
        .components
        .iter()
        .find(|c| c.states.contains(&p))
        .ok_or_else(|| Error::UnknownState(format!("#{}", p.0)))?;
    if component.bi_reversible {
        return Err(Error::Precondition(format!(
            "state `{}` lies in a bi-reversible component",
            a.state_name(p)
        )));
    }
    inverse_in_ball(a, p, max_len)
}

/// Left Cayley graph: an edge labelled `g` goes from `x` to `g ∘ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGraph {
    pub nodes: Vec<BallElement>,
    /// `(from, generator index, to)`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Whether every product stayed inside the node set.
    pub closed: bool,
}

/// Cayley graph of the ball of radius `budget`. Without generators the graph
/// is the single identity node.
pub fn cayley_graph(a: &Automaton, gens: &[StateSeq], budget: usize) -> Result<CayleyGraph> {
    let mut c = Canonizer::new(a)?;
    if gens.is_empty() {
        return Ok(CayleyGraph {
            nodes: vec![BallElement {
                rep: StateSeq::default(),
                canon: c.identity(),
                length: 0,
            }],
            edges: Vec::new(),
            closed: true,
        });
    }
    let ball = enumerate_ball(a, gens, budget, usize::MAX)?;
    let index: HashMap<&ElementCanon, usize> = ball.elements.iter().enumerate().map(|(i, e)| (&e.canon, i)).collect();
    let gen_canons: Vec<ElementCanon> = gens.iter().map(|g| c.canon(g)).collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for (x, e) in ball.elements.iter().enumerate() {
        for (g, gc) in gen_canons.iter().enumerate() {
            if let Some(&t) = index.get(&e.canon.then(gc)) {
                edges.push((x, g, t));
            }
        }
    }
    Ok(CayleyGraph {
        closed: matches!(ball.verdict, Finiteness::FiniteWithOrder(_)),
        nodes: ball.elements,
        edges,
    })
}

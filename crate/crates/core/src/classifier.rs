//! Which letters force infinite orbits of periodic words, and extraction of
//! periodic words with finite orbits.
//!
//! For a complete, invertible and reversible automaton, a periodic word whose
//! period contains a letter from a non-bi-reversible component of the dual has
//! an infinite orbit. Finite orbits, in turn, contain a word `u v^ω` with a
//! finite orbit built from a prefix of the original word.

use crate::action::{render_word, UPWord};
use crate::automaton::{Automaton, LetterId, StateId, Word};
use crate::orbits::{orbit_up, GenLang, UpOrbit};
use crate::{Error, Result};

/// Connected component of the dual automaton, as letters of the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterComponent {
    pub letters: Vec<LetterId>,
    pub bi_reversible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LetterClassification {
    /// `gamma` collects the letters of non-bi-reversible dual components.
    Applicable {
        gamma: Vec<LetterId>,
        components: Vec<LetterComponent>,
    },
    Inapplicable { failing: String },
}

/// Splits the alphabet along the connected components of the dual. Requires
/// the dual to be complete, reversible and invertible.
pub fn classify_letters(a: &Automaton) -> Result<LetterClassification> {
    let dual = a.dual()?;
    let r = dual.classify()?;
    let failing = [
        (r.complete, "dual is not complete (the automaton is not complete)"),
        (r.reversible, "dual is not reversible (the automaton is not invertible)"),
        (r.invertible, "dual is not invertible (the automaton is not reversible)"),
    ]
    .iter()
    .find(|(ok, _)| !ok)
    .map(|(_, why)| why.to_string());
    if let Some(failing) = failing {
        return Ok(LetterClassification::Inapplicable { failing });
    }
    let components: Vec<LetterComponent> = r
        .components
        .iter()
        .map(|c| LetterComponent {
            letters: c.states.iter().map(|s| LetterId(s.0)).collect(),
            bi_reversible: c.bi_reversible,
        })
        .collect();
    let mut gamma: Vec<LetterId> = components
        .iter()
        .filter(|c| !c.bi_reversible)
        .flat_map(|c| c.letters.iter().copied())
        .collect();
    gamma.sort();
    Ok(LetterClassification::Applicable { gamma, components })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prediction {
    /// The period contains `letter` from a non-bi-reversible component.
    PredictInfinite { letter: LetterId },
    NoPrediction,
    Inapplicable { failing: String },
}

/// Predicts an infinite orbit for `x` from the letters of its period.
pub fn predict_periodic_orbit(a: &Automaton, x: &UPWord) -> Result<Prediction> {
    match classify_letters(a)? {
        LetterClassification::Inapplicable { failing } => Ok(Prediction::Inapplicable { failing }),
        LetterClassification::Applicable { gamma, .. } => Ok(x
            .period()
            .iter()
            .find(|l| gamma.contains(l))
            .map(|&letter| Prediction::PredictInfinite { letter })
            .unwrap_or(Prediction::NoPrediction)),
    }
}

/// Orbit check of `v^ω`, done for complete reversible automata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCheck {
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub u: Word,
    pub v: Word,
    /// `u v^ω` has a finite orbit within the node budget.
    pub verified: bool,
    pub periodic: Option<PeriodicCheck>,
    /// Every letter of the period of `x` occurs in `v`.
    pub covers_recurrent_letters: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractOutcome {
    Extracted(Extraction),
    NotFoundWithinBudget,
}

/// Default bound on `ℓ'`: `|Q| · |orbit| · |period| · 8`.
pub fn default_pair_budget(a: &Automaton, orbit_size: usize, x: &UPWord) -> usize {
    a.num_states().unwrap_or(1) * orbit_size * x.period().len() * 8
}

/// Finds `ℓ < ℓ'` such that every state has the same residual after the
/// prefixes of length `ℓ` and `ℓ'` of every orbit word (or is undefined on
/// both), and returns `u = x[0,ℓ)`, `v = x[ℓ,ℓ')`. Requires `Q* ∘ x` to be
/// finite within `node_budget`.
pub fn extract_periodic_finite_orbit(
    a: &Automaton,
    x: &UPWord,
    node_budget: usize,
    pair_budget: Option<usize>,
) -> Result<ExtractOutcome> {
    let view = a.finite("periodic extraction")?;
    let UpOrbit::Finite(orbit) = orbit_up(a, &GenLang::FullStar, x, node_budget)? else {
        return Err(Error::Budget(format!(
            "orbit of {} is not finite within {node_budget} words",
            x.render(a)
        )));
    };
    let limit = pair_budget.unwrap_or_else(|| default_pair_budget(a, orbit.len(), x));
    // runs[(word, state)][n] = residual after the first n letters.
    let runs: Vec<Vec<Option<StateId>>> = orbit
        .iter()
        .flat_map(|w| view.states().map(move |q| (w, q)))
        .map(|(w, q)| {
            let mut cur = Some(q);
            let mut out = Vec::with_capacity(limit + 1);
            out.push(cur);
            for pos in 0..limit {
                cur = cur.and_then(|s| view.delta(s, w.letter_at(pos)).map(|(_, p)| p));
                out.push(cur);
            }
            out
        })
        .collect();
    for l2 in 1..=limit {
        for l1 in 0..l2 {
            if runs.iter().all(|r| r[l1] == r[l2]) {
                let u = x.take(l1);
                let v: Word = x.take(l2)[l1..].to_vec();
                let candidate = UPWord::new(&u, &v)?;
                let verified = matches!(
                    orbit_up(a, &GenLang::FullStar, &candidate, node_budget)?,
                    UpOrbit::Finite(_)
                );
                let r = a.classify()?;
                let periodic = if r.complete && r.reversible {
                    let pv = UPWord::periodic(&v)?;
                    Some(PeriodicCheck {
                        verified: matches!(orbit_up(a, &GenLang::FullStar, &pv, node_budget)?, UpOrbit::Finite(_)),
                    })
                } else {
                    None
                };
                let covers_recurrent_letters = x.period().iter().all(|l| v.contains(l));
                return Ok(ExtractOutcome::Extracted(Extraction {
                    u,
                    v,
                    verified,
                    periodic,
                    covers_recurrent_letters,
                }));
            }
        }
    }
    Ok(ExtractOutcome::NotFoundWithinBudget)
}

/// `u|v` rendering of an extraction.
pub fn render_extraction(a: &Automaton, e: &Extraction) -> String {
    format!("{}|{}", render_word(a, &e.u), render_word(a, &e.v))
}

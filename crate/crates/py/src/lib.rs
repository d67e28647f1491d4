//! Python bindings: parse automata, act on words, compute orbits and
//! classify structural properties.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use orbitkit::action::{act_finite, act_up, parse_word, render_word, Act, StateSeq, UPWord, UpAct};
use orbitkit::algebra::{torsion_check, TorsionVerdict};
use orbitkit::corpus::{corpus_get, corpus_list};
use orbitkit::orbits::{orbit_up, orbit_word, GenLang, UpOrbit};

fn py_err(e: orbitkit::Error) -> PyErr {
    match e {
        orbitkit::Error::ExplorationBound(_) | orbitkit::Error::Budget(_) | orbitkit::Error::Internal(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite (possibly partial) automaton.
#[pyclass(name = "Automaton", module = "orbitkit")]
pub struct PyAutomaton {
    inner: orbitkit::Automaton,
}

impl PyAutomaton {
    fn seq(&self, seq: &str) -> PyResult<StateSeq> {
        StateSeq::parse(&self.inner, seq).map_err(py_err)
    }
}

#[pymethods]
impl PyAutomaton {
    /// Parses the text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(py_err)? })
    }

    /// A bundled automaton by name.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        Ok(Self { inner: corpus_get(name).map_err(py_err)? })
    }

    fn to_text(&self) -> PyResult<String> {
        self.inner.to_text().map_err(py_err)
    }

    fn states(&self) -> PyResult<Vec<String>> {
        let view = self.inner.finite("states").map_err(py_err)?;
        Ok(view.state_names().iter().map(str::to_string).collect())
    }

    fn alphabet(&self) -> Vec<String> {
        self.inner.alphabet().iter().map(str::to_string).collect()
    }

    /// Image of a finite word under a state sequence (application order),
    /// or `None` where undefined.
    fn act(&self, seq: &str, word: &str) -> PyResult<Option<String>> {
        let w = parse_word(&self.inner, word).map_err(py_err)?;
        Ok(match act_finite(&self.inner, &self.seq(seq)?, &w).map_err(py_err)? {
            Act::Defined(r) => Some(render_word(&self.inner, &r.output)),
            Act::Undefined(_) => None,
        })
    }

    /// Image of an ultimately periodic word `prefix|period`, or `None`.
    fn act_up(&self, seq: &str, up: &str) -> PyResult<Option<String>> {
        let x = UPWord::parse(&self.inner, up).map_err(py_err)?;
        Ok(match act_up(&self.inner, &self.seq(seq)?, &x).map_err(py_err)? {
            UpAct::Defined(y) => Some(y.render(&self.inner)),
            UpAct::Undefined { .. } => None,
        })
    }

    /// Orbit of a finite word under the semigroup generated by all states.
    fn orbit(&self, word: &str) -> PyResult<Vec<String>> {
        let w = parse_word(&self.inner, word).map_err(py_err)?;
        let o = orbit_word(&self.inner, &GenLang::FullStar, &w).map_err(py_err)?;
        Ok(o.nodes().iter().map(|u| render_word(&self.inner, u)).collect())
    }

    /// Orbit of an ultimately periodic word, or `None` if it exceeds `nodes`.
    #[pyo3(signature = (up, nodes = 100_000))]
    fn orbit_up(&self, up: &str, nodes: usize) -> PyResult<Option<Vec<String>>> {
        let x = UPWord::parse(&self.inner, up).map_err(py_err)?;
        Ok(match orbit_up(&self.inner, &GenLang::FullStar, &x, nodes).map_err(py_err)? {
            UpOrbit::Finite(o) => Some(o.iter().map(|y| y.render(&self.inner)).collect()),
            UpOrbit::ExceededBudget { .. } => None,
        })
    }

    /// `(i, j)` with `s^i = s^j`, or `None` within the exponent budget.
    #[pyo3(signature = (seq, budget = 32))]
    fn torsion(&self, seq: &str, budget: usize) -> PyResult<Option<(usize, usize)>> {
        Ok(match torsion_check(&self.inner, &self.seq(seq)?, budget).map_err(py_err)? {
            TorsionVerdict::Torsion { i, j } => Some((i, j)),
            _ => None,
        })
    }

    /// Completeness, reversibility, invertibility and bi-reversibility.
    fn classify(&self) -> PyResult<BTreeMap<&'static str, bool>> {
        let r = self.inner.classify().map_err(py_err)?;
        Ok(BTreeMap::from([
            ("complete", r.complete),
            ("reversible", r.reversible),
            ("invertible", r.invertible),
            ("inverse_reversible", r.inverse_reversible),
            ("bi_reversible", r.bi_reversible),
        ]))
    }

    fn dual(&self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.dual().map_err(py_err)? })
    }

    fn inverse(&self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.inverse().map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("<Automaton {}>", self.inner.name())
    }
}

/// Names of the bundled automata.
#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    corpus_list().iter().map(|e| e.name).collect()
}

#[pymodule]
#[pyo3(name = "orbitkit")]
fn orbitkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAutomaton>()?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    Ok(())
}

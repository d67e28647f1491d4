//! Orbits, torsion and finiteness semi-decision for semigroups and groups
//! generated by letter-to-letter partial transducers.
//!
//! The crate is organised bottom-up: [`automaton`] holds the transducers and
//! their constructions, [`action`] the cross-diagram computations, [`orbits`]
//! orbit exploration, [`algebra`] element equality and torsion, [`classifier`]
//! letter classification for periodic orbits, [`tilings`] and [`gadgets`] the
//! two reductions, and [`corpus`] the reference automata.

pub mod action;
pub mod algebra;
pub mod automaton;
pub mod classifier;
pub mod corpus;
pub mod dot;
mod error;
pub mod gadgets;
pub mod orbits;
pub mod tilings;

pub use action::{Act, ActResult, StateSeq, UPWord, UpAct};
pub use automaton::{Automaton, LetterId, StateId, Word};
pub use error::{Error, Result};

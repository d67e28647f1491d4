//! Graphviz renderings.

use std::fmt::Write;

use crate::action::render_word;
use crate::algebra::CayleyGraph;
use crate::automaton::Automaton;
use crate::orbits::OrbitalTransducer;
use crate::Result;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Transition graph with edges labelled `input/output`.
pub fn automaton_dot(a: &Automaton) -> Result<String> {
    let view = a.finite("dot")?;
    let mut out = format!("digraph {} {{\n", quote(a.name()));
    for q in view.states() {
        writeln!(out, "  {};", quote(&a.state_name(q))).unwrap();
    }
    for t in view.transitions() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&a.state_name(t.state)),
            quote(&a.state_name(t.target)),
            quote(&format!("{}/{}", a.letter_name(t.input), a.letter_name(t.output)))
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// Orbit graph with edges labelled `block | residual`.
pub fn orbit_dot(a: &Automaton, o: &OrbitalTransducer) -> String {
    let mut out = String::from("digraph orbit {\n");
    for (i, w) in o.nodes().iter().enumerate() {
        let shape = if i == 0 { ", shape=doublecircle" } else { "" };
        writeln!(out, "  n{i} [label={}{shape}];", quote(&render_word(a, w))).unwrap();
    }
    for v in 0..o.len() {
        for (f, block) in o.blocks().iter().enumerate() {
            if let Some((residual, t)) = o.edge(v, f) {
                let label = format!("{} | {}", block.render(a), residual.render(a));
                writeln!(out, "  n{v} -> n{t} [label={}];", quote(&label)).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Left Cayley graph; nodes are labelled in left-action order.
pub fn cayley_dot(a: &Automaton, g: &CayleyGraph, gen_names: &[String]) -> String {
    let mut out = String::from("digraph cayley {\n");
    for (i, e) in g.nodes.iter().enumerate() {
        let names: Vec<String> = e.rep.as_slice().iter().rev().map(|&q| a.state_name(q)).collect();
        let label = if names.is_empty() { "id".to_string() } else { names.join("") };
        writeln!(out, "  n{i} [label={}];", quote(&label)).unwrap();
    }
    for &(x, gen, t) in &g.edges {
        writeln!(out, "  n{x} -> n{t} [label={}];", quote(&gen_names[gen])).unwrap();
    }
    out.push_str("}\n");
    out
}

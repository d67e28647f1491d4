//! Subcommand implementations.

use serde_json::{json, Value};

use orbitkit::action::{act_finite, act_up, parse_word, render_word, Act, StateSeq, UPWord, UpAct};
use orbitkit::algebra::{
    cayley_graph, enumerate_ball, order_check, torsion_check, torsion_check_dual, Finiteness, OrderVerdict,
    TorsionVerdict,
};
use orbitkit::classifier::{
    classify_letters, extract_periodic_finite_orbit, predict_periodic_orbit, render_extraction, ExtractOutcome,
    LetterClassification, Prediction,
};
use orbitkit::corpus::{corpus_get, corpus_list};
use orbitkit::dot::{automaton_dot, cayley_dot, orbit_dot};
use orbitkit::gadgets::{build_gadget, verify_dagger, DaggerVerdict};
use orbitkit::orbits::{
    certify_infinite_up, orbit_path_search, orbit_up, orbit_word, witness_search, GenLang, PathOutcome, UpCertificate,
    UpOrbit, WitnessOutcome,
};
use orbitkit::tilings::{automaton_to_tileset, find_non_y_recurrent, tileset_to_automaton, TileSet, TilingSearch};
use orbitkit::{Automaton, Word};

use crate::report::{CliError, CliResult, Inputs, Outcome, Status};
use crate::{Command, CorpusCommand, GadgetCommand, LangArgs, WangCommand};

fn read_input(path: &str, inputs: &mut Inputs) -> CliResult<String> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    inputs.add(text.as_bytes());
    Ok(text)
}

/// Loads an automaton from a file, or from the corpus for `@name`.
fn load(source: &str, inputs: &mut Inputs) -> CliResult<Automaton> {
    if let Some(name) = source.strip_prefix('@') {
        inputs.add(source.as_bytes());
        return Ok(corpus_get(name)?);
    }
    let text = read_input(source, inputs)?;
    Ok(text.parse()?)
}

fn load_tiles(path: &str, inputs: &mut Inputs) -> CliResult<TileSet> {
    Ok(TileSet::parse(&read_input(path, inputs)?)?)
}

fn lang(a: &Automaton, args: &LangArgs) -> CliResult<GenLang> {
    if let Some(p) = &args.ideal {
        return Ok(GenLang::PrincipalLeftIdeal(StateSeq::parse(a, p)?));
    }
    if args.blocks.is_empty() {
        return Ok(GenLang::FullStar);
    }
    let blocks = args.blocks.iter().map(|b| StateSeq::parse(a, b)).collect::<Result<_, _>>()?;
    Ok(GenLang::FStar(blocks))
}

fn generators(a: &Automaton, gens: &[String]) -> CliResult<Vec<StateSeq>> {
    if gens.is_empty() {
        let view = a.finite("generators")?;
        return Ok(view.states().map(StateSeq::single).collect());
    }
    Ok(gens.iter().map(|g| StateSeq::parse(a, g)).collect::<Result<_, _>>()?)
}

fn words(a: &Automaton, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| render_word(a, w)).collect()
}

fn automaton_outcome(a: &Automaton) -> CliResult<Outcome> {
    let text = a.to_text()?;
    Ok(Outcome::definite(json!({ "kind": "automaton", "text": text }), text.clone()).with_dot(automaton_dot(a)?))
}

pub fn run(command: &Command, inputs: &mut Inputs) -> CliResult<Outcome> {
    match command {
        Command::Act { automaton, seq, word, up } => {
            let a = load(automaton, inputs)?;
            let s = StateSeq::parse(&a, seq)?;
            if let Some(up) = up {
                let x = UPWord::parse(&a, up)?;
                return Ok(match act_up(&a, &s, &x)? {
                    UpAct::Defined(y) => {
                        Outcome::definite(json!({ "kind": "defined", "output": y.render(&a) }), y.render(&a))
                    }
                    UpAct::Undefined { prefix_len } => Outcome::definite(
                        json!({ "kind": "undefined", "prefix_len": prefix_len }),
                        format!("undefined from prefix length {prefix_len}"),
                    ),
                });
            }
            let w = parse_word(&a, word.as_deref().unwrap_or_default())?;
            Ok(match act_finite(&a, &s, &w)? {
                Act::Defined(r) => {
                    let out = render_word(&a, &r.output);
                    let text = format!("{out}\nresidual: {}\n", r.residual.render(&a));
                    Outcome::definite(
                        json!({
                            "kind": "defined",
                            "output": out,
                            "residual": r.residual.render(&a),
                            "residual_left": r.residual.render_left(&a),
                        }),
                        text,
                    )
                }
                Act::Undefined(at) => Outcome::definite(
                    json!({
                        "kind": "undefined",
                        "row": at.row,
                        "position": at.position,
                        "state": a.state_name(at.state),
                        "letter": a.letter_name(at.letter),
                    }),
                    format!(
                        "undefined: state {} has no transition on {} (row {}, position {})",
                        a.state_name(at.state),
                        a.letter_name(at.letter),
                        at.row,
                        at.position
                    ),
                ),
            })
        }
        Command::Orbit { automaton, word, lang: l } => {
            let a = load(automaton, inputs)?;
            let u = parse_word(&a, word)?;
            let o = orbit_word(&a, &lang(&a, l)?, &u)?;
            let nodes = words(&a, o.nodes());
            let mut edges = Vec::new();
            for v in 0..o.len() {
                for (f, block) in o.blocks().iter().enumerate() {
                    if let Some((residual, t)) = o.edge(v, f) {
                        edges.push(json!({
                            "from": v, "block": block.render(&a), "residual": residual.render(&a), "to": t
                        }));
                    }
                }
            }
            let text = format!("orbit size {}\n{}\n", o.len(), nodes.join("\n"));
            Ok(Outcome::definite(
                json!({ "kind": "orbit", "size": o.len(), "nodes": nodes, "edges": edges }),
                text,
            )
            .with_dot(orbit_dot(&a, &o))
            .with_budget(o.len()))
        }
        Command::OrbitUp { automaton, up, lang: l, nodes, certify, depth } => {
            let a = load(automaton, inputs)?;
            let x = UPWord::parse(&a, up)?;
            let language = lang(&a, l)?;
            if let Some(target) = certify {
                if !matches!(language, GenLang::FullStar) {
                    return Err(CliError::Usage("--certify works with the full generator language only".into()));
                }
                return Ok(match certify_infinite_up(&a, &x, *target, *depth)? {
                    UpCertificate::Certified { prefix_len, size } => Outcome::definite(
                        json!({ "kind": "infinite_certified", "prefix_len": prefix_len, "size": size }),
                        format!("infinite: the prefix of length {prefix_len} has an orbit of size {size}"),
                    )
                    .with_budget(prefix_len),
                    UpCertificate::Unknown { best_prefix_len, best_size } => Outcome::unknown(
                        json!({ "kind": "unknown", "best_prefix_len": best_prefix_len, "best_size": best_size }),
                        format!("unknown: largest prefix orbit {best_size} at length {best_prefix_len}"),
                    )
                    .with_budget(*depth),
                });
            }
            Ok(match orbit_up(&a, &language, &x, *nodes)? {
                UpOrbit::Finite(o) => {
                    let rendered: Vec<String> = o.iter().map(|y| y.render(&a)).collect();
                    Outcome::definite(
                        json!({ "kind": "finite", "size": o.len(), "words": rendered }),
                        format!("finite orbit of size {}\n{}\n", o.len(), rendered.join("\n")),
                    )
                    .with_budget(o.len())
                }
                UpOrbit::ExceededBudget { discovered } => Outcome::unknown(
                    json!({ "kind": "exceeded_budget", "discovered": discovered }),
                    format!("unknown: {discovered} words discovered within the node budget"),
                )
                .with_budget(discovered),
            })
        }
        Command::Witness { automaton, target, lang: l, depth } => {
            let a = load(automaton, inputs)?;
            let chain_json = |chain: &[(Word, usize)]| -> Vec<Value> {
                chain
                    .iter()
                    .map(|(w, s)| json!({ "word": render_word(&a, w), "size": s }))
                    .collect()
            };
            let chain_text = |chain: &[(Word, usize)]| -> String {
                chain.iter().map(|(w, s)| format!("{} {s}\n", render_word(&a, w))).collect()
            };
            Ok(match witness_search(&a, &lang(&a, l)?, *target, *depth)? {
                WitnessOutcome::Certificate(c) => Outcome::definite(
                    json!({ "kind": "certificate", "chain": chain_json(&c.chain) }),
                    chain_text(&c.chain),
                )
                .with_budget(c.chain.len()),
                WitnessOutcome::Stalled { at, chain } => Outcome::unknown(
                    json!({ "kind": "stalled", "at": render_word(&a, &at), "chain": chain_json(&chain) }),
                    format!("stalled at {}\n{}", render_word(&a, &at), chain_text(&chain)),
                )
                .with_budget(chain.len()),
            })
        }
        Command::Path { automaton, word, length, lang: l, nodes } => {
            let a = load(automaton, inputs)?;
            let u = parse_word(&a, word)?;
            let language = lang(&a, l)?;
            let blocks = language.blocks(&a)?;
            Ok(match orbit_path_search(&a, &language, &u, *length, *nodes)? {
                PathOutcome::Found(p) => {
                    let labels: Vec<String> = p.labels.iter().map(|&f| blocks[f].render(&a)).collect();
                    Outcome::definite(
                        json!({ "kind": "found", "nodes": words(&a, &p.nodes), "labels": labels }),
                        format!("{}\nlabels: {}\n", words(&a, &p.nodes).join(" -> "), labels.join(" ")),
                    )
                }
                PathOutcome::NotFound => {
                    Outcome::definite(json!({ "kind": "not_found" }), "no simple path of that length")
                }
                PathOutcome::ExceededBudget => {
                    Outcome::unknown(json!({ "kind": "exceeded_budget" }), "unknown: step budget exhausted")
                        .with_budget(*nodes)
                }
            })
        }
        Command::Ball { automaton, gens, depth, nodes } => {
            let a = load(automaton, inputs)?;
            let gens = generators(&a, gens)?;
            let r = enumerate_ball(&a, &gens, *depth, *nodes)?;
            let reps: Vec<String> = r.elements.iter().map(|e| e.rep.render(&a)).collect();
            let base = json!({
                "sphere_sizes": r.sphere_sizes, "ball_sizes": r.ball_sizes, "elements": reps
            });
            let sizes = format!(
                "sphere sizes {:?}\nball sizes {:?}\n",
                r.sphere_sizes, r.ball_sizes
            );
            Ok(match r.verdict {
                Finiteness::FiniteWithOrder(n) => {
                    let mut v = base;
                    v["kind"] = json!("finite");
                    v["order"] = json!(n);
                    Outcome::definite(v, format!("finite of order {n}\n{sizes}")).with_budget(r.elements.len())
                }
                Finiteness::NotClosedAtBudget => {
                    let mut v = base;
                    v["kind"] = json!("not_closed_at_budget");
                    Outcome::unknown(v, format!("unknown: not closed within the budget\n{sizes}"))
                        .with_budget(r.elements.len())
                }
            })
        }
        Command::Torsion { automaton, seq, budget, route, nodes, target } => {
            let a = load(automaton, inputs)?;
            let s = StateSeq::parse(&a, seq)?;
            let mut verdict = TorsionVerdict::Unknown { budget_spent: 0 };
            if route != "dual" {
                verdict = torsion_check(&a, &s, *budget)?;
            }
            if route != "rows" && matches!(verdict, TorsionVerdict::Unknown { .. }) {
                verdict = torsion_check_dual(&a, &s, *nodes, *target)?;
            }
            Ok(match verdict {
                TorsionVerdict::Torsion { i, j } => Outcome::definite(
                    json!({ "kind": "torsion", "i": i, "j": j }),
                    format!("torsion: s^{i} = s^{j}"),
                )
                .with_budget(j),
                TorsionVerdict::TorsionFreeCertified(c) => Outcome::definite(
                    json!({
                        "kind": "torsion_free",
                        "dual_orbit_size": c.dual_orbit_size,
                        "prefix_len": c.prefix_len,
                        "word": render_word(&a, &c.word),
                        "period": c.period,
                        "section_exponent": c.section_exponent,
                    }),
                    format!(
                        "torsion-free: dual orbit reaches {} at prefix length {}; s^{} fixes {} with section s^{}",
                        c.dual_orbit_size,
                        c.prefix_len,
                        c.period,
                        render_word(&a, &c.word),
                        c.section_exponent
                    ),
                ),
                TorsionVerdict::Unknown { budget_spent } => Outcome::unknown(
                    json!({ "kind": "unknown", "budget_spent": budget_spent }),
                    format!("unknown after budget {budget_spent}"),
                )
                .with_budget(budget_spent),
            })
        }
        Command::Order { automaton, seq, budget } => {
            let a = load(automaton, inputs)?;
            let s = StateSeq::parse(&a, seq)?;
            Ok(match order_check(&a, &s, *budget)? {
                OrderVerdict::FiniteOrder(k) => {
                    Outcome::definite(json!({ "kind": "finite_order", "order": k }), format!("order {k}"))
                        .with_budget(k)
                }
                OrderVerdict::NoIdentityWithinBudget => Outcome::unknown(
                    json!({ "kind": "no_identity_within_budget" }),
                    format!("unknown: no power up to {budget} is the identity"),
                )
                .with_budget(*budget),
            })
        }
        Command::Cayley { automaton, gens, depth } => {
            let a = load(automaton, inputs)?;
            let gen_seqs = generators(&a, gens)?;
            let names: Vec<String> = gen_seqs.iter().map(|g| g.render(&a)).collect();
            let g = cayley_graph(&a, &gen_seqs, *depth)?;
            let nodes: Vec<String> = g.nodes.iter().map(|e| e.rep.render(&a)).collect();
            let edges: Vec<Value> = g
                .edges
                .iter()
                .map(|&(x, gen, t)| json!({ "from": x, "gen": names[gen], "to": t }))
                .collect();
            let text = format!(
                "{} nodes, {} edges{}\n",
                g.nodes.len(),
                g.edges.len(),
                if g.closed { "" } else { " (not closed)" }
            );
            let verdict = json!({ "kind": "cayley", "closed": g.closed, "nodes": nodes, "edges": edges });
            let dot = cayley_dot(&a, &g, &names);
            let outcome = if g.closed {
                Outcome::definite(verdict, text)
            } else {
                Outcome::unknown(verdict, text)
            };
            Ok(outcome.with_dot(dot).with_budget(g.nodes.len()))
        }
        Command::Classify { automaton } => {
            let a = load(automaton, inputs)?;
            let r = a.classify()?;
            let components: Vec<Value> = r
                .components
                .iter()
                .map(|c| {
                    let states: Vec<String> = c.states.iter().map(|&q| a.state_name(q)).collect();
                    json!({ "states": states, "strongly_connected": c.strongly_connected, "bi_reversible": c.bi_reversible })
                })
                .collect();
            let text = format!(
                "complete: {}\nreversible: {}\ninvertible: {}\ninverse reversible: {}\nbi-reversible: {}\ncomponents: {}\n",
                r.complete,
                r.reversible,
                r.invertible,
                r.inverse_reversible,
                r.bi_reversible,
                r.components.len()
            );
            Ok(Outcome::definite(
                json!({
                    "kind": "properties",
                    "complete": r.complete,
                    "reversible": r.reversible,
                    "invertible": r.invertible,
                    "inverse_reversible": r.inverse_reversible,
                    "bi_reversible": r.bi_reversible,
                    "components": components,
                }),
                text,
            ))
        }
        Command::ClassifyLetters { automaton, up } => {
            let a = load(automaton, inputs)?;
            let mut outcome = match classify_letters(&a)? {
                LetterClassification::Applicable { gamma, components } => {
                    let gamma: Vec<&str> = gamma.iter().map(|&l| a.letter_name(l)).collect();
                    let comps: Vec<Value> = components
                        .iter()
                        .map(|c| {
                            let letters: Vec<&str> = c.letters.iter().map(|&l| a.letter_name(l)).collect();
                            json!({ "letters": letters, "bi_reversible": c.bi_reversible })
                        })
                        .collect();
                    Outcome::definite(
                        json!({ "kind": "applicable", "gamma": gamma, "components": comps }),
                        format!("letters with infinite periodic orbits: {}\n", gamma.join(" ")),
                    )
                }
                LetterClassification::Inapplicable { failing } => Outcome::definite(
                    json!({ "kind": "inapplicable", "failing": failing }),
                    format!("inapplicable: {failing}\n"),
                ),
            };
            if let Some(up) = up {
                let x = UPWord::parse(&a, up)?;
                let (p, line) = match predict_periodic_orbit(&a, &x)? {
                    Prediction::PredictInfinite { letter } => (
                        json!({ "kind": "infinite", "letter": a.letter_name(letter) }),
                        format!("orbit of {} is infinite (period contains {})", x.render(&a), a.letter_name(letter)),
                    ),
                    Prediction::NoPrediction => (json!({ "kind": "no_prediction" }), "no prediction".to_string()),
                    Prediction::Inapplicable { failing } => (
                        json!({ "kind": "inapplicable", "failing": failing }),
                        format!("inapplicable: {failing}"),
                    ),
                };
                outcome.verdict["prediction"] = p;
                outcome.text.push_str(&line);
            }
            Ok(outcome)
        }
        Command::ExtractFinite { automaton, up, nodes, pairs } => {
            let a = load(automaton, inputs)?;
            let x = UPWord::parse(&a, up)?;
            Ok(match extract_periodic_finite_orbit(&a, &x, *nodes, *pairs)? {
                ExtractOutcome::Extracted(e) => {
                    let rendered = render_extraction(&a, &e);
                    let periodic = e.periodic.as_ref().map(|p| p.verified);
                    let status = if e.verified { Status::Definite } else { Status::Internal };
                    Outcome {
                        status,
                        verdict: json!({
                            "kind": "extracted",
                            "word": rendered,
                            "verified": e.verified,
                            "periodic_verified": periodic,
                            "covers_recurrent_letters": e.covers_recurrent_letters,
                        }),
                        text: format!("{rendered}\nverified: {}\n", e.verified),
                        dot: None,
                        budget_spent: None,
                    }
                }
                ExtractOutcome::NotFoundWithinBudget => Outcome::unknown(
                    json!({ "kind": "not_found_within_budget" }),
                    "unknown: no pair found within the budget",
                ),
            })
        }
        Command::Wang(w) => wang(w, inputs),
        Command::Gadget(g) => gadget(g, inputs),
        Command::Corpus(c) => corpus(c, inputs),
        Command::Dual { automaton } => automaton_outcome(&load(automaton, inputs)?.dual()?),
        Command::Inverse { automaton } => automaton_outcome(&load(automaton, inputs)?.inverse()?),
        Command::Compose { first, second } => {
            let f = load(first, inputs)?;
            let s = load(second, inputs)?;
            automaton_outcome(&Automaton::compose(&s, &f)?)
        }
        Command::Power { automaton, k } => automaton_outcome(&load(automaton, inputs)?.power(*k)?),
        Command::Union { left, right } => {
            let l = load(left, inputs)?;
            let r = load(right, inputs)?;
            automaton_outcome(&l.disjoint_union(&r)?)
        }
    }
}

fn wang(command: &WangCommand, inputs: &mut Inputs) -> CliResult<Outcome> {
    match command {
        WangCommand::Check { tiles } => {
            let w = load_tiles(tiles, inputs)?;
            Ok(match w.sw_conflict() {
                None => Outcome::definite(
                    json!({ "kind": "sw_deterministic", "tiles": w.tiles.len() }),
                    format!("SW-deterministic ({} tiles)", w.tiles.len()),
                ),
                Some((i, j)) => {
                    let (a, b) = (w.render_tile(&w.tiles[i]), w.render_tile(&w.tiles[j]));
                    Outcome::definite(
                        json!({ "kind": "not_sw_deterministic", "first": a, "second": b }),
                        format!("not SW-deterministic: {a} and {b} share west and south colors"),
                    )
                }
            })
        }
        WangCommand::ToAutomaton { tiles } => automaton_outcome(&tileset_to_automaton(&load_tiles(tiles, inputs)?)?),
        WangCommand::FromAutomaton { automaton } => {
            let w = automaton_to_tileset(&load(automaton, inputs)?)?;
            let text = w.to_text();
            Ok(Outcome::definite(json!({ "kind": "tiles", "text": text }), text))
        }
        WangCommand::Find { tiles, height, width, steps } => {
            let w = load_tiles(tiles, inputs)?;
            Ok(match find_non_y_recurrent(&w, *height, *width, *steps)? {
                TilingSearch::Found(t) => {
                    let grid: Vec<Vec<String>> = t
                        .grid
                        .iter()
                        .map(|row| row.iter().map(|&i| w.render_tile(&w.tiles[i])).collect())
                        .collect();
                    let rows: Vec<Vec<&str>> =
                        t.rows.iter().map(|r| r.iter().map(|&c| w.colors.name(c)).collect()).collect();
                    Outcome::definite(
                        json!({ "kind": "found", "width": t.width(), "grid": grid, "rows": rows }),
                        t.render(&w),
                    )
                }
                TilingSearch::NotFound => Outcome::unknown(
                    json!({ "kind": "not_found_within_width", "width": width }),
                    format!("unknown: no rectangle up to width {width}"),
                )
                .with_budget(*width),
                TilingSearch::ExceededBudget => Outcome::unknown(
                    json!({ "kind": "exceeded_budget" }),
                    "unknown: step budget exhausted",
                )
                .with_budget(*steps),
            })
        }
    }
}

fn gadget(command: &GadgetCommand, inputs: &mut Inputs) -> CliResult<Outcome> {
    match command {
        GadgetCommand::Build { automaton, dollar } => {
            let t = load(automaton, inputs)?;
            let g = build_gadget(&t, t.state(dollar)?)?;
            automaton_outcome(&g.automaton)
        }
        GadgetCommand::Verify { automaton, dollar, seq, k } => {
            let t = load(automaton, inputs)?;
            let g = build_gadget(&t, t.state(dollar)?)?;
            let s = StateSeq::parse(&t, seq)?;
            Ok(match verify_dagger(&g, &s, *k)? {
                DaggerVerdict::Verified => Outcome::definite(json!({ "kind": "verified" }), "verified"),
                DaggerVerdict::Mismatch { expected_residual, got, .. } => {
                    let r = &g.automaton;
                    let got = got.map(|(w, res)| format!("{} with residual {}", render_word(r, &w), res.render(r)));
                    Outcome {
                        status: Status::Internal,
                        verdict: json!({
                            "kind": "mismatch",
                            "expected_residual": expected_residual.render(r),
                            "got": got,
                        }),
                        text: format!(
                            "mismatch: expected residual {}, got {}",
                            expected_residual.render(r),
                            got.as_deref().unwrap_or("undefined")
                        ),
                        dot: None,
                        budget_spent: None,
                    }
                }
            })
        }
    }
}

fn corpus(command: &CorpusCommand, inputs: &mut Inputs) -> CliResult<Outcome> {
    match command {
        CorpusCommand::List => {
            let entries: Vec<Value> = corpus_list()
                .iter()
                .map(|e| json!({ "name": e.name, "description": e.description, "finite": e.expected.is_some() }))
                .collect();
            let text: String = corpus_list()
                .iter()
                .map(|e| format!("{:<16} {}\n", e.name, e.description))
                .collect();
            Ok(Outcome::definite(json!({ "kind": "corpus", "entries": entries }), text))
        }
        CorpusCommand::Dump { name } => {
            inputs.add(name.as_bytes());
            automaton_outcome(&corpus_get(name)?)
        }
    }
}

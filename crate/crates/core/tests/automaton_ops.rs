use orbitkit::action::{act_dual, act_finite, act_up, parse_word, Act, StateSeq, UPWord, UpAct};
use orbitkit::automaton::compose_state_name;
use orbitkit::corpus::{corpus_get, corpus_list, finite_names};
use orbitkit::{Automaton, Error};

fn seq(a: &Automaton, s: &str) -> StateSeq {
    StateSeq::parse(a, s).unwrap()
}

fn word(a: &Automaton, w: &str) -> Vec<orbitkit::LetterId> {
    parse_word(a, w).unwrap()
}

fn up(a: &Automaton, x: &str) -> UPWord {
    UPWord::parse(a, x).unwrap()
}

#[test]
fn corpus_flags_match_classification() {
    for entry in corpus_list() {
        let Some(expected) = entry.expected else { continue };
        let r = corpus_get(entry.name).unwrap().classify().unwrap();
        let got = (r.complete, r.reversible, r.invertible, r.inverse_reversible, r.bi_reversible);
        let want = (
            expected.complete,
            expected.reversible,
            expected.invertible,
            expected.inverse_reversible,
            expected.bi_reversible,
        );
        assert_eq!(got, want, "{}", entry.name);
    }
}

#[test]
fn text_format_round_trips() {
    for name in finite_names() {
        let a = corpus_get(name).unwrap();
        let text = a.to_text().unwrap();
        let b: Automaton = text.parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_text().unwrap(), text);
    }
}

#[test]
fn comments_are_stripped() {
    let text = "# leading comment\nautomaton x # trailing\nalphabet 0 #\nstates # q\n  # indented\ntrans # 0 # # # note\n";
    let a: Automaton = text.parse().unwrap();
    assert_eq!(a.alphabet().iter().collect::<Vec<_>>(), ["0", "#"]);
    assert_eq!(a.state("#").unwrap().0, 0);
    assert_eq!(a.state("q").unwrap().0, 1);
    assert_eq!(
        a.to_text().unwrap(),
        "automaton x\nalphabet 0 #\nstates # q\ntrans # 0 # #\n"
    );
}

#[test]
fn parse_errors() {
    let dup = "automaton x\nalphabet 0\nstates q\ntrans q 0 0 q\ntrans q 0 0 q\n";
    assert!(matches!(dup.parse::<Automaton>(), Err(Error::Parse { line: 5, .. })));
    assert!("automaton x\nalphabet\nstates q\n".parse::<Automaton>().is_err());
    assert!("automaton x\nalphabet 0\nstates\n".parse::<Automaton>().is_err());
    assert!("automaton x\nalphabet 0\nstates q\ntrans q 1 0 q\n".parse::<Automaton>().is_err());
    let empty: Automaton = "automaton x\nalphabet 0\nstates q\n".parse().unwrap();
    assert!(!empty.classify().unwrap().complete);
}

#[test]
fn identity_automaton_has_every_property() {
    let r = corpus_get("identity").unwrap().classify().unwrap();
    assert!(r.complete && r.reversible && r.invertible && r.inverse_reversible && r.bi_reversible);
    assert_eq!(r.components.len(), 1);
    assert!(r.components[0].strongly_connected);
}

#[test]
fn components_of_adding_machine() {
    let r = corpus_get("adding-machine").unwrap().classify().unwrap();
    assert_eq!(r.components.len(), 1);
    assert!(!r.components[0].strongly_connected);
    assert!(!r.components[0].bi_reversible);
}

#[test]
fn dual_of_grigorchuk() {
    let g = corpus_get("grigorchuk").unwrap();
    let d = g.dual().unwrap();
    assert!(d.same_structure(&corpus_get("grigorchuk-dual").unwrap()));
    assert!(d.dual().unwrap().same_structure(&g));
}

#[test]
fn inverse_requires_invertibility() {
    let err = corpus_get("left-zeros").unwrap().inverse().unwrap_err();
    match err {
        Error::NotInvertible { state, output, first, second } => {
            assert_eq!((state.as_str(), output.as_str()), ("q", "b"));
            assert_eq!((first.as_str(), second.as_str()), ("a", "b"));
        }
        other => panic!("unexpected {other:?}"),
    }
    let a = corpus_get("adding-machine").unwrap();
    let inv = a.inverse().unwrap();
    assert!(inv.inverse().unwrap().same_structure(&a));
    let q = inv.state("q^-1").unwrap();
    let r = act_finite(&inv, &StateSeq::single(q), &word(&inv, "100")).unwrap();
    assert_eq!(r.defined().unwrap().output, word(&inv, "000"));
}

#[test]
fn composition_of_adding_machine_with_itself() {
    let a = corpus_get("adding-machine").unwrap();
    let c = Automaton::compose(&a, &a).unwrap();
    let qq = c.state(&compose_state_name("q", "q")).unwrap();
    let r = act_finite(&c, &StateSeq::single(qq), &word(&c, "010")).unwrap();
    assert_eq!(r.defined().unwrap().output, word(&c, "001"));
}

#[test]
fn power_of_grigorchuk_has_25_states() {
    let g = corpus_get("grigorchuk").unwrap();
    let p = g.power(2).unwrap();
    assert_eq!(p.num_states(), Some(25));
    let a2 = corpus_get("adding-machine").unwrap().power(2).unwrap();
    let qq = a2.state("q∘q").unwrap();
    let a = corpus_get("adding-machine").unwrap();
    for w in ["00", "01", "10", "11", "0110"] {
        let x = act_finite(&a2, &StateSeq::single(qq), &word(&a2, w)).unwrap().defined().unwrap();
        let y = act_finite(&a, &seq(&a, "q,q"), &word(&a, w)).unwrap().defined().unwrap();
        assert_eq!(x.output, y.output);
    }
    assert!(matches!(g.power(0), Err(Error::Precondition(_))));
}

#[test]
fn union_keeps_both_sides() {
    let a = corpus_get("adding-machine").unwrap();
    let u = a.disjoint_union(&a.inverse().unwrap()).unwrap();
    assert_eq!(u.num_states(), Some(4));
    let both = a.disjoint_union(&a).unwrap();
    assert!(both.state("q@1").is_ok() && both.state("q@2").is_ok());
}

#[test]
fn finite_actions_of_adding_machine() {
    let a = corpus_get("adding-machine").unwrap();
    let r = act_finite(&a, &seq(&a, "q"), &word(&a, "000")).unwrap().defined().unwrap();
    assert_eq!(r.output, word(&a, "100"));
    assert_eq!(r.residual, seq(&a, "id"));
    let r = act_finite(&a, &seq(&a, "q,q"), &word(&a, "010")).unwrap().defined().unwrap();
    assert_eq!(r.output, word(&a, "001"));
    assert_eq!(r.residual, seq(&a, "id,id"));
    let r = act_finite(&a, &seq(&a, "q"), &[]).unwrap().defined().unwrap();
    assert!(r.output.is_empty());
    assert_eq!(r.residual, seq(&a, "q"));
}

#[test]
fn undefined_reports_first_failing_cell() {
    let a = corpus_get("t1").unwrap();
    match act_finite(&a, &seq(&a, "q,q"), &word(&a, "aa")).unwrap() {
        Act::Undefined(at) => {
            assert_eq!((at.row, at.position), (1, 0));
            assert_eq!(a.state_name(at.state), "q");
            assert_eq!(a.letter_name(at.letter), "b");
        }
        Act::Defined(_) => panic!("q q is undefined on aa"),
    }
}

#[test]
fn dual_actions() {
    let a = corpus_get("adding-machine").unwrap();
    let r = act_dual(&a, &word(&a, "0"), &seq(&a, "q")).unwrap();
    assert_eq!(r.defined().unwrap(), seq(&a, "id"));
    let g = corpus_get("grigorchuk").unwrap();
    let r = act_dual(&g, &word(&g, "1"), &seq(&g, "b")).unwrap();
    assert_eq!(r.defined().unwrap(), seq(&g, "c"));
}

#[test]
fn actions_on_periodic_words() {
    let a = corpus_get("adding-machine").unwrap();
    let r = act_up(&a, &seq(&a, "q"), &up(&a, "|1")).unwrap();
    assert_eq!(r, UpAct::Defined(up(&a, "|0")));
    let g = corpus_get("grigorchuk").unwrap();
    let r = act_up(&g, &seq(&g, "b"), &up(&g, "|01")).unwrap();
    assert_eq!(r, UpAct::Defined(up(&g, "00|01")));
    let t = corpus_get("t1").unwrap();
    let r = act_up(&t, &seq(&t, "q"), &up(&t, "|b")).unwrap();
    assert_eq!(r, UpAct::Undefined { prefix_len: 1 });
    let r = act_up(&t, &seq(&t, "p,q"), &up(&t, "bb|a")).unwrap();
    assert_eq!(r, UpAct::Undefined { prefix_len: 1 });
}

#[test]
fn periodic_word_parsing_canonicalizes() {
    let m = corpus_get("mixed").unwrap();
    let x = up(&m, "1'|00");
    assert_eq!(x.render(&m), "1'|0");
    assert_eq!(x.prefix().len(), 1);
}

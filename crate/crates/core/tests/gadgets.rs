use orbitkit::action::{act_finite, render_word, StateSeq};
use orbitkit::corpus::{corpus_get, random_g_automaton};
use orbitkit::gadgets::{build_gadget, counter_letter, encode_word, lambda_expand, verify_dagger, DaggerVerdict};
use orbitkit::{Automaton, Error, StateId};

#[test]
fn lambda_examples() {
    assert_eq!(lambda_expand(&["q1"], 10).unwrap(), ["q1"]);
    assert_eq!(lambda_expand(&["q1", "q2"], 10).unwrap(), ["q1", "q2", "q1"]);
    assert_eq!(
        lambda_expand(&["q1", "q2", "q3"], 10).unwrap(),
        ["q1", "q2", "q1", "q3", "q1", "q2", "q1"]
    );
    assert!(lambda_expand::<u8>(&[], 0).unwrap().is_empty());
    for n in 0..12 {
        let s: Vec<usize> = (0..n).collect();
        assert_eq!(lambda_expand(&s, 1 << 12).unwrap().len(), (1 << n) - 1);
    }
    assert!(matches!(lambda_expand(&[1, 2, 3], 6), Err(Error::Budget(_))));
    assert!(matches!(lambda_expand(&[0u8; 200], usize::MAX), Err(Error::Budget(_))));
}

#[test]
fn adding_machine_gadget_shape() {
    let a = corpus_get("adding-machine").unwrap();
    let g = build_gadget(&a, a.state("q").unwrap()).unwrap();
    let r = &g.automaton;
    assert_eq!(r.num_states(), Some(7));
    assert_eq!(r.num_letters(), 8);
    let props = r.classify().unwrap();
    assert!(props.complete && props.invertible);
    for q in ["q", "id"] {
        let one = r.letter(&counter_letter(q, 1)).unwrap();
        let zero = r.letter(&counter_letter(q, 0)).unwrap();
        assert_eq!(r.transition(g.counter, one).unwrap(), Some((zero, g.counter)));
    }
    for p in r.finite("test").unwrap().states().filter(|&p| p != g.marker) {
        assert_eq!(r.transition(p, g.start).unwrap(), Some((g.start, g.identity)));
    }
    let reparsed: Automaton = r.to_text().unwrap().parse().unwrap();
    assert!(reparsed.same_structure(r));
}

#[test]
fn gadget_rejects_clashing_names() {
    let a: Automaton = "automaton clash\nalphabet 0 *\nstates q\ntrans q 0 0 q\ntrans q * * q\n".parse().unwrap();
    assert!(matches!(build_gadget(&a, StateId(0)), Err(Error::Precondition(_))));
    assert!(matches!(build_gadget(&a, StateId(5)), Err(Error::UnknownState(_))));
}

#[test]
fn encodings() {
    let a = corpus_get("adding-machine").unwrap();
    let g = build_gadget(&a, a.state("q").unwrap()).unwrap();
    let q = StateSeq::parse(&a, "q").unwrap();
    let w = encode_word(&g, &q).unwrap();
    assert_eq!(render_word(&g.automaton, &w), "*,aq:q:0,#");
    assert_eq!(encode_word(&g, &StateSeq::default()).unwrap(), vec![g.start, g.end]);
    let qid = StateSeq::parse(&a, "q,id").unwrap();
    assert_eq!(encode_word(&g, &qid).unwrap().len(), 4);
    assert!(encode_word(&g, &StateSeq::new(vec![StateId(9)])).is_err());
}

#[test]
fn dagger_claim_on_adding_machine() {
    let a = corpus_get("adding-machine").unwrap();
    let g = build_gadget(&a, a.state("q").unwrap()).unwrap();
    let q = StateSeq::parse(&a, "q").unwrap();
    assert_eq!(verify_dagger(&g, &q, 0).unwrap(), DaggerVerdict::Verified);
    assert_eq!(verify_dagger(&g, &q, 1).unwrap(), DaggerVerdict::Verified);
    let u = encode_word(&g, &q).unwrap();
    let r = act_finite(&g.automaton, &StateSeq::single(g.marker).pow(2), &u).unwrap().defined().unwrap();
    assert_eq!(r.output, u);
    assert_eq!(r.residual, StateSeq::new(vec![a.state("q").unwrap(), g.dollar]));
}

#[test]
fn dagger_claim_on_three_states() {
    let t = random_g_automaton(7, 3, 2);
    let g = build_gadget(&t, StateId(0)).unwrap();
    let s = StateSeq::new(vec![StateId(0), StateId(1), StateId(2)]);
    assert_eq!(verify_dagger(&g, &s, 1).unwrap(), DaggerVerdict::Verified);
    let u = encode_word(&g, &s).unwrap();
    let r = act_finite(&g.automaton, &StateSeq::single(g.marker).pow(8), &u).unwrap().defined().unwrap();
    let names: Vec<String> = r.residual.as_slice().iter().map(|&q| g.automaton.state_name(q)).collect();
    assert_eq!(names, ["s0", "s1", "s0", "s2", "s0", "s1", "s0", "s0"]);
}

#[test]
fn only_the_marker_moves_the_start_letter() {
    let a = corpus_get("adding-machine").unwrap();
    let g = build_gadget(&a, a.state("q").unwrap()).unwrap();
    let s = StateSeq::parse(&a, "q,id").unwrap();
    let u = encode_word(&g, &s).unwrap();
    let r = &g.automaton;
    let n = r.num_states().unwrap() as u32;
    for code in 0..n * n {
        let seq = StateSeq::new(vec![StateId(code / n), StateId(code % n)]);
        let out = act_finite(r, &seq, &u).unwrap().defined().unwrap().output;
        let by_marker = (0..=2).any(|i| {
            act_finite(r, &StateSeq::single(g.marker).pow(i), &u).unwrap().defined().unwrap().output == out
        });
        assert!(by_marker, "{seq:?}");
    }
}

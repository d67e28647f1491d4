use std::collections::BTreeSet;

use orbitkit::action::{act_finite, parse_word, StateSeq, UPWord};
use orbitkit::corpus::corpus_get;
use orbitkit::orbits::{
    certify_infinite_up, extend_orbit, orbit_path_search, orbit_up, orbit_word, orbital_transducer_iso, witness_search,
    Extension, GenLang, IsoResult, Mismatch, PathOutcome, UpCertificate, UpOrbit, WitnessOutcome,
};
use orbitkit::{Automaton, Error, LetterId, StateId, Word};

fn word(a: &Automaton, w: &str) -> Word {
    parse_word(a, w).unwrap()
}

fn words(a: &Automaton, ws: &[&str]) -> BTreeSet<Word> {
    ws.iter().map(|w| word(a, w)).collect()
}

fn up(a: &Automaton, x: &str) -> UPWord {
    UPWord::parse(a, x).unwrap()
}

fn node_set(o: &orbitkit::orbits::OrbitalTransducer) -> BTreeSet<Word> {
    o.nodes().iter().cloned().collect()
}

/// Closure of `{u}` under the blocks, applying only the lead block first when
/// `lead` is set; images are recomputed from whole sequences until no new
/// word appears.
fn brute_orbit(a: &Automaton, blocks: &[StateSeq], lead: bool, u: &[LetterId]) -> BTreeSet<Word> {
    let mut out = BTreeSet::from([u.to_vec()]);
    let mut frontier: Vec<StateSeq> = if lead { vec![blocks[0].clone()] } else { blocks.to_vec() };
    let mut seen_images = BTreeSet::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let Some(r) = act_finite(a, s, u).unwrap().defined() else { continue };
            out.insert(r.output.clone());
            if seen_images.insert(r.output) {
                next.extend(blocks.iter().map(|b| s.then(b)));
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn orbit_of_b_cubed_is_a_path() {
    let a = corpus_get("right-ideal").unwrap();
    let o = orbit_word(&a, &GenLang::FullStar, &word(&a, "bbb")).unwrap();
    assert_eq!(node_set(&o), words(&a, &["bbb", "abb", "aab", "aaa"]));
    let q = 0;
    let order = ["bbb", "abb", "aab", "aaa"];
    for pair in order.windows(2) {
        let v = o.index_of(&word(&a, pair[0])).unwrap();
        let (_, t) = o.edge(v, q).clone().unwrap();
        assert_eq!(o.nodes()[t], word(&a, pair[1]));
    }
    let last = o.index_of(&word(&a, "aaa")).unwrap();
    assert_eq!(o.edge(last, q).as_ref().unwrap().1, last);
}

#[test]
fn adding_machine_orbit_of_00() {
    let a = corpus_get("adding-machine").unwrap();
    let o = orbit_word(&a, &GenLang::FullStar, &word(&a, "00")).unwrap();
    assert_eq!(node_set(&o), words(&a, &["00", "10", "01", "11"]));
}

#[test]
fn orbit_word_matches_brute_force() {
    for name in ["adding-machine", "grigorchuk", "right-ideal", "t1", "mixed"] {
        let a = corpus_get(name).unwrap();
        let states: Vec<StateId> = a.finite("test").unwrap().states().collect();
        let p = StateSeq::new(vec![states[0], states[states.len() - 1]]);
        let langs = [
            GenLang::FullStar,
            GenLang::FStar(vec![p.clone(), StateSeq::single(states[0])]),
            GenLang::PrincipalLeftIdeal(p),
        ];
        let n = a.num_letters() as u32;
        for lang in &langs {
            let blocks = lang.blocks(&a).unwrap();
            let lead = matches!(lang, GenLang::PrincipalLeftIdeal(_));
            for code in 0..n.pow(3) {
                let u: Word = vec![LetterId(code % n), LetterId(code / n % n), LetterId(code / n / n)];
                let o = orbit_word(&a, lang, &u).unwrap();
                assert_eq!(node_set(&o), brute_orbit(&a, &blocks, lead, &u), "{name} {lang:?} {u:?}");
            }
        }
    }
}

#[test]
fn principal_left_ideal_requires_lead_block() {
    let a = corpus_get("right-ideal").unwrap();
    let p = StateSeq::single(a.state("p").unwrap());
    let o = orbit_word(&a, &GenLang::PrincipalLeftIdeal(p), &word(&a, "bb")).unwrap();
    assert_eq!(node_set(&o), words(&a, &["bb"]));
    let o = orbit_word(&a, &GenLang::FullStar, &word(&a, "bb")).unwrap();
    assert_eq!(o.len(), 3);
}

#[test]
fn isomorphism_examples() {
    let a = corpus_get("adding-machine").unwrap();
    let o1 = orbit_word(&a, &GenLang::FullStar, &word(&a, "00")).unwrap();
    let o2 = orbit_word(&a, &GenLang::FullStar, &word(&a, "01")).unwrap();
    assert_eq!(
        orbital_transducer_iso(&o1, &o2).unwrap(),
        IsoResult::NotIso {
            path: vec![0, 0],
            mismatch: Mismatch::Output
        }
    );
    assert_eq!(
        orbital_transducer_iso(&o1, &o1).unwrap(),
        IsoResult::Iso((0..4).map(|i| (i, i)).collect())
    );
    let r = corpus_get("right-ideal").unwrap();
    let o1 = orbit_word(&r, &GenLang::FullStar, &word(&r, "ab")).unwrap();
    let o2 = orbit_word(&r, &GenLang::FullStar, &word(&r, "aab")).unwrap();
    assert!(matches!(orbital_transducer_iso(&o1, &o2).unwrap(), IsoResult::Iso(m) if m.len() == 2));
    let o1 = orbit_word(&r, &GenLang::FullStar, &word(&r, "bb")).unwrap();
    let o2 = orbit_word(&r, &GenLang::FullStar, &word(&r, "bbb")).unwrap();
    match orbital_transducer_iso(&o1, &o2).unwrap() {
        IsoResult::NotIso { path, mismatch } => {
            assert_eq!(path, vec![0, 0, 0]);
            assert_eq!(mismatch, Mismatch::Output);
        }
        IsoResult::Iso(_) => panic!("orbits of different size"),
    }
    let other = orbit_word(&r, &GenLang::FStar(vec![StateSeq::single(StateId(0))]), &word(&r, "bb")).unwrap();
    assert!(matches!(orbital_transducer_iso(&o1, &other), Err(Error::Precondition(_))));
}

#[test]
fn extension_examples() {
    let a = corpus_get("adding-machine").unwrap();
    assert_eq!(
        extend_orbit(&a, &GenLang::FullStar, &[], 3).unwrap(),
        Extension::Found {
            x: word(&a, "0"),
            size_before: 1,
            size_after: 2
        }
    );
    let d = corpus_get("grigorchuk-dual").unwrap();
    assert!(matches!(extend_orbit(&d, &GenLang::FullStar, &[], 4).unwrap(), Extension::Found { .. }));
    let full = word(&a, "000");
    assert!(matches!(
        extend_orbit(&a, &GenLang::FullStar, &full, 0).unwrap(),
        Extension::NotFoundWithinBudget { .. }
    ));
}

#[test]
fn witness_examples() {
    let a = corpus_get("adding-machine").unwrap();
    match witness_search(&a, &GenLang::FullStar, 8, 3).unwrap() {
        WitnessOutcome::Certificate(c) => {
            let sizes: Vec<usize> = c.chain.iter().map(|(_, s)| *s).collect();
            assert_eq!(sizes, vec![1, 2, 4, 8]);
            let ws: Vec<Word> = c.chain.iter().map(|(w, _)| w.clone()).collect();
            assert_eq!(ws, vec![vec![], word(&a, "0"), word(&a, "00"), word(&a, "000")]);
        }
        other => panic!("{other:?}"),
    }
    let t = corpus_get("t1").unwrap();
    assert!(matches!(
        witness_search(&t, &GenLang::FullStar, 100, 6).unwrap(),
        WitnessOutcome::Stalled { .. }
    ));
    match witness_search(&t, &GenLang::FullStar, 1, 6).unwrap() {
        WitnessOutcome::Certificate(c) => assert_eq!(c.chain, vec![(vec![], 1)]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn periodic_orbits() {
    let m = corpus_get("mixed").unwrap();
    match orbit_up(&m, &GenLang::FullStar, &up(&m, "1'|0"), 1000).unwrap() {
        UpOrbit::Finite(o) => {
            let set: BTreeSet<UPWord> = o.into_iter().collect();
            assert_eq!(set, BTreeSet::from([up(&m, "1'|0"), up(&m, "0'|0")]));
        }
        other => panic!("{other:?}"),
    }
    let id = corpus_get("identity").unwrap();
    let x = up(&id, "01|1");
    assert_eq!(orbit_up(&id, &GenLang::FullStar, &x, 10).unwrap(), UpOrbit::Finite(vec![x]));
    let d = corpus_get("grigorchuk-dual").unwrap();
    match orbit_up(&d, &GenLang::FullStar, &up(&d, "|b"), 1000).unwrap() {
        UpOrbit::Finite(o) => assert_eq!(o.len(), 5),
        other => panic!("{other:?}"),
    }
    let a = corpus_get("adding-machine").unwrap();
    assert!(matches!(
        orbit_up(&a, &GenLang::FullStar, &up(&a, "|0"), 50).unwrap(),
        UpOrbit::ExceededBudget { .. }
    ));
}

#[test]
fn certificates_for_infinite_periodic_orbits() {
    let a = corpus_get("adding-machine").unwrap();
    assert_eq!(
        certify_infinite_up(&a, &up(&a, "|0"), 16, 10).unwrap(),
        UpCertificate::Certified { prefix_len: 4, size: 16 }
    );
    assert_eq!(
        certify_infinite_up(&a, &up(&a, "|0"), 1, 10).unwrap(),
        UpCertificate::Certified { prefix_len: 0, size: 1 }
    );
    let m = corpus_get("mixed").unwrap();
    assert!(matches!(
        certify_infinite_up(&m, &up(&m, "|0'1'"), 8, 12).unwrap(),
        UpCertificate::Certified { size, .. } if size >= 8
    ));
    let t = corpus_get("t1").unwrap();
    assert!(matches!(
        certify_infinite_up(&t, &up(&t, "|a"), 4, 4),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn orbital_paths() {
    let a = corpus_get("adding-machine").unwrap();
    match orbit_path_search(&a, &GenLang::FullStar, &word(&a, "000"), 7, 10_000).unwrap() {
        PathOutcome::Found(p) => {
            assert_eq!(p.nodes.len(), 8);
            let distinct: BTreeSet<_> = p.nodes.iter().collect();
            assert_eq!(distinct.len(), 8);
        }
        other => panic!("{other:?}"),
    }
    match orbit_path_search(&a, &GenLang::FullStar, &word(&a, "000"), 0, 10).unwrap() {
        PathOutcome::Found(p) => assert_eq!(p.nodes, vec![word(&a, "000")]),
        other => panic!("{other:?}"),
    }
    let t = corpus_get("t1").unwrap();
    for len in 0..=6u32 {
        for code in 0..2u32.pow(len) {
            let u: Word = (0..len).map(|i| LetterId((code >> i) & 1)).collect();
            assert_eq!(
                orbit_path_search(&t, &GenLang::FullStar, &u, 10, 100_000).unwrap(),
                PathOutcome::NotFound
            );
        }
    }
}

#[test]
fn oracle_backends_reject_full_state_languages() {
    let f = corpus_get("fig2").unwrap();
    assert!(matches!(
        orbit_word(&f, &GenLang::FullStar, &word(&f, "0")),
        Err(Error::Unsupported(_))
    ));
}

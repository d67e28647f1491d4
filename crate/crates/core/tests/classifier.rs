use orbitkit::action::{parse_word, UPWord};
use orbitkit::classifier::{
    classify_letters, extract_periodic_finite_orbit, predict_periodic_orbit, ExtractOutcome, LetterClassification,
    Prediction,
};
use orbitkit::corpus::{corpus_get, random_reversible_g_automaton};
use orbitkit::orbits::{certify_infinite_up, orbit_up, GenLang, UpCertificate, UpOrbit};
use orbitkit::{Automaton, Error, LetterId};

fn up(a: &Automaton, x: &str) -> UPWord {
    UPWord::parse(a, x).unwrap()
}

/// Reversible G-automata that are not bi-reversible, by seed.
fn non_bireversible(count: usize) -> Vec<Automaton> {
    (0u64..)
        .map(|seed| random_reversible_g_automaton(seed, 3, 2 + (seed % 2) as usize))
        .filter(|a| !a.classify().unwrap().bi_reversible)
        .take(count)
        .collect()
}

#[test]
fn mixed_automaton_is_inapplicable() {
    let m = corpus_get("mixed").unwrap();
    match classify_letters(&m).unwrap() {
        LetterClassification::Inapplicable { failing } => assert!(failing.contains("not invertible")),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        predict_periodic_orbit(&m, &up(&m, "|0")).unwrap(),
        Prediction::Inapplicable { .. }
    ));
}

#[test]
fn bireversible_automaton_has_no_infinite_letters() {
    let id = corpus_get("identity").unwrap();
    match classify_letters(&id).unwrap() {
        LetterClassification::Applicable { gamma, .. } => assert!(gamma.is_empty()),
        other => panic!("{other:?}"),
    }
    assert_eq!(predict_periodic_orbit(&id, &up(&id, "|01")).unwrap(), Prediction::NoPrediction);
}

#[test]
fn non_bireversible_components_have_at_least_two_letters() {
    for a in non_bireversible(20) {
        let LetterClassification::Applicable { gamma, components } = classify_letters(&a).unwrap() else {
            panic!("reversible G-automata are applicable");
        };
        assert!(gamma.len() >= 2, "{}", a.name());
        for c in components.iter().filter(|c| !c.bi_reversible) {
            assert!(c.letters.len() >= 2);
        }
    }
}

#[test]
fn predicted_infinite_orbits_are_confirmed() {
    for a in non_bireversible(8) {
        let LetterClassification::Applicable { gamma, .. } = classify_letters(&a).unwrap() else { unreachable!() };
        let g = gamma[0];
        let x = UPWord::periodic(&[g]).unwrap();
        assert_eq!(
            predict_periodic_orbit(&a, &x).unwrap(),
            Prediction::PredictInfinite { letter: g }
        );
        let size_target = 32;
        assert!(
            matches!(
                certify_infinite_up(&a, &x, size_target, 12).unwrap(),
                UpCertificate::Certified { size, .. } if size >= size_target
            ),
            "{}",
            a.name()
        );
        assert!(matches!(
            orbit_up(&a, &GenLang::FullStar, &x, 2_000).unwrap(),
            UpOrbit::ExceededBudget { .. }
        ));
    }
}

#[test]
fn prediction_uses_period_letters() {
    let a = non_bireversible(1).remove(0);
    let LetterClassification::Applicable { gamma, components } = classify_letters(&a).unwrap() else { unreachable!() };
    let outside: Vec<LetterId> = components
        .iter()
        .filter(|c| c.bi_reversible)
        .flat_map(|c| c.letters.clone())
        .collect();
    if let Some(&c) = outside.first() {
        let x = UPWord::new(&[gamma[0]], &[c]).unwrap();
        assert_eq!(predict_periodic_orbit(&a, &x).unwrap(), Prediction::NoPrediction);
        let y = UPWord::new(&[], &[c, gamma[0]]).unwrap();
        assert_eq!(
            predict_periodic_orbit(&a, &y).unwrap(),
            Prediction::PredictInfinite { letter: gamma[0] }
        );
    }
}

#[test]
fn extraction_examples() {
    let m = corpus_get("mixed").unwrap();
    match extract_periodic_finite_orbit(&m, &up(&m, "1'|0"), 1000, None).unwrap() {
        ExtractOutcome::Extracted(e) => {
            assert_eq!(e.u, parse_word(&m, "1'").unwrap());
            assert_eq!(e.v, parse_word(&m, "0").unwrap());
            assert!(e.verified);
            assert!(e.periodic.is_none());
            assert!(e.covers_recurrent_letters);
        }
        other => panic!("{other:?}"),
    }
    let d = corpus_get("grigorchuk-dual").unwrap();
    match extract_periodic_finite_orbit(&d, &up(&d, "|b"), 1000, None).unwrap() {
        ExtractOutcome::Extracted(e) => {
            assert!(e.u.is_empty());
            assert!(e.verified);
            assert_eq!(e.periodic.map(|p| p.verified), Some(true));
        }
        other => panic!("{other:?}"),
    }
    let id = corpus_get("identity").unwrap();
    match extract_periodic_finite_orbit(&id, &up(&id, "|0"), 10, None).unwrap() {
        ExtractOutcome::Extracted(e) => {
            assert!(e.u.is_empty());
            assert_eq!(e.v, parse_word(&id, "0").unwrap());
        }
        other => panic!("{other:?}"),
    }
    let a = corpus_get("adding-machine").unwrap();
    assert!(matches!(
        extract_periodic_finite_orbit(&a, &up(&a, "|0"), 100, None),
        Err(Error::Budget(_))
    ));
}

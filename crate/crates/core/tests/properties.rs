use std::collections::HashMap;

use nilcube::certificates::{apply_functional, apply_reducer, certify_independence, Functional, FunctionalKind, FunctionalValue, Reducer};
use nilcube::elements::{canonicalize, generate_S};
use nilcube::tables::{paper_table, B1d};
use nilcube::{EchelonSystem, Element, FieldSpec, Multidegree, Word};
use proptest::prelude::*;

fn field(p: u32) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_differs_by_an_identity(
        p in prop::sample::select(vec![0u32, 2, 3, 5]),
        letters in prop::collection::vec(1u8..=3, 1..=7),
    ) {
        let g = Element::from_word(Word::from(letters.as_slice()), field(p));
        let diff = canonicalize(&g).sub(&g).unwrap();
        if !diff.is_zero() {
            let es = EchelonSystem::for_component(g.mdeg(), field(p)).unwrap();
            prop_assert!(es.membership(&diff).unwrap());
        }
    }

    #[test]
    fn reduction_is_idempotent_and_kills_identities(
        p in prop::sample::select(vec![0u32, 2, 3, 5]),
        counts in prop::collection::vec(1u32..=3, 1..=3),
        pick in any::<prop::sample::Index>(),
    ) {
        let m = Multidegree::new(counts);
        let es = EchelonSystem::for_component(&m, field(p)).unwrap();
        let s = generate_S(&m, field(p)).unwrap();
        if !s.is_empty() {
            let t = pick.get(&s);
            prop_assert!(es.reduce(t).unwrap().is_zero());
        }
        let w = Element::from_word(es.index().words()[0].clone(), field(p));
        let once = es.reduce(&w).unwrap();
        prop_assert_eq!(es.reduce(&once).unwrap(), once);
    }

    #[test]
    fn tables_are_bases(
        p in prop::sample::select(vec![0u32, 2, 3, 5]),
        counts in prop::collection::vec(1u32..=3, 1..=4),
    ) {
        let m = Multidegree::new(counts);
        prop_assume!(m.word_count() <= 3000);
        let es = EchelonSystem::for_component(&m, field(p)).unwrap();
        let t = paper_table(field(p), &m).unwrap();
        prop_assert!(es.is_quotient_basis(&t.words).unwrap());
    }
}

fn zero(v: FunctionalValue) -> bool {
    match v {
        FunctionalValue::Single(s) => s.is_zero(),
        FunctionalValue::Pair(a, b) => a.is_zero() && b.is_zero(),
    }
}

#[test]
fn psi_vanishes_on_identities_up_to_five_letters() {
    let f = field(2);
    let psi = Functional::new(FunctionalKind::PsiCount, f).unwrap();
    let m = Multidegree::new(vec![2, 2, 1, 1, 1]);
    for t in generate_S(&m, f).unwrap() {
        assert!(zero(apply_functional(&psi, &t).unwrap()));
    }
}

#[test]
fn reducers_map_identities_into_identities() {
    let f = field(3);
    let mut systems: HashMap<Vec<u32>, EchelonSystem> = HashMap::new();
    for counts in [vec![3, 3], vec![3, 1, 1, 1], vec![2, 2, 1, 1], vec![3, 2, 1, 1], vec![3, 3, 1]] {
        let m = Multidegree::new(counts);
        for k in 1..=m.len() as u8 {
            let r = if m.get(k) == 3 { Reducer::PiSymmetrize(k) } else { Reducer::PhiDelete(k) };
            for t in generate_S(&m, f).unwrap() {
                let img = apply_reducer(r, &t).unwrap();
                if img.is_zero() {
                    continue;
                }
                let key = img.mdeg().trimmed().to_vec();
                let es = systems
                    .entry(key)
                    .or_insert_with(|| EchelonSystem::for_component(img.mdeg(), f).unwrap());
                assert!(es.membership(&img).unwrap(), "{r:?} on {m}");
            }
        }
    }
}

#[test]
fn certificates_agree_with_gauss() {
    for d in 4..=6 {
        for p in [2u32, 3] {
            let table = B1d(p, d).unwrap();
            let smaller = B1d(p, d - 1).unwrap();
            let cert = certify_independence(&table, Some(&smaller.words)).unwrap();
            let es = EchelonSystem::for_component(&table.mdeg, field(p)).unwrap();
            let gauss = es.quotient_rank(&table.words).unwrap() == table.words.len();
            // A functional certificate may only miss independence, never invent it.
            assert!(!cert.independent || gauss, "p={p} d={d}");
            if d == 6 {
                assert!(cert.independent);
            }
        }
    }
}

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use unibraid::cabling::{cable_nondyn, cable_second_return, collapse};
use unibraid::perm::{
    from_itinerary, is_reconnectable_nondyn, parse_cyclic, print_cyclic, rho, to_itinerary, Symbol,
};
use unibraid::quad::is_admissible;
use unibraid::{generate_chain, Itinerary, UnimodalPermutation};

const HEADS: [&str; 5] = ["1001C", "10011C", "100111C", "1001111C", "10011001C"];

fn all_cyclic_unimodal(n: usize) -> Vec<UnimodalPermutation> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for v in 0..n - 1 {
            if mask >> v & 1 == 1 {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        let mut images = left;
        images.push(n - 1);
        images.extend(right.into_iter().rev());
        if let Ok(u) = UnimodalPermutation::from_images(images) {
            if u.is_cyclic() {
                out.push(u);
            }
        }
    }
    out
}

fn all_words(n: usize) -> impl Iterator<Item = Itinerary> {
    (0u32..(1 << (n - 1))).map(move |mask| {
        let mut w: Vec<Symbol> =
            (0..n - 1).map(|k| if mask >> k & 1 == 1 { Symbol::One } else { Symbol::Zero }).collect();
        w.push(Symbol::Critical);
        Itinerary(w)
    })
}

#[test]
fn itineraries_match_enumeration() {
    for n in 1..=11 {
        let perms = all_cyclic_unimodal(n);
        let mut by_word = BTreeMap::new();
        for u in &perms {
            let w = to_itinerary(u).unwrap();
            assert_eq!(&from_itinerary(&w).unwrap(), u, "{w}");
            assert!(by_word.insert(w.to_string(), u.clone()).is_none(), "two orbits share {w}");
        }
        for w in all_words(n) {
            match from_itinerary(&w) {
                Ok(u) => assert_eq!(by_word.get(&w.to_string()), Some(&u)),
                Err(_) => assert!(!by_word.contains_key(&w.to_string()), "{w} rejected"),
            }
        }
    }
}

#[test]
fn admissible_words_are_realisable() {
    // Periods below 3 have no interior fold.
    for n in 3..=12 {
        for w in all_words(n) {
            assert_eq!(is_admissible(&w), from_itinerary(&w).is_ok(), "{w}");
        }
    }
}

#[test]
fn cyclic_round_trip() {
    for n in 1..=9 {
        for u in all_cyclic_unimodal(n) {
            let text = print_cyclic(&u).unwrap();
            assert_eq!(parse_cyclic(&text).unwrap(), u);
            assert_eq!(u.to_string(), text);
        }
    }
}

#[test]
fn rho_is_additive() {
    for n in 3..=9 {
        for u in all_cyclic_unimodal(n) {
            for i in 1..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let whole = rho(&u, i, k).unwrap();
                        assert_eq!(whole, rho(&u, i, j).unwrap() + rho(&u, j, k).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn construction_outputs_collapse_to_inputs() {
    let mut built = 0;
    for n in 3..=10 {
        for u in all_cyclic_unimodal(n) {
            if !is_reconnectable_nondyn(&u).unwrap().is_reconnectable() {
                assert!(cable_nondyn(&u).is_err());
                continue;
            }
            let Ok(pair) = cable_nondyn(&u) else { continue };
            let times = u.cyclic().unwrap().times().to_vec();
            assert_eq!(collapse(&pair.minus, n).unwrap(), times);
            assert_eq!(collapse(&pair.plus, n).unwrap(), times);
            built += 1;
            if let Ok(next) = cable_second_return(&pair) {
                let p = pair.period();
                assert_eq!(collapse(&next.minus, p).unwrap(), pair.minus.cyclic().unwrap().times());
                assert_eq!(collapse(&next.plus, p).unwrap(), pair.plus.cyclic().unwrap().times());
            }
        }
    }
    assert!(built > 50, "only {built} constructions");
}

#[test]
fn chain_levels_collapse() {
    for head in HEADS {
        let h = from_itinerary(&head.parse().unwrap()).unwrap();
        let chain = generate_chain(&h, 3).unwrap();
        let mut prev = (h.cyclic().unwrap().times().to_vec(), h.cyclic().unwrap().times().to_vec());
        for pair in &chain.pairs {
            let n = prev.0.len();
            assert_eq!(collapse(&pair.minus, n).unwrap(), prev.0);
            assert_eq!(collapse(&pair.plus, n).unwrap(), prev.1);
            prev = (
                pair.minus.cyclic().unwrap().times().to_vec(),
                pair.plus.cyclic().unwrap().times().to_vec(),
            );
        }
        let periods: BTreeSet<usize> = chain.pairs.iter().map(|p| p.period()).collect();
        assert_eq!(periods.len(), 4);
    }
}

fn cyclic_strategy() -> impl Strategy<Value = UnimodalPermutation> {
    (3usize..=14).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n - 1).prop_filter_map("not cyclic", move |bits| {
            let mut w: Vec<Symbol> = bits.iter().map(|&b| if b { Symbol::One } else { Symbol::Zero }).collect();
            w.push(Symbol::Critical);
            from_itinerary(&Itinerary(w)).ok()
        })
    })
}

proptest! {
    #[test]
    fn itinerary_round_trip(u in cyclic_strategy()) {
        let w = to_itinerary(&u).unwrap();
        prop_assert_eq!(from_itinerary(&w).unwrap(), u);
    }
}

use std::cmp::Ordering;

use unibraid::perm::{kneading_cmp, Symbol};
use unibraid::quad::{
    is_admissible, kneading, superattracting_parameter, superattracting_parameter_in, QuadError,
    FULL_BRACKET, MAX_RESIDUAL,
};
use unibraid::Itinerary;

struct Row {
    period: usize,
    a: f64,
    itinerary: Itinerary,
}

fn table() -> Vec<Row> {
    include_str!("data/parameters.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            Row { period: f[1].parse().unwrap(), a: f[2].parse().unwrap(), itinerary: f[3].parse().unwrap() }
        })
        .collect()
}

fn words(n: usize) -> impl Iterator<Item = Itinerary> {
    (0u32..(1 << (n - 1))).map(move |mask| {
        let mut w: Vec<Symbol> =
            (0..n - 1).map(|k| if mask >> k & 1 == 1 { Symbol::One } else { Symbol::Zero }).collect();
        w.push(Symbol::Critical);
        Itinerary(w)
    })
}

#[test]
fn table_values() {
    let rows = table();
    assert_eq!(rows.len(), 40);
    let mut strict = 0;
    let mut found = Vec::new();
    for row in &rows {
        let q = superattracting_parameter(&row.itinerary).unwrap();
        assert_eq!(q.period, row.period);
        assert!(q.residual < MAX_RESIDUAL);
        assert_eq!(q.kneading(), row.itinerary);
        if (q.a - row.a).abs() < 1e-9 {
            strict += 1;
        }
        found.push(q.a);
    }
    // Two period-18 rows of head 10011C carry each other's values.
    assert_eq!(strict, 38);
    for row in &rows {
        assert!(found.iter().any(|a| (a - row.a).abs() < 1e-9), "{} unmatched", row.a);
    }
}

#[test]
fn swapped_rows_are_the_period_18_pair() {
    let minus = superattracting_parameter(&"10011010010110110C".parse().unwrap()).unwrap();
    let plus = superattracting_parameter(&"10011110010110110C".parse().unwrap()).unwrap();
    assert!((minus.a - 1.91060625301).abs() < 1e-9);
    assert!((plus.a - 1.90398296779).abs() < 1e-9);
}

#[test]
fn table_order_follows_kneading_order() {
    let rows = table();
    let solved: Vec<f64> = rows.iter().map(|r| superattracting_parameter(&r.itinerary).unwrap().a).collect();
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            let by_word = kneading_cmp(rows[i].itinerary.symbols(), rows[j].itinerary.symbols());
            assert_eq!(by_word, solved[i].total_cmp(&solved[j]), "{} vs {}", rows[i].itinerary, rows[j].itinerary);
        }
    }
}

#[test]
fn parameters_are_monotone_in_kneading_order() {
    for n in 3..=12 {
        let mut solved: Vec<(f64, Itinerary)> = words(n)
            .filter(is_admissible)
            .map(|w| (superattracting_parameter_in(&w, FULL_BRACKET).unwrap().a, w))
            .collect();
        solved.sort_by(|x, y| x.0.total_cmp(&y.0));
        for pair in solved.windows(2) {
            assert!(pair[0].0 < pair[1].0);
            assert_eq!(kneading_cmp(pair[0].1.symbols(), pair[1].1.symbols()), Ordering::Less);
        }
    }
}

#[test]
fn kneading_round_trip() {
    for n in 3..=14 {
        for w in words(n).filter(is_admissible) {
            let q = superattracting_parameter_in(&w, FULL_BRACKET).unwrap();
            assert_eq!(q.kneading(), w);
            // In plain f64 the last iterate only lands near 0.
            let head = kneading(q.a, n - 1).unwrap();
            assert_eq!(head.symbols(), &w.symbols()[..n - 1]);
        }
    }
}

#[test]
fn rejects_bad_words() {
    assert!(matches!(superattracting_parameter(&"11C".parse().unwrap()), Err(QuadError::Inadmissible(_))));
    assert!(matches!(superattracting_parameter(&"1".parse().unwrap()), Err(QuadError::NotPeriodic(_))));
    // Period two sits left of the default bracket.
    assert!(matches!(superattracting_parameter(&"1C".parse().unwrap()), Err(QuadError::NoBracket { .. })));
}

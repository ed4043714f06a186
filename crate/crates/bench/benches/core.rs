use criterion::{black_box, criterion_group, criterion_main, Criterion};
use unibraid::braid::{normal_form, unimodal_braid, verify_pair};
use unibraid::henon::{continue_isotracal, scatter, solve_isotracal_point, ContinuationOptions, ScatterSpec};
use unibraid::perm::from_itinerary;
use unibraid::quad::superattracting_parameter;
use unibraid::{generate_chain, EquivalencePair};

const LONG: &str = "100110011100110010011011001101100110C";

fn deepest_pair() -> EquivalencePair {
    let head = from_itinerary(&"10011001C".parse().unwrap()).unwrap();
    generate_chain(&head, 3).unwrap().pairs.pop().unwrap()
}

fn chains(c: &mut Criterion) {
    let head = from_itinerary(&"10011001C".parse().unwrap()).unwrap();
    c.bench_function("generate_chain depth 3", |b| b.iter(|| generate_chain(black_box(&head), 3).unwrap()));
}

fn braids(c: &mut Criterion) {
    let pair = deepest_pair();
    let word = unimodal_braid(&pair.minus).concat(&unimodal_braid(&pair.plus).inverse()).unwrap();
    c.bench_function("normal_form 37 strands", |b| b.iter(|| normal_form(black_box(&word))));
    c.bench_function("verify_pair period 37", |b| b.iter(|| verify_pair(black_box(&pair)).unwrap()));
}

fn quadratic(c: &mut Criterion) {
    let word = LONG.parse().unwrap();
    c.bench_function("superattracting_parameter period 37", |b| {
        b.iter(|| superattracting_parameter(black_box(&word)).unwrap())
    });
}

fn henon(c: &mut Criterion) {
    let a = superattracting_parameter(&LONG.parse().unwrap()).unwrap().a;
    c.bench_function("solve_isotracal_point period 37", |b| {
        b.iter(|| solve_isotracal_point(37, black_box((a, a, 0.0)), 0.0).unwrap())
    });
    let q = |w: &str| superattracting_parameter(&w.parse().unwrap()).unwrap().a;
    let (am, ap) = (q("1001010010C"), q("1001110010C"));
    c.bench_function("continue_isotracal period 11", |b| {
        b.iter(|| continue_isotracal(am, ap, 11, &ContinuationOptions::default()).unwrap())
    });
    let spec = ScatterSpec { a_res: 100, b_res: 50, ..Default::default() };
    let mut group = c.benchmark_group("scatter");
    group.sample_size(10);
    group.bench_function("100x50 period 8", |b| b.iter(|| scatter(black_box(&spec))));
    group.finish();
}

criterion_group!(benches, chains, braids, quadratic, henon);
criterion_main!(benches);

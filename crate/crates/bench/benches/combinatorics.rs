use criterion::{black_box, criterion_group, criterion_main, Criterion};
use expcomb::{
    angled_internal, bifurcate_at_height, enumerate_intermediate, exhaustive_check, internal_address, itinerary,
    kneading, tune, Address, EnumerationBounds, HyperbolicComponent, Rational64, TuningBlockTable, TuningVariant,
};

fn addr(s: &str) -> Address {
    s.parse().unwrap()
}

fn itineraries(c: &mut Criterion) {
    let s = addr("0 1 1 0 1/2 inf");
    let r = addr("0 2 0 1 (0 1 1 0 0 2)");
    c.bench_function("itinerary", |b| b.iter(|| itinerary(black_box(&r), black_box(&s))));
    c.bench_function("kneading", |b| b.iter(|| kneading(black_box(&s)).unwrap()));
}

fn components(c: &mut Criterion) {
    let s = addr("0 1 1 0 1/2 inf");
    c.bench_function("characteristic pair", |b| {
        b.iter(|| HyperbolicComponent::from_address(black_box(&s)).unwrap().characteristic().unwrap())
    });
    let w = HyperbolicComponent::period_one();
    c.bench_function("bifurcate at height", |b| {
        b.iter(|| bifurcate_at_height(black_box(&w), Rational64::new(5, 11)).unwrap())
    });
}

fn addresses(c: &mut Criterion) {
    let s = addr("0 3 0 1/2 inf");
    let im = s.as_intermediate().unwrap().clone();
    c.bench_function("internal address", |b| b.iter(|| internal_address(black_box(&s)).unwrap()));
    c.bench_function("angled internal address", |b| b.iter(|| angled_internal(black_box(&im)).unwrap()));
}

fn tuning(c: &mut Criterion) {
    let base: HyperbolicComponent = "0 3 0 1/2 inf".parse().unwrap();
    let table = TuningBlockTable::new(base).unwrap();
    let inputs: Vec<Address> = enumerate_intermediate(EnumerationBounds::new(4, 1)).into_iter().map(Address::Intermediate).collect();
    c.bench_function("tune enumeration", |b| {
        b.iter(|| inputs.iter().map(|r| tune(&table, r, TuningVariant::Upper).unwrap()).collect::<Vec<_>>())
    });
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for suite in ["char-pair-laws", "nested-wakes", "essential-orbits"] {
        group.bench_function(suite, |b| b.iter(|| exhaustive_check(suite, EnumerationBounds::new(4, 1)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, itineraries, components, addresses, tuning, oracles);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, Criterion};
use msod_bench::{action, linear, scenario};
use msod_core::g422;
use msod_core::modules::{check_semiorthogonal_sequence, ext_profile};
use msod_core::rep::character_table;
use msod_core::torus::{msod_census, orbit_count};
use msod_core::verify::{run_suite_with, Fixtures};

fn groups(c: &mut Criterion) {
    c.bench_function("g422 character table", |b| {
        let g = g422::group().unwrap();
        b.iter(|| character_table(&g).unwrap())
    });
}

fn modules(c: &mut Criterion) {
    let l = linear("g422-local");
    let phi2 = l.module("Phi2").unwrap().clone();
    let phi3 = l.module("Phi3").unwrap().clone();
    c.bench_function("ext_profile(Phi2, Phi3)", |b| b.iter(|| ext_profile(&phi2, &phi3).unwrap()));
    let objects = l.collection_modules();
    c.bench_function("six-object collection", |b| {
        b.iter(|| check_semiorthogonal_sequence(&objects).unwrap())
    });
}

fn tori(c: &mut Criterion) {
    let a = action("type-c", "A");
    c.bench_function("type C census at torsion 4", |b| b.iter(|| msod_census(&a.action, 4).unwrap()));
    c.bench_function("type C orbits on 4-torsion", |b| b.iter(|| orbit_count(&a.action, 4).unwrap()));
    let n6 = action("surfaces", "n6");
    c.bench_function("n = 6 census", |b| b.iter(|| msod_census(&n6.action, 12).unwrap()));
}

fn suites(c: &mut Criterion) {
    let fixtures = Fixtures::bundled();
    let spec = scenario("g422-local");
    c.bench_function("ext-table suite", |b| {
        b.iter(|| run_suite_with(&spec, "ext-table", None, &fixtures).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groups, modules, tori, suites
}
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use finscheme::catalog::{boolean, chain, zmod};
use finscheme::finset::{bounded_subcanonical, families_up_to_symmetry, simplex_space, FinSet};
use finscheme::semiring::localize;
use finscheme::site::theorem_a_check;
use finscheme::spectra::{congruence_spectrum, prime_spectrum, CongruenceFlavor};

fn spectra(c: &mut Criterion) {
    let cube = boolean().product(&boolean()).product(&boolean());
    let cases = [("Z6", zmod(6)), ("Chain6", chain(6)), ("B^3", cube)];
    let mut g = c.benchmark_group("spectra");
    for (name, r) in &cases {
        g.bench_with_input(BenchmarkId::new("prime", name), r, |b, r| b.iter(|| prime_spectrum(black_box(r))));
        g.bench_with_input(BenchmarkId::new("weak", name), r, |b, r| {
            b.iter(|| congruence_spectrum(black_box(r), CongruenceFlavor::Weak))
        });
        g.bench_with_input(BenchmarkId::new("theorem-a", name), r, |b, r| b.iter(|| theorem_a_check(black_box(r))));
    }
    g.finish();
}

fn localization(c: &mut Criterion) {
    let r = zmod(6).product(&chain(3));
    c.bench_function("localize all elements of Z6 x Chain3", |b| {
        b.iter(|| r.elements().map(|h| localize(&r, h).unwrap().semiring.len()).sum::<usize>())
    });
}

fn finite_sets(c: &mut Criterion) {
    c.bench_function("simplex space on 5 vertices", |b| b.iter(|| simplex_space(&FinSet::of_size(black_box(5)))));
    let families = families_up_to_symmetry(3).unwrap();
    c.bench_function("subcanonical families on 3 points", |b| {
        b.iter(|| families.iter().filter(|f| bounded_subcanonical(f, 3)).count())
    });
}

criterion_group!(benches, spectra, localization, finite_sets);
criterion_main!(benches);

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use drw_bench::{dense_element, plane, sample_expr};
use drw_core::dlog_chern::{LineBundleP1, P1Cech};
use drw_core::milnor::{FunctionField, MilnorSymbol};
use drw_core::overconv;
use drw_core::{FiniteField, PrimePower};

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for p in [2, 3, 5] {
        let e = plane(p);
        let expr = sample_expr(&e);
        group.bench_with_input(BenchmarkId::from_parameter(p), &expr, |b, x| b.iter(|| e.normalize(black_box(x), 3).unwrap()));
    }
    group.finish();
}

fn operators(c: &mut Criterion) {
    let e = plane(3);
    let w = dense_element(&e.drw, 3);
    c.bench_function("frobenius", |b| b.iter(|| e.drw.frobenius(black_box(&w)).unwrap()));
    c.bench_function("verschiebung", |b| b.iter(|| e.drw.verschiebung(black_box(&w)).unwrap()));
    c.bench_function("differential", |b| b.iter(|| e.drw.differential(black_box(&w)).unwrap()));
    c.bench_function("geometric_inverse", |b| b.iter(|| overconv::geometric_inverse(&e.drw, black_box(&w), 1).unwrap()));
}

fn milnor(c: &mut Criterion) {
    let k = FunctionField::new(FiniteField::of(3, 2));
    let r = &k.ring;
    let f = k.make(r.from_ints(&[1, 2, 0, 1, 1]), r.from_ints(&[2, 0, 1])).unwrap();
    let g = k.make(r.from_ints(&[0, 1, 1]), r.from_ints(&[1, 1, 0, 0, 0, 1])).unwrap();
    let s = MilnorSymbol::single(vec![f, g]);
    c.bench_function("reciprocity_product", |b| b.iter(|| k.reciprocity_product(black_box(&s)).unwrap()));
}

fn chern(c: &mut Criterion) {
    let cech = P1Cech::new(PrimePower::new(5, 1).unwrap()).unwrap();
    c.bench_function("chern_pairing", |b| {
        b.iter(|| {
            let eta = cech.c1_overconvergent(&LineBundleP1::new(black_box(17)), 3).unwrap();
            cech.pairing(&eta).unwrap()
        })
    });
}

criterion_group!(benches, normalize, operators, milnor, chern);
criterion_main!(benches);

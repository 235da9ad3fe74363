use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use rankdual_core::diagrams::{WeightSystem, YoungDiagram};
use rankdual_core::quot::{intersection_number, IntersectionInstance};
use rankdual_core::schur::{schur_eval, EvalPoint, SchurAt};
use rankdual_core::verlinde::{verlinde, Variant, VerlindeInstance};
use rankdual_core::CycloNum;

fn weights(r: usize, l: usize, texts: &[&str]) -> WeightSystem {
    let t: Vec<String> = texts.iter().map(|s| s.to_string()).collect();
    WeightSystem::parse(&t, r, l).unwrap()
}

fn cyclo_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclo_mul");
    for n in [7u32, 12, 30] {
        let a = &CycloNum::zeta_pow(n, 1) + &CycloNum::from_integer(n, 3);
        let b = &CycloNum::zeta_pow(n, 5) - &CycloNum::zeta_pow(n, 2).inverse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| black_box(&a) * black_box(&b))
        });
    }
    group.finish();
}

fn schur(c: &mut Criterion) {
    let mut group = c.benchmark_group("schur_eval");
    for (r, l) in [(2usize, 3usize), (3, 4), (4, 5)] {
        let n = (r + l) as u32;
        let parts: Vec<usize> = (0..r).map(|i| l - i.min(l)).collect();
        let lam = YoungDiagram::from_parts(&parts, r, l).unwrap();
        let subset: Vec<usize> = (0..r).map(|i| 2 * i % (r + l)).collect();
        let pts = EvalPoint::from_subset(n, &subset);
        group.bench_with_input(BenchmarkId::new("bialternant", format!("{r}x{l}")), &lam, |bench, lam| {
            bench.iter(|| schur_eval(black_box(lam), &pts).unwrap())
        });
        let at = SchurAt::new(pts.clone()).unwrap();
        group.bench_with_input(BenchmarkId::new("cached_vandermonde", format!("{r}x{l}")), &lam, |bench, lam| {
            bench.iter(|| at.eval(black_box(lam)).unwrap())
        });
    }
    group.finish();
}

fn verlinde_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("verlinde_sum");
    group.sample_size(20);
    let cases = [
        ("r2_l1_g2", VerlindeInstance::new(2, WeightSystem::empty(2, 1)).unwrap()),
        ("r2_l3_g2_n2", VerlindeInstance::new(2, weights(2, 3, &["2,1", "3,0"])).unwrap()),
        ("r3_l3_g3_n3", VerlindeInstance::new(3, weights(3, 3, &["2,1,0", "3,1,1", "1,0,0"])).unwrap()),
        ("r4_l4_g2_n2", VerlindeInstance::new(2, weights(4, 4, &["4,2,1,1", "3,3,2,0"])).unwrap()),
    ];
    for (name, inst) in &cases {
        group.bench_function(*name, |bench| bench.iter(|| verlinde(black_box(inst), Variant::Twisted).unwrap()));
    }
    group.finish();
}

fn vafa_intriligator(c: &mut Criterion) {
    let mut group = c.benchmark_group("vafa_intriligator");
    group.sample_size(20);
    let inst = IntersectionInstance::new(0, -6, weights(2, 2, &["1,0", "1,1", "1,0"])).unwrap();
    group.bench_function("r2_l2_three_point", |bench| bench.iter(|| intersection_number(black_box(&inst)).unwrap()));
    group.finish();
}

criterion_group!(benches, cyclo_mul, schur, verlinde_sum, vafa_intriligator);
criterion_main!(benches);

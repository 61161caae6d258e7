use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_bigint::BigInt;
use primavoid::class_groups::class_group;
use primavoid::families::units_lift;
use primavoid::{lemma_witness, FinitePrimeSet, IdealHandle, MonomialOrder, PolyRing, PrimeIdeal, ScalarField};

fn groebner(c: &mut Criterion) {
    let ring = PolyRing::parse(ScalarField::Rationals, &["a", "b", "c", "d"], &[]).unwrap();
    let gens: Vec<_> = ["a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"]
        .iter()
        .map(|s| ring.poly(s).unwrap())
        .collect();
    c.bench_function("groebner cyclic-4 grevlex", |b| {
        b.iter_batched(
            || IdealHandle::new(&ring, gens.clone()).unwrap(),
            |i| i.groebner(MonomialOrder::GRevLex).unwrap(),
            BatchSize::SmallInput,
        )
    });
    let r3 = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z"], &[]).unwrap();
    let gens: Vec<_> = ["x^2 + y*z - 2", "y^2 + x*z - 3", "z^2 + x*y - 5"].iter().map(|s| r3.poly(s).unwrap()).collect();
    c.bench_function("groebner quadrics lex", |b| {
        b.iter_batched(
            || IdealHandle::new(&r3, gens.clone()).unwrap(),
            |i| i.groebner(MonomialOrder::Lex).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn witness(c: &mut Criterion) {
    let ring = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z", "w"], &[]).unwrap();
    let primes = [vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]
        .iter()
        .map(|v| PrimeIdeal::monomial(&ring, v).unwrap())
        .collect();
    let set = FinitePrimeSet::new(primes).unwrap();
    let gens = vec![ring.poly("x + z").unwrap(), ring.poly("y*w + x^2").unwrap()];
    c.bench_function("lemma_witness four primes", |b| {
        b.iter_batched(
            || IdealHandle::new(&ring, gens.clone()).unwrap(),
            |i| lemma_witness(&i, &set).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn arithmetic(c: &mut Criterion) {
    let d = BigInt::from(-100_003);
    c.bench_function("class_group D = -100003", |b| b.iter(|| class_group(&d).unwrap()));
    let f = [2, -3, 1].map(BigInt::from).to_vec();
    let g = [-7, 0, 0, 5].map(BigInt::from).to_vec();
    c.bench_function("units_lift deg 2 / deg 3", |b| b.iter(|| units_lift(&f, &g).unwrap()));
}

criterion_group!(benches, groebner, witness, arithmetic);
criterion_main!(benches);

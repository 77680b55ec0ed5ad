use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mvsp_core::curve::{count_points, fiber_sweep, h_family, EnumBounds};
use mvsp_core::gf::Field;
use mvsp_core::nsg::{weierstrass_generators, NumericalSemigroup};
use mvsp_core::wsg::verify_pole_orders;
use num_bigint::BigUint;

fn field_ops(c: &mut Criterion) {
    let tables = Field::new(2, 1, 10).unwrap();
    let plain = Field::without_tables(2, 1, 10).unwrap();
    for (name, f) in [("mul_tables", &tables), ("mul_no_tables", &plain)] {
        let a = f.element(0x2b5).unwrap();
        let b = f.element(0x13c).unwrap();
        c.bench_function(name, |bch| bch.iter(|| f.mul(black_box(a), black_box(b))));
    }
    let a = tables.element(0x2b5).unwrap();
    let e = BigUint::from(3u32).pow(40);
    c.bench_function("pow_big_exponent", |bch| {
        bch.iter(|| tables.pow(black_box(a), &e))
    });
}

fn point_counting(c: &mut Criterion) {
    let mut g = c.benchmark_group("points");
    g.sample_size(10);
    for (q, n) in [(2u64, 5u32), (2, 7), (3, 3)] {
        let curve = h_family(q, n).unwrap();
        g.bench_function(format!("count_{q}_{n}"), |b| {
            b.iter(|| count_points(&curve, &EnumBounds::default()).unwrap())
        });
        g.bench_function(format!("fibers_{q}_{n}"), |b| {
            b.iter(|| fiber_sweep(&curve, &EnumBounds::default()).unwrap())
        });
    }
    g.finish();
}

fn valuations(c: &mut Criterion) {
    let mut g = c.benchmark_group("valuations");
    g.sample_size(10);
    for (q, n) in [(2u64, 5u32), (3, 3)] {
        let curve = h_family(q, n).unwrap();
        g.bench_function(format!("poles_{q}_{n}"), |b| {
            b.iter(|| verify_pole_orders(&curve, 3).unwrap())
        });
    }
    g.finish();
}

fn semigroups(c: &mut Criterion) {
    let gens = weierstrass_generators(2, 9, 5).unwrap();
    c.bench_function("semigroup_2_9", |b| {
        b.iter(|| NumericalSemigroup::new(black_box(&gens)).unwrap().genus())
    });
}

criterion_group!(benches, field_ops, point_counting, valuations, semigroups);
criterion_main!(benches);

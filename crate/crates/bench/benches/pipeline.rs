use criterion::{black_box, criterion_group, criterion_main, Criterion};
use doodle_core::construct::{hall_witt36, realize_elementary};
use doodle_core::diagram::{borromean, isomorphic, End};
use doodle_core::identity::{bounded_equiv, parse_elementary, weak_reduce, Relation};
use doodle_core::moves::{cobordant, reduce_to_minimal};
use doodle_core::noose::extract;
use doodle_core::Alphabet;

const EX1: &str = "(a,c)^[b] (b,c) (b,a)^[c] (c,a) (c,b)^[a] (a,b)";

fn pipeline(c: &mut Criterion) {
    let al = Alphabet::new(["a", "b", "c"]).unwrap();
    let ex1 = parse_elementary(EX1, &al).unwrap();
    let hw = hall_witt36();
    let hw_id = extract(&hw, End::new(0, 0)).unwrap();
    let b = borromean();

    c.bench_function("construct hall-witt 36", |bn| bn.iter(hall_witt36));
    c.bench_function("realize six-term identity", |bn| {
        bn.iter(|| realize_elementary(black_box(&ex1)).unwrap())
    });
    c.bench_function("extract hall-witt 36", |bn| {
        bn.iter(|| extract(black_box(&hw), End::new(0, 0)).unwrap())
    });
    c.bench_function("reduce hall-witt 36", |bn| {
        bn.iter(|| reduce_to_minimal(black_box(&hw), 0))
    });
    c.bench_function("weak reduce hall-witt identity", |bn| {
        bn.iter(|| weak_reduce(black_box(&hw_id)))
    });
    c.bench_function("isomorphic borromean", |bn| {
        bn.iter(|| isomorphic(black_box(&b), &b.mirror()))
    });
    c.bench_function("equiv search six-term rotations", |bn| {
        let rotated = ex1.apply_move(&doodle_core::MoveDescriptor::Rho).unwrap();
        bn.iter(|| bounded_equiv(&ex1, black_box(&rotated), Relation::Equiv, 10_000).unwrap())
    });
    c.bench_function("cobordant hall-witt vs borromean", |bn| {
        let sw = b.swap_colors(1, 2);
        bn.iter(|| cobordant(black_box(&hw), &sw, 10_000).unwrap())
    });
}

criterion_group!(benches, pipeline);
criterion_main!(benches);

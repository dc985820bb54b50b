use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rfgrowth_core::atlas::{atlas_entry, FamilyId};
use rfgrowth_core::certify::common_multiple;
use rfgrowth_core::groups::{GroupTable, Homomorphism, TargetGroup};
use rfgrowth_core::induction::{coset_structure, induce, rewrite, schreier_generators};
use rfgrowth_core::quotient::{build_catalog, detect, growth, CatalogClass};
use rfgrowth_core::words::ball;
use rfgrowth_core::{Budgets, Presentation};

fn words(c: &mut Criterion) {
    let surface = Presentation::surface(2).unwrap();
    let w = surface.alphabet().parse_word("[a,b][c,d] a d A").unwrap();
    c.bench_function("dehn_reduce_genus2", |b| b.iter(|| surface.dehn_reduce(black_box(&w))));

    let free = Presentation::free(2);
    let mut g = c.benchmark_group("free_ball");
    for m in [4, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| ball(&free, m).unwrap()));
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let budgets = Budgets::default();
    let mut g = c.benchmark_group("group_table");
    for name in ["Sym(4)", "Alt(5)", "GL(2,5)"] {
        let target = TargetGroup::parse(name).unwrap();
        g.bench_function(name, |b| b.iter(|| GroupTable::build(&target, &budgets).unwrap()));
    }
    g.finish();
    c.bench_function("catalog_simple_6048", |b| {
        b.iter(|| build_catalog(CatalogClass::Simple, black_box(6048)).unwrap())
    });
}

fn detection(c: &mut Criterion) {
    let budgets = Budgets::default();
    let free = Presentation::free(2);
    let cat = build_catalog(CatalogClass::All, 200).unwrap();
    let mut g = c.benchmark_group("detect_all");
    for text in ["a^6", "[a,b]", "[[a,b],[a,B]]"] {
        let w = free.alphabet().parse_word(text).unwrap();
        g.bench_function(text, |b| b.iter(|| detect(&w, &free, &cat, &budgets).unwrap()));
    }
    g.finish();

    let gl = build_catalog(CatalogClass::Gl, 200).unwrap();
    let mut g = c.benchmark_group("growth_gl");
    g.sample_size(10);
    for m in [2, 3] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| growth(&free, m, &gl, &budgets).unwrap())
        });
    }
    g.finish();
}

fn certificates(c: &mut Criterion) {
    let free = Presentation::free(2);
    let t: Vec<_> = ["a", "b", "ab", "[a,b]"]
        .iter()
        .map(|s| free.alphabet().parse_word(s).unwrap())
        .collect();
    c.bench_function("common_multiple_4", |b| b.iter(|| common_multiple(black_box(&t), 3, &free).unwrap()));
}

fn induction(c: &mut Criterion) {
    let budgets = Budgets::default();
    let free = Presentation::free(2);
    let target = TargetGroup::parse("Sym(3)").unwrap();
    let images = vec![target.parse_element("(1,2)").unwrap(), target.parse_element("(1,2,3)").unwrap()];
    let h = Homomorphism::new(free.clone(), target, images).unwrap();
    c.bench_function("coset_structure_sym3", |b| b.iter(|| coset_structure(&h, &budgets).unwrap()));

    let cs = coset_structure(&h, &budgets).unwrap();
    let w = free.alphabet().parse_word("(ab)^12 [a,b]^6").unwrap();
    c.bench_function("rewrite_sym3_kernel", |b| b.iter(|| rewrite(&cs, black_box(&w)).unwrap()));

    let field = rfgrowth_core::groups::FiniteField::new(5).unwrap();
    let base = vec![rfgrowth_core::groups::Matrix::identity(&field, 2); schreier_generators(&cs).len()];
    let rep = induce(&cs, base).unwrap();
    c.bench_function("induced_evaluate_sym3", |b| b.iter(|| rep.evaluate(black_box(&w))));
}

fn atlas(c: &mut Criterion) {
    let ids: Vec<FamilyId> = ["C(4,3)", "E8(2)", "Alt(12)", "2A(5,4)"]
        .iter()
        .map(|s| FamilyId::parse(s).unwrap())
        .collect();
    c.bench_function("atlas_entries", |b| b.iter(|| ids.iter().map(atlas_entry).count()));
}

criterion_group!(benches, words, tables, detection, certificates, induction, atlas);
criterion_main!(benches);

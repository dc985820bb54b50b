//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report is always printed.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rfgrowth_core::atlas::{
    bounded_rank_threshold, exact_order, ratio, verify_family_inequalities, FamilyId, FamilyTag, Rational,
    ThresholdScope,
};
use rfgrowth_core::certify::{
    certificate_transfer_check, common_multiple, lcm_length_audit, verify_witness, TransferOutcome,
};
use rfgrowth_core::groups::{FiniteField, GroupDescriptor, GroupElement, GroupTable, Homomorphism, Matrix, TargetGroup};
use rfgrowth_core::induction::{coset_structure, induce, induced_size_bound, rewrite, schreier_generators, size_bound_grid};
use rfgrowth_core::quotient::{
    build_catalog, compare_classes, detect, enumerate_homs, growth, ratio_experiment, verify_minimal, CatalogClass,
    ValueTag,
};
use rfgrowth_core::words::check_small_cancellation;
use rfgrowth_core::{Budgets, Letter, Presentation, Word};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_word(rng: &mut StdRng, rank: usize, len: usize) -> Word {
    loop {
        let w = Word::from_letters((0..len).map(|_| Letter::from_code(rng.random_range(0..2 * rank))));
        if !w.is_empty() {
            return w;
        }
    }
}

fn least_non_divisor(k: u64) -> u64 {
    (2..).find(|d| !k.is_multiple_of(*d)).unwrap()
}

fn criterion_1() -> Outcome {
    let b = Budgets::default();
    let z = Presentation::free(1);
    let a6 = Word::generator(0).pow(6);
    let f2 = Presentation::free(2);
    let comm = f2.alphabet().parse_word("[a,b]").map_err(|e| e.to_string())?;
    let cases = [
        (&z, &a6, CatalogClass::Gl, 200, 4, GroupDescriptor::GL(1, 5)),
        (&z, &a6, CatalogClass::Simple, 200, 5, GroupDescriptor::Cyclic(5)),
        (&f2, &comm, CatalogClass::Simple, 100, 60, GroupDescriptor::Alt(5)),
    ];
    for (p, w, class, limit, want, group) in cases {
        let cat = build_catalog(class, limit).map_err(|e| e.to_string())?;
        let r = detect(w, p, &cat, &b).map_err(|e| e.to_string())?;
        ensure(r.value == want, || format!("{class}: got {} want {want}", r.value))?;
        let got = r.group().map(|g| g.descriptor);
        ensure(got == Some(group), || format!("{class}: witness {got:?}"))?;
        ensure(r.tag() == ValueTag::Exact, || format!("{class}: tag {:?}", r.tag()))?;
        let minimal = verify_minimal(&r, p, &cat, &b).map_err(|e| e.to_string())?;
        ensure(minimal, || format!("{class}: smaller detector found"))?;
    }
    Ok("a^6: GL 4 via GL(1,5), SIMPLE 5 via Cyclic(5); [a,b]: SIMPLE 60 via Alt(5)".into())
}

fn criterion_2() -> Outcome {
    let b = Budgets::default();
    let z = Presentation::free(1);
    let cat = build_catalog(CatalogClass::All, 200).map_err(|e| e.to_string())?;
    let t = growth(&z, 12, &cat, &b).map_err(|e| e.to_string())?;
    for row in &t.rows {
        let want = (1..=row.m as u64).map(least_non_divisor).max().unwrap();
        ensure(row.value == want && row.tag() == ValueTag::Exact, || {
            format!("m = {}: got {} ({:?}) want {want}", row.m, row.value, row.tag())
        })?;
    }
    ensure(t.rows.windows(2).all(|w| w[0].value <= w[1].value), || "not monotone".into())?;
    let cmp = compare_classes(&z, 12, 200, &b).map_err(|e| e.to_string())?;
    for r in &cmp.rows {
        ensure(r.all_le_gl == Some(true) && r.all_le_simple == Some(true), || {
            format!("m = {}: ALL {} GL {} SIMPLE {}", r.m, r.all.0, r.gl.0, r.simple.0)
        })?;
    }
    let values: Vec<u64> = t.rows.iter().map(|r| r.value).collect();
    Ok(format!("D_Z,ALL(1..12) = {values:?}; ALL <= GL and ALL <= SIMPLE on all rows"))
}

fn criterion_3() -> Outcome {
    let b = Budgets::default();
    let mut scanned = 0;
    for n in 2..=5u32 {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = FamilyId::new(FamilyTag::GL, Some(n), Some(q)).map_err(|e| e.to_string())?;
            let order = exact_order(&f).unwrap();
            let qb = BigUint::from(q);
            ensure(qb.pow(n * n - 1) < order && order < qb.pow(n * n), || {
                format!("GL({n},{q}): order {order} outside (q^(n^2-1), q^(n^2))")
            })?;
            let m1 = q.pow(n) - 1;
            if order <= BigUint::from(1_000_000u32) {
                let g = TargetGroup::new(GroupDescriptor::GL(n, q)).map_err(|e| e.to_string())?;
                let scan = g.m1_scan(&b).map_err(|e| e.to_string())?;
                ensure(scan == m1, || format!("GL({n},{q}): scanned m1 {scan} != {m1}"))?;
                scanned += 1;
            }
            let r = ratio(&f, &b);
            ensure(r.tag == "exact" && r.m1 == Some(m1) && r.passes(), || {
                format!("GL({n},{q}): ratio {:?} outside [n-1, n^2/(n-1))", r.value)
            })?;
            let v = r.value.unwrap();
            let (lo, hi) = ((n - 1) as f64, (n * n) as f64 / (n - 1) as f64);
            ensure(lo <= v && v < hi, || format!("GL({n},{q}): ratio {v}"))?;
        }
    }
    let q2 = verify_family_inequalities(&FamilyId::new(FamilyTag::GL, Some(2), Some(2)).unwrap(), &b);
    let note: Vec<&str> = q2.violations().iter().map(|c| c.name.as_str()).collect();
    Ok(format!(
        "24 GL(n,q) entries, m1 scanned for {scanned}; reported for GL(2,2): violated {note:?}"
    ))
}

fn criterion_4() -> Outcome {
    let b = Budgets::default();
    let f2 = Presentation::free(2);
    let t = [Word::generator(0), Word::generator(1)];
    let cm = common_multiple(&t, 3, &f2).map_err(|e| e.to_string())?;
    let comm = Word::commutator(&t[0], &t[1]);
    ensure(cm.word == comm, || format!("cm({{a,b}}) = {}", f2.alphabet().render(&cm.word)))?;
    ensure(verify_witness(&cm).is_valid(), || "witnesses do not verify".into())?;
    let mut homs = 0;
    for g in ["Sym(3)", "Alt(5)"] {
        let table = GroupTable::build(&TargetGroup::parse(g).unwrap(), &b).map_err(|e| e.to_string())?;
        for h in enumerate_homs(&f2, &table, &b).map_err(|e| e.to_string())? {
            homs += 1;
            let out = certificate_transfer_check(&cm, &h);
            ensure(!matches!(out, TransferOutcome::Counterexample { .. }), || format!("counterexample in {g}"))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let size = rng.random_range(1..=8);
        let set: Vec<Word> = (0..size)
            .map(|_| {
                let len = rng.random_range(1..=3);
                random_word(&mut rng, 2, len)
            })
            .collect();
        let cm = common_multiple(&set, 4, &f2).map_err(|e| e.to_string())?;
        ensure(verify_witness(&cm).is_valid(), || "random witness failed".into())?;
        let audit = lcm_length_audit(&set, &cm).map_err(|e| e.to_string())?;
        worst = worst.max(audit.length as f64 / audit.bound as f64);
    }
    Ok(format!(
        "cm({{a,b}}) = [a,b]; {homs} transfer checks, 0 counterexamples; 100 audits, max length/bound {worst:.3}"
    ))
}

fn criterion_5() -> Outcome {
    let b = Budgets::default();
    let f2 = Presentation::free(2);
    let cat = build_catalog(CatalogClass::Gl, 2048).map_err(|e| e.to_string())?;
    let ab = f2.alphabet().parse_word("ab").unwrap();
    let curve = ratio_experiment(&Word::generator(0), &ab, 4, 3, &f2, &cat, &b).map_err(|e| e.to_string())?;
    ensure(curve.truncated_at.is_none() && curve.points.len() == 3, || {
        format!("curve truncated at {:?}", curve.truncated_at)
    })?;
    let c_hat = curve.fitted_constant;
    let mut summary = Vec::new();
    for pt in &curve.points {
        ensure(pt.witnesses_valid, || format!("j = {}: witnesses fail", pt.j))?;
        let bound = c_hat * (ab.len() * pt.j.pow(3)) as f64;
        ensure(pt.eta_length as f64 <= bound + 1e-9, || format!("j = {}: length above fit", pt.j))?;
        let ord = pt.gamma0_image_order.unwrap_or(0);
        ensure(ord > pt.j as u64, || format!("j = {}: image of ab has order {ord}", pt.j))?;
        let r = pt.ratio.filter(|r| r.is_finite()).ok_or(format!("j = {}: no finite ratio", pt.j))?;
        summary.push(format!(
            "j={} |eta|={} G={} ord={} ratio={r:.3}",
            pt.j,
            pt.eta_length,
            pt.group.as_deref().unwrap_or("-"),
            ord
        ));
    }
    Ok(format!("C_hat = {c_hat:.3}; {}", summary.join("; ")))
}

fn criterion_6() -> Outcome {
    let b = Budgets::default();
    let f2 = Presentation::free(2);
    let alpha = f2.alphabet();
    let c2 = TargetGroup::parse("Cyclic(2)").unwrap();
    let cyc = |v| GroupElement::Cyclic { modulus: 2, value: v };
    let h = Homomorphism::new(f2.clone(), c2, vec![cyc(1), cyc(0)]).map_err(|e| e.to_string())?;
    let cs = coset_structure(&h, &b).map_err(|e| e.to_string())?;
    let want: Vec<Word> = ["b", "a^2", "aba^-1"].iter().map(|s| alpha.parse_word(s).unwrap()).collect();
    ensure(schreier_generators(&cs) == want.as_slice(), || "index-2 generators differ".into())?;

    // a surjection onto Sym(3): index 6, rank 7
    let s3 = TargetGroup::parse("Sym(3)").unwrap();
    let table = GroupTable::build(&s3, &b).map_err(|e| e.to_string())?;
    let h = enumerate_homs(&f2, &table, &b)
        .map_err(|e| e.to_string())?
        .find(|h| coset_structure(h, &b).is_ok_and(|cs| cs.index() == 6))
        .ok_or("no surjection onto Sym(3)")?;
    let cs = coset_structure(&h, &b).map_err(|e| e.to_string())?;
    let k = schreier_generators(&cs).len();
    ensure(k == 1 + cs.index(), || format!("rank {k} != 1 + l(k-1)"))?;
    let f3 = FiniteField::new(3).unwrap();
    let mut rng = StdRng::seed_from_u64(6);
    let base: Vec<Matrix> = (0..k)
        .map(|_| loop {
            let m = Matrix::new(&f3, 2, (0..4).map(|_| rng.random_range(0..3)).collect()).unwrap();
            if m.is_invertible() {
                break m;
            }
        })
        .collect();
    let rep = induce(&cs, base).map_err(|e| e.to_string())?;
    for _ in 0..100 {
        let (lu, lv) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let (u, v) = (random_word(&mut rng, 2, lu), random_word(&mut rng, 2, lv));
        ensure(rep.evaluate(&u.mul(&v)) == rep.evaluate(&u).mul(&rep.evaluate(&v)), || {
            "homomorphism property fails".into()
        })?;
    }
    let mut preserved = 0;
    for _ in 0..100 {
        let len = rng.random_range(1..=6);
        let w = random_word(&mut rng, 2, len).pow(6);
        let s = rewrite(&cs, &w).map_err(|e| e.to_string())?;
        let base_value = rep.evaluate_base(&s);
        let full = rep.evaluate(&w);
        ensure(full.block(2, 0, 0) == base_value, || "block (1,1) differs from base".into())?;
        if !base_value.is_identity() {
            ensure(!full.is_identity(), || "induced image trivial".into())?;
            preserved += 1;
        }
    }
    let inst = induced_size_bound(2, 2, 3);
    ensure(
        inst.induced_order == BigUint::from(24_261_120u32) && inst.bound == BigUint::from(48u32).pow(8) && inst.holds,
        || "|GL(4,3)| <= 48^8 fails".into(),
    )?;
    let grid = size_bound_grid();
    ensure(grid.iter().filter(|g| g.n >= 2).all(|g| g.holds), || "size grid fails for n >= 2".into())?;
    let n1: Vec<String> = grid
        .iter()
        .filter(|g| g.n == 1 && !g.holds)
        .map(|g| format!("(n=1,l={},q={})", g.l, g.q))
        .collect();
    Ok(format!(
        "rank 3 {{b, a^2, aba^-1}}; Sym(3) rank {k}; 100 pairs ok; {preserved} nontrivial preserved; grid ok for n>=2; n=1 failures reported: {}",
        n1.join(" ")
    ))
}

fn criterion_7() -> Outcome {
    let s = Presentation::surface(2).map_err(|e| e.to_string())?;
    let cert = check_small_cancellation(&s, Ratio::new(1, 6)).map_err(|v| v.to_string())?;
    ensure(cert.max_piece_len == 1, || format!("max piece {}", cert.max_piece_len))?;
    ensure(s.supports_word_problem(), || "surface group lacks word problem".into())?;
    let rel = s.relators()[0].clone();
    let mut rng = StdRng::seed_from_u64(7);
    let mut products = Vec::new();
    for _ in 0..50 {
        let factors = rng.random_range(1..=3);
        let mut w = Word::empty();
        for _ in 0..factors {
            let len = rng.random_range(1..=4);
            let u = random_word(&mut rng, 4, len);
            let r = if rng.random_bool(0.5) { rel.clone() } else { rel.inverse() };
            w = w.mul(&r.conjugate_by(&u));
        }
        ensure(s.is_trivial(&w).unwrap(), || format!("{} not declared trivial", s.alphabet().render(&w)))?;
        ensure(w.exponent_sums(4).iter().all(|&e| e == 0), || "nonzero exponent sum".into())?;
        products.push(w);
    }
    // cyclic rotations are conjugates, so they must reduce to the identity too
    let mut rotations = 0;
    for w in &products {
        let l = w.letters();
        for i in 1..l.len() {
            let r = Word::from_letters(l[i..].iter().chain(&l[..i]).copied());
            ensure(s.is_trivial(&r).unwrap(), || format!("rotation {} not trivial", s.alphabet().render(&r)))?;
            ensure(r.exponent_sums(4).iter().all(|&e| e == 0), || "nonzero exponent sum".into())?;
            rotations += 1;
        }
    }
    for g in 0..4 {
        ensure(!s.is_trivial(&Word::generator(g)).unwrap(), || format!("generator {g} trivial"))?;
    }
    let mut trivial_random = 0;
    for _ in 0..2000 {
        let len = rng.random_range(1..=10);
        let w = random_word(&mut rng, 4, len);
        if s.is_trivial(&w).unwrap() {
            trivial_random += 1;
            ensure(w.exponent_sums(4).iter().all(|&e| e == 0), || "Dehn-trivial word with nonzero sums".into())?;
        }
    }
    Ok(format!(
        "C'(1/6) with max piece 1; 50 relator products and {rotations} rotations trivial and balanced; generators nontrivial; {trivial_random} of 2000 random words trivial"
    ))
}

fn criterion_8() -> Outcome {
    let cs = [1, 2, 5, 10, 50];
    let mut out = Vec::new();
    for scope in [ThresholdScope::Gl, ThresholdScope::Simple] {
        let vals: Vec<u64> = cs
            .iter()
            .map(|&c| bounded_rank_threshold(Rational::from_integer(c), scope, false))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(vals.windows(2).all(|w| w[0] <= w[1]), || format!("{scope:?} not monotone: {vals:?}"))?;
        out.push(format!("{scope:?} {vals:?}"));
    }
    let gl10 = bounded_rank_threshold(Rational::from_integer(10), ThresholdScope::Gl, false).map_err(|e| e.to_string())?;
    ensure(gl10 == 11, || format!("GL threshold at C = 10 is {gl10}"))?;
    Ok(out.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("detection exactness", criterion_1, Duration::from_secs(60)),
        ("growth oracle", criterion_2, Duration::from_secs(60)),
        ("atlas audit", criterion_3, Duration::from_secs(60)),
        ("common-multiple certification", criterion_4, Duration::from_secs(60)),
        ("ratio experiment", criterion_5, Duration::from_secs(600)),
        ("induction suite", criterion_6, Duration::from_secs(60)),
        ("small cancellation and Dehn", criterion_7, Duration::from_secs(60)),
        ("threshold coherence", criterion_8, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *limit => Err(format!("{msg} (took {elapsed:.2?}, limit {limit:?})")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {} {name}: PASS [{elapsed:.2?}] {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL [{elapsed:.2?}] {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

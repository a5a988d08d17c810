//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use atl::algebra::{chi, gen, GenStyle};
use atl::morphisms::{e_map, include};
use atl::random::Sampler;
use atl::traces::{build_xz, jones_trace, rho, solve_alpha_beta};
use atl::verify::*;
use atl::{CoxeterGraph, Scalar, TLElement};
use num_rational::BigRational;

const SEED: u64 = 20240601;
const POINTS: usize = 5;

struct Criterion {
    number: usize,
    title: &'static str,
    results: Vec<CheckResult>,
    seconds: f64,
}

fn pts(tag: u64) -> Vec<BigRational> {
    let mut s = Sampler::new(SEED ^ tag);
    (0..POINTS).map(|_| s.point()).collect()
}

fn sampler(tag: u64) -> Sampler {
    Sampler::new(SEED.wrapping_add(tag))
}

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn criterion_1() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in 2..=5 {
        let g = CoxeterGraph::affine(m).unwrap();
        out.push(check_relations(g, pts(1)).finish("1", format!("relations on {g}")));
    }
    for n in 1..=4 {
        let g = CoxeterGraph::type_a(n).unwrap();
        out.push(check_relations(g, pts(1)).finish("1", format!("relations on {g}")));
    }
    out
}

fn criterion_2() -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> =
        (1..=4).map(|n| check_classical_basis(n).finish("2", format!("Catalan basis n = {n}"))).collect();
    out.push(check_affine_rank3_counts(10).finish("2", "affine m = 3 counts 1,3,6,6,..."));
    let mut t = Tally::new(Vec::new());
    for (m, len) in [(2, 9), (3, 8), (4, 6), (5, 5)] {
        let problems = common::affine_oracle(m, len);
        t.truth(|| format!("affine permutation model m = {m}: {problems:?}"), problems.is_empty());
    }
    out.push(t.finish("2", "affine 321-avoiding permutation oracle"));
    out
}

fn criterion_3() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in 2..=4 {
        let g = CoxeterGraph::affine(m).unwrap();
        let mut smp = sampler(30 + m as u64);
        out.push(check_confluence(g, &mut smp, 1000, 12, SEED).finish("3", format!("strategies agree on {g}")));
        let mut smp = sampler(40 + m as u64);
        out.push(check_associativity(g, &mut smp, 1000, 6, pts(3)).finish("3", format!("associativity on {g}")));
    }
    out
}

fn criterion_4() -> Vec<CheckResult> {
    vec![check_product_lemma(5, pts(4)).finish("4", "orbit product identities")]
}

fn criterion_5() -> Vec<CheckResult> {
    let mut out = vec![check_jones_values(pts(5)).finish("5", "Jones values")];
    for n in 1..=4 {
        let mut smp = sampler(50 + n as u64);
        out.push(check_classical_markov(n, &mut smp, 500, 8, pts(5)).finish("5", format!("classical Markov n = {n}")));
    }
    for n in 1..=4 {
        let mut smp = sampler(55 + n as u64);
        out.push(check_jones_f_route(n, &mut smp, 100, 8, pts(5)).finish("5", format!("f-basis oracle n = {n}")));
    }
    out
}

fn criterion_6() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in 2..=4 {
        let mut smp = sampler(60 + m as u64);
        out.push(check_rho_trace(m, &mut smp, 500, 6, pts(6)).finish("6", format!("rho trace m = {m}")));
        let mut smp = sampler(63 + m as u64);
        out.push(check_rho_psi(m, &mut smp, 500, 6, pts(6)).finish("6", format!("rho rotation m = {m}")));
        let mut smp = sampler(66 + m as u64);
        out.push(check_affine_markov(m, &mut smp, 500, 6, pts(6)).finish("6", format!("affine Markov m = {m}")));
    }
    out.push(check_ground_markov(pts(6)).finish("6", "Markov from the ground field"));
    out.push(check_rho_low_values(pts(6)).finish("6", "B0, B1, B2"));
    out
}

fn criterion_7() -> Vec<CheckResult> {
    let mut out = vec![check_xz(6, pts(7)).finish("7", "x_i, z_i identities")];
    out.push(check_alpha_beta(4, pts(7)).finish("7", "solve_alpha_beta(4)"));
    // Direct rho against the classical TL_2 value table
    // {1: (1+q)^2/q, g1, g2: -(1+q)/q, g1 g2, g2 g1: 1/q}.
    let mut t = Tally::new(pts(7));
    let p2 = CoxeterGraph::type_a(2).unwrap();
    let g = |l: &[u8]| -> TLElement {
        l.iter().fold(TLElement::one(p2), |acc, &x| &acc * &gen(GenStyle::G, x, p2).unwrap())
    };
    let table = [
        (g(&[]), s("(1+q)^2/q")),
        (g(&[0]), s("-(1+q)/q")),
        (g(&[1]), s("-(1+q)/q")),
        (g(&[0, 1]), s("1/q")),
        (g(&[1, 0]), s("1/q")),
    ];
    for (x, value) in &table {
        t.scalar(|| format!("tau({x})"), &jones_trace(x).unwrap(), value);
    }
    let a3 = CoxeterGraph::affine(3).unwrap();
    for (w, value) in [([0u8, 2, 1], s("-q^3/(q+1)^3")), ([1, 2, 0], s("-1/(q+1)^3")), ([0, 1, 2], s("-1/(q+1)^3"))] {
        t.scalar(|| format!("rho(f_{w:?})"), &rho(&TLElement::f_word(a3, &w).unwrap()).unwrap(), &value);
    }
    let ab = solve_alpha_beta(4).unwrap();
    t.scalar(|| "beta_1".into(), &ab.beta[0], &s("-1/(q+1)^3"));
    t.scalar(|| "beta'_1".into(), &ab.beta_rev[0], &s("-q^3/(q+1)^3"));
    for (k, a) in ab.alpha.iter().enumerate() {
        t.scalar(|| format!("alpha_{}", k + 1), a, &s("-v/(q+1)"));
    }
    let (x1, z1) = build_xz(1).unwrap();
    t.elem(|| "chi(x_1)".into(), &chi(&x1), &z1);
    out.push(t.finish("7", "derived rank-3 values"));
    out
}

fn criterion_8() -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(check_hom_relations(2, pts(8)).finish("8", "F and E respect relations, m = 2"));
    for m in 3..=5 {
        let mut smp = sampler(80 + m as u64);
        out.push(check_tower(m, &mut smp, 50, 5, pts(8)).finish("8", format!("E, F, inclusion m = {m}")));
        out.push(check_conjugation(m, pts(8)).finish("8", format!("conjugation m = {m}")));
        out.push(check_hom_relations(m, pts(8)).finish("8", format!("F and E respect relations, m = {m}")));
        let mut smp = sampler(85 + m as u64);
        out.push(check_double_f_commutant(m, &mut smp, 10, 4, pts(8)).finish("8", format!("double F commutant m = {m}")));
        let mut t = Tally::new(pts(8));
        let lower = CoxeterGraph::type_a(m - 1).unwrap();
        for w in atl::coxeter::enumerate_fc(&lower, None, 64).unwrap() {
            let y = TLElement::basis(w.clone());
            t.elem(|| format!("E(include(f_{w}))"), &e_map(&include(&y).unwrap()).unwrap(), &y);
        }
        out.push(t.finish("8", format!("E after inclusion on the whole basis, m = {m}")));
    }
    out
}

fn criterion_9() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in 2..=4 {
        let mut smp = sampler(90 + m as u64);
        out.push(check_braid_invariance(m, &mut smp, 200, 6, pts(9)).finish("9", format!("braid moves m = {m}")));
    }
    out.push(check_unknots(pts(9)).finish("9", "unknot presentations"));
    out
}

fn report(c: &Criterion) -> bool {
    let passed = c.results.iter().all(|r| r.passed);
    let cases: usize = c.results.iter().map(|r| r.cases).sum();
    println!(
        "{} criterion {}: {} ({} checks, {} cases, {:.1}s)",
        if passed { "PASS" } else { "FAIL" },
        c.number,
        c.title,
        c.results.len(),
        cases,
        c.seconds
    );
    for r in c.results.iter().filter(|r| !r.passed) {
        println!("      {}: {:?}", r.name, r.failures);
    }
    passed
}

#[test]
fn acceptance() {
    type Run = fn() -> Vec<CheckResult>;
    let specs: [(usize, &'static str, Run); 9] = [
        (1, "relation compliance", criterion_1),
        (2, "basis and dimension oracle", criterion_2),
        (3, "confluence and associativity", criterion_3),
        (4, "orbit product sweep", criterion_4),
        (5, "Jones trace", criterion_5),
        (6, "affine Markov trace", criterion_6),
        (7, "x/z machinery and alpha/beta system", criterion_7),
        (8, "tower coherence", criterion_8),
        (9, "link-invariant invariance", criterion_9),
    ];
    let criteria: Vec<Criterion> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|&(number, title, run)| scope.spawn(move || {
                let start = std::time::Instant::now();
                let results = run();
                Criterion { number, title, results, seconds: start.elapsed().as_secs_f64() }
            }))
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut all = true;
    for c in &criteria {
        all &= report(c);
    }
    let numeric: Vec<&CheckResult> = criteria.iter().flat_map(|c| &c.results).collect();
    let cases: usize = numeric.iter().map(|r| r.numeric_cases).sum();
    let bad: usize = numeric.iter().map(|r| r.numeric_failures).sum();
    let ok = bad == 0 && cases > 0;
    println!(
        "{} criterion 10: numeric cross-check at {POINTS} rational points ({cases} evaluations, {bad} mismatches)",
        if ok { "PASS" } else { "FAIL" }
    );
    all &= ok;
    assert!(all, "acceptance criteria failed");
}

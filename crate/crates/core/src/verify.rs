//! Named batteries of identity checks. Every comparison is made exactly and
//! again after specializing `v` at a few seeded rational points.

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{chi, gen, psi, strategy_by_name, GenStyle, TLElement, STRATEGY_NAMES};
use crate::coeff::Scalar;
use crate::coxeter::{enumerate_fc, fc_check, CoxeterGraph, FcWord, Letter, PairRelation};
use crate::error::Result;
use crate::morphisms::{
    braid_image, braid_lift, e_hom, e_map, f_from_ground, f_hom, include, include_classical, rotation_conjugator, BraidWord,
};
use crate::random::Sampler;
use crate::traces::{
    build_xz, gamma_coefficients, generic_trace2, generic_trace3, invariant, jones_trace, rho,
    solve_alpha_beta, TraceParamsTL2, TraceParamsTL3,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub gens: usize,
    pub seed: u64,
    pub samples: usize,
    pub max_len: usize,
    pub points: usize,
    pub kmax: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { gens: 3, seed: 0, samples: 50, max_len: 6, points: 5, kmax: 4 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub numeric_cases: usize,
    pub numeric_failures: usize,
    pub failures: Vec<String>,
}

const MAX_REPORTED: usize = 3;

/// Accumulates comparisons for one named check.
pub struct Tally {
    points: Vec<BigRational>,
    cases: usize,
    numeric_cases: usize,
    numeric_failed: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    pub fn new(points: Vec<BigRational>) -> Self {
        Tally { points, cases: 0, numeric_cases: 0, numeric_failed: 0, failures: Vec::new(), failed: 0 }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    fn numeric_scalar(&mut self, label: &dyn Fn() -> String, a: &Scalar, b: &Scalar) {
        for p in &self.points {
            if let (Ok(x), Ok(y)) = (a.eval_at(p), b.eval_at(p)) {
                self.numeric_cases += 1;
                if x != y {
                    self.numeric_failed += 1;
                    let msg = format!("{} (numeric at v = {p})", label());
                    self.fail(msg);
                    return;
                }
            }
        }
    }

    pub fn scalar(&mut self, label: impl Fn() -> String, a: &Scalar, b: &Scalar) {
        self.cases += 1;
        if a != b {
            self.fail(format!("{}: {a} != {b}", label()));
        }
        self.numeric_scalar(&label, a, b);
    }

    pub fn elem(&mut self, label: impl Fn() -> String, a: &TLElement, b: &TLElement) {
        self.cases += 1;
        if a != b {
            self.fail(format!("{}: {a} != {b}", label()));
        }
        let words: BTreeSet<&FcWord> = a.terms().chain(b.terms()).map(|(w, _)| w).collect();
        for w in words {
            let (x, y) = (a.coeff(w), b.coeff(w));
            let before = self.failed;
            self.numeric_scalar(&label, &x, &y);
            if self.failed > before {
                return;
            }
        }
    }

    pub fn truth(&mut self, label: impl Fn() -> String, ok: bool) {
        self.cases += 1;
        if !ok {
            self.fail(label());
        }
    }

    /// Runs `f`, recording an error as a failure.
    pub fn guard(&mut self, label: impl Fn() -> String, f: impl FnOnce(&mut Tally) -> Result<()>) {
        if let Err(e) = f(self) {
            self.cases += 1;
            self.fail(format!("{}: {e}", label()));
        }
    }

    pub fn finish(self, suite: &str, name: impl Into<String>) -> CheckResult {
        CheckResult {
            suite: suite.to_string(),
            name: name.into(),
            passed: self.failed == 0,
            cases: self.cases,
            numeric_cases: self.numeric_cases,
            numeric_failures: self.numeric_failed,
            failures: self.failures,
        }
    }
}

fn points(sampler: &mut Sampler, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| sampler.point()).collect()
}

/// A battery of checks selected by name.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckResult>;
}

macro_rules! suite {
    ($ty:ident, $name:literal, $body:expr) => {
        pub struct $ty;
        impl Suite for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn run(&self, cfg: &VerifyConfig) -> Vec<CheckResult> {
                let f: fn(&VerifyConfig) -> Vec<CheckResult> = $body;
                f(cfg)
            }
        }
    };
}

suite!(Relations, "relations", |cfg| {
    let mut sampler = Sampler::new(cfg.seed);
    let pts = points(&mut sampler, cfg.points);
    let mut out = Vec::new();
    if let Ok(g) = CoxeterGraph::affine(cfg.gens) {
        out.push(check_relations(g, pts.clone()).finish("relations", format!("generators of {g}")));
    }
    if cfg.gens >= 2 {
        let g = CoxeterGraph::type_a(cfg.gens - 1).unwrap();
        out.push(check_relations(g, pts).finish("relations", format!("generators of {g}")));
    }
    out
});

suite!(Basis, "basis", |cfg| {
    let mut out = Vec::new();
    for n in 1..=cfg.gens.clamp(1, 6) {
        let g = CoxeterGraph::type_a(n).unwrap();
        out.push(check_classical_basis(n).finish("basis", format!("fully commutative basis of {g}")));
    }
    out.push(check_affine_rank3_counts(10).finish("basis", "affine rank 3 counts by length"));
    if cfg.gens >= 2 {
        let g = CoxeterGraph::affine(cfg.gens).unwrap();
        out.push(check_affine_closure(g, cfg.max_len.min(8)).finish("basis", format!("rotation/reversal closure on {g}")));
    }
    out
});

suite!(Confluence, "confluence", |cfg| {
    let mut sampler = Sampler::new(cfg.seed);
    let pts = points(&mut sampler, cfg.points);
    let mut out = Vec::new();
    for m in 2..=cfg.gens.max(2) {
        let g = CoxeterGraph::affine(m).unwrap();
        let mut s = sampler.fork(m as u64);
        out.push(check_confluence(g, &mut s, cfg.samples, 12, cfg.seed).finish("confluence", format!("strategies agree on {g}")));
        let mut s = sampler.fork(100 + m as u64);
        out.push(
            check_associativity(g, &mut s, cfg.samples, cfg.max_len, pts.clone())
                .finish("confluence", format!("associativity on {g}")),
        );
    }
    out
});

suite!(Traces, "traces", |cfg| {
    let mut sampler = Sampler::new(cfg.seed);
    let pts = points(&mut sampler, cfg.points);
    let mut out = vec![check_jones_values(pts.clone()).finish("traces", "Jones trace values")];
    for n in 1..=cfg.gens.clamp(1, 4) {
        let mut s = sampler.fork(n as u64);
        out.push(
            check_classical_markov(n, &mut s, cfg.samples, cfg.max_len, pts.clone())
                .finish("traces", format!("classical Markov property, n = {n}")),
        );
        let mut s = sampler.fork(10 + n as u64);
        out.push(
            check_jones_f_route(n, &mut s, cfg.samples, cfg.max_len, pts.clone())
                .finish("traces", format!("Jones trace f-basis recursion, n = {n}")),
        );
    }
    let mut s = sampler.fork(20);
    out.push(check_generic2_trace_axiom(&mut s, cfg.samples, cfg.max_len, pts.clone()).finish("traces", "generic rank-2 trace is a trace"));
    let mut s = sampler.fork(21);
    out.push(check_generic3_matches_rho(&mut s, cfg.samples, cfg.max_len, pts.clone()).finish("traces", "rank-3 parametrization reproduces rho"));
    out.push(check_rho_low_values(pts).finish("traces", "rank-3 values B0, B1, B2"));
    out
});

suite!(Markov, "markov", |cfg| {
    let mut sampler = Sampler::new(cfg.seed);
    let pts = points(&mut sampler, cfg.points);
    let m = cfg.gens.max(2);
    let mut s = sampler.fork(1);
    let mut out = vec![
        check_rho_trace(m, &mut s, cfg.samples, cfg.max_len, pts.clone()).finish("markov", format!("rho is a trace, m = {m}")),
    ];
    let mut s = sampler.fork(2);
    out.push(check_rho_psi(m, &mut s, cfg.samples, cfg.max_len, pts.clone()).finish("markov", format!("rho is rotation invariant, m = {m}")));
    let mut s = sampler.fork(3);
    out.push(check_affine_markov(m, &mut s, cfg.samples, cfg.max_len, pts.clone()).finish("markov", format!("affine Markov conditions, m = {m}")));
    out.push(check_ground_markov(pts).finish("markov", "affine Markov conditions from the ground field"));
    out
});

suite!(Tower, "tower", |cfg| {
    let mut sampler = Sampler::new(cfg.seed);
    let pts = points(&mut sampler, cfg.points);
    let m = cfg.gens.max(2);
    let mut s = sampler.fork(1);
    let mut out = vec![check_tower(m, &mut s, cfg.samples, cfg.max_len, pts.clone()).finish("tower", format!("E, F and inclusion commute, m = {m}"))];
    out.push(check_hom_relations(m, pts.clone()).finish("tower", format!("F and E respect the relations of rank {m}")));
    out.push(check_conjugation(m, pts.clone()).finish("tower", format!("conjugation rotates the image of F, m = {m}")));
    if m >= 3 {
        let mut s = sampler.fork(2);
        out.push(
            check_double_f_commutant(m, &mut s, cfg.samples, cfg.max_len, pts)
                .finish("tower", format!("top generator commutes with the double F image, m = {m}")),
        );
    }
    out
});

suite!(Invariance, "invariance", |cfg| {
    let mut sampler = Sampler::new(cfg.seed);
    let pts = points(&mut sampler, cfg.points);
    let m = cfg.gens.max(2);
    let mut s = sampler.fork(1);
    vec![
        check_braid_invariance(m, &mut s, cfg.samples, cfg.max_len, pts.clone())
            .finish("invariance", format!("braid invariant moves, m = {m}")),
        check_unknots(pts).finish("invariance", "unknot and unlink presentations"),
    ]
});

suite!(PaperIdentities, "paper-identities", |cfg| {
    let mut sampler = Sampler::new(cfg.seed);
    let pts = points(&mut sampler, cfg.points);
    vec![
        check_product_lemma(5, pts.clone()).finish("paper-identities", "orbit product identities, h, k <= 5"),
        check_xz(6, pts.clone()).finish("paper-identities", "x_i, z_i closed forms and recurrences, i <= 6"),
        check_alpha_beta(cfg.kmax, pts).finish("paper-identities", format!("alpha/beta system, k <= {}", cfg.kmax)),
    ]
});

pub const SUITE_NAMES: [&str; 8] =
    ["relations", "basis", "confluence", "traces", "markov", "tower", "invariance", "paper-identities"];

pub fn suite_by_name(name: &str) -> Result<Box<dyn Suite>> {
    Ok(match name {
        "relations" => Box::new(Relations),
        "basis" => Box::new(Basis),
        "confluence" => Box::new(Confluence),
        "traces" => Box::new(Traces),
        "markov" => Box::new(Markov),
        "tower" => Box::new(Tower),
        "invariance" => Box::new(Invariance),
        "paper-identities" => Box::new(PaperIdentities),
        _ => return Err(crate::Error::UnknownName { kind: "suite", name: name.to_string() }),
    })
}

/// Suite names selected by `name`, expanding `all`.
pub fn resolve_suites(name: &str) -> Result<Vec<Box<dyn Suite>>> {
    if name == "all" {
        SUITE_NAMES.iter().map(|n| suite_by_name(n)).collect()
    } else {
        Ok(vec![suite_by_name(name)?])
    }
}

// ---------------------------------------------------------------- relations

/// `V(x, y) = xyx + xy + yx + x + y + 1`.
pub fn v_poly(x: &TLElement, y: &TLElement) -> TLElement {
    let xy = x * y;
    let yx = y * x;
    &(&(&(&(&xy * x) + &xy) + &yx) + &(x + y)) + &TLElement::one(x.graph())
}

/// Quadratic, commutation, braid and `V` relations of `source` evaluated on
/// the elements `g` (indexed by letter).
fn g_relations(t: &mut Tally, source: CoxeterGraph, g: &[TLElement], one: &TLElement) {
    let q = Scalar::q();
    let zero = one.scale(&Scalar::zero());
    for s in source.letters() {
        let i = s as usize;
        let name = source.letter_name(s);
        let quad = &g[i].scale(&(&q - &Scalar::one())) + &one.scale(&q);
        t.elem(|| format!("g_{name}^2 = (q-1) g + q"), &(&g[i] * &g[i]), &quad);
        for u in source.letters().filter(|&u| u > s) {
            let j = u as usize;
            let other = source.letter_name(u);
            let label = |what: &str| format!("{what}({name}, {other})");
            match source.relation(s, u) {
                PairRelation::Commute => {
                    t.elem(|| label("commute"), &(&g[i] * &g[j]), &(&g[j] * &g[i]));
                }
                PairRelation::Adjacent => {
                    t.elem(|| label("braid"), &(&(&g[i] * &g[j]) * &g[i]), &(&(&g[j] * &g[i]) * &g[j]));
                    t.elem(|| label("V"), &v_poly(&g[i], &g[j]), &zero);
                    t.elem(|| label("V"), &v_poly(&g[j], &g[i]), &zero);
                }
                PairRelation::Free => {}
            }
        }
    }
}

pub fn check_relations(graph: CoxeterGraph, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    let one = TLElement::one(graph);
    t.guard(|| format!("relations on {graph}"), |t| {
        let g: Vec<TLElement> = graph.letters().map(|s| gen(GenStyle::G, s, graph)).collect::<Result<_>>()?;
        let f: Vec<TLElement> = graph.letters().map(|s| gen(GenStyle::F, s, graph)).collect::<Result<_>>()?;
        g_relations(t, graph, &g, &one);
        for s in graph.letters() {
            let i = s as usize;
            let name = graph.letter_name(s);
            t.elem(|| format!("f_{name}^2 = f"), &(&f[i] * &f[i]), &f[i]);
            let ti = gen(GenStyle::T, s, graph)?;
            let tinv = gen(GenStyle::TInv, s, graph)?;
            t.elem(|| format!("T_{name}^-1 T_{name} = 1"), &(&tinv * &ti), &one);
            let ginv = gen(GenStyle::GInv, s, graph)?;
            t.elem(|| format!("g_{name} g_{name}^-1 = 1"), &(&g[i] * &ginv), &one);
            for u in graph.letters().filter(|&u| u > s) {
                let j = u as usize;
                let other = graph.letter_name(u);
                match graph.relation(s, u) {
                    PairRelation::Adjacent => {
                        let fsf = &(&f[i] * &f[j]) * &f[i];
                        t.elem(|| format!("f f f = delta f({name}, {other})"), &fsf, &f[i].scale(&Scalar::delta()));
                    }
                    PairRelation::Free => {
                        let gg = &g[i] * &g[j];
                        t.truth(|| format!("free pair ({name}, {other}) does not commute"), gg != &g[j] * &g[i]);
                    }
                    PairRelation::Commute => {}
                }
            }
        }
        Ok(())
    });
    t
}

/// The images of the generators under `F` and `E` satisfy the relations of
/// the source algebra.
pub fn check_hom_relations(m: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("homomorphisms from rank {m}"), |t| {
        let source = CoxeterGraph::affine(m)?;
        for hom in [f_hom(m)?, e_hom(m)?] {
            let images: Vec<TLElement> = source.letters().map(|s| hom.gen_image(s).clone()).collect();
            g_relations(t, source, &images, &TLElement::one(hom.target()));
        }
        Ok(())
    });
    t
}

// -------------------------------------------------------------------- basis

pub fn catalan(n: usize) -> usize {
    let mut c: usize = 1;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Permutation of `0..=n` given by the product of adjacent transpositions.
pub fn word_permutation(n: usize, letters: &[Letter]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..=n).collect();
    for &s in letters {
        p.swap(s as usize, s as usize + 1);
    }
    p
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

pub fn avoids_321(p: &[usize]) -> bool {
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            if p[i] > p[j] && (j + 1..n).any(|k| p[j] > p[k]) {
                return false;
            }
        }
    }
    true
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// Compares the basis of the classical algebra with the 321-avoiding
/// permutations of `n + 1` points.
pub fn check_classical_basis(n: usize) -> Tally {
    let mut t = Tally::new(Vec::new());
    t.guard(|| format!("classical basis n = {n}"), |t| {
        let graph = CoxeterGraph::type_a(n)?;
        let words = enumerate_fc(&graph, None, 64)?;
        t.truth(|| format!("count {} = Catalan({})", words.len(), n + 1), words.len() == catalan(n + 1));
        let mut seen = HashSet::new();
        for w in &words {
            let p = word_permutation(n, w.letters());
            t.truth(|| format!("{w} is reduced"), inversions(&p) == w.len());
            t.truth(|| format!("{w} is 321-avoiding"), avoids_321(&p));
            t.truth(|| format!("{w} has a unique permutation"), seen.insert(p));
        }
        let oracle: HashSet<Vec<usize>> = all_permutations(n + 1).into_iter().filter(|p| avoids_321(p)).collect();
        t.truth(|| "permutation sets agree".to_string(), oracle == seen);
        Ok(())
    });
    t
}

pub fn check_affine_rank3_counts(max_len: usize) -> Tally {
    let mut t = Tally::new(Vec::new());
    t.guard(|| "affine rank 3 counts".to_string(), |t| {
        let graph = CoxeterGraph::affine(3)?;
        let words = enumerate_fc(&graph, Some(max_len), 64)?;
        for l in 0..=max_len {
            let count = words.iter().filter(|w| w.len() == l).count();
            let expect = match l {
                0 => 1,
                1 => 3,
                _ => 6,
            };
            t.truth(|| format!("length {l}: {count} words, expected {expect}"), count == expect);
        }
        Ok(())
    });
    t
}

pub fn check_affine_closure(graph: CoxeterGraph, max_len: usize) -> Tally {
    let mut t = Tally::new(Vec::new());
    t.guard(|| format!("closure on {graph}"), |t| {
        let words = enumerate_fc(&graph, Some(max_len), 64)?;
        let set: HashSet<&FcWord> = words.iter().collect();
        for w in &words {
            t.truth(|| format!("{w} is fully commutative"), fc_check(&graph, w.letters())?);
            t.truth(|| format!("rotation of {w}"), set.contains(&crate::coxeter::rotate(w, 1)?));
            t.truth(|| format!("reversal of {w}"), set.contains(&crate::coxeter::reverse(w)));
        }
        Ok(())
    });
    t
}

// --------------------------------------------------------------- confluence

pub fn check_confluence(graph: CoxeterGraph, s: &mut Sampler, samples: usize, max_letters: usize, seed: u64) -> Tally {
    let mut t = Tally::new(Vec::new());
    t.guard(|| format!("confluence on {graph}"), |t| {
        let strategies: Vec<_> = STRATEGY_NAMES.iter().map(|n| strategy_by_name(n, seed)).collect::<Result<_>>()?;
        for _ in 0..samples {
            let a = s.word(graph, max_letters);
            let b = s.word(graph, max_letters);
            let base = strategies[0].product(&graph, a.letters(), b.letters());
            for st in &strategies[1..] {
                let other = st.product(&graph, a.letters(), b.letters());
                t.truth(|| format!("{} vs {} on {a} * {b}", strategies[0].name(), st.name()), base == other);
            }
            let raw = s.letters(graph, max_letters);
            let base = strategies[0].product(&graph, &[], &raw);
            for st in &strategies[1..] {
                let other = st.product(&graph, &[], &raw);
                t.truth(|| format!("{} vs {} on raw {}", strategies[0].name(), st.name(), graph.format_letters(&raw)), base == other);
            }
        }
        Ok(())
    });
    t
}

pub fn check_associativity(graph: CoxeterGraph, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    for _ in 0..samples {
        let (x, y, z) = (s.element(graph, 3, max_len), s.element(graph, 3, max_len), s.element(graph, 3, max_len));
        t.elem(|| format!("({x})({y})({z})"), &(&(&x * &y) * &z), &(&x * &(&y * &z)));
    }
    t
}

// ------------------------------------------------------------------- traces

fn ts(text: &str) -> Scalar {
    text.parse().expect("valid scalar literal")
}

pub fn check_jones_values(pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "Jones values".to_string(), |t| {
        let g = CoxeterGraph::type_a(1)?;
        let tt = gen(GenStyle::T, 0, g)?;
        t.scalar(|| "tau(T)".into(), &jones_trace(&tt)?, &Scalar::one());
        t.scalar(|| "tau(1)".into(), &jones_trace(&TLElement::one(g))?, &ts("-(1+q)/v"));
        t.scalar(|| "tau(T^3)".into(), &jones_trace(&tt.pow(3)?)?, &ts("-q^4+q^3+q"));
        t.scalar(|| "tau(T^2)".into(), &jones_trace(&tt.pow(2)?)?, &ts("-v*(1+q^2)"));
        Ok(())
    });
    t
}

/// `tau_{n+1}(b T_top c) = tau_n(b c)` and `tau_{n+1}(b c) = loop tau_n(b c)`
/// for `b, c` in the classical algebra on `n - 1` generators.
pub fn check_classical_markov(n: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("classical Markov n = {n}"), |t| {
        let upper = CoxeterGraph::type_a(n)?;
        let lower = CoxeterGraph::type_a(n - 1)?;
        let top = (n - 1) as Letter;
        let tp = gen(GenStyle::T, top, upper)?;
        let tm = gen(GenStyle::TInv, top, upper)?;
        for _ in 0..samples {
            let b = s.element(lower, 2, max_len);
            let c = s.element(lower, 2, max_len);
            let bc = jones_trace(&(&b * &c))?;
            let (bu, cu) = (include_classical(&b)?, include_classical(&c)?);
            let lhs = jones_trace(&(&(&bu * &tp) * &cu))?;
            t.scalar(|| format!("tau(b T c), b = {b}, c = {c}"), &lhs, &bc);
            let lhs = jones_trace(&(&(&bu * &tm) * &cu))?;
            t.scalar(|| format!("tau(b T^-1 c), b = {b}, c = {c}"), &lhs, &bc);
            let lhs = jones_trace(&(&bu * &cu))?;
            t.scalar(|| format!("tau(b c) loop, b = {b}, c = {c}"), &lhs, &(&Scalar::loop_factor() * &bc));
            let x = s.element(upper, 2, max_len);
            let y = s.element(upper, 2, max_len);
            t.scalar(|| format!("tau(xy) = tau(yx), x = {x}, y = {y}"), &jones_trace(&(&x * &y))?, &jones_trace(&(&y * &x))?);
        }
        Ok(())
    });
    t
}

/// The Jones trace on basis elements `f_w` by the recursion
/// `tau(f_b f_top f_c) = -(sqrt q/(q+1)) tau(f_b f_c)` and
/// `tau(f_w) = loop tau(f_w)` one rank lower.
pub fn jones_trace_f_route(x: &TLElement) -> Result<Scalar> {
    let graph = x.graph();
    let n = graph.gens();
    let mut acc = Scalar::zero();
    for (w, c) in x.terms() {
        let value = if n == 0 {
            Scalar::one()
        } else {
            let lower = CoxeterGraph::type_a(n - 1)?;
            let top = (n - 1) as Letter;
            match w.letters().iter().position(|&s| s == top) {
                None => &Scalar::loop_factor() * &jones_trace_f_route(&TLElement::f_word(lower, w.letters())?)?,
                Some(p) => {
                    let b = TLElement::f_word(lower, &w.letters()[..p])?;
                    let cc = TLElement::f_word(lower, &w.letters()[p + 1..])?;
                    &Scalar::markov_f() * &jones_trace_f_route(&(&b * &cc))?
                }
            }
        };
        acc += &(c * &value);
    }
    Ok(acc)
}

pub fn check_jones_f_route(n: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("f-route n = {n}"), |t| {
        let g = CoxeterGraph::type_a(n)?;
        for w in enumerate_fc(&g, None, 64)? {
            let x = TLElement::basis(w.clone());
            t.scalar(|| format!("tau(f_{w})"), &jones_trace(&x)?, &jones_trace_f_route(&x)?);
        }
        for _ in 0..samples {
            let x = s.element(g, 3, max_len);
            t.scalar(|| format!("tau({x})"), &jones_trace(&x)?, &jones_trace_f_route(&x)?);
        }
        Ok(())
    });
    t
}

pub fn check_generic2_trace_axiom(s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "generic rank-2 trace".to_string(), |t| {
        let g = CoxeterGraph::affine(2)?;
        let depth = max_len + 4;
        for _ in 0..samples.div_ceil(5).max(1) {
            let alpha: Vec<Scalar> = (0..depth).map(|_| s.scalar()).collect();
            let p = TraceParamsTL2::from_values(s.scalar(), s.scalar(), alpha);
            for _ in 0..5 {
                let x = s.element(g, 3, max_len);
                let y = s.element(g, 3, max_len);
                t.scalar(|| format!("t(xy) = t(yx), x = {x}, y = {y}"), &generic_trace2(&p, &(&x * &y))?, &generic_trace2(&p, &(&y * &x))?);
            }
        }
        Ok(())
    });
    t
}

pub fn check_generic3_matches_rho(s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "generic rank-3 trace".to_string(), |t| {
        let g = CoxeterGraph::affine(3)?;
        let p = TraceParamsTL3::from_rho();
        for _ in 0..samples {
            let x = s.element(g, 3, max_len + 3);
            t.scalar(|| format!("s({x}) = rho({x})"), &generic_trace3(&p, &x)?, &rho(&x)?);
        }
        Ok(())
    });
    t
}

pub fn check_rho_low_values(pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "rank-3 low values".to_string(), |t| {
        let g = CoxeterGraph::affine(3)?;
        t.scalar(|| "rho(1)".into(), &rho(&TLElement::one(g))?, &ts("(1+q)^2/q"));
        for w in [[0u8].as_slice(), &[1], &[2]] {
            t.scalar(|| format!("rho(f_{w:?})"), &rho(&TLElement::f_word(g, w)?)?, &Scalar::one());
        }
        for w in [[0u8, 1], [1, 0], [1, 2], [2, 1], [0, 2], [2, 0]] {
            t.scalar(|| format!("rho(f_{w:?})"), &rho(&TLElement::f_word(g, &w)?)?, &ts("q/(1+q)^2"));
        }
        Ok(())
    });
    t
}

// ------------------------------------------------------------------- markov

pub fn check_rho_trace(m: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("rho trace m = {m}"), |t| {
        let g = CoxeterGraph::affine(m)?;
        for _ in 0..samples {
            let x = s.element(g, 2, max_len);
            let y = s.element(g, 2, max_len);
            t.scalar(|| format!("rho(xy) = rho(yx), x = {x}, y = {y}"), &rho(&(&x * &y))?, &rho(&(&y * &x))?);
        }
        Ok(())
    });
    t
}

pub fn check_rho_psi(m: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("rho psi m = {m}"), |t| {
        let g = CoxeterGraph::affine(m)?;
        for _ in 0..samples {
            let x = s.element(g, 3, max_len);
            t.scalar(|| format!("rho(psi({x}))"), &rho(&psi(&x, 1)?)?, &rho(&x)?);
        }
        Ok(())
    });
    t
}

/// `rho(F(h) T_top^{+-1}) = rho(h)` and `rho(F(h)) = loop rho(h)` for `h` of
/// rank `m`, `F` into rank `m + 1`.
pub fn check_affine_markov(m: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("affine Markov m = {m}"), |t| {
        let g = CoxeterGraph::affine(m)?;
        let up = CoxeterGraph::affine(m + 1)?;
        let top = (m - 1) as Letter;
        let tp = gen(GenStyle::T, top, up)?;
        let tm = gen(GenStyle::TInv, top, up)?;
        let mut f = f_hom(m)?;
        for _ in 0..samples {
            let h = s.element(g, 2, max_len);
            let fh = f.apply(&h)?;
            let rh = rho(&h)?;
            t.scalar(|| format!("rho(F(h) T), h = {h}"), &rho(&(&fh * &tp))?, &rh);
            t.scalar(|| format!("rho(F(h) T^-1), h = {h}"), &rho(&(&fh * &tm))?, &rh);
            t.scalar(|| format!("rho(F(h)), h = {h}"), &rho(&fh)?, &(&Scalar::loop_factor() * &rh));
        }
        Ok(())
    });
    t
}

pub fn check_ground_markov(pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "ground Markov".to_string(), |t| {
        let g = CoxeterGraph::affine(2)?;
        for c in [Scalar::one(), ts("3*v-2"), ts("1/(q+1)")] {
            let fc = f_from_ground(&c);
            for style in [GenStyle::T, GenStyle::TInv] {
                let x = &fc * &gen(style, 0, g)?;
                t.scalar(|| format!("rho({c} T^{style:?})"), &rho(&x)?, &c);
            }
            t.scalar(|| format!("rho({c})"), &rho(&fc)?, &(&Scalar::loop_factor() * &c));
        }
        Ok(())
    });
    t
}

// -------------------------------------------------------------------- tower

pub fn check_tower(m: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("tower m = {m}"), |t| {
        let g = CoxeterGraph::affine(m)?;
        let lower = CoxeterGraph::type_a(m - 1)?;
        let mut f = f_hom(m)?;
        for _ in 0..samples {
            let y = s.element(lower, 2, max_len);
            t.elem(|| format!("E(include({y}))"), &e_map(&include(&y)?)?, &y);
            let x = s.element(g, 2, max_len);
            let lhs = e_map(&f.apply(&x)?)?;
            let rhs = include_classical(&e_map(&x)?)?;
            t.elem(|| format!("E(F({x})) = E({x})"), &lhs, &rhs);
        }
        Ok(())
    });
    t
}

/// `c F(t_s) = F(t_{psi^{-1}(s)}) c` with `c = g_{s_m ... s_1 a}`.
pub fn check_conjugation(m: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("conjugation m = {m}"), |t| {
        let g = CoxeterGraph::affine(m)?;
        let c = rotation_conjugator(m + 1)?;
        let mut f = f_hom(m)?;
        for s in g.letters() {
            let x = gen(GenStyle::G, s, g)?;
            let lhs = &c * &f.apply(&x)?;
            let rhs = &f.apply(&psi(&x, -1)?)? * &c;
            t.elem(|| format!("conjugation of {}", g.letter_name(s)), &lhs, &rhs);
        }
        Ok(())
    });
    t
}

/// `g_{s_m}` in rank `m + 1` commutes with `F(F(x))` for `x` of rank `m - 1`.
pub fn check_double_f_commutant(m: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("double F m = {m}"), |t| {
        let g = CoxeterGraph::affine(m - 1)?;
        let up = CoxeterGraph::affine(m + 1)?;
        let gs = gen(GenStyle::G, (m - 1) as Letter, up)?;
        let (mut f1, mut f2) = (f_hom(m - 1)?, f_hom(m)?);
        let mut check = |t: &mut Tally, x: &TLElement| -> Result<()> {
            let y = f2.apply(&f1.apply(x)?)?;
            t.elem(|| format!("[g, F(F({x}))]"), &(&gs * &y), &(&y * &gs));
            Ok(())
        };
        for s in g.letters() {
            check(t, &gen(GenStyle::G, s, g)?)?;
        }
        for _ in 0..samples.min(20) {
            let x = s.element(g, 2, max_len.min(4));
            check(t, &x)?;
        }
        Ok(())
    });
    t
}

// --------------------------------------------------------------- invariance

/// Braid relators of the affine braid group on `m` generators.
pub fn braid_relators(m: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    if m < 3 {
        return out;
    }
    let g = CoxeterGraph::affine(m).unwrap();
    for s in g.letters() {
        for u in g.letters().filter(|&u| u > s) {
            let letters = match g.relation(s, u) {
                PairRelation::Commute => vec![(s, 1), (u, 1), (s, -1), (u, -1)],
                PairRelation::Adjacent => vec![(s, 1), (u, 1), (s, 1), (u, -1), (s, -1), (u, -1)],
                PairRelation::Free => continue,
            };
            out.push(BraidWord::new(m, letters).unwrap());
        }
    }
    out
}

fn splice(b: &BraidWord, at: usize, insert: &BraidWord) -> BraidWord {
    let mut letters = b.letters()[..at].to_vec();
    letters.extend_from_slice(insert.letters());
    letters.extend_from_slice(&b.letters()[at..]);
    BraidWord::new(b.gens(), letters).unwrap()
}

pub fn check_braid_invariance(m: usize, s: &mut Sampler, samples: usize, max_len: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| format!("braid invariance m = {m}"), |t| {
        let relators = braid_relators(m);
        let top = (m - 1) as Letter;
        for _ in 0..samples {
            let b = s.braid(m, max_len);
            let base = invariant(&b)?;
            let at = s.below(b.len() + 1);
            if !relators.is_empty() {
                let r = s.choose(&relators).clone();
                let r = if s.below(2) == 0 { r } else { r.inverse() };
                let spliced = splice(&b, at, &r);
                t.elem(|| format!("image of relator {r} in {b}"), &braid_image(&spliced)?, &braid_image(&b)?);
                t.scalar(|| format!("relator {r} in {b}"), &invariant(&spliced)?, &base);
            }
            let x = s.braid(m, 1);
            let cancel = x.concat(&x.inverse())?;
            t.scalar(|| format!("free reduction {cancel} in {b}"), &invariant(&splice(&b, at, &cancel))?, &base);
            let w = s.braid(m, 3);
            let conj = w.concat(&b)?.concat(&w.inverse())?;
            t.scalar(|| format!("conjugation of {b} by {w}"), &invariant(&conj)?, &base);
            let lifted = braid_lift(&b)?;
            for e in [1i8, -1] {
                let st = lifted.concat(&BraidWord::new(m + 1, vec![(top, e)])?)?;
                t.scalar(|| format!("stabilization {st} of {b}"), &invariant(&st)?, &base);
            }
        }
        Ok(())
    });
    t
}

pub fn check_unknots(pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "unknots".to_string(), |t| {
        let inv = |text: &str| -> Result<Scalar> { invariant(&BraidWord::parse(2, text)?) };
        t.scalar(|| "s1".into(), &inv("s1")?, &Scalar::one());
        t.scalar(|| "s1^-1".into(), &inv("s1^-1")?, &Scalar::one());
        t.scalar(|| "a".into(), &inv("a")?, &Scalar::one());
        t.scalar(|| "empty".into(), &inv("")?, &Scalar::loop_factor());
        t.scalar(|| "a a^-1".into(), &inv("a a^-1")?, &Scalar::loop_factor());
        t.scalar(|| "trefoil".into(), &inv("s1 s1 s1")?, &ts("-q^4+q^3+q"));
        t.scalar(|| "Hopf".into(), &inv("s1 s1")?, &ts("-v*(1+q^2)"));
        t.scalar(|| "a s1".into(), &inv("a s1")?, &ts("-v*(1+q^2)"));
        let two = invariant(&BraidWord::empty(3)?)?;
        t.scalar(|| "empty at m = 3".into(), &two, &(&Scalar::loop_factor() * &Scalar::loop_factor()));
        Ok(())
    });
    t
}

// --------------------------------------------------------- paper identities

pub fn check_product_lemma(max: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "orbit products".to_string(), |t| {
        let g = CoxeterGraph::affine(3)?;
        let a = TLElement::f_word(g, &[1, 0, 2])?;
        let b = TLElement::f_word(g, &[0, 1, 2])?;
        let f_s2a = TLElement::f_word(g, &[1, 2])?;
        let f_s1a = TLElement::f_word(g, &[0, 2])?;
        let d = Scalar::delta();
        let dp = |e: usize| d.pow(e as i32);
        for h in 1..=max {
            for k in 1..=max {
                let (ak, bh) = (a.pow(k as u32)?, b.pow(h as u32)?);
                let ab = &ak * &bh;
                let expect = if h < k {
                    a.pow((k - h) as u32)?.scale(&dp(3 * h)?)
                } else {
                    (&f_s2a * &b.pow((h - k) as u32)?).scale(&dp(3 * k - 1)?)
                };
                t.elem(|| format!("A^{k} B^{h}"), &ab, &expect);
                let ba = &bh * &ak;
                let expect = if h > k {
                    b.pow((h - k) as u32)?.scale(&dp(3 * k)?)
                } else {
                    (&f_s1a * &a.pow((k - h) as u32)?).scale(&dp(3 * h - 1)?)
                };
                t.elem(|| format!("B^{h} A^{k}"), &ba, &expect);
            }
        }
        Ok(())
    });
    t
}

pub fn check_xz(max: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "x/z identities".to_string(), |t| {
        let g2 = CoxeterGraph::affine(2)?;
        let g = CoxeterGraph::affine(3)?;
        let f = |l: &[Letter]| TLElement::f_word(g, l);
        let xs: Vec<(TLElement, TLElement)> = (1..=max + 1).map(build_xz).collect::<Result<_>>()?;
        let (x1, z1) = (&xs[0].0, &xs[0].1);
        let mut fmap = f_hom(2)?;
        t.elem(|| "x_1 = F(f_s1 f_a)".into(), x1, &fmap.apply(&TLElement::f_word(g2, &[0, 1])?)?);
        let f2 = f(&[1])?;
        let expect = &f(&[0, 2, 1])?.scale(&ts("-1/q")) + &f(&[0, 1])?.scale(&ts("1/(q+1)"));
        t.elem(|| "x_1 f_s2".into(), &(x1 * &f2), &expect);
        let expect = &f(&[1, 2, 0])?.scale(&ts("-q")) + &f(&[1, 0])?.scale(&ts("q/(q+1)"));
        t.elem(|| "f_s2 z_1".into(), &(&f2 * z1), &expect);
        let d = Scalar::delta();
        let d2 = &d * &d;
        for i in 1..=max {
            let (xi, zi) = (&xs[i - 1].0, &xs[i - 1].1);
            t.elem(|| format!("chi(x_{i}) = z_{i}"), &chi(xi), zi);
            let next_x = &xs[i].0;
            let next_z = &xs[i].1;
            let (ex, ez) = if i == 1 {
                (&xi.scale(&(&Scalar::int(3) * &d)) + next_x, &zi.scale(&(&Scalar::int(3) * &d)) + next_z)
            } else {
                let (px, pz) = (&xs[i - 2].0, &xs[i - 2].1);
                let two_d = &Scalar::int(2) * &d;
                (
                    &(&px.scale(&d2) + &xi.scale(&two_d)) + next_x,
                    &(&pz.scale(&d2) + &zi.scale(&two_d)) + next_z,
                )
            };
            t.elem(|| format!("x_1 x_{i}"), &(x1 * xi), &ex);
            t.elem(|| format!("z_{i} z_1"), &(zi * z1), &ez);
            t.elem(|| format!("x_1 x_{i} = x_{i} x_1"), &(x1 * xi), &(xi * x1));
            for j in 1..=max {
                let xj = &xs[j - 1].0;
                t.elem(|| format!("x_{i} x_{j} = x_{j} x_{i}"), &(xi * xj), &(xj * xi));
            }
            let gamma = gamma_coefficients(i);
            let mut sum = TLElement::zero(g);
            for (c, (x, _)) in gamma.iter().zip(&xs) {
                sum = &sum + &x.scale(c);
            }
            t.elem(|| format!("x_1^{i} expansion"), &x1.pow(i as u32)?, &sum);
        }
        Ok(())
    });
    t
}

pub fn check_alpha_beta(kmax: usize, pts: Vec<BigRational>) -> Tally {
    let mut t = Tally::new(pts);
    t.guard(|| "alpha/beta".to_string(), |t| {
        let ab = solve_alpha_beta(kmax)?;
        t.truth(|| "solver returned every depth".into(), ab.alpha.len() == kmax);
        for k in 0..kmax {
            t.scalar(|| format!("alpha_{}", k + 1), &ab.alpha[k], &Scalar::markov_f());
            let q1 = &Scalar::q() + &Scalar::one();
            let sign = if k % 2 == 0 { Scalar::int(-1) } else { Scalar::one() };
            let e = 3 * (k as i32 + 1);
            let beta = &sign * &q1.pow(-e)?;
            let beta_rev = &beta * &Scalar::q().pow(e)?;
            t.scalar(|| format!("beta_{}", k + 1), &ab.beta[k], &beta);
            t.scalar(|| format!("beta'_{}", k + 1), &ab.beta_rev[k], &beta_rev);
            t.scalar(|| format!("beta'_{} = bar(beta_{})", k + 1, k + 1), &ab.beta_rev[k], &ab.beta[k].bar());
        }
        Ok(())
    });
    t
}

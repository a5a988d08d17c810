//! Traces: the Jones Markov trace on the classical tower, the affine trace
//! `rho = tau . E`, the parametrized traces on the rank-2 and rank-3 affine
//! algebras, and the link invariant of affine braid closures.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{from_g_word, to_g_basis, TLElement};
use crate::coeff::Scalar;
use crate::coxeter::{rotate, CoxeterGraph, FcWord, Letter};
use crate::error::{Error, Result};
use crate::morphisms::{braid_image, e_hom, BraidWord, GenHom};

thread_local! {
    static JONES_MEMO: RefCell<HashMap<FcWord, Scalar>> = RefCell::new(HashMap::new());
    static JONES_F_MEMO: RefCell<HashMap<FcWord, Scalar>> = RefCell::new(HashMap::new());
    static RHO_MEMO: RefCell<HashMap<FcWord, Scalar>> = RefCell::new(HashMap::new());
    static E_HOMS: RefCell<HashMap<usize, GenHom>> = RefCell::new(HashMap::new());
}

fn require_classical(graph: CoxeterGraph) -> Result<()> {
    if graph.is_affine() {
        Err(Error::RankMismatch(format!("Jones trace needs a type A graph, got {graph}")))
    } else {
        Ok(())
    }
}

fn require_affine_rank(graph: CoxeterGraph, m: Option<usize>) -> Result<()> {
    let ok = graph.is_affine() && m.is_none_or(|m| graph.gens() == m);
    if ok {
        Ok(())
    } else {
        let want = m.map_or("an affine graph".to_string(), |m| format!("affine rank {m}"));
        Err(Error::RankMismatch(format!("expected {want}, got {graph}")))
    }
}

/// Jones trace of the basis element `g_w` of a classical algebra.
fn jones_g(w: &FcWord) -> Result<Scalar> {
    if let Some(c) = JONES_MEMO.with(|m| m.borrow().get(w).cloned()) {
        return Ok(c);
    }
    let n = w.graph().gens();
    let value = if n == 0 {
        Scalar::one()
    } else {
        let top = (n - 1) as Letter;
        let lower = CoxeterGraph::type_a(n - 1)?;
        let hits: Vec<usize> = (0..w.len()).filter(|&i| w.letters()[i] == top).collect();
        match hits.as_slice() {
            [] => &Scalar::loop_factor() * &jones_g(&FcWord::new(lower, w.letters())?)?,
            [p] => {
                let b = from_g_word(&FcWord::new(lower, &w.letters()[..*p])?)?;
                let c = from_g_word(&FcWord::new(lower, &w.letters()[p + 1..])?)?;
                &Scalar::v().inv()? * &jones_trace(&b.try_mul(&c)?)?
            }
            _ => unreachable!("top generator repeated in fully commutative word {w}"),
        }
    };
    JONES_MEMO.with(|m| m.borrow_mut().insert(w.clone(), value.clone()));
    Ok(value)
}

/// The Jones Markov trace `tau_{n+1}` on the classical algebra with `n`
/// generators, normalized by `tau(1) = 1` on the ground field.
pub fn jones_trace(x: &TLElement) -> Result<Scalar> {
    require_classical(x.graph())?;
    let mut acc = Scalar::zero();
    for (w, c) in x.terms() {
        acc += c * &jones_f(w)?;
    }
    Ok(acc)
}

/// Jones trace of `f_w`, through the g-expansion of `f_w`.
fn jones_f(w: &FcWord) -> Result<Scalar> {
    if let Some(c) = JONES_F_MEMO.with(|m| m.borrow().get(w).cloned()) {
        return Ok(c);
    }
    let mut value = Scalar::zero();
    for (u, c) in to_g_basis(&TLElement::basis(w.clone()))? {
        value += &c * &jones_g(&u)?;
    }
    JONES_F_MEMO.with(|m| m.borrow_mut().insert(w.clone(), value.clone()));
    Ok(value)
}

/// `rho(f_w)`.
fn rho_f(w: &FcWord) -> Result<Scalar> {
    if let Some(c) = RHO_MEMO.with(|m| m.borrow().get(w).cloned()) {
        return Ok(c);
    }
    let m = w.graph().gens();
    let image = E_HOMS.with(|homs| -> Result<TLElement> {
        let mut homs = homs.borrow_mut();
        let hom = match homs.entry(m) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(e) => e.insert(e_hom(m)?),
        };
        hom.image_of_f_word(w)
    })?;
    let value = jones_trace(&image)?;
    RHO_MEMO.with(|memo| memo.borrow_mut().insert(w.clone(), value.clone()));
    Ok(value)
}

/// The affine Markov trace: the Jones trace of the image under `E`.
pub fn rho(x: &TLElement) -> Result<Scalar> {
    require_affine_rank(x.graph(), None)?;
    let mut acc = Scalar::zero();
    for (w, c) in x.terms() {
        acc += c * &rho_f(w)?;
    }
    Ok(acc)
}

/// Link invariant of the closure of an affine braid.
pub fn invariant(b: &BraidWord) -> Result<Scalar> {
    rho(&braid_image(b)?)
}

/// A parameter sequence indexed by `k >= 1`.
pub type Sequence = Arc<dyn Fn(usize) -> Result<Scalar> + Send + Sync>;

fn sequence_from_values(name: &'static str, values: Vec<Scalar>) -> Sequence {
    Arc::new(move |k| {
        values
            .get(k.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| Error::MissingParameter(format!("{name}_{k}")))
    })
}

fn f_power(graph: CoxeterGraph, period: &[Letter], k: usize) -> Result<TLElement> {
    let letters: Vec<Letter> = period.iter().copied().cycle().take(period.len() * k).collect();
    TLElement::f_word(graph, &letters)
}

/// Parameters of a trace on the rank-2 affine algebra.
#[derive(Clone)]
pub struct TraceParamsTL2 {
    pub a0: Scalar,
    pub a1: Scalar,
    pub alpha: Sequence,
}

impl TraceParamsTL2 {
    pub fn new(a0: Scalar, a1: Scalar, alpha: Sequence) -> Self {
        TraceParamsTL2 { a0, a1, alpha }
    }

    pub fn from_values(a0: Scalar, a1: Scalar, alpha: Vec<Scalar>) -> Self {
        TraceParamsTL2 { a0, a1, alpha: sequence_from_values("alpha", alpha) }
    }

    /// The parameters of `rho` on rank 2, computed on demand.
    pub fn from_rho() -> Self {
        let graph = CoxeterGraph::affine(2).unwrap();
        TraceParamsTL2 {
            a0: Scalar::loop_factor(),
            a1: Scalar::markov_f(),
            alpha: Arc::new(move |k| rho(&f_power(graph, &[0, 1], k)?)),
        }
    }
}

impl fmt::Debug for TraceParamsTL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TraceParamsTL2").field("a0", &self.a0).field("a1", &self.a1).finish_non_exhaustive()
    }
}

/// Parameters of a rotation-invariant trace on the rank-3 affine algebra.
/// `beta` covers the orbit of `s1 s2 a`, `beta_rev` that of `s2 s1 a`;
/// with `uniform` set, `beta` is used for both.
#[derive(Clone)]
pub struct TraceParamsTL3 {
    pub b0: Scalar,
    pub b1: Scalar,
    pub b2: Scalar,
    pub beta: Sequence,
    pub beta_rev: Sequence,
    pub uniform: bool,
}

impl TraceParamsTL3 {
    pub fn uniform(b0: Scalar, b1: Scalar, b2: Scalar, beta: Sequence) -> Self {
        TraceParamsTL3 { b0, b1, b2, beta_rev: beta.clone(), beta, uniform: true }
    }

    pub fn split(b0: Scalar, b1: Scalar, b2: Scalar, beta: Sequence, beta_rev: Sequence) -> Self {
        TraceParamsTL3 { b0, b1, b2, beta, beta_rev, uniform: false }
    }

    pub fn from_values(b0: Scalar, b1: Scalar, b2: Scalar, beta: Vec<Scalar>, beta_rev: Vec<Scalar>) -> Self {
        Self::split(
            b0,
            b1,
            b2,
            sequence_from_values("beta", beta),
            sequence_from_values("beta'", beta_rev),
        )
    }

    /// The values `B0, B1, B2` taken by `rho` on rank 3.
    pub fn markov_low() -> [Scalar; 3] {
        let lf = Scalar::loop_factor();
        let mf = Scalar::markov_f();
        [&lf * &lf, Scalar::one(), &mf * &mf]
    }

    /// The parameters of `rho` on rank 3, computed on demand.
    pub fn from_rho() -> Self {
        let graph = CoxeterGraph::affine(3).unwrap();
        let [b0, b1, b2] = Self::markov_low();
        Self::split(
            b0,
            b1,
            b2,
            Arc::new(move |k| rho(&f_power(graph, &FORWARD, k)?)),
            Arc::new(move |k| rho(&f_power(graph, &BACKWARD, k)?)),
        )
    }

    fn value(&self, slot: Slot) -> Result<Scalar> {
        match slot {
            Slot::B0 => Ok(self.b0.clone()),
            Slot::B1 => Ok(self.b1.clone()),
            Slot::B2 => Ok(self.b2.clone()),
            Slot::Beta(k) => (self.beta)(k),
            Slot::BetaRev(k) if self.uniform => (self.beta)(k),
            Slot::BetaRev(k) => (self.beta_rev)(k),
        }
    }
}

impl fmt::Debug for TraceParamsTL3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TraceParamsTL3")
            .field("b0", &self.b0)
            .field("b1", &self.b1)
            .field("b2", &self.b2)
            .field("uniform", &self.uniform)
            .finish_non_exhaustive()
    }
}

pub fn generic_trace2(p: &TraceParamsTL2, x: &TLElement) -> Result<Scalar> {
    require_affine_rank(x.graph(), Some(2))?;
    let mut acc = Scalar::zero();
    for (w, c) in x.terms() {
        let value = match w.len() {
            0 => p.a0.clone(),
            1 => p.a1.clone(),
            l => (p.alpha)(l / 2)?,
        };
        acc += c * &value;
    }
    Ok(acc)
}

/// Letters of one period of `s1 s2 a` on the rank-3 affine graph.
pub const FORWARD: [Letter; 3] = [0, 1, 2];
/// Letters of one period of `s2 s1 a`.
pub const BACKWARD: [Letter; 3] = [1, 0, 2];

/// A free parameter of a rank-3 trace.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Slot {
    B0,
    B1,
    B2,
    Beta(usize),
    BetaRev(usize),
}

/// The parameter governing a rank-3 basis word, and whether it carries an
/// extra factor `delta`.
pub fn classify_tl3(w: &FcWord) -> Result<(Slot, bool)> {
    require_affine_rank(w.graph(), Some(3))?;
    let l = w.len();
    match l {
        0 => return Ok((Slot::B0, false)),
        1 => return Ok((Slot::B1, false)),
        2 => return Ok((Slot::B2, false)),
        _ => {}
    }
    let graph = w.graph();
    let (k, extra) = (l / 3, l % 3 == 2);
    for (period, slot) in [(FORWARD, Slot::Beta(k)), (BACKWARD, Slot::BetaRev(k))] {
        let letters: Vec<Letter> = period.iter().copied().cycle().take(l).collect();
        let base = FcWord::new(graph, &letters)?;
        for d in 0..3 {
            if &rotate(&base, d)? == w {
                return Ok((slot, extra));
            }
        }
    }
    Err(Error::NotClassifiable(w.to_string()))
}

/// `x` as a linear form in the free parameters of a rank-3 trace.
pub fn tl3_linear_form(x: &TLElement) -> Result<BTreeMap<Slot, Scalar>> {
    let delta = Scalar::delta();
    let mut form: BTreeMap<Slot, Scalar> = BTreeMap::new();
    for (w, c) in x.terms() {
        let (slot, extra) = classify_tl3(w)?;
        let c = if extra { c * &delta } else { c.clone() };
        *form.entry(slot).or_insert_with(Scalar::zero) += &c;
    }
    form.retain(|_, c| !c.is_zero());
    Ok(form)
}

pub fn generic_trace3(p: &TraceParamsTL3, x: &TLElement) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (slot, c) in tl3_linear_form(x)? {
        acc += &c * &p.value(slot)?;
    }
    Ok(acc)
}

/// The elements `x_i = F(f_{s1} f_{a})^i`-type closed forms and their mirror
/// images `z_i` in the rank-3 affine algebra.
pub fn build_xz(i: usize) -> Result<(TLElement, TLElement)> {
    if i == 0 {
        return Err(Error::LengthLimitExceeded { limit: 0 });
    }
    let g = CoxeterGraph::affine(3)?;
    let f = |letters: &[Letter]| TLElement::f_word(g, letters);
    let q1 = &Scalar::q() + &Scalar::one();
    let c_p = -&q1.div(&Scalar::q())?;
    let c_q = -&q1;
    let pw = |c: &Scalar, e: usize| c.pow(e as i32);
    let (p, qq, r, s) = (f(&[0, 2, 1])?, f(&[0, 1, 2])?, f(&[2, 1, 0])?, f(&[1, 2, 0])?);
    let (k, k1) = (i as u32, i as u32 - 1);
    let x = &(&p.pow(k)?.scale(&pw(&c_p, i)?) + &qq.pow(k)?.scale(&pw(&c_q, i)?))
        + &(&(&p.pow(k1)? * &f(&[0, 2])?).scale(&pw(&c_p, i - 1)?)
            + &(&qq.pow(k1)? * &f(&[0, 1])?).scale(&pw(&c_q, i - 1)?));
    let z = &(&r.pow(k)?.scale(&pw(&c_p, i)?) + &s.pow(k)?.scale(&pw(&c_q, i)?))
        + &(&(&f(&[1, 0])? * &r.pow(k1)?).scale(&pw(&c_p, i - 1)?)
            + &(&f(&[2, 0])? * &s.pow(k1)?).scale(&pw(&c_q, i - 1)?));
    Ok((x, z))
}

/// Coefficients `c_1..c_k` with `x_1^k = sum c_i x_i`, from
/// `x_1 x_1 = 3 delta x_1 + x_2` and
/// `x_1 x_i = delta^2 x_{i-1} + 2 delta x_i + x_{i+1}`.
pub fn gamma_coefficients(k: usize) -> Vec<Scalar> {
    let d = Scalar::delta();
    let d2 = &d * &d;
    let mut c = vec![Scalar::one()];
    for _ in 1..k {
        let mut next = vec![Scalar::zero(); c.len() + 1];
        for (idx, ci) in c.iter().enumerate() {
            let i = idx + 1;
            if i == 1 {
                next[0] += &(ci * &(&Scalar::int(3) * &d));
            } else {
                next[idx - 1] += &(ci * &d2);
                next[idx] += &(ci * &(&Scalar::int(2) * &d));
            }
            next[idx + 1] += ci;
        }
        c = next;
    }
    c
}

/// Values `alpha_k`, `beta_k`, `beta'_k` for `k = 1..=kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub beta_rev: Vec<Scalar>,
}

fn eval_known(
    form: &BTreeMap<Slot, Scalar>,
    known: &HashMap<Slot, Scalar>,
    unknowns: [Slot; 2],
    k: usize,
) -> Result<(Scalar, [Scalar; 2])> {
    let mut constant = Scalar::zero();
    let mut coeffs = [Scalar::zero(), Scalar::zero()];
    for (slot, c) in form {
        if let Some(j) = unknowns.iter().position(|u| u == slot) {
            coeffs[j] += c;
        } else if let Some(val) = known.get(slot) {
            constant += &(c * val);
        } else {
            return Err(Error::SingularSystem { k });
        }
    }
    Ok((constant, coeffs))
}

/// Solves, depth by depth, the linear equations
/// `rho(x_1^k f_{s2}) = rho(f_{s2} z_1^k) = -(sqrt q/(q+1)) alpha_k`
/// for the two rank-3 orbit parameters, then checks each solution against
/// a direct evaluation of `rho`.
pub fn solve_alpha_beta(kmax: usize) -> Result<AlphaBeta> {
    let g2 = CoxeterGraph::affine(2)?;
    let g3 = CoxeterGraph::affine(3)?;
    let f_s2 = TLElement::f_word(g3, &[1])?;
    let [b0, b1, b2] = TraceParamsTL3::markov_low();
    let mut known: HashMap<Slot, Scalar> = [(Slot::B0, b0), (Slot::B1, b1), (Slot::B2, b2)].into_iter().collect();
    let mut x_forms = Vec::new();
    let mut z_forms = Vec::new();
    let mut out = AlphaBeta { alpha: Vec::new(), beta: Vec::new(), beta_rev: Vec::new() };

    for k in 1..=kmax {
        let (x, z) = build_xz(k)?;
        x_forms.push(tl3_linear_form(&(&x * &f_s2))?);
        z_forms.push(tl3_linear_form(&(&f_s2 * &z))?);

        let alpha = rho(&f_power(g2, &[0, 1], k)?)?;
        let rhs = &Scalar::markov_f() * &alpha;
        let gamma = gamma_coefficients(k);
        let combine = |forms: &[BTreeMap<Slot, Scalar>]| {
            let mut total: BTreeMap<Slot, Scalar> = BTreeMap::new();
            for (gi, form) in gamma.iter().zip(forms) {
                for (slot, c) in form {
                    *total.entry(*slot).or_insert_with(Scalar::zero) += &(gi * c);
                }
            }
            total
        };
        let unknowns = [Slot::Beta(k), Slot::BetaRev(k)];
        let (cx, [a11, a12]) = eval_known(&combine(&x_forms), &known, unknowns, k)?;
        let (cz, [a21, a22]) = eval_known(&combine(&z_forms), &known, unknowns, k)?;
        let (r1, r2) = (&rhs - &cx, &rhs - &cz);
        let det = &(&a11 * &a22) - &(&a12 * &a21);
        if det.is_zero() {
            return Err(Error::SingularSystem { k });
        }
        let beta = (&(&r1 * &a22) - &(&a12 * &r2)).div(&det)?;
        let beta_rev = (&(&a11 * &r2) - &(&r1 * &a21)).div(&det)?;

        let direct = rho(&f_power(g3, &FORWARD, k)?)?;
        let direct_rev = rho(&f_power(g3, &BACKWARD, k)?)?;
        if direct != beta || direct_rev != beta_rev {
            return Err(Error::CrossCheck(format!(
                "depth {k}: solved ({beta}, {beta_rev}), direct ({direct}, {direct_rev})"
            )));
        }
        known.insert(Slot::Beta(k), beta.clone());
        known.insert(Slot::BetaRev(k), beta_rev.clone());
        out.alpha.push(alpha);
        out.beta.push(beta);
        out.beta_rev.push(beta_rev);
    }
    Ok(out)
}

/// A linear functional on an algebra, selected by name.
pub trait TraceFunctional: Send + Sync {
    fn name(&self) -> &'static str;
    fn eval(&self, x: &TLElement) -> Result<Scalar>;
}

pub struct Jones;
pub struct Rho;
pub struct Generic2(pub TraceParamsTL2);
pub struct Generic3(pub TraceParamsTL3);

impl TraceFunctional for Jones {
    fn name(&self) -> &'static str {
        "jones"
    }
    fn eval(&self, x: &TLElement) -> Result<Scalar> {
        jones_trace(x)
    }
}

impl TraceFunctional for Rho {
    fn name(&self) -> &'static str {
        "rho"
    }
    fn eval(&self, x: &TLElement) -> Result<Scalar> {
        rho(x)
    }
}

impl TraceFunctional for Generic2 {
    fn name(&self) -> &'static str {
        "generic2"
    }
    fn eval(&self, x: &TLElement) -> Result<Scalar> {
        generic_trace2(&self.0, x)
    }
}

impl TraceFunctional for Generic3 {
    fn name(&self) -> &'static str {
        "generic3"
    }
    fn eval(&self, x: &TLElement) -> Result<Scalar> {
        generic_trace3(&self.0, x)
    }
}

pub const TRACE_NAMES: [&str; 4] = ["rho", "jones", "generic2", "generic3"];

/// Looks up a trace by name; the parametrized ones use the values of `rho`.
pub fn trace_by_name(name: &str) -> Result<Box<dyn TraceFunctional>> {
    match name {
        "rho" => Ok(Box::new(Rho)),
        "jones" => Ok(Box::new(Jones)),
        "generic2" => Ok(Box::new(Generic2(TraceParamsTL2::from_rho()))),
        "generic3" => Ok(Box::new(Generic3(TraceParamsTL3::from_rho()))),
        _ => Err(Error::UnknownName { kind: "trace", name: name.to_string() }),
    }
}

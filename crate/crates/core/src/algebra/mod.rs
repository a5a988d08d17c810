//! Elements of affine and classical Temperley-Lieb algebras as sparse linear
//! combinations of f-basis words.
//!
//! The f-generators `f_s = (g_s + 1)/(q + 1)` satisfy purely monomial
//! relations (`f_s^2 = f_s`, `f_s f_t f_s = delta f_s` for adjacent `s, t`),
//! so the product of two basis words is a power of `delta` times one basis
//! word. Everything else (g- and T-generators, inverses) is derived.

mod parse;
mod strategy;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use parse::{format_g_basis, parse_element, JsonTerm};
pub use strategy::{
    strategy_by_name, LeftFold, LeftmostRedex, RandomRedex, ReductionStrategy, RightFold,
    STRATEGY_NAMES,
};

use crate::coeff::Scalar;
use crate::coxeter::{self, CoxeterGraph, FcWord, Letter};
use crate::error::{Error, Result};

/// Default cap on the length of basis words produced by multiplication.
pub const DEFAULT_MAX_LEN: usize = 64;

/// Which generator to build with [`gen`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenStyle {
    F,
    G,
    T,
    GInv,
    TInv,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TLElement {
    graph: CoxeterGraph,
    terms: BTreeMap<FcWord, Scalar>,
}

impl TLElement {
    pub fn zero(graph: CoxeterGraph) -> Self {
        TLElement { graph, terms: BTreeMap::new() }
    }

    pub fn one(graph: CoxeterGraph) -> Self {
        Self::scalar(graph, Scalar::one())
    }

    pub fn scalar(graph: CoxeterGraph, c: Scalar) -> Self {
        Self::term(c, FcWord::identity(graph))
    }

    pub fn basis(w: FcWord) -> Self {
        Self::term(Scalar::one(), w)
    }

    pub fn term(c: Scalar, w: FcWord) -> Self {
        let mut x = TLElement::zero(w.graph());
        x.add_term(w, c);
        x
    }

    /// `f_w` for a redex-free word given by letters.
    pub fn f_word(graph: CoxeterGraph, letters: &[Letter]) -> Result<Self> {
        Ok(Self::basis(FcWord::new(graph, letters)?))
    }

    /// Builds an element from `(coefficient, word)` pairs, merging duplicates.
    pub fn from_terms(graph: CoxeterGraph, terms: impl IntoIterator<Item = (Scalar, FcWord)>) -> Result<Self> {
        let mut x = TLElement::zero(graph);
        for (c, w) in terms {
            if w.graph() != graph {
                return Err(mismatch(&graph, &w.graph()));
            }
            x.add_term(w, c);
        }
        Ok(x)
    }

    pub fn graph(&self) -> CoxeterGraph {
        self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FcWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &FcWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Length of the longest basis word present.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(FcWord::len).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, w: FcWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TLElement::zero(self.graph);
        }
        TLElement {
            graph: self.graph,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &TLElement) -> Result<Self> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TLElement) -> Result<Self> {
        self.try_add(&-other)
    }

    fn same_graph(&self, other: &TLElement) -> Result<()> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(mismatch(&self.graph, &other.graph))
        }
    }

    /// Product with the default strategy and length cap.
    pub fn try_mul(&self, other: &TLElement) -> Result<Self> {
        self.mul_with(other, &LeftFold, DEFAULT_MAX_LEN)
    }

    pub fn mul_with(&self, other: &TLElement, strategy: &dyn ReductionStrategy, max_len: usize) -> Result<Self> {
        self.same_graph(other)?;
        let graph = self.graph;
        // accumulate by (word, delta power) to cut down on scalar work
        let mut acc: HashMap<(Vec<Letter>, u32), Scalar> = HashMap::new();
        for (wl, cl) in &self.terms {
            for (wr, cr) in &other.terms {
                let (k, w) = strategy.product(&graph, wl.letters(), wr.letters());
                if w.len() > max_len {
                    return Err(Error::LengthLimitExceeded { limit: max_len });
                }
                let c = cl * cr;
                let slot = acc.entry((w, k)).or_default();
                *slot += &c;
            }
        }
        let delta = Scalar::delta();
        let mut powers: Vec<Scalar> = vec![Scalar::one()];
        let mut out = TLElement::zero(graph);
        for ((w, k), c) in acc {
            while powers.len() <= k as usize {
                let next = powers.last().unwrap() * &delta;
                powers.push(next);
            }
            out.add_term(FcWord::from_canonical(graph, w), c * &powers[k as usize]);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = TLElement::one(self.graph);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Applies a map on basis words, keeping coefficients.
    pub(crate) fn map_words(&self, graph: CoxeterGraph, f: impl Fn(&FcWord) -> Result<FcWord>) -> Result<Self> {
        let mut out = TLElement::zero(graph);
        for (w, c) in &self.terms {
            out.add_term(f(w)?, c.clone());
        }
        Ok(out)
    }

    /// Re-tags the element on another graph in which all its words are valid
    /// canonical words (used for the inclusion of classical algebras).
    pub(crate) fn retag(&self, graph: CoxeterGraph) -> Result<Self> {
        self.map_words(graph, |w| w.on_graph(graph))
    }
}

fn mismatch(a: &CoxeterGraph, b: &CoxeterGraph) -> Error {
    Error::RankMismatch(format!("{a} vs {b}"))
}

/// `scale * f_w * f_s = c * f_{w'}`; returns `(c, w')`.
pub fn append_letter(scale: &Scalar, w: &FcWord, s: Letter) -> Result<(Scalar, FcWord)> {
    append_letter_capped(scale, w, s, DEFAULT_MAX_LEN)
}

pub fn append_letter_capped(scale: &Scalar, w: &FcWord, s: Letter, max_len: usize) -> Result<(Scalar, FcWord)> {
    let graph = w.graph();
    graph.check_letter(s)?;
    let (k, letters) = LeftFold.product(&graph, w.letters(), &[s]);
    if letters.len() > max_len {
        return Err(Error::LengthLimitExceeded { limit: max_len });
    }
    let c = scale * &Scalar::delta().pow(k as i32)?;
    Ok((c, FcWord::from_canonical(graph, letters)))
}

/// Reduces an arbitrary product of f-generators `f_{s1} f_{s2} ...` to normal form.
pub fn reduce_monomial(graph: CoxeterGraph, letters: &[Letter]) -> Result<(Scalar, FcWord)> {
    letters.iter().try_for_each(|&s| graph.check_letter(s))?;
    let mut acc = letters.to_vec();
    let k = strategy::reduce_rightmost(&graph, &mut acc);
    let w = coxeter::foata_normal_form(&graph, &acc);
    if w.len() > DEFAULT_MAX_LEN {
        return Err(Error::LengthLimitExceeded { limit: DEFAULT_MAX_LEN });
    }
    Ok((Scalar::delta().pow(k as i32)?, FcWord::from_canonical(graph, w)))
}

/// A single generator in the requested normalization.
pub fn gen(style: GenStyle, s: Letter, graph: CoxeterGraph) -> Result<TLElement> {
    graph.check_letter(s)?;
    let f = TLElement::basis(FcWord::from_canonical(graph, vec![s]));
    let one = TLElement::one(graph);
    let q = Scalar::q();
    let v = Scalar::v();
    let q1 = &q + &Scalar::one();
    // g = (q+1) f - 1
    let g = &f.scale(&q1) - &one;
    Ok(match style {
        GenStyle::F => f,
        GenStyle::G => g,
        GenStyle::T => g.scale(&v),
        GenStyle::GInv => {
            // (1/q) g + ((1-q)/q)
            let qi = q.inv()?;
            &g.scale(&qi) + &one.scale(&(&(&Scalar::one() - &q) * &qi))
        }
        GenStyle::TInv => {
            // (1/q^2)(T - v(q-1))
            let t = g.scale(&v);
            let shift = one.scale(&(&v * &(&q - &Scalar::one())));
            (&t - &shift).scale(&q.pow(-2)?)
        }
    })
}

/// `g_w` expanded in the f-basis, for any word (a product of g-generators).
pub fn from_g_word(w: &FcWord) -> Result<TLElement> {
    let graph = w.graph();
    let mut acc = TLElement::one(graph);
    for &s in w.letters() {
        acc = acc.try_mul(&gen(GenStyle::G, s, graph)?)?;
    }
    Ok(acc)
}

/// Memo of `g_w` expansions keyed by canonical word, built by right
/// multiplication from the longest proper prefix.
#[derive(Default)]
pub(crate) struct GWordCache {
    memo: HashMap<FcWord, TLElement>,
}

impl GWordCache {
    pub(crate) fn get(&mut self, w: &FcWord) -> Result<TLElement> {
        if let Some(x) = self.memo.get(w) {
            return Ok(x.clone());
        }
        let graph = w.graph();
        let x = match w.letters().split_last() {
            None => TLElement::one(graph),
            Some((&s, rest)) => {
                let prefix = FcWord::new(graph, rest)?;
                self.get(&prefix)?.try_mul(&gen(GenStyle::G, s, graph)?)?
            }
        };
        self.memo.insert(w.clone(), x.clone());
        Ok(x)
    }
}

/// Coordinates of `x` in the basis `{g_w}`.
///
/// `g_w = (q+1)^{l(w)} f_w + (shorter words)`, so the conversion eliminates
/// the longest f-words first.
pub fn to_g_basis(x: &TLElement) -> Result<BTreeMap<FcWord, Scalar>> {
    to_g_basis_cached(x, &mut GWordCache::default())
}

pub(crate) fn to_g_basis_cached(x: &TLElement, cache: &mut GWordCache) -> Result<BTreeMap<FcWord, Scalar>> {
    let q1 = &Scalar::q() + &Scalar::one();
    let mut rest = x.clone();
    let mut out = BTreeMap::new();
    // shortlex order: the last key is a longest word
    while let Some((w, c)) = rest.terms.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
        let coeff = &c * &q1.pow(-(w.len() as i32))?;
        let gw = cache.get(&w)?;
        rest = &rest - &gw.scale(&coeff);
        debug_assert!(rest.coeff(&w).is_zero());
        out.insert(w, coeff);
    }
    Ok(out)
}

/// Inverse of [`to_g_basis`].
pub fn from_g_basis(graph: CoxeterGraph, coords: &BTreeMap<FcWord, Scalar>) -> Result<TLElement> {
    let mut cache = GWordCache::default();
    let mut out = TLElement::zero(graph);
    for (w, c) in coords {
        out = &out + &cache.get(w)?.scale(c);
    }
    Ok(out)
}

/// The Dynkin rotation applied `d` times; an algebra automorphism.
pub fn psi(x: &TLElement, d: i64) -> Result<TLElement> {
    x.map_words(x.graph, |w| coxeter::rotate(w, d))
}

/// Reverses every basis word and applies `v -> 1/v` to the coefficients.
pub fn chi(x: &TLElement) -> TLElement {
    let mut out = TLElement::zero(x.graph);
    for (w, c) in &x.terms {
        out.add_term(coxeter::reverse(w), c.bar());
    }
    out
}

impl<'a> Add<&'a TLElement> for &'a TLElement {
    type Output = TLElement;
    fn add(self, rhs: &'a TLElement) -> TLElement {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl<'a> Sub<&'a TLElement> for &'a TLElement {
    type Output = TLElement;
    fn sub(self, rhs: &'a TLElement) -> TLElement {
        self.try_sub(rhs).expect("subtracting elements of different algebras")
    }
}

/// Panics on mismatched algebras or when the length cap is hit; use
/// [`TLElement::try_mul`] to handle those cases.
impl<'a> Mul<&'a TLElement> for &'a TLElement {
    type Output = TLElement;
    fn mul(self, rhs: &'a TLElement) -> TLElement {
        self.try_mul(rhs).expect("multiplication failed")
    }
}

impl Neg for &TLElement {
    type Output = TLElement;
    fn neg(self) -> TLElement {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_terms(self.terms.iter()))
    }
}

impl fmt::Debug for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(m: usize) -> CoxeterGraph {
        CoxeterGraph::affine(m).unwrap()
    }

    fn fw(g: CoxeterGraph, letters: &[Letter]) -> FcWord {
        FcWord::new(g, letters).unwrap()
    }

    #[test]
    fn append_letter_examples() {
        let one = Scalar::one();
        let g = aff(3);
        assert_eq!(append_letter(&one, &fw(g, &[0]), 0).unwrap(), (one.clone(), fw(g, &[0])));
        assert_eq!(append_letter(&one, &fw(g, &[0, 1]), 0).unwrap(), (Scalar::delta(), fw(g, &[0])));
        let p = CoxeterGraph::type_a(3).unwrap();
        assert_eq!(append_letter(&one, &fw(p, &[0, 1, 2]), 0).unwrap(), (Scalar::delta(), fw(p, &[0, 2])));
        assert!(matches!(append_letter(&one, &fw(p, &[0]), 7), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn append_letter_respects_cap() {
        let g = aff(2);
        let w = fw(g, &[0, 1, 0, 1]);
        assert!(matches!(
            append_letter_capped(&Scalar::one(), &w, 0, 4),
            Err(Error::LengthLimitExceeded { limit: 4 })
        ));
    }

    #[test]
    fn rank_two_product_is_concatenation() {
        let g = aff(2);
        let x = TLElement::f_word(g, &[0]).unwrap();
        let y = TLElement::f_word(g, &[1]).unwrap();
        assert_eq!(&x * &y, TLElement::f_word(g, &[0, 1]).unwrap());
    }

    #[test]
    fn generator_inverses() {
        let g = aff(3);
        let one = TLElement::one(g);
        for s in 0..3 {
            assert_eq!(&gen(GenStyle::GInv, s, g).unwrap() * &gen(GenStyle::G, s, g).unwrap(), one);
            assert_eq!(&gen(GenStyle::TInv, s, g).unwrap() * &gen(GenStyle::T, s, g).unwrap(), one);
        }
    }

    #[test]
    fn g_generator_in_f_basis() {
        let g = aff(3);
        let q1 = &Scalar::q() + &Scalar::one();
        let expect = TLElement::from_terms(
            g,
            [(q1, fw(g, &[1])), (-Scalar::one(), FcWord::identity(g))],
        )
        .unwrap();
        assert_eq!(gen(GenStyle::G, 1, g).unwrap(), expect);
    }

    #[test]
    fn g_basis_examples() {
        let g = aff(3);
        let q1i = (&Scalar::q() + &Scalar::one()).inv().unwrap();
        let c = to_g_basis(&TLElement::f_word(g, &[0]).unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&fw(g, &[0])], q1i);
        assert_eq!(c[&FcWord::identity(g)], q1i);
        let c = to_g_basis(&TLElement::one(g)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&FcWord::identity(g)], Scalar::one());
        let sq = &q1i * &q1i;
        let c = to_g_basis(&TLElement::f_word(g, &[0, 1]).unwrap()).unwrap();
        assert_eq!(c.len(), 4);
        for w in [&[0u8, 1][..], &[0], &[1], &[]] {
            assert_eq!(c[&fw(g, w)], sq);
        }
    }

    #[test]
    fn g_basis_round_trip() {
        let g = aff(4);
        let x = &TLElement::f_word(g, &[0, 2, 1]).unwrap()
            + &TLElement::f_word(g, &[3, 1]).unwrap().scale(&Scalar::v());
        let coords = to_g_basis(&x).unwrap();
        assert_eq!(from_g_basis(g, &coords).unwrap(), x);
        let gw = from_g_word(&fw(g, &[0, 2, 1])).unwrap();
        let coords = to_g_basis(&gw).unwrap();
        assert_eq!(coords.len(), 1);
        assert_eq!(coords[&fw(g, &[0, 2, 1])], Scalar::one());
    }

    #[test]
    fn psi_and_chi() {
        let g = aff(3);
        let f1 = TLElement::f_word(g, &[0]).unwrap();
        assert_eq!(psi(&f1, 1).unwrap(), TLElement::f_word(g, &[1]).unwrap());
        assert_eq!(psi(&f1, 3).unwrap(), f1);
        assert_eq!(chi(&TLElement::one(g)), TLElement::one(g));
        let x = TLElement::f_word(g, &[0, 1, 2]).unwrap().scale(&Scalar::q());
        let y = TLElement::f_word(g, &[2, 1, 0]).unwrap().scale(&Scalar::q().inv().unwrap());
        assert_eq!(chi(&x), y);
        assert_eq!(chi(&chi(&x)), x);
    }

    #[test]
    fn mismatched_graphs() {
        let x = TLElement::one(aff(3));
        let y = TLElement::one(aff(4));
        assert!(matches!(x.try_mul(&y), Err(Error::RankMismatch(_))));
        assert!(matches!(x.try_add(&y), Err(Error::RankMismatch(_))));
    }
}

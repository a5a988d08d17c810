//! Maps along the tower: `F` (affine rank m to m+1), `E` (affine rank m onto
//! the classical algebra on m-1 generators), the classical inclusion, and
//! the passage from affine braid words to algebra elements.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{gen, to_g_basis_cached, GWordCache, GenStyle, TLElement};
use crate::coeff::Scalar;
use crate::coxeter::{CoxeterGraph, FcWord, Letter};
use crate::error::{Error, Result};

/// Algebra homomorphism determined by the images of the g-generators.
/// Elements are expanded in the g-basis and each `g_w` is sent to the
/// product of generator images, memoized by prefix.
pub struct GenHom {
    source: CoxeterGraph,
    target: CoxeterGraph,
    images: Vec<TLElement>,
    memo: HashMap<FcWord, TLElement>,
    f_memo: HashMap<FcWord, TLElement>,
    g_cache: GWordCache,
}

impl GenHom {
    pub fn new(source: CoxeterGraph, target: CoxeterGraph, images: Vec<TLElement>) -> Self {
        assert_eq!(images.len(), source.gens());
        GenHom { source, target, images, memo: HashMap::new(), f_memo: HashMap::new(), g_cache: GWordCache::default() }
    }

    pub fn source(&self) -> CoxeterGraph {
        self.source
    }

    pub fn target(&self) -> CoxeterGraph {
        self.target
    }

    /// Image of the g-generator with index `s`.
    pub fn gen_image(&self, s: Letter) -> &TLElement {
        &self.images[s as usize]
    }

    /// Image of the basis element `g_w`.
    pub fn image_of_g_word(&mut self, w: &FcWord) -> Result<TLElement> {
        if let Some(x) = self.memo.get(w) {
            return Ok(x.clone());
        }
        let x = match w.letters().split_last() {
            None => TLElement::one(self.target),
            Some((&s, rest)) => {
                let prefix = FcWord::new(self.source, rest)?;
                self.image_of_g_word(&prefix)?.try_mul(&self.images[s as usize])?
            }
        };
        self.memo.insert(w.clone(), x.clone());
        Ok(x)
    }

    /// Image of the basis element `f_w`, by substitution into its g-expansion.
    pub fn image_of_f_word(&mut self, w: &FcWord) -> Result<TLElement> {
        if let Some(x) = self.f_memo.get(w) {
            return Ok(x.clone());
        }
        let coords = to_g_basis_cached(&TLElement::basis(w.clone()), &mut self.g_cache)?;
        let mut out = TLElement::zero(self.target);
        for (u, c) in coords {
            out = &out + &self.image_of_g_word(&u)?.scale(&c);
        }
        self.f_memo.insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn apply(&mut self, x: &TLElement) -> Result<TLElement> {
        if x.graph() != self.source {
            return Err(Error::RankMismatch(format!(
                "map defined on {}, got element of {}",
                self.source,
                x.graph()
            )));
        }
        let mut out = TLElement::zero(self.target);
        for (w, c) in x.terms() {
            out = &out + &self.image_of_f_word(w)?.scale(c);
        }
        Ok(out)
    }
}

fn require_affine(graph: &CoxeterGraph) -> Result<()> {
    if graph.is_affine() {
        Ok(())
    } else {
        Err(Error::WrongGraphKind { expected: "affine cycle", found: graph.to_string() })
    }
}

/// `F` from the affine algebra on `m` generators to the one on `m + 1`:
/// `t_{s_i} -> g_{s_i}` and `t_a -> g_{s_m} g_a g_{s_m}^{-1}`.
pub fn f_hom(m: usize) -> Result<GenHom> {
    let source = CoxeterGraph::affine(m)?;
    let target = CoxeterGraph::affine(m + 1)?;
    let top = (m - 1) as Letter;
    let a = m as Letter;
    let mut images = Vec::with_capacity(m);
    for s in 0..top {
        images.push(gen(GenStyle::G, s, target)?);
    }
    let conj = &(&gen(GenStyle::G, top, target)? * &gen(GenStyle::G, a, target)?)
        * &gen(GenStyle::GInv, top, target)?;
    images.push(conj);
    Ok(GenHom::new(source, target, images))
}

/// `E` from the affine algebra on `m` generators onto the classical algebra
/// on `n = m - 1` generators: `g_{s_i} -> g_{s_i}` and
/// `g_a -> g_{s_1} ... g_{s_{n-1}} g_{s_n} g_{s_{n-1}}^{-1} ... g_{s_1}^{-1}`.
pub fn e_hom(m: usize) -> Result<GenHom> {
    let source = CoxeterGraph::affine(m)?;
    let n = m - 1;
    let target = CoxeterGraph::type_a(n)?;
    let mut images = Vec::with_capacity(m);
    for s in 0..n as Letter {
        images.push(gen(GenStyle::G, s, target)?);
    }
    let mut ga = gen(GenStyle::G, (n - 1) as Letter, target)?;
    for s in (0..(n - 1) as Letter).rev() {
        ga = &(&gen(GenStyle::G, s, target)? * &ga) * &gen(GenStyle::GInv, s, target)?;
    }
    images.push(ga);
    Ok(GenHom::new(source, target, images))
}

pub fn f_map(x: &TLElement) -> Result<TLElement> {
    require_affine(&x.graph())?;
    f_hom(x.graph().gens())?.apply(x)
}

pub fn e_map(x: &TLElement) -> Result<TLElement> {
    require_affine(&x.graph())?;
    e_hom(x.graph().gens())?.apply(x)
}

/// `F` on the bottom of the tower: the ground field into the rank-2 algebra.
pub fn f_from_ground(c: &Scalar) -> TLElement {
    TLElement::scalar(CoxeterGraph::affine(2).unwrap(), c.clone())
}

/// Classical algebra on `n` generators as the subalgebra of the affine one
/// on `n + 1` generated by `s_1..s_n`.
pub fn include(x: &TLElement) -> Result<TLElement> {
    let graph = x.graph();
    if graph.is_affine() {
        return Err(Error::WrongGraphKind { expected: "type A path", found: graph.to_string() });
    }
    x.retag(CoxeterGraph::affine(graph.gens() + 1)?)
}

/// Classical algebra on `n` generators inside the one on `n + 1`.
pub fn include_classical(x: &TLElement) -> Result<TLElement> {
    let graph = x.graph();
    if graph.is_affine() {
        return Err(Error::WrongGraphKind { expected: "type A path", found: graph.to_string() });
    }
    x.retag(CoxeterGraph::type_a(graph.gens() + 1)?)
}

/// A word in the affine braid group on `gens` generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BraidWord {
    gens: usize,
    letters: Vec<(Letter, i8)>,
}

impl BraidWord {
    pub fn new(gens: usize, letters: Vec<(Letter, i8)>) -> Result<Self> {
        let graph = CoxeterGraph::affine(gens)?;
        for &(s, e) in &letters {
            graph.check_letter(s)?;
            if e != 1 && e != -1 {
                return Err(Error::InvalidGenerator(format!("exponent {e}")));
            }
        }
        Ok(BraidWord { gens, letters })
    }

    pub fn empty(gens: usize) -> Result<Self> {
        BraidWord::new(gens, Vec::new())
    }

    /// Parses whitespace-separated letters `s<k>` / `a`, each optionally
    /// followed by `^-1`, `^1` or `'` (inverse).
    pub fn parse(gens: usize, text: &str) -> Result<Self> {
        let graph = CoxeterGraph::affine(gens)?;
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (base, exp) = if let Some(b) = tok.strip_suffix("^-1") {
                (b, -1)
            } else if let Some(b) = tok.strip_suffix('\'') {
                (b, -1)
            } else if let Some(b) = tok.strip_suffix("^1") {
                (b, 1)
            } else {
                (tok, 1)
            };
            letters.push((graph.parse_letter(base)?, exp));
        }
        Ok(BraidWord { gens, letters })
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn graph(&self) -> CoxeterGraph {
        CoxeterGraph::affine(self.gens).unwrap()
    }

    pub fn letters(&self) -> &[(Letter, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            gens: self.gens,
            letters: self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.gens != other.gens {
            return Err(Error::RankMismatch(format!("braid words on {} and {} generators", self.gens, other.gens)));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { gens: self.gens, letters })
    }

    /// Cancels adjacent `x x^{-1}` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<(Letter, i8)> = Vec::with_capacity(self.letters.len());
        for &(s, e) in &self.letters {
            if out.last() == Some(&(s, -e)) {
                out.pop();
            } else {
                out.push((s, e));
            }
        }
        BraidWord { gens: self.gens, letters: out }
    }

    /// Exponent sum.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let graph = self.graph();
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|&(s, e)| {
                let name = graph.letter_name(s);
                if e < 0 {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect();
        f.write_str(&toks.join(" "))
    }
}

/// `s^{+1} -> T_s`, `s^{-1} -> T_s^{-1}`.
pub fn braid_image(b: &BraidWord) -> Result<TLElement> {
    let graph = b.graph();
    let mut pos = Vec::with_capacity(graph.gens());
    let mut neg = Vec::with_capacity(graph.gens());
    for s in graph.letters() {
        pos.push(gen(GenStyle::T, s, graph)?);
        neg.push(gen(GenStyle::TInv, s, graph)?);
    }
    let mut acc = TLElement::one(graph);
    for &(s, e) in b.letters() {
        let factor = if e > 0 { &pos[s as usize] } else { &neg[s as usize] };
        acc = acc.try_mul(factor)?;
    }
    Ok(acc)
}

/// The braid-level tower map: `s_i -> s_i`, `a -> s_m a s_m^{-1}`.
pub fn braid_lift(b: &BraidWord) -> Result<BraidWord> {
    let m = b.gens();
    let a_old = (m - 1) as Letter;
    let top = (m - 1) as Letter;
    let a_new = m as Letter;
    let mut letters = Vec::with_capacity(b.len());
    for &(s, e) in b.letters() {
        if s == a_old {
            letters.extend([(top, 1), (a_new, e), (top, -1)]);
        } else {
            letters.push((s, e));
        }
    }
    BraidWord::new(m + 1, letters)
}

/// The g-element of the word `s_{m-1} ... s_1 a` on the affine graph with `m`
/// generators, whose conjugation action rotates the image of `F`.
pub fn rotation_conjugator(m: usize) -> Result<TLElement> {
    let graph = CoxeterGraph::affine(m)?;
    let mut letters: Vec<Letter> = (0..(m - 1) as Letter).rev().collect();
    letters.push((m - 1) as Letter);
    crate::algebra::from_g_word(&FcWord::new(graph, &letters)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn aff(m: usize) -> CoxeterGraph {
        CoxeterGraph::affine(m).unwrap()
    }

    #[test]
    fn f_of_affine_generator_rank_two() {
        let x = TLElement::f_word(aff(2), &[1]).unwrap();
        let expect = parse_element("(-(q+1)/q)*[a s2] - (q+1)*[s2 a] + [s2] + [a]", aff(3)).unwrap();
        assert_eq!(f_map(&x).unwrap(), expect);
    }

    #[test]
    fn f_fixes_classical_generators() {
        assert_eq!(f_map(&TLElement::one(aff(2))).unwrap(), TLElement::one(aff(3)));
        let x = TLElement::f_word(aff(2), &[0]).unwrap();
        assert_eq!(f_map(&x).unwrap(), TLElement::f_word(aff(3), &[0]).unwrap());
    }

    #[test]
    fn e_of_affine_generator() {
        let p1 = CoxeterGraph::type_a(1).unwrap();
        let ga = gen(GenStyle::G, 1, aff(2)).unwrap();
        assert_eq!(e_map(&ga).unwrap(), gen(GenStyle::G, 0, p1).unwrap());
        let p2 = CoxeterGraph::type_a(2).unwrap();
        let ga = gen(GenStyle::G, 2, aff(3)).unwrap();
        let expect = &(&gen(GenStyle::G, 0, p2).unwrap() * &gen(GenStyle::G, 1, p2).unwrap())
            * &gen(GenStyle::GInv, 0, p2).unwrap();
        assert_eq!(e_map(&ga).unwrap(), expect);
    }

    #[test]
    fn e_after_include_is_identity() {
        let p = CoxeterGraph::type_a(2).unwrap();
        let x = TLElement::f_word(p, &[0]).unwrap();
        assert_eq!(include(&TLElement::one(p)).unwrap(), TLElement::one(aff(3)));
        assert_eq!(include(&x).unwrap(), TLElement::f_word(aff(3), &[0]).unwrap());
        assert_eq!(e_map(&include(&x).unwrap()).unwrap(), x);
        let y = TLElement::f_word(p, &[0, 1]).unwrap();
        assert_eq!(include(&y).unwrap(), TLElement::f_word(aff(3), &[0, 1]).unwrap());
    }

    #[test]
    fn braid_words() {
        let b = BraidWord::parse(2, "s1").unwrap();
        assert_eq!(braid_image(&b).unwrap(), gen(GenStyle::T, 0, aff(2)).unwrap());
        let b = BraidWord::parse(2, "s1 s1^-1").unwrap();
        assert_eq!(braid_image(&b).unwrap(), TLElement::one(aff(2)));
        let b = BraidWord::parse(2, "a").unwrap();
        let g = gen(GenStyle::G, 1, aff(2)).unwrap().scale(&Scalar::v());
        assert_eq!(braid_image(&b).unwrap(), g);
        assert_eq!(BraidWord::parse(2, "a' s1^1").unwrap().letters(), &[(1, -1), (0, 1)]);
        assert!(BraidWord::parse(2, "s2").is_err());
        assert_eq!(BraidWord::parse(3, "s1 a^-1").unwrap().to_string(), "s1 a^-1");
    }

    #[test]
    fn braid_lift_examples() {
        let b = BraidWord::parse(2, "a").unwrap();
        assert_eq!(braid_lift(&b).unwrap(), BraidWord::parse(3, "s2 a s2^-1").unwrap());
        let b = BraidWord::parse(2, "s1").unwrap();
        assert_eq!(braid_lift(&b).unwrap(), BraidWord::parse(3, "s1").unwrap());
        let b = BraidWord::parse(2, "a a^-1").unwrap();
        let lifted = braid_image(&braid_lift(&b).unwrap()).unwrap();
        assert_eq!(lifted, TLElement::one(aff(3)));
    }

    #[test]
    fn lift_commutes_with_image() {
        let b = BraidWord::parse(3, "s1 a s2^-1 a").unwrap();
        let via_f = f_map(&braid_image(&b).unwrap()).unwrap();
        let via_lift = braid_image(&braid_lift(&b).unwrap()).unwrap();
        assert_eq!(via_f, via_lift);
    }

    #[test]
    fn free_reduction() {
        let b = BraidWord::parse(3, "s1 a a^-1 s1^-1 s2").unwrap();
        assert_eq!(b.free_reduce(), BraidWord::parse(3, "s2").unwrap());
        assert_eq!(b.writhe(), 1);
    }

    #[test]
    fn wrong_kinds() {
        let p = CoxeterGraph::type_a(2).unwrap();
        assert!(f_map(&TLElement::one(p)).is_err());
        assert!(e_map(&TLElement::one(p)).is_err());
        assert!(include(&TLElement::one(aff(3))).is_err());
    }
}

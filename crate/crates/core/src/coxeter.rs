//! Dynkin graphs of affine type A (a cycle) and classical type A (a path),
//! together with the word combinatorics of fully commutative elements.
//!
//! Generators are small integer indices. On an affine cycle with `m`
//! generators, indices `0..m-1` are `s1..s(m-1)` and index `m-1` is the affine
//! generator `a`. On a path with `n` generators, indices `0..n` are `s1..sn`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;

/// Hard upper bound on generator counts; letters are stored as `u8`.
pub const MAX_GENS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    AffineCycle,
    TypeAPath,
}

/// How two distinct generators interact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRelation {
    /// `st = ts`
    Commute,
    /// Joined by an edge: braid relation and `V(g_s, g_t) = 0`.
    Adjacent,
    /// No relation at all (the two generators of the rank-2 affine algebra).
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterGraph {
    kind: GraphKind,
    gens: usize,
}

impl CoxeterGraph {
    /// The cycle on `m >= 2` generators.
    pub fn affine(m: usize) -> Result<Self> {
        if !(2..=MAX_GENS).contains(&m) {
            return Err(Error::RankMismatch(format!(
                "affine graph needs 2..={MAX_GENS} generators, got {m}"
            )));
        }
        Ok(CoxeterGraph { kind: GraphKind::AffineCycle, gens: m })
    }

    /// The path on `n >= 0` generators; `n = 0` is the ground field.
    pub fn type_a(n: usize) -> Result<Self> {
        if n > MAX_GENS {
            return Err(Error::RankMismatch(format!(
                "type A graph supports at most {MAX_GENS} generators, got {n}"
            )));
        }
        Ok(CoxeterGraph { kind: GraphKind::TypeAPath, gens: n })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn is_affine(&self) -> bool {
        self.kind == GraphKind::AffineCycle
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.gens as Letter
    }

    /// Index of the affine generator `a`.
    pub fn affine_letter(&self) -> Option<Letter> {
        self.is_affine().then(|| (self.gens - 1) as Letter)
    }

    pub fn check_letter(&self, s: Letter) -> Result<()> {
        if (s as usize) < self.gens {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(format!("index {s} on {self}")))
        }
    }

    /// Relation between two distinct generators, without validation.
    pub fn relation(&self, s: Letter, t: Letter) -> PairRelation {
        debug_assert_ne!(s, t);
        let (s, t) = (s as usize, t as usize);
        let d = s.abs_diff(t);
        match self.kind {
            GraphKind::TypeAPath => {
                if d == 1 {
                    PairRelation::Adjacent
                } else {
                    PairRelation::Commute
                }
            }
            GraphKind::AffineCycle => match self.gens {
                2 => PairRelation::Free,
                3 => PairRelation::Adjacent,
                m => {
                    if d == 1 || d == m - 1 {
                        PairRelation::Adjacent
                    } else {
                        PairRelation::Commute
                    }
                }
            },
        }
    }

    fn checked_pair(&self, s: Letter, t: Letter) -> Result<PairRelation> {
        self.check_letter(s)?;
        self.check_letter(t)?;
        if s == t {
            return Err(Error::InvalidGenerator(format!(
                "pair relation needs distinct generators, got {} twice",
                self.letter_name(s)
            )));
        }
        Ok(self.relation(s, t))
    }

    pub fn commutes(&self, s: Letter, t: Letter) -> Result<bool> {
        Ok(self.checked_pair(s, t)? == PairRelation::Commute)
    }

    pub fn tl_adjacent(&self, s: Letter, t: Letter) -> Result<bool> {
        Ok(self.checked_pair(s, t)? == PairRelation::Adjacent)
    }

    /// `s != t` and the two commute.
    #[inline]
    pub(crate) fn commute_distinct(&self, s: Letter, t: Letter) -> bool {
        s != t && self.relation(s, t) == PairRelation::Commute
    }

    pub fn letter_name(&self, s: Letter) -> String {
        if self.affine_letter() == Some(s) {
            "a".to_string()
        } else {
            format!("s{}", s as usize + 1)
        }
    }

    /// Parses `s<k>` (1-based) or `a`.
    pub fn parse_letter(&self, tok: &str) -> Result<Letter> {
        if tok == "a" {
            return self
                .affine_letter()
                .ok_or_else(|| Error::InvalidGenerator(format!("`a` on {self}")));
        }
        let k: usize = tok
            .strip_prefix('s')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::InvalidGenerator(format!("`{tok}`")))?;
        let top = if self.is_affine() { self.gens - 1 } else { self.gens };
        if k == 0 || k > top {
            return Err(Error::InvalidGenerator(format!("`{tok}` on {self}")));
        }
        Ok((k - 1) as Letter)
    }

    /// Formats raw letters as `[s1 a s2]`.
    pub fn format_letters(&self, letters: &[Letter]) -> String {
        let names: Vec<String> = letters.iter().map(|&s| self.letter_name(s)).collect();
        format!("[{}]", names.join(" "))
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GraphKind::AffineCycle => write!(f, "affine cycle with {} generators", self.gens),
            GraphKind::TypeAPath => write!(f, "type A path with {} generators", self.gens),
        }
    }
}

/// A reducible pattern inside a word of f-generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    /// Two occurrences of a letter separated only by letters commuting with
    /// it: `f_s X f_s = X f_s`. Removes position `later`.
    Idempotent { later: usize },
    /// `f_s X f_t Y f_s` with `X`, `Y` commuting with `s` and `t` adjacent to
    /// `s`: equals `delta * f_s X Y`. Removes `middle` and `later`.
    Contract { middle: usize, later: usize },
}

impl Redex {
    /// Applies the rewrite in place, returning the number of `delta` factors produced.
    pub fn apply(self, letters: &mut Vec<Letter>) -> u32 {
        match self {
            Redex::Idempotent { later } => {
                letters.remove(later);
                0
            }
            Redex::Contract { middle, later } => {
                letters.remove(later);
                letters.remove(middle);
                1
            }
        }
    }
}

/// The redex (if any) formed by the occurrence at `later` and the nearest
/// earlier occurrence of the same letter.
fn redex_ending_at(graph: &CoxeterGraph, letters: &[Letter], later: usize) -> Option<Redex> {
    let s = letters[later];
    let earlier = letters[..later].iter().rposition(|&x| x == s)?;
    let mut blocker = None;
    for (offset, &t) in letters[earlier + 1..later].iter().enumerate() {
        if !graph.commute_distinct(s, t) {
            if blocker.is_some() {
                return None;
            }
            blocker = Some((earlier + 1 + offset, t));
        }
    }
    match blocker {
        None => Some(Redex::Idempotent { later }),
        Some((middle, t)) if graph.relation(s, t) == PairRelation::Adjacent => {
            Some(Redex::Contract { middle, later })
        }
        Some(_) => None,
    }
}

/// Every redex of the word, one per pair of consecutive equal letters.
pub fn all_redexes(graph: &CoxeterGraph, letters: &[Letter]) -> Vec<Redex> {
    (0..letters.len())
        .filter_map(|j| redex_ending_at(graph, letters, j))
        .collect()
}

/// The first redex found scanning later occurrences from right to left.
pub fn rightmost_redex(graph: &CoxeterGraph, letters: &[Letter]) -> Option<Redex> {
    (0..letters.len())
        .rev()
        .find_map(|j| redex_ending_at(graph, letters, j))
}

fn check_letters(graph: &CoxeterGraph, letters: &[Letter]) -> Result<()> {
    letters.iter().try_for_each(|&s| graph.check_letter(s))
}

/// True iff the word contains no redex, i.e. it is a reduced word of a fully
/// commutative element.
pub fn fc_check(graph: &CoxeterGraph, letters: &[Letter]) -> Result<bool> {
    check_letters(graph, letters)?;
    Ok(rightmost_redex(graph, letters).is_none())
}

/// Cartier-Foata normal form of the commutation class, without redex checks.
pub(crate) fn foata_normal_form(graph: &CoxeterGraph, letters: &[Letter]) -> Vec<Letter> {
    let mut blocks: Vec<Vec<Letter>> = Vec::new();
    for &x in letters {
        let slot = blocks
            .iter()
            .rposition(|b| b.iter().any(|&y| !graph.commute_distinct(x, y)))
            .map_or(0, |i| i + 1);
        if slot == blocks.len() {
            blocks.push(Vec::new());
        }
        blocks[slot].push(x);
    }
    let mut out = Vec::with_capacity(letters.len());
    for mut b in blocks {
        b.sort_unstable();
        out.extend(b);
    }
    out
}

/// A canonical reduced word of a fully commutative element.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FcWord {
    graph: CoxeterGraph,
    letters: Vec<Letter>,
}

impl FcWord {
    pub fn identity(graph: CoxeterGraph) -> Self {
        FcWord { graph, letters: Vec::new() }
    }

    /// Validates and canonicalizes a reduced word.
    pub fn new(graph: CoxeterGraph, letters: &[Letter]) -> Result<Self> {
        cartier_foata(&graph, letters)
    }

    /// Parses `[s1 a s2]` and canonicalizes; the word must be redex-free.
    pub fn parse(graph: CoxeterGraph, text: &str) -> Result<Self> {
        let letters = parse_word(&graph, text)?;
        FcWord::new(graph, &letters)
    }

    /// Trusted constructor for words already in normal form.
    pub(crate) fn from_canonical(graph: CoxeterGraph, letters: Vec<Letter>) -> Self {
        debug_assert!(rightmost_redex(&graph, &letters).is_none());
        debug_assert_eq!(foata_normal_form(&graph, &letters), letters);
        FcWord { graph, letters }
    }

    pub fn graph(&self) -> CoxeterGraph {
        self.graph
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Coxeter length of the element.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters viewed on another graph in which they form a canonical
    /// reduced word.
    pub(crate) fn on_graph(&self, graph: CoxeterGraph) -> Result<FcWord> {
        FcWord::new(graph, &self.letters)
    }

    pub fn contains(&self, s: Letter) -> bool {
        self.letters.contains(&s)
    }
}

impl PartialOrd for FcWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on the letters, then by graph.
impl Ord for FcWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.graph.cmp(&other.graph))
    }
}

impl fmt::Display for FcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.graph.format_letters(&self.letters))
    }
}

impl fmt::Debug for FcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a bracketed, whitespace-separated word such as `[s2 s1 a]`.
pub fn parse_word(graph: &CoxeterGraph, text: &str) -> Result<Vec<Letter>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, "word must be enclosed in `[...]`"))?;
    parse_letters(graph, inner)
}

/// Parses whitespace-separated letters without brackets.
pub fn parse_letters(graph: &CoxeterGraph, text: &str) -> Result<Vec<Letter>> {
    text.split_whitespace().map(|tok| graph.parse_letter(tok)).collect()
}

/// Canonical form of a redex-free word.
pub fn cartier_foata(graph: &CoxeterGraph, letters: &[Letter]) -> Result<FcWord> {
    if !fc_check(graph, letters)? {
        return Err(Error::NotFcWord(graph.format_letters(letters)));
    }
    Ok(FcWord { graph: *graph, letters: foata_normal_form(graph, letters) })
}

fn require_affine(graph: &CoxeterGraph) -> Result<()> {
    if graph.is_affine() {
        Ok(())
    } else {
        Err(Error::WrongGraphKind { expected: "affine cycle", found: graph.to_string() })
    }
}

/// Applies the Dynkin rotation `s_i -> s_{i+d}` (indices mod `m`).
pub fn rotate(w: &FcWord, d: i64) -> Result<FcWord> {
    require_affine(&w.graph)?;
    let m = w.graph.gens as i64;
    let shifted: Vec<Letter> = w
        .letters
        .iter()
        .map(|&s| (s as i64 + d).rem_euclid(m) as Letter)
        .collect();
    Ok(FcWord { graph: w.graph, letters: foata_normal_form(&w.graph, &shifted) })
}

/// Reverses the word (the anti-automorphism `f_u -> f_{u^{-1}}` on basis words).
pub fn reverse(w: &FcWord) -> FcWord {
    let rev: Vec<Letter> = w.letters.iter().rev().copied().collect();
    FcWord { graph: w.graph, letters: foata_normal_form(&w.graph, &rev) }
}

/// Enumerates every fully commutative element of length at most `max_len`
/// (all of them when `None`, which is only finite on a path), shortlex order.
/// `limit` caps the length that may be requested.
pub fn enumerate_fc(graph: &CoxeterGraph, max_len: Option<usize>, limit: usize) -> Result<Vec<FcWord>> {
    let bound = match max_len {
        Some(l) if l > limit => return Err(Error::LengthLimitExceeded { limit }),
        Some(l) => l,
        None if graph.is_affine() => return Err(Error::LengthLimitExceeded { limit }),
        None => usize::MAX,
    };
    let mut out = vec![FcWord::identity(*graph)];
    let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut len = 0;
    while !level.is_empty() && len < bound {
        let mut next = BTreeSet::new();
        for w in &level {
            for s in graph.letters() {
                let mut cand = w.clone();
                cand.push(s);
                if redex_ending_at(graph, &cand, cand.len() - 1).is_none() {
                    next.insert(foata_normal_form(graph, &cand));
                }
            }
        }
        len += 1;
        if len > limit && !next.is_empty() {
            return Err(Error::LengthLimitExceeded { limit });
        }
        level = next.into_iter().collect();
        out.extend(level.iter().map(|l| FcWord { graph: *graph, letters: l.clone() }));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(m: usize) -> CoxeterGraph {
        CoxeterGraph::affine(m).unwrap()
    }

    fn path(n: usize) -> CoxeterGraph {
        CoxeterGraph::type_a(n).unwrap()
    }

    #[test]
    fn pair_relations() {
        let g = aff(5);
        assert!(g.commutes(0, 2).unwrap());
        assert!(g.tl_adjacent(0, 4).unwrap());
        let g2 = aff(2);
        assert!(!g2.commutes(0, 1).unwrap());
        assert!(!g2.tl_adjacent(0, 1).unwrap());
        let p = path(3);
        assert!(p.tl_adjacent(0, 1).unwrap());
        assert!(p.commutes(0, 2).unwrap());
        assert!(matches!(p.commutes(0, 3), Err(Error::InvalidGenerator(_))));
        assert!(matches!(p.commutes(1, 1), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn triangle_has_no_commuting_pairs() {
        let g = aff(3);
        for s in 0..3 {
            for t in 0..3 {
                if s != t {
                    assert!(g.tl_adjacent(s, t).unwrap());
                }
            }
        }
    }

    #[test]
    fn cartier_foata_examples() {
        let p = path(3);
        assert_eq!(cartier_foata(&p, &[2, 0, 1]).unwrap().letters(), &[0, 2, 1]);
        assert_eq!(cartier_foata(&aff(3), &[1, 0, 2]).unwrap().letters(), &[1, 0, 2]);
        assert_eq!(cartier_foata(&p, &[1, 0, 2, 1]).unwrap().letters(), &[1, 0, 2, 1]);
        assert_eq!(cartier_foata(&p, &[1, 2, 0, 1]).unwrap().letters(), &[1, 0, 2, 1]);
        assert!(matches!(cartier_foata(&p, &[0, 1, 0]), Err(Error::NotFcWord(_))));
    }

    #[test]
    fn fc_check_examples() {
        assert!(!fc_check(&path(2), &[0, 1, 0]).unwrap());
        assert!(fc_check(&path(3), &[1, 0, 2, 1]).unwrap());
        assert!(fc_check(&aff(3), &[0, 1, 2, 0]).unwrap());
        assert!(!fc_check(&path(3), &[0, 2, 0]).unwrap());
        assert!(fc_check(&aff(2), &[0, 1, 0, 1, 0]).unwrap());
        assert!(!fc_check(&aff(2), &[0, 0]).unwrap());
        assert!(fc_check(&path(3), &[0, 5]).is_err());
    }

    #[test]
    fn rotate_and_reverse() {
        let g = aff(3);
        let w = FcWord::new(g, &[0]).unwrap();
        assert_eq!(rotate(&w, 1).unwrap().letters(), &[1]);
        let w = FcWord::new(g, &[1, 0, 2]).unwrap();
        assert_eq!(rotate(&w, 1).unwrap().letters(), &[2, 1, 0]);
        assert_eq!(rotate(&w, 3).unwrap(), w);
        assert_eq!(rotate(&w, -4).unwrap(), rotate(&w, -1).unwrap());
        let w = FcWord::new(g, &[0, 1, 2]).unwrap();
        assert_eq!(reverse(&w).letters(), &[2, 1, 0]);
        assert!(rotate(&FcWord::identity(path(2)), 1).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_fc(&path(2), None, 64).unwrap().len(), 5);
        assert_eq!(enumerate_fc(&path(3), None, 64).unwrap().len(), 14);
        let words = enumerate_fc(&aff(3), Some(5), 64).unwrap();
        let mut counts = [0usize; 6];
        for w in &words {
            counts[w.len()] += 1;
        }
        assert_eq!(counts, [1, 3, 6, 6, 6, 6]);
        assert!(matches!(
            enumerate_fc(&aff(3), None, 64),
            Err(Error::LengthLimitExceeded { .. })
        ));
        assert!(matches!(
            enumerate_fc(&aff(3), Some(100), 64),
            Err(Error::LengthLimitExceeded { .. })
        ));
    }

    #[test]
    fn letter_syntax() {
        let g = aff(3);
        assert_eq!(parse_word(&g, "[s1 a s2]").unwrap(), vec![0, 2, 1]);
        assert!(parse_word(&g, "[s1 s9]").is_err());
        assert!(parse_word(&g, "[s3]").is_err());
        assert!(parse_word(&path(3), "[a]").is_err());
        assert_eq!(g.format_letters(&[0, 2, 1]), "[s1 a s2]");
    }
}

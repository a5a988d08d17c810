//! Interchangeable ways of reducing a product of two f-monomials to normal
//! form. All of them must agree; the test batteries compare them.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coxeter::{all_redexes, foata_normal_form, rightmost_redex, CoxeterGraph, Letter};
use crate::error::{Error, Result};

/// Reduces `f_left * f_right` to `delta^k * f_w` with `w` canonical.
pub trait ReductionStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn product(&self, graph: &CoxeterGraph, left: &[Letter], right: &[Letter]) -> (u32, Vec<Letter>);
}

/// Applies rightmost redexes until none remain.
pub(crate) fn reduce_rightmost(graph: &CoxeterGraph, letters: &mut Vec<Letter>) -> u32 {
    let mut deltas = 0;
    while let Some(r) = rightmost_redex(graph, letters) {
        deltas += r.apply(letters);
    }
    deltas
}

/// Appends the letters of the right factor one at a time.
#[derive(Debug, Default, Clone, Copy)]
pub struct LeftFold;

impl ReductionStrategy for LeftFold {
    fn name(&self) -> &'static str {
        "left-fold"
    }

    fn product(&self, graph: &CoxeterGraph, left: &[Letter], right: &[Letter]) -> (u32, Vec<Letter>) {
        let mut acc = left.to_vec();
        let mut deltas = reduce_rightmost(graph, &mut acc);
        for &s in right {
            acc.push(s);
            deltas += reduce_rightmost(graph, &mut acc);
        }
        (deltas, foata_normal_form(graph, &acc))
    }
}

/// Prepends the letters of the left factor one at a time, last letter first.
#[derive(Debug, Default, Clone, Copy)]
pub struct RightFold;

impl ReductionStrategy for RightFold {
    fn name(&self) -> &'static str {
        "right-fold"
    }

    fn product(&self, graph: &CoxeterGraph, left: &[Letter], right: &[Letter]) -> (u32, Vec<Letter>) {
        // The relations are palindromic, so prepending is appending to the reversed word.
        let mut acc: Vec<Letter> = right.iter().rev().copied().collect();
        let mut deltas = reduce_rightmost(graph, &mut acc);
        for &s in left.iter().rev() {
            acc.push(s);
            deltas += reduce_rightmost(graph, &mut acc);
        }
        acc.reverse();
        (deltas, foata_normal_form(graph, &acc))
    }
}

/// Concatenates both factors and repeatedly rewrites a redex chosen by a
/// deterministic pseudo-random generator.
#[derive(Debug, Clone, Copy)]
pub struct RandomRedex {
    pub seed: u64,
}

impl Default for RandomRedex {
    fn default() -> Self {
        RandomRedex { seed: 0x5eed }
    }
}

fn fnv1a(seed: u64, parts: &[&[Letter]]) -> u64 {
    let mut h = 0xcbf29ce484222325u64 ^ seed;
    for part in parts {
        for &b in *part {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl ReductionStrategy for RandomRedex {
    fn name(&self) -> &'static str {
        "random-redex"
    }

    fn product(&self, graph: &CoxeterGraph, left: &[Letter], right: &[Letter]) -> (u32, Vec<Letter>) {
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(self.seed, &[left, right]));
        let mut acc = [left, right].concat();
        let mut deltas = 0;
        loop {
            let redexes = all_redexes(graph, &acc);
            let Some(&r) = redexes.choose(&mut rng) else { break };
            deltas += r.apply(&mut acc);
        }
        (deltas, foata_normal_form(graph, &acc))
    }
}

/// Concatenates and always rewrites the leftmost redex.
#[derive(Debug, Default, Clone, Copy)]
pub struct LeftmostRedex;

impl ReductionStrategy for LeftmostRedex {
    fn name(&self) -> &'static str {
        "leftmost"
    }

    fn product(&self, graph: &CoxeterGraph, left: &[Letter], right: &[Letter]) -> (u32, Vec<Letter>) {
        let mut acc = [left, right].concat();
        let mut deltas = 0;
        while let Some(&r) = all_redexes(graph, &acc).first() {
            deltas += r.apply(&mut acc);
        }
        (deltas, foata_normal_form(graph, &acc))
    }
}

pub const STRATEGY_NAMES: &[&str] = &["left-fold", "right-fold", "random-redex", "leftmost"];

/// Looks up a strategy by name. `random-redex` takes its seed from `seed`.
pub fn strategy_by_name(name: &str, seed: u64) -> Result<Box<dyn ReductionStrategy>> {
    Ok(match name {
        "left-fold" => Box::new(LeftFold),
        "right-fold" => Box::new(RightFold),
        "random-redex" => Box::new(RandomRedex { seed }),
        "leftmost" => Box::new(LeftmostRedex),
        _ => {
            return Err(Error::UnknownName { kind: "reduction strategy", name: name.to_string() })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trip() {
        for name in STRATEGY_NAMES {
            assert_eq!(strategy_by_name(name, 1).unwrap().name(), *name);
        }
        assert!(strategy_by_name("nope", 0).is_err());
    }

    #[test]
    fn strategies_agree_on_a_contraction() {
        let g = CoxeterGraph::type_a(3).unwrap();
        for name in STRATEGY_NAMES {
            let s = strategy_by_name(name, 9).unwrap();
            assert_eq!(s.product(&g, &[0, 1, 2], &[0]), (1, vec![0, 2]), "{name}");
        }
    }
}

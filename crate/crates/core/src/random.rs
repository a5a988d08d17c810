//! Seeded samplers for scalars, basis words, elements and braid words.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{reduce_monomial, TLElement};
use crate::coeff::Scalar;
use crate::coxeter::{CoxeterGraph, FcWord, Letter};
use crate::morphisms::BraidWord;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A fresh sampler whose stream depends on this one's seed and `tag`.
    pub fn fork(&mut self, tag: u64) -> Sampler {
        let s: u64 = self.rng.gen();
        Sampler::new(s ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// `c v^e`, sometimes divided by a power of `q + 1`.
    pub fn scalar(&mut self) -> Scalar {
        let mut c = loop {
            let c: i64 = self.rng.gen_range(-3..=3);
            if c != 0 {
                break Scalar::int(c);
            }
        };
        let e: i32 = self.rng.gen_range(-2..=2);
        c = &c * &Scalar::v().pow(e).unwrap();
        if self.rng.gen_bool(0.25) {
            let q1 = &Scalar::q() + &Scalar::one();
            c = c.div(&q1).unwrap();
        }
        if self.rng.gen_bool(0.2) {
            c = &c + &Scalar::int(self.rng.gen_range(-2..=2));
        }
        if c.is_zero() {
            Scalar::one()
        } else {
            c
        }
    }

    /// A positive rational other than 1, for numeric spot checks.
    pub fn point(&mut self) -> BigRational {
        loop {
            let n: i64 = self.rng.gen_range(1..=40);
            let d: i64 = self.rng.gen_range(1..=40);
            if n != d {
                return BigRational::new(BigInt::from(n), BigInt::from(d));
            }
        }
    }

    pub fn letters(&mut self, graph: CoxeterGraph, len: usize) -> Vec<Letter> {
        let n = graph.gens();
        (0..len).map(|_| self.rng.gen_range(0..n) as Letter).collect()
    }

    /// Reduced basis word of a random monomial with at most `max_len` letters.
    pub fn word(&mut self, graph: CoxeterGraph, max_len: usize) -> FcWord {
        if graph.gens() == 0 {
            return FcWord::identity(graph);
        }
        let len = self.rng.gen_range(0..=max_len);
        let letters = self.letters(graph, len);
        reduce_monomial(graph, &letters).expect("valid letters").1
    }

    /// Sum of up to `max_terms` random terms.
    pub fn element(&mut self, graph: CoxeterGraph, max_terms: usize, max_len: usize) -> TLElement {
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        let mut x = TLElement::zero(graph);
        for _ in 0..terms {
            let w = self.word(graph, max_len);
            x = &x + &TLElement::term(self.scalar(), w);
        }
        x
    }

    pub fn braid(&mut self, gens: usize, max_len: usize) -> BraidWord {
        let len = self.rng.gen_range(0..=max_len);
        let letters = (0..len)
            .map(|_| {
                let s = self.rng.gen_range(0..gens) as Letter;
                let e = if self.rng.gen_bool(0.5) { 1 } else { -1 };
                (s, e)
            })
            .collect();
        BraidWord::new(gens, letters).expect("valid braid letters")
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty")
    }
}

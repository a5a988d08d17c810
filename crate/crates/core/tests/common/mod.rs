//! Affine permutation model of the affine Weyl group of type A: a word is
//! fully commutative exactly when it is reduced and its permutation avoids
//! the pattern 321.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use atl::coxeter::{enumerate_fc, fc_check, Letter};
use atl::CoxeterGraph;

/// Window `[f(1), ..., f(m)]` of the product of the generators named by
/// `letters`; letter `m - 1` is the affine reflection `s_0`.
pub fn affine_window(m: usize, letters: &[Letter]) -> Vec<i64> {
    let mut f: Vec<i64> = (1..=m as i64).collect();
    for &s in letters {
        let s = s as usize;
        if s + 1 < m {
            f.swap(s, s + 1);
        } else {
            let (first, last) = (f[0], f[m - 1]);
            f[0] = last - m as i64;
            f[m - 1] = first + m as i64;
        }
    }
    f
}

fn value(f: &[i64], i: i64) -> i64 {
    let m = f.len() as i64;
    let r = (i - 1).rem_euclid(m);
    f[r as usize] + (i - 1 - r)
}

pub fn affine_length(f: &[i64]) -> usize {
    let m = f.len() as i64;
    let mut count = 0;
    for i in 1..=m {
        for j0 in 1..=m {
            let mut k = 0;
            loop {
                let j = j0 + k * m;
                let fj = value(f, j);
                if fj >= value(f, i) {
                    break;
                }
                if j > i {
                    count += 1;
                }
                k += 1;
            }
        }
    }
    count
}

pub fn affine_avoids_321(f: &[i64]) -> bool {
    let m = f.len() as i64;
    let spread = f.iter().map(|&x| x.abs()).max().unwrap_or(0) + 2 * m;
    for i in 1..=m {
        let fi = value(f, i);
        for j in i + 1..=i + 2 * spread {
            let fj = value(f, j);
            if fj < fi && (j + 1..=j + 2 * spread).any(|k| value(f, k) < fj) {
                return false;
            }
        }
    }
    true
}

/// Checks the basis of the affine algebra on `m` generators up to length
/// `max_len` against the permutation model, returning a list of problems.
pub fn affine_oracle(m: usize, max_len: usize) -> Vec<String> {
    let graph = CoxeterGraph::affine(m).unwrap();
    let mut problems = Vec::new();
    let words = enumerate_fc(&graph, Some(max_len), 64).unwrap();
    let mut by_perm: HashMap<Vec<i64>, String> = HashMap::new();
    for w in &words {
        let f = affine_window(m, w.letters());
        if affine_length(&f) != w.len() {
            problems.push(format!("{w} is not reduced"));
        }
        if !affine_avoids_321(&f) {
            problems.push(format!("{w} contains 321"));
        }
        if let Some(other) = by_perm.insert(f, w.to_string()) {
            problems.push(format!("{w} and {other} share a permutation"));
        }
    }
    let mut fc_perms = HashSet::new();
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    while let Some(raw) = stack.pop() {
        let f = affine_window(m, &raw);
        let reduced = affine_length(&f) == raw.len();
        let fc = reduced && affine_avoids_321(&f);
        if fc_check(&graph, &raw).unwrap() != fc {
            problems.push(format!("criterion disagrees on {}", graph.format_letters(&raw)));
        }
        if fc {
            fc_perms.insert(f);
        }
        if raw.len() < max_len && reduced {
            for s in 0..m as Letter {
                let mut next = raw.clone();
                next.push(s);
                stack.push(next);
            }
        }
    }
    let enumerated: HashSet<Vec<i64>> = by_perm.into_keys().collect();
    if enumerated != fc_perms {
        problems.push(format!("{} enumerated vs {} model elements", enumerated.len(), fc_perms.len()));
    }
    problems
}

//! Naive reference implementations, deliberately independent of the crate's
//! dynamic-programming kernels.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use eed_core::SymbolicSequence;

pub fn seq(text: &str) -> SymbolicSequence {
    SymbolicSequence::from_letters(text, 26).unwrap()
}

pub fn indices(s: &SymbolicSequence) -> Vec<u8> {
    s.symbols().iter().map(|x| x.0).collect()
}

/// Textbook recursion over suffixes, memoized on (i, j).
pub fn naive_edit(a: &[u8], b: &[u8]) -> usize {
    fn go(a: &[u8], b: &[u8], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if a.is_empty() {
            return b.len();
        }
        if b.is_empty() {
            return a.len();
        }
        if let Some(&v) = memo.get(&(a.len(), b.len())) {
            return v;
        }
        let v = if a[0] == b[0] {
            go(&a[1..], &b[1..], memo)
        } else {
            1 + go(&a[1..], b, memo)
                .min(go(a, &b[1..], memo))
                .min(go(&a[1..], &b[1..], memo))
        };
        memo.insert((a.len(), b.len()), v);
        v
    }
    go(a, b, &mut HashMap::new())
}

pub fn naive_lcss(a: &[u8], b: &[u8]) -> usize {
    fn go(a: &[u8], b: &[u8], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        if let Some(&v) = memo.get(&(a.len(), b.len())) {
            return v;
        }
        let v = if a[0] == b[0] {
            1 + go(&a[1..], &b[1..], memo)
        } else {
            go(&a[1..], b, memo).max(go(a, &b[1..], memo))
        };
        memo.insert((a.len(), b.len()), v);
        v
    }
    go(a, b, &mut HashMap::new())
}

/// L1 distance between symbol-count maps.
pub fn l1_counts(a: &[u8], b: &[u8]) -> usize {
    let mut counts: BTreeMap<u8, (i64, i64)> = BTreeMap::new();
    for &x in a {
        counts.entry(x).or_default().0 += 1;
    }
    for &x in b {
        counts.entry(x).or_default().1 += 1;
    }
    counts.values().map(|(p, q)| (p - q).unsigned_abs() as usize).sum()
}

pub fn naive_eed(a: &[u8], b: &[u8], lambda: f64) -> f64 {
    naive_edit(a, b) as f64 + lambda * l1_counts(a, b) as f64
}

/// Leave-one-out 1-NN misclassifications by direct double loop.
pub fn naive_loocv(words: &[Vec<u8>], labels: &[i64], lambda: f64) -> usize {
    (0..words.len())
        .filter(|&i| {
            let mut best: Option<(f64, usize)> = None;
            for j in 0..words.len() {
                if j == i {
                    continue;
                }
                let d = naive_eed(&words[i], &words[j], lambda);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, j));
                }
            }
            labels[best.unwrap().1] != labels[i]
        })
        .count()
}

/// Every string over `0..alpha` with length at most `max_len`.
pub fn all_strings(alpha: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for c in 0..alpha {
                let mut t: Vec<u8> = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

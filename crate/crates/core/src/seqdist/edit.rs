//! Dynamic-programming kernels over plain slices.
//!
//! Both kernels keep two rolling rows sized by the shorter input, so memory is
//! `O(min(m, n))` and time is `O(m * n)`.

use super::SymbolicSequence;

/// Levenshtein distance with unit insert, delete and substitute costs.
pub fn edit_distance(s: &SymbolicSequence, t: &SymbolicSequence) -> usize {
    levenshtein(s.symbols(), t.symbols())
}

/// Length of the longest common, not necessarily contiguous, subsequence.
pub fn lcss(s: &SymbolicSequence, t: &SymbolicSequence) -> usize {
    longest_common_subsequence(s.symbols(), t.symbols())
}

pub fn levenshtein<T: Eq>(a: &[T], b: &[T]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }

    let mut prev: Vec<usize> = (0..=short.len()).collect();
    let mut curr = vec![0; short.len() + 1];
    for (i, x) in long.iter().enumerate() {
        curr[0] = i + 1;
        for (j, y) in short.iter().enumerate() {
            let substitute = prev[j] + usize::from(x != y);
            let delete = prev[j + 1] + 1;
            let insert = curr[j] + 1;
            curr[j + 1] = substitute.min(delete).min(insert);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[short.len()]
}

pub fn longest_common_subsequence<T: Eq>(a: &[T], b: &[T]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 0;
    }

    let mut prev = vec![0usize; short.len() + 1];
    let mut curr = vec![0usize; short.len() + 1];
    for x in long {
        for (j, y) in short.iter().enumerate() {
            curr[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(curr[j]) };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[short.len()]
}

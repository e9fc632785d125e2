use serde::{Deserialize, Serialize};

use super::{Symbol, SymbolicSequence};

/// Per-symbol occurrence counts of one sequence.
///
/// Symbols that never occur have count zero; `counts` may be shorter than the
/// alphabet when trailing symbols are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyHistogram {
    counts: Vec<usize>,
    total: usize,
}

impl FrequencyHistogram {
    pub fn of(s: &SymbolicSequence) -> Self {
        Self::from_symbols(s.symbols())
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        let mut counts = Vec::new();
        for s in symbols {
            if s.index() >= counts.len() {
                counts.resize(s.index() + 1, 0);
            }
            counts[s.index()] += 1;
        }
        Self {
            counts,
            total: symbols.len(),
        }
    }

    pub fn count(&self, symbol: Symbol) -> usize {
        self.counts.get(symbol.index()).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// `(symbol, count)` for every symbol with a nonzero count, in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Symbol, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (Symbol(i as u8), c))
    }

    /// Sum over symbols of the smaller of the two counts.
    pub fn overlap(&self, other: &Self) -> usize {
        self.counts.iter().zip(&other.counts).map(|(&a, &b)| a.min(b)).sum()
    }

    /// `|S| + |T| - 2 * overlap`.
    pub fn divergence(&self, other: &Self) -> usize {
        self.total + other.total - 2 * self.overlap(other)
    }
}

pub fn char_histogram(s: &SymbolicSequence) -> FrequencyHistogram {
    FrequencyHistogram::of(s)
}

/// Frequency divergence `|s| + |t| - 2 Σ_i min(f_i(s), f_i(t))`.
///
/// Equal to the L1 distance between the two count vectors, zero exactly for
/// anagram pairs.
pub fn histogram_divergence(s: &SymbolicSequence, t: &SymbolicSequence) -> usize {
    FrequencyHistogram::of(s).divergence(&FrequencyHistogram::of(t))
}

/// Number of distinct symbols appearing in either sequence.
pub fn distinct_char_count(s: &SymbolicSequence, t: &SymbolicSequence) -> usize {
    let mut seen = [false; super::MAX_ALPHABET];
    for sym in s.symbols().iter().chain(t.symbols()) {
        seen[sym.index()] = true;
    }
    seen.iter().filter(|&&b| b).count()
}

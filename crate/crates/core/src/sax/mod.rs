//! SAX symbolization: z-normalize, reduce with PAA, then bucket each frame
//! mean against equiprobable Gaussian breakpoints. Also the MINDIST word
//! distance that lower-bounds the Euclidean distance of the normalized series.

mod breakpoints;
mod series;

use serde::{Deserialize, Serialize};

pub use breakpoints::{gaussian_breakpoints, MAX_ALPHABET, MIN_ALPHABET};
pub use series::{euclidean, paa, validate_series, z_normalize, CONSTANT_SIGMA};

use crate::error::{Error, Result};
use crate::seqdist::{Symbol, SymbolicSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SaxParams {
    alphabet_size: usize,
    segment_count: usize,
}

impl SaxParams {
    pub fn new(alphabet_size: usize, segment_count: usize) -> Result<Self> {
        gaussian_breakpoints(alphabet_size)?;
        if segment_count == 0 {
            return Err(Error::invalid("segment count must be at least 1"));
        }
        Ok(Self {
            alphabet_size,
            segment_count,
        })
    }

    /// Parameters for series of length `n` at compression `1:ratio`, using
    /// `ceil(n / ratio)` segments.
    pub fn with_ratio(alphabet_size: usize, n: usize, ratio: usize) -> Result<Self> {
        if ratio == 0 {
            return Err(Error::invalid("compression ratio must be at least 1"));
        }
        if n == 0 {
            return Err(Error::invalid("series length must be at least 1"));
        }
        Self::new(alphabet_size, n.div_ceil(ratio))
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn segment_count(&self) -> usize {
        self.segment_count
    }

    pub fn breakpoints(&self) -> &'static [f64] {
        gaussian_breakpoints(self.alphabet_size).expect("validated at construction")
    }

    /// Symbol for one normalized value: the number of breakpoints strictly
    /// below it, so a value equal to a breakpoint takes the lower symbol.
    pub fn bucket(&self, value: f64) -> Symbol {
        Symbol(self.breakpoints().partition_point(|&b| b < value) as u8)
    }
}

/// A SAX word together with the length of the series it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SaxWord {
    pub word: SymbolicSequence,
    pub original_length: usize,
}

pub fn symbolize(values: &[f64], params: &SaxParams) -> Result<SaxWord> {
    validate_series(values)?;
    let reduced = paa(&z_normalize(values), params.segment_count)?;
    let symbols = reduced.iter().map(|&v| params.bucket(v)).collect();
    Ok(SaxWord {
        word: SymbolicSequence::new(symbols, params.alphabet_size)?,
        original_length: values.len(),
    })
}

/// Lookup distance between two symbols: zero for equal or adjacent symbols,
/// otherwise the gap between the breakpoints that separate them.
fn cell(breakpoints: &[f64], r: Symbol, c: Symbol) -> f64 {
    let (lo, hi) = if r <= c {
        (r.index(), c.index())
    } else {
        (c.index(), r.index())
    };
    if hi - lo <= 1 {
        0.0
    } else {
        breakpoints[hi - 1] - breakpoints[lo]
    }
}

pub fn mindist(a: &SaxWord, b: &SaxWord, params: &SaxParams) -> Result<f64> {
    let w = params.segment_count;
    for (name, word) in [("first", a), ("second", b)] {
        if word.word.len() != w {
            return Err(Error::invalid(format!(
                "{name} word has {} symbols, expected {w}",
                word.word.len()
            )));
        }
        if word.word.alphabet_size() != params.alphabet_size {
            return Err(Error::invalid(format!(
                "{name} word uses alphabet size {}, expected {}",
                word.word.alphabet_size(),
                params.alphabet_size
            )));
        }
    }
    if a.original_length != b.original_length {
        return Err(Error::invalid(format!(
            "words come from series of different lengths ({} vs {})",
            a.original_length, b.original_length
        )));
    }

    let bps = params.breakpoints();
    let sum: f64 = a
        .word
        .symbols()
        .iter()
        .zip(b.word.symbols())
        .map(|(&r, &c)| cell(bps, r, c).powi(2))
        .sum();
    Ok((a.original_length as f64 / w as f64).sqrt() * sum.sqrt())
}

//! Symbolic sequence distances centered on the extended edit distance (EED):
//! edit distance plus a weighted character-frequency divergence.
//!
//! The crate also carries the machinery to use those distances on time
//! series: SAX symbolization ([`sax`]), UCR-format datasets ([`dataset`]),
//! 1-NN tuning and evaluation ([`eval`]), and an exact vantage-point tree
//! that relies on EED being a metric ([`index`]).

pub mod dataset;
pub mod error;
pub mod eval;
pub mod index;
pub mod sax;
pub mod seqdist;

pub use error::{Error, Result};
pub use eval::{Metric, MetricKind};
pub use index::MetricIndex;
pub use seqdist::{
    char_histogram, distinct_char_count, edit_distance, eed, histogram_divergence, lcss, EedParams, EedParts,
    FrequencyHistogram, Symbol, SymbolicSequence,
};

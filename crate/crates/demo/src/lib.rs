//! WebAssembly bindings for the browser demo. Every export takes plain
//! strings/numbers and returns a JSON string; the work happens in the
//! `*_view` functions, which are ordinary Rust and tested natively.

use eed_core::sax::{paa, symbolize as sax_symbolize, z_normalize, SaxParams};
use eed_core::{char_histogram, distinct_char_count, lcss, EedParams, EedParts, SymbolicSequence};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct HistogramRow {
    pub symbol: char,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Serialize)]
pub struct Breakdown {
    pub lambda: f64,
    pub edit: usize,
    pub divergence: usize,
    pub eed: f64,
    pub lcss: usize,
    pub distinct: usize,
    pub histogram: Vec<HistogramRow>,
}

#[derive(Debug, Serialize)]
pub struct SaxView {
    pub normalized: Vec<f64>,
    pub paa: Vec<f64>,
    pub breakpoints: Vec<f64>,
    pub symbols: Vec<usize>,
    pub word: String,
}

#[derive(Debug, Serialize)]
pub struct Ranked {
    pub id: usize,
    pub item: String,
    pub edit: usize,
    pub divergence: usize,
    pub eed: f64,
}

fn letters(text: &str, alphabet: usize, what: &str) -> Result<SymbolicSequence, String> {
    SymbolicSequence::from_letters(text.trim(), alphabet).map_err(|e| format!("{what}: {e}"))
}

fn params(lambda: f64) -> Result<EedParams, String> {
    EedParams::new(lambda).map_err(|e| e.to_string())
}

/// ED, histogram divergence, EED, LCSS and the per-letter counts of a pair.
pub fn explain_view(first: &str, second: &str, lambda: f64, alphabet: usize) -> Result<Breakdown, String> {
    let p = params(lambda)?;
    let s = letters(first, alphabet, "first string")?;
    let t = letters(second, alphabet, "second string")?;
    let parts = EedParts::compute(&s, &t);
    let (hs, ht) = (char_histogram(&s), char_histogram(&t));
    let histogram = (0..alphabet as u8)
        .map(eed_core::Symbol)
        .filter(|&c| hs.count(c) + ht.count(c) > 0)
        .map(|c| HistogramRow {
            symbol: c.letter(),
            first: hs.count(c),
            second: ht.count(c),
        })
        .collect();
    Ok(Breakdown {
        lambda,
        edit: parts.edit,
        divergence: parts.divergence,
        eed: parts.weighted(p),
        lcss: lcss(&s, &t),
        distinct: distinct_char_count(&s, &t),
        histogram,
    })
}

/// Numbers separated by commas and/or whitespace.
pub fn parse_series(text: &str) -> Result<Vec<f64>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("value {} ({t:?}) is not a finite number", i + 1))
        })
        .collect()
}

/// Each SAX stage for one series, for plotting.
pub fn symbolize_view(series: &str, alpha: usize, ratio: usize) -> Result<SaxView, String> {
    let values = parse_series(series)?;
    let p = SaxParams::with_ratio(alpha, values.len(), ratio).map_err(|e| e.to_string())?;
    let word = sax_symbolize(&values, &p).map_err(|e| e.to_string())?;
    let normalized = z_normalize(&values);
    Ok(SaxView {
        paa: paa(&normalized, p.segment_count()).map_err(|e| e.to_string())?,
        normalized,
        breakpoints: p.breakpoints().to_vec(),
        symbols: word.word.symbols().iter().map(|s| s.index()).collect(),
        word: word.word.to_letters().unwrap_or_default(),
    })
}

/// Candidates (one per line, blanks skipped) ordered by EED to the query,
/// ties broken by position.
pub fn rank_view(query: &str, candidates: &str, lambda: f64, alphabet: usize) -> Result<Vec<Ranked>, String> {
    let p = params(lambda)?;
    let q = letters(query, alphabet, "query")?;
    let mut out = Vec::new();
    for (line, text) in candidates.lines().enumerate() {
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        let c = letters(text, alphabet, &format!("candidate on line {}", line + 1))?;
        let parts = EedParts::compute(&q, &c);
        out.push(Ranked {
            id: out.len(),
            item: text.to_string(),
            edit: parts.edit,
            divergence: parts.divergence,
            eed: parts.weighted(p),
        });
    }
    out.sort_by(|a, b| a.eed.total_cmp(&b.eed).then(a.id.cmp(&b.id)));
    Ok(out)
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn explain(first: &str, second: &str, lambda: f64, alphabet: usize) -> Result<String, JsError> {
    to_js(explain_view(first, second, lambda, alphabet))
}

#[wasm_bindgen]
pub fn symbolize(series: &str, alpha: usize, ratio: usize) -> Result<String, JsError> {
    to_js(symbolize_view(series, alpha, ratio))
}

#[wasm_bindgen]
pub fn rank(query: &str, candidates: &str, lambda: f64, alphabet: usize) -> Result<String, JsError> {
    to_js(rank_view(query, candidates, lambda, alphabet))
}

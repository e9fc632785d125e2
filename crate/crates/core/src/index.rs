//! Exact nearest-neighbor and range search over symbolic sequences with a
//! vantage-point tree.
//!
//! Pruning relies on the triangle inequality, so only ED and EED (at one fixed
//! frequency factor) are accepted. SAX MINDIST is rejected: it assigns zero to
//! distinct words and breaks the pruning bounds.
//!
//! Leaf items are additionally screened with a histogram bound before the
//! quadratic distance runs: every edit moves the count vector by at most 2 in
//! L1, so `ED >= max(| |a| - |b| |, ceil(D / 2))` and
//! `EED >= that + lambda * D`. On short random strings, where distances
//! concentrate and the tree alone cannot prune, this screen does most of the
//! work.

use std::cell::Cell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::Metric;
use crate::seqdist::{FrequencyHistogram, SymbolicSequence};

pub const LEAF_SIZE: usize = 16;

/// Pairs sampled at build time to check a metric against its declared spec.
const AUDIT_PAIRS: usize = 64;

/// A distance over sequences together with the spec it claims to implement.
pub trait SequenceMetric {
    fn spec(&self) -> Metric;
    fn distance(&self, a: &SymbolicSequence, b: &SymbolicSequence) -> f64;
}

impl SequenceMetric for Metric {
    fn spec(&self) -> Metric {
        *self
    }

    fn distance(&self, a: &SymbolicSequence, b: &SymbolicSequence) -> f64 {
        self.sequence_distance(a, b).unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    pub id: usize,
    pub distance: f64,
}

impl Hit {
    fn before(&self, other: &Hit) -> bool {
        self.distance < other.distance || (self.distance == other.distance && self.id < other.id)
    }
}

#[derive(Debug)]
enum Node {
    Leaf(Vec<usize>),
    Split {
        vantage: usize,
        radius: f64,
        inside: Box<Node>,
        outside: Box<Node>,
    },
}

#[derive(Debug)]
pub struct MetricIndex<M = Metric> {
    items: Vec<SymbolicSequence>,
    histograms: Vec<FrequencyHistogram>,
    metric: M,
    lambda: f64,
    root: Node,
}

fn slack(a: f64, b: f64) -> f64 {
    1e-9 * (1.0 + a.abs() + b.abs())
}

impl<M: SequenceMetric> MetricIndex<M> {
    /// Builds the tree. Vantage points are drawn uniformly with a generator
    /// seeded by `seed`; the split radius is the lower median distance.
    pub fn build(items: Vec<SymbolicSequence>, metric: M, seed: u64) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::invalid("cannot index an empty collection"));
        }
        let spec = metric.spec();
        if !spec.is_string_metric() {
            return Err(Error::NotAMetric(spec.kind().to_string()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        audit_metric(&items, &metric, &spec, &mut rng)?;

        let ids: Vec<usize> = (0..items.len()).collect();
        let root = split(ids, &items, &metric, &mut rng);
        let histograms = items.iter().map(FrequencyHistogram::of).collect();
        Ok(Self {
            items,
            histograms,
            metric,
            lambda: spec.lambda().unwrap_or(0.0),
            root,
        })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[SymbolicSequence] {
        &self.items
    }

    pub fn metric(&self) -> Metric {
        self.metric.spec()
    }

    /// Distances are only comparable under the metric the index was built with.
    pub fn check_metric(&self, metric: &Metric) -> Result<()> {
        let own = self.metric.spec();
        if own == *metric {
            Ok(())
        } else {
            Err(Error::MetricMismatch(format!(
                "index was built with {own}, queried with {metric}"
            )))
        }
    }

    /// Nearest item, lowest id on ties. Identical to a linear scan.
    pub fn query_nn(&self, q: &SymbolicSequence) -> Hit {
        self.query_nn_counted(q).0
    }

    /// Like [`query_nn`](Self::query_nn), also returning how many full
    /// distances were evaluated.
    pub fn query_nn_counted(&self, q: &SymbolicSequence) -> (Hit, usize) {
        let query = Query::new(q);
        let calls = Cell::new(0);
        let mut best = None;
        self.search_nn(&self.root, &query, &mut best, &calls);
        (best.expect("index is never empty"), calls.get())
    }

    /// Every item within `radius` of `q`, sorted by (distance, id).
    pub fn query_range(&self, q: &SymbolicSequence, radius: f64) -> Vec<Hit> {
        let query = Query::new(q);
        let calls = Cell::new(0);
        let mut out = Vec::new();
        self.search_range(&self.root, &query, radius, &mut out, &calls);
        out.sort_by(|a, b| a.distance.total_cmp(&b.distance).then(a.id.cmp(&b.id)));
        out
    }

    fn dist(&self, q: &Query, id: usize, calls: &Cell<usize>) -> f64 {
        calls.set(calls.get() + 1);
        self.metric.distance(q.seq, &self.items[id])
    }

    /// Never exceeds the true distance, including after rounding.
    fn lower_bound(&self, q: &Query, id: usize) -> f64 {
        let divergence = q.histogram.divergence(&self.histograms[id]);
        let edit = q.seq.len().abs_diff(self.items[id].len()).max(divergence.div_ceil(2));
        edit as f64 + self.lambda * divergence as f64
    }

    fn search_nn(&self, node: &Node, q: &Query, best: &mut Option<Hit>, calls: &Cell<usize>) {
        let offer = |hit: Hit, best: &mut Option<Hit>| {
            if best.is_none_or(|b| hit.before(&b)) {
                *best = Some(hit);
            }
        };
        match node {
            Node::Leaf(ids) => {
                for &id in ids {
                    if best.is_some_and(|b| self.lower_bound(q, id) > b.distance) {
                        continue;
                    }
                    let hit = Hit {
                        id,
                        distance: self.dist(q, id, calls),
                    };
                    offer(hit, best);
                }
            }
            Node::Split {
                vantage,
                radius,
                inside,
                outside,
            } => {
                let d = self.dist(q, *vantage, calls);
                offer(
                    Hit {
                        id: *vantage,
                        distance: d,
                    },
                    best,
                );
                let children = if d <= *radius {
                    [(inside, true), (outside, false)]
                } else {
                    [(outside, false), (inside, true)]
                };
                for (child, is_inside) in children {
                    let bound = best.map_or(f64::INFINITY, |b| b.distance);
                    let gap = if is_inside { d - radius } else { radius - d };
                    if gap > bound + slack(d, *radius) {
                        continue;
                    }
                    self.search_nn(child, q, best, calls);
                }
            }
        }
    }

    fn search_range(&self, node: &Node, q: &Query, r: f64, out: &mut Vec<Hit>, calls: &Cell<usize>) {
        match node {
            Node::Leaf(ids) => {
                for &id in ids {
                    if self.lower_bound(q, id) > r {
                        continue;
                    }
                    let distance = self.dist(q, id, calls);
                    if distance <= r {
                        out.push(Hit { id, distance });
                    }
                }
            }
            Node::Split {
                vantage,
                radius,
                inside,
                outside,
            } => {
                let d = self.dist(q, *vantage, calls);
                if d <= r {
                    out.push(Hit {
                        id: *vantage,
                        distance: d,
                    });
                }
                if d - radius <= r + slack(d, *radius) {
                    self.search_range(inside, q, r, out, calls);
                }
                if radius - d <= r + slack(d, *radius) {
                    self.search_range(outside, q, r, out, calls);
                }
            }
        }
    }

    /// Walks the whole tree and checks the structural invariants: every id
    /// appears once, leaves hold at most [`LEAF_SIZE`] ids, inside items lie
    /// within the radius of their vantage and outside items beyond it.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let mut seen = vec![0usize; self.items.len()];
        self.audit_node(&self.root, &mut seen)?;
        match seen.iter().position(|&c| c != 1) {
            Some(id) => Err(format!("item {id} appears {} times", seen[id])),
            None => Ok(()),
        }
    }

    fn audit_node(&self, node: &Node, seen: &mut [usize]) -> std::result::Result<Vec<usize>, String> {
        match node {
            Node::Leaf(ids) => {
                if ids.len() > LEAF_SIZE {
                    return Err(format!("leaf holds {} ids", ids.len()));
                }
                for &id in ids {
                    seen[id] += 1;
                }
                Ok(ids.clone())
            }
            Node::Split {
                vantage,
                radius,
                inside,
                outside,
            } => {
                seen[*vantage] += 1;
                let v = &self.items[*vantage];
                let ins = self.audit_node(inside, seen)?;
                for &id in &ins {
                    let d = self.metric.distance(v, &self.items[id]);
                    if d > *radius {
                        return Err(format!("inside item {id} at {d} > radius {radius} of {vantage}"));
                    }
                }
                let outs = self.audit_node(outside, seen)?;
                for &id in &outs {
                    let d = self.metric.distance(v, &self.items[id]);
                    if d <= *radius {
                        return Err(format!("outside item {id} at {d} <= radius {radius} of {vantage}"));
                    }
                }
                let mut all = ins;
                all.extend(outs);
                all.push(*vantage);
                Ok(all)
            }
        }
    }
}

struct Query<'a> {
    seq: &'a SymbolicSequence,
    histogram: FrequencyHistogram,
}

impl<'a> Query<'a> {
    fn new(seq: &'a SymbolicSequence) -> Self {
        Self {
            seq,
            histogram: FrequencyHistogram::of(seq),
        }
    }
}

fn split<M: SequenceMetric>(mut ids: Vec<usize>, items: &[SymbolicSequence], metric: &M, rng: &mut ChaCha8Rng) -> Node {
    if ids.len() <= LEAF_SIZE {
        return Node::Leaf(ids);
    }
    let vantage = ids.swap_remove(rng.random_range(0..ids.len()));
    let v = &items[vantage];
    let dists: Vec<f64> = ids.iter().map(|&id| metric.distance(v, &items[id])).collect();
    let mut sorted = dists.clone();
    sorted.sort_by(f64::total_cmp);
    let radius = sorted[(sorted.len() - 1) / 2];

    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for (id, d) in ids.into_iter().zip(dists) {
        if d <= radius {
            inside.push(id);
        } else {
            outside.push(id);
        }
    }
    Node::Split {
        vantage,
        radius,
        inside: Box::new(split(inside, items, metric, rng)),
        outside: Box::new(split(outside, items, metric, rng)),
    }
}

/// Spot-checks that `metric` computes what `spec` declares, is symmetric and
/// vanishes on identical inputs.
fn audit_metric<M: SequenceMetric>(
    items: &[SymbolicSequence],
    metric: &M,
    spec: &Metric,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let n = items.len();
    for k in 0..AUDIT_PAIRS.min(n * n) {
        let (i, j) = if k == 0 {
            (0, 0)
        } else {
            (rng.random_range(0..n), rng.random_range(0..n))
        };
        let (a, b) = (&items[i], &items[j]);
        let forward = metric.distance(a, b);
        let backward = metric.distance(b, a);
        let expected = spec.distance(a, b);
        if forward != backward {
            return Err(Error::MetricMismatch(format!(
                "asymmetric on items {i} and {j}: {forward} vs {backward}"
            )));
        }
        if forward != expected {
            return Err(Error::MetricMismatch(format!(
                "items {i} and {j}: got {forward}, {spec} gives {expected}"
            )));
        }
        if metric.distance(a, a) != 0.0 {
            return Err(Error::MetricMismatch(format!("nonzero self-distance for item {i}")));
        }
    }
    Ok(())
}

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

use super::{GraphError, Result};
use crate::theory::PowerLawParams;

/// How a degree sequence is drawn from `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    /// `round(e^alpha / k^beta)` nodes of each degree `k`.
    Deterministic,
    /// `n` i.i.d. draws from the normalized power law on `[1, max_degree]`.
    Sampled(usize),
}

/// Degree sequence for a power-law graph, ordered by degree for the
/// deterministic mode.
///
/// An odd stub total is fixed by adding one stub to a uniformly chosen
/// minimum-degree node.
pub fn realize_degree_sequence<R: Rng + ?Sized>(
    params: &PowerLawParams,
    mode: DegreeMode,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let kmax = params.max_degree();
    let mut degrees: Vec<usize> = match mode {
        DegreeMode::Deterministic => (1..=kmax)
            .flat_map(|k| std::iter::repeat_n(k as usize, params.node_count(k) as usize))
            .collect(),
        DegreeMode::Sampled(n) => {
            if n == 0 {
                return Err(GraphError::SampleSize);
            }
            let weights: Vec<f64> = (1..=kmax)
                .map(|k| (k as f64).powf(-params.beta()))
                .collect();
            let dist = WeightedIndex::new(&weights).expect("positive weights");
            (0..n).map(|_| dist.sample(rng) + 1).collect()
        }
    };
    if degrees.is_empty() {
        return Err(GraphError::EmptySequence);
    }
    let total: usize = degrees.iter().sum();
    if total == 1 {
        return Err(GraphError::SingleStub);
    }
    if total % 2 == 1 {
        let min = *degrees.iter().min().expect("nonempty");
        let candidates: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] == min).collect();
        let pick = candidates[rng.gen_range(0..candidates.len())];
        degrees[pick] += 1;
    }
    Ok(degrees)
}

/// Node count per degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: BTreeMap<usize, u64>,
}

impl DegreeHistogram {
    pub fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut counts = BTreeMap::new();
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn count(&self, degree: usize) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }
}

impl FromIterator<(usize, u64)> for DegreeHistogram {
    fn from_iter<I: IntoIterator<Item = (usize, u64)>>(iter: I) -> Self {
        let mut counts = BTreeMap::new();
        for (k, c) in iter {
            *counts.entry(k).or_insert(0) += c;
        }
        Self { counts }
    }
}

/// Least-squares slope of `ln count` against `ln k` over nonzero bins in
/// `[kmin, kmax_fit]`, returned as a positive exponent.
pub fn fit_power_law_slope(hist: &DegreeHistogram, kmin: usize, kmax_fit: usize) -> Result<f64> {
    let points: Vec<(f64, f64)> = hist
        .iter()
        .filter(|&(k, c)| k >= kmin.max(1) && k <= kmax_fit && c > 0)
        .map(|(k, c)| ((k as f64).ln(), (c as f64).ln()))
        .collect();
    if points.len() < 2 {
        return Err(GraphError::InsufficientData(points.len()));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(-sxy / sxx)
}

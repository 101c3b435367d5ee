//! Exhaustive enumeration at tiny n, hill climbing at moderate n, forcing
//! probes, and the hard-case normalization pipeline.

mod enumerate;
mod local;
mod normalize;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::template::{binom2, ColouringTemplate};

pub use enumerate::{enumerate_gallai, EnumerationOptions};
pub use local::{forcing_probe, local_search, ProbeReport};
pub use normalize::{
    hard_case_bound_check, normalize_hard_case, structure_property, NormalizeError,
    NormalizationTrace, TraceAction, TraceRecord, DEFAULT_C,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("exhaustive enumeration is limited to n <= {limit} (got {n}); n = 5 needs pruning")]
    ExhaustiveLimit { n: usize, limit: usize },
    #[error("initial template contains a rainbow triangle")]
    InitNotGallai,
    #[error("initial template has {actual} vertices, expected {expected}")]
    SizeMismatch { expected: usize, actual: usize },
}

/// What a search maximizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Objective {
    /// |G1| + |G2| + |G3|
    Sum,
    /// min |G_i|, compared leximin
    MinClass,
    /// (|G1| |G2| |G3|)^(1/3)
    GeometricMean,
    /// min_i (|G_i| − α_i C(n, 2)), compared leximin
    Margin([f64; 3]),
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::Sum => "sum",
            Objective::MinClass => "min",
            Objective::GeometricMean => "geomean",
            Objective::Margin(_) => "margin",
        }
    }

    pub fn parse(s: &str) -> Option<Objective> {
        match s {
            "sum" => Some(Objective::Sum),
            "min" | "min_class" => Some(Objective::MinClass),
            "geomean" | "geometric_mean" => Some(Objective::GeometricMean),
            _ => None,
        }
    }

    fn margins(alpha: [f64; 3], sizes: [usize; 3], n: usize) -> [f64; 3] {
        let pairs = binom2(n) as f64;
        std::array::from_fn(|i| sizes[i] as f64 - alpha[i] * pairs)
    }

    pub fn value(&self, sizes: [usize; 3], n: usize) -> f64 {
        match *self {
            Objective::Sum => sizes.iter().sum::<usize>() as f64,
            Objective::MinClass => *sizes.iter().min().expect("three classes") as f64,
            Objective::GeometricMean => {
                (sizes.iter().map(|&s| s as f64).product::<f64>()).cbrt()
            }
            Objective::Margin(alpha) => Self::margins(alpha, sizes, n)
                .into_iter()
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Comparison key; larger is better, compared lexicographically.
    pub fn key(&self, sizes: [usize; 3], n: usize) -> [f64; 3] {
        match *self {
            Objective::Sum => [sizes.iter().sum::<usize>() as f64, 0.0, 0.0],
            Objective::GeometricMean => {
                [sizes.iter().map(|&s| s as f64).product::<f64>(), 0.0, 0.0]
            }
            Objective::MinClass => {
                let mut s = sizes.map(|x| x as f64);
                s.sort_by(f64::total_cmp);
                s
            }
            Objective::Margin(alpha) => {
                let mut m = Self::margins(alpha, sizes, n);
                m.sort_by(f64::total_cmp);
                m
            }
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn compare_keys(a: &[f64; 3], b: &[f64; 3]) -> Ordering {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best: ColouringTemplate,
    pub objective: Objective,
    pub value: f64,
    pub exhaustive: bool,
    pub templates_visited: u64,
    /// Complete Gallai templates seen (enumeration only).
    pub gallai_count: u64,
    pub seed: Option<u64>,
    pub accepted_moves: u64,
    /// Objective value of the starting template (local search only).
    pub initial_value: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_order_as_documented() {
        let n = 5;
        let sum = Objective::Sum;
        assert!(compare_keys(&sum.key([3, 3, 3], n), &sum.key([9, 0, 1], n)).is_lt());
        let min = Objective::MinClass;
        assert!(compare_keys(&min.key([2, 5, 9], n), &min.key([2, 6, 6], n)).is_lt());
        assert_eq!(min.value([2, 5, 9], n), 2.0);
        let g = Objective::GeometricMean;
        assert!((g.value([1, 8, 27], n) - 6.0).abs() < 1e-12);
        let m = Objective::Margin([0.5, 0.5, 0.0]);
        assert_eq!(m.value([5, 6, 0], n), 0.0);
    }
}

//! Depth-first enumeration of all templates on n ≤ 5 vertices.
//!
//! Each vertex pair carries a 3-bit colour mask. Pairs are assigned in
//! colexicographic order, (0,1), (0,2), (1,2), (0,3), …, so that every
//! triangle {a, u, v} with a < u < v is complete as soon as pair (u, v) is
//! assigned and can be tested for a rainbow assignment right away.

use std::cmp::Ordering;

use rayon::prelude::*;

use super::{compare_keys, Objective, SearchError, SearchResult};
use crate::template::{to_canonical_json, ColourSet, ColouringTemplate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Reject partial assignments as soon as they complete a rainbow
    /// triangle. Without it every leaf is generated and tested.
    pub prune: bool,
    /// Largest n accepted without pruning.
    pub limit: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { prune: true, limit: 4 }
    }
}

/// Largest n accepted at all (with pruning).
const PRUNED_LIMIT: usize = 5;

/// `RAINBOW[a][b][c]`: masks `a`, `b`, `c` on the three sides of a triangle
/// admit a bijective assignment of the three colours.
static RAINBOW: [[[bool; 8]; 8]; 8] = build_rainbow_table();

const fn build_rainbow_table() -> [[[bool; 8]; 8]; 8] {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut t = [[[false; 8]; 8]; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = 0;
        while b < 8 {
            let mut c = 0;
            while c < 8 {
                let mut p = 0;
                while p < 6 {
                    let q = perms[p];
                    if a >> q[0] & 1 == 1 && b >> q[1] & 1 == 1 && c >> q[2] & 1 == 1 {
                        t[a][b][c] = true;
                    }
                    p += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    t
}

fn pair_index(u: usize, v: usize) -> usize {
    v * (v - 1) / 2 + u
}

struct Layout {
    n: usize,
    pairs: Vec<(usize, usize)>,
    /// For each pair (u, v): index pairs of (a, u) and (a, v), a < u.
    closes: Vec<Vec<(usize, usize)>>,
}

impl Layout {
    fn new(n: usize) -> Layout {
        let mut pairs = Vec::new();
        for v in 1..n {
            for u in 0..v {
                pairs.push((u, v));
            }
        }
        let closes = pairs
            .iter()
            .map(|&(u, v)| (0..u).map(|a| (pair_index(a, u), pair_index(a, v))).collect())
            .collect();
        Layout { n, pairs, closes }
    }

    fn closes_rainbow(&self, masks: &[u8], p: usize) -> bool {
        let m = masks[p] as usize;
        self.closes[p]
            .iter()
            .any(|&(i, j)| RAINBOW[masks[i] as usize][masks[j] as usize][m])
    }

    fn is_gallai(&self, masks: &[u8]) -> bool {
        (0..self.pairs.len()).all(|p| !self.closes_rainbow(masks, p))
    }

    fn sizes(&self, masks: &[u8]) -> [usize; 3] {
        let mut s = [0; 3];
        for &m in masks {
            for (c, slot) in s.iter_mut().enumerate() {
                *slot += (m >> c & 1) as usize;
            }
        }
        s
    }

    fn template(&self, masks: &[u8]) -> ColouringTemplate {
        ColouringTemplate::from_fn(self.n, |u, v| ColourSet::from_bits(masks[pair_index(u, v)]))
    }
}

struct Best {
    key: [f64; 3],
    masks: Vec<u8>,
    json: Option<String>,
}

struct Shard<'a> {
    layout: &'a Layout,
    objective: Objective,
    prune: bool,
    masks: Vec<u8>,
    best: Option<Best>,
    visited: u64,
    gallai: u64,
}

impl Shard<'_> {
    fn dfs(&mut self, p: usize) {
        if p == self.masks.len() {
            self.visited += 1;
            if !self.prune && !self.layout.is_gallai(&self.masks) {
                return;
            }
            self.gallai += 1;
            self.offer();
            return;
        }
        for m in 0..8u8 {
            self.masks[p] = m;
            if self.prune && self.layout.closes_rainbow(&self.masks, p) {
                continue;
            }
            self.dfs(p + 1);
        }
        self.masks[p] = 0;
    }

    fn offer(&mut self) {
        let key = self.objective.key(self.layout.sizes(&self.masks), self.layout.n);
        let candidate = Best { key, masks: self.masks.clone(), json: None };
        self.best = Some(match self.best.take() {
            None => candidate,
            Some(current) => better(self.layout, current, candidate),
        });
    }
}

/// Higher key wins; equal keys go to the smaller canonical serialization.
fn better(layout: &Layout, mut a: Best, mut b: Best) -> Best {
    match compare_keys(&a.key, &b.key) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            let ja = a.json.get_or_insert_with(|| to_canonical_json(&layout.template(&a.masks)));
            let jb = b.json.get_or_insert_with(|| to_canonical_json(&layout.template(&b.masks)));
            if jb < ja {
                b
            } else {
                a
            }
        }
    }
}

/// Exhaustive optimum of `objective` over all Gallai templates on `n`
/// vertices. Ties are broken by the smallest canonical serialization.
pub fn enumerate_gallai(
    n: usize,
    objective: Objective,
    options: EnumerationOptions,
) -> Result<SearchResult, SearchError> {
    let limit = if options.prune {
        PRUNED_LIMIT
    } else {
        options.limit.min(PRUNED_LIMIT - 1)
    };
    if n > limit {
        return Err(SearchError::ExhaustiveLimit { n, limit });
    }
    let layout = Layout::new(n);
    let total = layout.pairs.len();
    let prefix = total.min(2);
    let shard_count = 1usize << (3 * prefix);
    let shards: Vec<(Option<Best>, u64, u64)> = (0..shard_count)
        .into_par_iter()
        .map(|s| {
            let mut masks = vec![0u8; total];
            for (p, slot) in masks.iter_mut().enumerate().take(prefix) {
                *slot = ((s >> (3 * p)) & 7) as u8;
            }
            let mut shard = Shard {
                layout: &layout,
                objective,
                prune: options.prune,
                masks,
                best: None,
                visited: 0,
                gallai: 0,
            };
            let blocked = options.prune && (0..prefix).any(|p| layout.closes_rainbow(&shard.masks, p));
            if !blocked {
                shard.dfs(prefix);
            }
            (shard.best, shard.visited, shard.gallai)
        })
        .collect();

    let mut best: Option<Best> = None;
    let (mut visited, mut gallai) = (0, 0);
    for (b, v, g) in shards {
        visited += v;
        gallai += g;
        if let Some(b) = b {
            best = Some(match best {
                None => b,
                Some(cur) => better(&layout, cur, b),
            });
        }
    }
    let best = best.expect("the empty template is always Gallai");
    let template = layout.template(&best.masks);
    Ok(SearchResult {
        value: objective.value(template.class_sizes(), n),
        best: template,
        objective,
        exhaustive: true,
        templates_visited: visited,
        gallai_count: gallai,
        seed: None,
        accepted_moves: 0,
        initial_value: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::{Colour, Edge};

    fn unpruned() -> EnumerationOptions {
        EnumerationOptions { prune: false, limit: 4 }
    }

    #[test]
    fn rainbow_table_spot_checks() {
        assert!(RAINBOW[0b001][0b010][0b100]);
        assert!(RAINBOW[0b111][0b111][0b111]);
        assert!(!RAINBOW[0b011][0b011][0b011]);
        assert!(!RAINBOW[0b001][0b001][0b110]);
    }

    #[test]
    fn n3_sum_optimum_and_witness() {
        let r = enumerate_gallai(3, Objective::Sum, EnumerationOptions::default()).unwrap();
        assert_eq!(r.value, 6.0);
        let k3: Vec<Edge> = vec![(0, 1), (0, 2), (1, 2)];
        assert_eq!(r.best.class(Colour::One), k3.as_slice());
        assert_eq!(r.best.class(Colour::Two), k3.as_slice());
        assert!(r.best.class(Colour::Three).is_empty());
    }

    #[test]
    fn n3_gallai_count_matches_naive_filter() {
        let naive = (0..512u32)
            .filter(|&bits| {
                let t = ColouringTemplate::from_fn(3, |u, v| {
                    ColourSet::from_bits(((bits >> (3 * pair_index(u, v))) & 7) as u8)
                });
                t.is_gallai()
            })
            .count() as u64;
        let pruned = enumerate_gallai(3, Objective::Sum, EnumerationOptions::default()).unwrap();
        let full = enumerate_gallai(3, Objective::Sum, unpruned()).unwrap();
        assert_eq!(pruned.gallai_count, naive);
        assert_eq!(full.gallai_count, naive);
        assert_eq!(full.templates_visited, 512);
    }

    #[test]
    fn pruned_and_unpruned_agree_at_n4() {
        for obj in [Objective::Sum, Objective::MinClass, Objective::GeometricMean] {
            let a = enumerate_gallai(4, obj, EnumerationOptions::default()).unwrap();
            let b = enumerate_gallai(4, obj, unpruned()).unwrap();
            assert_eq!(a.value, b.value, "{obj}");
            assert_eq!(a.best, b.best, "{obj}");
            assert_eq!(a.gallai_count, b.gallai_count);
        }
    }

    #[test]
    fn n3_objectives_match_naive_maximum() {
        let all: Vec<ColouringTemplate> = (0..512u32)
            .map(|bits| {
                ColouringTemplate::from_fn(3, |u, v| {
                    ColourSet::from_bits(((bits >> (3 * pair_index(u, v))) & 7) as u8)
                })
            })
            .filter(|t| t.is_gallai())
            .collect();
        for obj in [Objective::Sum, Objective::MinClass, Objective::GeometricMean] {
            let naive = all
                .iter()
                .map(|t| obj.value(t.class_sizes(), 3))
                .fold(f64::NEG_INFINITY, f64::max);
            let r = enumerate_gallai(3, obj, EnumerationOptions::default()).unwrap();
            assert_eq!(r.value, naive, "{obj}");
            assert!(r.best.is_gallai());
        }
    }

    #[test]
    fn limits() {
        assert_eq!(
            enumerate_gallai(5, Objective::Sum, unpruned()).unwrap_err(),
            SearchError::ExhaustiveLimit { n: 5, limit: 4 }
        );
        assert!(matches!(
            enumerate_gallai(6, Objective::Sum, EnumerationOptions::default()),
            Err(SearchError::ExhaustiveLimit { n: 6, .. })
        ));
        let r = enumerate_gallai(1, Objective::Sum, EnumerationOptions::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }
}

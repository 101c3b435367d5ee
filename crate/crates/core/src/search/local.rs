//! Hill climbing over single (pair, colour) toggles, and the forcing probe
//! built on top of it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compare_keys, Objective, SearchError, SearchResult};
use crate::boundary;
use crate::constructions::{self, ConstructionParams, Kind};
use crate::template::{Builder, Colour, ColouringTemplate};

/// Would adding colour `c` to pair (u, v) close a rainbow triangle?
pub(crate) fn addition_creates_rainbow(b: &Builder, c: Colour, u: usize, v: usize) -> bool {
    let [x, y] = c.others();
    let (xu, yu) = (b.row(x, u), b.row(y, u));
    let (xv, yv) = (b.row(x, v), b.row(y, v));
    (0..xu.len()).any(|i| (xu[i] & yv[i]) | (yu[i] & xv[i]) != 0)
}

/// Strict-improvement hill climbing from `init`. Each of the `budget` steps
/// proposes one uniformly random (pair, colour) toggle; additions that would
/// close a rainbow triangle are rejected outright.
pub fn local_search(
    n: usize,
    objective: Objective,
    init: &ColouringTemplate,
    budget: u64,
    seed: u64,
) -> Result<SearchResult, SearchError> {
    if init.n() != n {
        return Err(SearchError::SizeMismatch { expected: n, actual: init.n() });
    }
    if !init.is_gallai() {
        return Err(SearchError::InitNotGallai);
    }
    let initial_value = objective.value(init.class_sizes(), n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = Builder::from(init);
    let mut sizes = init.class_sizes();
    let mut key = objective.key(sizes, n);
    let mut accepted = 0;
    if n >= 2 {
        for _ in 0..budget {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let c = Colour::ALL[rng.gen_range(0..3)];
            let adding = !state.has(c, u, v);
            let mut next = sizes;
            if adding {
                next[c.index()] += 1;
            } else {
                next[c.index()] -= 1;
            }
            let next_key = objective.key(next, n);
            if !compare_keys(&next_key, &key).is_gt() {
                continue;
            }
            if adding {
                if addition_creates_rainbow(&state, c, u, v) {
                    continue;
                }
                state.insert(c, u, v);
            } else {
                state.remove(c, u, v);
            }
            sizes = next;
            key = next_key;
            accepted += 1;
        }
    }
    let best = state.finish();
    debug_assert!(best.is_gallai());
    Ok(SearchResult {
        value: objective.value(sizes, n),
        best,
        objective,
        exhaustive: false,
        templates_visited: budget,
        gallai_count: 0,
        seed: Some(seed),
        accepted_moves: accepted,
        initial_value: Some(initial_value),
    })
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    /// A Gallai template whose every class margin exceeds `threshold`.
    pub witness: Option<ColouringTemplate>,
    /// Where the witness (or the best attempt) came from.
    pub source: String,
    /// Best min-margin seen across all starts.
    pub best_min_margin: f64,
    /// C_param · n
    pub threshold: f64,
    pub steps: u64,
}

/// Look for a Gallai template with |G_i| − α_i C(n,2) > C_param·n for every i.
/// Starts: the theorem witness (when (α1, α2) lies in a region), F(n,0,0) and
/// H(⌈υn⌉, n−⌈υn⌉, 0). Each start is tried as is, then improved by local
/// search under the margin objective with an equal share of the budget.
pub fn forcing_probe(
    alpha: [f64; 3],
    n: usize,
    c_param: f64,
    budget: u64,
    seed: u64,
) -> ProbeReport {
    let objective = Objective::Margin(alpha);
    let threshold = c_param * n as f64;
    let mut starts: Vec<(String, ColouringTemplate)> = Vec::new();
    if let Ok(w) = constructions::theorem_witness(alpha[0], alpha[1], n) {
        starts.push((format!("theorem_witness {:?}{}", w.kind, w.params), w.template));
    }
    starts.push(("F".to_string() + &ConstructionParams::new(n, 0, 0).to_string(),
        constructions::build(Kind::F, ConstructionParams::new(n, 0, 0))));
    let a = ((boundary::upsilon() * n as f64).ceil() as usize).min(n);
    let hp = ConstructionParams::new(a, n - a, 0);
    starts.push((format!("H{hp}"), constructions::build(Kind::H, hp)));

    let mut best = (f64::NEG_INFINITY, String::new());
    for (source, t) in &starts {
        let m = objective.value(t.class_sizes(), n);
        if m > threshold {
            return ProbeReport {
                witness: Some(t.clone()),
                source: source.clone(),
                best_min_margin: m,
                threshold,
                steps: 0,
            };
        }
        if m > best.0 {
            best = (m, source.clone());
        }
    }

    let share = budget / starts.len() as u64;
    let mut steps = 0;
    for (i, (source, t)) in starts.iter().enumerate() {
        let run = local_search(n, objective, t, share, seed.wrapping_add(i as u64))
            .expect("construction starts are Gallai");
        steps += share;
        let label = format!("local_search from {source}");
        if run.value > threshold {
            return ProbeReport {
                witness: Some(run.best),
                source: label,
                best_min_margin: run.value,
                threshold,
                steps,
            };
        }
        if run.value > best.0 {
            best = (run.value, label);
        }
    }
    ProbeReport { witness: None, source: best.1, best_min_margin: best.0, threshold, steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::binom2;

    #[test]
    fn incremental_check_agrees_with_full_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(3..9);
            let mut b = Builder::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    for c in Colour::ALL {
                        if rng.gen_bool(0.3) {
                            b.insert(c, u, v);
                        }
                    }
                }
            }
            let before = b.finish();
            if !before.is_gallai() {
                continue;
            }
            let (u, v) = (0, 1 + rng.gen_range(0..n - 1));
            let c = Colour::ALL[rng.gen_range(0..3)];
            let b = Builder::from(&before);
            let predicted = addition_creates_rainbow(&b, c, u, v);
            let mut after = Builder::from(&before);
            after.insert(c, u, v);
            assert_eq!(predicted, !after.finish().is_gallai());
        }
    }

    #[test]
    fn never_decreases_and_is_deterministic() {
        let init = constructions::build(Kind::H, ConstructionParams::new(8, 4, 0));
        for obj in [Objective::Sum, Objective::MinClass, Objective::GeometricMean] {
            let a = local_search(12, obj, &init, 5_000, 11).unwrap();
            let b = local_search(12, obj, &init, 5_000, 11).unwrap();
            assert!(a.value >= a.initial_value.unwrap());
            assert!(a.best.is_gallai());
            assert_eq!(a.best, b.best);
            assert!(!a.exhaustive);
        }
    }

    #[test]
    fn f_template_is_a_sum_fixed_point() {
        let n = 60;
        let init = constructions::build(Kind::F, ConstructionParams::new(n, 0, 0));
        let r = local_search(n, Objective::Sum, &init, 10_000, 1).unwrap();
        assert_eq!(r.value, 2.0 * binom2(n) as f64);
        assert_eq!(r.accepted_moves, 0);
        assert_eq!(r.best, init);
    }

    #[test]
    fn rejects_bad_init() {
        let t = ColouringTemplate::new(3, [vec![(0, 1)], vec![(1, 2)], vec![(0, 2)]]).unwrap();
        assert_eq!(
            local_search(3, Objective::Sum, &t, 10, 0).unwrap_err(),
            SearchError::InitNotGallai
        );
        assert!(matches!(
            local_search(4, Objective::Sum, &t, 10, 0),
            Err(SearchError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn probe_below_surface_finds_witness() {
        let r = forcing_probe([0.68, 0.64, 0.31], 100, -2.0, 1_000, 7);
        let w = r.witness.expect("witness below the surface");
        assert!(w.is_gallai());
        assert!(r.best_min_margin > -200.0);
    }

    #[test]
    fn probe_with_zero_targets_finds_witness() {
        let r = forcing_probe([0.0, 0.0, 0.0], 20, 0.0, 10_000, 7);
        let w = r.witness.expect("any template with three nonempty classes qualifies");
        assert!(w.class_sizes().iter().all(|&s| s > 0));
    }
}

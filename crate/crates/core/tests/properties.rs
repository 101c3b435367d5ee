//! Property tests over randomly generated templates and parameters.

use gallai::boundary;
use gallai::constructions::{self, ConstructionParams, Kind};
use gallai::search::{self, Objective};
use gallai::template::{g_from_sizes, parse_template, to_canonical_json};
use gallai::{Colour, ColourSet, ColouringTemplate};
use proptest::prelude::*;

/// n and one 3-bit mask per pair, each bit set with probability `p`.
fn template_strategy(max_n: usize, p: f64) -> impl Strategy<Value = ColouringTemplate> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(prop::collection::vec(prop::bool::weighted(p), 3), pairs).prop_map(
            move |bits| {
                let mut k = 0;
                let mut masks = vec![vec![ColourSet::EMPTY; n]; n];
                for u in 0..n {
                    for v in u + 1..n {
                        let mut s = ColourSet::EMPTY;
                        for (i, c) in Colour::ALL.into_iter().enumerate() {
                            if bits[k][i] {
                                s = s.with(c);
                            }
                        }
                        masks[u][v] = s;
                        k += 1;
                    }
                }
                ColouringTemplate::from_fn(n, |u, v| masks[u][v])
            },
        )
    })
}

fn naive_rainbow_count(t: &ColouringTemplate) -> usize {
    let n = t.n();
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (t.colours(a, b), t.colours(a, c), t.colours(b, c));
                let hit = x.iter().any(|cx| {
                    y.iter().any(|cy| cy != cx && z.iter().any(|cz| cz != cx && cz != cy))
                });
                if hit {
                    k += 1;
                }
            }
        }
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rainbow_detection_matches_naive_scan(t in template_strategy(14, 0.25)) {
        let fast = t.rainbow_triangles();
        prop_assert_eq!(fast.len(), naive_rainbow_count(&t));
        prop_assert_eq!(t.is_gallai(), fast.is_empty());
    }

    #[test]
    fn canonical_json_round_trips(t in template_strategy(10, 0.4)) {
        let json = to_canonical_json(&t);
        let back = parse_template(&json).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(to_canonical_json(&back), json);
    }

    #[test]
    fn blow_up_scales_classes_and_keeps_gallai(a in 0usize..5, b in 0usize..5, c in 0usize..5, k in 1usize..4) {
        for kind in [Kind::F, Kind::H] {
            let t = constructions::build(kind, ConstructionParams::new(a, b, c));
            let big = t.blow_up(k).unwrap();
            prop_assert_eq!(big.n(), t.n() * k);
            prop_assert_eq!(big.class_sizes(), t.class_sizes().map(|s| s * k * k));
            prop_assert!(big.is_gallai());
        }
    }

    #[test]
    fn induced_subtemplates_of_gallai_are_gallai(a in 0usize..8, b in 0usize..8, c in 0usize..8, mask in any::<u32>()) {
        let t = constructions::build(Kind::H, ConstructionParams::new(a, b, c));
        let subset: Vec<usize> = (0..t.n()).filter(|v| mask >> (v % 32) & 1 == 1).collect();
        prop_assert!(t.induced(&subset).unwrap().is_gallai());
    }

    #[test]
    fn g_is_symmetric_in_the_classes(s in prop::array::uniform3(0usize..500), n in 2usize..40) {
        let g = g_from_sizes(s, n);
        for p in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            prop_assert!((g_from_sizes([s[p[0]], s[p[1]], s[p[2]]], n) - g).abs() < 1e-9);
        }
    }

    #[test]
    fn local_search_never_loses_ground(a in 0usize..6, b in 0usize..6, c in 0usize..6, seed in any::<u64>()) {
        let start = constructions::build(Kind::H, ConstructionParams::new(a, b, c));
        let n = start.n();
        for obj in [Objective::Sum, Objective::MinClass, Objective::GeometricMean] {
            let r = search::local_search(n, obj, &start, 500, seed).unwrap();
            prop_assert!(r.best.is_gallai());
            prop_assert!(r.value >= r.initial_value.unwrap());
        }
    }

    #[test]
    fn canonical_representation_inverts(x in 0.5f64..1.0, t in 0.0f64..1.0, s in 0.0f64..=1.0) {
        // y ≥ z with y + z = 1 − x
        let rest = 1.0 - x;
        let y = rest * (0.5 + 0.5 * t);
        let z = rest - y;
        let a1 = x * x + y * y;
        prop_assume!(2.0 * a1 - 1.0 >= 0.0);
        prop_assume!(x >= (1.0 + (2.0 * a1 - 1.0).sqrt()) / 2.0 + 1e-9);
        let a2 = x * x + z * z;
        let rep = boundary::canonical_representation(a1, a2).unwrap();
        prop_assert!((rep.x - x).abs() < 1e-8 && (rep.y - y).abs() < 1e-8 && (rep.z - z).abs() < 1e-8);
        // every point of the segment between (a1, a1) and (a1, a2) that is a
        // good pair has a representation
        let mid = a2 + s * (a1 - a2);
        prop_assert!(boundary::canonical_representation(a1, mid).is_ok());
    }

    #[test]
    fn forcing_alpha3_stays_below_alpha2(a1 in 0.0f64..=1.0, f in 0.0f64..=1.0) {
        let a2 = a1 * f;
        if let Ok(a3) = boundary::forcing_alpha3(a1, a2) {
            prop_assert!(a3 <= a2 + 1e-12);
            prop_assert!(a3 >= -1e-12);
        }
    }
}

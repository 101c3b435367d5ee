//! The hard-case cleaning pipeline: starting from a Gallai template with no
//! rainbow pairs and G2 ∪ G3 ⊆ G1, push every colour-2 and colour-3 edge
//! into the matching blocks V12 and V13 while tracking g.
//!
//! Moves never create colour 2 or 3 outside V12 ∪ V13, so the only work is
//! to remove them from the wrong places: D×V1k (step 1), inside V1k (step 2)
//! and V12×V13 (step 3). Whenever max(|G2|, |G3|) drops below
//! C(N,2)/4 + N the pipeline stops at once.

use std::fmt;

use thiserror::Error;

use crate::format::g9;
use crate::template::{
    binom2, g_from_sizes, Builder, Colour, ColourSet, ColouringTemplate, Edge, MatchingPartition,
};

pub const DEFAULT_C: f64 = 6.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormalizeError {
    #[error("template contains a rainbow triangle")]
    NotGallai,
    #[error("template has {0} rainbow pair(s) (pairs carrying all three colours)")]
    RainbowEdges(usize),
    #[error("pair {u}-{v} is in G{colour} but not in G1")]
    NotNested { colour: Colour, u: usize, v: usize },
    #[error("constant C must exceed 5 (got {0})")]
    InvalidConstant(f64),
    #[error("structure property violated: {0}")]
    StructureViolated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceAction {
    /// Remove colour j from a pair, add colour 1 to a pair that lacked it.
    Rewrite,
    /// Remove colour j from a pair.
    DropColour,
    /// Move colour j from one pair to another, adding colour 1 there if needed.
    Relocate,
}

impl TraceAction {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceAction::Rewrite => "rewrite",
            TraceAction::DropColour => "drop",
            TraceAction::Relocate => "relocate",
        }
    }
}

impl fmt::Display for TraceAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One move. Two-pair moves write `edge` as "u-v/w-x" and the colour fields
/// as "13/-" style, source pair first.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub step: &'static str,
    pub action: TraceAction,
    pub colour: Colour,
    pub edge: String,
    pub colour_from: String,
    pub colour_to: String,
    pub g_before: f64,
    pub g_after: f64,
    /// max(|G2|, |G3|) before the move.
    pub max_before: usize,
}

#[derive(Clone, Debug)]
pub struct NormalizationTrace {
    pub records: Vec<TraceRecord>,
    pub g_before: f64,
    pub g_after: f64,
    pub early_exit: bool,
    pub partition: MatchingPartition,
    /// C(N,2)/4 + N
    pub threshold: f64,
    /// g(T) ≥ C·N, the standing assumption of the hard case.
    pub hypothesis_met: bool,
    /// |A[M12]|, |A[M13]|, |A[M12, M13]|
    pub aux_counts: [usize; 3],
    /// Places where the input left the expected proof path.
    pub diagnostics: Vec<String>,
}

impl NormalizationTrace {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,action,edge,colour_from,colour_to,g_after\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.step,
                r.action,
                r.edge,
                r.colour_from,
                r.colour_to,
                g9(r.g_after)
            ));
        }
        out
    }
}

/// Early-exit signal threaded through the steps with `?`.
struct Stop;

struct Work {
    b: Builder,
    n: usize,
    sizes: [usize; 3],
    threshold: f64,
    records: Vec<TraceRecord>,
    diagnostics: Vec<String>,
}

fn pair(u: usize, v: usize) -> Edge {
    (u.min(v), u.max(v))
}

fn block(x: Edge, y: Edge) -> Vec<Edge> {
    let mut ps = vec![pair(x.0, y.0), pair(x.0, y.1), pair(x.1, y.0), pair(x.1, y.1)];
    ps.sort_unstable();
    ps
}

impl Work {
    fn g(&self) -> f64 {
        g_from_sizes(self.sizes, self.n)
    }

    fn max23(&self) -> usize {
        self.sizes[1].max(self.sizes[2])
    }

    fn check(&self) -> Result<(), Stop> {
        if (self.max23() as f64) < self.threshold {
            Err(Stop)
        } else {
            Ok(())
        }
    }

    fn has(&self, c: Colour, e: Edge) -> bool {
        self.b.has(c, e.0, e.1)
    }

    fn put(&mut self, c: Colour, e: Edge) {
        if !self.has(c, e) {
            self.b.insert(c, e.0, e.1);
            self.sizes[c.index()] += 1;
        }
    }

    fn take(&mut self, c: Colour, e: Edge) {
        if self.has(c, e) {
            self.b.remove(c, e.0, e.1);
            self.sizes[c.index()] -= 1;
        }
    }

    fn colours(&self, e: Edge) -> ColourSet {
        self.b.colours(e.0, e.1)
    }

    fn log(
        &mut self,
        step: &'static str,
        action: TraceAction,
        colour: Colour,
        edge: String,
        before: (String, String),
        g_before: f64,
        max_before: usize,
    ) -> Result<(), Stop> {
        let (colour_from, colour_to) = before;
        self.records.push(TraceRecord {
            step,
            action,
            colour,
            edge,
            colour_from,
            colour_to,
            g_before,
            g_after: self.g(),
            max_before,
        });
        self.check()
    }

    /// Remove colour `c` from `e` and add colour 1 to the smallest pair of
    /// `region` (sorted) that lacks it. Without such a pair, just drop.
    fn rewrite(&mut self, step: &'static str, c: Colour, e: Edge, region: &[Edge]) -> Result<(), Stop> {
        let Some(&f) = region
            .iter()
            .find(|&&f| f != e && !self.has(Colour::One, f))
        else {
            self.diagnostics
                .push(format!("step {step}: no pair missing colour 1 next to {}-{}; dropped instead", e.0, e.1));
            return self.drop_colour(step, c, e);
        };
        let (g0, m0) = (self.g(), self.max23());
        let from = format!("{}/{}", self.colours(e), self.colours(f));
        self.take(c, e);
        self.put(Colour::One, f);
        let to = format!("{}/{}", self.colours(e), self.colours(f));
        let edge = format!("{}-{}/{}-{}", e.0, e.1, f.0, f.1);
        self.log(step, TraceAction::Rewrite, c, edge, (from, to), g0, m0)
    }

    fn drop_colour(&mut self, step: &'static str, c: Colour, e: Edge) -> Result<(), Stop> {
        let (g0, m0) = (self.g(), self.max23());
        let from = self.colours(e).to_string();
        self.take(c, e);
        let to = self.colours(e).to_string();
        self.log(step, TraceAction::DropColour, c, format!("{}-{}", e.0, e.1), (from, to), g0, m0)
    }

    fn relocate(&mut self, step: &'static str, c: Colour, e: Edge, f: Edge) -> Result<(), Stop> {
        let (g0, m0) = (self.g(), self.max23());
        let from = format!("{}/{}", self.colours(e), self.colours(f));
        self.take(c, e);
        self.put(Colour::One, f);
        self.put(c, f);
        let to = format!("{}/{}", self.colours(e), self.colours(f));
        let edge = format!("{}-{}/{}-{}", e.0, e.1, f.0, f.1);
        self.log(step, TraceAction::Relocate, c, edge, (from, to), g0, m0)
    }
}

/// Auxiliary graph on the matching edges, computed once on the input.
struct Aux {
    in_12: Vec<(usize, usize)>,
    in_13: Vec<(usize, usize)>,
    cross: Vec<Vec<bool>>,
    cross_count: usize,
}

impl Aux {
    fn new(t: &ColouringTemplate, p: &MatchingPartition) -> Aux {
        let count = |c: Colour, x: Edge, y: Edge| {
            block(x, y).into_iter().filter(|&(u, v)| t.has_edge(c, u, v)).count()
        };
        let inside = |m: &[Edge], c: Colour| {
            let mut out = Vec::new();
            for i in 0..m.len() {
                for k in i + 1..m.len() {
                    if count(c, m[i], m[k]) <= 3 {
                        out.push((i, k));
                    }
                }
            }
            out
        };
        let cross: Vec<Vec<bool>> = p
            .m12
            .iter()
            .map(|&x| {
                p.m13
                    .iter()
                    .map(|&y| Colour::ALL.iter().map(|&c| count(c, x, y)).sum::<usize>() == 5)
                    .collect()
            })
            .collect();
        let cross_count = cross.iter().flatten().filter(|&&b| b).count();
        Aux {
            in_12: inside(&p.m12, Colour::Two),
            in_13: inside(&p.m13, Colour::Three),
            cross,
            cross_count,
        }
    }
}

fn validate(t: &ColouringTemplate, c_param: f64) -> Result<(), NormalizeError> {
    if c_param.is_nan() || c_param <= 5.0 {
        return Err(NormalizeError::InvalidConstant(c_param));
    }
    if !t.is_gallai() {
        return Err(NormalizeError::NotGallai);
    }
    let rainbow = t.rainbow_edges().len();
    if rainbow > 0 {
        return Err(NormalizeError::RainbowEdges(rainbow));
    }
    for colour in [Colour::Two, Colour::Three] {
        if let Some(&(u, v)) = t.class(colour).iter().find(|&&(u, v)| !t.has_edge(Colour::One, u, v)) {
            return Err(NormalizeError::NotNested { colour, u, v });
        }
    }
    Ok(())
}

/// Run steps 1–3 on `t`. Returns the cleaned template and the full trace.
pub fn normalize_hard_case(
    t: &ColouringTemplate,
    c_param: f64,
) -> Result<(ColouringTemplate, NormalizationTrace), NormalizeError> {
    validate(t, c_param)?;
    let n = t.n();
    let partition = MatchingPartition::of(t);
    debug_assert!(partition.m23.is_empty());
    let aux = Aux::new(t, &partition);
    let mut w = Work {
        b: Builder::from(t),
        n,
        sizes: t.class_sizes(),
        threshold: binom2(n) as f64 / 4.0 + n as f64,
        records: Vec::new(),
        diagnostics: Vec::new(),
    };
    let g_before = w.g();
    let bound = aux.in_12.len() + aux.in_13.len();
    let half = (partition.m12.len() + partition.m13.len()) as f64 / 2.0;
    if aux.cross_count as f64 > bound as f64 + half {
        w.diagnostics.push(format!(
            "auxiliary bound fails: |A[M12,M13]| = {} > {} + {}",
            aux.cross_count, bound, half
        ));
    }
    let early_exit = w.check().and_then(|_| run_steps(&mut w, &partition, &aux)).is_err();
    if !early_exit {
        debug_assert!(structure_violation(&w.b.clone().finish(), &partition).is_none());
    }
    let trace = NormalizationTrace {
        g_before,
        g_after: w.g(),
        early_exit,
        threshold: w.threshold,
        hypothesis_met: g_before >= c_param * n as f64,
        aux_counts: [aux.in_12.len(), aux.in_13.len(), aux.cross_count],
        records: std::mem::take(&mut w.records),
        diagnostics: std::mem::take(&mut w.diagnostics),
        partition,
    };
    Ok((w.b.finish(), trace))
}

fn run_steps(w: &mut Work, p: &MatchingPartition, aux: &Aux) -> Result<(), Stop> {
    let blocks = [(&p.m12, Colour::Two, Colour::Three), (&p.m13, Colour::Three, Colour::Two)];

    // Step 1: edges from D. First rewrite the wrong colour away, then thin
    // out the right colour to one edge per (v, X).
    for (step, (m, _, k)) in ["1a", "1b"].into_iter().zip(blocks) {
        for &x in m.iter() {
            for &v in &p.d {
                let mut region = vec![pair(v, x.0), pair(v, x.1)];
                region.sort_unstable();
                for e in region.clone() {
                    if w.has(k, e) {
                        w.rewrite(step, k, e, &region)?;
                    }
                }
            }
        }
    }
    for (m, j, _) in blocks {
        for &x in m.iter() {
            let doubled: Vec<usize> = p
                .d
                .iter()
                .copied()
                .filter(|&v| w.has(j, pair(v, x.0)) && w.has(j, pair(v, x.1)))
                .collect();
            if doubled.len() > 1 {
                w.diagnostics.push(format!(
                    "step 1c: {} vertices of D send two colour-{j} pairs to {}-{}",
                    doubled.len(),
                    x.0,
                    x.1
                ));
            }
            for v in doubled {
                w.drop_colour("1c", j, pair(v, x.0))?;
            }
        }
    }

    // Step 2: the wrong colour inside each block.
    for (m, _, k) in blocks {
        for i in 0..m.len() {
            for l in i + 1..m.len() {
                let region = block(m[i], m[l]);
                for &e in &region {
                    if w.has(k, e) {
                        w.rewrite("2", k, e, &region)?;
                    }
                }
            }
        }
    }

    // Step 3a: cross blocks outside the auxiliary graph.
    for (xi, &x) in p.m12.iter().enumerate() {
        for (yi, &y) in p.m13.iter().enumerate() {
            if aux.cross[xi][yi] {
                continue;
            }
            let region = block(x, y);
            for &e in &region {
                for c in [Colour::Two, Colour::Three] {
                    if w.has(c, e) {
                        w.rewrite("3a", c, e, &region)?;
                    }
                }
            }
        }
    }

    let mut cross: Vec<Edge> = Vec::new();
    for &a in &p.v12 {
        for &b in &p.v13 {
            cross.push(pair(a, b));
        }
    }
    cross.sort_unstable();

    // Step 3b: spend the auxiliary budget moving cross edges into the blocks.
    for (m, j, inside) in [(&p.m12, Colour::Two, &aux.in_12), (&p.m13, Colour::Three, &aux.in_13)] {
        let mut budget = inside.len().min(aux.cross_count);
        for &(i, l) in inside.iter() {
            if budget == 0 {
                break;
            }
            let Some(&e) = cross.iter().find(|&&e| w.has(j, e)) else {
                break;
            };
            let slot = block(m[i], m[l])
                .into_iter()
                .find(|&f| w.colours(f).without(Colour::One).is_empty());
            if let Some(f) = slot {
                w.relocate("3b", j, e, f)?;
                budget -= 1;
            }
        }
    }

    // Subprocess: rewrite cross edges of the larger of G2, G3 first.
    while cross.iter().any(|&f| !w.has(Colour::One, f)) {
        let (j, k) = if w.sizes[2] > w.sizes[1] {
            (Colour::Three, Colour::Two)
        } else {
            (Colour::Two, Colour::Three)
        };
        let pick = |c: Colour, w: &Work| cross.iter().copied().find(|&e| w.has(c, e));
        let Some((c, e)) = pick(j, w).map(|e| (j, e)).or_else(|| pick(k, w).map(|e| (k, e))) else {
            break;
        };
        w.rewrite("3sub", c, e, &cross)?;
    }

    // Step 3c: whatever is left across goes.
    let leftover: Vec<(Colour, Edge)> = cross
        .iter()
        .flat_map(|&e| [Colour::Two, Colour::Three].map(|c| (c, e)))
        .filter(|&(c, e)| w.has(c, e))
        .collect();
    let cap = (p.m12.len() + p.m13.len()) as f64 / 2.0;
    if leftover.len() as f64 > cap {
        w.diagnostics.push(format!(
            "step 3c: {} cross edges left, more than (|M12| + |M13|)/2 = {}",
            leftover.len(),
            cap
        ));
    }
    for (c, e) in leftover {
        w.drop_colour("3c", c, e)?;
    }
    Ok(())
}

/// None when every colour-j edge (j = 2, 3) lies inside V1j or between V1j
/// and D, and at most half of the V1j×D pairs carry colour j.
fn structure_violation(t: &ColouringTemplate, p: &MatchingPartition) -> Option<String> {
    let n = t.n();
    let mut part = vec![0u8; n];
    for &v in &p.v12 {
        part[v] = 2;
    }
    for &v in &p.v13 {
        part[v] = 3;
    }
    for &v in &p.v23 {
        part[v] = 4;
    }
    for (j, home, size) in [(Colour::Two, 2u8, p.v12.len()), (Colour::Three, 3u8, p.v13.len())] {
        let mut to_d = 0usize;
        for &(u, v) in t.class(j) {
            match (part[u], part[v]) {
                (a, b) if a == home && b == home => {}
                (a, 0) | (0, a) if a == home => to_d += 1,
                _ => return Some(format!("G{j} pair {u}-{v} lies outside V1{}", home)),
            }
        }
        if 2 * to_d > size * p.d.len() {
            return Some(format!(
                "{to_d} of the {} pairs between V1{home} and D are in G{j}",
                size * p.d.len()
            ));
        }
    }
    None
}

pub fn structure_property(t: &ColouringTemplate, p: &MatchingPartition) -> bool {
    structure_violation(t, p).is_none()
}

/// Whether g(G'') ≤ 3N, for a template already in the cleaned shape.
pub fn hard_case_bound_check(t: &ColouringTemplate, p: &MatchingPartition) -> Result<bool, NormalizeError> {
    if let Some(why) = structure_violation(t, p) {
        return Err(NormalizeError::StructureViolated(why));
    }
    Ok(t.g_value() <= 3.0 * t.n() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::local::addition_creates_rainbow;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// G1 = K_n minus some pairs outside A² ∪ B², G2 ⊆ A², G3 ⊆ B², with A
    /// and B disjoint, then extra colour 2/3 sprinkled wherever it keeps the
    /// template Gallai and nested.
    fn family(rng: &mut ChaCha8Rng, n: usize, a: usize, b: usize, sprinkle: usize) -> ColouringTemplate {
        let mut bld = Builder::new(n);
        let in_a = |v: usize| v < a;
        let in_b = |v: usize| v >= a && v < a + b;
        let p2 = rng.gen_range(0.6..=1.0);
        let p3 = rng.gen_range(0.6..=1.0);
        for u in 0..n {
            for v in u + 1..n {
                let inside = (in_a(u) && in_a(v)) || (in_b(u) && in_b(v));
                if inside || rng.gen_bool(0.9) {
                    bld.insert(Colour::One, u, v);
                }
                if in_a(u) && in_a(v) && rng.gen_bool(p2) {
                    bld.insert(Colour::Two, u, v);
                }
                if in_b(u) && in_b(v) && rng.gen_bool(p3) {
                    bld.insert(Colour::Three, u, v);
                }
            }
        }
        for _ in 0..sprinkle {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let c = if rng.gen_bool(0.5) { Colour::Two } else { Colour::Three };
            let other = if c == Colour::Two { Colour::Three } else { Colour::Two };
            if bld.has(Colour::One, u, v)
                && !bld.has(other, u, v)
                && !addition_creates_rainbow(&bld, c, u, v)
            {
                bld.insert(c, u, v);
            }
        }
        bld.finish()
    }

    fn check_contracts(t: &ColouringTemplate, out: &ColouringTemplate, tr: &NormalizationTrace) {
        let n = t.n() as f64;
        assert!(out.rainbow_edges().is_empty());
        for &(u, v) in out.class(Colour::Two) {
            assert!(!out.has_edge(Colour::Three, u, v));
            assert!(out.has_edge(Colour::One, u, v));
        }
        for &(u, v) in out.class(Colour::Three) {
            assert!(out.has_edge(Colour::One, u, v));
        }
        assert!((tr.g_after - out.g_value()).abs() < 1e-9);
        for r in &tr.records {
            let above = r.max_before as f64 >= tr.threshold;
            match r.action {
                TraceAction::Rewrite if above => assert!(r.g_after >= r.g_before - 1e-9, "{r:?}"),
                TraceAction::DropColour if above => assert!(r.g_after >= r.g_before - 1.0 - 1e-9, "{r:?}"),
                TraceAction::Relocate => assert!(r.g_after >= r.g_before - 1e-9, "{r:?}"),
                _ => {}
            }
        }
        if tr.early_exit {
            assert!((out.class_size(Colour::Two).max(out.class_size(Colour::Three)) as f64) < tr.threshold);
            assert!(out.g_value() <= 2.0 * n + 1e-9);
        } else {
            assert!(structure_property(out, &tr.partition));
            assert!(tr.g_after >= tr.g_before - 2.0 * n - 1e-9);
            assert_eq!(hard_case_bound_check(out, &tr.partition), Ok(out.g_value() <= 3.0 * n));
        }
    }

    #[test]
    fn two_cliques_is_near_no_op() {
        let n = 10;
        let a = [0, 1, 2];
        let b = [3, 4, 5];
        let t = ColouringTemplate::from_fn(n, |u, v| {
            let mut s = ColourSet::of(&[Colour::One]);
            if a.contains(&u) && a.contains(&v) {
                s = s.with(Colour::Two);
            }
            if b.contains(&u) && b.contains(&v) {
                s = s.with(Colour::Three);
            }
            s
        });
        assert!(t.is_gallai());
        let (out, tr) = normalize_hard_case(&t, DEFAULT_C).unwrap();
        // 3 < C(10,2)/4 + 10, so the pipeline stops before touching anything
        assert!(tr.early_exit);
        assert!(tr.records.is_empty());
        assert_eq!(out, t);
        check_contracts(&t, &out, &tr);
    }

    #[test]
    fn randomized_family_obeys_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut full_runs = 0;
        for _ in 0..50 {
            let n = rng.gen_range(10..=40);
            // A must be big enough for |G2| to clear the entry threshold
            let mut a = 2;
            while (binom2(a) as f64) < 1.3 * (binom2(n) as f64 / 4.0 + n as f64) {
                a += 1;
            }
            let a = a.min(n - 1);
            let b = rng.gen_range(0..=(n - a));
            let sprinkle = rng.gen_range(0..3 * n);
            let t = family(&mut rng, n, a, b, sprinkle);
            let (out, tr) = normalize_hard_case(&t, DEFAULT_C).unwrap();
            check_contracts(&t, &out, &tr);
            if !tr.early_exit {
                full_runs += 1;
            }
        }
        assert!(full_runs > 0);
    }

    #[test]
    fn edges_from_d_are_rewritten() {
        // G2 = K8 on 0..8 plus the single pair 0-8 reaching out of the block
        let n = 10;
        let t = ColouringTemplate::from_fn(n, |u, v| {
            let mut s = ColourSet::of(&[Colour::One]);
            if v < 8 || (u == 0 && v == 8) {
                s = s.with(Colour::Two);
            }
            s
        });
        assert!(t.is_gallai());
        let (out, tr) = normalize_hard_case(&t, DEFAULT_C).unwrap();
        check_contracts(&t, &out, &tr);
    }

    #[test]
    fn preconditions_are_named() {
        let tri = ColouringTemplate::new(3, [vec![(0, 1)], vec![(1, 2)], vec![(0, 2)]]).unwrap();
        assert_eq!(normalize_hard_case(&tri, 6.0).unwrap_err(), NormalizeError::NotGallai);
        let rb = ColouringTemplate::new(2, [vec![(0, 1)], vec![(0, 1)], vec![(0, 1)]]).unwrap();
        assert_eq!(normalize_hard_case(&rb, 6.0).unwrap_err(), NormalizeError::RainbowEdges(1));
        let loose = ColouringTemplate::new(3, [vec![], vec![(0, 1)], vec![]]).unwrap();
        assert_eq!(
            normalize_hard_case(&loose, 6.0).unwrap_err(),
            NormalizeError::NotNested { colour: Colour::Two, u: 0, v: 1 }
        );
        assert_eq!(normalize_hard_case(&loose, 5.0).unwrap_err(), NormalizeError::InvalidConstant(5.0));
    }

    #[test]
    fn bound_check_cases() {
        let n = 12;
        let empty = ColouringTemplate::empty(n);
        let p = MatchingPartition::of(&empty);
        assert!((empty.g_value() + 2.0 * binom2(n) as f64).abs() < 1e-9);
        assert_eq!(hard_case_bound_check(&empty, &p), Ok(true));
        let only1 = ColouringTemplate::from_fn(n, |_, _| ColourSet::of(&[Colour::One]));
        assert!((only1.g_value() + binom2(n) as f64).abs() < 1e-9);
        assert_eq!(hard_case_bound_check(&only1, &p), Ok(true));

        // V12 = {0,1}, D = the rest; colour 2 on every (V12, D) pair
        let bad = ColouringTemplate::from_fn(n, |u, v| {
            if u < 2 || v < 2 {
                ColourSet::of(&[Colour::One, Colour::Two])
            } else {
                ColourSet::of(&[Colour::One])
            }
        });
        let p = MatchingPartition {
            m12: vec![(0, 1)],
            m13: vec![],
            m23: vec![],
            v12: vec![0, 1],
            v13: vec![],
            v23: vec![],
            d: (2..n).collect(),
        };
        assert!(matches!(
            hard_case_bound_check(&bad, &p),
            Err(NormalizeError::StructureViolated(_))
        ));
    }

    #[test]
    fn csv_header_and_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = family(&mut rng, 16, 11, 4, 60);
        let (_, tr) = normalize_hard_case(&t, DEFAULT_C).unwrap();
        let csv = tr.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("step,action,edge,colour_from,colour_to,g_after"));
        assert_eq!(lines.count(), tr.records.len());
    }
}

//! Maximum matching in general graphs (Edmonds' blossom algorithm) and the
//! vertex partition induced by a maximum matching of bi-chromatic pairs.

use std::collections::VecDeque;

use super::{Colour, ColourSet, ColouringTemplate, Edge};

/// Maximum-cardinality matching of the graph given by sorted adjacency lists.
/// Returns `mate[v]`.
///
/// Deterministic: a greedy pass matches each vertex, in increasing order, to
/// its smallest free neighbour; augmenting searches then start from the
/// lowest free vertex and explore neighbours in increasing order.
pub fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut m = Blossom {
        adj,
        mate: vec![None; n],
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    for v in 0..n {
        if m.mate[v].is_none() {
            if let Some(&u) = adj[v].iter().find(|&&u| m.mate[u].is_none() && u != v) {
                m.mate[v] = Some(u);
                m.mate[u] = Some(v);
            }
        }
    }
    for root in 0..n {
        if m.mate[root].is_none() {
            if let Some(mut v) = m.find_path(root) {
                loop {
                    let pv = m.parent[v].expect("augmenting path is linked");
                    let ppv = m.mate[pv];
                    m.mate[v] = Some(pv);
                    m.mate[pv] = Some(v);
                    match ppv {
                        Some(next) => v = next,
                        None => break,
                    }
                }
            }
        }
    }
    m.mate
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("outer vertex has a parent"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("inner walk stays matched")]
                .expect("outer vertex has a parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let mv = self.mate[v].expect("blossom path is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mv]] = true;
            self.parent[v] = Some(child);
            child = mv;
            v = self.parent[mv].expect("blossom path is linked");
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer = to == root
                    || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }
}

/// A maximum matching of bi-chromatic pairs, split by colour pair, with the
/// vertex partition it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingPartition {
    pub m12: Vec<Edge>,
    pub m13: Vec<Edge>,
    pub m23: Vec<Edge>,
    pub v12: Vec<usize>,
    pub v13: Vec<usize>,
    pub v23: Vec<usize>,
    pub d: Vec<usize>,
}

impl MatchingPartition {
    pub(crate) fn of(t: &ColouringTemplate) -> MatchingPartition {
        let n = t.n();
        let mut adj = vec![Vec::new(); n];
        for ((u, v), _) in t.bichromatic_edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj.iter_mut().for_each(|l| l.sort_unstable());
        let mate = maximum_matching(&adj);
        let mut part = MatchingPartition {
            m12: Vec::new(),
            m13: Vec::new(),
            m23: Vec::new(),
            v12: Vec::new(),
            v13: Vec::new(),
            v23: Vec::new(),
            d: Vec::new(),
        };
        for u in 0..n {
            match mate[u] {
                None => part.d.push(u),
                Some(v) if u < v => {
                    let list = match label(t.colours(u, v)) {
                        (Colour::One, Colour::Two) => &mut part.m12,
                        (Colour::One, Colour::Three) => &mut part.m13,
                        _ => &mut part.m23,
                    };
                    list.push((u, v));
                }
                Some(_) => {}
            }
        }
        for (edges, verts) in [
            (&part.m12, &mut part.v12),
            (&part.m13, &mut part.v13),
            (&part.m23, &mut part.v23),
        ] {
            verts.extend(edges.iter().flat_map(|&(u, v)| [u, v]));
            verts.sort_unstable();
        }
        part
    }

    pub fn size(&self) -> usize {
        self.m12.len() + self.m13.len() + self.m23.len()
    }

    /// Matching edges with their colour-pair labels.
    pub fn labelled_edges(&self) -> impl Iterator<Item = (Edge, ColourSet)> + '_ {
        let l12 = ColourSet::of(&[Colour::One, Colour::Two]);
        let l13 = ColourSet::of(&[Colour::One, Colour::Three]);
        let l23 = ColourSet::of(&[Colour::Two, Colour::Three]);
        self.m12
            .iter()
            .map(move |&e| (e, l12))
            .chain(self.m13.iter().map(move |&e| (e, l13)))
            .chain(self.m23.iter().map(move |&e| (e, l23)))
    }
}

/// Colour-pair label of a bi-chromatic pair; rainbow pairs are labelled {1,2}.
fn label(s: ColourSet) -> (Colour, Colour) {
    if s.contains(Colour::One) && s.contains(Colour::Two) {
        (Colour::One, Colour::Two)
    } else if s.contains(Colour::One) {
        (Colour::One, Colour::Three)
    } else {
        (Colour::Two, Colour::Three)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute_force_max(n: usize, edges: &[Edge]) -> usize {
        fn go(i: usize, edges: &[Edge], used: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let mut best = go(i + 1, edges, used);
            let (u, v) = edges[i];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + go(i + 1, edges, used));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        go(0, edges, &mut vec![false; n])
    }

    fn check_valid(adj: &[Vec<usize>], mate: &[Option<usize>]) -> usize {
        let mut count = 0;
        for (v, m) in mate.iter().enumerate() {
            if let Some(u) = *m {
                assert_eq!(mate[u], Some(v));
                assert!(adj[v].contains(&u));
                count += 1;
            }
        }
        count / 2
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(0..=8);
            let p = rng.gen_range(0.1..0.9);
            let mut edges = Vec::new();
            let mut adj = vec![Vec::new(); n];
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                        adj[u].push(v);
                        adj[v].push(u);
                    }
                }
            }
            adj.iter_mut().for_each(|l| l.sort_unstable());
            let mate = maximum_matching(&adj);
            assert_eq!(check_valid(&adj, &mate), brute_force_max(n, &edges));
        }
    }

    #[test]
    fn odd_cycle_with_pendant_needs_blossom() {
        // 5-cycle 0..4 plus pendant 5 attached to 4; greedy leaves a gap
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (4, 5)];
        let mut adj = vec![Vec::new(); 6];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj.iter_mut().for_each(|l| l.sort_unstable());
        assert_eq!(check_valid(&adj, &maximum_matching(&adj)), 3);
    }

    #[test]
    fn path_partition() {
        let p = vec![(0, 1), (1, 2), (2, 3)];
        let t = ColouringTemplate::new(4, [p.clone(), p, vec![]]).unwrap();
        let part = t.max_bichromatic_matching();
        assert_eq!(part.m12, vec![(0, 1), (2, 3)]);
        assert!(part.d.is_empty());
        assert_eq!(part.v12, vec![0, 1, 2, 3]);
    }

    #[test]
    fn no_bichromatic_pairs_leaves_everything_in_d() {
        let t = ColouringTemplate::new(3, [vec![(0, 1)], vec![(1, 2)], vec![]]).unwrap();
        let part = t.max_bichromatic_matching();
        assert_eq!(part.size(), 0);
        assert_eq!(part.d, vec![0, 1, 2]);
    }

    #[test]
    fn rainbow_pair_is_labelled_one_two() {
        let t = ColouringTemplate::new(2, [vec![(0, 1)], vec![(0, 1)], vec![(0, 1)]]).unwrap();
        let part = t.max_bichromatic_matching();
        assert_eq!(part.m12, vec![(0, 1)]);
        assert!(part.m13.is_empty() && part.m23.is_empty());
    }
}

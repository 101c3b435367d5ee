//! Three-colour templates: three simple graphs on a shared vertex set.
//!
//! Every edge class is stored twice: as a sorted list of pairs `(u, v)` with
//! `u < v`, and as symmetric per-vertex adjacency bitsets. The bitsets drive
//! the triangle queries; the pair lists drive serialization and counting.

pub(crate) mod bitset;
mod io;
mod matching;

use std::fmt;

use thiserror::Error;

pub use io::{parse_template, read_template, to_canonical_json, write_template, FormatError};
pub use matching::{maximum_matching, MatchingPartition};

/// Largest vertex count a blow-up may produce unless a limit is given.
pub const DEFAULT_MAX_VERTICES: usize = 10_000;

/// An unordered vertex pair, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    One,
    Two,
    Three,
}

impl Colour {
    pub const ALL: [Colour; 3] = [Colour::One, Colour::Two, Colour::Three];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Colour> {
        Colour::ALL.get(i).copied()
    }

    /// The two colours different from `self`, in increasing order.
    pub fn others(self) -> [Colour; 2] {
        match self {
            Colour::One => [Colour::Two, Colour::Three],
            Colour::Two => [Colour::One, Colour::Three],
            Colour::Three => [Colour::One, Colour::Two],
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// A subset of the three colours, as a 3-bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSet(u8);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);
    pub const ALL: ColourSet = ColourSet(0b111);

    pub fn of(colours: &[Colour]) -> ColourSet {
        colours.iter().fold(ColourSet::EMPTY, |s, &c| s.with(c))
    }

    pub fn from_bits(bits: u8) -> ColourSet {
        ColourSet(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, c: Colour) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn with(self, c: Colour) -> ColourSet {
        ColourSet(self.0 | (1 << c.index()))
    }

    pub fn without(self, c: Colour) -> ColourSet {
        ColourSet(self.0 & !(1 << c.index()))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_bichromatic(self) -> bool {
        self.len() >= 2
    }

    pub fn is_rainbow(self) -> bool {
        self.0 == 0b111
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        Colour::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl fmt::Display for ColourSet {
    /// Digits of the member colours (`"13"`), or `-` for the empty set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for c in self.iter() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TemplateError {
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex} in class {class}")]
    SelfLoop { class: Colour, vertex: usize },
    #[error("duplicate pair ({u}, {v}) in class {class}")]
    DuplicatePair { class: Colour, u: usize, v: usize },
    #[error("blow-up factor must be at least 1")]
    ZeroBlowUp,
    #[error("result would have {vertices} vertices, above the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("f_n is undefined at negative argument {0}")]
    NegativeArgument(f64),
}

/// `C(n, 2)`.
#[inline]
pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Colour density vector `|G_i| / C(n, 2)`; all zeros when `n < 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityVector {
    pub counts: [usize; 3],
    pub pairs: usize,
    pub rho: [f64; 3],
}

impl DensityVector {
    pub fn from_counts(counts: [usize; 3], n: usize) -> DensityVector {
        let pairs = binom2(n);
        let rho = if pairs == 0 {
            [0.0; 3]
        } else {
            counts.map(|c| c as f64 / pairs as f64)
        };
        DensityVector { counts, pairs, rho }
    }
}

/// Three graphs on vertices `0..n`. Immutable once built.
#[derive(Clone, Debug)]
pub struct ColouringTemplate {
    n: usize,
    words: usize,
    edges: [Vec<Edge>; 3],
    adj: [Vec<u64>; 3],
}

impl PartialEq for ColouringTemplate {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for ColouringTemplate {}

impl ColouringTemplate {
    /// Builds a template from three edge lists. Pairs may be given in either
    /// orientation; they are stored as `(min, max)` and sorted.
    pub fn new(n: usize, classes: [Vec<Edge>; 3]) -> Result<Self, TemplateError> {
        let mut builder = Builder::new(n);
        for (colour, class) in Colour::ALL.into_iter().zip(classes.iter()) {
            for &(a, b) in class {
                for vertex in [a, b] {
                    if vertex >= n {
                        return Err(TemplateError::VertexOutOfRange { vertex, n });
                    }
                }
                if a == b {
                    return Err(TemplateError::SelfLoop { class: colour, vertex: a });
                }
                let (u, v) = (a.min(b), a.max(b));
                if builder.has(colour, u, v) {
                    return Err(TemplateError::DuplicatePair { class: colour, u, v });
                }
                builder.insert(colour, u, v);
            }
        }
        Ok(builder.finish())
    }

    pub fn empty(n: usize) -> Self {
        Builder::new(n).finish()
    }

    /// Builds a template by asking `colours(u, v)` for every pair `u < v`.
    pub fn from_fn(n: usize, mut colours: impl FnMut(usize, usize) -> ColourSet) -> Self {
        let mut builder = Builder::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                for c in colours(u, v).iter() {
                    builder.insert(c, u, v);
                }
            }
        }
        builder.finish()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self, c: Colour) -> &[Edge] {
        &self.edges[c.index()]
    }

    pub fn class_size(&self, c: Colour) -> usize {
        self.edges[c.index()].len()
    }

    pub fn class_sizes(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| self.edges[i].len())
    }

    /// Adjacency row of `v` in class `c`.
    pub fn row(&self, c: Colour, v: usize) -> &[u64] {
        let start = v * self.words;
        &self.adj[c.index()][start..start + self.words]
    }

    pub fn has_edge(&self, c: Colour, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && bitset::test(self.row(c, u), v)
    }

    /// The set of classes containing the pair `{u, v}`.
    pub fn colours(&self, u: usize, v: usize) -> ColourSet {
        Colour::ALL
            .into_iter()
            .filter(|&c| self.has_edge(c, u, v))
            .fold(ColourSet::EMPTY, ColourSet::with)
    }

    /// Candidate third vertices `w` such that `{u, v, w}` admits a rainbow
    /// assignment, as a bitset (not restricted to `w > v`).
    fn rainbow_apexes(&self, u: usize, v: usize, scratch: &mut [u64]) -> bool {
        scratch.iter_mut().for_each(|w| *w = 0);
        let on_uv = self.colours(u, v);
        let mut any = false;
        for a in on_uv.iter() {
            let [b, c] = a.others();
            for (x, y) in [(b, c), (c, b)] {
                let ru = self.row(x, u);
                let rv = self.row(y, v);
                for i in 0..self.words {
                    let w = ru[i] & rv[i];
                    scratch[i] |= w;
                    any |= w != 0;
                }
            }
        }
        any
    }

    /// Every vertex triple `[u, v, w]` (`u < v < w`) that admits a rainbow
    /// assignment, in lexicographic order.
    pub fn rainbow_triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        let mut scratch = vec![0u64; self.words];
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.rainbow_apexes(u, v, &mut scratch) {
                    continue;
                }
                for (i, word) in scratch.iter_mut().enumerate() {
                    *word &= bitset::above_mask(i, v);
                }
                out.extend(bitset::ones(&scratch).map(|w| [u, v, w]));
            }
        }
        out
    }

    /// True iff the template has no rainbow triangle.
    pub fn is_gallai(&self) -> bool {
        let mut scratch = vec![0u64; self.words];
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.rainbow_apexes(u, v, &mut scratch) {
                    return false;
                }
            }
        }
        true
    }

    /// Pairs present in all three classes.
    pub fn rainbow_edges(&self) -> Vec<Edge> {
        self.edges[0]
            .iter()
            .copied()
            .filter(|&(u, v)| self.colours(u, v).is_rainbow())
            .collect()
    }

    /// Pairs present in at least two classes, with their colour sets.
    pub fn bichromatic_edges(&self) -> Vec<(Edge, ColourSet)> {
        let mut out: Vec<(Edge, ColourSet)> = self.edges[0]
            .iter()
            .chain(self.edges[1].iter())
            .copied()
            .map(|(u, v)| ((u, v), self.colours(u, v)))
            .filter(|(_, s)| s.is_bichromatic())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn density_vector(&self) -> DensityVector {
        DensityVector::from_counts(self.class_sizes(), self.n)
    }

    /// Maximum matching in the graph of bi-chromatic pairs, split by colour pair.
    pub fn max_bichromatic_matching(&self) -> MatchingPartition {
        MatchingPartition::of(self)
    }

    /// Balanced blow-up: vertex `v` becomes `{k v, ..., k v + k - 1}`.
    pub fn blow_up(&self, k: usize) -> Result<Self, TemplateError> {
        self.blow_up_with_limit(k, DEFAULT_MAX_VERTICES)
    }

    pub fn blow_up_with_limit(&self, k: usize, limit: usize) -> Result<Self, TemplateError> {
        if k == 0 {
            return Err(TemplateError::ZeroBlowUp);
        }
        let vertices = self.n.saturating_mul(k);
        if vertices > limit {
            return Err(TemplateError::TooLarge { vertices, limit });
        }
        let mut builder = Builder::new(vertices);
        for c in Colour::ALL {
            for &(u, v) in self.class(c) {
                for i in 0..k {
                    for j in 0..k {
                        builder.insert(c, k * u + i, k * v + j);
                    }
                }
            }
        }
        Ok(builder.finish())
    }

    /// Subtemplate induced on `subset`, relabelled `0..|subset|` in increasing
    /// vertex order. Repeated vertices are ignored.
    pub fn induced(&self, subset: &[usize]) -> Result<Self, TemplateError> {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&vertex) = keep.iter().find(|&&v| v >= self.n) {
            return Err(TemplateError::VertexOutOfRange { vertex, n: self.n });
        }
        let mut builder = Builder::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                for c in self.colours(u, v).iter() {
                    builder.insert(c, i, j);
                }
            }
        }
        Ok(builder.finish())
    }

    /// The hard-case potential
    /// `|G1| + |G2| + |G3| - 2 C(N,2) - 2 m + 2 sqrt(C(N,2) m)` where the
    /// largest class (lowest index on ties) plays the role of `G1` and `m` is
    /// the larger of the other two.
    pub fn g_value(&self) -> f64 {
        g_from_sizes(self.class_sizes(), self.n)
    }

}

/// `g` evaluated from class sizes alone.
pub fn g_from_sizes(sizes: [usize; 3], n: usize) -> f64 {
    let largest = (0..3).fold(0, |best, i| if sizes[i] > sizes[best] { i } else { best });
    let m = (0..3)
        .filter(|&i| i != largest)
        .map(|i| sizes[i])
        .max()
        .unwrap_or(0) as f64;
    let pairs = binom2(n) as f64;
    let total: usize = sizes.iter().sum();
    total as f64 - 2.0 * pairs - 2.0 * m + 2.0 * (pairs * m).sqrt()
}

/// `f_n(x) = x - sqrt(x C(n, 2))`.
pub fn f_value(n: usize, x: f64) -> Result<f64, TemplateError> {
    if x < 0.0 || x.is_nan() {
        return Err(TemplateError::NegativeArgument(x));
    }
    Ok(x - (x * binom2(n) as f64).sqrt())
}

/// Mutable bitset accumulator; `finish` extracts sorted pair lists.
#[derive(Clone)]
pub(crate) struct Builder {
    n: usize,
    words: usize,
    adj: [Vec<u64>; 3],
}

impl Builder {
    pub(crate) fn new(n: usize) -> Builder {
        let words = bitset::words_for(n);
        Builder {
            n,
            words,
            adj: std::array::from_fn(|_| vec![0u64; n * words]),
        }
    }

    fn row_mut(&mut self, c: Colour, v: usize) -> &mut [u64] {
        let start = v * self.words;
        &mut self.adj[c.index()][start..start + self.words]
    }

    pub(crate) fn row(&self, c: Colour, v: usize) -> &[u64] {
        let start = v * self.words;
        &self.adj[c.index()][start..start + self.words]
    }

    pub(crate) fn has(&self, c: Colour, u: usize, v: usize) -> bool {
        bitset::test(self.row(c, u), v)
    }

    pub(crate) fn colours(&self, u: usize, v: usize) -> ColourSet {
        Colour::ALL
            .into_iter()
            .filter(|&c| self.has(c, u, v))
            .fold(ColourSet::EMPTY, ColourSet::with)
    }

    pub(crate) fn insert(&mut self, c: Colour, u: usize, v: usize) {
        bitset::set(self.row_mut(c, u), v);
        bitset::set(self.row_mut(c, v), u);
    }

    pub(crate) fn remove(&mut self, c: Colour, u: usize, v: usize) {
        bitset::clear(self.row_mut(c, u), v);
        bitset::clear(self.row_mut(c, v), u);
    }

    pub(crate) fn finish(self) -> ColouringTemplate {
        let Builder { n, words, adj } = self;
        let edges = std::array::from_fn(|c| {
            let mut list = Vec::new();
            for u in 0..n {
                let row = &adj[c][u * words..(u + 1) * words];
                for (i, &word) in row.iter().enumerate() {
                    let w = word & bitset::above_mask(i, u);
                    if w != 0 {
                        list.extend(bitset::ones(&[w]).map(|b| (u, i * 64 + b)));
                    }
                }
            }
            list
        });
        ColouringTemplate { n, words, edges, adj }
    }
}

impl From<&ColouringTemplate> for Builder {
    fn from(t: &ColouringTemplate) -> Builder {
        Builder {
            n: t.n,
            words: t.words,
            adj: t.adj.clone(),
        }
    }
}

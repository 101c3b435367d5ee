//! The extremal templates F(a, b, c) and H(a, b, c) and witnesses built from
//! them.
//!
//! Parts are contiguous: A = 0..a, B = a..a+b, C = a+b..n.

use std::fmt;

use thiserror::Error;

use crate::boundary::{self, BoundaryError, RegionLabel};
use crate::template::{binom2, Colour, ColourSet, ColouringTemplate};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("densities must be non-negative, got ({0}, {1}, {2})")]
    Negative(f64, f64, f64),
    #[error("densities must sum to 1, got sum {0}")]
    BadSum(f64),
    #[error("expected alpha1 >= alpha2 >= alpha3 in [0, 1], got ({0}, {1}, {2})")]
    Ordering(f64, f64, f64),
    #[error("no non-forcing case applies to ({0}, {1}, {2})")]
    NoCaseApplies(f64, f64, f64),
    #[error("n = {0} is too small for this construction")]
    TooSmall(usize),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    F,
    H,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::F => "F",
            Kind::H => "H",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstructionParams {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl ConstructionParams {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        ConstructionParams { a, b, c }
    }

    pub fn n(&self) -> usize {
        self.a + self.b + self.c
    }

    /// 0 for A, 1 for B, 2 for C.
    fn part(&self, v: usize) -> u8 {
        if v < self.a {
            0
        } else if v < self.a + self.b {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for ConstructionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

const C1: u8 = 0b001;
const C2: u8 = 0b010;
const C3: u8 = 0b100;

pub fn build_f(p: ConstructionParams) -> ColouringTemplate {
    ColouringTemplate::from_fn(p.n(), |u, v| {
        let bits = match (p.part(u), p.part(v)) {
            (0, 0) => C1 | C2,
            (1, 1) => C1 | C3,
            (2, 2) => C2 | C3,
            _ => C3,
        };
        ColourSet::from_bits(bits)
    })
}

pub fn build_h(p: ConstructionParams) -> ColouringTemplate {
    ColouringTemplate::from_fn(p.n(), |u, v| {
        let bits = match (p.part(u), p.part(v)) {
            (0, 0) => C1 | C2,
            (0, 1) => C3,
            (0, 2) => C1,
            _ => C1 | C3,
        };
        ColourSet::from_bits(bits)
    })
}

pub fn build(kind: Kind, p: ConstructionParams) -> ColouringTemplate {
    match kind {
        Kind::F => build_f(p),
        Kind::H => build_h(p),
    }
}

/// Class sizes of F(a, b, c) in closed form.
pub fn f_counts(p: ConstructionParams) -> [usize; 3] {
    let ConstructionParams { a, b, c } = p;
    [
        binom2(a) + binom2(b),
        binom2(a) + binom2(c),
        binom2(p.n()) - binom2(a),
    ]
}

/// Class sizes of H(a, b, c) in closed form.
pub fn h_counts(p: ConstructionParams) -> [usize; 3] {
    let ConstructionParams { a, b, c } = p;
    [
        binom2(a) + binom2(b + c) + a * c,
        binom2(a),
        binom2(b + c) + a * b,
    ]
}

pub fn counts(kind: Kind, p: ConstructionParams) -> [usize; 3] {
    match kind {
        Kind::F => f_counts(p),
        Kind::H => h_counts(p),
    }
}

/// Limiting density vector of the construction with part proportions
/// (x, y, z).
pub fn predicted_density(kind: Kind, x: f64, y: f64, z: f64) -> Result<[f64; 3], ConstructionError> {
    if x < 0.0 || y < 0.0 || z < 0.0 {
        return Err(ConstructionError::Negative(x, y, z));
    }
    let sum = x + y + z;
    if (sum - 1.0).abs() > 1e-12 {
        return Err(ConstructionError::BadSum(sum));
    }
    Ok(match kind {
        Kind::F => [x * x + y * y, x * x + z * z, 1.0 - x * x],
        Kind::H => [
            1.0 - 2.0 * x * y,
            x * x,
            (1.0 - x) * (1.0 - x) + 2.0 * x * y,
        ],
    })
}

/// Parameters (⌊xn⌋, ⌊yn⌋, rest), guarding against `x n` landing a hair
/// below an integer.
pub fn params_from_proportions(x: f64, y: f64, n: usize) -> ConstructionParams {
    let floor = |t: f64| ((t * n as f64 + 1e-9).floor().max(0.0) as usize).min(n);
    let a = floor(x);
    let b = floor(y).min(n - a);
    ConstructionParams::new(a, b, n - a - b)
}

/// True when the class sizes, sorted descending, beat the sorted targets in
/// every coordinate: `count > min(α n² / 2, C(n, 2) − 1)`.
pub fn dominates(sizes: [usize; 3], n: usize, alphas: [f64; 3]) -> bool {
    let mut s = sizes;
    s.sort_unstable_by(|a, b| b.cmp(a));
    let mut t = alphas;
    t.sort_unstable_by(|a, b| b.total_cmp(a));
    let cap = binom2(n) as f64 - 1.0;
    s.iter()
        .zip(t.iter())
        .all(|(&count, &alpha)| count as f64 > (alpha * (n * n) as f64 / 2.0).min(cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonForcingCase {
    A,
    B,
    C,
    D,
}

impl fmt::Display for NonForcingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonForcingCase::A => "a",
            NonForcingCase::B => "b",
            NonForcingCase::C => "c",
            NonForcingCase::D => "d",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NonForcingWitness {
    pub case: NonForcingCase,
    pub params: ConstructionParams,
    pub epsilon: Option<f64>,
    pub template: ColouringTemplate,
    /// Whether this template's class sizes already dominate the triple.
    pub dominates: bool,
}

/// Largest ε = 2^−k, k = 3..=30, passing `ok`.
fn pick_epsilon(ok: impl Fn(f64) -> bool) -> Option<f64> {
    (3..=30).map(|k| 2f64.powi(-k)).find(|&e| ok(e))
}

fn ceil_n(t: f64, n: usize) -> usize {
    ((t * n as f64 - 1e-9).ceil().max(0.0) as usize).min(n)
}

/// Case and F-parameters for a non-forcing triple, without building the
/// template.
pub fn non_forcing_params(
    alpha1: f64,
    alpha2: f64,
    alpha3: f64,
    n: usize,
) -> Result<(NonForcingCase, ConstructionParams, Option<f64>), ConstructionError> {
    let in_unit = |a: f64| (0.0..=1.0).contains(&a);
    if !(in_unit(alpha1) && in_unit(alpha2) && in_unit(alpha3) && alpha1 >= alpha2 && alpha2 >= alpha3) {
        return Err(ConstructionError::Ordering(alpha1, alpha2, alpha3));
    }
    if alpha1 < boundary::tau_threshold() {
        let side = ceil_n(boundary::tau(), n);
        if 2 * side > n {
            return Err(ConstructionError::TooSmall(n));
        }
        return Ok((NonForcingCase::A, ConstructionParams::new(n - 2 * side, side, side), None));
    }
    if alpha2 < 0.25 {
        let b = n.div_ceil(2);
        return Ok((NonForcingCase::B, ConstructionParams::new(0, b, n - b), None));
    }
    if alpha1 + alpha2 < 1.0 {
        if let Some(eps) = pick_epsilon(|e| 1.0 - alpha2 - 4.0 * e > alpha1) {
            let a = ceil_n((alpha2 + 2.0 * eps).sqrt(), n);
            return Ok((NonForcingCase::C, ConstructionParams::new(a, n - a, 0), Some(eps)));
        }
    }
    if let Ok(rep) = boundary::canonical_representation(alpha1, alpha2) {
        if rep.r1prime_margin() < 1.0 {
            let (x, y) = (rep.x, rep.y);
            if let Some(eps) = pick_epsilon(|e| e < y && alpha2 + e * e < 1.0 - (x + e) * (x + e)) {
                let nf = n as f64;
                let a = (((x + eps) * nf).floor() as usize).min(n);
                let b = (((y - eps) * nf).floor().max(0.0) as usize).min(n - a);
                return Ok((NonForcingCase::D, ConstructionParams::new(a, b, n - a - b), Some(eps)));
            }
        }
    }
    Err(ConstructionError::NoCaseApplies(alpha1, alpha2, alpha3))
}

/// An F-template showing that the triple is not forcing, for the first of
/// the four trivial cases that applies.
pub fn witness_non_forcing(
    alpha1: f64,
    alpha2: f64,
    alpha3: f64,
    n: usize,
) -> Result<NonForcingWitness, ConstructionError> {
    let (case, params, epsilon) = non_forcing_params(alpha1, alpha2, alpha3, n)?;
    let template = build_f(params);
    let dominates = dominates(template.class_sizes(), n, [alpha1, alpha2, alpha3]);
    Ok(NonForcingWitness { case, params, epsilon, template, dominates })
}

/// Smallest n among 8, 16, 32, … ≤ `max_n` at which the witness dominates
/// the triple, using the closed-form counts.
pub fn dominance_threshold(alpha1: f64, alpha2: f64, alpha3: f64, max_n: usize) -> Option<usize> {
    let mut n = 8;
    while n <= max_n {
        if let Ok((_, p, _)) = non_forcing_params(alpha1, alpha2, alpha3, n) {
            if dominates(f_counts(p), n, [alpha1, alpha2, alpha3]) {
                return Some(n);
            }
        }
        n *= 2;
    }
    None
}

#[derive(Clone, Debug)]
pub struct TheoremWitness {
    pub kind: Kind,
    pub params: ConstructionParams,
    pub template: ColouringTemplate,
    pub alphas: [f64; 3],
    /// max over i of (α_i C(n,2) − |G_i|) / n.
    pub deficit_constant: f64,
}

/// The extremal template for a pair in R'1 (F) or R2 (H).
pub fn theorem_witness(alpha1: f64, alpha2: f64, n: usize) -> Result<TheoremWitness, ConstructionError> {
    let class = boundary::classify(alpha1, alpha2)?;
    let alpha3 = class
        .alpha3()
        .ok_or(BoundaryError::OutsideRegions { alpha1, alpha2 })?;
    let (kind, params) = match class.label {
        RegionLabel::R1Prime => {
            let rep = class.canonical.expect("R'1 pairs carry a canonical representation");
            (Kind::F, params_from_proportions(rep.x, rep.y, n))
        }
        _ => {
            let s = alpha2.sqrt();
            (Kind::H, params_from_proportions(s, (1.0 - alpha1) / (2.0 * s), n))
        }
    };
    let template = build(kind, params);
    let alphas = [alpha1, alpha2, alpha3];
    let deficit_constant = deficit_constant(template.class_sizes(), n, alphas);
    Ok(TheoremWitness { kind, params, template, alphas, deficit_constant })
}

pub fn deficit_constant(sizes: [usize; 3], n: usize, alphas: [f64; 3]) -> f64 {
    let pairs = binom2(n) as f64;
    (0..3)
        .map(|i| (alphas[i] * pairs - sizes[i] as f64) / n.max(1) as f64)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The colour classes of each construction as explicit pair predicates, for
/// cross-checking the builders.
pub fn in_class(kind: Kind, p: ConstructionParams, c: Colour, u: usize, v: usize) -> bool {
    let (pu, pv) = (p.part(u.min(v)), p.part(u.max(v)));
    let in_a = |x: u8| x == 0;
    let both = |x: u8| pu == x && pv == x;
    match (kind, c) {
        (Kind::F, Colour::One) => both(0) || both(1),
        (Kind::F, Colour::Two) => both(0) || both(2),
        (Kind::F, Colour::Three) => !both(0),
        (Kind::H, Colour::One) => both(0) || (!in_a(pu) && !in_a(pv)) || (pu == 0 && pv == 2),
        (Kind::H, Colour::Two) => both(0),
        (Kind::H, Colour::Three) => (!in_a(pu) && !in_a(pv)) || (pu == 0 && pv == 1),
    }
}

//! The forcing-density boundary: the constants τ and υ, the function h, the
//! canonical representation of a density pair, and the regions R1, R'1, R2.

use rayon::prelude::*;
use thiserror::Error;

/// Closed-region membership tolerance.
pub const REGION_TOL: f64 = 1e-12;

const MAX_BISECTION_STEPS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundaryError {
    #[error("{0} is outside the domain [0, 1]")]
    Domain(f64),
    #[error("({alpha1}, {alpha2}) does not satisfy the canonical-representation preconditions")]
    Precondition { alpha1: f64, alpha2: f64 },
    #[error("bisection did not converge for ({alpha1}, {alpha2}); residual {residual:e}")]
    NonConvergence { alpha1: f64, alpha2: f64, residual: f64 },
    #[error("alpha2 = {alpha2} exceeds alpha1 = {alpha1}")]
    Ordering { alpha1: f64, alpha2: f64 },
    #[error("({alpha1}, {alpha2}) lies in neither R'1 nor R2")]
    OutsideRegions { alpha1: f64, alpha2: f64 },
}

/// τ = (4 − √7) / 9.
pub fn tau() -> f64 {
    (4.0 - 7f64.sqrt()) / 9.0
}

/// (1 + τ²) / 2 = (52 − 4√7) / 81.
pub fn tau_threshold() -> f64 {
    (1.0 + tau() * tau()) / 2.0
}

fn check_unit(x: f64) -> Result<f64, BoundaryError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(BoundaryError::Domain(x))
    }
}

/// h(x) = (x² + (1 − x)²) x² (1 − x²).
pub fn h(x: f64) -> Result<f64, BoundaryError> {
    let x = check_unit(x)?;
    Ok(h_unchecked(x))
}

fn h_unchecked(x: f64) -> f64 {
    (x * x + (1.0 - x) * (1.0 - x)) * x * x * (1.0 - x * x)
}

pub fn h_derivative(x: f64) -> f64 {
    let p = x * x + (1.0 - x) * (1.0 - x);
    let q = x * x * (1.0 - x * x);
    (4.0 * x - 2.0) * q + p * (2.0 * x - 4.0 * x * x * x)
}

/// Argmax of h on [0, 1], found by bisecting h' on [1/2, 1] where it changes
/// sign exactly once.
pub fn upsilon() -> f64 {
    let (mut lo, mut hi) = (0.5, 1.0);
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h_derivative(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn h_upsilon() -> f64 {
    h_unchecked(upsilon())
}

/// The triple (x, y, z), x + y + z = 1, x ≥ 1/2, with α1 = x² + y² and
/// α2 = x² + z².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalRep {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub residual_1: f64,
    pub residual_2: f64,
}

impl CanonicalRep {
    pub fn alpha1(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn alpha2(&self) -> f64 {
        self.x * self.x + self.z * self.z
    }

    pub fn alpha3(&self) -> f64 {
        1.0 - self.x * self.x
    }

    /// 2x² + z², compared against 1 by the R'1 test.
    pub fn r1prime_margin(&self) -> f64 {
        2.0 * self.x * self.x + self.z * self.z
    }
}

/// Lower end of the good-pair range for α2: (α1 + √(2α1 − 1)) / 2.
pub fn alpha2_lower(alpha1: f64) -> f64 {
    (alpha1 + (2.0 * alpha1 - 1.0).max(0.0).sqrt()) / 2.0
}

fn canonical_bracket(alpha1: f64) -> (f64, f64) {
    let x0 = (1.0 + (2.0 * alpha1 - 1.0).max(0.0).sqrt()) / 2.0;
    let x1 = (1.0 + 2.0 * (5.0 * alpha1 - 1.0).max(0.0).sqrt()) / 5.0;
    (x0, x1.max(x0))
}

fn canonical_parts(alpha1: f64, x: f64) -> (f64, f64) {
    let y = (alpha1 - x * x).max(0.0).sqrt();
    (y, 1.0 - x - y)
}

/// φ(x) = x² + z(x)² − α2; nonpositive at the left end of the bracket and
/// nonnegative at the right end.
fn phi(alpha1: f64, alpha2: f64, x: f64) -> f64 {
    let (_, z) = canonical_parts(alpha1, x);
    x * x + z * z - alpha2
}

/// Solves for the canonical representation by bisection on
/// [(1 + √(2α1 − 1))/2, (1 + 2√(5α1 − 1))/5].
pub fn canonical_representation(alpha1: f64, alpha2: f64) -> Result<CanonicalRep, BoundaryError> {
    let ok = alpha1 <= 1.0 + REGION_TOL
        && alpha1 >= 0.5 - REGION_TOL
        && alpha2 <= alpha1 + REGION_TOL
        && alpha2 >= alpha2_lower(alpha1) - REGION_TOL;
    if !ok || alpha1.is_nan() || alpha2.is_nan() {
        return Err(BoundaryError::Precondition { alpha1, alpha2 });
    }
    let alpha1 = alpha1.min(1.0);
    let (mut lo, mut hi) = canonical_bracket(alpha1);
    let (f_lo, f_hi) = (phi(alpha1, alpha2, lo), phi(alpha1, alpha2, hi));
    let x = if f_lo >= 0.0 {
        lo
    } else if f_hi <= 0.0 {
        hi
    } else {
        for _ in 0..MAX_BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if phi(alpha1, alpha2, mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let (y, z) = canonical_parts(alpha1, x);
    let rep = CanonicalRep {
        x,
        y,
        z,
        residual_1: (x * x + y * y - alpha1).abs(),
        residual_2: (x * x + z * z - alpha2).abs(),
    };
    if rep.residual_1 > 1e-10 || rep.residual_2 > 1e-10 || !rep.residual_2.is_finite() {
        return Err(BoundaryError::NonConvergence { alpha1, alpha2, residual: rep.residual_2 });
    }
    Ok(rep)
}

/// Number of sign changes of φ over `samples` evenly spaced points of the
/// bisection bracket. A unique root shows at most one change.
pub fn canonical_sign_changes(alpha1: f64, alpha2: f64, samples: usize) -> usize {
    let (x0, x1) = canonical_bracket(alpha1);
    let mut changes = 0;
    let mut prev: Option<f64> = None;
    for i in 0..samples {
        let t = if samples > 1 { i as f64 / (samples - 1) as f64 } else { 0.0 };
        let v = phi(alpha1, alpha2, x0 + t * (x1 - x0));
        if v.abs() <= 1e-14 {
            continue;
        }
        if let Some(p) = prev {
            if (p < 0.0) != (v < 0.0) {
                changes += 1;
            }
        }
        prev = Some(v);
    }
    changes
}

/// Good-pair test; returns the canonical representation when it exists.
pub fn is_good_pair(alpha1: f64, alpha2: f64) -> (bool, Option<CanonicalRep>) {
    let alpha1_ok = alpha1 + REGION_TOL >= alpha2.max(1.0 - alpha2).max(tau_threshold());
    if !alpha1_ok || alpha1 > 1.0 + REGION_TOL {
        return (false, None);
    }
    let alpha2_ok = alpha2 + REGION_TOL >= alpha2_lower(alpha1).max(0.25);
    let rep = canonical_representation(alpha1, alpha2).ok();
    let good = alpha2_ok && rep.is_some_and(|r| r.r1prime_margin() >= 1.0 - REGION_TOL);
    (good, rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionLabel {
    R1Prime,
    R1MinusR1Prime,
    R2,
    Outside,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::R1Prime => "R1prime",
            RegionLabel::R1MinusR1Prime => "R1_minus_R1prime",
            RegionLabel::R2 => "R2",
            RegionLabel::Outside => "outside",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionClassification {
    pub label: RegionLabel,
    /// In both R'1 and R2 (the curve α1 = 1 − 2√α2 + 2α2, α2 ≥ 1/2).
    pub on_shared_curve: bool,
    pub alpha3_r1: Option<f64>,
    pub alpha3_r2: Option<f64>,
    pub canonical: Option<CanonicalRep>,
}

impl RegionClassification {
    /// Forcing α3; the R'1 formula is used on the shared curve.
    pub fn alpha3(&self) -> Option<f64> {
        self.alpha3_r1.or(self.alpha3_r2)
    }
}

/// 1 − 2√α2 + 2α2, the upper edge of R1 and lower edge of R2.
pub fn shared_curve(alpha2: f64) -> f64 {
    1.0 - 2.0 * alpha2.sqrt() + 2.0 * alpha2
}

pub fn in_r1(alpha1: f64, alpha2: f64) -> bool {
    let lower = (1.0 - alpha2).max(tau_threshold()).max(alpha2);
    lower <= alpha1 + REGION_TOL && alpha1 <= shared_curve(alpha2) + REGION_TOL
}

pub fn in_r2(alpha1: f64, alpha2: f64) -> bool {
    let s = alpha2.sqrt();
    alpha1 + REGION_TOL >= (2.0 - 2.0 * s).max(shared_curve(alpha2))
}

pub fn classify(alpha1: f64, alpha2: f64) -> Result<RegionClassification, BoundaryError> {
    check_unit(alpha1)?;
    check_unit(alpha2)?;
    if alpha2 > alpha1 {
        return Err(BoundaryError::Ordering { alpha1, alpha2 });
    }
    let canonical = if in_r1(alpha1, alpha2) {
        canonical_representation(alpha1, alpha2).ok()
    } else {
        None
    };
    let r1prime = canonical.is_some_and(|r| r.r1prime_margin() >= 1.0 - REGION_TOL);
    let r2 = in_r2(alpha1, alpha2);
    let label = match (r1prime, r2, canonical.is_some()) {
        (true, _, _) => RegionLabel::R1Prime,
        (false, true, _) => RegionLabel::R2,
        (false, false, true) => RegionLabel::R1MinusR1Prime,
        _ => RegionLabel::Outside,
    };
    Ok(RegionClassification {
        label,
        on_shared_curve: r1prime && r2,
        alpha3_r1: canonical.filter(|_| r1prime).map(|r| r.alpha3()),
        alpha3_r2: r2.then(|| 2.0 - alpha1 - 2.0 * alpha2.sqrt() + alpha2),
        canonical,
    })
}

pub fn forcing_alpha3(alpha1: f64, alpha2: f64) -> Result<f64, BoundaryError> {
    classify(alpha1, alpha2)?
        .alpha3()
        .ok_or(BoundaryError::OutsideRegions { alpha1, alpha2 })
}

/// f_H(x, y) = (1 − 2xy) x² ((1 − x)² + 2xy).
pub fn f_h(x: f64, y: f64) -> f64 {
    (1.0 - 2.0 * x * y) * x * x * ((1.0 - x) * (1.0 - x) + 2.0 * x * y)
}

/// f_F(x, y) = (x² + y²)(x² + (1 − x − y)²)(1 − x²).
pub fn f_f(x: f64, y: f64) -> f64 {
    let z = 1.0 - x - y;
    (x * x + y * y) * (x * x + z * z) * (1.0 - x * x)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub value: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorollaryMaxima {
    pub f_h: Maximum,
    pub f_f: Maximum,
}

/// Maximizes `f(u, t)` over the unit square: a coarse grid followed by
/// repeatedly shrinking a clipped search box around the incumbent.
fn maximize_unit_square(f: impl Fn(f64, f64) -> f64 + Sync) -> (f64, f64, f64) {
    const COARSE: usize = 400;
    const FINE: usize = 20;
    let best = (0..=COARSE)
        .into_par_iter()
        .map(|i| {
            let u = i as f64 / COARSE as f64;
            (0..=COARSE)
                .map(|j| {
                    let t = j as f64 / COARSE as f64;
                    (f(u, t), u, t)
                })
                .fold((f64::NEG_INFINITY, 0.0, 0.0), pick_max)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((f64::NEG_INFINITY, 0.0, 0.0), pick_max);
    let (mut value, mut u, mut t) = best;
    let mut half = 2.0 / COARSE as f64;
    for _ in 0..80 {
        let (u_lo, u_hi) = ((u - half).max(0.0), (u + half).min(1.0));
        let (t_lo, t_hi) = ((t - half).max(0.0), (t + half).min(1.0));
        for i in 0..=FINE {
            let uu = u_lo + (u_hi - u_lo) * i as f64 / FINE as f64;
            for j in 0..=FINE {
                let tt = t_lo + (t_hi - t_lo) * j as f64 / FINE as f64;
                let v = f(uu, tt);
                if v > value {
                    (value, u, t) = (v, uu, tt);
                }
            }
        }
        half *= 0.5;
    }
    (value, u, t)
}

fn pick_max(a: (f64, f64, f64), b: (f64, f64, f64)) -> (f64, f64, f64) {
    if b.0 > a.0 {
        b
    } else {
        a
    }
}

/// Maxima of f_H over the simplex {x, y ≥ 0, x + y ≤ 1} and of f_F over
/// {x ≥ 1/2, (1 − x)/2 ≤ y ≤ 1 − x}.
pub fn corollary_maxima() -> CorollaryMaxima {
    let (value, u, t) = maximize_unit_square(|u, t| f_h(u, t * (1.0 - u)));
    let f_h_max = Maximum { value, x: u, y: t * (1.0 - u) };
    let to_f = |u: f64, t: f64| {
        let x = 0.5 + 0.5 * u;
        (x, (1.0 - x) * (1.0 + t) / 2.0)
    };
    let (value, u, t) = maximize_unit_square(|u, t| {
        let (x, y) = to_f(u, t);
        f_f(x, y)
    });
    let (x, y) = to_f(u, t);
    CorollaryMaxima { f_h: f_h_max, f_f: Maximum { value, x, y } }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRow {
    pub alpha1: f64,
    pub alpha2: f64,
    pub label: GridLabel,
    pub alpha3: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridLabel {
    Region(RegionLabel),
    /// In both R'1 and R2.
    Shared,
    /// α2 > α1.
    Invalid,
}

impl GridLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            GridLabel::Region(r) => r.as_str(),
            GridLabel::Shared => "R1prime_R2",
            GridLabel::Invalid => "invalid",
        }
    }
}

/// Classification of the uniform `resolution × resolution` grid on [0, 1]²,
/// α1 varying slowest.
pub fn boundary_grid(resolution: usize) -> Vec<GridRow> {
    let r = resolution.max(2);
    let coord = |i: usize| i as f64 / (r - 1) as f64;
    (0..r)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..r).map(move |j| {
                let (alpha1, alpha2) = (coord(i), coord(j));
                match classify(alpha1, alpha2) {
                    Ok(c) => GridRow {
                        alpha1,
                        alpha2,
                        label: if c.on_shared_curve {
                            GridLabel::Shared
                        } else {
                            GridLabel::Region(c.label)
                        },
                        alpha3: c.alpha3(),
                    },
                    Err(_) => GridRow { alpha1, alpha2, label: GridLabel::Invalid, alpha3: None },
                }
            })
        })
        .collect()
}

//! Numeric certification: the Lipschitz-grid lower bound for k(d), the
//! derivative-bound chain behind it, the easy-case inequality system and a
//! grid search for profiles satisfying it.

use rayon::prelude::*;
use thiserror::Error;

use crate::boundary::{self, CanonicalRep};

/// Lipschitz constant used for the k(d) certificate (the derivative bound
/// rounded up).
pub const APPENDIX_LIPSCHITZ: f64 = 200.0;
pub const APPENDIX_GRID: usize = 8000;

/// Margin by which a left-hand side must exceed its right-hand side to count
/// as a strict inequality.
pub const STRICT_MARGIN: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifierError {
    #[error("d = {0} is outside [0, 1] or makes a radicand non-positive")]
    Domain(f64),
    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("function value at x = {x} is not finite ({value})")]
    NonFinite { x: f64, value: f64 },
    #[error("certification failed: certified lower bound {0}")]
    CertificationFailed(f64),
    #[error("({alpha1}, {alpha2}) is not a good pair")]
    NotGoodPair { alpha1: f64, alpha2: f64 },
    #[error("sum-of-squares precondition violated for (b0, c0, s) = ({0}, {1}, {2})")]
    SumOfSquaresPrecondition(f64, f64, f64),
    #[error("step must be positive and at most 1, got {0}")]
    BadStep(f64),
}

struct KParts {
    /// √(d² + 4τ²)
    r_tau: f64,
    /// √(d² + (1 − 2τ)²)
    r_c: f64,
    /// 4d r_c − 3d² + 16τ²
    radicand: f64,
    /// 4d²/r_c + 4 r_c − 6d
    num: f64,
}

fn k_parts(d: f64) -> Result<KParts, VerifierError> {
    if !(0.0..=1.0).contains(&d) {
        return Err(VerifierError::Domain(d));
    }
    let t = boundary::tau();
    let c = 1.0 - 2.0 * t;
    let r_tau = (d * d + 4.0 * t * t).sqrt();
    let r_c = (d * d + c * c).sqrt();
    let radicand = 4.0 * d * r_c - 3.0 * d * d + 16.0 * t * t;
    if radicand <= 0.0 {
        return Err(VerifierError::Domain(d));
    }
    let num = 4.0 * d * d / r_c + 4.0 * r_c - 6.0 * d;
    Ok(KParts { r_tau, r_c, radicand, num })
}

/// k(d) = d / (2√(d² + 4τ²)) + (4d²/r + 4r − 6d) / (4√(4dr − 3d² + 16τ²)) + d/r − 1,
/// where r = √(d² + (1 − 2τ)²).
pub fn k_of_d(d: f64) -> Result<f64, VerifierError> {
    let p = k_parts(d)?;
    Ok(d / (2.0 * p.r_tau) + p.num / (4.0 * p.radicand.sqrt()) + d / p.r_c - 1.0)
}

pub fn k_derivative(d: f64) -> Result<f64, VerifierError> {
    let p = k_parts(d)?;
    let t = boundary::tau();
    let r3 = p.r_c.powi(3);
    let term1 = -d * d / (2.0 * (d * d + 4.0 * t * t).powf(1.5)) + 1.0 / (2.0 * p.r_tau);
    let term2 = (-4.0 * d.powi(3) / r3 + 12.0 * d / p.r_c - 6.0) / (4.0 * p.radicand.sqrt());
    let term3 = -p.num * p.num / (8.0 * p.radicand.powf(1.5));
    let term4 = -d * d / r3 + 1.0 / p.r_c;
    Ok(term1 + term2 + term3 + term4)
}

/// The successive majorants of |k'(d)|: the term-wise modulus bound, then
/// with d = 1 substituted in increasing numerators, then d = 0 in
/// decreasing denominators, then the radicand bounded below by 16τ².
pub fn derivative_bound_stages(d: f64) -> [f64; 4] {
    let t = boundary::tau();
    let c = 1.0 - 2.0 * t;
    let r_c = (d * d + c * c).sqrt();
    let rc3 = r_c.powi(3);
    let q = d * d + 4.0 * t * t;
    let radicand = 4.0 * d * r_c - 3.0 * d * d + 16.0 * t * t;
    let s1 = d * d / (2.0 * q.powf(1.5))
        + 1.0 / (2.0 * q.sqrt())
        + (4.0 * d.powi(3) / rc3 + 12.0 * d / r_c + 6.0) / (4.0 * radicand.sqrt())
        + (4.0 * d * d / r_c + 4.0 * r_c + 6.0 * d).powi(2) / (8.0 * radicand.powf(1.5))
        + d * d / rc3
        + 1.0 / r_c;
    let big = 4.0 * (c * c + 1.0).sqrt();
    let s2 = (4.0 / r_c + big + 6.0).powi(2) / (8.0 * radicand.powf(1.5))
        + 1.0 / (2.0 * q.sqrt())
        + (12.0 / r_c + 4.0 / rc3 + 6.0) / (4.0 * radicand.sqrt())
        + 1.0 / (2.0 * q.powf(1.5))
        + 1.0 / r_c
        + 1.0 / rc3;
    let tail = 1.0 / (4.0 * t) + 1.0 / (16.0 * t.powi(3)) + 1.0 / c + 1.0 / c.powi(3);
    let s3 = (big + 4.0 / c + 6.0).powi(2) / (8.0 * radicand.powf(1.5))
        + (12.0 / c + 4.0 / c.powi(3) + 6.0) / (4.0 * radicand.sqrt())
        + tail;
    [s1, s2, s3, derivative_bound_constant()]
}

/// The last stage of the chain, evaluated directly from τ.
pub fn derivative_bound_constant() -> f64 {
    let t = boundary::tau();
    let c = 1.0 - 2.0 * t;
    (4.0 * (c * c + 1.0).sqrt() + 4.0 / c + 6.0).powi(2) / (512.0 * t.powi(3))
        + (12.0 / c + 4.0 / c.powi(3) + 6.0) / (16.0 * t)
        + 1.0 / (4.0 * t)
        + 1.0 / (16.0 * t.powi(3))
        + 1.0 / c
        + 1.0 / c.powi(3)
}

/// (66716 + 31943√7 + 12√(19825442 + 7493276√7)) / 1152.
pub fn k_derivative_bound() -> f64 {
    let r7 = 7f64.sqrt();
    let bound = (66716.0 + 31943.0 * r7 + 12.0 * (19825442.0 + 7493276.0 * r7).sqrt()) / 1152.0;
    assert!(bound <= APPENDIX_LIPSCHITZ);
    bound
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeChainReport {
    pub bound: f64,
    pub samples: usize,
    /// Largest |k'| seen by central differences.
    pub max_sampled_derivative: f64,
    /// Every sample satisfied |k'| ≤ stage 1 ≤ stage 2 ≤ stage 3 ≤ stage 4.
    pub stages_ordered: bool,
    pub closed_form_gap: f64,
}

/// Evaluates the majorant chain on `samples` evenly spaced points of [0, 1]
/// and compares each stage with a central-difference estimate of |k'|.
pub fn derivative_bound_chain(samples: usize) -> DerivativeChainReport {
    let bound = k_derivative_bound();
    let samples = samples.max(2);
    let h = 1e-7;
    let per_point: Vec<(f64, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let d = i as f64 / (samples - 1) as f64;
            let (lo, hi) = ((d - h).max(0.0), (d + h).min(1.0));
            let fd = (k_of_d(hi).expect("in domain") - k_of_d(lo).expect("in domain")) / (hi - lo);
            let s = derivative_bound_stages(d);
            let tol = 1e-9;
            let ordered = fd.abs() <= s[0] + tol
                && s[0] <= s[1] + tol
                && s[1] <= s[2] + tol
                && s[2] <= s[3] + tol
                && s[3] <= bound + 1e-9;
            (fd.abs(), ordered)
        })
        .collect();
    DerivativeChainReport {
        bound,
        samples,
        max_sampled_derivative: per_point.iter().map(|p| p.0).fold(0.0, f64::max),
        stages_ordered: per_point.iter().all(|p| p.1),
        closed_form_gap: (derivative_bound_constant() - bound).abs(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LipschitzCertificate {
    pub a: f64,
    pub b: f64,
    pub grid_count: usize,
    pub lipschitz_bound: f64,
    pub grid_min: f64,
    pub grid_argmin: f64,
    pub spacing: f64,
    pub certified_lower_bound: f64,
    pub success: bool,
}

/// Evaluates `f` at `m` evenly spaced points of [a, b] (both endpoints
/// included) and subtracts `L · spacing` from the grid minimum. The bound is
/// rigorous only if `L` bounds |f'| on [a, b].
pub fn certify_nonnegative(
    f: impl Fn(f64) -> f64 + Sync,
    a: f64,
    b: f64,
    lipschitz: f64,
    m: usize,
) -> Result<LipschitzCertificate, VerifierError> {
    if m < 2 {
        return Err(VerifierError::GridTooSmall(m));
    }
    let spacing = (b - a) / (m - 1) as f64;
    let point = |i: usize| if i == m - 1 { b } else { a + spacing * i as f64 };
    let values: Vec<f64> = (0..m).into_par_iter().map(|i| f(point(i))).collect();
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(VerifierError::NonFinite { x: point(i), value: v });
        }
        if v < values[best] {
            best = i;
        }
    }
    let grid_min = values[best];
    let certified_lower_bound = grid_min - lipschitz * spacing;
    Ok(LipschitzCertificate {
        a,
        b,
        grid_count: m,
        lipschitz_bound: lipschitz,
        grid_min,
        grid_argmin: point(best),
        spacing,
        certified_lower_bound,
        success: certified_lower_bound > 0.0,
    })
}

/// Certifies k(d) > 0 on [0, 1] with Lipschitz constant 200 on `m` points.
pub fn verify_appendix(m: usize) -> Result<LipschitzCertificate, VerifierError> {
    let bound = k_derivative_bound().ceil().max(APPENDIX_LIPSCHITZ);
    let cert = certify_nonnegative(|d| k_of_d(d).unwrap_or(f64::NAN), 0.0, 1.0, bound, m)?;
    if !cert.success {
        return Err(VerifierError::CertificationFailed(cert.certified_lower_bound));
    }
    Ok(cert)
}

/// Normalized part sizes of a matching partition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionProfile {
    pub a12: f64,
    pub a13: f64,
    pub a23: f64,
    pub d: f64,
}

impl PartitionProfile {
    pub fn new(a12: f64, a13: f64, a23: f64, d: f64) -> Self {
        PartitionProfile { a12, a13, a23, d }
    }

    pub fn total(&self) -> f64 {
        self.a12 + self.a13 + self.a23 + self.d
    }

    /// δ with a13² + d·a13 = y² + δ.
    pub fn delta(&self, rep: &CanonicalRep) -> f64 {
        self.a13 * self.a13 + self.d * self.a13 - rep.y * rep.y
    }

    /// Left-hand sides of the seven easy-case inequalities.
    pub fn lhs(&self) -> [f64; 7] {
        let PartitionProfile { a12, a13, a23, d } = *self;
        let q = |a: f64| a * (a + d);
        [
            q(a12),
            q(a13),
            q(a23),
            q(a12) + q(a13) + q(a23),
            a12 * a12 + 2.0 * a13 * a13 + 2.0 * a23 * a23 + 2.0 * a13 * d + 2.0 * a23 * d,
            2.0 * a12 * a12 + a13 * a13 + 2.0 * a23 * a23 + 2.0 * a12 * d + 2.0 * a23 * d,
            2.0 * a12 * a12 + 2.0 * a13 * a13 + a23 * a23 + 2.0 * a12 * d + 2.0 * a13 * d,
        ]
    }
}

/// Right-hand sides written in terms of (α1, α2, α3).
pub fn rhs_alpha_form(alpha: [f64; 3]) -> [f64; 7] {
    let [a1, a2, a3] = alpha;
    [
        a1 + a2 - 1.0,
        a1 + a3 - 1.0,
        a2 + a3 - 1.0,
        a1 + a2 + a3 - 1.0,
        2.0 * a1 + 2.0 * a2 + 3.0 * a3 - 3.0,
        2.0 * a1 + 3.0 * a2 + 2.0 * a3 - 3.0,
        3.0 * a1 + 2.0 * a2 + 2.0 * a3 - 3.0,
    ]
}

/// Right-hand sides written in terms of the canonical (x, y, z).
pub fn rhs_xyz_form(rep: &CanonicalRep) -> [f64; 7] {
    let (x2, y2, z2) = (rep.x * rep.x, rep.y * rep.y, rep.z * rep.z);
    [
        2.0 * x2 + y2 + z2 - 1.0,
        y2,
        z2,
        x2 + y2 + z2,
        x2 + 2.0 * y2 + 2.0 * z2,
        3.0 * x2 + 2.0 * y2 + 3.0 * z2 - 1.0,
        3.0 * x2 + 3.0 * y2 + 2.0 * z2 - 1.0,
    ]
}

/// Strict truth values of the seven inequalities.
pub fn easy_case_inequalities(p: &PartitionProfile, rep: &CanonicalRep) -> [bool; 7] {
    let lhs = p.lhs();
    let rhs = rhs_xyz_form(rep);
    std::array::from_fn(|i| lhs[i] > rhs[i] + STRICT_MARGIN)
}

/// Largest shortfall max_i (rhs_i − lhs_i); negative iff all seven hold with
/// room to spare. `skip` leaves out one inequality.
fn violation(p: &PartitionProfile, rhs: &[f64; 7], skip: Option<usize>) -> f64 {
    let lhs = p.lhs();
    (0..7)
        .filter(|&i| Some(i) != skip)
        .map(|i| rhs[i] - lhs[i])
        .fold(f64::NEG_INFINITY, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma28Report {
    pub alpha1: f64,
    pub alpha2: f64,
    pub step: f64,
    pub sum_bound: f64,
    pub rep: CanonicalRep,
    /// A profile satisfying all seven strict inequalities, if one was found.
    pub found: Option<PartitionProfile>,
    /// A profile satisfying (5), (6), (8)–(11) strictly and (7) non-strictly.
    pub found_relaxed_7: Option<PartitionProfile>,
    /// Smallest shortfall seen (negative would mean feasible).
    pub best_violation: f64,
    pub best_profile: PartitionProfile,
    pub points_evaluated: usize,
}

/// Grid search over (a12, a13, a23) with a12 + a13 + a23 ≤ `sum_bound` and
/// d taking the remaining slack (every left-hand side is nondecreasing in d),
/// followed by a finer search around the most nearly feasible points.
pub fn lemma28_search(
    alpha1: f64,
    alpha2: f64,
    step: f64,
    sum_bound: f64,
) -> Result<Lemma28Report, VerifierError> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(VerifierError::BadStep(step));
    }
    let (good, rep) = boundary::is_good_pair(alpha1, alpha2);
    let rep = match (good, rep) {
        (true, Some(rep)) => rep,
        _ => return Err(VerifierError::NotGoodPair { alpha1, alpha2 }),
    };
    let rhs = rhs_xyz_form(&rep);
    let eval = |a12: f64, a13: f64, a23: f64| -> Option<(PartitionProfile, f64, f64)> {
        let slack = sum_bound - a12 - a13 - a23;
        if a12 < 0.0 || a13 < 0.0 || a23 < 0.0 || slack < -1e-12 {
            return None;
        }
        let p = PartitionProfile::new(a12, a13, a23, slack.max(0.0));
        let v = violation(&p, &rhs, None);
        let relaxed = violation(&p, &rhs, Some(2)).max(rhs[2] - p.lhs()[2] - STRICT_MARGIN);
        Some((p, v, relaxed))
    };

    let steps = (sum_bound / step).floor() as usize;
    let coarse: Vec<(PartitionProfile, f64, f64)> = (0..=steps)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..=steps - i).flat_map(move |j| {
                (0..=steps - i - j)
                    .filter_map(move |k| eval(i as f64 * step, j as f64 * step, k as f64 * step))
            })
        })
        .collect();
    let mut points = coarse.len();

    let mut ranked: Vec<usize> = (0..coarse.len()).collect();
    ranked.sort_by(|&x, &y| coarse[x].1.total_cmp(&coarse[y].1).then(x.cmp(&y)));
    let fine = step / 10.0;
    let refined: Vec<(PartitionProfile, f64, f64)> = ranked
        .iter()
        .take(16)
        .flat_map(|&idx| {
            let c = coarse[idx].0;
            let mut out = Vec::new();
            for di in -10i32..=10 {
                for dj in -10i32..=10 {
                    for dk in -10i32..=10 {
                        let a12 = c.a12 + di as f64 * fine;
                        let a13 = c.a13 + dj as f64 * fine;
                        let a23 = c.a23 + dk as f64 * fine;
                        out.extend(eval(a12, a13, a23));
                    }
                }
            }
            out
        })
        .collect();
    points += refined.len();

    let all = coarse.iter().chain(refined.iter());
    let mut best = (coarse[0].0, coarse[0].1);
    let mut found = None;
    let mut found_relaxed_7 = None;
    for &(p, v, relaxed) in all {
        if v < best.1 {
            best = (p, v);
        }
        if found.is_none() && v < -STRICT_MARGIN {
            found = Some(p);
        }
        if found_relaxed_7.is_none() && relaxed < -STRICT_MARGIN {
            found_relaxed_7 = Some(p);
        }
    }
    Ok(Lemma28Report {
        alpha1,
        alpha2,
        step,
        sum_bound,
        rep,
        found,
        found_relaxed_7,
        best_violation: best.1,
        best_profile: best.0,
        points_evaluated: points,
    })
}

/// The maximizer (s − b0 − c0, b0, c0) of a² + b² + c² subject to
/// a + b + c = s, a ≥ b ≥ c, b ≥ b0, c ≥ c0, and its value.
pub fn prop_sum_of_squares(b0: f64, c0: f64, s: f64) -> Result<([f64; 3], f64), VerifierError> {
    if b0 < 0.0 || c0 < 0.0 || c0 > b0 || 2.0 * b0 + c0 > s + 1e-12 {
        return Err(VerifierError::SumOfSquaresPrecondition(b0, c0, s));
    }
    let t = [s - b0 - c0, b0, c0];
    Ok((t, t.iter().map(|v| v * v).sum()))
}

/// Largest a² + b² + c² over a `per_axis × per_axis` grid of feasible
/// (b, c); used to confirm the closed-form maximizer.
pub fn sum_of_squares_grid_max(b0: f64, c0: f64, s: f64, per_axis: usize) -> f64 {
    let per_axis = per_axis.max(2);
    let b_hi = s / 2.0;
    let c_hi = s / 3.0;
    (0..per_axis)
        .into_par_iter()
        .map(|i| {
            let b = b0 + (b_hi - b0).max(0.0) * i as f64 / (per_axis - 1) as f64;
            (0..per_axis)
                .filter_map(|j| {
                    let c = c0 + (c_hi - c0).max(0.0) * j as f64 / (per_axis - 1) as f64;
                    let a = s - b - c;
                    (a >= b && b >= c).then_some(a * a + b * b + c * c)
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep_of(x: f64, y: f64, z: f64) -> CanonicalRep {
        CanonicalRep { x, y, z, residual_1: 0.0, residual_2: 0.0 }
    }

    #[test]
    fn k_values() {
        let t = boundary::tau();
        let k0 = (1.0 - 2.0 * t) / (4.0 * t) - 1.0;
        assert!((k_of_d(0.0).unwrap() - k0).abs() < 1e-12);
        assert!((k0 - 0.161438).abs() < 1e-6);
        assert!((k_of_d(0.0948007).unwrap() - 0.0264741).abs() < 1e-5);
        assert!(k_of_d(1.0).unwrap() > 0.0);
        assert!(matches!(k_of_d(1.5), Err(VerifierError::Domain(_))));
    }

    #[test]
    fn k_derivative_matches_finite_differences() {
        for i in 1..200 {
            let d = i as f64 / 200.0;
            let e = 1e-6;
            let fd = (k_of_d(d + e).unwrap() - k_of_d(d - e).unwrap()) / (2.0 * e);
            assert!((fd - k_derivative(d).unwrap()).abs() < 1e-6, "d = {d}");
        }
    }

    #[test]
    fn derivative_bound_closed_form() {
        let b = k_derivative_bound();
        assert!((b - 196.868).abs() < 1e-3);
        assert!((derivative_bound_constant() - b).abs() < 1e-9);
    }

    #[test]
    fn derivative_chain_dominates() {
        let r = derivative_bound_chain(10_000);
        assert!(r.stages_ordered);
        assert!(r.max_sampled_derivative <= r.bound);
    }

    #[test]
    fn certificate_examples() {
        let c = certify_nonnegative(|_| 1.0, 0.0, 1.0, 0.0, 2).unwrap();
        assert!(c.success && c.certified_lower_bound == 1.0);
        let c = certify_nonnegative(|x| x, 0.0, 1.0, 1.0, 11).unwrap();
        assert_eq!(c.grid_min, 0.0);
        assert_eq!(c.grid_argmin, 0.0);
        assert!((c.certified_lower_bound + 0.1).abs() < 1e-15);
        assert!(!c.success);
        assert_eq!(
            certify_nonnegative(|x| x, 0.0, 1.0, 1.0, 1),
            Err(VerifierError::GridTooSmall(1))
        );
        assert!(matches!(
            certify_nonnegative(|x| 1.0 / (x - 0.5), 0.0, 1.0, 1.0, 3),
            Err(VerifierError::NonFinite { .. })
        ));
    }

    #[test]
    fn appendix_certificate() {
        let c = verify_appendix(APPENDIX_GRID).unwrap();
        assert!((c.grid_min - 0.0264741).abs() < 1e-5);
        assert!((c.grid_argmin - 0.0948007).abs() < 2e-3);
        assert!(c.certified_lower_bound >= 0.00147 - 1e-4);
        assert_eq!(c.certified_lower_bound + c.lipschitz_bound * c.spacing, c.grid_min);
        let finer = verify_appendix(2 * APPENDIX_GRID).unwrap();
        assert!(finer.certified_lower_bound > c.certified_lower_bound);
    }

    #[test]
    fn inequality_examples() {
        let rep = rep_of(0.75, 0.125, 0.125);
        let r = easy_case_inequalities(&PartitionProfile::new(1.0, 0.0, 0.0, 0.0), &rep);
        assert!(r[0]);
        assert!((rhs_xyz_form(&rep)[0] - 0.15625).abs() < 1e-15);
        let zero = easy_case_inequalities(&PartitionProfile::new(0.0, 0.0, 0.0, 0.0), &rep);
        let rhs = rhs_xyz_form(&rep);
        for i in 0..7 {
            if rhs[i] > 0.0 {
                assert!(!zero[i]);
            }
        }
    }

    #[test]
    fn rhs_forms_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(0.5..1.0);
            let y = rng.gen_range(0.0..(1.0 - x));
            let rep = rep_of(x, y, 1.0 - x - y);
            let a = rhs_alpha_form([rep.alpha1(), rep.alpha2(), rep.alpha3()]);
            let b = rhs_xyz_form(&rep);
            for i in 0..7 {
                assert!((a[i] - b[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn delta_definition() {
        let rep = rep_of(0.8, 0.2, 0.0);
        let p = PartitionProfile::new(0.5, 0.3, 0.1, 0.1);
        assert!((p.delta(&rep) - (0.09 + 0.03 - 0.04)).abs() < 1e-15);
    }

    #[test]
    fn lemma28_absent_and_relaxed_sanity() {
        let r = lemma28_search(0.68, 0.64, 0.01, 1.0).unwrap();
        assert!(r.found.is_none(), "{r:?}");
        let r = lemma28_search(0.578125, 0.578125, 0.01, 1.0).unwrap();
        assert!(r.found.is_none(), "{r:?}");
        let r = lemma28_search(0.68, 0.64, 0.02, 1.2).unwrap();
        assert!(r.found.is_some());
        let rep = r.rep;
        let p = PartitionProfile::new(0.8, 0.22, 0.02, 0.16);
        assert!(easy_case_inequalities(&p, &rep).iter().all(|&b| b));
        assert!(matches!(
            lemma28_search(0.4, 0.3, 0.01, 1.0),
            Err(VerifierError::NotGoodPair { .. })
        ));
    }

    #[test]
    fn sum_of_squares() {
        let (t, v) = prop_sum_of_squares(0.0, 0.0, 1.0).unwrap();
        assert_eq!((t, v), ([1.0, 0.0, 0.0], 1.0));
        let (t, v) = prop_sum_of_squares(0.3, 0.2, 1.0).unwrap();
        assert!((t[0] - 0.5).abs() < 1e-15 && (v - 0.38).abs() < 1e-12);
        assert!(sum_of_squares_grid_max(0.3, 0.2, 1.0, 1000) <= v + 1e-12);
        let third = 1.0 / 3.0;
        let (_, v) = prop_sum_of_squares(third, third, 1.0).unwrap();
        assert!((v - third).abs() < 1e-12);
        assert!(prop_sum_of_squares(0.2, 0.3, 1.0).is_err());
    }
}

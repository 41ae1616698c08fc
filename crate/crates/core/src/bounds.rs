//! Closed-form volume bounds for wide hollow bodies and simplices.
//!
//! Floating-point evaluators compare at [`TOLERANCE`]. The determinant cap
//! used by the completeness certificate is computed exactly.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

pub const TOLERANCE: f64 = 1e-9;

/// `vol(K - K) = 14 vol(K)` for a square pyramid; the five-point coefficient 12 is not far from it.
pub const SQUARE_PYRAMID_FACTOR: u64 = 14;

/// Normalized-volume cap for simplices projecting onto a hollow 3-polytope.
pub const HOLLOW_PROJECTION_CAP: u64 = 27;

/// Lower bound on the rational-diameter parameter λ.
pub const LAMBDA_MIN: (i128, i128) = (1, 42);

/// The large-λ branch applies for λ ≥ 0.19.
pub const LAMBDA_SPLIT: f64 = 0.19;

/// Sylvester numbers: `s_1 = 2`, `s_{n+1} = s_n (s_n - 1) + 1`. `None` past `u128`.
pub fn sylvester(i: u32) -> Option<u128> {
    if i == 0 {
        return None;
    }
    let mut s: u128 = 2;
    for _ in 1..i {
        s = s.checked_mul(s - 1)?.checked_add(1)?;
    }
    Some(s)
}

/// Width below which no volume bound exists: `1 + 2/√3`.
pub fn hollow_width_floor() -> f64 {
    1.0 + 2.0 / 3f64.sqrt()
}

/// Width at which the two bound regimes meet: `(2/√3)(√5 - 1) + 1`.
pub fn regime_threshold() -> f64 {
    2.0 / 3f64.sqrt() * (5f64.sqrt() - 1.0) + 1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `w >= w*`, bound `C w³ / (w - 1)³`.
    LargeWidth,
    /// `1 + 2/√3 < w < w*`, bound `C w³ / (w - (1 + 2/√3))`.
    SmallWidth,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundEvaluation {
    pub input: f64,
    pub regime: Regime,
    pub value: f64,
}

/// Large-width branch of the hollow 3-body bound, evaluated at any `w > 1`.
pub fn hollow3_large_branch(w: f64, five_point: bool) -> f64 {
    let c = if five_point { 16.0 / 3.0 } else { 8.0 };
    c * w.powi(3) / (w - 1.0).powi(3)
}

/// Small-width branch, evaluated at any `w > 1 + 2/√3`.
pub fn hollow3_small_branch(w: f64, five_point: bool) -> f64 {
    let c = if five_point { 0.5 } else { 0.75 };
    c * w.powi(3) / (w - hollow_width_floor())
}

/// Upper bound on the Euclidean volume of a hollow convex 3-body of lattice width `w`.
///
/// With `five_point` the body is the convex hull of five points, and the
/// bound improves by the factor 2/3 coming from `vol(K - K) >= 12 vol(K)`.
pub fn hollow3_volume_bound(w: f64, five_point: bool) -> Result<BoundEvaluation> {
    if !w.is_finite() || w <= hollow_width_floor() {
        return Err(Error::OutOfDomain(w));
    }
    let (regime, value) = if w >= regime_threshold() {
        (Regime::LargeWidth, hollow3_large_branch(w, five_point))
    } else {
        (Regime::SmallWidth, hollow3_small_branch(w, five_point))
    };
    Ok(BoundEvaluation {
        input: w,
        regime,
        value,
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(2p, p) * C(2q, q)`, the ratio `vol(K - K) / vol(K)` for a direct sum of a `p`- and a `q`-simplex.
pub fn direct_sum_rs_coefficient(p: u32, q: u32) -> Result<u64> {
    if p + q != 3 {
        return Err(Error::Parse(format!("p + q must be 3, got {p} + {q}")));
    }
    Ok(binomial(2 * p as u64, p as u64) * binomial(2 * q as u64, q as u64))
}

/// `2^5 3^3 / ((2 - 3λ)^3 λ)` for `0 < λ < 2/3`.
pub fn eq8_bound(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 2.0 / 3.0) {
        return Err(Error::OutOfDomain(lambda));
    }
    Ok(864.0 / ((2.0 - 3.0 * lambda).powi(3) * lambda))
}

/// Exact rational value of the same bound.
pub fn eq8_bound_exact(lambda: Ratio<i128>) -> Result<Ratio<i128>> {
    let zero = Ratio::from_integer(0);
    let two = Ratio::from_integer(2);
    let three = Ratio::from_integer(3);
    if lambda <= zero || lambda * three >= two {
        return Err(Error::OutOfDomain(
            *lambda.numer() as f64 / *lambda.denom() as f64,
        ));
    }
    let base = two - three * lambda;
    Ok(Ratio::from_integer(864) / (base * base * base * lambda))
}

/// The λ ≥ 0.19 branch: `24 * 16 / (70 λ^4)`.
pub fn large_lambda_branch(lambda: f64) -> f64 {
    24.0 * 16.0 / (70.0 * lambda.powi(4))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeCap {
    /// Exact value of the small-λ bound at λ = 1/42.
    pub small_lambda_exact: Ratio<i128>,
    /// Its floor (normalized volumes are integers).
    pub small_lambda_floor: u64,
    pub large_lambda_value: f64,
    pub projecting_cap: u64,
    /// Maximum over all cases.
    pub cap: u64,
}

/// Largest possible determinant of an empty 4-simplex of width at least three.
pub fn simplex_volume_cap() -> VolumeCap {
    let exact = eq8_bound_exact(Ratio::new(LAMBDA_MIN.0, LAMBDA_MIN.1)).expect("1/42 in domain");
    let floor = exact.numer().div_floor(exact.denom()) as u64;
    let large = large_lambda_branch(LAMBDA_SPLIT);
    let cap = floor.max(large.floor() as u64).max(HOLLOW_PROJECTION_CAP);
    VolumeCap {
        small_lambda_exact: exact,
        small_lambda_floor: floor,
        large_lambda_value: large,
        projecting_cap: HOLLOW_PROJECTION_CAP,
        cap,
    }
}

/// `(w, bound)` rows for `w` from `from` to `to` in `steps` intervals.
pub fn width_table(from: f64, to: f64, steps: usize, five_point: bool) -> Vec<(f64, f64)> {
    (0..=steps)
        .map(|i| from + (to - from) * i as f64 / steps as f64)
        .filter_map(|w| hollow3_volume_bound(w, five_point).ok().map(|b| (w, b.value)))
        .collect()
}

pub fn lambda_table(from: f64, to: f64, steps: usize) -> Vec<(f64, f64)> {
    (0..=steps)
        .map(|i| from + (to - from) * i as f64 / steps as f64)
        .filter_map(|l| eq8_bound(l).ok().map(|b| (l, b)))
        .collect()
}

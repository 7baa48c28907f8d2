use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::intmath::{ceil_sqrt, isqrt};

use super::tether::{tether_bound, trianglefree_preset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "n", rename_all = "kebab-case")]
pub enum LinearThreshold {
    /// Slope at most 8: the bound never beats `√n`.
    Inapplicable,
    Threshold(u64),
}

/// Whether `n` satisfies both `n ≥ 8h` and `√n ≥ 2/(1 − √(8/h))`, for
/// `h = a/b > 8`, squared out into integers.
fn linear_condition(n: u64, a: u64, b: u64) -> bool {
    let (n, a, b) = (n as i128, a as i128, b as i128);
    if n * b < 8 * a {
        return false;
    }
    let lhs = a * (n + 4) - 8 * n * b;
    lhs >= 0 && lhs * lhs >= 16 * n * a * a
}

/// Least `n` from which graphs tethered by `h·x` are well-burnable.
///
/// For `h = a/b`, `(2/(1 − √(8/h)))²` equals
/// `(4a(a + 8b) + √(512a³b)) / (a − 8b)²`; its ceiling comes from one
/// integer square root plus an exact correction step.
pub fn linear_threshold(h: Ratio<u64>) -> LinearThreshold {
    let (a, b) = (*h.numer() as u128, *h.denom() as u128);
    if a <= 8 * b {
        return LinearThreshold::Inapplicable;
    }
    let slope_floor = (8 * a).div_ceil(b) as u64;
    let estimate = (|| {
        let den = (a - 8 * b).checked_mul(a - 8 * b)?;
        let base = 4 * a * (a + 8 * b);
        let root = isqrt(a.checked_pow(3)?.checked_mul(512 * b)?);
        u64::try_from((base + root).div_ceil(den)).ok()
    })();
    let mut n = estimate.unwrap_or(slope_floor).max(slope_floor);
    while n > slope_floor && linear_condition(n - 1, a as u64, b as u64) {
        n -= 1;
    }
    while !linear_condition(n, a as u64, b as u64) {
        n += 1;
    }
    LinearThreshold::Threshold(n)
}

/// The same threshold found by testing `n = 1, 2, …` up to `limit`.
pub fn linear_threshold_scan(h: Ratio<u64>, limit: u64) -> Option<LinearThreshold> {
    let (a, b) = (*h.numer(), *h.denom());
    if a <= 8 * b {
        return Some(LinearThreshold::Inapplicable);
    }
    (1..=limit).find(|&n| linear_condition(n, a, b)).map(LinearThreshold::Threshold)
}

/// Minimum degree above `(n − 1)/3 − 1`, which guarantees a spanning
/// caterpillar and hence well-burnability.
pub fn caterpillar_condition(n: u64, min_degree: u64) -> bool {
    3 * min_degree + 4 > n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictBranch {
    SpanningCaterpillar,
    ClosedForm,
    TetherEngine,
    /// `d² + 1 ≤ 40`: the closed form has no solution.
    Degenerate,
    BoundTooWeak,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFreeVerdict {
    pub n: u64,
    pub d: u32,
    /// `Some(true)` when a branch certifies well-burnability; `None` when
    /// no branch decides.
    pub well_burnable: Option<bool>,
    pub branch: VerdictBranch,
    pub explanation: String,
}

/// `2√10·√(n/D) + 4 ≤ √n` with `D = d² + 1`, squared out.
fn closed_form_holds(n: u64, d: u32) -> bool {
    let big_d = d as i128 * d as i128 + 1;
    let n = n as i128;
    if n < 16 {
        return false;
    }
    let lhs = big_d * (n + 16) - 40 * n;
    lhs >= 0 && lhs * lhs >= 64 * n * big_d * big_d
}

/// Well-burnability of connected triangle-free graphs with minimum degree
/// `d` on `n` vertices, assuming they satisfy [`trianglefree_preset`].
pub fn trianglefree_wellburnable(n: u64, d: u32) -> TriangleFreeVerdict {
    let rounds = ceil_sqrt(n);
    let verdict = |well_burnable, branch, explanation: String| TriangleFreeVerdict { n, d, well_burnable, branch, explanation };
    if caterpillar_condition(n, d as u64) {
        return verdict(
            Some(true),
            VerdictBranch::SpanningCaterpillar,
            format!("minimum degree {d} exceeds ({n} - 1)/3 - 1, so a spanning caterpillar exists"),
        );
    }
    if closed_form_holds(n, d) {
        return verdict(
            Some(true),
            VerdictBranch::ClosedForm,
            format!("2·sqrt(10·{n}/{}) + 4 <= sqrt({n}); valid when the preset tethering holds", d as u64 * d as u64 + 1),
        );
    }
    if let Ok(report) = tether_bound(n, &trianglefree_preset(d)) {
        if report.rounds <= rounds {
            return verdict(
                Some(true),
                VerdictBranch::TetherEngine,
                format!(
                    "g({}) = {:.4} gives at most {} rounds <= ceil(sqrt({n})) = {rounds}; valid when the preset tethering holds",
                    report.best_integer, report.bound, report.rounds
                ),
            );
        }
        if (d as u64) * (d as u64) + 1 > 40 {
            return verdict(
                None,
                VerdictBranch::BoundTooWeak,
                format!("best bound {} rounds exceeds ceil(sqrt({n})) = {rounds}", report.rounds),
            );
        }
    }
    verdict(
        None,
        VerdictBranch::Degenerate,
        format!("d^2 + 1 = {} <= 40 leaves the closed form without solutions", d as u64 * d as u64 + 1),
    )
}

//! Sampled probes of betweenness, comparison and convexity properties.
//!
//! These falsify or corroborate a property on a finite grid; none of them
//! certifies a universally quantified statement.

use serde::{Deserialize, Serialize};

use super::{comparison_point_distance, ComparisonTriangle, Point, Space};
use crate::error::{contract, Result};

/// `y` lies on the segment `[x, z]` up to `tol`:
/// `d(x, y) + d(y, z) ≤ d(x, z) + tol`.
pub fn is_between(space: &Space, x: &Point, y: &Point, z: &Point, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(contract(format!("betweenness tolerance {tol} must be positive")));
    }
    Ok(space.distance(x, y)? + space.distance(y, z)? <= space.distance(x, z)? + tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Betweenness {
    Holds,
    Fails,
    /// The quadruple is not pairwise distinct, or `y ∉ [x, z]`, or `z ∉ [y, w]`.
    HypothesisNotMet,
}

impl Betweenness {
    pub fn holds(self) -> bool {
        self == Betweenness::Holds
    }
}

/// Betweenness for the quadruple `(x, y, z, w)`: if `y ∈ [x, z]` and
/// `z ∈ [y, w]` then both `y` and `z` lie on `[x, w]`.
pub fn betweenness_holds(space: &Space, x: &Point, y: &Point, z: &Point, w: &Point, tol: f64) -> Result<Betweenness> {
    let pts = [x, y, z, w];
    for i in 0..4 {
        for j in i + 1..4 {
            if space.points_equal(pts[i], pts[j])? {
                return Ok(Betweenness::HypothesisNotMet);
            }
        }
    }
    if !is_between(space, x, y, z, tol)? || !is_between(space, y, z, w, tol)? {
        return Ok(Betweenness::HypothesisNotMet);
    }
    if is_between(space, x, y, w, tol)? && is_between(space, x, z, w, tol)? {
        Ok(Betweenness::Holds)
    } else {
        Ok(Betweenness::Fails)
    }
}

fn grid_params(grid: usize) -> impl Iterator<Item = f64> {
    (0..=grid).map(move |i| i as f64 / grid as f64)
}

/// Largest value of `d(p, q) − d̄(p̄, q̄)` over grid samples `p`, `q` on pairs
/// of sides of the triangle `x1 x2 x3`, compared in `M²_κ`. Every vertex is
/// used once as the shared vertex, so all three side pairs are covered.
pub fn cat_max_residual(space: &Space, x1: &Point, x2: &Point, x3: &Point, kappa: f64, grid: usize) -> Result<f64> {
    Ok(cat_residual_range(space, x1, x2, x3, kappa, grid)?.1)
}

/// Smallest and largest `d(p, q) − d̄(p̄, q̄)` over the samples of [`cat_max_residual`].
pub fn cat_residual_range(
    space: &Space,
    x1: &Point,
    x2: &Point,
    x3: &Point,
    kappa: f64,
    grid: usize,
) -> Result<(f64, f64)> {
    if grid == 0 {
        return Err(contract("grid must be positive"));
    }
    let d12 = space.distance(x1, x2)?;
    let d13 = space.distance(x1, x3)?;
    let d23 = space.distance(x2, x3)?;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let rotations = [(x1, x2, x3, d12, d13, d23), (x2, x3, x1, d23, d12, d13), (x3, x1, x2, d13, d23, d12)];
    for (apex, p_end, q_end, a, b, c) in rotations {
        let tri = ComparisonTriangle::new(a, b, c, kappa)?;
        let ps: Vec<_> = grid_params(grid)
            .map(|t| space.geodesic_point(apex, p_end, t).map(|p| (t * a, p)))
            .collect::<Result<_>>()?;
        let qs: Vec<_> = grid_params(grid)
            .map(|t| space.geodesic_point(apex, q_end, t).map(|q| (t * b, q)))
            .collect::<Result<_>>()?;
        for (s1, p) in &ps {
            for (s2, q) in &qs {
                let model = comparison_point_distance(&tri, *s1, *s2)?;
                let r = space.raw_distance(p, q) - model;
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
    }
    Ok((lo, hi))
}

/// CAT(κ) inequality on a `grid × grid` sample of every pair of sides.
pub fn cat_inequality_check(
    space: &Space,
    x1: &Point,
    x2: &Point,
    x3: &Point,
    kappa: f64,
    grid: usize,
    tol: f64,
) -> Result<bool> {
    Ok(cat_max_residual(space, x1, x2, x3, kappa, grid)? <= tol)
}

/// Largest value of `d(γ1(t), γ2(t)) − [(1−t) d(γ1(0), γ2(0)) + t d(γ1(1), γ2(1))]`
/// over grid samples of `t`.
pub fn busemann_max_defect(
    space: &Space,
    first: (&Point, &Point),
    second: (&Point, &Point),
    grid: usize,
) -> Result<f64> {
    if grid == 0 {
        return Err(contract("grid must be positive"));
    }
    let start = space.distance(first.0, second.0)?;
    let end = space.distance(first.1, second.1)?;
    let mut worst = f64::NEG_INFINITY;
    for t in grid_params(grid) {
        let p = space.geodesic_point(first.0, first.1, t)?;
        let q = space.geodesic_point(second.0, second.1, t)?;
        worst = worst.max(space.raw_distance(&p, &q) - ((1.0 - t) * start + t * end));
    }
    Ok(worst)
}

/// Busemann convexity of the distance between two linearly reparametrized
/// geodesics, sampled on a grid.
pub fn busemann_convexity_check(
    space: &Space,
    first: (&Point, &Point),
    second: (&Point, &Point),
    grid: usize,
    tol: f64,
) -> Result<bool> {
    Ok(busemann_max_defect(space, first, second, grid)? <= tol)
}

/// For each pair `(x_n, y_n)`, the sampled uniform distance
/// `max_t d(γ_n(t), γ(t))` to the geodesic between the limit endpoints.
pub fn geodesic_uniform_convergence_gap(
    space: &Space,
    endpoints: &[(Point, Point)],
    limit: (&Point, &Point),
    grid: usize,
) -> Result<Vec<f64>> {
    if grid == 0 {
        return Err(contract("grid must be positive"));
    }
    let reference: Vec<Point> =
        grid_params(grid).map(|t| space.geodesic_point(limit.0, limit.1, t)).collect::<Result<_>>()?;
    endpoints
        .iter()
        .map(|(x, y)| {
            grid_params(grid).zip(&reference).try_fold(0.0f64, |acc, (t, r)| {
                let p = space.geodesic_point(x, y, t)?;
                Ok(acc.max(space.raw_distance(&p, r)))
            })
        })
        .collect()
}

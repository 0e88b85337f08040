//! Space-independent geodesic geometry: the [`Space`] handle that dispatches
//! distance and geodesic evaluation to the bundled model spaces, plus the
//! comparison-triangle and probe machinery built on top of it.

mod comparison;
mod point;
mod probes;

pub use comparison::{comparison_point_distance, ComparisonTriangle};
pub use point::{Point, SpaceKind, HEMISPHERE};
pub use probes::{
    betweenness_holds, busemann_convexity_check, busemann_max_defect, cat_inequality_check, cat_max_residual,
    cat_residual_range, geodesic_uniform_convergence_gap, is_between, Betweenness,
};

use serde::{Deserialize, Serialize};

use crate::error::{contract, unsupported, Error, Result};
use crate::spaces::{euclidean, poincare, river, sphere, star};

/// Default tolerance for point equality.
pub const TAU_EQ: f64 = 1e-10;
/// Default geodesic tolerance in planar and tree spaces.
pub const TAU_GEO_FLAT: f64 = 1e-9;
/// Default geodesic tolerance in the disk and on the sphere.
pub const TAU_GEO_CURVED: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eq: f64,
    pub geo: f64,
}

/// A uniquely geodesic model space.
///
/// `Space` is a small `Copy` value; every operation is a pure function of its
/// arguments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Space {
    pub kind: SpaceKind,
    pub tol: Tolerances,
}

impl Space {
    pub fn new(kind: SpaceKind) -> Self {
        let geo = match kind {
            SpaceKind::Poincare | SpaceKind::SphereCap => TAU_GEO_CURVED,
            _ => TAU_GEO_FLAT,
        };
        Space { kind, tol: Tolerances { eq: TAU_EQ, geo } }
    }

    pub fn euclidean() -> Self {
        Self::new(SpaceKind::Euclidean)
    }

    pub fn poincare() -> Self {
        Self::new(SpaceKind::Poincare)
    }

    pub fn sphere_cap() -> Self {
        Self::new(SpaceKind::SphereCap)
    }

    pub fn river() -> Self {
        Self::new(SpaceKind::River)
    }

    pub fn star(arms: usize) -> Self {
        Self::new(SpaceKind::Star { arms })
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn tau_eq(&self) -> f64 {
        self.tol.eq
    }

    pub fn tau_geo(&self) -> f64 {
        self.tol.geo
    }

    fn mismatch(&self, p: &Point) -> Error {
        Error::VariantMismatch { space: self.kind, point: p.variant_name() }
    }

    /// Checks that `p` has this space's variant and lies in its chart.
    pub fn check(&self, p: &Point) -> Result<()> {
        let ok = match (self.kind, *p) {
            (SpaceKind::Euclidean, Point::Planar { x, y }) | (SpaceKind::River, Point::River { x, y }) => {
                x.is_finite() && y.is_finite()
            }
            (SpaceKind::Poincare, Point::Disk { x, y }) => poincare::in_disk([x, y]),
            (SpaceKind::SphereCap, Point::Sphere { theta, phi }) => {
                (0.0..HEMISPHERE).contains(&theta) && phi.is_finite()
            }
            (SpaceKind::Star { arms }, Point::Star { arm, s }) => arm < arms && s.is_finite() && s >= 0.0,
            _ => return Err(self.mismatch(p)),
        };
        if ok {
            Ok(())
        } else {
            Err(contract(format!("point {p} lies outside the {} chart", self.kind.id())))
        }
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.raw_distance(x, y))
    }

    /// Distance without chart validation; callers guarantee matching variants.
    pub(crate) fn raw_distance(&self, x: &Point, y: &Point) -> f64 {
        match (*x, *y) {
            (Point::Planar { x: a, y: b }, Point::Planar { x: c, y: d }) => euclidean::distance([a, b], [c, d]),
            (Point::Disk { x: a, y: b }, Point::Disk { x: c, y: d }) => poincare::distance([a, b], [c, d]),
            (Point::Sphere { theta: a, phi: b }, Point::Sphere { theta: c, phi: d }) => {
                sphere::distance((a, b), (c, d))
            }
            (Point::River { x: a, y: b }, Point::River { x: c, y: d }) => river::distance([a, b], [c, d]),
            (Point::Star { arm: a, s: b }, Point::Star { arm: c, s: d }) => star::distance((a, b), (c, d)),
            _ => f64::NAN,
        }
    }

    /// The point at parameter `t ∈ [0, 1]` on the linearly reparametrized
    /// geodesic from `x` to `y`.
    pub fn geodesic_point(&self, x: &Point, y: &Point, t: f64) -> Result<Point> {
        if !(0.0..=1.0).contains(&t) {
            return Err(contract(format!("geodesic parameter {t} outside [0, 1]")));
        }
        self.check(x)?;
        self.check(y)?;
        let p = self.raw_geodesic(x, y, t);
        self.check(&p)?;
        Ok(p)
    }

    fn raw_geodesic(&self, x: &Point, y: &Point, t: f64) -> Point {
        match (self.kind, *x, *y) {
            (_, Point::Planar { x: a, y: b }, Point::Planar { x: c, y: d }) => {
                let [u, v] = euclidean::geodesic([a, b], [c, d], t);
                Point::planar(u, v)
            }
            (_, Point::Disk { x: a, y: b }, Point::Disk { x: c, y: d }) => {
                let [u, v] = poincare::geodesic([a, b], [c, d], t);
                Point::disk(u, v)
            }
            (_, Point::Sphere { theta: a, phi: b }, Point::Sphere { theta: c, phi: d }) => {
                let (u, v) = sphere::geodesic((a, b), (c, d), t);
                Point::sphere(u, v)
            }
            (_, Point::River { x: a, y: b }, Point::River { x: c, y: d }) => {
                let [u, v] = river::geodesic([a, b], [c, d], t);
                Point::river(u, v)
            }
            (SpaceKind::Star { arms }, Point::Star { arm: a, s: b }, Point::Star { arm: c, s: d }) => {
                let (k, s) = star::geodesic((a, b), (c, d), t, arms);
                Point::star(k, s)
            }
            _ => unreachable!("variants checked by caller"),
        }
    }

    /// The point at distance `s ≥ 0` beyond `y` on a geodesic extension of
    /// `[x, y]`, so that `y` lies between `x` and the result.
    ///
    /// In the trees an extension through a branch point is not unique; the
    /// model space picks one deterministically. On the sphere cap the
    /// extension may leave the chart, which is reported as unsupported.
    pub fn extend_geodesic(&self, x: &Point, y: &Point, s: f64) -> Result<Point> {
        self.check(x)?;
        self.check(y)?;
        if !(s >= 0.0 && s.is_finite()) {
            return Err(contract(format!("extension length {s} must be a nonnegative real")));
        }
        if self.raw_distance(x, y) <= self.tol.eq {
            return Err(contract("cannot extend a degenerate segment"));
        }
        if s == 0.0 {
            return Ok(*y);
        }
        let p = match (self.kind, *x, *y) {
            (_, Point::Planar { x: a, y: b }, Point::Planar { x: c, y: d }) => {
                let [u, v] = euclidean::extend([a, b], [c, d], s);
                Point::planar(u, v)
            }
            (_, Point::Disk { x: a, y: b }, Point::Disk { x: c, y: d }) => {
                let [u, v] = poincare::extend([a, b], [c, d], s);
                Point::disk(u, v)
            }
            (_, Point::Sphere { theta: a, phi: b }, Point::Sphere { theta: c, phi: d }) => {
                let total = sphere::distance((a, b), (c, d)) + s;
                let (u, v) = sphere::along((a, b), (c, d), total);
                Point::sphere(u, v)
            }
            (_, Point::River { x: a, y: b }, Point::River { x: c, y: d }) => {
                let [u, v] = river::extend([a, b], [c, d], s);
                Point::river(u, v)
            }
            (SpaceKind::Star { arms }, Point::Star { arm: a, s: b }, Point::Star { arm: c, s: d }) => {
                let (k, r) = star::extend((a, b), (c, d), s, arms);
                Point::star(k, r)
            }
            _ => unreachable!("variants checked above"),
        };
        self.check(&p).map_err(|_| unsupported(format!("extension of [{x}, {y}] by {s} leaves the chart")))?;
        Ok(p)
    }

    /// Equality within `tau_eq`.
    pub fn points_equal(&self, x: &Point, y: &Point) -> Result<bool> {
        Ok(self.distance(x, y)? <= self.tol.eq)
    }
}

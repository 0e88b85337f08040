use std::fmt;

use serde::{Deserialize, Serialize};

use super::bisect_max;
use crate::error::{contract, unsupported, Result};
use crate::metric::{Point, Space, SpaceKind, HEMISPHERE};

/// Gap kept between sphere-cap balls and the equator.
pub const SPHERE_MARGIN: f64 = 1e-3;

/// A closed convex subset of a model space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    ClosedBall {
        center: Point,
        radius: f64,
    },
    WholeSpace,
    /// Euclidean half-plane `{p : ⟨normal, p⟩ ≤ offset}` with unit `normal`.
    HalfPlane {
        normal: [f64; 2],
        offset: f64,
    },
}

impl Domain {
    pub fn ball(center: Point, radius: f64) -> Self {
        Domain::ClosedBall { center, radius }
    }

    pub fn half_plane(normal: [f64; 2], offset: f64) -> Self {
        let n = normal[0].hypot(normal[1]);
        Domain::HalfPlane { normal: [normal[0] / n, normal[1] / n], offset: offset / n }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Domain::ClosedBall { .. })
    }

    /// Checks that the domain is well formed, closed and uniquely geodesic in `space`.
    pub fn validate(&self, space: &Space) -> Result<()> {
        match *self {
            Domain::ClosedBall { center, radius } => {
                space.check(&center)?;
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(contract(format!("ball radius {radius} must be positive")));
                }
                if let Point::Sphere { theta, .. } = center {
                    if radius >= HEMISPHERE - SPHERE_MARGIN {
                        return Err(contract(format!(
                            "sphere-cap ball radius {radius} must stay below π/2 − {SPHERE_MARGIN}"
                        )));
                    }
                    if theta + radius >= HEMISPHERE - SPHERE_MARGIN {
                        return Err(contract(format!(
                            "sphere-cap ball about colatitude {theta} with radius {radius} reaches the equator"
                        )));
                    }
                }
                Ok(())
            }
            Domain::WholeSpace => match space.kind {
                SpaceKind::SphereCap => Err(unsupported("the open hemisphere is not closed; use a ball domain")),
                _ => Ok(()),
            },
            Domain::HalfPlane { normal, offset } => {
                if space.kind != SpaceKind::Euclidean {
                    return Err(unsupported("half-plane domains exist only in the Euclidean plane"));
                }
                if !(normal[0].is_finite() && normal[1].is_finite() && offset.is_finite())
                    || (normal[0].hypot(normal[1]) - 1.0).abs() > 1e-12
                {
                    return Err(contract("half-plane normal must be a finite unit vector"));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::ClosedBall { center, radius } => write!(f, "ball c={center} r={radius}"),
            Domain::WholeSpace => write!(f, "whole"),
            Domain::HalfPlane { normal, offset } => {
                write!(f, "halfplane n={},{} c={offset}", normal[0], normal[1])
            }
        }
    }
}

/// Membership in the closed domain, up to `tol`.
pub fn domain_contains(space: &Space, domain: &Domain, p: &Point, tol: f64) -> Result<bool> {
    space.check(p)?;
    Ok(match *domain {
        Domain::ClosedBall { center, radius } => space.distance(&center, p)? <= radius + tol,
        Domain::WholeSpace => true,
        Domain::HalfPlane { normal, offset } => {
            let [x, y] = p.coords();
            normal[0] * x + normal[1] * y <= offset + tol
        }
    })
}

/// The farthest point `p` on `[from, toward]` with `d(from, p) ≤ max_step`
/// that still lies in the domain. Found by bisection along the segment.
pub fn clip_to_domain(space: &Space, domain: &Domain, from: &Point, toward: &Point, max_step: f64) -> Result<Point> {
    if !domain_contains(space, domain, from, space.tau_geo())? {
        return Err(contract(format!("clip start {from} lies outside the domain")));
    }
    if max_step.is_nan() || max_step < 0.0 {
        return Err(contract(format!("max step {max_step} must be nonnegative")));
    }
    let d = space.distance(from, toward)?;
    if d == 0.0 {
        return Ok(*from);
    }
    let t_max = (max_step / d).min(1.0);
    let mut inside = |t: f64| {
        space.geodesic_point(from, toward, t).and_then(|p| domain_contains(space, domain, &p, 0.0)).unwrap_or(false)
    };
    let t = bisect_max(t_max, &mut inside);
    space.geodesic_point(from, toward, t)
}

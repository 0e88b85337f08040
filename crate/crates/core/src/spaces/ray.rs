use serde::{Deserialize, Serialize};

use super::{euclidean, poincare, river, star, Domain, RiverHeading};
use crate::error::{contract, unsupported, Result};
use crate::metric::{Point, Space, SpaceKind};

/// Space-specific direction of a geodesic ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RayDirection {
    /// Euclidean direction vector; normalized on construction.
    Planar {
        dx: f64,
        dy: f64,
    },
    /// Boundary point `e^{i·angle}` of the Poincaré disk.
    Ideal {
        angle: f64,
    },
    River {
        heading: RiverHeading,
    },
    /// Outward along the given arm of a star tree.
    Arm {
        arm: usize,
    },
}

/// An arclength-parametrized geodesic ray `[0, ∞) → X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayDescriptor {
    pub space: Space,
    pub basepoint: Point,
    pub direction: RayDirection,
}

impl RayDescriptor {
    /// Builds a ray that stays inside `domain`. Bounded domains contain no
    /// geodesic rays, so they are rejected.
    pub fn new(space: Space, domain: &Domain, basepoint: Point, direction: RayDirection) -> Result<Self> {
        domain.validate(&space)?;
        space.check(&basepoint)?;
        let direction = match (space.kind, direction) {
            (SpaceKind::Euclidean, RayDirection::Planar { dx, dy }) => {
                let n = dx.hypot(dy);
                if !(n > 0.0 && n.is_finite()) {
                    return Err(contract("ray direction must be a nonzero vector"));
                }
                RayDirection::Planar { dx: dx / n, dy: dy / n }
            }
            (SpaceKind::Poincare, RayDirection::Ideal { angle }) if angle.is_finite() => direction,
            (SpaceKind::River, RayDirection::River { heading }) => {
                let sign = match heading {
                    RiverHeading::Axis { sign } | RiverHeading::Vertical { sign } => sign,
                };
                if sign == 0.0 || !sign.is_finite() {
                    return Err(contract("river ray heading needs a nonzero sign"));
                }
                direction
            }
            (SpaceKind::Star { arms }, RayDirection::Arm { arm }) if arm < arms => direction,
            (SpaceKind::SphereCap, _) => return Err(unsupported("sphere-cap domains are bounded and contain no rays")),
            _ => return Err(contract(format!("ray direction {direction:?} does not fit {}", space.kind.id()))),
        };
        match *domain {
            Domain::ClosedBall { .. } => {
                Err(unsupported("a closed ball is bounded and contains no geodesic ray; use a whole-space domain"))
            }
            Domain::WholeSpace => Ok(RayDescriptor { space, basepoint, direction }),
            Domain::HalfPlane { normal, offset } => {
                let (RayDirection::Planar { dx, dy }, [x, y]) = (direction, basepoint.coords()) else {
                    unreachable!("half-planes validated as Euclidean")
                };
                if normal[0] * x + normal[1] * y > offset + space.tau_geo() {
                    return Err(contract("ray basepoint lies outside the half-plane"));
                }
                if normal[0] * dx + normal[1] * dy > 0.0 {
                    return Err(unsupported("ray leaves the half-plane"));
                }
                Ok(RayDescriptor { space, basepoint, direction })
            }
        }
    }

    pub fn eval(&self, s: f64) -> Result<Point> {
        ray_eval(self, s)
    }

    /// Arclength at which the ray passes through `p`, if it does (within `tau_geo`).
    pub fn locate(&self, p: &Point) -> Result<Option<f64>> {
        let s = self.space.distance(&self.basepoint, p)?;
        let q = self.eval(s)?;
        Ok((self.space.distance(&q, p)? <= self.space.tau_geo()).then_some(s))
    }
}

/// The point at arclength `s ≥ 0` along the ray.
pub fn ray_eval(ray: &RayDescriptor, s: f64) -> Result<Point> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(contract(format!("ray parameter {s} must be a nonnegative real")));
    }
    let p = match (ray.basepoint, ray.direction) {
        (Point::Planar { x, y }, RayDirection::Planar { dx, dy }) => {
            let [u, v] = euclidean::ray([x, y], [dx, dy], s);
            Point::planar(u, v)
        }
        (Point::Disk { x, y }, RayDirection::Ideal { angle }) => {
            let [u, v] = poincare::ray([x, y], angle, s);
            Point::disk(u, v)
        }
        (Point::River { x, y }, RayDirection::River { heading }) => {
            let [u, v] = river::ray([x, y], heading, s);
            Point::river(u, v)
        }
        (Point::Star { arm, s: r }, RayDirection::Arm { arm: target }) => {
            let (k, t) = star::ray((arm, r), target, s);
            Point::star(k, t)
        }
        _ => return Err(contract("ray basepoint and direction disagree")),
    };
    ray.space
        .check(&p)
        .map_err(|_| unsupported(format!("ray point at arclength {s} is beyond floating-point range")))?;
    Ok(p)
}

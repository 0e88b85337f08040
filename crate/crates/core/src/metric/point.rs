use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Coordinates of a point in one of the bundled model spaces.
///
/// The variant must agree with the [`SpaceKind`] of the space the point is
/// used with; every [`Space`](super::Space) operation checks this.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Point {
    Planar {
        x: f64,
        y: f64,
    },
    /// Poincaré disk coordinates, `x² + y² < 1`.
    Disk {
        x: f64,
        y: f64,
    },
    /// Colatitude `theta ∈ [0, π/2)` and longitude `phi ∈ [0, 2π)` on the unit sphere.
    Sphere {
        theta: f64,
        phi: f64,
    },
    River {
        x: f64,
        y: f64,
    },
    /// Arm index and arclength from the hub. All `s = 0` points are the hub (`arm = 0`).
    Star {
        arm: usize,
        s: f64,
    },
}

impl Point {
    pub fn planar(x: f64, y: f64) -> Self {
        Point::Planar { x, y }
    }

    pub fn disk(x: f64, y: f64) -> Self {
        Point::Disk { x, y }
    }

    /// Longitude is wrapped into `[0, 2π)`; at the pole it is set to zero.
    pub fn sphere(theta: f64, phi: f64) -> Self {
        let phi = if theta == 0.0 { 0.0 } else { phi.rem_euclid(TAU) };
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        let phi = if phi >= TAU { 0.0 } else { phi };
        Point::Sphere { theta, phi }
    }

    pub fn river(x: f64, y: f64) -> Self {
        Point::River { x, y }
    }

    pub fn star(arm: usize, s: f64) -> Self {
        if s == 0.0 {
            Point::Star { arm: 0, s: 0.0 }
        } else {
            Point::Star { arm, s }
        }
    }

    pub fn hub() -> Self {
        Point::Star { arm: 0, s: 0.0 }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Point::Planar { .. } => "planar",
            Point::Disk { .. } => "disk",
            Point::Sphere { .. } => "sphere",
            Point::River { .. } => "river",
            Point::Star { .. } => "star",
        }
    }

    /// The two stored coordinates, in declaration order. Star points report
    /// the arm index as a real.
    pub fn coords(&self) -> [f64; 2] {
        match *self {
            Point::Planar { x, y } | Point::Disk { x, y } | Point::River { x, y } => [x, y],
            Point::Sphere { theta, phi } => [theta, phi],
            Point::Star { arm, s } => [arm as f64, s],
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Point::Star { arm, s } => write!(f, "{arm},{s}"),
            _ => {
                let [a, b] = self.coords();
                write!(f, "{a},{b}")
            }
        }
    }
}

/// The five bundled model spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceKind {
    Euclidean,
    Poincare,
    /// The open upper hemisphere of the unit sphere (curvature 1).
    SphereCap,
    /// The plane with the river metric.
    River,
    /// A star-shaped tree: `arms` half-lines glued at a hub.
    Star {
        arms: usize,
    },
}

impl SpaceKind {
    /// Textual identifier used on the command line.
    pub fn id(&self) -> String {
        match self {
            SpaceKind::Euclidean => "euclidean".into(),
            SpaceKind::Poincare => "poincare".into(),
            SpaceKind::SphereCap => "sphere-cap".into(),
            SpaceKind::River => "river".into(),
            SpaceKind::Star { arms } => format!("star:{arms}"),
        }
    }

    pub fn is_tree(&self) -> bool {
        matches!(self, SpaceKind::River | SpaceKind::Star { .. })
    }

    /// Spaces whose coordinates are a planar picture of the space.
    pub fn is_planar_chart(&self) -> bool {
        matches!(self, SpaceKind::Euclidean | SpaceKind::Poincare | SpaceKind::River)
    }
}

/// Upper limit for the colatitude of sphere-cap points.
pub const HEMISPHERE: f64 = PI / 2.0;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};

/// Side lengths of a geodesic triangle together with the curvature `kappa`
/// of the model plane it is compared against.
///
/// Sides `a` and `b` share a vertex; `c` is the side opposite it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub kappa: f64,
}

impl ComparisonTriangle {
    pub fn new(a: f64, b: f64, c: f64, kappa: f64) -> Result<Self> {
        let tri = ComparisonTriangle { a, b, c, kappa };
        tri.validate()?;
        Ok(tri)
    }

    /// Diameter of the model plane: `π/√κ` for `κ > 0`, infinite otherwise.
    pub fn model_diameter(kappa: f64) -> f64 {
        if kappa > 0.0 {
            PI / kappa.sqrt()
        } else {
            f64::INFINITY
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.a + self.b + self.c
    }

    pub fn validate(&self) -> Result<()> {
        let ComparisonTriangle { a, b, c, kappa } = *self;
        if !(a >= 0.0 && b >= 0.0 && c >= 0.0) || !kappa.is_finite() {
            return Err(contract(format!("invalid triangle sides ({a}, {b}, {c}) or curvature {kappa}")));
        }
        let slack = 1e-12 * (a + b + c).max(1.0);
        if a > b + c + slack || b > a + c + slack || c > a + b + slack {
            return Err(contract(format!("sides ({a}, {b}, {c}) violate the triangle inequality")));
        }
        if self.perimeter() >= 2.0 * Self::model_diameter(kappa) {
            return Err(contract(format!("perimeter {} is not below 2·D_κ for κ = {kappa}", self.perimeter())));
        }
        Ok(())
    }
}

/// Distance in the model plane `M²_κ` between the point at arclength `s1`
/// along side `a` and the point at arclength `s2` along side `b`, both
/// measured from the shared vertex.
///
/// Uses half-angle (haversine-type) forms of the law of cosines so that
/// nearly degenerate triangles keep full relative precision.
pub fn comparison_point_distance(tri: &ComparisonTriangle, s1: f64, s2: f64) -> Result<f64> {
    tri.validate()?;
    let slack = 1e-12 * tri.perimeter().max(1.0);
    if !(0.0..=tri.a + slack).contains(&s1) || !(0.0..=tri.b + slack).contains(&s2) {
        return Err(contract(format!("arclengths ({s1}, {s2}) outside sides ({}, {})", tri.a, tri.b)));
    }
    let (s1, s2) = (s1.min(tri.a), s2.min(tri.b));
    if s1 == 0.0 {
        return Ok(s2);
    }
    if s2 == 0.0 {
        return Ok(s1);
    }
    let k = tri.kappa;
    let d = if k == 0.0 {
        // sin²(γ/2) = (c - a + b)(c + a - b) / 4ab
        let half = ((tri.c - tri.a + tri.b) * (tri.c + tri.a - tri.b) / (4.0 * tri.a * tri.b)).clamp(0.0, 1.0);
        ((s1 - s2).powi(2) + 4.0 * s1 * s2 * half).sqrt()
    } else {
        let r = k.abs().sqrt();
        let (a, b, c, u, v) = (tri.a * r, tri.b * r, tri.c * r, s1 * r, s2 * r);
        let unit = if k > 0.0 {
            // sin²(d/2) = sin²((u-v)/2) + sin u sin v sin²(γ/2)
            let hav = |x: f64| (x / 2.0).sin().powi(2);
            let half = ((hav(c) - hav(a - b)) / (a.sin() * b.sin())).clamp(0.0, 1.0);
            let h = (hav(u - v) + u.sin() * v.sin() * half).clamp(0.0, 1.0);
            2.0 * h.sqrt().asin()
        } else {
            // sinh²(d/2) = sinh²((u-v)/2) + sinh u sinh v sin²(γ/2)
            let hav = |x: f64| (x / 2.0).sinh().powi(2);
            let half = ((hav(c) - hav(a - b)) / (a.sinh() * b.sinh())).clamp(0.0, 1.0);
            let h = hav(u - v) + u.sinh() * v.sinh() * half;
            2.0 * h.sqrt().asinh()
        };
        unit / r
    };
    Ok(d)
}

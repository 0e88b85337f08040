//! The Poincaré disk model of the hyperbolic plane (curvature -1).
//!
//! Geodesics are evaluated by Möbius transport: move the start point to the
//! origin, walk along a diameter, and transport back.

use num_complex::Complex64;

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// `1 - |z|^2` factored to limit cancellation near the boundary.
fn conformal_gap(z: Complex64) -> f64 {
    let r = z.norm();
    (1.0 - r) * (1.0 + r)
}

/// Disk automorphism sending `a` to the origin.
fn to_origin(a: Complex64, z: Complex64) -> Complex64 {
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

fn from_origin(a: Complex64, w: Complex64) -> Complex64 {
    (w + a) / (Complex64::new(1.0, 0.0) + a.conj() * w)
}

/// `arcosh(1 + 2|p-q|² / ((1-|p|²)(1-|q|²)))`, evaluated through the
/// equivalent half-angle form `2 asinh(|p-q| / sqrt((1-|p|²)(1-|q|²)))`.
pub fn distance(p: [f64; 2], q: [f64; 2]) -> f64 {
    let (p, q) = (c(p), c(q));
    let chord = (p - q).norm();
    2.0 * (chord / (conformal_gap(p) * conformal_gap(q)).sqrt()).asinh()
}

/// Point at hyperbolic distance `s` from `p` along the geodesic through `q`
/// (beyond `q` when `s` exceeds `d(p, q)`).
fn along(p: Complex64, q: Complex64, s: f64) -> Complex64 {
    let w = to_origin(p, q);
    let r = w.norm();
    if r == 0.0 {
        return p;
    }
    from_origin(p, w / r * (s / 2.0).tanh())
}

pub fn geodesic(p: [f64; 2], q: [f64; 2], t: f64) -> [f64; 2] {
    if t == 0.0 {
        return p;
    }
    if t == 1.0 {
        return q;
    }
    pair(along(c(p), c(q), t * distance(p, q)))
}

pub fn extend(p: [f64; 2], q: [f64; 2], s: f64) -> [f64; 2] {
    pair(along(c(p), c(q), distance(p, q) + s))
}

/// Ray from `base` toward the ideal boundary point at angle `ideal`.
pub fn ray(base: [f64; 2], ideal: f64, s: f64) -> [f64; 2] {
    let a = c(base);
    let w = to_origin(a, Complex64::from_polar(1.0, ideal));
    let w = w / w.norm();
    pair(from_origin(a, w * (s / 2.0).tanh()))
}

/// Euclidean radius of the hyperbolic circle of radius `r` about the origin.
pub fn euclidean_radius(r: f64) -> f64 {
    (r / 2.0).tanh()
}

/// Point at hyperbolic distance `rho` from `center` in direction `angle`
/// (angle measured after transporting `center` to the origin).
pub fn polar_about(center: [f64; 2], rho: f64, angle: f64) -> [f64; 2] {
    let w = Complex64::from_polar(euclidean_radius(rho), angle);
    pair(from_origin(c(center), w))
}

pub fn in_disk(p: [f64; 2]) -> bool {
    p[0].is_finite() && p[1].is_finite() && p[0] * p[0] + p[1] * p[1] < 1.0
}

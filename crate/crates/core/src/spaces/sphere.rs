//! The open upper hemisphere of the unit sphere, in colatitude/longitude
//! coordinates. Any two of its points are joined by a unique minimal arc.

use std::f64::consts::TAU;

pub type Vec3 = [f64; 3];

pub fn to_vec(theta: f64, phi: f64) -> Vec3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Returns `(theta, phi)`; longitude is zero at the pole.
pub fn from_vec(v: Vec3) -> (f64, f64) {
    let rho = v[0].hypot(v[1]);
    let theta = rho.atan2(v[2]);
    let phi = if rho < 1e-300 { 0.0 } else { v[1].atan2(v[0]).rem_euclid(TAU) };
    (theta, if phi >= TAU { 0.0 } else { phi })
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: Vec3, k: f64) -> Vec3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn axpy(k: f64, a: Vec3, b: Vec3) -> Vec3 {
    [k * a[0] + b[0], k * a[1] + b[1], k * a[2] + b[2]]
}

/// Great-circle distance between unit vectors.
pub fn angle(u: Vec3, v: Vec3) -> f64 {
    norm(cross(u, v)).atan2(dot(u, v))
}

pub fn distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    angle(to_vec(a.0, a.1), to_vec(b.0, b.1))
}

/// Unit tangent at `u` pointing toward `v`; `None` when the points coincide.
pub fn tangent_toward(u: Vec3, v: Vec3) -> Option<Vec3> {
    let w = axpy(-dot(u, v), u, v);
    let n = norm(w);
    (n > 1e-300).then(|| scale(w, 1.0 / n))
}

/// Point at arclength `s` along the great circle leaving `u` with unit tangent `e`.
pub fn walk(u: Vec3, e: Vec3, s: f64) -> Vec3 {
    let (sn, cs) = s.sin_cos();
    axpy(sn, e, scale(u, cs))
}

/// Point at arclength `s` from `a` along the great circle through `b`.
pub fn along(a: (f64, f64), b: (f64, f64), s: f64) -> (f64, f64) {
    let u = to_vec(a.0, a.1);
    match tangent_toward(u, to_vec(b.0, b.1)) {
        Some(e) => from_vec(walk(u, e, s)),
        None => a,
    }
}

pub fn geodesic(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    if t == 0.0 {
        return a;
    }
    if t == 1.0 {
        return b;
    }
    along(a, b, t * distance(a, b))
}

/// Point at distance `rho` from `center` in the tangent direction making
/// angle `bearing` with the meridian toward the pole (or the `phi = 0`
/// meridian when the center is the pole).
pub fn polar_about(center: (f64, f64), rho: f64, bearing: f64) -> (f64, f64) {
    let u = to_vec(center.0, center.1);
    // local frame: east and north tangents
    let (e_east, e_north) = if center.0 < 1e-12 {
        ([0.0, 1.0, 0.0], [1.0, 0.0, 0.0])
    } else {
        let (sp, cp) = center.1.sin_cos();
        let (st, ct) = center.0.sin_cos();
        ([-sp, cp, 0.0], [-ct * cp, -ct * sp, st])
    };
    let (sb, cb) = bearing.sin_cos();
    let dir = axpy(sb, e_east, scale(e_north, cb));
    from_vec(walk(u, dir, rho))
}

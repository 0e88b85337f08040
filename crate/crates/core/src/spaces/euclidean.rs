//! The Euclidean plane.

pub fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (b[0] - a[0]).hypot(b[1] - a[1])
}

pub fn geodesic(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    if t == 1.0 {
        return b;
    }
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

/// Point at distance `s` beyond `b` on the line from `a` through `b`.
pub fn extend(a: [f64; 2], b: [f64; 2], s: f64) -> [f64; 2] {
    let d = distance(a, b);
    [b[0] + s * (b[0] - a[0]) / d, b[1] + s * (b[1] - a[1]) / d]
}

pub fn ray(base: [f64; 2], unit: [f64; 2], s: f64) -> [f64; 2] {
    [base[0] + s * unit[0], base[1] + s * unit[1]]
}

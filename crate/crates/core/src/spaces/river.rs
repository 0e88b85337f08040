//! The river metric on the plane: travel between different abscissas goes
//! down to the x-axis, along it, and back up. The result is an R-tree.

pub fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    if a[0] == b[0] {
        (a[1] - b[1]).abs()
    } else {
        a[1].abs() + b[1].abs() + (a[0] - b[0]).abs()
    }
}

/// Point at arclength `s` along the (possibly extended) river path
/// `a -> (a.x, 0) -> (b.x, 0) -> b`, or along the vertical line when
/// the abscissas agree.
fn at_arclength(a: [f64; 2], b: [f64; 2], s: f64) -> [f64; 2] {
    if a[0] == b[0] {
        let dir = (b[1] - a[1]).signum();
        return [a[0], a[1] + dir * s];
    }
    let down = a[1].abs();
    let across = (b[0] - a[0]).abs();
    if s <= down {
        [a[0], a[1] - a[1].signum() * s]
    } else if s <= down + across {
        [a[0] + (b[0] - a[0]).signum() * (s - down), 0.0]
    } else {
        [b[0], b[1].signum() * (s - down - across)]
    }
}

pub fn geodesic(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    if t == 0.0 {
        return a;
    }
    if t == 1.0 {
        return b;
    }
    at_arclength(a, b, t * distance(a, b))
}

/// Point at distance `s` beyond `b` on an extension of the geodesic from `a`.
pub fn extend(a: [f64; 2], b: [f64; 2], s: f64) -> [f64; 2] {
    if a[0] == b[0] {
        let dir = (b[1] - a[1]).signum();
        [b[0], b[1] + dir * s]
    } else if b[1] != 0.0 {
        [b[0], b[1] + b[1].signum() * s]
    } else {
        [b[0] + (b[0] - a[0]).signum() * s, 0.0]
    }
}

/// Direction of a bundled river ray.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiverHeading {
    /// Drop to the x-axis, then follow it toward `sign · ∞`.
    Axis { sign: f64 },
    /// Stay on the vertical line, heading toward `sign · ∞`.
    Vertical { sign: f64 },
}

pub fn ray(base: [f64; 2], heading: RiverHeading, s: f64) -> [f64; 2] {
    match heading {
        RiverHeading::Vertical { sign } => [base[0], base[1] + sign.signum() * s],
        RiverHeading::Axis { sign } => {
            let down = base[1].abs();
            if s <= down {
                [base[0], base[1] - base[1].signum() * s]
            } else {
                [base[0] + sign.signum() * (s - down), 0.0]
            }
        }
    }
}

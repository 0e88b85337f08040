//! A star tree: `arms` copies of `[0, ∞)` glued at their origins.

/// A point as `(arm, s)`; `s = 0` is the hub regardless of arm.
pub type Coord = (usize, f64);

fn canonical(arm: usize, s: f64) -> Coord {
    if s == 0.0 {
        (0, 0.0)
    } else {
        (arm, s)
    }
}

fn same_line(a: Coord, b: Coord) -> bool {
    a.0 == b.0 || a.1 == 0.0 || b.1 == 0.0
}

pub fn distance(a: Coord, b: Coord) -> f64 {
    if same_line(a, b) {
        (a.1 - b.1).abs()
    } else {
        a.1 + b.1
    }
}

/// Point at arclength `s` from `a` toward `b`; past `b` the path continues
/// outward along `b`'s arm (or back through the hub when `b` lies between
/// `a` and the hub).
fn at_arclength(a: Coord, b: Coord, s: f64, arms: usize) -> Coord {
    if same_line(a, b) {
        let arm = if a.1 == 0.0 { b.0 } else { a.0 };
        if b.1 >= a.1 {
            return canonical(arm, a.1 + s);
        }
        let r = a.1 - s;
        if r >= 0.0 {
            return canonical(arm, r);
        }
        return canonical((arm + 1) % arms, -r);
    }
    if s <= a.1 {
        canonical(a.0, a.1 - s)
    } else {
        canonical(b.0, s - a.1)
    }
}

pub fn geodesic(a: Coord, b: Coord, t: f64, arms: usize) -> Coord {
    if t == 0.0 {
        return a;
    }
    if t == 1.0 {
        return b;
    }
    at_arclength(a, b, t * distance(a, b), arms)
}

/// Point `s` beyond `b` on an extension of `[a, b]`. Extensions through the
/// hub branch; the arm after `a`'s is taken.
pub fn extend(a: Coord, b: Coord, s: f64, arms: usize) -> Coord {
    if b.1 == 0.0 {
        return canonical((a.0 + 1) % arms, s);
    }
    at_arclength(a, b, distance(a, b) + s, arms)
}

pub fn ray(base: Coord, arm: usize, s: f64) -> Coord {
    if base.1 == 0.0 || base.0 == arm {
        canonical(arm, base.1 + s)
    } else if s <= base.1 {
        canonical(base.0, base.1 - s)
    } else {
        canonical(arm, s - base.1)
    }
}

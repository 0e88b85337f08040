//! Random points in bundled domains, for randomized strategies and probes.
//!
//! Distributions are convenient rather than uniform. Unbounded domains are
//! sampled from a fixed bounded window given by [`sampling_bounds`].

use std::f64::consts::TAU;

use rand::Rng;

use super::{domain_contains, poincare, sphere, Domain};
use crate::error::Result;
use crate::metric::{Point, Space, SpaceKind, HEMISPHERE};

/// Extent of the window used for whole-space sampling: a coordinate box
/// half-width for planar charts, a hyperbolic radius for the disk, and an
/// arclength bound for star trees.
pub fn sampling_bounds(kind: SpaceKind) -> f64 {
    match kind {
        SpaceKind::Poincare => 3.0,
        SpaceKind::SphereCap => HEMISPHERE - 0.05,
        _ => 10.0,
    }
}

fn river_abscissa<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    // snap to a coarse lattice now and then so equal abscissas occur
    if rng.gen_bool(0.25) {
        (rng.gen_range(lo..=hi)).round()
    } else {
        rng.gen_range(lo..=hi)
    }
}

fn whole<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Point {
    let w = sampling_bounds(space.kind);
    match space.kind {
        SpaceKind::Euclidean => Point::planar(rng.gen_range(-w..=w), rng.gen_range(-w..=w)),
        SpaceKind::Poincare => {
            let [x, y] = poincare::polar_about([0.0, 0.0], w * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
            Point::disk(x, y)
        }
        SpaceKind::SphereCap => {
            let (t, p) = sphere::polar_about((0.0, 0.0), w * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
            Point::sphere(t, p)
        }
        SpaceKind::River => {
            let x = river_abscissa(rng, -w, w);
            let y = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(-w..=w) };
            Point::river(x, y)
        }
        SpaceKind::Star { arms } => {
            if rng.gen_bool(0.05) {
                Point::hub()
            } else {
                Point::star(rng.gen_range(0..arms), rng.gen_range(0.0..=w))
            }
        }
    }
}

fn in_ball<R: Rng + ?Sized>(space: &Space, center: Point, radius: f64, rng: &mut R) -> Result<Point> {
    let u: f64 = rng.gen();
    let angle = rng.gen_range(0.0..TAU);
    let p = match center {
        Point::Planar { x, y } => {
            let r = radius * u.sqrt();
            Point::planar(x + r * angle.cos(), y + r * angle.sin())
        }
        Point::Disk { x, y } => {
            let [a, b] = poincare::polar_about([x, y], radius * u.sqrt(), angle);
            Point::disk(a, b)
        }
        Point::Sphere { theta, phi } => {
            let (t, p) = sphere::polar_about((theta, phi), radius * u.sqrt(), angle);
            Point::sphere(t, p)
        }
        Point::River { x, y } => {
            let dom = Domain::ball(center, radius);
            let mut found = None;
            if !rng.gen_bool(0.2) {
                for _ in 0..64 {
                    let h = radius - y.abs();
                    if h <= 0.0 {
                        break;
                    }
                    let px = river_abscissa(rng, x - h, x + h);
                    let py = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(-h..=h) };
                    let cand = Point::river(px, py);
                    if domain_contains(space, &dom, &cand, 0.0)? {
                        found = Some(cand);
                        break;
                    }
                }
            }
            found.unwrap_or_else(|| Point::river(x, y + radius * (2.0 * u - 1.0)))
        }
        Point::Star { arm, s } => {
            let dom = Domain::ball(center, radius);
            let Space { kind: SpaceKind::Star { arms }, .. } = *space else {
                unreachable!("star point in non-star space")
            };
            let mut found = None;
            for _ in 0..64 {
                let cand = Point::star(rng.gen_range(0..arms), rng.gen_range(0.0..=s + radius));
                if domain_contains(space, &dom, &cand, 0.0)? {
                    found = Some(cand);
                    break;
                }
            }
            found.unwrap_or_else(|| Point::star(arm, s + radius * u))
        }
    };
    Ok(p)
}

/// A random point of `domain`.
pub fn sample_point<R: Rng + ?Sized>(space: &Space, domain: &Domain, rng: &mut R) -> Result<Point> {
    domain.validate(space)?;
    match *domain {
        Domain::WholeSpace => Ok(whole(space, rng)),
        Domain::ClosedBall { center, radius } => in_ball(space, center, radius, rng),
        Domain::HalfPlane { normal, offset } => {
            let w = sampling_bounds(space.kind);
            let (cx, cy) = (normal[0] * (offset - w), normal[1] * (offset - w));
            loop {
                let p = Point::planar(cx + rng.gen_range(-w..=w), cy + rng.gen_range(-w..=w));
                if domain_contains(space, domain, &p, 0.0)? {
                    return Ok(p);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ball_samples_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases = [
            (Space::euclidean(), Domain::ball(Point::planar(1.0, -1.0), 2.0)),
            (Space::poincare(), Domain::ball(Point::disk(0.3, 0.1), 1.5)),
            (Space::sphere_cap(), Domain::ball(Point::sphere(0.2, 1.0), 1.2)),
            (Space::river(), Domain::ball(Point::river(0.5, 1.0), 3.0)),
            (Space::star(4), Domain::ball(Point::star(1, 1.0), 2.0)),
            (Space::euclidean(), Domain::half_plane([1.0, 1.0], 3.0)),
        ];
        for (s, dom) in cases {
            for _ in 0..500 {
                let p = sample_point(&s, &dom, &mut rng).unwrap();
                assert!(domain_contains(&s, &dom, &p, s.tau_geo()).unwrap(), "{p} not in {dom}");
            }
        }
    }
}

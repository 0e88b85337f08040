//! The five bundled model spaces, their closed convex domains, and geodesic
//! rays in the noncompact ones.

pub mod euclidean;
pub mod poincare;
pub mod river;
pub mod sphere;
pub mod star;

mod domain;
mod ray;
mod sampling;

pub use domain::{clip_to_domain, domain_contains, Domain, SPHERE_MARGIN};
pub use ray::{ray_eval, RayDescriptor, RayDirection};
pub use river::RiverHeading;
pub use sampling::{sample_point, sampling_bounds};

/// Largest `s ∈ [0, hi]` with `inside(s)`, assuming `inside(0)` holds and the
/// admissible set is an interval. 60 bisection steps.
pub(crate) fn bisect_max(hi: f64, mut inside: impl FnMut(f64) -> bool) -> f64 {
    if inside(hi) {
        return hi;
    }
    let (mut lo, mut up) = (0.0, hi);
    for _ in 0..60 {
        let mid = 0.5 * (lo + up);
        if inside(mid) {
            lo = mid;
        } else {
            up = mid;
        }
    }
    lo
}

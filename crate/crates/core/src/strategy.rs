//! Bundled man policies.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Error, Result};
use crate::game::GameView;
use crate::metric::{Point, SpaceKind};
use crate::spaces::{bisect_max, clip_to_domain, domain_contains, sample_point, RayDescriptor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum Policy {
    Stationary,
    /// Step of length `D` perpendicular to the direction toward the lion, so
    /// that the man circles the lion (clockwise by default). Euclidean plane only.
    Spiral {
        clockwise: bool,
    },
    /// Follow `base`, except that move number `k` (producing `M_k`) heads
    /// straight back toward `L_{k-1}`.
    ReverseAtStep {
        k: usize,
        base: Box<Policy>,
    },
    /// Advance `D` along a geodesic ray through the man's start.
    RayEscape {
        ray: RayDescriptor,
    },
    /// Move up to `D` directly away from the lion, stopping at the boundary.
    RadialFlee,
    /// Move up to `D` toward a fresh random point of the domain each round.
    Random,
    /// Replay the given positions, then stand still.
    Scripted {
        moves: Vec<Point>,
    },
}

impl Policy {
    pub fn id(&self) -> String {
        match self {
            Policy::Stationary => "stationary".into(),
            Policy::Spiral { clockwise: true } => "spiral".into(),
            Policy::Spiral { clockwise: false } => "spiral-ccw".into(),
            Policy::ReverseAtStep { k, base } => match **base {
                Policy::Spiral { clockwise: true } => format!("reverse@{k}"),
                ref other => format!("reverse@{k}:{}", other.id()),
            },
            Policy::RayEscape { .. } => "ray".into(),
            Policy::RadialFlee => "flee".into(),
            Policy::Random => "random".into(),
            Policy::Scripted { .. } => "scripted".into(),
        }
    }
}

/// A policy together with its per-game state. Clone it to run independent games.
#[derive(Debug, Clone)]
pub struct ManStrategy {
    pub policy: Policy,
    rng: ChaCha8Rng,
    ray_arclength: Option<f64>,
    script_pos: usize,
}

impl ManStrategy {
    pub fn new(policy: Policy) -> Self {
        Self::seeded(policy, 0)
    }

    pub fn seeded(policy: Policy, seed: u64) -> Self {
        ManStrategy { policy, rng: ChaCha8Rng::seed_from_u64(seed), ray_arclength: None, script_pos: 0 }
    }

    pub fn id(&self) -> String {
        self.policy.id()
    }

    pub fn certificate(&self) -> Option<RayDescriptor> {
        match &self.policy {
            Policy::RayEscape { ray } => Some(*ray),
            _ => None,
        }
    }

    /// Chooses `M_{i+1}`.
    pub fn next_move(&mut self, view: &GameView<'_>) -> Result<Point> {
        let policy = self.policy.clone();
        self.move_for(&policy, view)
    }

    fn move_for(&mut self, policy: &Policy, view: &GameView<'_>) -> Result<Point> {
        let cfg = view.config;
        let (space, domain, jump) = (&cfg.space, &cfg.domain, cfg.jump);
        match policy {
            Policy::Stationary => Ok(view.man),
            Policy::Spiral { clockwise } => spiral_move(view, *clockwise),
            Policy::ReverseAtStep { k, base } => {
                if view.step + 1 == *k {
                    let d = space.distance(&view.man, &view.lion)?;
                    if d == 0.0 {
                        return Ok(view.man);
                    }
                    space.geodesic_point(&view.man, &view.lion, (jump / d).min(1.0))
                } else {
                    self.move_for(base, view)
                }
            }
            Policy::RayEscape { ray } => {
                let cached = match self.ray_arclength {
                    Some(s) if space.distance(&ray.eval(s)?, &view.man)? <= space.tau_geo() => Some(s),
                    _ => ray.locate(&view.man)?,
                };
                let s =
                    cached.ok_or_else(|| unsupported(format!("man position {} is not on the escape ray", view.man)))?;
                let next = ray.eval(s + jump)?;
                if !domain_contains(space, domain, &next, space.tau_geo())? {
                    return Err(unsupported("escape ray leaves the domain"));
                }
                self.ray_arclength = Some(s + jump);
                Ok(next)
            }
            Policy::RadialFlee => {
                if space.distance(&view.lion, &view.man)? <= space.tau_eq() {
                    return Ok(view.man);
                }
                match space.extend_geodesic(&view.lion, &view.man, jump) {
                    Ok(target) => clip_to_domain(space, domain, &view.man, &target, jump),
                    Err(Error::Unsupported(_)) => {
                        // the full extension leaves the chart; shorten it instead
                        let s = bisect_max(jump, |s| {
                            space
                                .extend_geodesic(&view.lion, &view.man, s)
                                .and_then(|p| domain_contains(space, domain, &p, 0.0))
                                .unwrap_or(false)
                        });
                        space.extend_geodesic(&view.lion, &view.man, s)
                    }
                    Err(e) => Err(e),
                }
            }
            Policy::Random => {
                let target = sample_point(space, domain, &mut self.rng)?;
                let d = space.distance(&view.man, &target)?;
                if d == 0.0 {
                    return Ok(view.man);
                }
                space.geodesic_point(&view.man, &target, (jump / d).min(1.0))
            }
            Policy::Scripted { moves } => {
                let next = moves.get(self.script_pos).copied().unwrap_or(view.man);
                self.script_pos += 1;
                Ok(next)
            }
        }
    }
}

fn spiral_move(view: &GameView<'_>, clockwise: bool) -> Result<Point> {
    let cfg = view.config;
    if cfg.space.kind != SpaceKind::Euclidean {
        return Err(unsupported("the spiral strategy is defined only in the Euclidean plane"));
    }
    let ([lx, ly], [mx, my]) = (view.lion.coords(), view.man.coords());
    let (ux, uy) = (lx - mx, ly - my);
    let n = ux.hypot(uy);
    if n == 0.0 {
        return Ok(view.man);
    }
    let (ux, uy) = (ux / n, uy / n);
    // quarter turn of the man-to-lion direction; the man then orbits the lion
    let (px, py) = if clockwise { (-uy, ux) } else { (uy, -ux) };
    Ok(Point::planar(mx + cfg.jump * px, my + cfg.jump * py))
}

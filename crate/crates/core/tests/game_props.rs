use geopursuit::spaces::{sample_point, RiverHeading};
use geopursuit::verify::spiral_report;
use geopursuit::{
    classify_outcome, play, Domain, GameConfig, ManStrategy, Outcome, Point, Policy, RayDescriptor, RayDirection,
    Space, SpaceKind,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arenas() -> Vec<(Space, Domain)> {
    vec![
        (Space::euclidean(), Domain::ball(Point::planar(0.0, 0.0), 6.0)),
        (Space::euclidean(), Domain::half_plane([0.0, 1.0], 2.0)),
        (Space::euclidean(), Domain::WholeSpace),
        (Space::poincare(), Domain::ball(Point::disk(0.1, 0.0), 2.0)),
        (Space::poincare(), Domain::WholeSpace),
        (Space::sphere_cap(), Domain::ball(Point::sphere(0.3, 0.5), 1.1)),
        (Space::river(), Domain::ball(Point::river(0.0, 1.0), 5.0)),
        (Space::river(), Domain::WholeSpace),
        (Space::star(3), Domain::ball(Point::hub(), 4.0)),
        (Space::star(3), Domain::WholeSpace),
    ]
}

fn ray_direction(space: &Space, rng: &mut ChaCha8Rng) -> RayDirection {
    match space.kind {
        SpaceKind::Euclidean => {
            let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            RayDirection::Planar { dx: a.cos(), dy: a.sin() }
        }
        SpaceKind::Poincare => RayDirection::Ideal { angle: rng.gen_range(0.0..std::f64::consts::TAU) },
        SpaceKind::River => {
            let sign = if rng.gen() { 1.0 } else { -1.0 };
            let heading = if rng.gen() { RiverHeading::Axis { sign } } else { RiverHeading::Vertical { sign } };
            RayDirection::River { heading }
        }
        SpaceKind::Star { arms } => RayDirection::Arm { arm: rng.gen_range(0..arms) },
        SpaceKind::SphereCap => unreachable!("no rays on the sphere cap"),
    }
}

fn policies(space: &Space, domain: &Domain, man: Point, rng: &mut ChaCha8Rng) -> Vec<Policy> {
    let mut out = vec![Policy::Stationary, Policy::RadialFlee, Policy::Random];
    if space.kind == SpaceKind::Euclidean && *domain == Domain::WholeSpace {
        out.push(Policy::Spiral { clockwise: rng.gen() });
    }
    if *domain == Domain::WholeSpace {
        let ray = RayDescriptor::new(*space, domain, man, ray_direction(space, rng)).unwrap();
        out.push(Policy::RayEscape { ray });
    }
    out.push(Policy::ReverseAtStep { k: rng.gen_range(1..6), base: Box::new(Policy::Random) });
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Move lengths, post-gap identity, monotone gaps and capture absorption
    /// hold for every bundled strategy from random starts.
    #[test]
    fn transcript_invariants(seed in any::<u64>(), jump in 0.2f64..1.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (space, domain) in arenas() {
            let lion = sample_point(&space, &domain, &mut rng).unwrap();
            let man = sample_point(&space, &domain, &mut rng).unwrap();
            let jump = if space.kind == SpaceKind::SphereCap { jump / 4.0 } else { jump };
            // unbounded play in the disk chart stays within hyperbolic radius ~15 of the start
            let horizon = match (space.kind, domain) {
                (SpaceKind::Poincare, Domain::WholeSpace) => ((12.0 / jump) as usize).min(150),
                _ => 150,
            };
            let cfg = GameConfig::new(space, domain, jump, lion, man).with_horizon(horizon);
            for policy in policies(&space, &domain, man, &mut rng) {
                let t = play(&cfg, &mut ManStrategy::seeded(policy, seed)).unwrap();
                let v = t.invariant_violations();
                prop_assert!(v.is_empty(), "{} {} {}: {:?}", space.kind.id(), domain, t.strategy, v);
                prop_assert_eq!(t.steps.len(), horizon);
                prop_assert!(t.steps.iter().enumerate().all(|(i, s)| s.index == i));

                let gaps = t.gaps();
                match classify_outcome(&t, 1e-6) {
                    Outcome::LionCapture { i0 } => {
                        prop_assert!(gaps[i0] <= jump);
                        prop_assert!(gaps[..i0].iter().all(|&g| g > jump - cfg.tie_tol));
                    }
                    Outcome::LionLimit { final_gap, .. } => {
                        prop_assert!(gaps.iter().all(|&g| g > jump - cfg.tie_tol));
                        prop_assert!(final_gap - jump <= 1e-6);
                    }
                    Outcome::ManEscapeCertified { liminf_gap, .. } => {
                        prop_assert!(t.certificate.is_some());
                        prop_assert!(liminf_gap > jump);
                    }
                    Outcome::Undecided { .. } => {}
                }
            }
        }
    }

    /// Spiral from any start with D < D_0 < 2D in the Euclidean plane.
    #[test]
    fn spiral_geometry(d0_ratio in 1.0001f64..1.9999, jump in 0.1f64..10.0, angle in 0.0f64..std::f64::consts::TAU, cw in any::<bool>()) {
        let d0 = d0_ratio * jump;
        let lion = Point::planar(0.3 * jump, -1.1 * jump);
        let [lx, ly] = lion.coords();
        let man = Point::planar(lx + d0 * angle.cos(), ly + d0 * angle.sin());
        let cfg = GameConfig::new(Space::euclidean(), Domain::WholeSpace, jump, lion, man).with_horizon(100);
        let t = play(&cfg, &mut ManStrategy::new(Policy::Spiral { clockwise: cw })).unwrap();
        let r = spiral_report(&t).unwrap();
        let scale = jump * jump;
        prop_assert!(r.max_recurrence_residual() < 1e-9 * scale.max(1.0));
        prop_assert!(r.halving_failures(1e-12 * jump).is_empty());
        prop_assert!(r.partial_sums.iter().all(|&s| s <= 2.0 * jump * (1.0 + 1e-12)));
        prop_assert!(r.containment_max_l <= 6.0 * jump && r.containment_max_m <= 7.0 * jump);
        prop_assert!(r.gap_identity_residual <= 1e-9 * jump.max(1.0));
        let outcome = classify_outcome(&t, 1e-6 * jump);
        prop_assert!(matches!(outcome, Outcome::LionLimit { .. }), "{:?}", outcome);
    }
}

#[test]
fn ray_escape_keeps_the_gap() {
    let ray = RayDescriptor::new(
        Space::poincare(),
        &Domain::WholeSpace,
        Point::disk(0.2, 0.1),
        RayDirection::Ideal { angle: 0.3 },
    )
    .unwrap();
    let base = Point::disk(-0.3, -0.2);
    let cfg =
        GameConfig::new(Space::poincare(), Domain::WholeSpace, 0.25, base, Point::disk(0.2, 0.1)).with_horizon(40);
    let t = play(&cfg, &mut ManStrategy::new(Policy::RayEscape { ray })).unwrap();
    assert!(t.invariant_violations().is_empty());
    let g = t.gaps();
    assert!(g.windows(2).all(|w| w[1] <= w[0] + 1e-7));
}

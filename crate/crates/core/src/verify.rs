//! Executable witnesses for the structural facts the game analysis relies on:
//! the spiral invariants in the plane, the fixed-point-free nonexpansive map
//! built from a geodesic ray, and a betweenness-based strong convexity probe.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Result};
use crate::game::GameTranscript;
use crate::metric::{betweenness_holds, busemann_max_defect, cat_max_residual, Betweenness, Point, Space, SpaceKind};
use crate::spaces::{bisect_max, domain_contains, sample_point, Domain, RayDescriptor, RayDirection, RiverHeading};

/// Quantities from a spiral play in the Euclidean plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpiralReport {
    pub jump: f64,
    /// `t_{i+1} = d(L_{i+1}, M_i)`.
    pub t_series: Vec<f64>,
    /// `α_{i+1} = arctan(t_{i+1} / D)`.
    pub alpha_series: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// `|(D + t_{i+2})² − D² − t_{i+1}²|` for consecutive terms.
    pub recurrence_residuals: Vec<f64>,
    /// `max |D_i − D − t_{i+1}|` over recorded rounds.
    pub gap_identity_residual: f64,
    pub containment_max_l: f64,
    pub containment_max_m: f64,
    /// `D_i > D` for every recorded gap, compared exactly.
    pub all_gaps_above_d: bool,
    /// `min_i (D_i − D)`.
    pub min_gap_excess: f64,
}

impl SpiralReport {
    /// Indices `k` where `t_{k+1} > floor` but `t_{k+2} ≥ t_{k+1} / 2`.
    pub fn halving_failures(&self, floor: f64) -> Vec<usize> {
        self.t_series
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > floor && w[1] >= w[0] / 2.0)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn max_recurrence_residual(&self) -> f64 {
        self.recurrence_residuals.iter().cloned().fold(0.0, f64::max)
    }
}

/// Builds the spiral report for a transcript played by the spiral strategy
/// in the Euclidean plane.
pub fn spiral_report(transcript: &GameTranscript) -> Result<SpiralReport> {
    let cfg = &transcript.config;
    if cfg.space.kind != SpaceKind::Euclidean || !transcript.strategy.starts_with("spiral") {
        return Err(unsupported(format!(
            "spiral report needs a spiral play in the Euclidean plane, got {} in {}",
            transcript.strategy,
            cfg.space.kind.id()
        )));
    }
    let d = cfg.jump;
    let t = transcript.post_gaps.clone();
    let alpha = t.iter().map(|x| (x / d).atan()).collect();
    let partial_sums = t
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let recurrence_residuals = t.windows(2).map(|w| ((d + w[1]).powi(2) - d * d - w[0] * w[0]).abs()).collect();
    let gap_identity_residual =
        transcript.steps.iter().zip(&t).map(|(s, ti)| (s.gap - d - ti).abs()).fold(0.0, f64::max);
    let origin = cfg.lion_start;
    let far = |pts: Vec<Point>| pts.iter().map(|p| cfg.space.raw_distance(&origin, p)).fold(0.0, f64::max);
    let gaps = transcript.gaps();
    Ok(SpiralReport {
        jump: d,
        alpha_series: alpha,
        partial_sums,
        recurrence_residuals,
        gap_identity_residual,
        containment_max_l: far(transcript.lion_path()),
        containment_max_m: far(transcript.man_path()),
        all_gaps_above_d: gaps.iter().all(|&g| g > d),
        min_gap_excess: gaps.iter().map(|g| g - d).fold(f64::INFINITY, f64::min),
        t_series: t,
    })
}

/// The map `f(x) = γ(d(γ(0), x) + 1)` for a geodesic ray `γ`. It moves every
/// point by at least 1 and is nonexpansive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FppWitness {
    pub ray: RayDescriptor,
}

impl FppWitness {
    pub fn new(ray: RayDescriptor) -> Self {
        FppWitness { ray }
    }

    pub fn basepoint(&self) -> Point {
        self.ray.basepoint
    }
}

pub fn fpp_map_eval(witness: &FppWitness, x: &Point) -> Result<Point> {
    let s = witness.ray.space.distance(&witness.ray.basepoint, x)?;
    witness.ray.eval(s + 1.0)
}

/// `min_x d(x, f(x))` over the samples.
pub fn fpp_no_fixed_point_check(witness: &FppWitness, samples: &[Point]) -> Result<f64> {
    let space = &witness.ray.space;
    samples.iter().try_fold(f64::INFINITY, |acc, x| Ok(acc.min(space.distance(x, &fpp_map_eval(witness, x)?)?)))
}

/// `max d(f(x), f(y)) − d(x, y)` over the sampled pairs.
pub fn fpp_nonexpansive_defect(witness: &FppWitness, pairs: &[(Point, Point)]) -> Result<f64> {
    let space = &witness.ray.space;
    pairs.iter().try_fold(f64::NEG_INFINITY, |acc, (x, y)| {
        let fx = fpp_map_eval(witness, x)?;
        let fy = fpp_map_eval(witness, y)?;
        Ok(acc.max(space.distance(&fx, &fy)? - space.distance(x, y)?))
    })
}

/// A default ray in each noncompact bundled space.
pub fn default_ray(space: &Space) -> Result<RayDescriptor> {
    let (base, dir) = match space.kind {
        SpaceKind::Euclidean => (Point::planar(0.0, 0.0), RayDirection::Planar { dx: 1.0, dy: 0.0 }),
        SpaceKind::Poincare => (Point::disk(0.0, 0.0), RayDirection::Ideal { angle: 0.0 }),
        SpaceKind::River => (Point::river(0.0, 1.0), RayDirection::River { heading: RiverHeading::Axis { sign: 1.0 } }),
        SpaceKind::Star { .. } => (Point::hub(), RayDirection::Arm { arm: 0 }),
        SpaceKind::SphereCap => return Err(unsupported("the sphere cap has no geodesic rays")),
    };
    RayDescriptor::new(*space, &Domain::WholeSpace, base, dir)
}

/// Outcome of a sampled probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub checked: usize,
    /// Constructions that degenerated (e.g. no room to extend past the boundary).
    pub skipped: usize,
    pub failures: usize,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures == 0
    }
}

/// Betweenness on quadruples built along extended geodesics.
///
/// Consecutive sample points form pairs `(x, z)`. For `j = 1..grid` we take
/// `y = γ_{xz}(j/grid)` and `w` on the extension of `[x, z]` beyond `z`, as
/// far as the domain allows, so `y ∈ [x, z]` and `z ∈ [y, w]` hold by
/// construction.
pub fn strong_convexity_probe(
    space: &Space,
    domain: &Domain,
    samples: &[Point],
    grid: usize,
    tol: f64,
) -> Result<ProbeReport> {
    let mut report = ProbeReport { checked: 0, skipped: 0, failures: 0 };
    for pair in samples.chunks_exact(2) {
        let (x, z) = (&pair[0], &pair[1]);
        let d = space.distance(x, z)?;
        if d <= space.tau_eq() {
            report.skipped += grid.saturating_sub(1);
            continue;
        }
        let room = bisect_max(d, |s| {
            space.extend_geodesic(x, z, s).and_then(|p| domain_contains(space, domain, &p, 0.0)).unwrap_or(false)
        });
        for j in 1..grid {
            let f = j as f64 / grid as f64;
            let y = space.geodesic_point(x, z, f)?;
            let w = space.extend_geodesic(x, z, room * f)?;
            match betweenness_holds(space, x, &y, z, &w, tol)? {
                Betweenness::Holds => report.checked += 1,
                Betweenness::Fails => {
                    report.checked += 1;
                    report.failures += 1;
                }
                Betweenness::HypothesisNotMet => report.skipped += 1,
            }
        }
    }
    Ok(report)
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub space: String,
    pub domain: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check_le(name: &str, value: f64, threshold: f64) -> Check {
    Check { name: name.into(), passed: value <= threshold, value, threshold }
}

fn check_ge(name: &str, value: f64, threshold: f64) -> Check {
    Check { name: name.into(), passed: value >= threshold, value, threshold }
}

/// Worst violations of the metric axioms over sampled triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricDefects {
    /// `max |d(x, y) − d(y, x)|`.
    pub asymmetry: f64,
    /// `max d(x, z) − d(x, y) − d(y, z)`.
    pub triangle: f64,
    /// `min d(x, y)`.
    pub min_distance: f64,
    /// `max d(x, x)`.
    pub self_distance: f64,
}

pub fn metric_axiom_defects(space: &Space, triples: &[[Point; 3]]) -> Result<MetricDefects> {
    let mut out =
        MetricDefects { asymmetry: 0.0, triangle: f64::NEG_INFINITY, min_distance: f64::INFINITY, self_distance: 0.0 };
    for [x, y, z] in triples {
        let (dxy, dyz, dxz) = (space.distance(x, y)?, space.distance(y, z)?, space.distance(x, z)?);
        out.asymmetry = out.asymmetry.max((dxy - space.distance(y, x)?).abs());
        out.triangle = out.triangle.max(dxz - dxy - dyz);
        out.min_distance = out.min_distance.min(dxy).min(dyz).min(dxz);
        out.self_distance = out.self_distance.max(space.distance(x, x)?);
    }
    Ok(out)
}

/// Worst `|d(x, γ(t)) − t·d(x, y)|`, `|d(γ(t), y) − (1−t)·d(x, y)|` and
/// `d(γ_{xy}(t), γ_{yx}(1−t))` over the samples.
pub fn geodesic_defects(space: &Space, samples: &[(Point, Point, f64)]) -> Result<(f64, f64)> {
    let (mut param, mut reverse) = (0.0f64, 0.0f64);
    for (x, y, t) in samples {
        let d = space.distance(x, y)?;
        let p = space.geodesic_point(x, y, *t)?;
        param = param.max((space.distance(x, &p)? - t * d).abs()).max((space.distance(&p, y)? - (1.0 - t) * d).abs());
        let q = space.geodesic_point(y, x, 1.0 - t)?;
        reverse = reverse.max(space.distance(&p, &q)?);
    }
    Ok((param, reverse))
}

/// The verification suite run by the command-line `verify` mode.
pub fn run_suite(space: &Space, domain: &Domain, seed: u64, samples: usize) -> Result<SuiteReport> {
    domain.validate(space)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = space.tau_geo();
    let draw = |rng: &mut ChaCha8Rng| sample_point(space, domain, rng);
    let mut checks = Vec::new();

    let triples: Vec<[Point; 3]> =
        (0..samples).map(|_| Ok([draw(&mut rng)?, draw(&mut rng)?, draw(&mut rng)?])).collect::<Result<_>>()?;
    let m = metric_axiom_defects(space, &triples)?;
    checks.push(check_le("metric symmetry", m.asymmetry, 1e-12));
    checks.push(check_le("triangle inequality", m.triangle, tau));
    checks.push(check_ge("nonnegativity", m.min_distance, 0.0));
    checks.push(check_le("zero self-distance", m.self_distance, space.tau_eq()));

    let geo: Vec<_> = triples.iter().map(|[x, y, _]| (*x, *y, rng.gen::<f64>())).collect();
    let (param, reverse) = geodesic_defects(space, &geo)?;
    checks.push(check_le("geodesic parametrization", param, tau));
    checks.push(check_le("segment consistency", reverse, tau));

    let mut outside = 0usize;
    for (x, y, t) in &geo {
        let p = space.geodesic_point(x, y, *t)?;
        if !domain_contains(space, domain, &p, 1e-9)? {
            outside += 1;
        }
    }
    checks.push(check_le("domain convexity (points outside)", outside as f64, 0.0));

    let pts: Vec<Point> = triples.iter().flat_map(|[x, y, _]| [*x, *y]).collect();
    let probe = strong_convexity_probe(space, domain, &pts, 4, tau)?;
    checks.push(Check {
        name: format!("betweenness ({} quadruples)", probe.checked),
        passed: probe.passed(),
        value: probe.failures as f64,
        threshold: 0.0,
    });

    let kappa = if space.kind == SpaceKind::SphereCap { 1.0 } else { 0.0 };
    let mut cat = f64::NEG_INFINITY;
    let mut busemann = f64::NEG_INFINITY;
    for [x, y, z] in triples.iter().take(samples.min(200)) {
        let perimeter = space.distance(x, y)? + space.distance(y, z)? + space.distance(x, z)?;
        if kappa > 0.0 && perimeter >= 2.0 * std::f64::consts::PI {
            continue;
        }
        cat = cat.max(cat_max_residual(space, x, y, z, kappa, 6)?);
        busemann = busemann.max(busemann_max_defect(space, (x, y), (x, z), 6)?);
    }
    checks.push(check_le(&format!("CAT({kappa}) comparison"), cat, tau));
    if space.kind != SpaceKind::SphereCap {
        checks.push(check_le("Busemann convexity", busemann, tau));
    }

    if let Ok(ray) = default_ray(space) {
        let witness = FppWitness::new(ray);
        let ambient = Domain::WholeSpace;
        let pts: Vec<Point> = (0..samples).map(|_| sample_point(space, &ambient, &mut rng)).collect::<Result<_>>()?;
        let pairs: Vec<(Point, Point)> = pts.windows(2).map(|w| (w[0], w[1])).collect();
        checks.push(check_ge(
            "fixed-point-free map displacement",
            fpp_no_fixed_point_check(&witness, &pts)?,
            1.0 - tau,
        ));
        checks.push(check_le("fixed-point-free map nonexpansiveness", fpp_nonexpansive_defect(&witness, &pairs)?, tau));
        let mut iso = 0.0f64;
        for _ in 0..100 {
            let (a, b) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            let d = space.distance(&ray.eval(a)?, &ray.eval(b)?)?;
            iso = iso.max((d - (a - b).abs()).abs());
        }
        checks.push(check_le("ray isometry", iso, tau));
    }

    Ok(SuiteReport { space: space.kind.id(), domain: domain.to_string(), seed, checks })
}

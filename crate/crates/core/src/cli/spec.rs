use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use super::{clap_err, io_err, CliError, Source};
use crate::game::GameConfig;
use crate::metric::{Point, Space, SpaceKind};
use crate::spaces::{Domain, RayDescriptor, RayDirection, RiverHeading};
use crate::strategy::Policy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Play one game and write its transcript.
    Play,
    /// Play a grid of games over initial gap and horizon.
    Sweep,
    /// Run the sampled verification suite on a space and domain.
    Verify,
    /// List the bundled spaces and strategies.
    Spaces,
}

#[derive(Debug, Parser)]
#[command(name = "geopursuit", version, about = "Discrete lion-and-man pursuit on uniquely geodesic spaces")]
struct Flags {
    #[arg(value_enum)]
    mode: Mode,
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    space: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// Maximal jump length.
    #[arg(long = "D", allow_hyphen_values = true)]
    jump: Option<String>,
    #[arg(long = "L0", allow_hyphen_values = true)]
    lion: Option<String>,
    #[arg(long = "M0", allow_hyphen_values = true)]
    man: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    strategy: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    horizon: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    /// Sample count for `verify`.
    #[arg(long, allow_hyphen_values = true)]
    samples: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    csv: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    json: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    svg: Option<String>,
    /// Comma-separated initial gaps for `sweep`; `M0` is moved along the ray from `L0`.
    #[arg(long = "sweep-D0", allow_hyphen_values = true)]
    sweep_d0: Option<String>,
    /// Comma-separated horizons for `sweep`.
    #[arg(long = "sweep-horizon", allow_hyphen_values = true)]
    sweep_horizon: Option<String>,
}

const TOP_KEYS: &[&str] =
    &["space", "domain", "D", "L0", "M0", "strategy", "horizon", "eps", "seed", "samples", "csv", "json", "svg"];
const SWEEP_KEYS: &[&str] = &["D0", "horizon"];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outputs {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    /// Initial gaps `D_0`.
    pub d0: Vec<f64>,
    pub horizon: Vec<usize>,
}

/// A fully parsed and validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub mode: Mode,
    pub space: Option<Space>,
    pub domain: Domain,
    /// Present for `play` and `sweep`.
    pub game: Option<GameConfig>,
    pub strategy: String,
    pub policy: Option<Policy>,
    pub outputs: Outputs,
    pub sweep: Option<SweepGrid>,
    pub seed: u64,
    pub samples: usize,
}

struct Settings {
    values: BTreeMap<String, (String, Source)>,
}

impl Settings {
    fn get(&self, key: &str) -> Option<(&str, &Source)> {
        self.values.get(key).map(|(v, s)| (v.as_str(), s))
    }

    fn parse<T>(&self, key: &str, f: impl FnOnce(&str) -> Result<T, String>) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some((v, src)) => {
                f(v).map(Some).map_err(|msg| CliError::Parse { key: key.to_string(), source_: src.clone(), msg })
            }
        }
    }

    fn require<T>(&self, key: &str, f: impl FnOnce(&str) -> Result<T, String>) -> Result<T, CliError> {
        self.parse(key, f)?.ok_or_else(|| CliError::Missing(key.to_string()))
    }

    fn error(&self, key: &str, msg: impl Into<String>) -> CliError {
        let source_ = self.get(key).map(|(_, s)| s.clone()).unwrap_or(Source::Default);
        CliError::Parse { key: key.to_string(), source_, msg: msg.into() }
    }
}

fn parse_config(text: &str) -> Result<BTreeMap<String, (String, Source)>, CliError> {
    let mut out = BTreeMap::new();
    let mut section = String::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim();
            if name != "sweep" {
                return Err(CliError::Usage(format!("config line {line_no}: unknown section [{name}]")));
            }
            section = name.to_string();
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {line_no}: expected `key = value`")));
        };
        let (key, value) = (key.trim(), value.trim());
        let allowed = if section.is_empty() { TOP_KEYS } else { SWEEP_KEYS };
        if !allowed.contains(&key) {
            let place = if section.is_empty() { String::new() } else { format!(" in [{section}]") };
            return Err(CliError::Parse {
                key: key.to_string(),
                source_: Source::Line(line_no),
                msg: format!("unknown key{place}"),
            });
        }
        let full = if section.is_empty() { key.to_string() } else { format!("{section}.{key}") };
        out.insert(full, (value.to_string(), Source::Line(line_no)));
    }
    Ok(out)
}

/// Parses flags (without the program name) and optional config text into a
/// validated [`RunSpec`]. Flags take precedence over config keys.
pub fn parse_run_spec<S: AsRef<str>>(args: &[S], config_text: Option<&str>) -> Result<RunSpec, CliError> {
    let argv = std::iter::once("geopursuit").chain(args.iter().map(|a| a.as_ref()));
    let flags = Flags::try_parse_from(argv).map_err(clap_err)?;
    build(flags, config_text)
}

/// Like [`parse_run_spec`], but reads the file named by `--config` if present.
pub fn load_run_spec<S: AsRef<str>>(args: &[S]) -> Result<RunSpec, CliError> {
    let argv = std::iter::once("geopursuit").chain(args.iter().map(|a| a.as_ref()));
    let flags = Flags::try_parse_from(argv).map_err(clap_err)?;
    let text = match &flags.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| io_err(path, e))?),
        None => None,
    };
    build(flags, text.as_deref())
}

fn build(flags: Flags, config_text: Option<&str>) -> Result<RunSpec, CliError> {
    let mut values = match config_text {
        Some(text) => parse_config(text)?,
        None => BTreeMap::new(),
    };
    let flag_values = [
        ("space", &flags.space),
        ("domain", &flags.domain),
        ("D", &flags.jump),
        ("L0", &flags.lion),
        ("M0", &flags.man),
        ("strategy", &flags.strategy),
        ("horizon", &flags.horizon),
        ("eps", &flags.eps),
        ("seed", &flags.seed),
        ("samples", &flags.samples),
        ("csv", &flags.csv),
        ("json", &flags.json),
        ("svg", &flags.svg),
        ("sweep.D0", &flags.sweep_d0),
        ("sweep.horizon", &flags.sweep_horizon),
    ];
    for (key, v) in flag_values {
        if let Some(v) = v {
            values.insert(key.to_string(), (v.clone(), Source::Flag));
        }
    }
    if !values.contains_key("seed") {
        if let Ok(v) = std::env::var("GEOPURSUIT_SEED") {
            values.insert("seed".into(), (v, Source::Env));
        }
    }
    let set = Settings { values };
    let mode = flags.mode;

    let seed = set.parse("seed", |v| v.parse::<u64>().map_err(|e| e.to_string()))?.unwrap_or(0);
    let samples = set.parse("samples", parse_count)?.unwrap_or(1000);
    let path = |v: &str| -> Result<PathBuf, String> {
        if v.is_empty() {
            Err("empty path".into())
        } else {
            Ok(PathBuf::from(v))
        }
    };
    let outputs =
        Outputs { csv: set.parse("csv", path)?, json: set.parse("json", path)?, svg: set.parse("svg", path)? };
    let strategy = set.get("strategy").map(|(v, _)| v.to_string()).unwrap_or_else(|| "stationary".into());

    let mut spec = RunSpec {
        mode,
        space: None,
        domain: Domain::WholeSpace,
        game: None,
        strategy,
        policy: None,
        outputs,
        sweep: None,
        seed,
        samples,
    };
    if mode == Mode::Spaces {
        return Ok(spec);
    }

    let space = set.require("space", parse_space)?;
    let domain = set.parse("domain", |v| parse_domain(&space, v))?.unwrap_or(Domain::WholeSpace);
    domain.validate(&space).map_err(|e| set.error("domain", e.to_string()))?;
    spec.space = Some(space);
    spec.domain = domain;
    if mode == Mode::Verify {
        return Ok(spec);
    }

    let jump = set.require("D", parse_real)?;
    if !(jump > 0.0 && jump.is_finite()) {
        return Err(set.error("D", format!("jump length must be positive, got {jump}")));
    }
    let lion = set.require("L0", |v| parse_point(&space, v))?;
    let man = set.require("M0", |v| parse_point(&space, v))?;
    let mut game = GameConfig::new(space, domain, jump, lion, man);
    if let Some(h) = set.parse("horizon", parse_count)? {
        game = game.with_horizon(h);
    }
    if let Some(eps) = set.parse("eps", parse_real)? {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(set.error("eps", format!("tolerance must be positive, got {eps}")));
        }
        game = game.with_win_tol(eps);
    }
    game.validate().map_err(CliError::Engine)?;
    let policy = parse_strategy(&spec.strategy, &game).map_err(|msg| set.error("strategy", msg))?;

    if mode == Mode::Sweep {
        let d0 = set.parse("sweep.D0", |v| parse_list(v, parse_real))?.unwrap_or_else(|| vec![game_gap(&game)]);
        if let Some(bad) = d0.iter().find(|d| !(**d >= 0.0 && d.is_finite())) {
            return Err(set.error("sweep.D0", format!("initial gap {bad} must be nonnegative")));
        }
        let horizon = set.parse("sweep.horizon", |v| parse_list(v, parse_count))?.unwrap_or(vec![game.horizon]);
        spec.sweep = Some(SweepGrid { d0, horizon });
    }
    spec.game = Some(game);
    spec.policy = Some(policy);
    Ok(spec)
}

fn game_gap(game: &GameConfig) -> f64 {
    game.space.distance(&game.lion_start, &game.man_start).unwrap_or(f64::NAN)
}

fn parse_real(v: &str) -> Result<f64, String> {
    let x: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{v}` is not finite"))
    }
}

fn parse_count(v: &str) -> Result<usize, String> {
    v.trim().parse().map_err(|_| format!("`{v}` is not a nonnegative integer"))
}

fn parse_list<T>(v: &str, f: fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    let items: Vec<T> = v.split(',').filter(|s| !s.trim().is_empty()).map(f).collect::<Result<_, _>>()?;
    if items.is_empty() {
        Err("empty list".into())
    } else {
        Ok(items)
    }
}

fn parse_pair(v: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = v.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("`{v}` is not a coordinate pair `a,b`"));
    }
    Ok((parse_real(parts[0])?, parse_real(parts[1])?))
}

/// `euclidean`, `poincare`, `sphere-cap`, `river`, `star` (three arms) or `star:N`.
pub fn parse_space(v: &str) -> Result<Space, String> {
    match v.trim() {
        "euclidean" => Ok(Space::euclidean()),
        "poincare" => Ok(Space::poincare()),
        "sphere-cap" => Ok(Space::sphere_cap()),
        "river" => Ok(Space::river()),
        "star" => Ok(Space::star(3)),
        other => match other.strip_prefix("star:").map(str::parse::<usize>) {
            Some(Ok(arms)) if arms >= 1 => Ok(Space::star(arms)),
            Some(_) => Err(format!("`{other}`: star trees need a positive arm count")),
            None => Err(format!("unknown space `{other}`")),
        },
    }
}

/// Parses `a,b` in the chart of `space`: `x,y` for planar charts,
/// `theta,phi` on the sphere cap and `arm,s` on star trees.
pub fn parse_point(space: &Space, v: &str) -> Result<Point, String> {
    let p = match space.kind {
        SpaceKind::Star { .. } => {
            let (arm, s) = v.split_once(',').ok_or_else(|| format!("`{v}` is not `arm,s`"))?;
            let arm = arm.trim().parse::<usize>().map_err(|_| format!("arm `{arm}` is not an index"))?;
            Point::star(arm, parse_real(s)?)
        }
        kind => {
            let (a, b) = parse_pair(v)?;
            match kind {
                SpaceKind::Euclidean => Point::planar(a, b),
                SpaceKind::Poincare => Point::disk(a, b),
                SpaceKind::SphereCap => Point::sphere(a, b),
                _ => Point::river(a, b),
            }
        }
    };
    space.check(&p).map_err(|e| e.to_string())?;
    Ok(p)
}

/// `whole`, `ball c=<point> r=<radius>` or `halfplane n=<a,b> c=<offset>`.
pub fn parse_domain(space: &Space, v: &str) -> Result<Domain, String> {
    let mut words = v.split_whitespace();
    let kind = words.next().unwrap_or("");
    let mut fields = BTreeMap::new();
    for w in words {
        let (k, val) = w.split_once('=').ok_or_else(|| format!("`{w}` is not `name=value`"))?;
        fields.insert(k, val);
    }
    let field = |k: &str| fields.get(k).copied().ok_or_else(|| format!("domain `{kind}` needs `{k}=`"));
    let expect = |names: &[&str]| -> Result<(), String> {
        match fields.keys().find(|k| !names.contains(k)) {
            Some(k) => Err(format!("unexpected domain field `{k}`")),
            None => Ok(()),
        }
    };
    let domain = match kind {
        "whole" => {
            expect(&[])?;
            Domain::WholeSpace
        }
        "ball" => {
            expect(&["c", "r"])?;
            Domain::ball(parse_point(space, field("c")?)?, parse_real(field("r")?)?)
        }
        "halfplane" => {
            expect(&["n", "c"])?;
            let (a, b) = parse_pair(field("n")?)?;
            if a == 0.0 && b == 0.0 {
                return Err("half-plane normal must be nonzero".into());
            }
            Domain::half_plane([a, b], parse_real(field("c")?)?)
        }
        other => return Err(format!("unknown domain `{other}`")),
    };
    domain.validate(space).map_err(|e| e.to_string())?;
    Ok(domain)
}

/// Resolves a strategy id against a game. Rays start at the man's initial position.
pub fn parse_strategy(id: &str, game: &GameConfig) -> Result<Policy, String> {
    let id = id.trim();
    let policy = match id {
        "stationary" => Policy::Stationary,
        "spiral" => Policy::Spiral { clockwise: true },
        "spiral-ccw" => Policy::Spiral { clockwise: false },
        "flee" => Policy::RadialFlee,
        "random" => Policy::Random,
        _ => {
            if let Some(rest) = id.strip_prefix("reverse@") {
                let (k, base) = match rest.split_once(':') {
                    Some((k, base)) => (k, parse_strategy(base, game)?),
                    None => (rest, Policy::Spiral { clockwise: true }),
                };
                let k = k.parse::<usize>().map_err(|_| format!("`{k}` is not a step index"))?;
                if k == 0 {
                    return Err("reverse@k needs k ≥ 1".into());
                }
                Policy::ReverseAtStep { k, base: Box::new(base) }
            } else if let Some(dir) = id.strip_prefix("ray:") {
                let direction = parse_ray_direction(&game.space, dir)?;
                let ray = RayDescriptor::new(game.space, &game.domain, game.man_start, direction)
                    .map_err(|e| e.to_string())?;
                Policy::RayEscape { ray }
            } else if let Some(path) = id.strip_prefix("scripted:") {
                Policy::Scripted { moves: read_script(&game.space, Path::new(path))? }
            } else {
                return Err(format!("unknown strategy `{id}`"));
            }
        }
    };
    if matches!(policy, Policy::Spiral { .. }) && game.space.kind != SpaceKind::Euclidean {
        return Err("the spiral strategy needs the euclidean space".into());
    }
    Ok(policy)
}

fn parse_ray_direction(space: &Space, v: &str) -> Result<RayDirection, String> {
    let axis = |v: &str| match v {
        "+x" => Some((1.0, 0.0)),
        "-x" => Some((-1.0, 0.0)),
        "+y" => Some((0.0, 1.0)),
        "-y" => Some((0.0, -1.0)),
        _ => None,
    };
    match space.kind {
        SpaceKind::Euclidean => {
            let (dx, dy) = match axis(v) {
                Some(d) => d,
                None => parse_pair(v)?,
            };
            Ok(RayDirection::Planar { dx, dy })
        }
        SpaceKind::Poincare => {
            let angle = match axis(v) {
                Some((dx, dy)) => f64::atan2(dy, dx),
                None => parse_real(v.strip_prefix("ideal=").unwrap_or(v))?,
            };
            Ok(RayDirection::Ideal { angle })
        }
        SpaceKind::River => {
            let heading = match v {
                "axis+" | "+x" => RiverHeading::Axis { sign: 1.0 },
                "axis-" | "-x" => RiverHeading::Axis { sign: -1.0 },
                "up" | "+y" => RiverHeading::Vertical { sign: 1.0 },
                "down" | "-y" => RiverHeading::Vertical { sign: -1.0 },
                _ => return Err(format!("unknown river heading `{v}` (axis+, axis-, up, down)")),
            };
            Ok(RayDirection::River { heading })
        }
        SpaceKind::Star { .. } => {
            let arm = v.strip_prefix("arm=").unwrap_or(v);
            let arm = arm.parse::<usize>().map_err(|_| format!("`{v}` is not an arm index"))?;
            Ok(RayDirection::Arm { arm })
        }
        SpaceKind::SphereCap => Err("sphere-cap domains contain no rays".into()),
    }
}

/// One point per line in the same notation as `L0`/`M0`; `#` starts a comment.
fn read_script(space: &Space, path: &Path) -> Result<Vec<Point>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    text.lines()
        .enumerate()
        .filter_map(|(n, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((n + 1, l))
        })
        .map(|(n, l)| parse_point(space, l).map_err(|e| format!("{}:{n}: {e}", path.display())))
        .collect()
}

//! Python bindings: spaces, games and verification reports.
//!
//! Points are `(a, b)` tuples in the chart of their space (`(x, y)`,
//! `(theta, phi)` or `(arm, s)`); spaces, domains and strategies use the same
//! identifiers as the command-line tool.

use geopursuit::cli::{parse_domain, parse_space, parse_strategy, transcript_csv};
use geopursuit::metric::{self, ComparisonTriangle};
use geopursuit::verify::{run_suite, spiral_report};
use geopursuit::{classify_outcome, GameConfig, GameTranscript, ManStrategy, Point, SpaceKind};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

fn engine_err(e: geopursuit::Error) -> PyErr {
    match e {
        geopursuit::Error::IllegalMove { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_bound_py_any(py)?,
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_bound_py_any(py)?,
            None => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)?,
        },
        Value::String(s) => s.into_bound_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

/// A bundled model space: `euclidean`, `poincare`, `sphere-cap`, `river`, `star` or `star:N`.
#[pyclass(name = "Space", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PySpace {
    inner: geopursuit::Space,
}

impl PySpace {
    fn point(&self, p: (f64, f64)) -> PyResult<Point> {
        let point = match self.inner.kind {
            SpaceKind::Euclidean => Point::planar(p.0, p.1),
            SpaceKind::Poincare => Point::disk(p.0, p.1),
            SpaceKind::SphereCap => Point::sphere(p.0, p.1),
            SpaceKind::River => Point::river(p.0, p.1),
            SpaceKind::Star { .. } => {
                if p.0 < 0.0 || p.0.fract() != 0.0 {
                    return Err(PyValueError::new_err(format!("arm index {} is not a nonnegative integer", p.0)));
                }
                Point::star(p.0 as usize, p.1)
            }
        };
        self.inner.check(&point).map_err(engine_err)?;
        Ok(point)
    }
}

fn coords(p: &Point) -> (f64, f64) {
    let [a, b] = p.coords();
    (a, b)
}

#[pymethods]
impl PySpace {
    #[new]
    fn new(kind: &str) -> PyResult<Self> {
        Ok(PySpace { inner: parse_space(kind).map_err(PyValueError::new_err)? })
    }

    #[getter]
    fn id(&self) -> String {
        self.inner.kind.id()
    }

    fn distance(&self, x: (f64, f64), y: (f64, f64)) -> PyResult<f64> {
        self.inner.distance(&self.point(x)?, &self.point(y)?).map_err(engine_err)
    }

    /// Point at parameter `t ∈ [0, 1]` on the segment from `x` to `y`.
    fn geodesic_point(&self, x: (f64, f64), y: (f64, f64), t: f64) -> PyResult<(f64, f64)> {
        let p = self.inner.geodesic_point(&self.point(x)?, &self.point(y)?, t).map_err(engine_err)?;
        Ok(coords(&p))
    }

    /// Point at distance `s` beyond `y` on the geodesic from `x` through `y`.
    fn extend_geodesic(&self, x: (f64, f64), y: (f64, f64), s: f64) -> PyResult<(f64, f64)> {
        let p = self.inner.extend_geodesic(&self.point(x)?, &self.point(y)?, s).map_err(engine_err)?;
        Ok(coords(&p))
    }

    #[pyo3(signature = (x, y, z, tol=1e-9))]
    fn is_between(&self, x: (f64, f64), y: (f64, f64), z: (f64, f64), tol: f64) -> PyResult<bool> {
        metric::is_between(&self.inner, &self.point(x)?, &self.point(y)?, &self.point(z)?, tol).map_err(engine_err)
    }

    /// Largest CAT(κ) residual over a grid on all side pairs of the triangle.
    #[pyo3(signature = (x1, x2, x3, kappa=0.0, grid=8))]
    fn cat_residual(&self, x1: (f64, f64), x2: (f64, f64), x3: (f64, f64), kappa: f64, grid: usize) -> PyResult<f64> {
        metric::cat_max_residual(&self.inner, &self.point(x1)?, &self.point(x2)?, &self.point(x3)?, kappa, grid)
            .map_err(engine_err)
    }

    fn __repr__(&self) -> String {
        format!("Space('{}')", self.inner.kind.id())
    }
}

/// Distance between the points at arclengths `s1` and `s2` along the two
/// sides (lengths `a`, `b`, opposite side `c`) of a triangle in `M²_κ`.
#[pyfunction]
#[pyo3(signature = (a, b, c, s1, s2, kappa=0.0))]
fn comparison_point_distance(a: f64, b: f64, c: f64, s1: f64, s2: f64, kappa: f64) -> PyResult<f64> {
    let tri = ComparisonTriangle::new(a, b, c, kappa).map_err(engine_err)?;
    metric::comparison_point_distance(&tri, s1, s2).map_err(engine_err)
}

/// A finished game.
#[pyclass(name = "Transcript", frozen)]
struct PyTranscript {
    inner: GameTranscript,
}

#[pymethods]
impl PyTranscript {
    #[getter]
    fn strategy(&self) -> String {
        self.inner.strategy.clone()
    }

    /// `D_0, …, D_H`.
    #[getter]
    fn gaps(&self) -> Vec<f64> {
        self.inner.gaps()
    }

    /// `d(L_{i+1}, M_i)` for each round.
    #[getter]
    fn post_gaps(&self) -> Vec<f64> {
        self.inner.post_gaps.clone()
    }

    #[getter]
    fn lion_path(&self) -> Vec<(f64, f64)> {
        self.inner.lion_path().iter().map(coords).collect()
    }

    #[getter]
    fn man_path(&self) -> Vec<(f64, f64)> {
        self.inner.man_path().iter().map(coords).collect()
    }

    /// Classification as a dict with a `variant` key.
    #[pyo3(signature = (eps=None))]
    fn outcome<'py>(&self, py: Python<'py>, eps: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify_outcome(&self.inner, eps.unwrap_or(self.inner.config.win_tol)))
    }

    fn invariant_violations(&self) -> Vec<String> {
        self.inner.invariant_violations()
    }

    fn spiral_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &spiral_report(&self.inner).map_err(engine_err)?)
    }

    fn to_csv(&self) -> String {
        transcript_csv(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.steps.len()
    }
}

/// Plays one game. The domain and strategy strings follow the command-line syntax.
#[pyfunction]
#[pyo3(signature = (space, jump, lion, man, strategy="stationary", domain="whole", horizon=100, eps=1e-6, seed=0))]
#[allow(clippy::too_many_arguments)]
fn play(
    space: &PySpace,
    jump: f64,
    lion: (f64, f64),
    man: (f64, f64),
    strategy: &str,
    domain: &str,
    horizon: usize,
    eps: f64,
    seed: u64,
) -> PyResult<PyTranscript> {
    let dom = parse_domain(&space.inner, domain).map_err(PyValueError::new_err)?;
    let cfg = GameConfig::new(space.inner, dom, jump, space.point(lion)?, space.point(man)?)
        .with_horizon(horizon)
        .with_win_tol(eps);
    cfg.validate().map_err(engine_err)?;
    let policy = parse_strategy(strategy, &cfg).map_err(PyValueError::new_err)?;
    let t = geopursuit::play(&cfg, &mut ManStrategy::seeded(policy, seed)).map_err(engine_err)?;
    Ok(PyTranscript { inner: t })
}

/// Runs the sampled verification suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (space, domain="whole", seed=0, samples=1000))]
fn verify<'py>(
    py: Python<'py>,
    space: &PySpace,
    domain: &str,
    seed: u64,
    samples: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let dom = parse_domain(&space.inner, domain).map_err(PyValueError::new_err)?;
    to_py(py, &run_suite(&space.inner, &dom, seed, samples).map_err(engine_err)?)
}

#[pymodule]
#[pyo3(name = "geopursuit")]
fn geopursuit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_class::<PyTranscript>()?;
    m.add_function(wrap_pyfunction!(comparison_point_distance, m)?)?;
    m.add_function(wrap_pyfunction!(play, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

//! Discrete Lion-Man pursuit on uniquely geodesic model spaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`metric`]: the [`Space`] handle, points, comparison triangles and
//!   sampled geometric probes (betweenness, CAT(κ), Busemann convexity).
//! - [`spaces`]: the bundled model spaces (Euclidean plane, Poincaré disk,
//!   sphere cap, river plane, star tree), their domains and geodesic rays.
//! - [`game`]: the game loop, transcripts and outcome classification.
//! - [`strategy`]: bundled man policies.
//! - [`verify`]: executable witnesses (spiral report, fixed-point-free map,
//!   strong convexity probe).
//! - [`cli`]: the batch runner behind the `geopursuit` binary.

pub mod cli;
pub mod error;
pub mod game;
pub mod metric;
pub mod spaces;
pub mod strategy;
pub mod verify;

pub use error::{Error, Result};
pub use game::{classify_outcome, lion_step, play, validate_man_move, GameConfig, GameTranscript, Outcome, StepRecord};

pub use metric::{Point, Space, SpaceKind};
pub use spaces::{Domain, RayDescriptor, RayDirection};
pub use strategy::{ManStrategy, Policy};

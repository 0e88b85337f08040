//! The discrete Lion-Man game.
//!
//! Each round `i` the lion moves from `L_i` a distance `min{D, D_i}` along
//! the geodesic toward `M_i`, producing `L_{i+1}`; the man then picks
//! `M_{i+1}` within distance `D` of `M_i`, seeing the whole history
//! including `L_{i+1}`. The lion wins iff `d(L_{i+1}, M_i) → 0`.

mod outcome;
mod transcript;

pub use outcome::{classify_outcome, Outcome};
pub use transcript::{GameTranscript, StepRecord};

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::metric::{Point, Space, TAU_EQ};
use crate::spaces::{domain_contains, Domain};
use crate::strategy::ManStrategy;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    pub space: Space,
    pub domain: Domain,
    /// Jump bound `D`.
    pub jump: f64,
    pub lion_start: Point,
    pub man_start: Point,
    pub horizon: usize,
    /// `ε` for the finite-horizon reading of the limit condition.
    pub win_tol: f64,
    /// Gaps within this distance of `D` are not resolved as capture.
    pub tie_tol: f64,
}

impl GameConfig {
    pub fn new(space: Space, domain: Domain, jump: f64, lion_start: Point, man_start: Point) -> Self {
        GameConfig { space, domain, jump, lion_start, man_start, horizon: 100, win_tol: 1e-6, tie_tol: TAU_EQ }
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn with_win_tol(mut self, eps: f64) -> Self {
        self.win_tol = eps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.domain.validate(&self.space)?;
        if !(self.jump > 0.0 && self.jump.is_finite()) {
            return Err(contract(format!("jump bound D = {} must be positive", self.jump)));
        }
        if self.horizon == 0 {
            return Err(contract("horizon must be at least 1"));
        }
        if self.win_tol.is_nan() || self.win_tol <= 0.0 || self.tie_tol.is_nan() || self.tie_tol < 0.0 {
            return Err(contract("win and tie tolerances must be positive"));
        }
        let tol = self.space.tau_geo();
        for (who, p) in [("lion", &self.lion_start), ("man", &self.man_start)] {
            if !domain_contains(&self.space, &self.domain, p, tol)? {
                return Err(contract(format!("{who} start {p} lies outside the domain {}", self.domain)));
            }
        }
        Ok(())
    }
}

/// `L' ∈ [L, M]` with `d(L, L') = min{D, d(L, M)}`; lands exactly on `M`
/// when the man is within reach.
pub fn lion_step(space: &Space, lion: &Point, man: &Point, jump: f64) -> Result<Point> {
    let d = space.distance(lion, man)?;
    if d <= jump {
        return Ok(*man);
    }
    space.geodesic_point(lion, man, jump / d)
}

/// The man's move stays in the domain and has length at most `D` (up to `tol`).
pub fn validate_man_move(
    space: &Space,
    domain: &Domain,
    from: &Point,
    to: &Point,
    jump: f64,
    tol: f64,
) -> Result<bool> {
    Ok(domain_contains(space, domain, to, tol)? && space.distance(from, to)? <= jump + tol)
}

/// What a strategy sees when choosing `M_{i+1}`.
#[derive(Debug, Clone, Copy)]
pub struct GameView<'a> {
    pub config: &'a GameConfig,
    /// Round index `i`.
    pub step: usize,
    /// `L_i`.
    pub lion: Point,
    /// `M_i`.
    pub man: Point,
    /// `L_{i+1}`, already computed.
    pub lion_next: Point,
    /// Completed rounds `0..i`.
    pub history: &'a [StepRecord],
}

/// Plays `config.horizon` rounds against `strategy`.
pub fn play(config: &GameConfig, strategy: &mut ManStrategy) -> Result<GameTranscript> {
    config.validate()?;
    let space = &config.space;
    let tol = space.tau_geo();
    let mut steps = Vec::with_capacity(config.horizon);
    let mut post_gaps = Vec::with_capacity(config.horizon);
    let (mut lion, mut man) = (config.lion_start, config.man_start);
    for i in 0..config.horizon {
        let gap = space.distance(&lion, &man)?;
        let lion_next = lion_step(space, &lion, &man, config.jump)?;
        let view = GameView { config, step: i, lion, man, lion_next, history: &steps };
        let man_next = strategy.next_move(&view).map_err(|e| match e {
            Error::IllegalMove { .. } => e,
            other => Error::IllegalMove { step: i, reason: other.to_string() },
        })?;
        if !validate_man_move(space, &config.domain, &man, &man_next, config.jump, tol)? {
            return Err(Error::IllegalMove {
                step: i,
                reason: format!(
                    "move {man} -> {man_next} has length {} or leaves the domain",
                    space.distance(&man, &man_next)?
                ),
            });
        }
        post_gaps.push(space.distance(&lion_next, &man)?);
        steps.push(StepRecord {
            index: i,
            lion,
            man,
            gap,
            lion_move_len: space.distance(&lion, &lion_next)?,
            man_move_len: space.distance(&man, &man_next)?,
        });
        lion = lion_next;
        man = man_next;
    }
    let final_gap = space.distance(&lion, &man)?;
    Ok(GameTranscript {
        config: *config,
        strategy: strategy.id(),
        steps,
        post_gaps,
        final_lion: lion,
        final_man: man,
        final_gap,
        certificate: strategy.certificate(),
    })
}

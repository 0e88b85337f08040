use serde::{Deserialize, Serialize};

use super::GameConfig;
use crate::metric::Point;
use crate::spaces::RayDescriptor;

/// State at the start of round `index` together with the moves made in it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    /// `L_i`.
    pub lion: Point,
    /// `M_i`.
    pub man: Point,
    /// `D_i = d(L_i, M_i)`.
    pub gap: f64,
    /// `d(L_i, L_{i+1})`.
    pub lion_move_len: f64,
    /// `d(M_i, M_{i+1})`.
    pub man_move_len: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub config: GameConfig,
    pub strategy: String,
    pub steps: Vec<StepRecord>,
    /// `d(L_{i+1}, M_i)` for each recorded round.
    pub post_gaps: Vec<f64>,
    pub final_lion: Point,
    pub final_man: Point,
    /// `D_H` after the last round.
    pub final_gap: f64,
    /// Ray the man's strategy attests to follow, if any.
    pub certificate: Option<RayDescriptor>,
}

impl GameTranscript {
    /// `D_0, …, D_H`, including the state after the last round.
    pub fn gaps(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.gap).chain(std::iter::once(self.final_gap)).collect()
    }

    /// Positions `L_0, …, L_H`.
    pub fn lion_path(&self) -> Vec<Point> {
        self.steps.iter().map(|s| s.lion).chain(std::iter::once(self.final_lion)).collect()
    }

    /// Positions `M_0, …, M_H`.
    pub fn man_path(&self) -> Vec<Point> {
        self.steps.iter().map(|s| s.man).chain(std::iter::once(self.final_man)).collect()
    }

    /// First index `i` with `D_{i+1} > D_i + tol` while `D_i > D`, if any.
    pub fn monotone_gap_violation(&self, tol: f64) -> Option<usize> {
        let jump = self.config.jump;
        let gaps = self.gaps();
        gaps.windows(2).position(|w| w[0] > jump && w[1] > w[0] + tol)
    }

    /// Checks the per-step invariants of the game rules and returns one
    /// message per violation.
    pub fn invariant_violations(&self) -> Vec<String> {
        let jump = self.config.jump;
        let tol = self.config.space.tau_geo();
        let mut out = Vec::new();
        for (k, s) in self.steps.iter().enumerate() {
            if s.index != k {
                out.push(format!("step index {} at position {k}", s.index));
            }
            if (s.lion_move_len - jump.min(s.gap)).abs() > tol {
                out.push(format!(
                    "step {k}: lion moved {} instead of min(D, D_i) = {}",
                    s.lion_move_len,
                    jump.min(s.gap)
                ));
            }
            if s.man_move_len > jump + tol {
                out.push(format!("step {k}: man moved {} > D", s.man_move_len));
            }
            let expected = s.gap - jump.min(s.gap);
            if (self.post_gaps[k] - expected).abs() > tol {
                out.push(format!(
                    "step {k}: post gap {} differs from D_i - min(D, D_i) = {expected}",
                    self.post_gaps[k]
                ));
            }
        }
        if let Some(i) = self.monotone_gap_violation(tol) {
            out.push(format!("step {i}: gap increased while above D"));
        }
        let tie = self.config.tie_tol;
        if let Some(i0) = self.gaps().iter().position(|&g| g <= jump - tie) {
            if let Some(k) = self.post_gaps.iter().skip(i0).position(|&g| g > tol) {
                out.push(format!("step {}: lion lost contact after capture at {i0}", i0 + k));
            }
        }
        out
    }
}

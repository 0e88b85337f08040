use serde::{Deserialize, Serialize};

use super::GameTranscript;
use crate::spaces::RayDescriptor;

/// Finite-horizon classification of a play.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum Outcome {
    /// Some `D_{i0} ≤ D`; `i0` is the earliest such index.
    LionCapture { i0: usize },
    /// `D_i > D` throughout, nonincreasing, and within `ε` of `D` at the horizon.
    LionLimit { final_gap: f64, monotone_certified: bool },
    /// The man followed an attested geodesic ray keeping the gap bounded away from `D`.
    ManEscapeCertified { liminf_gap: f64, certificate: RayDescriptor },
    /// None of the above could be established within the horizon.
    Undecided { final_gap: f64, trend: f64 },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::LionCapture { .. } => "LionCapture",
            Outcome::LionLimit { .. } => "LionLimit",
            Outcome::ManEscapeCertified { .. } => "ManEscapeCertified",
            Outcome::Undecided { .. } => "Undecided",
        }
    }

    pub fn lion_wins(&self) -> bool {
        matches!(self, Outcome::LionCapture { .. } | Outcome::LionLimit { .. })
    }
}

/// Classifies a transcript with limit tolerance `eps`.
///
/// A gap counts as capture only when it is at least `tie_tol` below `D`;
/// gaps that agree with `D` to within `tie_tol` cannot be told apart from
/// the limit case in floating point.
pub fn classify_outcome(transcript: &GameTranscript, eps: f64) -> Outcome {
    let cfg = &transcript.config;
    let jump = cfg.jump;
    let gaps = transcript.gaps();
    if let Some(i0) = gaps.iter().position(|&g| g <= jump - cfg.tie_tol) {
        return Outcome::LionCapture { i0 };
    }
    let tol = cfg.space.tau_geo();
    let last = *gaps.last().expect("transcripts hold at least one gap");
    let monotone = gaps.windows(2).all(|w| w[1] <= w[0] + tol);
    if last - jump <= eps && monotone {
        return Outcome::LionLimit { final_gap: last, monotone_certified: true };
    }
    let mid = gaps[gaps.len() / 2];
    let half = (gaps.len() / 2).max(1) as f64;
    if let Some(ray) = transcript.certificate {
        let floor = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
        if floor - jump > eps && (last - mid).abs() <= tol {
            let liminf_gap = gaps[gaps.len() / 2..].iter().cloned().fold(f64::INFINITY, f64::min);
            return Outcome::ManEscapeCertified { liminf_gap, certificate: ray };
        }
    }
    Outcome::Undecided { final_gap: last, trend: (last - mid) / half }
}

use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::output::{outcome_json, svg_plot, transcript_csv};
use super::spec::{parse_strategy, Mode, RunSpec};
use super::{io_err, CliError, SPACE_IDS, STRATEGY_IDS};
use crate::game::{classify_outcome, play, GameConfig, GameTranscript, Outcome};
use crate::spaces::domain_contains;
use crate::strategy::ManStrategy;
use crate::verify::{run_suite, spiral_report};

/// What a finished run reports back to the binary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    /// 0 when every asserted invariant holds, 1 otherwise.
    pub exit_code: i32,
    /// Lines for standard output.
    pub stdout: Vec<String>,
}

pub fn run(spec: &RunSpec) -> Result<RunReport, CliError> {
    match spec.mode {
        Mode::Play => run_play(spec),
        Mode::Sweep => run_sweep(spec),
        Mode::Verify => run_verify(spec),
        Mode::Spaces => run_spaces(spec),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn play_one(game: &GameConfig, spec: &RunSpec) -> Result<(GameTranscript, Outcome), CliError> {
    let policy = parse_strategy(&spec.strategy, game)
        .map_err(|msg| CliError::Usage(format!("invalid value for `strategy`: {msg}")))?;
    let mut man = ManStrategy::seeded(policy, spec.seed);
    let transcript = play(game, &mut man)?;
    let outcome = classify_outcome(&transcript, game.win_tol);
    Ok((transcript, outcome))
}

fn run_play(spec: &RunSpec) -> Result<RunReport, CliError> {
    let game = spec.game.as_ref().expect("play specs carry a game");
    let (t, outcome) = play_one(game, spec)?;
    let mut record = outcome_json(&t, &outcome, game.win_tol);
    if t.strategy.starts_with("spiral") {
        if let Ok(r) = spiral_report(&t) {
            record["spiral"] = json!({
                "max_recurrence_residual": r.max_recurrence_residual(),
                "partial_sum": r.partial_sums.last().copied(),
                "gap_identity_residual": r.gap_identity_residual,
                "containment_max_lion": r.containment_max_l,
                "containment_max_man": r.containment_max_m,
                "min_gap_excess": r.min_gap_excess,
            });
        }
    }
    let violations = t.invariant_violations();
    let out = &spec.outputs;
    if let Some(p) = &out.csv {
        write(p, &transcript_csv(&t))?;
    }
    if let Some(p) = &out.json {
        write(p, &pretty(&record))?;
    }
    let mut stdout = Vec::new();
    if let Some(p) = &out.svg {
        match svg_plot(&t) {
            Some(svg) => write(p, &svg)?,
            None => stdout.push(format!("note: no planar picture for {}; svg skipped", game.space.kind.id())),
        }
    }
    if out.csv.is_none() && out.json.is_none() {
        stdout.push(pretty(&record).trim_end().to_string());
    } else {
        stdout.push(format!("{} after {} rounds, final gap {:.16e}", outcome.name(), game.horizon, t.final_gap));
    }
    stdout.extend(violations.iter().map(|v| format!("invariant violated: {v}")));
    Ok(RunReport { exit_code: if violations.is_empty() { 0 } else { 1 }, stdout })
}

/// Places the man at distance `d0` from the lion on the geodesic through the configured start.
fn with_initial_gap(game: &GameConfig, d0: f64) -> Result<GameConfig, CliError> {
    let (space, l) = (&game.space, &game.lion_start);
    let d = space.distance(l, &game.man_start)?;
    if d == 0.0 {
        return Err(CliError::Usage("sweep needs M0 distinct from L0 to fix a direction".into()));
    }
    let man = if d0 <= d {
        space.geodesic_point(l, &game.man_start, d0 / d)?
    } else {
        space.extend_geodesic(l, &game.man_start, d0 - d)?
    };
    if !domain_contains(space, &game.domain, &man, space.tau_geo())? {
        return Err(CliError::Usage(format!("sweep initial gap {d0} puts the man outside the domain")));
    }
    let mut g = *game;
    g.man_start = man;
    Ok(g)
}

fn run_sweep(spec: &RunSpec) -> Result<RunReport, CliError> {
    let game = spec.game.as_ref().expect("sweep specs carry a game");
    let grid = spec.sweep.as_ref().expect("sweep specs carry a grid");
    let cells: Vec<(f64, usize)> = grid.d0.iter().flat_map(|&d0| grid.horizon.iter().map(move |&h| (d0, h))).collect();
    let results: Vec<Result<(f64, usize, GameTranscript, Outcome), CliError>> = cells
        .par_iter()
        .map(|&(d0, h)| {
            let g = with_initial_gap(game, d0)?.with_horizon(h);
            let (t, o) = play_one(&g, spec)?;
            Ok((d0, h, t, o))
        })
        .collect();
    let mut csv = String::from("D0,horizon,outcome,i0,final_gap,final_post_gap,violations\n");
    let mut records = Vec::new();
    let mut failed = false;
    for r in results {
        let (d0, h, t, o) = r?;
        let violations = t.invariant_violations();
        failed |= !violations.is_empty();
        let i0 = match o {
            Outcome::LionCapture { i0 } => i0.to_string(),
            _ => String::new(),
        };
        let post = t.post_gaps.last().map(|p| format!("{p:.16e}")).unwrap_or_default();
        csv.push_str(&format!("{d0:.16e},{h},{},{i0},{:.16e},{post},{}\n", o.name(), t.final_gap, violations.len()));
        let mut rec = outcome_json(&t, &o, t.config.win_tol);
        rec["D0"] = json!(d0);
        records.push(rec);
    }
    if let Some(p) = &spec.outputs.csv {
        write(p, &csv)?;
    }
    if let Some(p) = &spec.outputs.json {
        write(p, &pretty(&Value::Array(records)))?;
    }
    let stdout = if spec.outputs.csv.is_none() && spec.outputs.json.is_none() {
        vec![csv.trim_end().to_string()]
    } else {
        vec![format!("{} games", grid.d0.len() * grid.horizon.len())]
    };
    Ok(RunReport { exit_code: i32::from(failed), stdout })
}

fn run_verify(spec: &RunSpec) -> Result<RunReport, CliError> {
    let space = spec.space.as_ref().expect("verify specs carry a space");
    let report = run_suite(space, &spec.domain, spec.seed, spec.samples)?;
    let text = pretty(&serde_json::to_value(&report).expect("reports serialize"));
    let mut stdout = Vec::new();
    match &spec.outputs.json {
        Some(p) => write(p, &text)?,
        None => stdout.push(text.trim_end().to_string()),
    }
    for c in &report.checks {
        stdout.push(format!(
            "{} {}: {:.3e} (threshold {:.3e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.threshold
        ));
    }
    Ok(RunReport { exit_code: if report.passed() { 0 } else { 1 }, stdout })
}

fn run_spaces(spec: &RunSpec) -> Result<RunReport, CliError> {
    let listing = json!({ "spaces": SPACE_IDS, "strategies": STRATEGY_IDS });
    let stdout = match &spec.outputs.json {
        Some(p) => {
            write(p, &pretty(&listing))?;
            Vec::new()
        }
        None => vec![format!("spaces: {}", SPACE_IDS.join(" ")), format!("strategies: {}", STRATEGY_IDS.join(" "))],
    };
    Ok(RunReport { exit_code: 0, stdout })
}

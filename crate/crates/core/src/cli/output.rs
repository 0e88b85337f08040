use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::game::{GameTranscript, Outcome};
use crate::metric::{Point, SpaceKind};

pub const CSV_HEADER: &str = "i,Lc1,Lc2,Mc1,Mc2,D_i,post_gap";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per state `0..=H`; the last row has an empty `post_gap`.
pub fn transcript_csv(t: &GameTranscript) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let mut row = |i: usize, l: &Point, m: &Point, gap: f64, post: Option<f64>| {
        let ([l1, l2], [m1, m2]) = (l.coords(), m.coords());
        let post = post.map(num).unwrap_or_default();
        let _ = writeln!(out, "{i},{},{},{},{},{},{post}", num(l1), num(l2), num(m1), num(m2), num(gap));
    };
    for (s, post) in t.steps.iter().zip(&t.post_gaps) {
        row(s.index, &s.lion, &s.man, s.gap, Some(*post));
    }
    row(t.steps.len(), &t.final_lion, &t.final_man, t.final_gap, None);
    out
}

/// Summary record of a classified game.
pub fn outcome_json(t: &GameTranscript, outcome: &Outcome, eps: f64) -> Value {
    let cfg = &t.config;
    json!({
        "space": cfg.space.kind.id(),
        "domain": cfg.domain.to_string(),
        "strategy": t.strategy,
        "D": cfg.jump,
        "L0": cfg.lion_start.to_string(),
        "M0": cfg.man_start.to_string(),
        "horizon": cfg.horizon,
        "eps": eps,
        "outcome": outcome,
        "final_gap": t.final_gap,
        "final_excess": t.final_gap - cfg.jump,
        "final_post_gap": t.post_gaps.last().copied(),
        "invariant_violations": t.invariant_violations(),
    })
}

/// Draws both paths in the planar chart. Returns `None` for spaces whose
/// chart is not a subset of the plane.
pub fn svg_plot(t: &GameTranscript) -> Option<String> {
    let kind = t.config.space.kind;
    if !kind.is_planar_chart() {
        return None;
    }
    let lion: Vec<[f64; 2]> = t.lion_path().iter().map(Point::coords).collect();
    let man: Vec<[f64; 2]> = t.man_path().iter().map(Point::coords).collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in lion.iter().chain(&man) {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if kind == SpaceKind::Poincare {
        lo = [lo[0].min(-1.0), lo[1].min(-1.0)];
        hi = [hi[0].max(1.0), hi[1].max(1.0)];
    }
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-6);
    let (x0, y0) = (lo[0] - pad, lo[1] - pad);
    let (w, h) = (hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
    let stroke = 0.003 * w.max(h);
    // flip y so the picture has the usual orientation
    let pts = |ps: &[[f64; 2]]| ps.iter().map(|p| format!("{:.6},{:.6}", p[0], -p[1])).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="600" height="600">"#,
        x0,
        -(y0 + h),
        w,
        h
    );
    match kind {
        SpaceKind::Poincare => {
            let _ =
                writeln!(s, r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#888" stroke-width="{stroke:.6}"/>"##);
        }
        SpaceKind::River => {
            let _ = writeln!(
                s,
                r##"<line x1="{:.6}" y1="0" x2="{:.6}" y2="0" stroke="#6af" stroke-width="{:.6}"/>"##,
                x0,
                x0 + w,
                2.0 * stroke
            );
        }
        _ => {}
    }
    let _ =
        writeln!(s, r##"<polyline points="{}" fill="none" stroke="#c33" stroke-width="{stroke:.6}"/>"##, pts(&lion));
    let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#33c" stroke-width="{stroke:.6}"/>"##, pts(&man));
    s.push_str("</svg>\n");
    Some(s)
}

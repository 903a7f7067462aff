//! Deterministic SVG scatter of position against within-prefix rank.
//!
//! Plotting ranks rather than representative values keeps permutations
//! without numeric representatives plottable, and makes the image depend
//! only on the order structure.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

pub fn scatter(ranks: &[u32], title: &str) -> String {
    let n = ranks.len().max(1);
    let max_rank = ranks.iter().copied().max().unwrap_or(0).max(1) as f64;
    let span_x = WIDTH - 2.0 * MARGIN;
    let span_y = HEIGHT - 2.0 * MARGIN;
    let x = |i: usize| -> f64 {
        if n == 1 {
            MARGIN + span_x / 2.0
        } else {
            MARGIN + span_x * i as f64 / (n - 1) as f64
        }
    };
    let y = |r: u32| -> f64 { HEIGHT - MARGIN - span_y * r as f64 / max_rank };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(s, "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "  <text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    // axes
    let _ = writeln!(
        s,
        "  <line x1=\"{MARGIN}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
        HEIGHT - MARGIN,
        WIDTH - MARGIN,
        HEIGHT - MARGIN
    );
    let _ = writeln!(
        s,
        "  <line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{:.2}\" stroke=\"black\"/>",
        HEIGHT - MARGIN
    );
    let _ = writeln!(
        s,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\">position</text>",
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        "  <text x=\"16\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">rank</text>",
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (i, &r) in ranks.iter().enumerate() {
        let _ = writeln!(
            s,
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"black\"/>",
            x(i),
            y(r)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

//! SVG rendering of crease patterns, one user unit per millimetre.
//!
//! Mountain folds are solid, valley folds dashed, the outline grey and
//! thicker. Primary creases are black, secondary creases red.

use std::fmt::Write;

use origami_spring::pattern::{Assignment, CreasePattern, EdgeKind};

/// Blank space around the drawing, mm.
pub const MARGIN: f64 = 5.0;

fn num(v: f64) -> String {
    // adding zero folds -0 into 0
    format!("{:.6}", v + 0.0)
}

/// Renders every pattern into one document; the y axis points up.
pub fn export_svg(patterns: &[CreasePattern]) -> String {
    let points = patterns.iter().flat_map(|p| p.vertices.iter());
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (i, v) in points.enumerate() {
        let y = -v.y;
        if i == 0 {
            (min_x, max_x, min_y, max_y) = (v.x, v.x, y, y);
        }
        min_x = min_x.min(v.x);
        max_x = max_x.max(v.x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let (x0, y0) = (min_x - MARGIN, min_y - MARGIN);
    let (w, h) = (max_x - min_x + 2.0 * MARGIN, max_y - min_y + 2.0 * MARGIN);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}mm\" height=\"{}mm\" viewBox=\"{} {} {} {}\">",
        num(w),
        num(h),
        num(x0),
        num(y0),
        num(w),
        num(h)
    );
    for p in patterns {
        for ribbon in 0..p.ribbon_count().max(1) {
            let _ = writeln!(s, "  <g id=\"ribbon-{ribbon}\" fill=\"none\" stroke-linecap=\"round\">");
            for e in p.edges.iter().filter(|e| e.ribbon == ribbon) {
                let (a, b) = (p.vertices[e.vertices[0]], p.vertices[e.vertices[1]]);
                let colour = match (e.assignment, e.kind) {
                    (Assignment::Border, _) | (_, EdgeKind::Border) => "#808080",
                    (_, EdgeKind::Secondary) => "#d62728",
                    (_, EdgeKind::Primary) => "#000000",
                };
                let style = match e.assignment {
                    Assignment::Mountain => "stroke-width=\"0.25\"".to_string(),
                    Assignment::Valley => {
                        "stroke-width=\"0.25\" stroke-dasharray=\"1.5 1\"".to_string()
                    }
                    Assignment::Border => "stroke-width=\"0.5\"".to_string(),
                };
                let _ = writeln!(
                    s,
                    "    <line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" {style}/>",
                    e.assignment.code(),
                    num(a.x),
                    num(-a.y),
                    num(b.x),
                    num(-b.y)
                );
            }
            s.push_str("  </g>\n");
        }
    }
    s.push_str("</svg>\n");
    s
}

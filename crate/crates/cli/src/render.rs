//! SVG cross-section of a fan in the plane x+y+z=1.

use std::fmt::Write;
use torfan::valuation::maximal_cones;
use torfan::{Fan, Vector};

const WIDTH: f64 = 600.0;
const HEIGHT: f64 = 540.0;
const MARGIN: f64 = 40.0;

/// Triangle corners for e1, e2, e3.
const CORNERS: [(f64, f64); 3] = [
    (WIDTH / 2.0, MARGIN),
    (MARGIN, HEIGHT - MARGIN),
    (WIDTH - MARGIN, HEIGHT - MARGIN),
];

/// Barycentric projection v/(v1+v2+v3) onto the drawing triangle.
pub fn project(v: Vector) -> (f64, f64) {
    let s = (v[0] + v[1] + v[2]) as f64;
    let w = v.map(|c| c as f64 / s);
    (0..3).fold((0.0, 0.0), |(x, y), i| (x + w[i] * CORNERS[i].0, y + w[i] * CORNERS[i].1))
}

fn ordered(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut pts = points;
    pts.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.total_cmp(&tb)
    });
    pts
}

fn label(v: Vector) -> String {
    format!("({},{},{})", v[0], v[1], v[2])
}

/// One polygon per maximal cone, a dot and coordinate label per ray.
pub fn svg(fan: &Fan) -> Result<String, String> {
    let cones = maximal_cones(fan);
    if cones.is_empty() {
        return Err("cannot render an empty fan".into());
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let corners: Vec<String> = CORNERS.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(
        s,
        r##"<polygon class="octant" points="{}" fill="none" stroke="#999" stroke-dasharray="4 3"/>"##,
        corners.join(" ")
    );
    for cone in &cones {
        let pts = ordered(cone.iter().map(|v| project(*v)).collect());
        let pts: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let title: Vec<String> = cone.iter().map(|v| label(*v)).collect();
        let _ = writeln!(
            s,
            r##"<polygon class="cone" points="{}" fill="#4a90d9" fill-opacity="0.15" stroke="#1f4e79" stroke-width="1.5"><title>{}</title></polygon>"##,
            pts.join(" "),
            title.join(" ")
        );
    }
    let mut rays: Vec<Vector> = fan.rays.clone();
    rays.sort();
    rays.dedup();
    for r in rays {
        let (x, y) = project(r);
        let _ = writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#c0392b"/>"##);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="11">{}</text>"#,
            x + 5.0,
            y - 5.0,
            label(r)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

//! Static SVG figures. Floating point is used here and nowhere else.

use std::fmt::Write;

use chord_euler::chords::{Chord, ChordKind};
use chord_euler::geometry::Polygon;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

/// Polygon edges solid, diagonals dashed, epigonals dotted, boundary
/// crossing chords dash-dotted in grey. Vertices are labelled by index.
pub fn render(p: &Polygon, chords: &[Chord]) -> String {
    let pts: Vec<(f64, f64)> = p.vertices().iter().map(|v| v.to_f64()).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, SIZE - MARGIN - (y - y0) * scale);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let poly: Vec<String> = pts.iter().map(|&q| {
        let (x, y) = map(q);
        format!("{x:.3},{y:.3}")
    }).collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, poly.join(" "));
    for &c in chords {
        let (style, class) = match p.chords().kind(c) {
            ChordKind::Diagonal => (r#"stroke="blue" stroke-dasharray="6 4""#, "diagonal"),
            ChordKind::Epigonal => (r#"stroke="green" stroke-dasharray="1 4" stroke-linecap="round""#, "epigonal"),
            ChordKind::BoundaryCrossing => (r#"stroke="grey" stroke-dasharray="8 3 1 3""#, "crossing"),
        };
        let (ax, ay) = map(pts[c.i]);
        let (bx, by) = map(pts[c.j]);
        let _ = writeln!(
            s,
            r#"<line class="{class}" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" {style} stroke-width="1.5"/>"#
        );
    }
    for (k, &q) in pts.iter().enumerate() {
        let (x, y) = map(q);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">{k}</text>"#, x + 5.0, y - 5.0);
    }
    s.push_str("</svg>\n");
    s
}

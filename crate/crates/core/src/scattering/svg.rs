//! Plain SVG pictures of rank-2 diagrams and g-vector fans, drawn in
//! `f`-coordinates.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ScatteringDiagram, ScatteringError};
use crate::exchange::OrientedExchangeGraph;

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;

fn endpoint(v: &[BigInt], radius: f64) -> (f64, f64) {
    let x = v[0].to_f64().unwrap_or(0.0);
    let y = v[1].to_f64().unwrap_or(0.0);
    let len = x.hypot(y).max(f64::MIN_POSITIVE);
    (SIZE / 2.0 + radius * x / len, SIZE / 2.0 - radius * y / len)
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
}

pub fn diagram_svg(diagram: &ScatteringDiagram) -> Result<String, ScatteringError> {
    if diagram.walls.iter().any(|w| w.normal.rank() != 2) {
        return Err(ScatteringError::NotRankTwo);
    }
    let mut out = String::new();
    header(&mut out, &format!("scattering diagram, level {}", diagram.level));
    for w in &diagram.walls {
        let (stroke, width) = if w.initial { ("#1f3b73", 2.5) } else { ("#b0302b", 1.5) };
        for r in w.support.rays() {
            let (x, y) = endpoint(r, RADIUS);
            let _ = writeln!(
                out,
                r#"<line x1="{c}" y1="{c}" x2="{x:.2}" y2="{y:.2}" stroke="{stroke}" stroke-width="{width}"/>"#,
                c = SIZE / 2.0
            );
            let (lx, ly) = endpoint(r, RADIUS + 16.0);
            let _ = writeln!(
                out,
                r#"<text x="{lx:.2}" y="{ly:.2}" font-size="11" text-anchor="middle">{}</text>"#,
                w.normal
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Chambers of a rank-2 exchange graph as wedges, with g-vector rays.
pub fn fan_svg(g: &OrientedExchangeGraph) -> Result<String, ScatteringError> {
    if g.rank() != 2 {
        return Err(ScatteringError::NotRankTwo);
    }
    let mut out = String::new();
    header(&mut out, &format!("g-vector fan, {} chambers", g.vertex_count()));
    let mut rays = BTreeSet::new();
    for v in g.vertices() {
        let cols = v.seed.g.columns();
        let (ax, ay) = endpoint(&cols[0], RADIUS);
        let (bx, by) = endpoint(&cols[1], RADIUS);
        let c = SIZE / 2.0;
        let fill = if v.depth == 0 { "#cfe3c8" } else { "#e6ecf5" };
        let _ = writeln!(
            out,
            r##"<polygon points="{c},{c} {ax:.2},{ay:.2} {bx:.2},{by:.2}" fill="{fill}" stroke="#8a94a6" stroke-width="0.5"/>"##
        );
        rays.extend(cols);
    }
    for r in &rays {
        let (x, y) = endpoint(r, RADIUS);
        let (lx, ly) = endpoint(r, RADIUS + 16.0);
        let label = r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(
            out,
            r##"<line x1="{c}" y1="{c}" x2="{x:.2}" y2="{y:.2}" stroke="#333333" stroke-width="1"/>"##,
            c = SIZE / 2.0
        );
        let _ = writeln!(out, r#"<text x="{lx:.2}" y="{ly:.2}" font-size="11" text-anchor="middle">({label})</text>"#);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

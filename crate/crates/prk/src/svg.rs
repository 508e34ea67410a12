//! SVG drawings of derived frameworks over a rectangular window of cells.

use std::fmt::Write;

use prk_core::derived::{derive, rect_window};
use prk_core::{Gain, OrbitGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::PlacementDoc;

/// Pixels per unit of length.
const SCALE: f64 = 120.0;
const MARGIN: f64 = 30.0;

/// Points inside the unit square and the identity lattice.
pub fn random_placement(n: usize, seed: u64) -> PlacementDoc {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positions = (0..n).map(|_| [rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9)]).collect();
    PlacementDoc { positions, lattice: [[1.0, 0.0], [0.0, 1.0]] }
}

/// Parses `WxH` with both sides positive.
pub fn parse_window(text: &str) -> Option<(u32, u32)> {
    let (w, h) = text.split_once(['x', 'X'])?;
    let (w, h) = (w.trim().parse().ok()?, h.trim().parse().ok()?);
    (w > 0 && h > 0).then_some((w, h))
}

fn at(p: &PlacementDoc, v: usize, z: Gain) -> [f64; 2] {
    let l = &p.lattice;
    let (a, b) = (z.x as f64, z.y as f64);
    [p.positions[v][0] + a * l[0][0] + b * l[1][0], p.positions[v][1] + a * l[0][1] + b * l[1][1]]
}

pub fn render(g: &OrbitGraph, placement: &PlacementDoc, width: u32, height: u32) -> prk_core::Result<String> {
    let fragment = derive(g, &rect_window(width, height))?;
    let mut points: Vec<[f64; 2]> = fragment.vertices.iter().map(|&(v, z)| at(placement, v, z)).collect();
    let l = &placement.lattice;
    let cell = [[0.0, 0.0], l[0], [l[0][0] + l[1][0], l[0][1] + l[1][1]], l[1]];
    points.extend(cell);
    let min_x = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    let max_x = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
    let min_y = points.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let max_y = points.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
    // y grows upwards in the plane and downwards on screen
    let px = |p: [f64; 2]| (MARGIN + (p[0] - min_x) * SCALE, MARGIN + (max_y - p[1]) * SCALE);
    let w = 2.0 * MARGIN + (max_x - min_x) * SCALE;
    let h = 2.0 * MARGIN + (max_y - min_y) * SCALE;

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#);
    let corners: Vec<String> = cell.iter().map(|&c| { let (x, y) = px(c); format!("{x:.2},{y:.2}") }).collect();
    let _ = writeln!(out, r##"  <polygon class="cell" points="{}" fill="none" stroke="#999" stroke-dasharray="4 3"/>"##, corners.join(" "));
    for e in &fragment.edges {
        let (x1, y1) = px(at(placement, e.from.0, e.from.1));
        let (x2, y2) = px(at(placement, e.to.0, e.to.1));
        let _ = writeln!(
            out,
            r#"  <line class="edge" data-edge="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1.5"/>"#,
            e.edge
        );
    }
    for &(v, z) in &fragment.vertices {
        let (x, y) = px(at(placement, v, z));
        let _ = writeln!(
            out,
            r#"  <circle class="vertex" data-vertex="{v}" data-cell="{},{}" cx="{x:.2}" cy="{y:.2}" r="4" fill="white" stroke="black"/>"#,
            z.x, z.y
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

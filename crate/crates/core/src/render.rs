//! Deterministic SVG figures for walks, arc diagrams and tilings.

use std::fmt::Write as _;

use crate::error::Result;
use crate::network::{EdgeValue, Tiling, TileKind};
use crate::walks::{Step, Walk};

const UNIT: f64 = 40.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const FLAT: &str = "#7f7f7f";

/// Stroke color of a color index (1-based).
pub fn palette(color: u8) -> &'static str {
    PALETTE[(usize::from(color) + PALETTE.len() - 1) % PALETTE.len()]
}

fn step_color(step: Step) -> &'static str {
    step.color().map_or(FLAT, palette)
}

fn open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    )
}

/// The walk as a height profile: one colored segment per step over a faint
/// grid, plus the full polyline.
pub fn render_walk(walk: &Walk) -> Result<String> {
    walk.require_valid()?;
    let mut heights = vec![0];
    heights.extend(walk.height_profile());
    let top = heights.iter().copied().max().unwrap_or(0).max(1) as f64;
    let width = walk.len() as f64 * UNIT + 2.0 * MARGIN;
    let height = top * UNIT + 2.0 * MARGIN;
    let px = |i: usize| MARGIN + i as f64 * UNIT;
    let py = |h: i64| MARGIN + (top - h as f64) * UNIT;
    let mut s = open(width, height);
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#cccccc\"/>",
        px(0),
        py(0),
        px(walk.len()),
        py(0)
    );
    let points: Vec<String> = heights
        .iter()
        .enumerate()
        .map(|(i, h)| format!("{},{}", px(i), py(*h)))
        .collect();
    let _ = writeln!(
        s,
        "<polyline class=\"walk\" points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>",
        points.join(" ")
    );
    for (i, step) in walk.steps().iter().enumerate() {
        let _ = writeln!(
            s,
            "<line class=\"step\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"4\"><title>{}</title></line>",
            px(i),
            py(heights[i]),
            px(i + 1),
            py(heights[i + 1]),
            step_color(*step),
            step
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Matched pairs as nested semicircular arcs over the sites; flat steps as
/// dots.
pub fn render_arcs(walk: &Walk) -> Result<String> {
    walk.require_valid()?;
    let pairs = walk.matched_pairs()?;
    let reach = pairs.iter().map(|p| p.y - p.x).max().unwrap_or(1) as f64;
    let width = (walk.len() - 1).max(1) as f64 * UNIT + 2.0 * MARGIN;
    let base = MARGIN + reach * UNIT / 2.0;
    let height = base + MARGIN;
    let px = |x: usize| MARGIN + (x - 1) as f64 * UNIT;
    let mut s = open(width, height);
    for (i, step) in walk.steps().iter().enumerate() {
        let fill = if *step == Step::Flat { FLAT } else { "#000000" };
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{base}\" r=\"3\" fill=\"{fill}\"/>",
            px(i + 1)
        );
    }
    for p in &pairs {
        let r = (p.y - p.x) as f64 * UNIT / 2.0;
        let _ = writeln!(
            s,
            "<path class=\"arc\" d=\"M {} {base} A {r} {r} 0 0 1 {} {base}\" fill=\"none\" stroke=\"{}\" stroke-width=\"3\"><title>{}-{} color {}</title></path>",
            px(p.x),
            px(p.y),
            palette(p.color),
            p.x,
            p.y,
            p.color
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn edge_label(e: EdgeValue) -> String {
    match e {
        EdgeValue::Omega => "ω".to_string(),
        other => other.to_string(),
    }
}

/// The pyramid with each cell's tile: arrowed paths run from the centers of
/// non-`ω` edges to the cell center, flat stubs are dashed, and every edge
/// carries its value as a label.
pub fn render_tiling(tiling: &Tiling) -> Result<String> {
    let g = tiling.geometry();
    let n = g.n();
    let width = g.columns() as f64 * UNIT + 2.0 * MARGIN;
    let height = n as f64 * UNIT + 2.0 * MARGIN;
    let x0 = |z: usize| MARGIN + (z - 1) as f64 * UNIT;
    let y0 = |y: usize| MARGIN + (n - y) as f64 * UNIT;
    let mut s = open(width, height);
    for (cell, tile) in tiling.tiles() {
        let (x, y) = (x0(cell.z), y0(cell.y));
        let _ = writeln!(
            s,
            "<rect class=\"cell\" x=\"{x}\" y=\"{y}\" width=\"{UNIT}\" height=\"{UNIT}\" fill=\"none\" stroke=\"#bbbbbb\"/>"
        );
        let Some(tile) = tile else { continue };
        let (cx, cy) = (x + UNIT / 2.0, y + UNIT / 2.0);
        let mids = [(x, cy), (x + UNIT, cy), (cx, y), (cx, y + UNIT)];
        let stroke = tile.color.map_or(FLAT, palette);
        let dash = if tile.kind.is_arrowed() {
            ""
        } else {
            " stroke-dasharray=\"4 3\""
        };
        for (edge, (mx, my)) in tile.edges().iter().zip(mids) {
            if *edge != EdgeValue::Omega {
                let _ = writeln!(
                    s,
                    "<line x1=\"{mx}\" y1=\"{my}\" x2=\"{cx}\" y2=\"{cy}\" stroke=\"{stroke}\" stroke-width=\"3\"{dash}/>"
                );
            }
        }
        if tile.kind == TileKind::FlatStop {
            let _ = writeln!(s, "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"2\" fill=\"{FLAT}\"/>");
        }
        let anchors = [
            (x + 2.0, cy - 3.0),
            (x + UNIT - 12.0, cy - 3.0),
            (cx + 2.0, y + 8.0),
            (cx + 2.0, y + UNIT - 2.0),
        ];
        for (edge, (lx, ly)) in tile.edges().iter().zip(anchors) {
            let _ = writeln!(
                s,
                "<text x=\"{lx}\" y=\"{ly}\" font-size=\"7\" fill=\"#555555\">{}</text>",
                edge_label(*edge)
            );
        }
        let _ = writeln!(
            s,
            "<title>({}, {}) {}{}</title>",
            cell.z,
            cell.y,
            tile.kind.name(),
            tile.color.map(|c| format!(" color {c}")).unwrap_or_default()
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

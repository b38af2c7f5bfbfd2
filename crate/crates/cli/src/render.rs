//! Inertia tables as text and SVG.
//!
//! Both put `π` on the horizontal axis and `ν` on the vertical axis with the
//! origin at the bottom left. Each axis runs from 0 to the largest coordinate
//! used on it.

use std::fmt::Write;

use inertia_core::algebra::{InertiaPoint, InertiaSet};

const MEMBER: char = '•';
const OTHER: char = '·';

fn extent(set: &InertiaSet) -> (usize, usize) {
    let width = set.iter().map(|p| p.pos).max().map_or(1, |m| m + 1);
    let height = set.iter().map(|p| p.neg).max().map_or(1, |m| m + 1);
    (width, height)
}

fn digits(x: usize) -> usize {
    x.to_string().len()
}

/// One row per `ν` value plus three axis rows: the `ν` label above the
/// table, the horizontal axis, and the `π` tick labels.
pub fn render_ascii(set: &InertiaSet) -> String {
    let (width, height) = extent(set);
    let lw = digits(height - 1);
    let cw = digits(width - 1);
    let mut out = String::new();
    writeln!(out, "{:lw$} ν", "").unwrap();
    for q in (0..height).rev() {
        let cells: Vec<String> = (0..width)
            .map(|p| {
                let mark = if set.contains(InertiaPoint::new(p, q)) { MEMBER } else { OTHER };
                format!("{mark:>cw$}")
            })
            .collect();
        writeln!(out, "{q:>lw$} | {}", cells.join(" ")).unwrap();
    }
    let row_width = width * cw + width - 1;
    writeln!(out, "{:lw$} +{} π", "", "-".repeat(row_width + 1)).unwrap();
    let ticks: Vec<String> = (0..width).map(|p| format!("{p:>cw$}")).collect();
    writeln!(out, "{:lw$}   {}", "", ticks.join(" ")).unwrap();
    out
}

const CELL: usize = 24;
const LEFT: usize = 40;
const TOP: usize = 24;
const BOTTOM: usize = 40;
const RIGHT: usize = 24;

/// An SVG document with one square per grid position, filled for members.
pub fn render_svg(set: &InertiaSet) -> String {
    let (width, height) = extent(set);
    let w = LEFT + width * CELL + RIGHT;
    let h = TOP + height * CELL + BOTTOM;
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    for q in 0..height {
        for p in 0..width {
            let x = LEFT + p * CELL + 3;
            let y = TOP + (height - 1 - q) * CELL + 3;
            let s = CELL - 6;
            let style = if set.contains(InertiaPoint::new(p, q)) {
                r##"fill="#1f2937""##
            } else {
                r##"fill="none" stroke="#c0c4cc""##
            };
            writeln!(out, r#"<rect x="{x}" y="{y}" width="{s}" height="{s}" {style}/>"#).unwrap();
        }
    }
    let axis_y = TOP + height * CELL;
    let axis_x_end = LEFT + width * CELL;
    writeln!(out, r##"<line x1="{LEFT}" y1="{axis_y}" x2="{axis_x_end}" y2="{axis_y}" stroke="#000"/>"##).unwrap();
    writeln!(out, r##"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{axis_y}" stroke="#000"/>"##).unwrap();
    for p in 0..width {
        let x = LEFT + p * CELL + CELL / 2;
        let y = axis_y + 16;
        writeln!(out, r#"<text x="{x}" y="{y}" font-size="12" text-anchor="middle">{p}</text>"#).unwrap();
    }
    for q in 0..height {
        let x = LEFT - 8;
        let y = TOP + (height - 1 - q) * CELL + CELL / 2 + 4;
        writeln!(out, r#"<text x="{x}" y="{y}" font-size="12" text-anchor="end">{q}</text>"#).unwrap();
    }
    let label_y = axis_y + 34;
    let mid_x = LEFT + width * CELL / 2;
    writeln!(out, r#"<text x="{mid_x}" y="{label_y}" font-size="14" text-anchor="middle">π</text>"#).unwrap();
    writeln!(out, r#"<text x="12" y="{}" font-size="14" text-anchor="middle">ν</text>"#, TOP + height * CELL / 2).unwrap();
    out.push_str("</svg>\n");
    out
}

//! SVG and ASCII drawings of tiles, patches and space-time diagrams.
//!
//! Cells follow the lattice convention: the cube at `z` fills
//! `[z - 1, z]`, so its upper-right corner sits at `z`, with y pointing up.

use std::fmt::Write;

use mulcube::config::DigitConfig;
use mulcube::cube::MulCube;
use mulcube::error::{Error, Result};
use mulcube::lattice::Point;
use mulcube::tessellation::Patch;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub cell: i64,
    pub edge_labels: bool,
    pub origin: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            cell: 48,
            edge_labels: true,
            origin: true,
        }
    }
}

fn check_drawable(d: usize) -> Result<()> {
    if d > 2 {
        return Err(Error::Parse(format!(
            "dimension {d} can only be written as json"
        )));
    }
    Ok(())
}

/// `(bot_1, top_1, bot_2, top_2)`; the second pair is absent in one
/// dimension.
fn edge_labels(c: &MulCube) -> (u64, u64, Option<(u64, u64)>) {
    let lr = (c.bot(0).expect("axis 0"), c.top(0).expect("axis 0"));
    let bt =
        (c.prebasis().dim() == 2).then(|| (c.bot(1).expect("axis 1"), c.top(1).expect("axis 1")));
    (lr.0, lr.1, bt)
}

fn svg_open(out: &mut String, w: i64, h: i64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" text-anchor="middle" dominant-baseline="central">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#
    )
    .unwrap();
}

/// One cube whose upper-left pixel corner is `(x, y)`.
fn svg_cell(out: &mut String, spec: &RenderSpec, x: i64, y: i64, c: &MulCube) {
    let s = spec.cell;
    writeln!(
        out,
        r#"<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    let big = s / 3;
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="{big}">{}</text>"#,
        x + s / 2,
        y + s / 2,
        c.val()
    )
    .unwrap();
    if !spec.edge_labels {
        return;
    }
    let small = s / 5;
    let inset = s / 8;
    let (bot1, top1, vertical) = edge_labels(c);
    let mut label = |cx: i64, cy: i64, v: u64| {
        writeln!(
            out,
            r#"<text x="{cx}" y="{cy}" font-size="{small}" fill="gray">{v}</text>"#
        )
        .unwrap();
    };
    label(x + inset, y + s / 2, bot1);
    label(x + s - inset, y + s / 2, top1);
    if let Some((bot2, top2)) = vertical {
        label(x + s / 2, y + s - inset, bot2);
        label(x + s / 2, y + inset, top2);
    }
}

/// Lifts a 1-D position onto the row `y = 0`.
fn plane(z: &Point) -> (i64, i64) {
    (z[0], if z.dim() > 1 { z[1] } else { 0 })
}

pub fn patch_svg(patch: &Patch, spec: &RenderSpec) -> Result<String> {
    check_drawable(patch.prebasis().dim())?;
    let s = spec.cell;
    let margin = s / 2;
    let mut out = String::new();
    let Some((lo, hi)) = patch.bounds() else {
        svg_open(&mut out, 2 * margin, 2 * margin);
        out.push_str("</svg>\n");
        return Ok(out);
    };
    let ((x0, y0), (x1, y1)) = (plane(&lo), plane(&hi));
    // lattice point (a, b) maps to pixel (margin + (a - x0 + 1) s, margin + (y1 - b) s)
    let px = |a: i64| margin + (a - x0 + 1) * s;
    let py = |b: i64| margin + (y1 - b) * s;
    svg_open(
        &mut out,
        2 * margin + (x1 - x0 + 1) * s,
        2 * margin + (y1 - y0 + 1) * s,
    );
    for (z, _) in patch.cells() {
        let (a, b) = plane(z);
        let cube = patch.cube(z).expect("present");
        svg_cell(&mut out, spec, px(a - 1), py(b), &cube);
    }
    if spec.origin && (x0 - 1..=x1).contains(&0) && (y0 - 1..=y1).contains(&0) {
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
            px(0),
            py(0),
            (s / 12).max(2)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn patch_ascii(patch: &Patch) -> Result<String> {
    check_drawable(patch.prebasis().dim())?;
    let Some((lo, hi)) = patch.bounds() else {
        return Ok(String::new());
    };
    let ((x0, y0), (x1, y1)) = (plane(&lo), plane(&hi));
    let width = patch
        .cells()
        .map(|(_, v)| v.to_string().len())
        .max()
        .unwrap_or(1);
    let d = patch.prebasis().dim();
    let mut out = String::new();
    for b in (y0..=y1).rev() {
        let row: Vec<String> = (x0..=x1)
            .map(|a| {
                let z = if d == 1 {
                    Point(vec![a])
                } else {
                    Point(vec![a, b])
                };
                match patch.get(&z) {
                    Some(v) => format!("{v:>width$}"),
                    None => format!("{:>width$}", "."),
                }
            })
            .collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    Ok(out)
}

const TILES_PER_ROW: usize = 10;

pub fn tiles_svg(tiles: &[MulCube], spec: &RenderSpec) -> Result<String> {
    let d = tiles.first().map_or(1, |c| c.prebasis().dim());
    check_drawable(d)?;
    let s = spec.cell;
    let gap = s / 4;
    let cols = tiles.len().clamp(1, TILES_PER_ROW) as i64;
    let rows = tiles.len().div_ceil(TILES_PER_ROW).max(1) as i64;
    let mut out = String::new();
    svg_open(&mut out, gap + cols * (s + gap), gap + rows * (s + gap));
    for (k, c) in tiles.iter().enumerate() {
        let (r, col) = ((k / TILES_PER_ROW) as i64, (k % TILES_PER_ROW) as i64);
        svg_cell(
            &mut out,
            spec,
            gap + col * (s + gap),
            gap + r * (s + gap),
            c,
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Each tile as a three-line box: top label, `bot_1 value top_1`, bottom
/// label.
pub fn tiles_ascii(tiles: &[MulCube]) -> Result<String> {
    let d = tiles.first().map_or(1, |c| c.prebasis().dim());
    check_drawable(d)?;
    let w = tiles
        .iter()
        .map(|c| c.base().saturating_sub(1).to_string().len())
        .max()
        .unwrap_or(1);
    let inner = 3 * w + 2;
    let mut out = String::new();
    for chunk in tiles.chunks(TILES_PER_ROW) {
        let mut lines = [String::new(), String::new(), String::new()];
        for (k, c) in chunk.iter().enumerate() {
            if k > 0 {
                for l in lines.iter_mut() {
                    l.push(' ');
                }
            }
            let (bot1, top1, vertical) = edge_labels(c);
            let (bot2, top2) = match vertical {
                Some((b, t)) => (b.to_string(), t.to_string()),
                None => (String::new(), String::new()),
            };
            lines[0].push_str(&format!("+{:-^inner$}+", top2));
            lines[1].push_str(&format!(" {bot1:<w$} {:^w$} {top1:>w$} ", c.val()));
            lines[2].push_str(&format!("+{:-^inner$}+", bot2));
        }
        for l in lines {
            writeln!(out, "{}", l.trim_end()).unwrap();
        }
    }
    Ok(out)
}

/// Rows `t = 0..`, columns are digit indices `lo..=hi`, most significant
/// on the left.
pub fn spacetime_ascii(rows: &[DigitConfig], lo: i64, hi: i64) -> String {
    let width = rows
        .first()
        .map_or(1, |x| x.base().saturating_sub(1).to_string().len());
    let mut out = String::new();
    for x in rows {
        let cells: Vec<String> = x
            .window(lo, hi)
            .iter()
            .map(|v| format!("{v:>width$}"))
            .collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

pub fn spacetime_svg(rows: &[DigitConfig], lo: i64, hi: i64, spec: &RenderSpec) -> String {
    let s = spec.cell / 2;
    let cols = hi - lo + 1;
    let mut out = String::new();
    svg_open(&mut out, cols * s, rows.len() as i64 * s);
    for (t, x) in rows.iter().enumerate() {
        let base = x.base().max(2);
        for (k, v) in x.window(lo, hi).into_iter().enumerate() {
            let shade = 255 - (v * 200 / (base - 1)) as i64;
            let (px, py) = (k as i64 * s, t as i64 * s);
            writeln!(
                out,
                r#"<rect x="{px}" y="{py}" width="{s}" height="{s}" fill="rgb({shade},{shade},255)" stroke="white"/>"#
            )
            .unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="{}">{v}</text>"#,
                px + s / 2,
                py + s / 2,
                s / 2
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

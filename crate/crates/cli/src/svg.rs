//! SVG pictures. Heptagrid patches are drawn in the Poincaré disk, placed
//! tile by tile by reflecting the central heptagon across shared sides;
//! signal grids are drawn cell by cell.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64 as C;

use hyperdomino::brackets::Colour;
use hyperdomino::heptagrid::{Patch, TileId, SIDES};
use hyperdomino::mantilla::{FlowerKind, Labeling, Role};
use hyperdomino::trilateral::{Signal, SignalGrid, TriKind, TrilateralScene};

const DISK: f64 = 480.0;
const CELL: f64 = 8.0;

fn central_heptagon() -> Vec<C> {
    let cosh_r = 1.0 / ((PI / 7.0).tan() * (PI / 3.0).tan());
    let r = (cosh_r.acosh() / 2.0).tanh();
    (0..SIDES).map(|k| C::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / 7.0)).collect()
}

/// Reflection in the geodesic through `a` and `b`.
fn reflect(z: C, a: C, b: C) -> C {
    let (ra, rb) = ((a.norm_sqr() + 1.0) / 2.0, (b.norm_sqr() + 1.0) / 2.0);
    let det = a.re * b.im - a.im * b.re;
    if det.abs() < 1e-14 {
        let d = (b - a) / (b - a).norm();
        return d * d * z.conj();
    }
    let c = C::new((ra * b.im - rb * a.im) / det, (a.re * rb - b.re * ra) / det);
    c + (c.norm_sqr() - 1.0) / (z - c).conj()
}

/// Vertices of every tile; vertex `j` starts side `j`.
fn placement(p: &Patch) -> Vec<Vec<C>> {
    let mut geo: Vec<Option<Vec<C>>> = vec![None; p.len()];
    geo[p.center() as usize] = Some(central_heptagon());
    for t in p.tiles() {
        let Some(vs) = geo[t as usize].clone() else { continue };
        for side in 0..SIDES {
            let Some(u) = p.neighbour(t, side) else { continue };
            if geo[u as usize].is_some() {
                continue;
            }
            let back = p.slot_of(u, t).expect("symmetric adjacency");
            let (a, b) = (vs[side], vs[(side + 1) % SIDES]);
            let w: Vec<C> = vs.iter().map(|&z| reflect(z, a, b)).collect();
            let mut out = vec![C::new(0.0, 0.0); SIDES];
            for m in 0..SIDES {
                out[(back + m) % SIDES] = w[(side + 1 + 2 * SIDES - m) % SIDES];
            }
            geo[u as usize] = Some(out);
        }
    }
    geo.into_iter().map(Option::unwrap_or_default).collect()
}

pub fn status_fill(p: &Patch, t: TileId) -> String {
    if p.status(t).is_white() { "#f4f4f4" } else { "#6a6a6a" }.to_string()
}

pub fn flower_fill(lab: &Labeling, t: TileId) -> String {
    match lab.role(t) {
        Role::Alpha(FlowerKind::F) => "#e0a030",
        Role::Alpha(FlowerKind::Gl) => "#4aa35a",
        Role::Alpha(FlowerKind::Gr) => "#2f7fbf",
        Role::Alpha(FlowerKind::Eight) => "#b03a3a",
        Role::Beta => "#f4f4f4",
    }
    .to_string()
}

pub fn level_fill(level: u32) -> String {
    format!("hsl({},60%,{}%)", level * 18, if level.is_multiple_of(5) { 45 } else { 75 })
}

pub fn patch(p: &Patch, fill: impl Fn(TileId) -> String) -> String {
    let size = 2.0 * DISK + 20.0;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    );
    let o = DISK + 10.0;
    let _ = writeln!(s, "<circle cx=\"{o}\" cy=\"{o}\" r=\"{DISK}\" fill=\"none\" stroke=\"#222\"/>");
    for (t, vs) in placement(p).iter().enumerate() {
        if vs.is_empty() {
            continue;
        }
        let pts: Vec<String> =
            vs.iter().map(|z| format!("{:.2},{:.2}", o + DISK * z.re, o - DISK * z.im)).collect();
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"{}\" stroke=\"#222\" stroke-width=\"0.4\"/>",
            pts.join(" "),
            fill(t as TileId)
        );
    }
    s += "</svg>\n";
    s
}

fn colour(c: Colour) -> &'static str {
    match c {
        Colour::Red => "#c0392b",
        Colour::Blue => "#2c5fa8",
    }
}

/// Trilaterals as outlines, antenna signals on the horizontal edges.
pub fn scene(scene: &TrilateralScene, g: &SignalGrid) -> String {
    let (w, h) = (g.cols as f64 * CELL, g.rows as f64 * CELL);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    );
    let x = |c: usize| (c as f64 + 0.5) * CELL;
    let y = |r: usize| (r as f64 + 0.5) * CELL;
    for t in &scene.trilaterals {
        let last = t.basis_row.min(g.rows.saturating_sub(1));
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for r in t.vertex_row..=last {
            if let Some((l, rr)) = t.legs_at(r) {
                left.push(format!("{:.1},{:.1}", x(l), y(r)));
                right.push(format!("{:.1},{:.1}", x(rr), y(r)));
            }
        }
        left.reverse();
        left.extend(right);
        let dash = if t.kind == TriKind::Phantom { " stroke-dasharray=\"3,2\"" } else { "" };
        let close = if last == t.basis_row { "polygon" } else { "polyline" };
        let _ = writeln!(
            s,
            "<{close} points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\"{dash}/>",
            left.join(" "),
            colour(t.colour)
        );
    }
    for r in 0..g.rows {
        for c in 0..g.cols {
            let e = g.east(r, c);
            let stroke = if e.contains(&Signal::Green) {
                "#2e9e44"
            } else if e.iter().any(|x| matches!(x, Signal::Orange(_))) {
                "#e67e22"
            } else if e.iter().any(|x| matches!(x, Signal::Jump(_))) {
                "#8e44ad"
            } else {
                continue;
            };
            let _ = writeln!(
                s,
                "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>",
                x(c),
                y(r),
                x(c + 1),
                y(r)
            );
        }
    }
    s += "</svg>\n";
    s
}

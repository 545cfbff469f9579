//! Independent floating-point construction of {7,3} in the Poincaré disk,
//! used to check the combinatorial builder.

use std::f64::consts::PI;

use hyperdomino::heptagrid::{build_patch, ring_sizes, TileId, SIDES};
use num_complex::Complex64 as C;

const TOL: f64 = 1e-9;

fn central_heptagon() -> Vec<C> {
    let cosh_r = (1.0 / (PI / 7.0).tan()) * (1.0 / (PI / 3.0).tan());
    let big_r = cosh_r.acosh();
    let r = (big_r / 2.0).tanh();
    (0..SIDES)
        .map(|k| C::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / 7.0))
        .collect()
}

/// Reflection in the geodesic through `a` and `b`.
fn reflect(z: C, a: C, b: C) -> C {
    // centre c of the orthogonal circle: Re(c * conj(a)) = (|a|^2 + 1) / 2, same for b
    let (ra, rb) = ((a.norm_sqr() + 1.0) / 2.0, (b.norm_sqr() + 1.0) / 2.0);
    let det = a.re * b.im - a.im * b.re;
    if det.abs() < 1e-14 {
        // geodesic is a diameter
        let d = (b - a) / (b - a).norm();
        return d * d * z.conj();
    }
    let cx = (ra * b.im - rb * a.im) / det;
    let cy = (a.re * rb - b.re * ra) / det;
    let c = C::new(cx, cy);
    let rho2 = c.norm_sqr() - 1.0;
    c + rho2 / (z - c).conj()
}

fn centre(vs: &[C]) -> C {
    // the hyperbolic centre of a regular polygon is the fixed point of its
    // rotation; the mean of the vertices after mapping to the hyperboloid works
    let mut acc = (0.0, 0.0, 0.0);
    for v in vs {
        let n = v.norm_sqr();
        let t = (1.0 + n) / (1.0 - n);
        acc.0 += 2.0 * v.re / (1.0 - n);
        acc.1 += 2.0 * v.im / (1.0 - n);
        acc.2 += t;
    }
    let norm = (acc.2 * acc.2 - acc.0 * acc.0 - acc.1 * acc.1).sqrt();
    let (x, y, t) = (acc.0 / norm, acc.1 / norm, acc.2 / norm);
    C::new(x / (1.0 + t), y / (1.0 + t))
}

fn reflect_tile(vs: &[C], side: usize, back_slot: usize) -> Vec<C> {
    let (a, b) = (vs[side], vs[(side + 1) % SIDES]);
    let w: Vec<C> = vs.iter().map(|&z| reflect(z, a, b)).collect();
    let mut out = vec![C::new(0.0, 0.0); SIDES];
    for m in 0..SIDES {
        out[(back_slot + m) % SIDES] = w[(side + 1 + SIDES * 2 - m) % SIDES];
    }
    out
}

/// Ring sizes by breadth-first reflection with deduplication of centres.
fn geometric_ring_sizes(radius: u32) -> Vec<usize> {
    let mut tiles: Vec<(Vec<C>, C)> = Vec::new();
    let c0 = central_heptagon();
    tiles.push((c0.clone(), centre(&c0)));
    let mut sizes = vec![1];
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &t in &frontier {
            for side in 0..SIDES {
                let vs = reflect_tile(&tiles[t].0, side, 0);
                let c = centre(&vs);
                if tiles.iter().all(|(_, d)| (c - d).norm() > TOL) {
                    tiles.push((vs, c));
                    next.push(tiles.len() - 1);
                }
            }
        }
        sizes.push(next.len());
        frontier = next;
    }
    sizes
}

#[test]
fn ring_counts_match_geometry() {
    let geo = geometric_ring_sizes(6);
    assert_eq!(geo, vec![1, 7, 21, 56, 147, 385, 1008]);
    for r in 0..=6 {
        let p = build_patch(r).unwrap();
        let comb: Vec<usize> = (0..=r).map(|k| p.ring(k).len()).collect();
        assert_eq!(comb, geo[..=r as usize].to_vec());
        assert_eq!(comb, ring_sizes(r));
    }
}

#[test]
fn adjacency_matches_geometry() {
    let p = build_patch(5).unwrap();
    let mut geo: Vec<Option<Vec<C>>> = vec![None; p.len()];
    geo[0] = Some(central_heptagon());
    for t in p.tiles() {
        let vs = geo[t as usize].clone().expect("tiles are placed in ring order");
        for side in 0..SIDES {
            let Some(u) = p.neighbour(t, side) else { continue };
            let back = p.slot_of(u, t).unwrap();
            let placed = reflect_tile(&vs, side, back);
            match &geo[u as usize] {
                None => geo[u as usize] = Some(placed),
                Some(old) => {
                    for (x, y) in old.iter().zip(&placed) {
                        assert!((x - y).norm() < 1e-7, "tile {u} placed twice differently");
                    }
                }
            }
        }
    }
    let centres: Vec<(TileId, C)> =
        p.tiles().map(|t| (t, centre(geo[t as usize].as_ref().unwrap()))).collect();
    for (i, (a, ca)) in centres.iter().enumerate() {
        for (b, cb) in &centres[i + 1..] {
            assert!((ca - cb).norm() > TOL, "tiles {a} and {b} coincide");
        }
    }
}

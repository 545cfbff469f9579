//! Distances along an isocline from the border of a tree to the closest
//! seed outside it, followed far below the patch by expanding only the
//! strip of tiles next to the border.

use std::collections::{BTreeMap, BTreeSet};

use crate::heptagrid::{Patch, TileId};
use crate::isocline::{Isoclines, PERIOD};
use crate::mantilla::{alpha_ancestor, find_seeds, FlowerKind, Labeling, Role, SplitTable};
use crate::trilateral::Side;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct StripTile {
    state: u8,
    /// Kind of the nearest α-tile at or above.
    context: Option<FlowerKind>,
    seed: bool,
    inside: bool,
}

/// Tiles of one ring walked away from a tree's border; the first one is the
/// tree's outermost tile on that side.
#[derive(Clone, Debug)]
struct Strip {
    tiles: Vec<StripTile>,
}

impl Strip {
    fn deepen(&self, table: &SplitTable, side: Side, cap: usize) -> Strip {
        let mut out: Vec<StripTile> = Vec::with_capacity(cap + 3);
        for t in &self.tiles {
            let sons = &table.states[t.state as usize].sons;
            let mut push = |q: u8| {
                let kind = match table.states[q as usize].role {
                    Role::Alpha(k) => Some(k),
                    Role::Beta => None,
                };
                let seed = kind == Some(FlowerKind::F) && t.context.is_some_and(FlowerKind::is_g);
                out.push(StripTile { state: q, context: kind.or(t.context), seed, inside: t.inside });
            };
            match side {
                Side::Right => sons.iter().for_each(|&q| push(q)),
                Side::Left => sons.iter().rev().for_each(|&q| push(q)),
            }
            if out.len() > cap {
                break;
            }
        }
        // keep the tree's last tile and what lies beyond it
        let border = out.iter().rposition(|t| t.inside).unwrap_or(0);
        out.drain(..border);
        out.truncate(cap);
        Strip { tiles: out }
    }

    fn closest_seed(&self) -> Option<usize> {
        self.tiles.iter().position(|t| t.seed && !t.inside)
    }
}

/// Distances from one side of a seed's tree, by depth below the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderDistances {
    pub seed: TileId,
    pub side: Side,
    /// (depth, level, distance) on the rows measured.
    pub rows: Vec<(u32, u32, Option<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    /// Distances on level-15 rows, and on the level-0 row just below.
    pub fifteen: BTreeSet<usize>,
    pub zero: BTreeSet<usize>,
    /// Pairs (level 15, next level 0) met on the same border.
    pub pairs: BTreeMap<(usize, usize), usize>,
    /// Smallest distance between two seeds sprung from a G_l and a G_r
    /// flower under one F-flower with a black centre, on a common ring.
    pub siblings: Option<usize>,
    pub samples: Vec<BorderDistances>,
}

/// Walks `depth` rings below every level-0 seed of the patch, on both sides
/// of its tree, and measures the distance in tiles along the ring from the
/// border tile to the closest seed outside the tree on each level-15 and
/// level-0 row. A seed next to the border is at distance 1.
pub fn reproduce_distance_tables(
    p: &Patch,
    lab: &Labeling,
    iso: &Isoclines,
    table: &SplitTable,
    depth: u32,
    cap: usize,
) -> DistanceTable {
    let context = contexts(p, lab);
    let seeds = find_seeds(p, lab);
    let is_seed: BTreeSet<TileId> = seeds.iter().copied().collect();
    let mut samples = Vec::new();
    for &s in &seeds {
        if iso.level_of(s) != 0 {
            continue;
        }
        let k = p.ring_of(s);
        let ring: Vec<TileId> = p.ring(k).collect();
        let at = ring.iter().position(|&t| t == s).expect("seed on its ring");
        for side in [Side::Left, Side::Right] {
            let n = ring.len();
            let order: Vec<TileId> = match side {
                Side::Right => (0..n).map(|i| ring[(at + i) % n]).collect(),
                Side::Left => (0..n).map(|i| ring[(at + n - i) % n]).collect(),
            };
            let tiles = order
                .iter()
                .take(cap)
                .map(|&t| StripTile {
                    state: lab.state(t),
                    context: context[t as usize],
                    seed: is_seed.contains(&t),
                    inside: t == s,
                })
                .collect();
            let mut strip = Strip { tiles };
            let mut rows = Vec::new();
            for d in 1..=depth {
                strip = strip.deepen(table, side, cap);
                let level = (iso.level_of(s) + d) % PERIOD;
                if level == 15 || level == 0 {
                    rows.push((d, level, strip.closest_seed()));
                }
            }
            samples.push(BorderDistances { seed: s, side, rows });
        }
    }
    let mut fifteen = BTreeSet::new();
    let mut zero = BTreeSet::new();
    let mut pairs = BTreeMap::new();
    for b in &samples {
        for (i, &(_, level, d)) in b.rows.iter().enumerate() {
            let Some(d) = d else { continue };
            if level == 15 {
                fifteen.insert(d);
                if let Some(&(_, 0, Some(z))) = b.rows.get(i + 1) {
                    *pairs.entry((d, z)).or_insert(0) += 1;
                }
            } else {
                zero.insert(d);
            }
        }
    }
    DistanceTable { fifteen, zero, pairs, siblings: sibling_distance(p, lab), samples }
}

fn contexts(p: &Patch, lab: &Labeling) -> Vec<Option<FlowerKind>> {
    let mut ctx: Vec<Option<FlowerKind>> = vec![None; p.len()];
    for t in p.tiles() {
        let above = p.father(t).and_then(|f| ctx[f as usize]);
        ctx[t as usize] = lab.kind(t).or(above);
    }
    ctx
}

fn sibling_distance(p: &Patch, lab: &Labeling) -> Option<usize> {
    let seeds = find_seeds(p, lab);
    let father_flower = |t: TileId| alpha_ancestor(p, lab, t);
    let mut best: Option<usize> = None;
    for (i, &a) in seeds.iter().enumerate() {
        for &b in &seeds[i + 1..] {
            if p.ring_of(a) != p.ring_of(b) {
                continue;
            }
            let (Some(ga), Some(gb)) = (father_flower(a), father_flower(b)) else { continue };
            let kinds = (lab.kind(ga), lab.kind(gb));
            if !matches!(kinds, (Some(FlowerKind::Gl), Some(FlowerKind::Gr)) | (Some(FlowerKind::Gr), Some(FlowerKind::Gl))) {
                continue;
            }
            let (Some(fa), Some(fb)) = (father_flower(ga), father_flower(gb)) else { continue };
            if fa != fb || lab.kind(fa) != Some(FlowerKind::F) || p.status(fa).is_white() {
                continue;
            }
            let ring: Vec<TileId> = p.ring(p.ring_of(a)).collect();
            let n = ring.len();
            let ia = ring.iter().position(|&t| t == a).unwrap();
            let ib = ring.iter().position(|&t| t == b).unwrap();
            let d = ia.abs_diff(ib).min(n - ia.abs_diff(ib));
            best = Some(best.map_or(d, |x| x.min(d)));
        }
    }
    best
}

//! Arcs, isoclines and their levels.
//!
//! An arc crosses a tile between two edge mid-points: a white tile joins the
//! two sides next to its father's side, a black tile the two sides beyond
//! the father and uncle sides. With the slot layout of the heptagrid those
//! are slots (1, 6) and (2, 6), which are the same-ring neighbours, so the
//! arcs of one ring chain into one closed isocline.

use thiserror::Error;

use crate::heptagrid::{Patch, Status, TileId};
use crate::mantilla::{find_seeds, is_seed, Labeling, SectorTree};

/// Levels repeat with this period.
pub const PERIOD: u32 = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsoclineError {
    #[error("arc of tile {0} does not reach its neighbour")]
    Broken(TileId),
    #[error("only {available} levels below tile {root}, {needed} needed")]
    TooShallow { root: TileId, available: u32, needed: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tile: TileId,
    /// Slot whose edge mid-point the arc enters through.
    pub entry: usize,
    pub exit: usize,
}

/// The arc of a tile; the centre gets a degenerate arc.
pub fn arc_of(p: &Patch, t: TileId) -> Arc {
    if t == p.center() {
        return Arc { tile: t, entry: 0, exit: 0 };
    }
    match p.status(t) {
        Status::White => Arc { tile: t, entry: 1, exit: 6 },
        Status::Black => Arc { tile: t, entry: 2, exit: 6 },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isocline {
    pub arcs: Vec<Arc>,
    pub level: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isoclines {
    pub lines: Vec<Isocline>,
    /// Level of every tile, in `0..PERIOD`.
    pub level: Vec<u32>,
    /// Ring that carries level 0.
    pub anchor_ring: u32,
}

impl Isoclines {
    pub fn level_of(&self, t: TileId) -> u32 {
        self.level[t as usize]
    }

    /// Index of the isocline through `t`.
    pub fn line_of(&self, p: &Patch, t: TileId) -> usize {
        p.ring_of(t) as usize
    }
}

/// Joins arcs into isoclines. Level 0 is carried by the isocline of the
/// first seed in tile order (the centre's when there is no seed), and levels
/// grow by one per isocline going down.
pub fn compute_isoclines(p: &Patch, lab: &Labeling) -> Result<Isoclines, IsoclineError> {
    let anchor_ring = find_seeds(p, lab).first().map_or(0, |&s| p.ring_of(s));
    let mut lines = Vec::new();
    for k in 0..=p.radius() {
        let ring: Vec<TileId> = p.ring(k).collect();
        let arcs: Vec<Arc> = ring.iter().map(|&t| arc_of(p, t)).collect();
        if arcs.len() > 1 {
            for (i, a) in arcs.iter().enumerate() {
                let b = arcs[(i + 1) % arcs.len()];
                if p.neighbour(a.tile, a.exit) != Some(b.tile) {
                    return Err(IsoclineError::Broken(a.tile));
                }
                if p.neighbour(b.tile, b.entry) != Some(a.tile) {
                    return Err(IsoclineError::Broken(b.tile));
                }
            }
        }
        lines.push(Isocline { arcs, level: level_for(k, anchor_ring) });
    }
    let level = p.tiles().map(|t| level_for(p.ring_of(t), anchor_ring)).collect();
    Ok(Isoclines { lines, level, anchor_ring })
}

fn level_for(ring: u32, anchor: u32) -> u32 {
    (ring + PERIOD - anchor % PERIOD) % PERIOD
}

/// Connected components of the patch once the tiles of `line` are removed.
pub fn components_without(p: &Patch, line: &Isocline) -> usize {
    let mut removed = vec![false; p.len()];
    for a in &line.arcs {
        removed[a.tile as usize] = true;
    }
    let mut seen = removed.clone();
    let mut count = 0;
    for t in p.tiles() {
        if seen[t as usize] {
            continue;
        }
        count += 1;
        let mut stack = vec![t];
        seen[t as usize] = true;
        while let Some(u) = stack.pop() {
            for &v in p.neighbours(u).iter().flatten() {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// Statuses of all tiles, as used by the black-seed check.
pub fn statuses(p: &Patch) -> Vec<Status> {
    p.tiles().map(|t| p.status(t)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlackSeedReport {
    pub seeds_checked: usize,
    pub eights_checked: usize,
    /// Seeds or 8-centres of the area that are not black.
    pub violations: Vec<TileId>,
}

/// In the area of a tree whose seed is black, all other seeds and all
/// 8-centres must be black.
pub fn check_black_seed(p: &Patch, lab: &Labeling, statuses: &[Status], tree: &SectorTree) -> BlackSeedReport {
    let mut rep = BlackSeedReport::default();
    if statuses[tree.seed as usize] != Status::Black {
        return rep;
    }
    let seeds = find_seeds(p, lab);
    for &t in &tree.area {
        if t == tree.seed {
            continue;
        }
        let is_seed = seeds.binary_search(&t).is_ok();
        let is_eight = lab.kind(t) == Some(crate::mantilla::FlowerKind::Eight);
        rep.seeds_checked += is_seed as usize;
        rep.eights_checked += is_eight as usize;
        if (is_seed || is_eight) && statuses[t as usize] != Status::Black {
            rep.violations.push(t);
        }
    }
    rep
}

/// Levels needed below a seed for the tree check.
pub const TREE_DEPTH: u32 = 6;
/// Levels needed below an 8-centre for its check.
pub const EIGHT_DEPTH: u32 = 12;
/// Relative level of the seed a tree must contain.
pub const TREE_SEED_LEVEL: u32 = 5;
/// First relative level from which an 8-centre sees seeds on every level.
pub const EIGHT_FIRST_LEVEL: u32 = 4;
/// From this relative level on, seeds must be close to the 8-centre.
pub const EIGHT_NEAR_LEVEL: u32 = 10;
pub const EIGHT_NEAR_DISTANCE: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso5Report {
    pub root: TileId,
    /// Number of seeds of the area on each relative level, from 0.
    pub seeds_per_level: Vec<usize>,
    /// For 8-centres: smallest distance to a seed on each relative level
    /// from `EIGHT_NEAR_LEVEL` down.
    pub nearest: Vec<(u32, Option<u32>)>,
    pub ok: bool,
}

fn seed_profile(p: &Patch, lab: &Labeling, iso: &Isoclines, area: &SectorTree) -> Vec<usize> {
    let base = iso.level_of(area.seed);
    let mut prof = vec![0usize; area.depth() + 1];
    for &t in &area.area {
        if t != area.seed && is_seed(p, lab, t) {
            let rel = (iso.level_of(t) + PERIOD - base) % PERIOD;
            // relative depth inside the area; levels repeat but the depth is
            // recovered from the rings
            let d = (p.ring_of(t) - p.ring_of(area.seed)) as usize;
            debug_assert_eq!(rel as usize, d % PERIOD as usize);
            prof[d] += 1;
        }
    }
    prof
}

/// Tree case: the area holds a seed on the fifth isocline below its root.
pub fn check_iso5_tree(p: &Patch, lab: &Labeling, iso: &Isoclines, tree: &SectorTree) -> Result<Iso5Report, IsoclineError> {
    if (tree.depth() as u32) < TREE_SEED_LEVEL {
        return Err(IsoclineError::TooShallow { root: tree.seed, available: tree.depth() as u32, needed: TREE_SEED_LEVEL });
    }
    let prof = seed_profile(p, lab, iso, tree);
    let ok = prof[TREE_SEED_LEVEL as usize] > 0;
    Ok(Iso5Report { root: tree.seed, seeds_per_level: prof, nearest: Vec::new(), ok })
}

/// 8-centre case: seeds on every level from the fourth one down, and from
/// the tenth one down seeds within distance 20 of the centre.
pub fn check_iso5_eight(
    p: &Patch,
    lab: &Labeling,
    iso: &Isoclines,
    sector: &SectorTree,
) -> Result<Iso5Report, IsoclineError> {
    let depth = sector.depth() as u32;
    if depth < EIGHT_DEPTH {
        return Err(IsoclineError::TooShallow { root: sector.seed, available: depth, needed: EIGHT_DEPTH });
    }
    let prof = seed_profile(p, lab, iso, sector);
    let mut ok = prof[EIGHT_FIRST_LEVEL as usize..].iter().all(|&c| c > 0);
    let dist = p.distances_from(sector.seed);
    let mut nearest = Vec::new();
    for lvl in EIGHT_NEAR_LEVEL..=depth {
        let ring = p.ring_of(sector.seed) + lvl;
        let best = sector
            .area
            .iter()
            .filter(|&&t| p.ring_of(t) == ring && is_seed(p, lab, t))
            .map(|&t| dist[t as usize])
            .min();
        if lvl <= EIGHT_NEAR_DISTANCE {
            ok &= best.is_some_and(|d| d <= EIGHT_NEAR_DISTANCE);
        }
        nearest.push((lvl, best));
    }
    Ok(Iso5Report { root: sector.seed, seeds_per_level: prof, nearest, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heptagrid::build_patch;
    use crate::mantilla::{generate_mantilla, sector_at, tree_of_mantilla, FlowerKind};

    #[test]
    fn single_tile() {
        let p = build_patch(0).unwrap();
        let lab = Labeling {
            root_kind: FlowerKind::F,
            petal_word: 0,
            tiles: vec![crate::mantilla::MantillaTile { state: 0, role: crate::mantilla::Role::Alpha(FlowerKind::F), decoration: 0 }],
            flowers: Vec::new(),
        };
        let iso = compute_isoclines(&p, &lab).unwrap();
        assert_eq!(iso.lines.len(), 1);
        assert_eq!(iso.lines[0].arcs.len(), 1);
    }

    #[test]
    fn rings_separate() {
        let p = build_patch(6).unwrap();
        let lab = generate_mantilla(&p, FlowerKind::Gl, &[0]).unwrap();
        let iso = compute_isoclines(&p, &lab).unwrap();
        for k in 1..6 {
            assert_eq!(components_without(&p, &iso.lines[k]), 2, "ring {k}");
        }
        for t in p.tiles() {
            for &u in p.neighbours(t).iter().flatten() {
                let d = (iso.level_of(t) as i64 - iso.level_of(u) as i64).rem_euclid(PERIOD as i64);
                assert!(d <= 1 || d == PERIOD as i64 - 1);
            }
        }
    }

    #[test]
    fn corrupted_status_is_reported() {
        let p = build_patch(8).unwrap();
        let lab = generate_mantilla(&p, FlowerKind::Gl, &[0]).unwrap();
        let seeds = find_seeds(&p, &lab);
        let mut st = statuses(&p);
        let Some(&black) = seeds.iter().find(|&&s| p.status(s) == Status::Black && p.ring_of(s) <= 4) else {
            return;
        };
        let tree = tree_of_mantilla(&p, &lab, black).unwrap();
        assert!(check_black_seed(&p, &lab, &st, &tree).violations.is_empty());
        let inner = *tree.area.iter().find(|&&t| t != black && seeds.binary_search(&t).is_ok()).unwrap();
        st[inner as usize] = Status::White;
        assert_eq!(check_black_seed(&p, &lab, &st, &tree).violations, vec![inner]);
    }

    #[test]
    fn shallow_is_an_error() {
        let p = build_patch(4).unwrap();
        let lab = generate_mantilla(&p, FlowerKind::Eight, &[0]).unwrap();
        let iso = compute_isoclines(&p, &lab).unwrap();
        let s = sector_at(&p, 0).unwrap();
        assert!(matches!(check_iso5_eight(&p, &lab, &iso, &s), Err(IsoclineError::TooShallow { .. })));
    }
}

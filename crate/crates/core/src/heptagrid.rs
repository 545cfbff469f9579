//! The ternary heptagrid {7,3}, built combinatorially ring by ring.
//!
//! Every tile has seven slots numbered counterclockwise. For a tile of ring
//! `k >= 1`, slot 0 always points to its father in the ring tree, i.e. the
//! tree whose levels are the rings around the centre. A white tile has the
//! slot layout `[father, prev, son(B), son(W), son(W), next's first son, next]`
//! and a black tile `[father, uncle, prev, son(B), son(W), next's first son, next]`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

pub type TileId = u32;

/// Number of sides of a tile.
pub const SIDES: usize = 7;

/// Default cap on the number of tiles a patch may hold.
pub const DEFAULT_TILE_CAP: usize = 4_000_000;

/// Son layout of the Fibonacci tree, relative to the father slot.
/// A white node's sons sit at `father + WHITE_SON_OFFSETS[i]`, the first one black.
pub const WHITE_SON_OFFSETS: [usize; 3] = [2, 3, 4];
/// A black node's sons, the first one black.
pub const BLACK_SON_OFFSETS: [usize; 2] = [3, 4];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("radius {radius} needs {needed} tiles, cap is {cap}")]
    TooLarge { radius: u32, needed: usize, cap: usize },
    #[error("tile {0} is not in the patch")]
    UnknownTile(TileId),
    #[error("sector of tile {0} leaves the patch")]
    SectorExceedsPatch(TileId),
    #[error("malformed patch dump: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    White,
    Black,
}

impl Status {
    pub fn is_white(self) -> bool {
        self == Status::White
    }

    pub fn son_offsets(self) -> &'static [usize] {
        match self {
            Status::White => &WHITE_SON_OFFSETS,
            Status::Black => &BLACK_SON_OFFSETS,
        }
    }

    /// Status of the i-th son: the first son is black, the others white.
    pub fn son_status(i: usize) -> Status {
        if i == 0 {
            Status::Black
        } else {
            Status::White
        }
    }
}

/// A ball of the heptagrid around tile 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    radius: u32,
    nbr: Vec<[Option<TileId>; SIDES]>,
    ring: Vec<u32>,
    status: Vec<Status>,
    father: Vec<Option<TileId>>,
    ring_start: Vec<usize>,
}

/// Tile counts per ring, computed from the white/black recurrence without
/// building anything.
pub fn ring_sizes(radius: u32) -> Vec<usize> {
    let mut sizes = vec![1usize];
    if radius == 0 {
        return sizes;
    }
    let (mut w, mut b) = (7usize, 0usize);
    sizes.push(7);
    for _ in 1..radius {
        let nw = 2 * w + b;
        let nb = w + b;
        w = nw;
        b = nb;
        sizes.push(w + b);
    }
    sizes
}

pub fn build_patch(radius: u32) -> Result<Patch, GridError> {
    build_patch_capped(radius, DEFAULT_TILE_CAP)
}

pub fn build_patch_capped(radius: u32, cap: usize) -> Result<Patch, GridError> {
    let needed: usize = ring_sizes(radius).iter().sum();
    if needed > cap {
        return Err(GridError::TooLarge { radius, needed, cap });
    }
    let mut p = Patch {
        radius,
        nbr: Vec::with_capacity(needed),
        ring: Vec::with_capacity(needed),
        status: Vec::with_capacity(needed),
        father: Vec::with_capacity(needed),
        ring_start: vec![0],
    };
    p.push(0, Status::White, None);
    if radius == 0 {
        p.ring_start.push(1);
        return Ok(p);
    }
    p.ring_start.push(1);
    let petals: Vec<TileId> = (0..7).map(|_| p.push(1, Status::White, Some(0))).collect();
    for (i, &t) in petals.iter().enumerate() {
        p.nbr[0][i] = Some(t);
        let ti = t as usize;
        p.nbr[ti][0] = Some(0);
        p.nbr[ti][1] = Some(petals[(i + 6) % 7]);
        p.nbr[ti][6] = Some(petals[(i + 1) % 7]);
    }
    let mut current = petals;
    for k in 1..radius {
        p.ring_start.push(p.nbr.len());
        let n = current.len();
        let mut owned: Vec<Vec<TileId>> = Vec::with_capacity(n);
        for i in 0..n {
            let t = current[i];
            let prev = current[(i + n - 1) % n];
            let mut kids = Vec::with_capacity(3);
            let b = p.push(k + 1, Status::Black, Some(t));
            p.nbr[b as usize][0] = Some(t);
            p.nbr[b as usize][1] = Some(prev);
            kids.push(b);
            let whites = if p.status[t as usize].is_white() { 2 } else { 1 };
            for _ in 0..whites {
                let w = p.push(k + 1, Status::White, Some(t));
                p.nbr[w as usize][0] = Some(t);
                kids.push(w);
            }
            owned.push(kids);
        }
        for i in 0..n {
            let t = current[i] as usize;
            let first_out = if p.status[t].is_white() { 2 } else { 3 };
            let shared = owned[(i + 1) % n][0];
            for (j, &o) in owned[i].iter().chain(std::iter::once(&shared)).enumerate() {
                p.nbr[t][first_out + j] = Some(o);
            }
        }
        let next: Vec<TileId> = owned.into_iter().flatten().collect();
        let m = next.len();
        for i in 0..m {
            let t = next[i] as usize;
            let (pr, nx) = (next[(i + m - 1) % m], next[(i + 1) % m]);
            let prev_slot = if p.status[t].is_white() { 1 } else { 2 };
            p.nbr[t][prev_slot] = Some(pr);
            p.nbr[t][6] = Some(nx);
        }
        current = next;
    }
    p.ring_start.push(p.nbr.len());
    Ok(p)
}

impl Patch {
    fn push(&mut self, ring: u32, status: Status, father: Option<TileId>) -> TileId {
        self.nbr.push([None; SIDES]);
        self.ring.push(ring);
        self.status.push(status);
        self.father.push(father);
        (self.nbr.len() - 1) as TileId
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn center(&self) -> TileId {
        0
    }

    pub fn len(&self) -> usize {
        self.nbr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nbr.is_empty()
    }

    pub fn contains(&self, t: TileId) -> bool {
        (t as usize) < self.nbr.len()
    }

    pub fn tiles(&self) -> impl Iterator<Item = TileId> {
        0..self.nbr.len() as TileId
    }

    pub fn ring_of(&self, t: TileId) -> u32 {
        self.ring[t as usize]
    }

    /// Tiles of ring `k` in counterclockwise order.
    pub fn ring(&self, k: u32) -> std::ops::Range<TileId> {
        let k = k as usize;
        self.ring_start[k] as TileId..self.ring_start[k + 1] as TileId
    }

    pub fn neighbours(&self, t: TileId) -> &[Option<TileId>; SIDES] {
        &self.nbr[t as usize]
    }

    pub fn neighbour(&self, t: TileId, slot: usize) -> Option<TileId> {
        self.nbr[t as usize][slot % SIDES]
    }

    /// Slot of `t` through which `u` is seen.
    pub fn slot_of(&self, t: TileId, u: TileId) -> Option<usize> {
        self.nbr[t as usize].iter().position(|&x| x == Some(u))
    }

    pub fn is_interior(&self, t: TileId) -> bool {
        self.nbr[t as usize].iter().all(Option::is_some)
    }

    /// Status in the ring tree rooted at the centre.
    pub fn status(&self, t: TileId) -> Status {
        self.status[t as usize]
    }

    /// Father in the ring tree rooted at the centre.
    pub fn father(&self, t: TileId) -> Option<TileId> {
        self.father[t as usize]
    }

    /// Sons in the ring tree, in counterclockwise order (empty on the last ring).
    pub fn sons(&self, t: TileId) -> Vec<TileId> {
        if t == 0 {
            return self.nbr[0].iter().flatten().copied().collect();
        }
        let offs = self.status(t).son_offsets();
        let sons: Vec<TileId> = offs.iter().filter_map(|&o| self.nbr[t as usize][o]).collect();
        if sons.len() == offs.len() && sons.iter().all(|&s| self.father(s) == Some(t)) {
            sons
        } else {
            Vec::new()
        }
    }

    pub fn distance(&self, a: TileId, b: TileId) -> Result<u32, GridError> {
        for t in [a, b] {
            if !self.contains(t) {
                return Err(GridError::UnknownTile(t));
            }
        }
        if a == b {
            return Ok(0);
        }
        let mut dist = vec![u32::MAX; self.len()];
        dist[a as usize] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(t) = queue.pop_front() {
            for u in self.nbr[t as usize].iter().flatten() {
                if dist[*u as usize] == u32::MAX {
                    dist[*u as usize] = dist[t as usize] + 1;
                    if *u == b {
                        return Ok(dist[*u as usize]);
                    }
                    queue.push_back(*u);
                }
            }
        }
        Err(GridError::UnknownTile(b))
    }

    /// Distances from `a` to every tile (u32::MAX when unreachable).
    pub fn distances_from(&self, a: TileId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[a as usize] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(t) = queue.pop_front() {
            for u in self.nbr[t as usize].iter().flatten() {
                if dist[*u as usize] == u32::MAX {
                    dist[*u as usize] = dist[t as usize] + 1;
                    queue.push_back(*u);
                }
            }
        }
        dist
    }

    /// Checks symmetry, cyclic consistency and the three-tiles-per-vertex
    /// rule on interior tiles. Returns a description of the first defect.
    pub fn check(&self) -> Result<(), String> {
        for t in self.tiles() {
            for j in 0..SIDES {
                let Some(a) = self.neighbour(t, j) else { continue };
                let Some(ia) = self.slot_of(a, t) else {
                    return Err(format!("{a} does not see {t}"));
                };
                if let Some(b) = self.neighbour(t, j + 1) {
                    // the vertex between slots j and j+1 of t is shared by t, a, b
                    if self.nbr[a as usize][(ia + SIDES - 1) % SIDES].is_some_and(|x| x != b) {
                        return Err(format!("vertex of {t} between {a} and {b} is not a triple"));
                    }
                }
                let dr = self.ring_of(t).abs_diff(self.ring_of(a));
                if dr > 1 {
                    return Err(format!("{t} and {a} are {dr} rings apart"));
                }
            }
            if self.ring_of(t) < self.radius && !self.is_interior(t) {
                return Err(format!("interior tile {t} has a missing neighbour"));
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> String {
        let mut out = format!("heptagrid v1 radius={}\n", self.radius);
        for t in self.tiles() {
            let cells: Vec<String> = self.nbr[t as usize]
                .iter()
                .map(|n| n.map_or_else(|| "_".to_string(), |x| x.to_string()))
                .collect();
            let _ = writeln!(out, ":{} ring={} nbr={}", t, self.ring_of(t), cells.join(","));
        }
        out
    }
}

/// Reads back the adjacency of a dump and checks it against a fresh build.
pub fn parse_dump(text: &str) -> Result<Patch, GridError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| GridError::Parse("empty".into()))?;
    let radius: u32 = header
        .strip_prefix("heptagrid v1 radius=")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| GridError::Parse(format!("bad header `{header}`")))?;
    let patch = build_patch(radius)?;
    let mut seen = 0usize;
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let t = seen as TileId;
        let expected = format!(
            ":{} ring={} nbr={}",
            t,
            patch.ring_of(t),
            patch.nbr[seen]
                .iter()
                .map(|n| n.map_or_else(|| "_".to_string(), |x| x.to_string()))
                .collect::<Vec<_>>()
                .join(",")
        );
        if line.trim() != expected {
            return Err(GridError::Parse(format!("line for tile {t} differs")));
        }
        seen += 1;
    }
    if seen != patch.len() {
        return Err(GridError::Parse(format!("{} tiles, expected {}", seen, patch.len())));
    }
    Ok(patch)
}

/// A Fibonacci tree spanned by a root tile inside a patch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibTree {
    pub root: TileId,
    /// Nodes level by level, each level in counterclockwise order.
    pub levels: Vec<Vec<TileId>>,
    pub father: Vec<(TileId, TileId)>,
    status: Vec<(TileId, Status)>,
}

impl FibTree {
    pub fn nodes(&self) -> impl Iterator<Item = TileId> + '_ {
        self.levels.iter().flatten().copied()
    }

    pub fn status(&self, t: TileId) -> Option<Status> {
        self.status.binary_search_by_key(&t, |&(x, _)| x).ok().map(|i| self.status[i].1)
    }

    pub fn father_of(&self, t: TileId) -> Option<TileId> {
        self.father.binary_search_by_key(&t, |&(x, _)| x).ok().map(|i| self.father[i].1)
    }

    /// The leftmost path (first sons) from the root.
    pub fn left_border(&self) -> Vec<TileId> {
        self.levels.iter().map(|l| l[0]).collect()
    }

    /// The rightmost path (last sons) from the root.
    pub fn right_border(&self) -> Vec<TileId> {
        self.levels.iter().map(|l| *l.last().unwrap()).collect()
    }
}

/// Spans the Fibonacci tree of `root` down to `depth` levels (or as deep as
/// the patch allows when `depth` is `None`). The root's father is taken at
/// slot 0, which matches the ring tree for every tile but the centre.
pub fn fibonacci_tree(
    p: &Patch,
    root: TileId,
    root_status: Status,
    depth: Option<u32>,
) -> Result<FibTree, GridError> {
    if !p.contains(root) {
        return Err(GridError::UnknownTile(root));
    }
    let mut levels = vec![vec![root]];
    let mut frame = vec![(root, 0usize, root_status)];
    let mut father = Vec::new();
    let mut status = vec![(root, root_status)];
    loop {
        if depth.is_some_and(|d| levels.len() as u32 > d) {
            break;
        }
        let mut next = Vec::new();
        let mut complete = true;
        for &(t, fslot, st) in &frame {
            for (i, off) in st.son_offsets().iter().enumerate() {
                match p.neighbour(t, fslot + off) {
                    Some(s) => {
                        let back = p.slot_of(s, t).expect("adjacency is symmetric");
                        next.push((s, back, Status::son_status(i)));
                    }
                    None => complete = false,
                }
            }
        }
        if !complete {
            if depth.is_some() {
                return Err(GridError::SectorExceedsPatch(root));
            }
            break;
        }
        for &(s, _, st) in &next {
            status.push((s, st));
        }
        let level: Vec<TileId> = next.iter().map(|x| x.0).collect();
        let mut start = 0;
        for &(t, _, st) in &frame {
            let n = st.son_offsets().len();
            father.extend(level[start..start + n].iter().map(|&s| (s, t)));
            start += n;
        }
        levels.push(level);
        frame = next;
    }
    father.sort_unstable();
    status.sort_unstable();
    Ok(FibTree { root, levels, father, status })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        assert_eq!(build_patch(0).unwrap().len(), 1);
        let p = build_patch(1).unwrap();
        assert_eq!(p.len(), 8);
        assert!(p.neighbours(0).iter().all(Option::is_some));
    }

    #[test]
    fn ring_sizes_follow_recurrence() {
        assert_eq!(ring_sizes(6), vec![1, 7, 21, 56, 147, 385, 1008]);
        for r in 0..8 {
            let p = build_patch(r).unwrap();
            let sizes: Vec<usize> = (0..=r).map(|k| p.ring(k).len()).collect();
            assert_eq!(sizes, ring_sizes(r));
        }
    }

    #[test]
    fn patches_are_consistent() {
        for r in 0..8 {
            build_patch(r).unwrap().check().unwrap();
        }
    }

    #[test]
    fn growing_keeps_ids() {
        let small = build_patch(4).unwrap();
        let big = build_patch(5).unwrap();
        for t in small.tiles() {
            assert_eq!(small.ring_of(t), big.ring_of(t));
            for (j, n) in small.neighbours(t).iter().enumerate() {
                if n.is_some() {
                    assert_eq!(*n, big.neighbour(t, j));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(build_patch_capped(8, 100), Err(GridError::TooLarge { .. })));
    }

    #[test]
    fn distance_basics() {
        let p = build_patch(3).unwrap();
        assert_eq!(p.distance(5, 5).unwrap(), 0);
        for t in p.ring(1) {
            assert_eq!(p.distance(0, t).unwrap(), 1);
        }
        for t in p.ring(3) {
            assert_eq!(p.distance(0, t).unwrap(), 3);
        }
        assert!(p.distance(0, 10_000).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let p = build_patch(3).unwrap();
        let d = p.dump();
        assert!(d.starts_with("heptagrid v1 radius=3\n"));
        assert_eq!(parse_dump(&d).unwrap(), p);
    }

    #[test]
    fn fib_tree_levels() {
        let p = build_patch(7).unwrap();
        let white = fibonacci_tree(&p, 1, Status::White, None).unwrap();
        let sizes: Vec<usize> = white.levels.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 8, 21, 55, 144, 377]);
        let black_root = p.sons(1)[0];
        let black = fibonacci_tree(&p, black_root, Status::Black, Some(1)).unwrap();
        assert_eq!(black.levels[1].len(), 2);
    }

    #[test]
    fn ring_tree_matches_petal_sectors() {
        let p = build_patch(6).unwrap();
        for petal in p.ring(1) {
            let t = fibonacci_tree(&p, petal, Status::White, None).unwrap();
            for s in t.nodes() {
                assert_eq!(t.status(s), Some(p.status(s)));
                if s != petal {
                    assert_eq!(t.father_of(s), p.father(s));
                }
            }
        }
    }
}

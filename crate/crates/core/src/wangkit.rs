//! Edge-coloured Wang tiles: matching and bounded exhaustive completion.
//!
//! Square tiles list their edges North, East, South, West. Heptagonal tiles
//! list them by slot, starting from the base edge (slot 0).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::heptagrid::{Patch, SIDES};

pub type Color = u32;
pub type Site = usize;

pub const NORTH: usize = 0;
pub const EAST: usize = 1;
pub const SOUTH: usize = 2;
pub const WEST: usize = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WangError {
    #[error("site {0} has no tile")]
    Partial(Site),
    #[error("tile index {0} out of range")]
    UnknownTile(usize),
    #[error("completion bound {0} exceeded")]
    BoundExceeded(usize),
    #[error("region has {sites} sites, search cap is {cap}")]
    RegionTooLarge { sites: usize, cap: usize },
    #[error("arity mismatch: tileset {tiles}, region {region}")]
    Arity { tiles: usize, region: usize },
    #[error("tileset syntax: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSet {
    arity: usize,
    colors: Vec<String>,
    tiles: Vec<Vec<Color>>,
    names: Vec<String>,
}

impl TileSet {
    pub fn new(arity: usize) -> Self {
        TileSet { arity, colors: Vec::new(), tiles: Vec::new(), names: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn color(&mut self, name: &str) -> Color {
        match self.colors.iter().position(|c| c == name) {
            Some(i) => i as Color,
            None => {
                self.colors.push(name.to_string());
                (self.colors.len() - 1) as Color
            }
        }
    }

    pub fn color_id(&self, name: &str) -> Option<Color> {
        self.colors.iter().position(|c| c == name).map(|i| i as Color)
    }

    pub fn color_name(&self, c: Color) -> &str {
        &self.colors[c as usize]
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    /// Adds a tile by colour names; returns its index. Duplicates are not added twice.
    pub fn add(&mut self, name: &str, edges: &[&str]) -> usize {
        assert_eq!(edges.len(), self.arity, "tile {name} has wrong arity");
        let cols: Vec<Color> = edges.iter().map(|e| self.color(e)).collect();
        self.add_colors(name, cols)
    }

    pub fn add_colors(&mut self, name: &str, cols: Vec<Color>) -> usize {
        if let Some(i) = self.tiles.iter().position(|t| *t == cols) {
            return i;
        }
        self.tiles.push(cols);
        self.names.push(name.to_string());
        self.tiles.len() - 1
    }

    pub fn tile(&self, i: usize) -> &[Color] {
        &self.tiles[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn find(&self, cols: &[Color]) -> Option<usize> {
        self.tiles.iter().position(|t| t == cols)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("wang v1 arity={} colors={}\n", self.arity, self.colors.join(","));
        for (name, t) in self.names.iter().zip(&self.tiles) {
            let cols: Vec<&str> = t.iter().map(|&c| self.color_name(c)).collect();
            let _ = writeln!(out, "tile {}: {}", name, cols.join(" "));
        }
        out
    }

    /// Parses the text format, expanding meta-tiles over their variables.
    pub fn parse(text: &str) -> Result<TileSet, WangError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| WangError::Parse("empty file".into()))?;
        let mut arity = None;
        let mut declared = Vec::new();
        let rest = header
            .strip_prefix("wang v1")
            .ok_or_else(|| WangError::Parse(format!("bad header `{header}`")))?;
        for field in rest.split_whitespace() {
            if let Some(a) = field.strip_prefix("arity=") {
                arity = a.parse::<usize>().ok().filter(|a| *a == 4 || *a == SIDES);
            } else if let Some(c) = field.strip_prefix("colors=") {
                declared = c.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect();
            }
        }
        let arity = arity.ok_or_else(|| WangError::Parse("arity must be 4 or 7".into()))?;
        let mut set = TileSet::new(arity);
        for c in &declared {
            set.color(c);
        }
        let mut vars: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for line in lines {
            if let Some(decl) = line.strip_prefix('$') {
                let (var, range) = decl
                    .split_once(" in ")
                    .ok_or_else(|| WangError::Parse(format!("bad variable `{line}`")))?;
                let range = range.trim().trim_start_matches('{').trim_end_matches('}');
                let values: Vec<String> =
                    range.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                for v in &values {
                    if !declared.is_empty() && !declared.contains(v) {
                        return Err(WangError::Parse(format!("colour `{v}` not declared")));
                    }
                }
                vars.insert(var.trim().to_string(), values);
            } else if let Some(body) = line.strip_prefix("tile ") {
                let (name, edges) = body
                    .split_once(':')
                    .ok_or_else(|| WangError::Parse(format!("bad tile `{line}`")))?;
                let edges: Vec<&str> = edges.split_whitespace().collect();
                if edges.len() != arity {
                    return Err(WangError::Parse(format!("tile {} has {} edges", name.trim(), edges.len())));
                }
                let used: BTreeSet<&str> =
                    edges.iter().filter_map(|e| e.strip_prefix('$')).collect();
                let mut combos: Vec<BTreeMap<&str, &str>> = vec![BTreeMap::new()];
                for v in &used {
                    let range = vars.get(*v).ok_or_else(|| WangError::Parse(format!("unknown variable ${v}")))?;
                    combos = combos
                        .into_iter()
                        .flat_map(|m| {
                            range.iter().map(move |val| {
                                let mut m = m.clone();
                                m.insert(*v, val.as_str());
                                m
                            })
                        })
                        .collect();
                }
                for (k, m) in combos.iter().enumerate() {
                    let concrete: Vec<&str> = edges
                        .iter()
                        .map(|e| e.strip_prefix('$').map_or(*e, |v| m[v]))
                        .collect();
                    for c in &concrete {
                        if !declared.is_empty() && !declared.iter().any(|d| d == c) {
                            return Err(WangError::Parse(format!("colour `{c}` not declared")));
                        }
                    }
                    let tile_name = if combos.len() > 1 {
                        format!("{}#{}", name.trim(), k)
                    } else {
                        name.trim().to_string()
                    };
                    set.add(&tile_name, &concrete);
                }
            } else {
                return Err(WangError::Parse(format!("unexpected line `{line}`")));
            }
        }
        Ok(set)
    }
}

/// A finite set of sites with edge adjacency. Unmatched edges may carry a
/// fixed boundary colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    arity: usize,
    adj: Vec<Vec<Option<(Site, usize)>>>,
    boundary: Vec<Vec<Option<Color>>>,
}

impl Region {
    pub fn grid(rows: usize, cols: usize) -> Region {
        let n = rows * cols;
        let mut adj = vec![vec![None; 4]; n];
        for r in 0..rows {
            for c in 0..cols {
                let s = r * cols + c;
                if r > 0 {
                    adj[s][NORTH] = Some((s - cols, SOUTH));
                }
                if r + 1 < rows {
                    adj[s][SOUTH] = Some((s + cols, NORTH));
                }
                if c > 0 {
                    adj[s][WEST] = Some((s - 1, EAST));
                }
                if c + 1 < cols {
                    adj[s][EAST] = Some((s + 1, WEST));
                }
            }
        }
        Region { arity: 4, boundary: vec![vec![None; 4]; n], adj }
    }

    pub fn from_patch(p: &Patch) -> Region {
        let adj: Vec<Vec<Option<(Site, usize)>>> = p
            .tiles()
            .map(|t| {
                (0..SIDES)
                    .map(|j| {
                        p.neighbour(t, j)
                            .map(|u| (u as Site, p.slot_of(u, t).expect("symmetric adjacency")))
                    })
                    .collect()
            })
            .collect();
        Region { arity: SIDES, boundary: vec![vec![None; SIDES]; adj.len()], adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn neighbour(&self, s: Site, side: usize) -> Option<(Site, usize)> {
        self.adj[s][side]
    }

    /// Pins the colour of an outer edge.
    pub fn set_boundary(&mut self, s: Site, side: usize, color: Color) {
        debug_assert!(self.adj[s][side].is_none(), "only outer edges carry boundary colours");
        self.boundary[s][side] = Some(color);
    }

    pub fn boundary(&self, s: Site, side: usize) -> Option<Color> {
        self.boundary[s][side]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub site: Site,
    pub side: usize,
    /// The other site, or `None` for a pinned boundary edge.
    pub other: Option<Site>,
}

/// Lists every mismatched shared edge once (and every pinned boundary edge
/// that disagrees with its tile).
pub fn match_tiles(region: &Region, assignment: &[Option<usize>], set: &TileSet) -> Result<Vec<Conflict>, WangError> {
    if region.arity != set.arity {
        return Err(WangError::Arity { tiles: set.arity, region: region.arity });
    }
    let tile_of = |s: Site| -> Result<&[Color], WangError> {
        let i = assignment.get(s).copied().flatten().ok_or(WangError::Partial(s))?;
        if i >= set.len() {
            return Err(WangError::UnknownTile(i));
        }
        Ok(set.tile(i))
    };
    let mut conflicts = Vec::new();
    for s in 0..region.len() {
        let t = tile_of(s)?;
        for (side, adj) in region.adj[s].iter().enumerate() {
            match *adj {
                Some((o, oside)) => {
                    let u = tile_of(o)?;
                    if (s, side) < (o, oside) && t[side] != u[oside] {
                        conflicts.push(Conflict { site: s, side, other: Some(o) });
                    }
                }
                None => {
                    if region.boundary[s][side].is_some_and(|c| c != t[side]) {
                        conflicts.push(Conflict { site: s, side, other: None });
                    }
                }
            }
        }
    }
    Ok(conflicts)
}

/// Search limits for `complete`.
#[derive(Clone, Copy, Debug)]
pub struct Bound {
    /// Maximal number of completions to collect before failing.
    pub completions: usize,
    /// Maximal number of sites in the region.
    pub sites: usize,
}

impl Default for Bound {
    fn default() -> Self {
        Bound { completions: 64, sites: 4096 }
    }
}

impl Bound {
    pub fn completions(n: usize) -> Self {
        Bound { completions: n, ..Bound::default() }
    }
}

struct Index {
    words: usize,
    // per side, per colour: bitset of tiles
    by_side: Vec<Vec<Vec<u64>>>,
}

impl Index {
    fn new(set: &TileSet) -> Index {
        let words = set.len().div_ceil(64).max(1);
        let ncol = set.colors.len();
        let mut by_side = vec![vec![vec![0u64; words]; ncol]; set.arity];
        for (i, t) in set.tiles.iter().enumerate() {
            for (side, &c) in t.iter().enumerate() {
                by_side[side][c as usize][i / 64] |= 1 << (i % 64);
            }
        }
        Index { words, by_side }
    }
}

/// Enumerates every total assignment extending `partial` that matches on all
/// shared edges and pinned boundary edges. Sites are filled in index order,
/// so the output order is deterministic. Fails rather than truncating when
/// more than `bound.completions` completions exist.
pub fn complete(
    region: &Region,
    partial: &[Option<usize>],
    set: &TileSet,
    bound: Bound,
) -> Result<Vec<Vec<usize>>, WangError> {
    if region.arity != set.arity {
        return Err(WangError::Arity { tiles: set.arity, region: region.arity });
    }
    if region.len() > bound.sites {
        return Err(WangError::RegionTooLarge { sites: region.len(), cap: bound.sites });
    }
    if let Some(&i) = partial.iter().flatten().find(|&&i| i >= set.len()) {
        return Err(WangError::UnknownTile(i));
    }
    let index = Index::new(set);
    let mut cur: Vec<Option<usize>> = (0..region.len()).map(|s| partial.get(s).copied().flatten()).collect();
    let mut out = Vec::new();
    let mut search = Search { region, set, index: &index, bound, out: &mut out };
    search.go(&mut cur, 0)?;
    Ok(out)
}

struct Search<'a> {
    region: &'a Region,
    set: &'a TileSet,
    index: &'a Index,
    bound: Bound,
    out: &'a mut Vec<Vec<usize>>,
}

impl Search<'_> {
    fn candidates(&self, cur: &[Option<usize>], s: Site) -> Vec<u64> {
        let mut bits = vec![!0u64; self.index.words];
        let n = self.set.len();
        if !n.is_multiple_of(64) {
            bits[n / 64] = (1u64 << (n % 64)) - 1;
            for w in bits.iter_mut().skip(n / 64 + 1) {
                *w = 0;
            }
        }
        if n == 0 {
            bits.iter_mut().for_each(|w| *w = 0);
        }
        for side in 0..self.region.arity {
            let want = match self.region.adj[s][side] {
                Some((o, oside)) => cur[o].map(|t| self.set.tiles[t][oside]),
                None => self.region.boundary[s][side],
            };
            if let Some(c) = want {
                let mask = &self.index.by_side[side][c as usize];
                for (b, m) in bits.iter_mut().zip(mask) {
                    *b &= m;
                }
            }
        }
        bits
    }

    fn go(&mut self, cur: &mut Vec<Option<usize>>, s: Site) -> Result<(), WangError> {
        if s == cur.len() {
            if self.out.len() == self.bound.completions {
                return Err(WangError::BoundExceeded(self.bound.completions));
            }
            self.out.push(cur.iter().map(|t| t.unwrap()).collect());
            return Ok(());
        }
        let bits = self.candidates(cur, s);
        if let Some(fixed) = cur[s] {
            if bits[fixed / 64] >> (fixed % 64) & 1 == 1 {
                self.go(cur, s + 1)?;
            }
            return Ok(());
        }
        for (w, &word) in bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                cur[s] = Some(w * 64 + b);
                let res = self.go(cur, s + 1);
                if res.is_err() {
                    cur[s] = None;
                    return res;
                }
            }
        }
        cur[s] = None;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_colour_set() -> TileSet {
        let mut set = TileSet::new(4);
        set.add("a", &["x", "x", "x", "x"]);
        set.add("b", &["x", "y", "x", "y"]);
        set
    }

    #[test]
    fn single_tile_has_no_conflict() {
        let set = two_colour_set();
        let r = Region::grid(1, 1);
        assert!(match_tiles(&r, &[Some(0)], &set).unwrap().is_empty());
    }

    #[test]
    fn one_mismatch_is_one_conflict() {
        let mut set = TileSet::new(4);
        set.add("a", &["n", "e", "s", "w"]);
        set.add("b", &["n", "q", "s", "z"]);
        let r = Region::grid(1, 2);
        let c = match_tiles(&r, &[Some(0), Some(1)], &set).unwrap();
        assert_eq!(c, vec![Conflict { site: 0, side: EAST, other: Some(1) }]);
        assert_eq!(match_tiles(&r, &[Some(0), None], &set), Err(WangError::Partial(1)));
    }

    #[test]
    fn self_matching_tile_fills_window() {
        let mut set = TileSet::new(4);
        set.add("a", &["x", "x", "x", "x"]);
        let r = Region::grid(2, 2);
        assert_eq!(complete(&r, &[None; 4], &set, Bound::default()).unwrap().len(), 1);
    }

    #[test]
    fn full_assignment_completes_to_itself() {
        let set = two_colour_set();
        let r = Region::grid(2, 2);
        let full = vec![Some(1), Some(1), Some(1), Some(1)];
        assert_eq!(complete(&r, &full, &set, Bound::default()).unwrap(), vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn bound_is_explicit() {
        let set = two_colour_set();
        let r = Region::grid(2, 2);
        // each row is independently all-a or all-b
        assert_eq!(complete(&r, &[None; 4], &set, Bound::default()).unwrap().len(), 4);
        assert_eq!(
            complete(&r, &[None; 4], &set, Bound::completions(3)),
            Err(WangError::BoundExceeded(3))
        );
    }

    #[test]
    fn boundary_pins_colours() {
        let set = two_colour_set();
        let mut r = Region::grid(1, 2);
        let y = set.color_id("y").unwrap();
        r.set_boundary(0, WEST, y);
        assert_eq!(complete(&r, &[None; 2], &set, Bound::default()).unwrap(), vec![vec![1, 1]]);
    }

    #[test]
    fn meta_tiles_expand() {
        let text = "wang v1 arity=4 colors=a,b,z\n$X in {a,b}\ntile t: $X z $X z\ntile u: z z z z\n";
        let set = TileSet::parse(text).unwrap();
        assert_eq!(set.len(), 3);
        let again = TileSet::parse(&set.to_text()).unwrap();
        assert_eq!(again.len(), 3);
        assert!(TileSet::parse("wang v1 arity=5 colors=a\n").is_err());
        assert!(TileSet::parse("wang v1 arity=4 colors=a\ntile t: a a a q\n").is_err());
    }

    #[test]
    fn heptagonal_region() {
        let p = crate::heptagrid::build_patch(2).unwrap();
        let r = Region::from_patch(&p);
        let mut set = TileSet::new(SIDES);
        set.add("h", &["c"; SIDES]);
        let assign = vec![Some(0); r.len()];
        assert!(match_tiles(&r, &assign, &set).unwrap().is_empty());
    }
}

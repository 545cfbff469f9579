//! Latitudes, the clean interval between two neighbouring triangles of one
//! latitude, and the orange antenna signal that joins them.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

mod distances;
pub use distances::{reproduce_distance_tables, BorderDistances, DistanceTable};

use crate::trilateral::{
    contains, render_grid, Edge, EuclidTileSet, Half, Side, Signal, SignalGrid, TriKind, Trilateral,
    TrilateralError, TrilateralScene,
};
use crate::wangkit::{complete, Bound, WangError, EAST, NORTH, SOUTH, WEST};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AntennaError {
    #[error("triangles {0} and {1} are not neighbours in one latitude")]
    NotNeighbours(usize, usize),
    #[error("no join position between triangles {0} and {1}")]
    NoJoin(usize, usize),
    #[error("window at ({row},{col}) of size {k} leaves the grid")]
    Window { row: usize, col: usize, k: usize },
    #[error(transparent)]
    Wang(#[from] WangError),
    #[error(transparent)]
    Trilateral(#[from] TrilateralError),
}

/// The rows spanned by the triangles of one generation sharing the same
/// vertex row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Latitude {
    pub generation: u32,
    pub top: usize,
    pub bottom: usize,
    /// Triangles of the latitude, left to right.
    pub members: Vec<usize>,
}

impl Latitude {
    /// Number of rows (isoclines) in the latitude.
    pub fn amplitude(&self) -> usize {
        self.bottom - self.top + 1
    }

    pub fn mid_row(&self) -> usize {
        (self.top + self.bottom) / 2
    }
}

pub fn latitudes(scene: &TrilateralScene) -> Vec<Latitude> {
    let mut by: BTreeMap<(usize, u32), Vec<usize>> = BTreeMap::new();
    for (i, t) in scene.triangles() {
        by.entry((t.vertex_row, t.generation)).or_default().push(i);
    }
    by.into_iter()
        .map(|((top, generation), mut members)| {
            members.sort_by_key(|&i| scene.trilaterals[i].axis);
            let bottom = scene.trilaterals[members[0]].basis_row;
            Latitude { generation, top, bottom, members }
        })
        .collect()
}

/// Mid-lines of phantoms that are the mid-line of no triangle.
pub fn butterfly_rows(scene: &TrilateralScene) -> Vec<usize> {
    let tri: BTreeSet<usize> = scene.triangles().map(|(_, t)| t.mid_row).collect();
    let rows: BTreeSet<usize> = scene
        .trilaterals
        .iter()
        .filter(|t| t.kind == TriKind::Phantom && !tri.contains(&t.mid_row))
        .map(|t| t.mid_row)
        .collect();
    rows.into_iter().collect()
}

/// Edges of butterfly rows without green: on such a row the green signal
/// runs over the whole width.
pub fn butterfly_gaps(g: &SignalGrid, scene: &TrilateralScene) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for row in butterfly_rows(scene) {
        for c in 1..g.cols {
            if !g.vertical(row, c).contains(&Signal::Green) {
                out.push((row, c));
            }
        }
    }
    out
}

/// A leg crossing the mid-line strictly between the two mid-points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub trilateral: usize,
    pub column: usize,
    pub generation: u32,
    pub side: Side,
    /// The leg ends on the mid-line with a basis corner.
    pub corner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapAnalysis {
    pub left: usize,
    pub right: usize,
    pub generation: u32,
    /// The mid-line shared by both triangles.
    pub row: usize,
    /// Column of the mid-point of the left triangle's right leg.
    pub a: usize,
    /// Column of the mid-point of the right triangle's left leg.
    pub b: usize,
    /// The clean interval `[c, d]`; empty when `c > d`.
    pub c: usize,
    pub d: usize,
    /// Bigger-generation legs crossing the mid-line between `a` and `b`.
    pub crossings: Vec<Crossing>,
    /// Trilaterals with both legs between `a` and `b`.
    pub both_legs: Vec<usize>,
    /// Outermost phantoms among those with their mid-line on the row.
    pub eldest: Vec<usize>,
    /// Leftmost tile of `[c, d]` outside every phantom.
    pub join: Option<usize>,
    /// Departures from the expected classification, in words.
    pub violations: Vec<String>,
}

impl GapAnalysis {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.c <= self.d && self.join.is_some()
    }
}

fn eldest_of(scene: &TrilateralScene, members: &[usize]) -> Vec<usize> {
    let tris = &scene.trilaterals;
    members
        .iter()
        .copied()
        .filter(|&i| !members.iter().any(|&j| j != i && contains(&tris[j], &tris[i])))
        .collect()
}

/// Classifies everything that crosses the common mid-line of two
/// neighbouring triangles of one latitude between their mid-points.
pub fn analyze_gap(scene: &TrilateralScene, left: usize, right: usize) -> Result<GapAnalysis, AntennaError> {
    let tris = &scene.trilaterals;
    let (s, t) = match (tris.get(left), tris.get(right)) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(AntennaError::NotNeighbours(left, right)),
    };
    let same = |o: &Trilateral| o.kind == TriKind::Triangle && o.generation == s.generation && o.vertex_row == s.vertex_row;
    if !same(s) || !same(t) || s.axis >= t.axis || tris.iter().any(|o| same(o) && s.axis < o.axis && o.axis < t.axis) {
        return Err(AntennaError::NotNeighbours(left, right));
    }
    let row = s.mid_row;
    let n = s.generation;
    let a = s.legs_at(row).unwrap().1;
    let b = t.legs_at(row).unwrap().0;
    let inside = |c: usize| a < c && c < b;
    let mut crossings = Vec::new();
    let mut both_legs = Vec::new();
    let mut tower = Vec::new();
    let mut violations = Vec::new();
    for (i, o) in tris.iter().enumerate() {
        if i == left || i == right || !o.crosses_row(row) {
            continue;
        }
        let (l, h) = o.legs_at(row).unwrap();
        match (inside(l), inside(h)) {
            (true, true) => {
                both_legs.push(i);
                if o.kind == TriKind::Phantom && o.mid_row == row {
                    tower.push(i);
                } else {
                    violations.push(format!(
                        "{:?} of generation {} crosses with both legs (vertex row {}, mid row {})",
                        o.kind, o.generation, o.vertex_row, o.mid_row
                    ));
                }
            }
            (false, false) => {}
            (li, _) => {
                let (column, side) = if li { (l, Side::Left) } else { (h, Side::Right) };
                if o.generation > n {
                    crossings.push(Crossing { trilateral: i, column, generation: o.generation, side, corner: o.basis_row == row });
                } else {
                    violations.push(format!("generation {} leg crosses at column {column}", o.generation));
                }
            }
        }
    }
    crossings.sort_by_key(|x| x.column);
    let c = crossings.iter().filter(|x| x.side == Side::Right).map(|x| x.column + 1).max().unwrap_or(a + 1);
    let d = crossings.iter().filter(|x| x.side == Side::Left).map(|x| x.column - 1).min().unwrap_or(b - 1);
    if let (Some(r), Some(l)) = (
        crossings.iter().filter(|x| x.side == Side::Right).map(|x| x.column).max(),
        crossings.iter().filter(|x| x.side == Side::Left).map(|x| x.column).min(),
    ) {
        if r > l {
            violations.push(format!("left leg at column {l} precedes right leg at column {r}"));
        }
    }
    let eldest = eldest_of(scene, &tower);
    let in_phantom = |col: usize| {
        tris.iter().any(|o| o.kind == TriKind::Phantom && o.covers(row, col))
    };
    let join = (c..=d).find(|&col| !in_phantom(col));
    Ok(GapAnalysis { left, right, generation: n, row, a, b, c, d, crossings, both_legs, eldest, join, violations })
}

/// The at-most-one-crossing statement for one gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub count: usize,
    pub generations: Vec<u32>,
    /// Both a right leg and a left leg of generation n+1 cross.
    pub opposed_pair: bool,
}

impl CrossingReport {
    pub fn holds(&self, n: u32) -> bool {
        self.count <= 1 && self.generations.iter().all(|&g| g == n + 1 || g == n + 2) && !self.opposed_pair
    }
}

pub fn check_unique_crossing(gap: &GapAnalysis) -> CrossingReport {
    let n1 = |side| gap.crossings.iter().any(|x| x.side == side && x.generation == gap.generation + 1);
    CrossingReport {
        count: gap.crossings.len(),
        generations: gap.crossings.iter().map(|x| x.generation).collect(),
        opposed_pair: n1(Side::Right) && n1(Side::Left),
    }
}

/// Grid with antennas plus the analyses that placed them.
#[derive(Clone, Debug)]
pub struct Antennas {
    pub grid: SignalGrid,
    pub gaps: Vec<GapAnalysis>,
}

/// Phantoms whose mid-line is `row`, lying strictly between columns `lo`
/// and `hi` on that row.
fn tower_members(scene: &TrilateralScene, row: usize, lo: Option<usize>, hi: usize) -> Vec<usize> {
    scene
        .trilaterals
        .iter()
        .enumerate()
        .filter(|(_, o)| o.kind == TriKind::Phantom && o.mid_row == row)
        .filter(|(_, o)| {
            let (l, h) = o.legs_at(row).unwrap();
            lo.is_none_or(|lo| lo < l) && h < hi
        })
        .map(|(i, _)| i)
        .collect()
}

/// Paints an antenna on the vertical edges `from..=to` of `row`. Edges
/// strictly inside an eldest phantom keep their green and get a jump;
/// every other edge loses its green and turns orange, right-going up to
/// the join edge and left-going after it.
#[allow(clippy::too_many_arguments)]
fn paint(grid: &mut SignalGrid, scene: &TrilateralScene, row: usize, from: usize, to: usize, eldest: &[usize], join: Option<usize>, default: Side) {
    let spans: Vec<(usize, usize)> = eldest
        .iter()
        .map(|&i| {
            let (l, h) = scene.trilaterals[i].legs_at(row).unwrap();
            (l + 1, h)
        })
        .collect();
    for e in from..=to {
        let side = match join {
            Some(j) if e <= j => Side::Right,
            Some(_) => Side::Left,
            None => default,
        };
        let edge = grid.vertical_mut(row, e);
        if spans.iter().any(|&(l, h)| l <= e && e <= h) {
            edge.insert(Signal::Green);
            edge.insert(Signal::Jump(side));
        } else {
            edge.remove(Signal::Green);
            edge.insert(Signal::Orange(side));
        }
    }
    if let Some(j) = join {
        grid.vertical_mut(row, j).insert(Signal::Join);
        grid.vertical_mut(row, j + 1).insert(Signal::Join);
    }
}

/// Replaces the outward green of every latitude's mid-line by antennas.
/// Between two neighbouring triangles the antennas meet at the join tile;
/// outside the outermost triangles they run to the grid's edge.
pub fn propagate_antennas(grid: &SignalGrid, scene: &TrilateralScene) -> Result<Antennas, AntennaError> {
    let mut g = grid.clone();
    let mut gaps = Vec::new();
    for lat in latitudes(scene) {
        let row = lat.mid_row();
        let first = &scene.trilaterals[lat.members[0]];
        let last = &scene.trilaterals[*lat.members.last().unwrap()];
        // outward on the left of the first triangle
        let a0 = first.legs_at(row).unwrap().0;
        let outer = eldest_of(scene, &tower_members(scene, row, None, a0));
        paint(&mut g, scene, row, 0, a0, &outer, None, Side::Left);
        g.horizontal_mut(row, a0).insert(Signal::Climb(Side::Left));
        for w in lat.members.windows(2) {
            let gap = analyze_gap(scene, w[0], w[1])?;
            let join = gap.join.ok_or(AntennaError::NoJoin(w[0], w[1]))?;
            paint(&mut g, scene, row, gap.a + 1, gap.b, &gap.eldest, Some(join), Side::Right);
            g.horizontal_mut(row, gap.a).insert(Signal::Climb(Side::Right));
            g.horizontal_mut(row, gap.b).insert(Signal::Climb(Side::Left));
            gaps.push(gap);
        }
        let b0 = last.legs_at(row).unwrap().1;
        let outer = eldest_of(scene, &tower_members(scene, row, Some(b0), scene.cols));
        paint(&mut g, scene, row, b0 + 1, scene.cols, &outer, None, Side::Right);
        g.horizontal_mut(row, b0).insert(Signal::Climb(Side::Right));
        g.partial_rows.insert(row);
    }
    Ok(Antennas { grid: g, gaps })
}

/// Renders a scene and adds its antennas.
pub fn render_with_antennas(scene: &TrilateralScene) -> Result<Antennas, AntennaError> {
    propagate_antennas(&render_grid(scene)?, scene)
}

fn is_orange(s: &Signal) -> bool {
    matches!(s, Signal::Orange(_))
}

/// Cells with green on one vertical side and orange on the other but no leg.
pub fn separation_violations(g: &SignalGrid) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..g.rows {
        for c in 0..g.cols {
            let (w, e) = (g.west(r, c), g.east(r, c));
            let wg = w.contains(&Signal::Green) && !w.iter().any(|s| is_orange(&s));
            let eg = e.contains(&Signal::Green) && !e.iter().any(|s| is_orange(&s));
            let wo = w.iter().any(|s| is_orange(&s));
            let eo = e.iter().any(|s| is_orange(&s));
            if ((wg && eo) || (wo && eg)) && !g.has_leg(r, c) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Edges of a latitude mid-line that carry neither or both of green and
/// orange.
pub fn coverage_violations(g: &SignalGrid, scene: &TrilateralScene) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for lat in latitudes(scene) {
        let row = lat.mid_row();
        for c in 0..=g.cols {
            let e = *g.vertical(row, c);
            let green = e.contains(&Signal::Green);
            let orange = e.iter().any(|s| is_orange(&s));
            if green == orange {
                out.push((row, c));
            }
        }
    }
    out
}

/// Cells of `row` between columns `a` and `b` that are join tiles.
pub fn join_tiles(g: &SignalGrid, row: usize, a: usize, b: usize) -> Vec<usize> {
    (a + 1..b)
        .filter(|&c| g.west(row, c).contains(&Signal::Orange(Side::Right)) && g.east(row, c).contains(&Signal::Orange(Side::Left)))
        .collect()
}

/// Maximal runs of jump edges on `row` between `a` and `b`, as inclusive
/// edge ranges.
pub fn jump_spans(g: &SignalGrid, row: usize, a: usize, b: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for e in a + 1..=b {
        if g.vertical(row, e).iter().any(|s| matches!(s, Signal::Jump(_))) {
            match out.last_mut() {
                Some((_, h)) if *h + 1 == e => *h = e,
                _ => out.push((e, e)),
            }
        }
    }
    out
}

/// What a tile does on a mid-line carrying an antenna.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileFunction {
    Join,
    /// A triangle mid-point where an antenna starts, by leg laterality.
    End(Side),
    /// Entry into or exit from an eldest phantom.
    Jump { leg: Side, antenna: Side },
    /// A leg crossed by an antenna.
    Cross { leg: Side, antenna: Side },
    Vertex,
    /// Orange with nothing else.
    Plain(Side),
}

/// The Euclidean tile set of antenna grids with the function of each tile
/// that touches an antenna.
#[derive(Clone, Debug)]
pub struct AntennaTileSet {
    pub tiles: EuclidTileSet,
    pub functions: BTreeMap<usize, TileFunction>,
}

fn leg_side(g: [&Edge; 4]) -> Option<Side> {
    let [n, e, _, w] = g;
    let l = w.iter().any(|s| matches!(s, Signal::Leg { side: Side::Left, .. }));
    let r = e.iter().any(|s| matches!(s, Signal::Leg { side: Side::Right, .. }));
    let down = n.iter().find_map(|s| match s {
        Signal::Leg { side, .. } => Some(side),
        _ => None,
    });
    match (l, r, down) {
        (true, true, None) => None,
        (true, _, _) => Some(Side::Left),
        (_, true, _) => Some(Side::Right),
        (_, _, d) => d,
    }
}

fn function_of(edges: [&Edge; 4]) -> Option<TileFunction> {
    let [n, e, _, w] = edges;
    let orange = |x: &Edge| x.iter().find_map(|s| if let Signal::Orange(o) = s { Some(o) } else { None });
    let jump = |x: &Edge| x.iter().any(|s| matches!(s, Signal::Jump(_)));
    let (wo, eo) = (orange(w), orange(e));
    if wo.is_none() && eo.is_none() {
        return None;
    }
    let vertex = w.iter().any(|s| matches!(s, Signal::Leg { side: Side::Left, .. }))
        && e.iter().any(|s| matches!(s, Signal::Leg { side: Side::Right, .. }))
        && !n.iter().any(|s| matches!(s, Signal::Leg { .. }));
    if vertex {
        return Some(TileFunction::Vertex);
    }
    let leg = leg_side(edges);
    Some(match (wo, eo, leg) {
        (Some(Side::Right), Some(Side::Left), _) => TileFunction::Join,
        (None, Some(_), Some(l)) if !jump(w) && w.contains(&Signal::Green) => TileFunction::End(l),
        (Some(_), None, Some(l)) if !jump(e) && e.contains(&Signal::Green) => TileFunction::End(l),
        (None, Some(a), Some(l)) | (Some(a), None, Some(l)) => TileFunction::Jump { leg: l, antenna: a },
        (Some(a), Some(_), Some(l)) => TileFunction::Cross { leg: l, antenna: a },
        (Some(a), _, None) | (None, Some(a), None) => TileFunction::Plain(a),
        (None, None, _) => return None,
    })
}

impl AntennaTileSet {
    pub fn derive<'a>(grids: impl IntoIterator<Item = &'a SignalGrid>) -> AntennaTileSet {
        let grids: Vec<&SignalGrid> = grids.into_iter().collect();
        let tiles = crate::trilateral::derive_tileset(grids.iter().copied());
        let mut functions = BTreeMap::new();
        for g in &grids {
            for r in 0..g.rows {
                for c in 0..g.cols {
                    if let Some(f) = function_of(g.cell_edges(r, c)) {
                        let i = tiles.lookup(&g.cell(r, c)).expect("derived from these grids");
                        functions.insert(i, f);
                    }
                }
            }
        }
        AntennaTileSet { tiles, functions }
    }

    /// Distinct functions with their tile counts.
    pub fn census(&self) -> BTreeMap<TileFunction, usize> {
        let mut out = BTreeMap::new();
        for f in self.functions.values() {
            *out.entry(*f).or_insert(0) += 1;
        }
        out
    }
}

/// A change to a window's outer boundary: the edge on `side` of the window
/// cell `(row, col)` (grid coordinates) is given `edge` instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Override {
    pub row: usize,
    pub col: usize,
    pub side: usize,
    pub edge: Edge,
}

/// A square window of a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub row: usize,
    pub col: usize,
    pub k: usize,
}

/// Counts the completions of a window from its boundary, identifying
/// completions that differ only in where the antennas join.
pub fn check_forcing(
    set: &mut AntennaTileSet,
    grid: &SignalGrid,
    w: Window,
    overrides: &[Override],
) -> Result<usize, AntennaError> {
    if w.row + w.k > grid.rows || w.col + w.k > grid.cols || w.k == 0 {
        return Err(AntennaError::Window { row: w.row, col: w.col, k: w.k });
    }
    let (mut region, _) = grid.window(w.row, w.col, w.k, &mut set.tiles);
    for o in overrides {
        let (i, j) = (o.row - w.row, o.col - w.col);
        let on_boundary = match o.side {
            NORTH => i == 0,
            SOUTH => i + 1 == w.k,
            WEST => j == 0,
            EAST => j + 1 == w.k,
            _ => false,
        };
        if !on_boundary {
            continue;
        }
        let name = crate::trilateral::edge_name(&o.edge);
        let colour = set.tiles.colour_of(&name);
        region.set_boundary(i * w.k + j, o.side, colour);
    }
    let found = complete(&region, &vec![None; w.k * w.k], set.tiles.tiles(), Bound { completions: 256, sites: 64 })?;
    let project = |t: usize| {
        let cell = set.tiles.cell_of(t);
        cell.iter()
            .map(|e| {
                e.split('+')
                    .filter(|s| *s != "join")
                    .map(|s| if s.starts_with("orange") { "orange" } else { s })
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect::<Vec<_>>()
    };
    let distinct: BTreeSet<Vec<Vec<String>>> = found.iter().map(|c| c.iter().map(|&t| project(t)).collect()).collect();
    Ok(distinct.len())
}

/// Whether some tile of the set carries `edge` on `side`. A fault whose edge
/// no tile carries is rejected before any search.
pub fn edge_on_tiles(set: &AntennaTileSet, edge: &Edge, side: usize) -> bool {
    let name = crate::trilateral::edge_name(edge);
    set.tiles.types().any(|t| t[side] == name)
}

/// The edge with its antenna signals replaced by an orange antenna.
fn with_orange(edge: &Edge, side: Side) -> Edge {
    let mut e: Edge = edge
        .iter()
        .filter(|s| !matches!(s, Signal::Green | Signal::Orange(_) | Signal::Jump(_) | Signal::Join))
        .collect();
    e.insert(Signal::Orange(side));
    e
}

/// Boundary change making orange enter the phantom `p` through its leg on
/// the gap row: the window ends on the cell of the leg and its far edge
/// carries orange. For an eldest phantom this replaces the jump; for an inner
/// one the orange covers a phantom that only green may cross.
pub fn fault_orange_into_phantom(
    grid: &SignalGrid,
    scene: &TrilateralScene,
    gap: &GapAnalysis,
    p: usize,
    k: usize,
) -> (Window, Override) {
    let t = &scene.trilaterals[p];
    let row = gap.row;
    let (l, h) = t.legs_at(row).unwrap();
    let top = row.saturating_sub(k / 2).min(grid.rows.saturating_sub(k));
    if gap.join.is_none_or(|j| l < j) {
        let edge = with_orange(grid.east(row, l), Side::Right);
        (Window { row: top, col: (l + 1).saturating_sub(k), k }, Override { row, col: l, side: EAST, edge })
    } else {
        let edge = with_orange(grid.west(row, h), Side::Left);
        (Window { row: top, col: h, k }, Override { row, col: h, side: WEST, edge })
    }
}

/// Boundary change putting a crossing tile (orange on both sides) on the
/// mid-point of the left triangle's right leg, or of the right triangle's
/// left leg.
pub fn fault_crossing_at_midpoint(grid: &SignalGrid, gap: &GapAnalysis, side: Side, k: usize) -> (Window, Override) {
    let row = gap.row;
    let top = row.saturating_sub(k / 2).min(grid.rows.saturating_sub(k));
    match side {
        Side::Right => {
            let edge = with_orange(grid.west(row, gap.a), Side::Right);
            (Window { row: top, col: gap.a, k }, Override { row, col: gap.a, side: WEST, edge })
        }
        Side::Left => {
            let edge = with_orange(grid.east(row, gap.b), Side::Left);
            (
                Window { row: top, col: (gap.b + 1).saturating_sub(k), k },
                Override { row, col: gap.b, side: EAST, edge },
            )
        }
    }
}

/// Whether a leg is at its own mid-point on the cell: it switches half there.
pub fn is_midpoint_leg(g: &SignalGrid, r: usize, c: usize) -> bool {
    let first = g.north(r, c).iter().any(|s| matches!(s, Signal::Leg { half: Half::First, .. }));
    let second = [g.west(r, c), g.east(r, c)]
        .iter()
        .any(|e| e.iter().any(|s| matches!(s, Signal::Leg { half: Half::Second, .. })));
    first && second
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::{gen0, phase_oracle};
    use crate::trilateral::lift_threads;

    fn scene(len: usize, phases: &[bool], cuts: &[Option<usize>]) -> TrilateralScene {
        let m = gen0(len).unwrap().run(&phase_oracle(len, phases).unwrap()).unwrap();
        lift_threads(&m, cuts).unwrap()
    }

    #[test]
    fn amplitude_is_height_plus_one() {
        let s = scene(64, &[false, false], &[None, None]);
        for lat in latitudes(&s) {
            assert_eq!(lat.amplitude(), (2 << lat.generation) + 1);
            assert_eq!(lat.members.len(), 2);
        }
    }

    #[test]
    fn gap_without_phantoms_joins_right_after_a() {
        let s = scene(16, &[], &[None, None]);
        let lat = &latitudes(&s)[0];
        let gap = analyze_gap(&s, lat.members[0], lat.members[1]).unwrap();
        assert!(gap.crossings.is_empty());
        assert_eq!((gap.c, gap.d), (gap.a + 1, gap.b - 1));
        assert_eq!(gap.join, Some(gap.a + 1));
    }

    #[test]
    fn not_neighbours_is_an_error() {
        let s = scene(16, &[], &[None, None, None]);
        let lat = &latitudes(&s)[0];
        assert_eq!(
            analyze_gap(&s, lat.members[0], lat.members[2]),
            Err(AntennaError::NotNeighbours(lat.members[0], lat.members[2]))
        );
    }

    #[test]
    fn antennas_respect_separation_and_coverage() {
        let s = scene(64, &[true, false], &[None, Some(5), None]);
        let a = render_with_antennas(&s).unwrap();
        assert!(separation_violations(&a.grid).is_empty());
        assert!(coverage_violations(&a.grid, &s).is_empty());
        for gap in &a.gaps {
            assert_eq!(join_tiles(&a.grid, gap.row, gap.a, gap.b).len(), 1);
        }
    }
}

//! Interwoven triangles on a square grid: bracket intervals lifted to
//! triangles and phantoms, realised as an edge-coloured signal tiling.
//!
//! Rows are isoclines (a row index is a bracket position) and legs move one
//! column per row. A cell's four edges carry sets of [`Signal`]s; the set on
//! an edge is shared by the two cells it separates, so a rendered grid is a
//! valid Wang tiling of its own cell types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::brackets::{BracketModel, Colour, IntervalKind};
use crate::wangkit::{Region, TileSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrilateralError {
    #[error("scene needs {need_rows}x{need_cols} cells, grid is {rows}x{cols}")]
    Overflow { need_rows: usize, need_cols: usize, rows: usize, cols: usize },
    #[error("trilateral {0} is not a red triangle")]
    NotRed(usize),
    #[error("no trilateral with index {0}")]
    Unknown(usize),
    #[error("signal conflict at row {row}, column {col}: {what}")]
    Conflict { row: usize, col: usize, what: String },
    #[error("sgrid syntax: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriKind {
    Triangle,
    Phantom,
}

/// Laterality of a leg or of a horizontal signal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Half {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trilateral {
    pub kind: TriKind,
    pub colour: Colour,
    pub generation: u32,
    /// Column of the axis.
    pub axis: usize,
    pub vertex_row: usize,
    pub mid_row: usize,
    pub basis_row: usize,
    /// Index of the thread (axis) in the scene.
    pub thread: usize,
}

impl Trilateral {
    pub fn height(&self) -> usize {
        self.basis_row - self.vertex_row
    }

    pub fn crosses_row(&self, r: usize) -> bool {
        self.vertex_row <= r && r <= self.basis_row
    }

    /// Columns of the left and right leg on row `r`.
    pub fn legs_at(&self, r: usize) -> Option<(usize, usize)> {
        if !self.crosses_row(r) {
            return None;
        }
        let d = r - self.vertex_row;
        Some((self.axis.checked_sub(d)?, self.axis + d))
    }

    /// Closed cell set: legs, basis and everything in between.
    pub fn covers(&self, r: usize, c: usize) -> bool {
        self.legs_at(r).is_some_and(|(l, h)| l <= c && c <= h)
    }

    /// Strictly between the legs, above the basis and below the vertex.
    pub fn strictly_inside(&self, r: usize, c: usize) -> bool {
        self.vertex_row < r && r < self.basis_row && self.legs_at(r).is_some_and(|(l, h)| l < c && c < h)
    }

    fn half_at(&self, r: usize) -> Half {
        if r < self.mid_row {
            Half::First
        } else {
            Half::Second
        }
    }
}

/// One copy of the bracket model on one axis; `cut` is the position of a
/// semi-infinite cut, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thread {
    pub axis: usize,
    pub cut: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrilateralScene {
    pub rows: usize,
    pub cols: usize,
    pub threads: Vec<Thread>,
    pub trilaterals: Vec<Trilateral>,
}

fn trilaterals_of(model: &BracketModel, axis: usize, thread: usize) -> Vec<Trilateral> {
    let mut out: Vec<Trilateral> = model
        .all_intervals()
        .filter(|iv| !iv.partial)
        .map(|iv| Trilateral {
            kind: match iv.kind {
                IntervalKind::Active => TriKind::Triangle,
                IntervalKind::Silent => TriKind::Phantom,
            },
            colour: iv.colour(),
            generation: iv.generation,
            axis,
            vertex_row: iv.lo,
            mid_row: iv.mid(),
            basis_row: iv.hi,
            thread,
        })
        .collect();
    out.sort_by_key(|t| (t.vertex_row, t.generation));
    out
}

/// Drops every trilateral above generation 0 whose father is missing, and
/// then its descendants. A cut removes fathers whose sons survive; on the
/// hyperbolic plane those sons hang from an enclosing thread, which a
/// side-by-side packing cannot show.
fn without_orphans(mut tris: Vec<Trilateral>) -> Vec<Trilateral> {
    tris.sort_by_key(|t| t.generation);
    let mut kept: Vec<Trilateral> = Vec::with_capacity(tris.len());
    for t in tris {
        let has_father = t.generation == 0
            || kept.iter().any(|f| {
                f.kind == TriKind::Triangle && f.generation + 1 == t.generation && f.mid_row == t.vertex_row
            });
        if has_father {
            kept.push(t);
        }
    }
    kept.sort_by_key(|t| (t.vertex_row, t.generation));
    kept
}

/// Largest half-width of the thread's trilaterals on each row.
fn profile(tris: &[Trilateral], rows: usize) -> Vec<Option<usize>> {
    let mut w = vec![None; rows];
    for t in tris {
        for (r, slot) in w.iter_mut().enumerate().take(t.basis_row + 1).skip(t.vertex_row) {
            let d = r - t.vertex_row;
            *slot = Some(slot.map_or(d, |x: usize| x.max(d)));
        }
    }
    w
}

/// Lifts every complete interval of `model` to a trilateral on a single axis
/// placed at the middle column.
pub fn lift(model: &BracketModel, rows: usize, cols: usize) -> Result<TrilateralScene, TrilateralError> {
    let axis = cols / 2;
    let tris = trilaterals_of(model, axis, 0);
    let widest = tris.iter().map(Trilateral::height).max().unwrap_or(0);
    // one spare column on each side for the leg elbows
    let need_cols = 2 * widest + 3;
    if model.len() > rows || need_cols > cols || axis < widest + 1 || axis + widest + 1 >= cols {
        return Err(TrilateralError::Overflow { need_rows: model.len(), need_cols, rows, cols });
    }
    Ok(TrilateralScene { rows, cols, threads: vec![Thread { axis, cut: None }], trilaterals: tris })
}

/// Several copies of the model side by side, each cut at its own position,
/// packed left to right as tightly as their trilaterals allow without
/// overlapping. Trilaterals whose chain of fathers is broken, by the cut or
/// by the window's start, are left out. The grid width follows from the
/// packing.
pub fn lift_threads(model: &BracketModel, cuts: &[Option<usize>]) -> Result<TrilateralScene, TrilateralError> {
    let rows = model.len();
    let mut threads = Vec::new();
    let mut tris = Vec::new();
    // rightmost occupied column per row so far
    let mut right: Vec<Option<usize>> = vec![None; rows];
    let mut last_axis = 0;
    for (i, &cut) in cuts.iter().enumerate() {
        let m = match cut {
            Some(c) => model.cut_semi_infinite(c).map_err(|_| TrilateralError::Overflow {
                need_rows: c + 1,
                need_cols: 0,
                rows,
                cols: 0,
            })?,
            None => model.clone(),
        };
        let local = without_orphans(trilaterals_of(&m, 0, i));
        let prof = profile(&local, rows);
        let reach = prof.iter().flatten().max().copied().unwrap_or(0);
        // two blank columns between facing legs keep the elbows apart
        let axis = right
            .iter()
            .zip(&prof)
            .filter_map(|(a, b)| Some(a.as_ref()? + b.as_ref()? + 3))
            .max()
            .unwrap_or(0)
            .max(reach + 2)
            .max(if i == 0 { 0 } else { last_axis + 1 });
        for (slot, w) in right.iter_mut().zip(&prof) {
            if let Some(w) = w {
                *slot = Some(slot.map_or(axis + w, |x| x.max(axis + w)));
            }
        }
        tris.extend(local.into_iter().map(|t| Trilateral { axis, ..t }));
        threads.push(Thread { axis, cut });
        last_axis = axis;
    }
    let cols = right.iter().flatten().max().copied().unwrap_or(last_axis).max(last_axis) + 3;
    tris.sort_by_key(|t| (t.vertex_row, t.thread, t.generation));
    Ok(TrilateralScene { rows, cols, threads, trilaterals: tris })
}

impl TrilateralScene {
    pub fn triangles(&self) -> impl Iterator<Item = (usize, &Trilateral)> {
        self.trilaterals.iter().enumerate().filter(|(_, t)| t.kind == TriKind::Triangle)
    }

    /// The father of a trilateral: the triangle of the previous generation on
    /// the same axis whose mid-line carries its vertex.
    pub fn father(&self, k: usize) -> Option<usize> {
        let t = &self.trilaterals[k];
        let g = t.generation.checked_sub(1)?;
        self.trilaterals.iter().position(|f| {
            f.kind == TriKind::Triangle && f.generation == g && f.axis == t.axis && f.mid_row == t.vertex_row
        })
    }

    /// The chain of fathers up to generation 0, if it stays in the scene.
    pub fn remotest_ancestor(&self, k: usize) -> Option<usize> {
        let mut cur = k;
        while self.trilaterals[cur].generation > 0 {
            cur = self.father(cur)?;
        }
        Some(cur)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    Leg { colour: Colour, kind: TriKind, side: Side, half: Half },
    /// Basis segment: open inside its trilateral, covered where two bases of
    /// one row are merged outside them.
    Base { colour: Colour, kind: TriKind, open: bool },
    Horizontal { colour: Colour, side: Side, position: Position },
    Green,
    Orange(Side),
    Join,
    Jump(Side),
    /// One-cell marker where an antenna leaves a triangle's mid-point.
    Climb(Side),
}

fn colour_letter(c: Colour) -> char {
    match c {
        Colour::Blue => 'b',
        Colour::Red => 'r',
    }
}

fn kind_letter(k: TriKind) -> char {
    match k {
        TriKind::Triangle => 't',
        TriKind::Phantom => 'p',
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Signal::Leg { colour, kind, side, half } => write!(
                f,
                "leg{}{}{}{}",
                colour_letter(colour),
                kind_letter(kind),
                side.letter(),
                if half == Half::First { 1 } else { 2 }
            ),
            Signal::Base { colour, kind, open } => {
                write!(f, "base{}{}{}", colour_letter(colour), kind_letter(kind), if open { 'O' } else { 'C' })
            }
            Signal::Horizontal { colour, side, position } => write!(
                f,
                "h{}{}{}",
                colour_letter(colour),
                side.letter(),
                if position == Position::Upper { 'u' } else { 'l' }
            ),
            Signal::Green => f.write_str("green"),
            Signal::Orange(s) => write!(f, "orange{}", s.letter()),
            Signal::Join => f.write_str("join"),
            Signal::Jump(s) => write!(f, "jump{}", s.letter()),
            Signal::Climb(s) => write!(f, "climb{}", s.letter()),
        }
    }
}

impl std::str::FromStr for Signal {
    type Err = TrilateralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TrilateralError::Parse(format!("unknown signal `{s}`"));
        let colour = |c: u8| match c {
            b'b' => Ok(Colour::Blue),
            b'r' => Ok(Colour::Red),
            _ => Err(bad()),
        };
        let kind = |c: u8| match c {
            b't' => Ok(TriKind::Triangle),
            b'p' => Ok(TriKind::Phantom),
            _ => Err(bad()),
        };
        let side = |c: u8| match c {
            b'L' => Ok(Side::Left),
            b'R' => Ok(Side::Right),
            _ => Err(bad()),
        };
        let b = s.as_bytes();
        Ok(match s {
            "green" => Signal::Green,
            "join" => Signal::Join,
            _ if s.starts_with("leg") && b.len() == 7 => Signal::Leg {
                colour: colour(b[3])?,
                kind: kind(b[4])?,
                side: side(b[5])?,
                half: match b[6] {
                    b'1' => Half::First,
                    b'2' => Half::Second,
                    _ => return Err(bad()),
                },
            },
            _ if s.starts_with("base") && b.len() == 7 => Signal::Base {
                colour: colour(b[4])?,
                kind: kind(b[5])?,
                open: match b[6] {
                    b'O' => true,
                    b'C' => false,
                    _ => return Err(bad()),
                },
            },
            _ if s.starts_with('h') && b.len() == 4 => Signal::Horizontal {
                colour: colour(b[1])?,
                side: side(b[2])?,
                position: match b[3] {
                    b'u' => Position::Upper,
                    b'l' => Position::Lower,
                    _ => return Err(bad()),
                },
            },
            _ if s.starts_with("orange") && b.len() == 7 => Signal::Orange(side(b[6])?),
            _ if s.starts_with("jump") && b.len() == 5 => Signal::Jump(side(b[4])?),
            _ if s.starts_with("climb") && b.len() == 6 => Signal::Climb(side(b[5])?),
            _ => return Err(bad()),
        })
    }
}

const COLOURS: [Colour; 2] = [Colour::Blue, Colour::Red];
const KINDS: [TriKind; 2] = [TriKind::Triangle, TriKind::Phantom];
const SIDES: [Side; 2] = [Side::Left, Side::Right];

impl Signal {
    /// Number of distinct signals.
    pub const COUNT: usize = 40;

    pub fn index(self) -> usize {
        let c = |x: Colour| x as usize;
        let k = |x: TriKind| x as usize;
        let s = |x: Side| x as usize;
        match self {
            Signal::Leg { colour, kind, side, half } => c(colour) * 8 + k(kind) * 4 + s(side) * 2 + half as usize,
            Signal::Base { colour, kind, open } => 16 + c(colour) * 4 + k(kind) * 2 + open as usize,
            Signal::Horizontal { colour, side, position } => 24 + c(colour) * 4 + s(side) * 2 + position as usize,
            Signal::Green => 32,
            Signal::Orange(x) => 33 + s(x),
            Signal::Join => 35,
            Signal::Jump(x) => 36 + s(x),
            Signal::Climb(x) => 38 + s(x),
        }
    }

    pub fn from_index(i: usize) -> Option<Signal> {
        let bit = |v: usize, b: usize| (v >> b) & 1;
        Some(match i {
            0..=15 => Signal::Leg {
                colour: COLOURS[bit(i, 3)],
                kind: KINDS[bit(i, 2)],
                side: SIDES[bit(i, 1)],
                half: [Half::First, Half::Second][bit(i, 0)],
            },
            16..=23 => Signal::Base { colour: COLOURS[bit(i - 16, 2)], kind: KINDS[bit(i - 16, 1)], open: bit(i, 0) == 1 },
            24..=31 => Signal::Horizontal {
                colour: COLOURS[bit(i - 24, 2)],
                side: SIDES[bit(i - 24, 1)],
                position: [Position::Upper, Position::Lower][bit(i, 0)],
            },
            32 => Signal::Green,
            33 | 34 => Signal::Orange(SIDES[i - 33]),
            35 => Signal::Join,
            36 | 37 => Signal::Jump(SIDES[i - 36]),
            38 | 39 => Signal::Climb(SIDES[i - 38]),
            _ => return None,
        })
    }
}

/// The set of signals crossing one cell edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(u64);

impl Edge {
    pub fn new() -> Edge {
        Edge(0)
    }

    /// Adds a signal; false if it was already there.
    pub fn insert(&mut self, s: Signal) -> bool {
        let b = 1u64 << s.index();
        let fresh = self.0 & b == 0;
        self.0 |= b;
        fresh
    }

    pub fn remove(&mut self, s: Signal) -> bool {
        let b = 1u64 << s.index();
        let had = self.0 & b != 0;
        self.0 &= !b;
        had
    }

    pub fn contains(&self, s: &Signal) -> bool {
        self.0 >> s.index() & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Signal> + '_ {
        (0..Signal::COUNT).filter(|i| self.0 >> i & 1 == 1).filter_map(Signal::from_index)
    }
}

impl FromIterator<Signal> for Edge {
    fn from_iter<I: IntoIterator<Item = Signal>>(it: I) -> Self {
        let mut e = Edge::new();
        for s in it {
            e.insert(s);
        }
        e
    }
}

/// Name of an edge colour: its signals joined by `+`, or `blank`.
pub fn edge_name(e: &Edge) -> String {
    if e.is_empty() {
        return "blank".into();
    }
    let mut s = String::new();
    for (i, sig) in e.iter().enumerate() {
        if i > 0 {
            s.push('+');
        }
        let _ = write!(s, "{sig}");
    }
    s
}

fn parse_edge(s: &str) -> Result<Edge, TrilateralError> {
    if s == "blank" {
        return Ok(Edge::new());
    }
    s.split('+').map(str::parse).collect()
}

/// Which part of a trilateral occupies a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Vertex,
    Leg(Side),
    Corner(Side),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalGrid {
    pub rows: usize,
    pub cols: usize,
    /// Horizontal edges: `(rows + 1) * cols`, edge `(r, c)` is north of cell `(r, c)`.
    h: Vec<Edge>,
    /// Vertical edges: `rows * (cols + 1)`, edge `(r, c)` is west of cell `(r, c)`.
    v: Vec<Edge>,
    /// Rows on which some signal runs into the grid's left or right edge.
    pub partial_rows: BTreeSet<usize>,
}

impl SignalGrid {
    pub fn blank(rows: usize, cols: usize) -> SignalGrid {
        SignalGrid {
            rows,
            cols,
            h: vec![Edge::new(); (rows + 1) * cols],
            v: vec![Edge::new(); rows * (cols + 1)],
            partial_rows: BTreeSet::new(),
        }
    }

    pub fn north(&self, r: usize, c: usize) -> &Edge {
        &self.h[r * self.cols + c]
    }

    pub fn south(&self, r: usize, c: usize) -> &Edge {
        &self.h[(r + 1) * self.cols + c]
    }

    pub fn west(&self, r: usize, c: usize) -> &Edge {
        &self.v[r * (self.cols + 1) + c]
    }

    pub fn east(&self, r: usize, c: usize) -> &Edge {
        &self.v[r * (self.cols + 1) + c + 1]
    }

    /// Vertical edge `c` of row `r` (0 is the grid's left edge).
    pub fn vertical(&self, r: usize, c: usize) -> &Edge {
        &self.v[r * (self.cols + 1) + c]
    }

    pub fn vertical_mut(&mut self, r: usize, c: usize) -> &mut Edge {
        &mut self.v[r * (self.cols + 1) + c]
    }

    /// Horizontal edge above cell `(r, c)`.
    pub fn horizontal_mut(&mut self, r: usize, c: usize) -> &mut Edge {
        &mut self.h[r * self.cols + c]
    }

    /// Edge names in N, E, S, W order.
    pub fn cell(&self, r: usize, c: usize) -> [String; 4] {
        [
            edge_name(self.north(r, c)),
            edge_name(self.east(r, c)),
            edge_name(self.south(r, c)),
            edge_name(self.west(r, c)),
        ]
    }

    /// Edge sets in N, E, S, W order.
    pub fn cell_key(&self, r: usize, c: usize) -> [Edge; 4] {
        [*self.north(r, c), *self.east(r, c), *self.south(r, c), *self.west(r, c)]
    }

    pub fn cell_edges(&self, r: usize, c: usize) -> [&Edge; 4] {
        [self.north(r, c), self.east(r, c), self.south(r, c), self.west(r, c)]
    }

    /// Whether some leg, vertex or corner occupies the cell. A leg enters a
    /// cell from the north through its elbow and leaves sideways; an elbow
    /// only sees the leg on its inner side and below.
    pub fn has_leg(&self, r: usize, c: usize) -> bool {
        has(self.north(r, c), |s| matches!(s, Signal::Leg { .. }))
            || has(self.west(r, c), |s| matches!(s, Signal::Leg { side: Side::Left, .. }))
            || has(self.east(r, c), |s| matches!(s, Signal::Leg { side: Side::Right, .. }))
    }

    pub fn dump(&self) -> String {
        let mut out = format!("sgrid v1 rows={} cols={}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let [n, e, s, w] = self.cell(r, c);
                let _ = writeln!(out, "{r},{c}: N={n} E={e} S={s} W={w}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<SignalGrid, TrilateralError> {
        let bad = |m: &str| TrilateralError::Parse(m.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().ok_or_else(|| bad("empty input"))?;
        let mut rows = None;
        let mut cols = None;
        let mut it = head.split_whitespace();
        if it.next() != Some("sgrid") || it.next() != Some("v1") {
            return Err(bad("missing `sgrid v1` header"));
        }
        for kv in it {
            match kv.split_once('=') {
                Some(("rows", v)) => rows = v.parse().ok(),
                Some(("cols", v)) => cols = v.parse().ok(),
                _ => return Err(bad("bad header field")),
            }
        }
        let (rows, cols) = (rows.ok_or_else(|| bad("no rows"))?, cols.ok_or_else(|| bad("no cols"))?);
        let mut g = SignalGrid::blank(rows, cols);
        for line in lines {
            let (pos, rest) = line.split_once(':').ok_or_else(|| bad(line))?;
            let (r, c) = pos.split_once(',').ok_or_else(|| bad(line))?;
            let r: usize = r.trim().parse().map_err(|_| bad(line))?;
            let c: usize = c.trim().parse().map_err(|_| bad(line))?;
            if r >= rows || c >= cols {
                return Err(bad(line));
            }
            for part in rest.split_whitespace() {
                let (k, v) = part.split_once('=').ok_or_else(|| bad(line))?;
                let e = parse_edge(v)?;
                let slot = match k {
                    "N" => g.horizontal_mut(r, c),
                    "S" => g.horizontal_mut(r + 1, c),
                    "W" => g.vertical_mut(r, c),
                    "E" => g.vertical_mut(r, c + 1),
                    _ => return Err(bad(line)),
                };
                if !slot.is_empty() && *slot != e {
                    return Err(bad("edge listed twice with different signals"));
                }
                *slot = e;
            }
        }
        Ok(g)
    }

    /// The cell types of the grid as a tile assignment over `set`.
    pub fn assignment(&self, set: &EuclidTileSet) -> (Region, Vec<Option<usize>>) {
        let region = Region::grid(self.rows, self.cols);
        let a = (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| set.lookup(&self.cell(r, c)))
            .collect();
        (region, a)
    }

    /// A `k` x `k` window whose outer edges are pinned to this grid's
    /// colours, together with the grid's own tiles for it.
    pub fn window(
        &self,
        r0: usize,
        c0: usize,
        k: usize,
        set: &mut EuclidTileSet,
    ) -> (Region, Vec<Option<usize>>) {
        use crate::wangkit::{EAST, NORTH, SOUTH, WEST};
        let mut region = Region::grid(k, k);
        let mut truth = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let (r, c) = (r0 + i, c0 + j);
                let cell = self.cell(r, c);
                let s = i * k + j;
                if i == 0 {
                    let col = set.colour_of(&cell[0]);
                    region.set_boundary(s, NORTH, col);
                }
                if i + 1 == k {
                    let col = set.colour_of(&cell[2]);
                    region.set_boundary(s, SOUTH, col);
                }
                if j == 0 {
                    let col = set.colour_of(&cell[3]);
                    region.set_boundary(s, WEST, col);
                }
                if j + 1 == k {
                    let col = set.colour_of(&cell[1]);
                    region.set_boundary(s, EAST, col);
                }
                truth.push(set.lookup(&cell));
            }
        }
        (region, truth)
    }
}

/// Cell occupancy by trilateral parts, per row.
struct Occupancy {
    cells: BTreeMap<(usize, usize), Vec<(usize, Part)>>,
}

impl Occupancy {
    fn new(scene: &TrilateralScene) -> Occupancy {
        let mut cells: BTreeMap<(usize, usize), Vec<(usize, Part)>> = BTreeMap::new();
        for (i, t) in scene.trilaterals.iter().enumerate() {
            for r in t.vertex_row..=t.basis_row {
                let (l, h) = t.legs_at(r).expect("checked by render");
                if r == t.vertex_row {
                    cells.entry((r, l)).or_default().push((i, Part::Vertex));
                } else if r == t.basis_row {
                    cells.entry((r, l)).or_default().push((i, Part::Corner(Side::Left)));
                    cells.entry((r, h)).or_default().push((i, Part::Corner(Side::Right)));
                } else {
                    cells.entry((r, l)).or_default().push((i, Part::Leg(Side::Left)));
                    cells.entry((r, h)).or_default().push((i, Part::Leg(Side::Right)));
                }
            }
        }
        Occupancy { cells }
    }

    fn at(&self, r: usize, c: usize) -> &[(usize, Part)] {
        self.cells.get(&(r, c)).map_or(&[], Vec::as_slice)
    }
}

/// Renders the scene's legs, bases, horizontal signals and green mid-point
/// signals.
///
/// Emission rules: triangle legs emit outward on every row, in the lower
/// position on the vertex row and the upper position below it; phantoms emit
/// only at the vertex (lower) and at the basis corners (upper), outward. A
/// horizontal runs until it enters a cell holding a triangle leg of its own
/// colour; phantom legs let it through. On the basis row itself a corner
/// emits a covered base instead of a horizontal, stopped the same way.
/// Green runs along every mid-line, inside the trilateral and outward from
/// both legs, until it enters the mid-point of a triangle leg on that row:
/// triangle legs stop green, phantom legs do not.
pub fn render_grid(scene: &TrilateralScene) -> Result<SignalGrid, TrilateralError> {
    for t in &scene.trilaterals {
        let ok = t.basis_row < scene.rows
            && t.axis > t.height()
            && t.axis + t.height() + 1 < scene.cols;
        if !ok {
            return Err(TrilateralError::Overflow {
                need_rows: t.basis_row + 1,
                need_cols: t.axis + t.height() + 2,
                rows: scene.rows,
                cols: scene.cols,
            });
        }
    }
    let occ = Occupancy::new(scene);
    let mut g = SignalGrid::blank(scene.rows, scene.cols);
    let tris = &scene.trilaterals;

    // legs through their elbows
    for t in tris {
        for r in t.vertex_row..t.basis_row {
            let (l, h) = t.legs_at(r).unwrap();
            let half = t.half_at(r);
            for (side, at_edge, elbow) in [(Side::Left, l, l - 1), (Side::Right, h + 1, h + 1)] {
                let sig = Signal::Leg { colour: t.colour, kind: t.kind, side, half };
                if !g.vertical_mut(r, at_edge).insert(sig) || !g.horizontal_mut(r + 1, elbow).insert(sig) {
                    return Err(TrilateralError::Conflict { row: r, col: at_edge, what: format!("two {sig} legs") });
                }
            }
        }
    }

    // bases
    for t in tris {
        let (l, h) = t.legs_at(t.basis_row).unwrap();
        for c in l + 1..=h {
            g.vertical_mut(t.basis_row, c).insert(Signal::Base { colour: t.colour, kind: t.kind, open: true });
        }
    }

    // horizontals: absorbed by triangles of their colour, and on a basis row
    // by a corner of the same generation
    let absorbs = |r: usize, c: usize, t: &Trilateral| {
        occ.at(r, c).iter().any(|&(i, p)| {
            let o = &tris[i];
            o.colour == t.colour
                && (o.kind == TriKind::Triangle
                    || (r == t.basis_row && o.basis_row == r && o.generation == t.generation && matches!(p, Part::Corner(_))))
        })
    };
    for t in tris {
        let rows: Vec<(usize, Position)> = match t.kind {
            TriKind::Triangle => (t.vertex_row..=t.basis_row)
                .map(|r| (r, if r == t.vertex_row { Position::Lower } else { Position::Upper }))
                .collect(),
            TriKind::Phantom => vec![(t.vertex_row, Position::Lower), (t.basis_row, Position::Upper)],
        };
        for (r, position) in rows {
            let (l, h) = t.legs_at(r).unwrap();
            for side in [Side::Left, Side::Right] {
                // a corner's emission on its own basis row is the covered basis
                let sig = if r == t.basis_row {
                    Signal::Base { colour: t.colour, kind: t.kind, open: false }
                } else {
                    Signal::Horizontal { colour: t.colour, side, position }
                };
                let mut c = if side == Side::Left { l } else { h };
                loop {
                    let edge = if side == Side::Left { c } else { c + 1 };
                    g.vertical_mut(r, edge).insert(sig);
                    if (side == Side::Left && c == 0) || (side == Side::Right && c + 1 == scene.cols) {
                        g.partial_rows.insert(r);
                        break;
                    }
                    c = if side == Side::Left { c - 1 } else { c + 1 };
                    if absorbs(r, c, t) {
                        break;
                    }
                }
            }
        }
    }

    // green
    let stops_green = |r: usize, c: usize| {
        occ.at(r, c).iter().any(|&(i, p)| {
            let o = &tris[i];
            o.kind == TriKind::Triangle && o.mid_row == r && matches!(p, Part::Leg(_))
        })
    };
    for t in tris {
        let m = t.mid_row;
        let (l, h) = t.legs_at(m).unwrap();
        for c in l + 1..=h {
            g.vertical_mut(m, c).insert(Signal::Green);
        }
        for side in [Side::Left, Side::Right] {
            let mut c = if side == Side::Left { l } else { h };
            loop {
                let edge = if side == Side::Left { c } else { c + 1 };
                g.vertical_mut(m, edge).insert(Signal::Green);
                if (side == Side::Left && c == 0) || (side == Side::Right && c + 1 == scene.cols) {
                    g.partial_rows.insert(m);
                    break;
                }
                c = if side == Side::Left { c - 1 } else { c + 1 };
                if stops_green(m, c) {
                    break;
                }
            }
        }
    }
    Ok(g)
}

/// The distinct cell types of a corpus of grids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidTileSet {
    set: TileSet,
    index: BTreeMap<[String; 4], usize>,
}

impl Default for EuclidTileSet {
    fn default() -> Self {
        Self::new()
    }
}

impl EuclidTileSet {
    pub fn new() -> Self {
        EuclidTileSet { set: TileSet::new(4), index: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn tiles(&self) -> &TileSet {
        &self.set
    }

    pub fn types(&self) -> impl Iterator<Item = &[String; 4]> {
        self.index.keys()
    }

    /// Edge names of tile `i`, North, East, South, West.
    pub fn cell_of(&self, i: usize) -> [String; 4] {
        let t = self.set.tile(i);
        std::array::from_fn(|s| self.set.color_name(t[s]).to_string())
    }

    /// The colour id of an edge name, registering it if new.
    pub fn colour_of(&mut self, name: &str) -> u32 {
        self.set.color(name)
    }

    pub fn lookup(&self, cell: &[String; 4]) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn insert(&mut self, cell: [String; 4]) -> usize {
        if let Some(&i) = self.index.get(&cell) {
            return i;
        }
        let edges: Vec<&str> = cell.iter().map(String::as_str).collect();
        let i = self.set.add(&format!("t{}", self.index.len()), &edges);
        self.index.insert(cell, i);
        i
    }
}

/// Collects every cell type of the corpus. Types are numbered in the order
/// of their signal sets, so the result does not depend on the order of the
/// grids.
pub fn derive_tileset<'a>(grids: impl IntoIterator<Item = &'a SignalGrid>) -> EuclidTileSet {
    let mut types = BTreeSet::new();
    for g in grids {
        for r in 0..g.rows {
            for c in 0..g.cols {
                types.insert(g.cell_key(r, c));
            }
        }
    }
    let mut set = EuclidTileSet::new();
    for t in types {
        set.insert(t.map(|e| edge_name(&e)));
    }
    set
}

fn has(e: &Edge, f: impl Fn(&Signal) -> bool) -> bool {
    e.iter().any(|s| f(&s))
}

/// Rows of a red triangle whose axis cell holds a blue letter that the
/// triangle sees, read off the grid's signals.
///
/// A blue letter on the axis is a blue vertex (first-half legs leaving on
/// both sides with no leg coming from above) or a blue open basis running
/// through the axis cell. It is hidden when a red horizontal reaches the
/// triangle's left leg from the inside on that row: only smaller red
/// triangles crossing the row emit one there.
pub fn free_rows(grid: &SignalGrid, scene: &TrilateralScene, k: usize) -> Result<Vec<usize>, TrilateralError> {
    let t = scene.trilaterals.get(k).ok_or(TrilateralError::Unknown(k))?;
    if t.colour != Colour::Red || t.kind != TriKind::Triangle {
        return Err(TrilateralError::NotRed(k));
    }
    let blue = Colour::Blue;
    let red = Colour::Red;
    let mut out = Vec::new();
    for r in t.vertex_row + 1..t.basis_row {
        let x = t.axis;
        let vertex = has(grid.west(r, x), |s| {
            matches!(s, Signal::Leg { colour, side: Side::Left, half: Half::First, .. } if *colour == blue)
        }) && has(grid.east(r, x), |s| {
            matches!(s, Signal::Leg { colour, side: Side::Right, half: Half::First, .. } if *colour == blue)
        }) && !has(grid.north(r, x), |s| matches!(s, Signal::Leg { colour, .. } if *colour == blue));
        let basis = has(grid.west(r, x), |s| matches!(s, Signal::Base { colour, open: true, .. } if *colour == blue))
            && has(grid.east(r, x), |s| matches!(s, Signal::Base { colour, open: true, .. } if *colour == blue));
        if !(vertex || basis) {
            continue;
        }
        let (l, _) = t.legs_at(r).unwrap();
        let hidden = has(grid.east(r, l), |s| {
            matches!(s, Signal::Horizontal { colour, side: Side::Left, .. } if *colour == red)
        });
        if !hidden {
            out.push(r);
        }
    }
    Ok(out)
}

/// Pairs of same-colour triangles that overlap without nesting.
pub fn same_colour_overlaps(scene: &TrilateralScene) -> Vec<(usize, usize)> {
    let tri: Vec<(usize, &Trilateral)> = scene.triangles().collect();
    let mut out = Vec::new();
    for (a, &(i, s)) in tri.iter().enumerate() {
        for &(j, t) in &tri[a + 1..] {
            if s.colour != t.colour {
                continue;
            }
            if intersects(s, t) && !contains(s, t) && !contains(t, s) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Whether `outer` contains every cell of `inner`.
pub fn contains(outer: &Trilateral, inner: &Trilateral) -> bool {
    outer.vertex_row <= inner.vertex_row
        && inner.basis_row <= outer.basis_row
        && inner.axis.abs_diff(outer.axis) <= inner.vertex_row - outer.vertex_row
}

pub fn intersects(s: &Trilateral, t: &Trilateral) -> bool {
    let top = s.vertex_row.max(t.vertex_row);
    let bottom = s.basis_row.min(t.basis_row);
    top <= bottom && s.axis.abs_diff(t.axis) <= (bottom - s.vertex_row) + (bottom - t.vertex_row)
}

/// Phantoms grouped by axis and mid-line, each tower sorted from the
/// youngest generation up.
pub fn towers(scene: &TrilateralScene) -> Vec<Vec<usize>> {
    let mut by: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in scene.trilaterals.iter().enumerate() {
        if t.kind == TriKind::Phantom {
            by.entry((t.axis, t.mid_row)).or_default().push(i);
        }
    }
    by.into_values()
        .map(|mut v| {
            v.sort_by_key(|&i| scene.trilaterals[i].generation);
            v
        })
        .collect()
}

/// Towers whose consecutive members are not nested with alternating colours.
pub fn bad_towers(scene: &TrilateralScene) -> Vec<Vec<usize>> {
    towers(scene)
        .into_iter()
        .filter(|tw| {
            tw.windows(2).any(|w| {
                let (a, b) = (&scene.trilaterals[w[0]], &scene.trilaterals[w[1]]);
                b.generation != a.generation + 1 || a.colour == b.colour || !contains(b, a)
            })
        })
        .collect()
}

/// A basis meeting a leg of another trilateral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Meeting {
    pub basis_of: usize,
    pub leg_of: usize,
    pub row: usize,
    /// The meeting lies on the half of the leg that holds the vertex.
    pub vertex_half: bool,
}

/// Every place where a basis crosses or touches another trilateral's leg.
pub fn basis_leg_meetings(scene: &TrilateralScene) -> Vec<Meeting> {
    let tris = &scene.trilaterals;
    let mut out = Vec::new();
    for (i, s) in tris.iter().enumerate() {
        let r = s.basis_row;
        let (sl, sh) = s.legs_at(r).unwrap();
        for (j, t) in tris.iter().enumerate() {
            if i == j || !t.crosses_row(r) || t.vertex_row == r {
                continue;
            }
            let (tl, th) = t.legs_at(r).unwrap();
            if (sl..=sh).contains(&tl) || (sl..=sh).contains(&th) {
                out.push(Meeting { basis_of: i, leg_of: j, row: r, vertex_half: r <= t.mid_row });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::{gen0, phase_oracle};

    fn scene(len: usize, phases: &[bool]) -> TrilateralScene {
        let m = gen0(len).unwrap().run(&phase_oracle(len, phases).unwrap()).unwrap();
        let widest = 2 << phases.len();
        lift(&m, len, 2 * widest + 8).unwrap()
    }

    #[test]
    fn gen0_window_of_eight() {
        let m = gen0(8).unwrap();
        let s = lift(&m, 8, 9).unwrap();
        let kinds: Vec<_> = s.trilaterals.iter().map(|t| (t.kind, t.vertex_row, t.basis_row)).collect();
        assert_eq!(
            kinds,
            vec![(TriKind::Triangle, 0, 2), (TriKind::Phantom, 2, 4), (TriKind::Triangle, 4, 6)]
        );
        assert!(lift(&m, 8, 6).is_err());
        assert!(lift(&m, 7, 9).is_err());
    }

    #[test]
    fn single_triangle_green_runs_to_both_edges() {
        let m = gen0(4).unwrap();
        let s = lift(&m, 4, 11).unwrap();
        assert_eq!(s.trilaterals.len(), 1);
        let g = render_grid(&s).unwrap();
        let row = s.trilaterals[0].mid_row;
        assert!((0..=s.cols).all(|c| g.v[row * (s.cols + 1) + c].contains(&Signal::Green)));
        assert!(g.partial_rows.contains(&row));
    }

    #[test]
    fn grid_matches_its_own_cell_types() {
        let s = scene(64, &[false, true, false]);
        let g = render_grid(&s).unwrap();
        let set = derive_tileset([&g]);
        let (region, a) = g.assignment(&set);
        assert!(crate::wangkit::match_tiles(&region, &a, set.tiles()).unwrap().is_empty());
        assert_eq!(SignalGrid::parse(&g.dump()).unwrap(), SignalGrid { partial_rows: BTreeSet::new(), ..g });
    }

    #[test]
    fn legs_switch_half_on_the_green_row() {
        let s = scene(32, &[false]);
        let g = render_grid(&s).unwrap();
        for t in &s.trilaterals {
            let (l, _) = t.legs_at(t.mid_row).unwrap();
            let above = g.north(t.mid_row, l);
            let below = g.west(t.mid_row, l);
            assert!(above.iter().any(|s| matches!(s, Signal::Leg { half: Half::First, .. })));
            assert!(below.iter().any(|s| matches!(s, Signal::Leg { half: Half::Second, .. })));
            assert!(g.east(t.mid_row, l).contains(&Signal::Green));
        }
    }

    #[test]
    fn phantom_legs_let_green_through() {
        // a phantom with the mid-line of an enclosing triangle
        let s = scene(64, &[false, false]);
        let g = render_grid(&s).unwrap();
        let (t, p) = s
            .triangles()
            .flat_map(|(_, t)| {
                s.trilaterals
                    .iter()
                    .filter(move |p| p.kind == TriKind::Phantom && p.mid_row == t.mid_row && contains(t, p))
                    .map(move |p| (t, p))
            })
            .next()
            .expect("tower inside a triangle");
        let (pl, _) = p.legs_at(p.mid_row).unwrap();
        assert!(g.west(p.mid_row, pl).contains(&Signal::Green));
        assert!(t.vertex_row < p.vertex_row);
    }

    #[test]
    fn blue_triangle_has_no_free_rows() {
        let s = scene(32, &[false]);
        let g = render_grid(&s).unwrap();
        let (i, _) = s.triangles().find(|(_, t)| t.colour == Colour::Blue).unwrap();
        assert_eq!(free_rows(&g, &s, i), Err(TrilateralError::NotRed(i)));
    }

    #[test]
    fn red_generation_one_sees_three_blue_letters() {
        let s = scene(64, &[false, false]);
        let g = render_grid(&s).unwrap();
        for (i, t) in s.triangles().filter(|(_, t)| t.generation == 1) {
            let rows = free_rows(&g, &s, i).unwrap();
            assert_eq!(rows.len(), 3, "triangle at row {}", t.vertex_row);
        }
    }

    #[test]
    fn signal_indices_are_a_bijection() {
        for i in 0..Signal::COUNT {
            let s = Signal::from_index(i).unwrap();
            assert_eq!(s.index(), i);
            assert_eq!(s.to_string().parse::<Signal>().unwrap(), s);
        }
        assert_eq!(Signal::from_index(Signal::COUNT), None);
    }

    #[test]
    fn signal_names_round_trip() {
        let s = scene(64, &[true, false, true]);
        let g = render_grid(&s).unwrap();
        for r in 0..g.rows {
            for c in 0..g.cols {
                for e in g.cell_edges(r, c) {
                    assert_eq!(&parse_edge(&edge_name(e)).unwrap(), e);
                }
            }
        }
    }
}

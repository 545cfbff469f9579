//! The mantilla: α-centres and β-petals laid over the heptagrid by a
//! substitution table on the ring tree.
//!
//! Every tile carries a state of the [`SplitTable`]. A state is either an
//! α-state, which makes its tile the centre of a flower of a given kind, or
//! a β-state. The sons of a tile get the states listed in the production of
//! its own state, so everything below the central flower is determined once
//! the petals are chosen.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::heptagrid::{fibonacci_tree, Patch, Status, TileId, SIDES};
use crate::wangkit::{Region, TileSet};

/// The table shipped with the crate.
pub const STANDARD_TABLE: &str = include_str!("../assets/splittable.txt");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MantillaError {
    #[error("patch of radius {0} cannot hold a flower")]
    PatchTooSmall(u32),
    #[error("oracle exhausted: a petal choice is needed")]
    OracleExhausted,
    #[error("oracle choice {choice} out of range (only {options} options)")]
    OracleOutOfRange { choice: usize, options: usize },
    #[error("malformed split table: {0}")]
    Parse(String),
    #[error("invalid split table: {0}")]
    Invalid(String),
    #[error("tile {0} is not a seed")]
    NotASeed(TileId),
    #[error("tile {0} is not in the patch")]
    UnknownTile(TileId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlowerKind {
    F,
    Gl,
    Gr,
    Eight,
}

impl FlowerKind {
    pub const ALL: [FlowerKind; 4] = [FlowerKind::F, FlowerKind::Gl, FlowerKind::Gr, FlowerKind::Eight];

    pub fn is_g(self) -> bool {
        matches!(self, FlowerKind::Gl | FlowerKind::Gr)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FlowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlowerKind::F => "F",
            FlowerKind::Gl => "Gl",
            FlowerKind::Gr => "Gr",
            FlowerKind::Eight => "8",
        })
    }
}

impl FromStr for FlowerKind {
    type Err = MantillaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" => Ok(FlowerKind::F),
            "Gl" | "G_l" => Ok(FlowerKind::Gl),
            "Gr" | "G_r" => Ok(FlowerKind::Gr),
            "8" | "E" | "Eight" => Ok(FlowerKind::Eight),
            _ => Err(MantillaError::Parse(format!("unknown flower kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Alpha(FlowerKind),
    Beta,
}

/// One production: a state, the status its tiles have, and its sons' states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Production {
    pub status: Status,
    pub role: Role,
    pub sons: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTable {
    pub states: Vec<Production>,
    /// Admissible petal words around the central α-tile, counterclockwise.
    pub petals: Vec<[u8; SIDES]>,
}

impl SplitTable {
    pub fn standard() -> SplitTable {
        SplitTable::parse(STANDARD_TABLE).expect("shipped table parses")
    }

    /// Format:
    /// ```text
    /// splittable v1
    /// <state> <W|B> <b|F|Gl|Gr|8> -> <son>@<slot> ...
    /// petals <s0> ... <s6>
    /// ```
    /// A son's slot is counted from the father's side.
    pub fn parse(text: &str) -> Result<SplitTable, MantillaError> {
        let err = |m: String| MantillaError::Parse(m);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some("splittable v1") => {}
            other => return Err(err(format!("bad header {other:?}"))),
        }
        let mut states: Vec<Option<Production>> = Vec::new();
        let mut petals = Vec::new();
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "petals" {
                let word: Vec<u8> = toks[1..]
                    .iter()
                    .map(|t| t.parse().map_err(|_| err(format!("bad petal {t:?}"))))
                    .collect::<Result<_, _>>()?;
                let word: [u8; SIDES] = word.try_into().map_err(|_| err("petal word needs 7 states".into()))?;
                petals.push(word);
                continue;
            }
            if toks.len() < 4 || toks[3] != "->" {
                return Err(err(format!("bad production {line:?}")));
            }
            let q: usize = toks[0].parse().map_err(|_| err(format!("bad state {:?}", toks[0])))?;
            let status = match toks[1] {
                "W" => Status::White,
                "B" => Status::Black,
                s => return Err(err(format!("bad status {s:?}"))),
            };
            let role = match toks[2] {
                "b" => Role::Beta,
                k => Role::Alpha(k.parse()?),
            };
            let offs = status.son_offsets();
            let mut sons = Vec::new();
            for (i, tok) in toks[4..].iter().enumerate() {
                let (s, slot) = tok.split_once('@').ok_or_else(|| err(format!("bad son {tok:?}")))?;
                let s: u8 = s.parse().map_err(|_| err(format!("bad son {tok:?}")))?;
                let slot: usize = slot.parse().map_err(|_| err(format!("bad son {tok:?}")))?;
                if offs.get(i) != Some(&slot) {
                    return Err(err(format!("son {i} of state {q} must sit at slot {:?}", offs.get(i))));
                }
                sons.push(s);
            }
            if states.len() <= q {
                states.resize(q + 1, None);
            }
            if states[q].replace(Production { status, role, sons }).is_some() {
                return Err(err(format!("state {q} defined twice")));
            }
        }
        let states = states
            .into_iter()
            .enumerate()
            .map(|(q, p)| p.ok_or_else(|| err(format!("state {q} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        let table = SplitTable { states, petals };
        table.validate()?;
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("splittable v1\n");
        for (q, p) in self.states.iter().enumerate() {
            let st = if p.status.is_white() { "W" } else { "B" };
            let role = match p.role {
                Role::Beta => "b".to_string(),
                Role::Alpha(k) => k.to_string(),
            };
            let _ = write!(out, "{q} {st} {role} ->");
            for (s, off) in p.sons.iter().zip(p.status.son_offsets()) {
                let _ = write!(out, " {s}@{off}");
            }
            out.push('\n');
        }
        for w in &self.petals {
            out.push_str("petals");
            for s in w {
                let _ = write!(out, " {s}");
            }
            out.push('\n');
        }
        out
    }

    /// Structural checks: son counts and statuses follow the Fibonacci
    /// pattern, so the sons' sectors partition the father's sector minus the
    /// father; one α-state per flower kind; petals are white states.
    pub fn validate(&self) -> Result<(), MantillaError> {
        let bad = |m: String| Err(MantillaError::Invalid(m));
        let n = self.states.len();
        for (q, p) in self.states.iter().enumerate() {
            if p.sons.len() != p.status.son_offsets().len() {
                return bad(format!("state {q} has {} sons", p.sons.len()));
            }
            for (i, &s) in p.sons.iter().enumerate() {
                if s as usize >= n {
                    return bad(format!("state {q} refers to unknown state {s}"));
                }
                if self.states[s as usize].status != Status::son_status(i) {
                    return bad(format!("son {i} of state {q} has the wrong status"));
                }
            }
        }
        for k in FlowerKind::ALL {
            let c = self.states.iter().filter(|p| p.role == Role::Alpha(k)).count();
            if c != 1 {
                return bad(format!("{c} α-states of kind {k}"));
            }
        }
        if self.petals.is_empty() {
            return bad("no petal word".into());
        }
        for w in &self.petals {
            if w.iter().any(|&s| s as usize >= n || !self.states[s as usize].status.is_white()) {
                return bad(format!("petal word {w:?} uses a missing or black state"));
            }
        }
        Ok(())
    }

    pub fn alpha_state(&self, kind: FlowerKind) -> u8 {
        self.states.iter().position(|p| p.role == Role::Alpha(kind)).expect("validated") as u8
    }

    /// Rank of a state among the states of its type (α or β).
    pub fn decoration(&self, q: u8) -> u8 {
        let alpha = matches!(self.states[q as usize].role, Role::Alpha(_));
        self.states[..q as usize]
            .iter()
            .filter(|p| matches!(p.role, Role::Alpha(_)) == alpha)
            .count() as u8
    }

    /// Number of α- and β-states.
    pub fn variant_counts(&self) -> (usize, usize) {
        let a = self.states.iter().filter(|p| matches!(p.role, Role::Alpha(_))).count();
        (a, self.states.len() - a)
    }

    /// State counts per ring obtained by expanding the productions from the
    /// central flower, without building any patch.
    pub fn expand_counts(&self, petal_word: usize, rings: u32) -> Vec<Vec<u64>> {
        let n = self.states.len();
        let mut out = Vec::new();
        if rings == 0 {
            return out;
        }
        let mut cur = vec![0u64; n];
        for &s in &self.petals[petal_word] {
            cur[s as usize] += 1;
        }
        out.push(cur.clone());
        for _ in 1..rings {
            let mut next = vec![0u64; n];
            for (q, &c) in cur.iter().enumerate() {
                for &s in &self.states[q].sons {
                    next[s as usize] += c;
                }
            }
            out.push(next.clone());
            cur = next;
        }
        out
    }

    /// Heptagonal Wang prototiles reachable from the table. A tile is a
    /// state with the states of its seven neighbours; the edge towards a
    /// neighbour is coloured by the unordered pair of the two states, so two
    /// tiles match along an edge exactly when they agree on that pair.
    pub fn prototiles(&self) -> TileSet {
        let mut set = TileSet::new(SIDES);
        let add = |set: &mut TileSet, own: u8, nbrs: &[u8; SIDES]| {
            let cols: Vec<String> = nbrs.iter().map(|&u| edge_colour(own, u)).collect();
            let refs: Vec<&str> = cols.iter().map(String::as_str).collect();
            set.add(&format!("q{own}"), &refs);
        };
        // near the centre: read off small balls for every root and petal word
        let ball = crate::heptagrid::build_patch(4).expect("small patch");
        for kind in FlowerKind::ALL {
            for w in 0..self.petals.len() {
                let lab = generate_mantilla_with(&ball, self, kind, &[w]).expect("table validated");
                for t in ball.tiles().filter(|&t| ball.ring_of(t) <= 2) {
                    add(&mut set, lab.state(t), &lab.neighbour_states(&ball, t).expect("interior"));
                }
                // ring-3 words seed the closure below
            }
        }
        for (a, b, c) in self.triple_closure() {
            for (x, nbrs) in self.son_neighbourhoods(a, b, c) {
                add(&mut set, x, &nbrs);
            }
        }
        set
    }

    /// All triples of consecutive states that occur on some ring at depth 2
    /// or more, closed under substitution.
    fn triple_closure(&self) -> BTreeSet<(u8, u8, u8)> {
        let mut seen = BTreeSet::new();
        let mut todo = Vec::new();
        let push = |t: (u8, u8, u8), seen: &mut BTreeSet<_>, todo: &mut Vec<_>| {
            if seen.insert(t) {
                todo.push(t);
            }
        };
        for w in &self.petals {
            let ring2: Vec<u8> = w.iter().flat_map(|&s| self.states[s as usize].sons.iter().copied()).collect();
            let n = ring2.len();
            for i in 0..n {
                push((ring2[(i + n - 1) % n], ring2[i], ring2[(i + 1) % n]), &mut seen, &mut todo);
            }
        }
        while let Some((a, b, c)) = todo.pop() {
            let word: Vec<u8> = [a, b, c].iter().flat_map(|&s| self.states[s as usize].sons.iter().copied()).collect();
            for win in word.windows(3) {
                push((win[0], win[1], win[2]), &mut seen, &mut todo);
            }
        }
        seen
    }

    /// Neighbourhoods, in slot order, of the sons of `b` when `a`, `b`, `c`
    /// are consecutive on a ring.
    fn son_neighbourhoods(&self, a: u8, b: u8, c: u8) -> Vec<(u8, [u8; SIDES])> {
        let sons = |q: u8| &self.states[q as usize].sons;
        let row: Vec<(u8, u8)> = [a, b, c].iter().flat_map(|&p| sons(p).iter().map(move |&s| (p, s))).collect();
        let la = sons(a).len();
        let mut out = Vec::new();
        for j in 0..sons(b).len() {
            let i = la + j;
            let x = row[i].1;
            let (prev, next) = (row[i - 1].1, row[i + 1].1);
            let xs = sons(x);
            let next_first = sons(next)[0];
            let nbrs = if self.states[x as usize].status.is_white() {
                [b, prev, xs[0], xs[1], xs[2], next_first, next]
            } else {
                [b, a, prev, xs[0], xs[1], next_first, next]
            };
            out.push((x, nbrs));
        }
        out
    }
}

fn edge_colour(a: u8, b: u8) -> String {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    format!("{lo}:{hi}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MantillaTile {
    pub state: u8,
    pub role: Role,
    /// Index among the α- or β-variants of the table.
    pub decoration: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flower {
    pub centre: TileId,
    pub petals: [TileId; SIDES],
    pub kind: FlowerKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub root_kind: FlowerKind,
    pub petal_word: usize,
    pub tiles: Vec<MantillaTile>,
    /// Flowers whose seven petals all lie in the patch.
    pub flowers: Vec<Flower>,
}

impl Labeling {
    pub fn state(&self, t: TileId) -> u8 {
        self.tiles[t as usize].state
    }

    pub fn role(&self, t: TileId) -> Role {
        self.tiles[t as usize].role
    }

    pub fn kind(&self, t: TileId) -> Option<FlowerKind> {
        match self.role(t) {
            Role::Alpha(k) => Some(k),
            Role::Beta => None,
        }
    }

    pub fn is_alpha(&self, t: TileId) -> bool {
        matches!(self.role(t), Role::Alpha(_))
    }

    /// States of the seven neighbours, or `None` on the patch boundary.
    pub fn neighbour_states(&self, p: &Patch, t: TileId) -> Option<[u8; SIDES]> {
        let mut out = [0u8; SIDES];
        for (slot, n) in p.neighbours(t).iter().enumerate() {
            out[slot] = self.state((*n)?);
        }
        Some(out)
    }

    /// Tiles carrying an α of kind 8.
    pub fn eight_centres(&self) -> Vec<TileId> {
        (0..self.tiles.len() as TileId).filter(|&t| self.kind(t) == Some(FlowerKind::Eight)).collect()
    }

    pub fn dump(&self) -> String {
        let mut out = format!("mantilla v1 root={} petals={}\n", self.root_kind, self.petal_word);
        for (t, m) in self.tiles.iter().enumerate() {
            let (k, fl) = match m.role {
                Role::Alpha(k) => ("a", k.to_string()),
                Role::Beta => ("b", "_".to_string()),
            };
            let _ = writeln!(out, "{t} kind={k} dec={} flower={fl}", m.decoration);
        }
        out
    }

    /// Wang view of the labeling: the interior tiles, each mapped to its
    /// prototile in `set` (or `None` when the neighbourhood is not a
    /// prototile, which `match_tiles` then reports).
    pub fn wang_assignment(&self, p: &Patch, set: &TileSet) -> (Region, Vec<Option<usize>>) {
        let region = Region::from_patch(p);
        let assignment = p
            .tiles()
            .map(|t| {
                let nbrs = self.neighbour_states(p, t)?;
                let own = self.state(t);
                let cols: Option<Vec<_>> = nbrs.iter().map(|&u| set.color_id(&edge_colour(own, u))).collect();
                set.find(&cols?)
            })
            .collect();
        (region, assignment)
    }
}

/// Lays the mantilla over `p` with the standard table.
pub fn generate_mantilla(p: &Patch, root_kind: FlowerKind, oracle: &[usize]) -> Result<Labeling, MantillaError> {
    generate_mantilla_with(p, &SplitTable::standard(), root_kind, oracle)
}

/// The centre of `p` becomes an α-tile of `root_kind`. The only choice is
/// the petal word, taken from the oracle when the table offers more than
/// one; everything below the petals follows the productions.
pub fn generate_mantilla_with(
    p: &Patch,
    table: &SplitTable,
    root_kind: FlowerKind,
    oracle: &[usize],
) -> Result<Labeling, MantillaError> {
    if p.radius() == 0 {
        return Err(MantillaError::PatchTooSmall(0));
    }
    let petal_word = if table.petals.len() == 1 {
        0
    } else {
        let &c = oracle.first().ok_or(MantillaError::OracleExhausted)?;
        if c >= table.petals.len() {
            return Err(MantillaError::OracleOutOfRange { choice: c, options: table.petals.len() });
        }
        c
    };
    let mut states = vec![0u8; p.len()];
    states[0] = table.alpha_state(root_kind);
    for (i, t) in p.ring(1).enumerate() {
        states[t as usize] = table.petals[petal_word][i];
    }
    for k in 1..p.radius() {
        for t in p.ring(k) {
            let prod = &table.states[states[t as usize] as usize];
            for (s, &q) in p.sons(t).into_iter().zip(&prod.sons) {
                states[s as usize] = q;
            }
        }
    }
    let tiles: Vec<MantillaTile> = states
        .iter()
        .map(|&q| MantillaTile { state: q, role: table.states[q as usize].role, decoration: table.decoration(q) })
        .collect();
    let mut flowers = Vec::new();
    for t in p.tiles() {
        if let Role::Alpha(kind) = tiles[t as usize].role {
            let nb = p.neighbours(t);
            if nb.iter().all(Option::is_some) {
                flowers.push(Flower { centre: t, petals: nb.map(|x| x.unwrap()), kind });
            }
        }
    }
    Ok(Labeling { root_kind, petal_word, tiles, flowers })
}

/// Every α-tile has no α neighbour and every β-tile has exactly three,
/// checked on interior tiles. Returns the offending tiles.
pub fn flower_violations(p: &Patch, lab: &Labeling) -> Vec<TileId> {
    p.tiles()
        .filter(|&t| p.is_interior(t))
        .filter(|&t| {
            let a = p.neighbours(t).iter().flatten().filter(|&&u| lab.is_alpha(u)).count();
            if lab.is_alpha(t) {
                a != 0
            } else {
                a != 3
            }
        })
        .collect()
}

/// The nearest proper ancestor of `t` in the ring tree that is an α-tile.
pub fn alpha_ancestor(p: &Patch, lab: &Labeling, t: TileId) -> Option<TileId> {
    let mut f = p.father(t);
    while let Some(u) = f {
        if lab.is_alpha(u) {
            return Some(u);
        }
        f = p.father(u);
    }
    None
}

/// F-centres whose father flower is a G-flower, in tile order.
/// Whether `t` is a seed: an F-flower centre whose nearest α-ancestor is a
/// G-flower. Agrees with [`find_seeds`] without a pass over the patch.
pub fn is_seed(p: &Patch, lab: &Labeling, t: TileId) -> bool {
    if lab.kind(t) != Some(FlowerKind::F) {
        return false;
    }
    let mut up = p.father(t);
    while let Some(f) = up {
        if let Some(k) = lab.kind(f) {
            return k.is_g();
        }
        up = p.father(f);
    }
    false
}

pub fn find_seeds(p: &Patch, lab: &Labeling) -> Vec<TileId> {
    // context[t]: kind of the nearest α at or above t
    let mut ctx: Vec<Option<FlowerKind>> = vec![None; p.len()];
    let mut out = Vec::new();
    for t in p.tiles() {
        let above = p.father(t).and_then(|f| ctx[f as usize]);
        if lab.kind(t) == Some(FlowerKind::F) && above.is_some_and(FlowerKind::is_g) {
            out.push(t);
        }
        ctx[t as usize] = lab.kind(t).or(above);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorTree {
    pub seed: TileId,
    /// Sorted tiles spanned by the Fibonacci tree at the seed, clipped to the patch.
    pub area: Vec<TileId>,
    /// Border tiles below the seed, top to bottom.
    pub left: Vec<TileId>,
    pub right: Vec<TileId>,
}

impl SectorTree {
    pub fn contains(&self, t: TileId) -> bool {
        self.area.binary_search(&t).is_ok()
    }

    pub fn depth(&self) -> usize {
        self.left.len()
    }
}

/// A Fibonacci tree rooted at any tile, clipped to the patch.
pub fn sector_at(p: &Patch, root: TileId) -> Result<SectorTree, MantillaError> {
    if !p.contains(root) {
        return Err(MantillaError::UnknownTile(root));
    }
    let ft = fibonacci_tree(p, root, p.status(root), None).map_err(|_| MantillaError::UnknownTile(root))?;
    let mut area: Vec<TileId> = ft.nodes().collect();
    area.sort_unstable();
    Ok(SectorTree { seed: root, area, left: ft.left_border()[1..].to_vec(), right: ft.right_border()[1..].to_vec() })
}

pub fn tree_of_mantilla(p: &Patch, lab: &Labeling, seed: TileId) -> Result<SectorTree, MantillaError> {
    if !p.contains(seed) {
        return Err(MantillaError::UnknownTile(seed));
    }
    if find_seeds(p, lab).binary_search(&seed).is_err() {
        return Err(MantillaError::NotASeed(seed));
    }
    sector_at(p, seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AreaRelation {
    Disjoint,
    /// The first area contains the second.
    Contains,
    /// The first area lies inside the second.
    Inside,
    Equal,
    Overlap,
}

pub fn area_relation(a: &SectorTree, b: &SectorTree) -> AreaRelation {
    let common = a.area.iter().filter(|t| b.contains(**t)).count();
    match (common, common == a.area.len(), common == b.area.len()) {
        (0, _, _) => AreaRelation::Disjoint,
        (_, true, true) => AreaRelation::Equal,
        (_, false, true) => AreaRelation::Contains,
        (_, true, false) => AreaRelation::Inside,
        _ => AreaRelation::Overlap,
    }
}

/// Inclusion order on trees of the mantilla.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threads {
    /// Seeds, in tile order.
    pub seeds: Vec<TileId>,
    /// Index of the smallest tree strictly containing each tree.
    pub parent: Vec<Option<usize>>,
    /// Maximal chains, each from an outermost tree down to an innermost one.
    pub chains: Vec<Vec<usize>>,
}

impl Threads {
    pub fn height(&self) -> usize {
        self.chains.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Trees nest exactly when one seed is a ring-tree ancestor of the other,
/// since every area is a subtree of the ring tree.
pub fn threads(p: &Patch, lab: &Labeling) -> Threads {
    let seeds = find_seeds(p, lab);
    let index: HashMap<TileId, usize> = seeds.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut nearest: Vec<Option<usize>> = vec![None; p.len()];
    let mut parent = vec![None; seeds.len()];
    for t in p.tiles() {
        let above = p.father(t).and_then(|f| nearest[f as usize]);
        nearest[t as usize] = match index.get(&t) {
            Some(&i) => {
                parent[i] = above;
                Some(i)
            }
            None => above,
        };
    }
    let mut has_child = vec![false; seeds.len()];
    for q in parent.iter().flatten() {
        has_child[*q] = true;
    }
    let mut chains = Vec::new();
    for leaf in (0..seeds.len()).filter(|&i| !has_child[i]) {
        let mut chain = vec![leaf];
        while let Some(q) = parent[*chain.last().unwrap()] {
            chain.push(q);
        }
        chain.reverse();
        chains.push(chain);
    }
    Threads { seeds, parent, chains }
}

/// Meetings between border rays found on a labeling.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BorderReport {
    /// (seed, 8-centre) pairs whose tree border and sector border share a tile.
    pub tree_sector: Vec<(TileId, TileId)>,
    /// Pairs of seeds whose borders share a tile.
    pub tree_tree: Vec<(TileId, TileId)>,
}

impl BorderReport {
    pub fn is_clean(&self) -> bool {
        self.tree_sector.is_empty() && self.tree_tree.is_empty()
    }
}

/// Border rays (root included) of the trees of the mantilla against each
/// other and against the rays issued from 8-centres.
pub fn check_borders(p: &Patch, lab: &Labeling) -> Result<BorderReport, MantillaError> {
    let seeds = find_seeds(p, lab);
    let eights: Vec<TileId> = lab.eight_centres().into_iter().filter(|&t| t != p.center()).collect();
    let rays = |roots: &[TileId]| -> Result<HashMap<TileId, Vec<TileId>>, MantillaError> {
        let mut by_tile: HashMap<TileId, Vec<TileId>> = HashMap::new();
        for &r in roots {
            let s = sector_at(p, r)?;
            let tiles: BTreeSet<TileId> = std::iter::once(r).chain(s.left).chain(s.right).collect();
            for t in tiles {
                by_tile.entry(t).or_default().push(r);
            }
        }
        Ok(by_tile)
    };
    let tree_rays = rays(&seeds)?;
    let sector_rays = rays(&eights)?;
    let mut rep = BorderReport::default();
    let mut tt = BTreeSet::new();
    let mut ts = BTreeSet::new();
    for (t, owners) in &tree_rays {
        for (i, &a) in owners.iter().enumerate() {
            for &b in &owners[i + 1..] {
                tt.insert((a.min(b), a.max(b)));
            }
            for &e in sector_rays.get(t).map(Vec::as_slice).unwrap_or(&[]) {
                ts.insert((a, e));
            }
        }
    }
    rep.tree_tree = tt.into_iter().collect();
    rep.tree_sector = ts.into_iter().collect();
    Ok(rep)
}

/// Distinct α- and β-decorations used across labelings.
pub fn prototile_economy<'a>(labs: impl IntoIterator<Item = &'a Labeling>) -> (usize, usize) {
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for lab in labs {
        for m in &lab.tiles {
            match m.role {
                Role::Alpha(k) => a.insert((k.index(), m.decoration)),
                Role::Beta => b.insert(m.decoration),
            };
        }
    }
    (a.len(), b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heptagrid::build_patch;

    #[test]
    fn table_round_trips() {
        let t = SplitTable::standard();
        assert_eq!(SplitTable::parse(&t.to_text()).unwrap(), t);
        let (a, b) = t.variant_counts();
        assert_eq!(a, 4);
        assert!(b <= 17);
    }

    #[test]
    fn radius_one_flower() {
        let p = build_patch(1).unwrap();
        let lab = generate_mantilla(&p, FlowerKind::F, &[0]).unwrap();
        assert_eq!(lab.flowers.len(), 1);
        assert_eq!(lab.flowers[0].kind, FlowerKind::F);
        assert!(p.ring(1).all(|t| !lab.is_alpha(t)));
        assert!(find_seeds(&p, &lab).is_empty());
        assert_eq!(generate_mantilla(&build_patch(0).unwrap(), FlowerKind::F, &[0]), Err(MantillaError::PatchTooSmall(0)));
    }

    #[test]
    fn flowers_are_well_formed() {
        let p = build_patch(6).unwrap();
        for k in FlowerKind::ALL {
            let lab = generate_mantilla(&p, k, &[0]).unwrap();
            assert!(flower_violations(&p, &lab).is_empty());
        }
    }

    #[test]
    fn bad_table_is_rejected() {
        let mut t = SplitTable::standard();
        t.states[0].sons.pop();
        assert!(t.validate().is_err());
        assert!(SplitTable::parse("splittable v2\n").is_err());
    }

    #[test]
    fn last_ring_seed_is_clipped() {
        let p = build_patch(5).unwrap();
        let lab = generate_mantilla(&p, FlowerKind::Gl, &[0]).unwrap();
        let seeds = find_seeds(&p, &lab);
        if let Some(&s) = seeds.iter().find(|&&s| p.ring_of(s) == 5) {
            let tree = tree_of_mantilla(&p, &lab, s).unwrap();
            assert_eq!(tree.area, vec![s]);
            assert_eq!(tree.depth(), 0);
        }
        let beta = p.tiles().find(|&t| !lab.is_alpha(t)).unwrap();
        assert_eq!(tree_of_mantilla(&p, &lab, beta), Err(MantillaError::NotASeed(beta)));
    }
}

//! Active seeds and the computing areas inside red triangles, with a
//! space-time embedding of small Turing machines on their free rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::heptagrid::{Patch, TileId};
use crate::isocline::{Isoclines, PERIOD};
use crate::mantilla::{find_seeds, tree_of_mantilla, Labeling, MantillaError, SectorTree};
use crate::trilateral::{free_rows, SignalGrid, TrilateralError, TrilateralScene};

#[derive(Debug, Error)]
pub enum ComputingError {
    #[error(transparent)]
    Mantilla(#[from] MantillaError),
    #[error(transparent)]
    Trilateral(#[from] TrilateralError),
    #[error("triangle {0} has no free row")]
    NoFreeRows(usize),
    #[error("machine description, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// How many isoclines below an active seed its scent reaches.
pub const SCENT_REACH: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Activation {
    /// On an isocline of level 0.
    LevelZero,
    /// Reached by the scent of the given seed.
    Scent(TileId),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ActivationConfig {
    /// Generation 0 gets no green: the scent triggers it only on level 15.
    pub green_on_fifteen_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedState {
    pub seed: TileId,
    pub ring: u32,
    pub level: u32,
    pub active: Option<Activation>,
    /// Rings where this seed's scent meets a green-triggering isocline.
    pub green_rings: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActiveSeeds {
    pub seeds: Vec<SeedState>,
    pub trees: BTreeMap<TileId, SectorTree>,
}

impl ActiveSeeds {
    pub fn get(&self, seed: TileId) -> Option<&SeedState> {
        self.seeds.iter().find(|s| s.seed == seed)
    }

    pub fn active(&self) -> impl Iterator<Item = &SeedState> {
        self.seeds.iter().filter(|s| s.active.is_some())
    }

    /// Activation parent of a scent-activated seed.
    pub fn parent(&self, seed: TileId) -> Option<TileId> {
        match self.get(seed)?.active? {
            Activation::Scent(p) => Some(p),
            Activation::LevelZero => None,
        }
    }

    /// Whether following parents from any seed always ends at a level-0 seed.
    pub fn is_forest(&self) -> bool {
        self.seeds.iter().all(|s| {
            let mut cur = s.seed;
            for _ in 0..=self.seeds.len() {
                match self.parent(cur) {
                    Some(p) => cur = p,
                    None => return true,
                }
            }
            false
        })
    }

    /// Trees spanning at least one full period of levels, and how many of
    /// them hold an active seed.
    pub fn density(&self) -> (usize, usize) {
        let mut tall = 0;
        let mut covered = 0;
        for (root, tree) in &self.trees {
            if tree.depth() < PERIOD as usize {
                continue;
            }
            tall += 1;
            let hit = self.active().any(|s| s.seed == *root || tree.contains(s.seed));
            covered += hit as usize;
        }
        (tall, covered)
    }
}

/// Seeds on a level-0 isocline are active; an active seed spreads a scent
/// over its tree down to the fifth isocline below it, and seeds reached by
/// it become active. Seeds are settled by ring, so every parent is settled
/// before its sons.
pub fn activate_seeds(
    p: &Patch,
    lab: &Labeling,
    iso: &Isoclines,
    config: ActivationConfig,
) -> Result<ActiveSeeds, ComputingError> {
    let mut ids = find_seeds(p, lab);
    ids.sort_by_key(|&s| (p.ring_of(s), s));
    let mut trees = BTreeMap::new();
    for &s in &ids {
        trees.insert(s, tree_of_mantilla(p, lab, s)?);
    }
    let mut seeds: Vec<SeedState> = Vec::with_capacity(ids.len());
    for &s in &ids {
        let ring = p.ring_of(s);
        let level = iso.level_of(s);
        let active = if level == 0 {
            Some(Activation::LevelZero)
        } else {
            // the nearest active seed whose scent reaches this one
            seeds
                .iter()
                .rev()
                .filter(|a| a.active.is_some() && a.ring < ring && ring <= a.ring + SCENT_REACH)
                .find(|a| trees[&a.seed].contains(s))
                .map(|a| Activation::Scent(a.seed))
        };
        let green_rings = if active.is_some() {
            (ring + 1..=ring + SCENT_REACH)
                .filter(|&k| {
                    let lv = (level + k - ring) % PERIOD;
                    lv == 15 || (lv == 5 && !config.green_on_fifteen_only)
                })
                .collect()
        } else {
            Vec::new()
        };
        seeds.push(SeedState { seed: s, ring, level, active, green_rings });
    }
    seeds.sort_by_key(|s| s.seed);
    Ok(ActiveSeeds { seeds, trees })
}

/// How a vertical starts on the border of the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Contact {
    /// The axis, starting at the vertex.
    Vertex,
    /// The border point is on a free row.
    OnFreeRow,
    /// The border point lies between two free rows; the vertical goes down
    /// to the next one.
    BetweenRows,
    /// The border point lies below the last free row: no site.
    BelowLast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertical {
    /// Offset from the axis.
    pub offset: i64,
    pub contact: Contact,
    /// Index of the first free row carrying the vertical, if any.
    pub first_row: Option<usize>,
}

/// Free rows by verticals of a red triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputingArea {
    pub triangle: usize,
    pub axis: usize,
    pub vertex_row: usize,
    /// Grid rows of the free rows, top to bottom.
    pub rows: Vec<usize>,
    pub verticals: Vec<Vertical>,
}

impl ComputingArea {
    /// Largest vertical offset present on free row `i`.
    pub fn reach(&self, i: usize) -> i64 {
        (self.rows[i] - self.vertex_row) as i64 - 1
    }

    pub fn has_site(&self, i: usize, v: i64) -> bool {
        v.abs() <= self.reach(i)
    }

    /// Grid cell of the site of free row `i` on vertical `v`.
    pub fn site(&self, i: usize, v: i64) -> Option<(usize, usize)> {
        self.has_site(i, v).then(|| (self.rows[i], (self.axis as i64 + v) as usize))
    }

    /// Checks that every vertical meets each free row at or below its first
    /// one in exactly one site, and no row above it.
    pub fn validate(&self) -> Result<(), String> {
        for vert in &self.verticals {
            for i in 0..self.rows.len() {
                let expected = vert.first_row.is_some_and(|f| i >= f);
                if self.has_site(i, vert.offset) != expected {
                    return Err(format!("vertical {} on free row {}", vert.offset, i));
                }
            }
        }
        Ok(())
    }
}

/// The computing area of red triangle `k`: its free rows, and one vertical
/// per interior column, each starting where the border crosses it.
pub fn extract_area(scene: &TrilateralScene, grid: &SignalGrid, k: usize) -> Result<ComputingArea, ComputingError> {
    let rows = free_rows(grid, scene, k)?;
    if rows.is_empty() {
        return Err(ComputingError::NoFreeRows(k));
    }
    let t = &scene.trilaterals[k];
    let width = (t.basis_row - t.vertex_row) as i64;
    let mut verticals = Vec::new();
    for v in -width..=width {
        // the border reaches offset |v| on this row; the vertical is inside
        // from the row below
        let start = t.vertex_row + v.unsigned_abs() as usize;
        let first_row = rows.iter().position(|&r| r > start);
        let contact = if v == 0 {
            Contact::Vertex
        } else if first_row.is_none() {
            Contact::BelowLast
        } else if rows.contains(&start) {
            Contact::OnFreeRow
        } else {
            Contact::BetweenRows
        };
        verticals.push(Vertical { offset: v, contact, first_row });
    }
    Ok(ComputingArea { triangle: k, axis: t.axis, vertex_row: t.vertex_row, rows, verticals })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    fn delta(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Right => 1,
        }
    }
}

/// A deterministic single-tape machine. Symbol 0 is the blank and state 0
/// the initial state; a missing transition halts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMachine {
    pub states: usize,
    pub alphabet: Vec<char>,
    pub table: BTreeMap<(usize, u8), (usize, u8, Move)>,
}

impl TMachine {
    pub fn parse(text: &str) -> Result<TMachine, ComputingError> {
        let err = |line: usize, msg: &str| ComputingError::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        });
        let (n, head) = lines.next().ok_or_else(|| err(1, "empty"))?;
        let mut words = head.split_whitespace();
        if words.next() != Some("tm") || words.next() != Some("v1") {
            return Err(err(n + 1, "expected `tm v1` header"));
        }
        let (mut states, mut alphabet) = (None, None);
        for w in words {
            match w.split_once('=') {
                Some(("states", v)) => states = Some(v.parse::<usize>().map_err(|_| err(n + 1, "bad state count"))?),
                Some(("alphabet", v)) => alphabet = Some(v.chars().collect::<Vec<char>>()),
                _ => return Err(err(n + 1, "unknown header field")),
            }
        }
        let states = states.ok_or_else(|| err(n + 1, "missing states"))?;
        let alphabet = alphabet.filter(|a| !a.is_empty()).ok_or_else(|| err(n + 1, "missing alphabet"))?;
        let sym = |s: &str, line: usize| -> Result<u8, ComputingError> {
            let mut cs = s.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => alphabet
                    .iter()
                    .position(|&a| a == c)
                    .map(|i| i as u8)
                    .ok_or_else(|| err(line, "symbol not in alphabet")),
                _ => Err(err(line, "symbols are single characters")),
            }
        };
        let state = |s: &str, line: usize| -> Result<usize, ComputingError> {
            s.parse::<usize>().ok().filter(|&q| q < states).ok_or_else(|| err(line, "bad state"))
        };
        let mut table = BTreeMap::new();
        for (i, l) in lines {
            let line = i + 1;
            let (lhs, rhs) = l.split_once("->").ok_or_else(|| err(line, "expected `->`"))?;
            let lhs: Vec<&str> = lhs.split(',').map(str::trim).collect();
            let rhs: Vec<&str> = rhs.split(',').map(str::trim).collect();
            if lhs.len() != 2 || rhs.len() != 3 {
                return Err(err(line, "expected `q,s -> q',s',L|R`"));
            }
            let mv = match rhs[2] {
                "L" => Move::Left,
                "R" => Move::Right,
                _ => return Err(err(line, "move is L or R")),
            };
            let key = (state(lhs[0], line)?, sym(lhs[1], line)?);
            let val = (state(rhs[0], line)?, sym(rhs[1], line)?, mv);
            if table.insert(key, val).is_some() {
                return Err(err(line, "duplicate transition"));
            }
        }
        Ok(TMachine { states, alphabet, table })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tm v1 states={} alphabet={}\n", self.states, self.alphabet.iter().collect::<String>());
        for (&(q, a), &(q2, b, m)) in &self.table {
            let m = if m == Move::Left { 'L' } else { 'R' };
            let _ = writeln!(s, "{},{} -> {},{},{}", q, self.alphabet[a as usize], q2, self.alphabet[b as usize], m);
        }
        s
    }

    /// Symbols of a string over the alphabet.
    pub fn word(&self, w: &str) -> Option<Vec<u8>> {
        w.chars().map(|c| self.alphabet.iter().position(|&a| a == c).map(|i| i as u8)).collect()
    }
}

/// A machine configuration; blank cells are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub state: usize,
    pub head: i64,
    pub tape: BTreeMap<i64, u8>,
}

impl Config {
    pub fn initial(input: &[u8]) -> Config {
        let tape = input.iter().enumerate().filter(|(_, &s)| s != 0).map(|(i, &s)| (i as i64, s)).collect();
        Config { state: 0, head: 0, tape }
    }

    pub fn read(&self) -> u8 {
        self.tape.get(&self.head).copied().unwrap_or(0)
    }

    pub fn write(&mut self, pos: i64, s: u8) {
        if s == 0 {
            self.tape.remove(&pos);
        } else {
            self.tape.insert(pos, s);
        }
    }

    pub fn render(&self, alphabet: &[char]) -> String {
        let lo = self.tape.keys().next().copied().unwrap_or(0).min(self.head);
        let hi = self.tape.keys().next_back().copied().unwrap_or(0).max(self.head);
        let tape: String =
            (lo..=hi).map(|i| alphabet[self.tape.get(&i).copied().unwrap_or(0) as usize]).collect();
        format!("q={} head={} tape={}:{}", self.state, self.head, lo, tape)
    }
}

/// Plain simulation: the initial configuration, then one per step until the
/// machine halts or `steps` are done.
pub fn simulate(tm: &TMachine, input: &[u8], steps: usize) -> Vec<Config> {
    let mut c = Config::initial(input);
    let mut out = vec![c.clone()];
    for _ in 0..steps {
        let Some(&(q, s, m)) = tm.table.get(&(c.state, c.read())) else { break };
        let h = c.head;
        c.write(h, s);
        c.state = q;
        c.head += m.delta();
        out.push(c.clone());
    }
    out
}

/// What happened on one site of the area.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiteMark {
    /// Symbol coming down the vertical.
    pub above: u8,
    /// Symbol leaving downwards.
    pub below: u8,
    /// State carried by the signal out of the site, when an instruction was
    /// performed there.
    pub state_out: Option<usize>,
    /// Order of the instruction along the signal.
    pub step: Option<usize>,
    /// Direction the signal leaves the site in.
    pub towards: Option<Move>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedRun {
    /// Site marks per free row, by vertical offset.
    pub rows: Vec<BTreeMap<i64, SiteMark>>,
    /// Free row where the signal enters, and the vertical it looks at.
    pub entry: Vec<Option<i64>>,
    pub steps: usize,
    pub halted: bool,
    /// The signal needed a free row below the last one.
    pub exhausted: bool,
    /// Descents caused by a change of direction, and by the border.
    pub turns: usize,
    pub border_hits: usize,
}

/// Runs the machine on the area. The signal starts on the first free row at
/// the axis and performs an instruction on each vertical it meets. It stays
/// on the row while the move keeps the row's direction and the next vertical
/// is inside the border; otherwise it goes down its vertical to the next
/// free row and looks at the next vertical there.
pub fn run_embedded(area: &ComputingArea, tm: &TMachine, input: &[u8], steps: usize) -> EmbeddedRun {
    let n = area.rows.len();
    let mut rows: Vec<BTreeMap<i64, SiteMark>> = vec![BTreeMap::new(); n];
    let mut entry = vec![None; n];
    // what each vertical carries down, from its start
    let mut carried: BTreeMap<i64, u8> =
        input.iter().enumerate().filter(|(_, &s)| s != 0).map(|(i, &s)| (i as i64, s)).collect();
    let mut state = 0usize;
    let (mut row, mut v) = (0usize, 0i64);
    let mut dir: Option<Move> = None;
    let mut done = 0usize;
    let mut halted = false;
    let mut exhausted = false;
    let (mut turns, mut border_hits) = (0, 0);
    // every site of a row passes its vertical's symbol down unchanged unless
    // an instruction rewrites it
    let fill = |rows: &mut Vec<BTreeMap<i64, SiteMark>>, i: usize, carried: &BTreeMap<i64, u8>| {
        let reach = area.reach(i);
        for x in -reach..=reach {
            let s = carried.get(&x).copied().unwrap_or(0);
            rows[i].insert(x, SiteMark { above: s, below: s, state_out: None, step: None, towards: None });
        }
    };
    if n == 0 {
        return EmbeddedRun { rows, entry, steps: 0, halted, exhausted: true, turns: 0, border_hits: 0 };
    }
    fill(&mut rows, 0, &carried);
    entry[0] = Some(0);
    while done < steps {
        let read = carried.get(&v).copied().unwrap_or(0);
        let Some(&(q, s, m)) = tm.table.get(&(state, read)) else {
            halted = true;
            break;
        };
        state = q;
        if s == 0 {
            carried.remove(&v);
        } else {
            carried.insert(v, s);
        }
        let mark = rows[row].get_mut(&v).expect("site on the row");
        mark.below = s;
        mark.state_out = Some(q);
        mark.step = Some(done);
        mark.towards = Some(m);
        done += 1;
        let same = dir.is_none_or(|d| d == m);
        dir.get_or_insert(m);
        let next = v + m.delta();
        if same && area.has_site(row, next) {
            v = next;
            continue;
        }
        if same {
            border_hits += 1;
        } else {
            turns += 1;
        }
        // down the vertical to the next free row that has the next vertical
        loop {
            row += 1;
            if row == n {
                break;
            }
            fill(&mut rows, row, &carried);
            if area.has_site(row, next) {
                break;
            }
        }
        if row == n {
            row = n - 1;
            exhausted = true;
            break;
        }
        entry[row] = Some(next);
        v = next;
        dir = None;
    }
    if !halted && done == steps && !tm.table.contains_key(&(state, carried.get(&v).copied().unwrap_or(0))) {
        halted = true;
    }
    // later rows only carry the tape down
    for i in row + 1..n {
        fill(&mut rows, i, &carried);
    }
    EmbeddedRun { rows, entry, steps: done, halted, exhausted, turns, border_hits }
}

/// Reads the configurations back from the site marks alone: the tape is
/// what the verticals carry, the state and head come from the instruction
/// sites in step order.
pub fn extract_configs(run: &EmbeddedRun, input: &[u8]) -> Vec<Config> {
    let mut c = Config::initial(input);
    let mut out = vec![c.clone()];
    let mut sites: Vec<(usize, usize, i64)> = Vec::new();
    for (i, row) in run.rows.iter().enumerate() {
        for (&v, m) in row {
            if let Some(k) = m.step {
                sites.push((k, i, v));
            }
        }
    }
    sites.sort_unstable();
    for &(_, i, v) in &sites {
        let m = run.rows[i][&v];
        c.write(v, m.below);
        c.state = m.state_out.expect("instruction site");
        c.head = v + m.towards.expect("instruction site").delta();
        out.push(c.clone());
    }
    out
}

/// Sites whose symbol coming down differs from the one the free row above
/// passed on along the same vertical.
pub fn broken_verticals(run: &EmbeddedRun) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for i in 1..run.rows.len() {
        for (&v, m) in &run.rows[i] {
            if run.rows[i - 1].get(&v).is_some_and(|up| up.below != m.above) {
                out.push((i, v));
            }
        }
    }
    out
}

/// One line per free row: the configuration after its last instruction.
pub fn dump_trace(area: &ComputingArea, run: &EmbeddedRun, tm: &TMachine, input: &[u8]) -> String {
    let configs = extract_configs(run, input);
    let mut s = String::new();
    let mut k = 0usize;
    for (i, row) in run.rows.iter().enumerate() {
        let last = row.values().filter_map(|m| m.step).max();
        if let Some(l) = last {
            k = l + 1;
        }
        if i > 0 && last.is_none() && run.entry[i].is_none() {
            continue;
        }
        let _ = writeln!(s, "row {}: {}", area.rows[i], configs[k.min(configs.len() - 1)].render(&tm.alphabet));
    }
    s
}

/// Halts at once.
pub fn halting_machine() -> TMachine {
    TMachine::parse("tm v1 states=1 alphabet=_1\n").expect("well-formed")
}

/// Walks right over a block of ones and appends one.
pub fn unary_incrementer() -> TMachine {
    TMachine::parse("tm v1 states=2 alphabet=_1\n0,1 -> 0,1,R\n0,_ -> 1,1,L\n").expect("well-formed")
}

/// Zig-zags over a growing block, turning at each end.
pub fn zigzag_machine() -> TMachine {
    TMachine::parse(
        "tm v1 states=3 alphabet=_1x\n\
         0,_ -> 1,1,L\n\
         0,1 -> 0,1,R\n\
         1,1 -> 1,1,L\n\
         1,x -> 1,x,L\n\
         1,_ -> 2,x,R\n\
         2,1 -> 2,1,R\n\
         2,x -> 2,x,R\n\
         2,_ -> 0,1,R\n",
    )
    .expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::{gen0, phase_oracle, Colour};
    use crate::heptagrid::build_patch;
    use crate::isocline::compute_isoclines;
    use crate::mantilla::{generate_mantilla, FlowerKind};
    use crate::trilateral::{lift, render_grid, TriKind};

    fn area_of_generation(gens: usize, generation: u32) -> ComputingArea {
        let len = 1usize << (gens + 2);
        let m = gen0(len).unwrap().run(&phase_oracle(len, &vec![false; gens]).unwrap()).unwrap();
        let s = lift(&m, len, (1 << (gens + 2)) + 8).unwrap();
        let g = render_grid(&s).unwrap();
        let k = s
            .trilaterals
            .iter()
            .position(|t| t.colour == Colour::Red && t.kind == TriKind::Triangle && t.generation == generation)
            .unwrap();
        extract_area(&s, &g, k).unwrap()
    }

    #[test]
    fn machine_text_round_trip() {
        for tm in [halting_machine(), unary_incrementer(), zigzag_machine()] {
            assert_eq!(TMachine::parse(&tm.to_text()).unwrap(), tm);
        }
        assert!(TMachine::parse("tm v2 states=1 alphabet=_1").is_err());
        assert!(TMachine::parse("tm v1 states=1 alphabet=_1\n0,2 -> 0,1,R").is_err());
        assert!(TMachine::parse("tm v1 states=1 alphabet=_1\n0,1 -> 1,1,R").is_err());
    }

    #[test]
    fn incrementer_appends_one() {
        let tm = unary_incrementer();
        let input = tm.word("111").unwrap();
        let trace = simulate(&tm, &input, 100);
        assert_eq!(trace.len(), 5);
        assert_eq!(trace.last().unwrap().tape.len(), 4);
    }

    #[test]
    fn smallest_red_triangle_has_three_rows() {
        let a = area_of_generation(2, 1);
        assert_eq!(a.rows.len(), 3);
        assert_eq!(a.validate(), Ok(()));
    }

    #[test]
    fn verticals_widen_downwards() {
        let a = area_of_generation(4, 3);
        assert_eq!(a.validate(), Ok(()));
        let widths: Vec<i64> = (0..a.rows.len()).map(|i| a.reach(i)).collect();
        assert!(widths.windows(2).all(|w| w[0] < w[1]), "{widths:?}");
    }

    #[test]
    fn embedded_runs_follow_the_machine() {
        let a = area_of_generation(6, 5);
        for (tm, input) in [(halting_machine(), ""), (unary_incrementer(), "1111111111111111111"), (zigzag_machine(), "")] {
            let input = tm.word(input).unwrap();
            let run = run_embedded(&a, &tm, &input, 30);
            assert!(!run.exhausted);
            assert!(broken_verticals(&run).is_empty());
            assert_eq!(extract_configs(&run, &input), simulate(&tm, &input, run.steps));
        }
    }

    #[test]
    fn immediate_halt_stays_on_first_row() {
        let a = area_of_generation(4, 3);
        let run = run_embedded(&a, &halting_machine(), &[], 10);
        assert_eq!((run.steps, run.halted), (0, true));
        assert_eq!(extract_configs(&run, &[]).len(), 1);
    }

    #[test]
    fn level_zero_seeds_are_active() {
        let p = build_patch(6).unwrap();
        let lab = generate_mantilla(&p, FlowerKind::Gl, &[0]).unwrap();
        let iso = compute_isoclines(&p, &lab).unwrap();
        let a = activate_seeds(&p, &lab, &iso, ActivationConfig::default()).unwrap();
        assert!(a.is_forest());
        for s in &a.seeds {
            assert_eq!(s.level == 0, s.active == Some(Activation::LevelZero));
            if let Some(Activation::Scent(par)) = s.active {
                assert!(a.get(par).unwrap().ring < s.ring);
            }
        }
    }
}

//! Verification suites over generated instances. Each check reports pass or
//! fail with a short detail line; nothing here panics on a failed check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::antenna::{
    butterfly_gaps, check_forcing, check_unique_crossing, coverage_violations, edge_on_tiles, fault_crossing_at_midpoint,
    fault_orange_into_phantom, join_tiles, jump_spans, propagate_antennas, reproduce_distance_tables,
    separation_violations, Antennas, AntennaTileSet, Window,
};
use crate::brackets::{gen0, phase_oracle, BracketModel, Choice, Colour, IntervalKind, Label};
use crate::computing::{
    activate_seeds, broken_verticals, extract_area, extract_configs, halting_machine, run_embedded, simulate,
    unary_incrementer, zigzag_machine, Activation, ActivationConfig, TMachine,
};
use crate::heptagrid::{build_patch, ring_sizes};
use crate::isocline::{check_black_seed, check_iso5_eight, check_iso5_tree, compute_isoclines, statuses};
use crate::mantilla::{
    area_relation, check_borders, find_seeds, flower_violations, generate_mantilla, prototile_economy, sector_at,
    tree_of_mantilla, AreaRelation, FlowerKind, Labeling, SplitTable,
};
use crate::trilateral::{
    bad_towers, basis_leg_meetings, derive_tileset, free_rows, lift, lift_threads, render_grid, same_colour_overlaps,
    Side, SignalGrid, TriKind, TrilateralScene,
};
use crate::wangkit::{complete, match_tiles, Bound};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.to_string(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

/// Suite names accepted by [`run_suite`], one per module with invariants.
pub const SUITES: [&str; 10] = [
    "heptagrid",
    "wangkit",
    "brackets",
    "mantilla",
    "isoclines",
    "trilateral",
    "antenna",
    "computing",
    "tables",
    "determinism",
];

/// Size knobs shared by the suites; each suite reads the ones it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub radius: u32,
    pub len: usize,
    pub gens: u32,
    pub window: usize,
    pub depth: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { radius: 8, len: 256, gens: 3, window: 6, depth: 45 }
    }
}

pub fn run_suite(name: &str, cfg: SuiteConfig) -> Option<Report> {
    Some(match name {
        "heptagrid" => heptagrid_suite(cfg.radius),
        "wangkit" => wangkit_suite(cfg.gens),
        "brackets" => brackets_suite(cfg.len, cfg.gens),
        "mantilla" => mantilla_suite(cfg.radius),
        "isoclines" => isocline_suite(cfg.radius),
        "trilateral" => trilateral_suite(cfg.gens + 2),
        "antenna" => {
            let mut r = antenna_suite(cfg.len / 2, cfg.gens + 1);
            r.extend(forcing_suite(cfg.gens, cfg.window));
            r
        }
        "computing" => computing_suite(cfg.radius),
        "tables" => tables_suite(cfg.radius, cfg.depth).0,
        "determinism" => determinism_suite(cfg),
        _ => return None,
    })
}

pub fn heptagrid_suite(radius: u32) -> Report {
    let mut r = Report::default();
    match build_patch(radius) {
        Ok(p) => {
            let sizes: Vec<usize> = (0..=radius).map(|k| p.ring(k).len()).collect();
            r.push("ring sizes", sizes == ring_sizes(radius), format!("{sizes:?}"));
            let check = p.check();
            r.push("adjacency is symmetric", check.is_ok(), check.err().unwrap_or_else(|| format!("{} tiles", p.len())));
        }
        Err(e) => r.push("patch", false, e.to_string()),
    }
    r
}

/// Every window of a rendered grid is completed back to itself by the tile
/// set of the grid.
pub fn wangkit_suite(gens: u32) -> Report {
    let mut r = Report::default();
    let Some((_, grid)) = single_axis(gens) else {
        r.push("scene", false, "lift failed");
        return r;
    };
    let mut set = derive_tileset([&grid]);
    let (region, assignment) = grid.assignment(&set);
    let conflicts = match_tiles(&region, &assignment, set.tiles()).map(|c| c.len());
    r.push("grid matches its tile set", conflicts == Ok(0), format!("{conflicts:?}"));
    let mut found_truth = 0;
    let mut windows = 0;
    for r0 in (0..grid.rows.saturating_sub(4)).step_by(5) {
        for c0 in (0..grid.cols.saturating_sub(4)).step_by(7) {
            let (w, truth) = grid.window(r0, c0, 4, &mut set);
            windows += 1;
            if let Ok(found) = complete(&w, &vec![None; 16], set.tiles(), Bound { completions: 64, sites: 16 }) {
                let truth: Vec<usize> = truth.into_iter().map(|t| t.expect("derived")).collect();
                found_truth += found.contains(&truth) as usize;
            }
        }
    }
    r.push("completion recovers every window", found_truth == windows, format!("{found_truth}/{windows} windows"));
    r
}

/// All distinct models reachable with one choice per generation.
pub fn all_models(len: usize, gens: u32) -> Vec<BracketModel> {
    let Ok(m0) = gen0(len) else { return Vec::new() };
    let mut layer = vec![m0];
    let mut all = layer.clone();
    for _ in 0..gens {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for m in &layer {
            for at in m.eligible() {
                for label in [Label::R, Label::B] {
                    if let Ok(n) = m.step(&[Choice { at, label }]) {
                        if seen.insert(n.dump()) {
                            next.push(n);
                        }
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Length, visibility and count laws of complete intervals.
pub fn bracket_laws(models: &[BracketModel]) -> Report {
    let mut r = Report::default();
    let (mut lengths, mut blue, mut red) = (0usize, 0usize, 0usize);
    let mut bad: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for m in models {
        // the laws count letters of the generation after the interval's own
        let next_present = |g: u32| g + 1 < m.generations() && !m.intervals(g + 1).is_empty();
        for iv in m.all_intervals().filter(|iv| !iv.partial) {
            lengths += 1;
            if iv.len() != 1usize << (iv.generation + 1) {
                bad.entry("length").or_default().push(format!("{iv:?}"));
            }
            if iv.kind != IntervalKind::Active || !next_present(iv.generation) {
                continue;
            }
            let vis = m.visible_letters(iv);
            let count = |c: Colour| vis.iter().filter(|l| l.colour() == Some(c)).count();
            match iv.colour() {
                Colour::Blue if iv.generation >= 2 => {
                    blue += 1;
                    if count(Colour::Red) != 1 {
                        bad.entry("blue").or_default().push(format!("{iv:?} sees {} red", count(Colour::Red)));
                    }
                }
                Colour::Blue => {}
                Colour::Red => {
                    red += 1;
                    let n = (iv.generation - 1) / 2;
                    if count(Colour::Blue) != (1usize << (n + 1)) + 1 {
                        bad.entry("red").or_default().push(format!("{iv:?} sees {} blue", count(Colour::Blue)));
                    }
                }
            }
        }
    }
    let detail = |k: &str, total: usize| match bad.get(k) {
        None => format!("{total} intervals over {} models", models.len()),
        Some(v) => format!("{} of {total} wrong, first {}", v.len(), v[0]),
    };
    r.push("interval length is 2^(n+1)", !bad.contains_key("length"), detail("length", lengths));
    r.push("blue active intervals see one red letter", !bad.contains_key("blue"), detail("blue", blue));
    r.push("red intervals of generation 2n+1 see 2^(n+1)+1 blue letters", !bad.contains_key("red"), detail("red", red));
    r
}

pub fn brackets_exhaustive(len: usize, gens: u32) -> Report {
    bracket_laws(&all_models(len, gens))
}

/// Exhaustive laws at (`len`, `gens`), then laws and cuts on sampled models
/// sixteen times longer with two more generations.
pub fn brackets_suite(len: usize, gens: u32) -> Report {
    let mut r = Report::default();
    for c in brackets_exhaustive(len, gens).checks {
        r.push(&format!("{} (all models)", c.name), c.pass, c.detail);
    }
    let (long, more) = (len * 16, gens + 2);
    for c in bracket_laws(&sampled_models(long, more)).checks {
        r.push(&format!("{} (sampled)", c.name), c.pass, c.detail);
    }
    r.extend(cut_suite(long, more));
    r
}

/// Models from every phase pattern, the choice on the first or the last
/// eligible point.
pub fn sampled_models(len: usize, gens: u32) -> Vec<BracketModel> {
    let mut out = Vec::new();
    for bits in 0..1u32 << gens {
        let phases: Vec<bool> = (0..gens).map(|i| bits >> i & 1 == 1).collect();
        if let Ok(o) = phase_oracle(len, &phases) {
            if let Ok(m) = gen0(len).and_then(|m| m.run(&o)) {
                out.push(m);
            }
        }
        let Ok(mut m) = gen0(len) else { continue };
        for &b in &phases {
            let Some(&at) = m.eligible().last() else { break };
            match m.step(&[Choice { at, label: if b { Label::B } else { Label::R } }]) {
                Ok(n) => m = n,
                Err(_) => break,
            }
        }
        out.push(m);
    }
    out
}

/// After a cut anywhere, no letter lies in more active intervals than there
/// are generations.
pub fn cut_suite(len: usize, gens: u32) -> Report {
    let mut r = Report::default();
    let models = sampled_models(len, gens);
    let mut worst = 0usize;
    let mut cuts = 0usize;
    let mut over = 0usize;
    for m in &models {
        let g = m.generations() as usize;
        for at in m.positions() {
            let Ok(c) = m.cut_semi_infinite(at) else { continue };
            cuts += 1;
            let mut diff = vec![0i64; len + 1];
            for iv in c.all_intervals().filter(|iv| iv.kind == IntervalKind::Active) {
                diff[iv.lo] += 1;
                diff[iv.hi + 1] -= 1;
            }
            let mut depth = 0i64;
            for d in diff.iter().take(len).skip(at) {
                depth += d;
                worst = worst.max(depth as usize);
                if depth as usize > g {
                    over += 1;
                }
            }
        }
    }
    r.push(
        "cut letters lie in at most G active intervals",
        over == 0 && cuts > 0,
        format!("{cuts} cuts over {} models, deepest {worst}, {over} letters over", models.len()),
    );
    r
}

/// Every root kind and petal word.
pub fn all_labelings(radius: u32) -> Vec<(crate::heptagrid::Patch, Vec<Labeling>)> {
    let Ok(p) = build_patch(radius) else { return Vec::new() };
    let table = SplitTable::standard();
    let mut labs = Vec::new();
    for kind in FlowerKind::ALL {
        for w in 0..table.petals.len() {
            if let Ok(l) = generate_mantilla(&p, kind, &[w]) {
                labs.push(l);
            }
        }
    }
    vec![(p, labs)]
}

pub fn mantilla_suite(radius: u32) -> Report {
    let mut r = Report::default();
    let (mut flowers, mut sector, mut tree, mut overlap, mut black) = (0, 0, 0, 0, 0);
    let mut seeds_seen = 0;
    let mut labs_seen = Vec::new();
    for (p, labs) in all_labelings(radius) {
        let st = statuses(&p);
        for lab in &labs {
            flowers += flower_violations(&p, lab).len();
            match check_borders(&p, lab) {
                Ok(b) => {
                    sector += b.tree_sector.len();
                    tree += b.tree_tree.len();
                }
                Err(_) => sector += 1,
            }
            let trees: Vec<_> = find_seeds(&p, lab).into_iter().filter_map(|s| tree_of_mantilla(&p, lab, s).ok()).collect();
            seeds_seen += trees.len();
            for (i, a) in trees.iter().enumerate() {
                for b in &trees[i + 1..] {
                    overlap += (area_relation(a, b) == AreaRelation::Overlap) as usize;
                }
                black += check_black_seed(&p, lab, &st, a).violations.len();
            }
        }
        labs_seen.extend(labs);
    }
    let n = labs_seen.len();
    r.push("flowers are well formed", flowers == 0 && n > 0, format!("{n} labelings, {flowers} bad tiles"));
    r.push("tree borders never meet sector borders", sector == 0, format!("{sector} meetings"));
    r.push("tree areas are disjoint or nested", overlap == 0 && tree == 0, format!("{seeds_seen} trees, {overlap} overlaps, {tree} border meetings"));
    r.push("black seeds propagate", black == 0, format!("{black} violations"));
    let (a, b) = prototile_economy(labs_seen.iter());
    r.push("prototiles within 4 alpha and 17 beta", a <= 4 && b <= 17, format!("{a} alpha, {b} beta"));
    r
}

/// Seeds on the fifth isocline of every deep enough tree, and the 8-centre
/// profile below every deep enough 8-sector.
pub fn isocline_suite(radius: u32) -> Report {
    let mut r = Report::default();
    let (mut tree_ok, mut tree_bad, mut eight_ok, mut eight_bad) = (0, 0, 0, 0);
    let mut first_bad = String::new();
    for (p, labs) in all_labelings(radius) {
        for lab in &labs {
            let Ok(iso) = compute_isoclines(&p, lab) else { continue };
            for s in find_seeds(&p, lab) {
                let Ok(t) = sector_at(&p, s) else { continue };
                if let Ok(rep) = check_iso5_tree(&p, lab, &iso, &t) {
                    if rep.ok {
                        tree_ok += 1;
                    } else {
                        tree_bad += 1;
                    }
                }
            }
            for c in lab.eight_centres() {
                let Ok(sec) = sector_at(&p, c) else { continue };
                if let Ok(rep) = check_iso5_eight(&p, lab, &iso, &sec) {
                    if rep.ok {
                        eight_ok += 1;
                    } else {
                        eight_bad += 1;
                        if first_bad.is_empty() {
                            first_bad = format!(", first at {c}: seeds per level {:?}", rep.seeds_per_level);
                        }
                    }
                }
            }
        }
    }
    r.push("a seed on the fifth isocline of each tree", tree_bad == 0 && tree_ok > 0, format!("{tree_ok} trees pass, {tree_bad} fail"));
    r.push(
        "8-sectors hold seeds from the fourth isocline on, near from the tenth",
        eight_bad == 0 && eight_ok > 0,
        format!("{eight_ok} sectors pass, {eight_bad} fail{first_bad}"),
    );
    r
}

fn single_axis(gens: u32) -> Option<(TrilateralScene, SignalGrid)> {
    let len = 1usize << (gens + 3);
    let phases = vec![false; gens as usize];
    let m = gen0(len).ok()?.run(&phase_oracle(len, &phases).ok()?).ok()?;
    let s = lift(&m, len, (1usize << (gens + 2)) + 8).ok()?;
    let g = render_grid(&s).ok()?;
    Some((s, g))
}

/// Scenes from every phase pattern, as one thread and as three threads with
/// the middle one cut.
pub fn scenes(len: usize, gens: u32, cut_step: usize) -> Vec<TrilateralScene> {
    let mut out = Vec::new();
    for bits in 0..1u32 << gens {
        let phases: Vec<bool> = (0..gens).map(|i| bits >> i & 1 == 1).collect();
        let Ok(o) = phase_oracle(len, &phases) else { continue };
        let Ok(m) = gen0(len).and_then(|m| m.run(&o)) else { continue };
        if let Ok(s) = lift_threads(&m, &[None]) {
            out.push(s);
        }
        if let Ok(s) = lift_threads(&m, &[None, None]) {
            out.push(s);
        }
        for c in (1..len / 2).step_by(cut_step.max(1)) {
            if let Ok(s) = lift_threads(&m, &[None, Some(c), None]) {
                out.push(s);
            }
        }
    }
    out
}

/// Blue letters visible in the active interval under a red triangle.
fn visible_blue_rows(m: &BracketModel, t: &crate::trilateral::Trilateral) -> Vec<usize> {
    let iv = crate::brackets::Interval {
        generation: t.generation,
        kind: IntervalKind::Active,
        lo: t.vertex_row,
        hi: t.basis_row,
        partial: false,
    };
    m.visible_letters(&iv).into_iter().filter(|l| l.colour() == Some(Colour::Blue)).map(|l| l.position).collect()
}

pub fn trilateral_suite(gens: u32) -> Report {
    let mut r = Report::default();
    let len = 1usize << (gens + 3);
    let (mut overlaps, mut towers, mut meetings, mut off_half, mut conflicts, mut grids) = (0, 0, 0, 0, 0, 0);
    let (mut free_ok, mut free_bad) = (0, 0);
    for bits in 0..1u32 << gens {
        let phases: Vec<bool> = (0..gens).map(|i| bits >> i & 1 == 1).collect();
        let Ok(o) = phase_oracle(len, &phases) else { continue };
        let Ok(m) = gen0(len).and_then(|m| m.run(&o)) else { continue };
        let Ok(s) = lift(&m, len, (1usize << (gens + 2)) + 8) else { continue };
        overlaps += same_colour_overlaps(&s).len();
        towers += bad_towers(&s).len();
        let ms = basis_leg_meetings(&s);
        meetings += ms.len();
        off_half += ms.iter().filter(|x| !x.vertex_half).count();
        let Ok(g) = render_grid(&s) else {
            conflicts += 1;
            continue;
        };
        grids += 1;
        let set = derive_tileset([&g]);
        let (region, a) = g.assignment(&set);
        conflicts += match_tiles(&region, &a, set.tiles()).map_or(1, |c| c.len());
        for (k, t) in s.triangles() {
            if t.colour != Colour::Red {
                continue;
            }
            if free_rows(&g, &s, k).ok() == Some(visible_blue_rows(&m, t)) {
                free_ok += 1;
            } else {
                free_bad += 1;
            }
        }
    }
    r.push("same-colour triangles are disjoint or nested", overlaps == 0, format!("{overlaps} overlapping pairs"));
    r.push("phantom towers alternate colours", towers == 0, format!("{towers} bad towers"));
    r.push("bases meet legs on the vertex half", off_half == 0, format!("{meetings} meetings, {off_half} off the vertex half"));
    r.push("rendered grids match", conflicts == 0 && grids > 0, format!("{grids} grids, {conflicts} conflicts"));
    r.push("free rows are the visible blue letters", free_bad == 0 && free_ok > 0, format!("{free_ok} red triangles agree, {free_bad} differ"));
    r
}

/// Gap structure, joins, crossings and the green of butterfly rows.
pub fn antenna_suite(len: usize, gens: u32) -> Report {
    let mut r = Report::default();
    let (mut gaps, mut empty, mut unclean, mut joins_bad, mut cross_bad, mut jumps_bad) = (0, 0, 0, 0, 0, 0);
    let (mut sep, mut cov, mut bfly, mut failed) = (0, 0, 0, 0);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut first_unclean = String::new();
    for s in scenes(len, gens, 3) {
        let Ok(g) = render_grid(&s) else {
            failed += 1;
            continue;
        };
        let Ok(a) = propagate_antennas(&g, &s) else {
            failed += 1;
            continue;
        };
        for gap in &a.gaps {
            gaps += 1;
            empty += (gap.c > gap.d) as usize;
            if !gap.is_clean() {
                unclean += 1;
                if first_unclean.is_empty() {
                    first_unclean = gap.violations.join("; ");
                }
            }
            joins_bad += (join_tiles(&a.grid, gap.row, gap.a, gap.b).len() != 1) as usize;
            let rep = check_unique_crossing(gap);
            *hist.entry(rep.count).or_insert(0) += 1;
            cross_bad += !rep.holds(gap.generation) as usize;
            jumps_bad += !jumps_match_eldest(&a, &s, gap) as usize;
        }
        sep += separation_violations(&a.grid).len();
        cov += coverage_violations(&a.grid, &s).len();
        bfly += butterfly_gaps(&a.grid, &s).len();
    }
    r.push("scenes render", failed == 0, format!("{failed} failures"));
    r.push("[C,D] is nonempty", empty == 0 && gaps > 0, format!("{gaps} gaps, {empty} empty"));
    r.push("gap classification holds", unclean == 0, format!("{unclean} gaps with violations {first_unclean}"));
    r.push("one join tile per gap", joins_bad == 0, format!("{joins_bad} gaps without exactly one"));
    r.push(
        "at most one bigger leg crosses AB, of generation n+1 or n+2",
        cross_bad == 0,
        format!("{cross_bad} of {gaps} gaps fail; crossings per gap {hist:?}"),
    );
    r.push("jumps cover exactly the eldest phantoms", jumps_bad == 0, format!("{jumps_bad} gaps differ"));
    r.push("green and orange are separated by legs", sep == 0, format!("{sep} cells"));
    r.push("mid-lines carry green or orange", cov == 0, format!("{cov} edges"));
    r.push("butterfly rows carry green across", bfly == 0, format!("{bfly} edges without green"));
    r
}

fn jumps_match_eldest(a: &Antennas, s: &TrilateralScene, gap: &crate::antenna::GapAnalysis) -> bool {
    let spans = jump_spans(&a.grid, gap.row, gap.a, gap.b);
    let mut want: Vec<(usize, usize)> = gap
        .eldest
        .iter()
        .filter_map(|&p| s.trilaterals[p].legs_at(gap.row))
        .map(|(l, h)| (l + 1, h))
        .collect();
    want.sort_unstable();
    spans == want
}

/// Counts of the forcing sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForcingCounts {
    pub windows: usize,
    pub unique: usize,
    pub orange_faults: usize,
    pub orange_rejected: usize,
    pub inner_faults: usize,
    pub inner_rejected: usize,
    pub crossing_faults: usize,
    pub crossing_rejected: usize,
    /// Faults whose edge no tile carries at all.
    pub crossing_edge_absent: usize,
    pub tiles: usize,
}

/// Windows of size `k` around the gap mid-points and joins, with the
/// construction's own boundary and with the two kinds of fault.
pub fn forcing_sweep(gens: u32, k: usize) -> ForcingCounts {
    let len = 1usize << (gens + 3);
    let mut data = Vec::new();
    for s in scenes(len, gens, 3) {
        if let Ok(a) = crate::antenna::render_with_antennas(&s) {
            data.push((s, a));
        }
    }
    let mut set = AntennaTileSet::derive(data.iter().map(|(_, a)| &a.grid));
    let mut n = ForcingCounts { tiles: set.tiles.len(), ..Default::default() };
    for (s, a) in &data {
        let g = &a.grid;
        if g.rows < k || g.cols < k {
            continue;
        }
        for gap in &a.gaps {
            let top = gap.row.saturating_sub(k / 2).min(g.rows - k);
            for &c in [gap.a, gap.b].iter().chain(gap.join.iter()) {
                let w = Window { row: top, col: c.saturating_sub(k / 2).min(g.cols - k), k };
                n.windows += 1;
                n.unique += (check_forcing(&mut set, g, w, &[]) == Ok(1)) as usize;
            }
            for &p in &gap.eldest {
                let (w, o) = fault_orange_into_phantom(g, s, gap, p, k);
                if w.col + k > g.cols {
                    continue;
                }
                n.orange_faults += 1;
                n.orange_rejected += (check_forcing(&mut set, g, w, &[o]) == Ok(0)) as usize;
            }
            let inner = gap.both_legs.iter().copied().filter(|&q| {
                let t = &s.trilaterals[q];
                t.kind == TriKind::Phantom && t.mid_row == gap.row && !gap.eldest.contains(&q)
            });
            for q in inner {
                let (w, o) = fault_orange_into_phantom(g, s, gap, q, k);
                if w.col + k > g.cols {
                    continue;
                }
                n.inner_faults += 1;
                n.inner_rejected += (check_forcing(&mut set, g, w, &[o]) == Ok(0)) as usize;
            }
            for side in [Side::Left, Side::Right] {
                let (w, o) = fault_crossing_at_midpoint(g, gap, side, k);
                if w.col + k > g.cols {
                    continue;
                }
                n.crossing_faults += 1;
                n.crossing_edge_absent += !edge_on_tiles(&set, &o.edge, o.side) as usize;
                n.crossing_rejected += (check_forcing(&mut set, g, w, &[o]) == Ok(0)) as usize;
            }
        }
    }
    n
}

/// Every k by k window of single-thread scenes up to `gens` generations.
pub fn window_sweep(gens: u32, k: usize) -> (usize, usize) {
    let mut grids = Vec::new();
    for bits in 0..1u32 << gens {
        let phases: Vec<bool> = (0..gens).map(|i| bits >> i & 1 == 1).collect();
        let len = 1usize << (gens + 2);
        let Ok(o) = phase_oracle(len, &phases) else { continue };
        let Ok(m) = gen0(len).and_then(|m| m.run(&o)) else { continue };
        let Ok(s) = lift(&m, len, (1usize << (gens + 2)) + 8) else { continue };
        if let Ok(g) = render_grid(&s) {
            grids.push(g);
        }
    }
    let mut set = derive_tileset(grids.iter());
    let (mut windows, mut unique) = (0, 0);
    for g in &grids {
        for r0 in (0..g.rows.saturating_sub(k)).step_by(k) {
            for c0 in (0..g.cols.saturating_sub(k)).step_by(k) {
                let (w, _) = g.window(r0, c0, k, &mut set);
                windows += 1;
                let found = complete(&w, &vec![None; k * k], set.tiles(), Bound { completions: 2, sites: 64 });
                unique += matches!(found, Ok(ref f) if f.len() == 1) as usize;
            }
        }
    }
    (windows, unique)
}

pub fn forcing_suite(gens: u32, k: usize) -> Report {
    let mut r = Report::default();
    let (windows, unique) = window_sweep(gens + 2, k);
    r.push("grid windows have one completion", unique == windows && windows > 0, format!("{unique}/{windows} windows of size {k}"));
    let n = forcing_sweep(gens, k);
    r.push(
        "antenna windows have one completion up to the join",
        n.unique == n.windows && n.windows > 0,
        format!("{}/{} windows, {} tiles", n.unique, n.windows, n.tiles),
    );
    r.push(
        "orange entering an eldest phantom has no completion",
        n.orange_rejected == n.orange_faults && n.orange_faults > 0,
        format!("{}/{} rejected", n.orange_rejected, n.orange_faults),
    );
    r.push(
        "orange covering a non-eldest phantom has no completion",
        n.inner_rejected == n.inner_faults && n.inner_faults > 0,
        format!("{}/{} rejected", n.inner_rejected, n.inner_faults),
    );
    r.push(
        "crossing tile at a true mid-point has no completion",
        n.crossing_rejected == n.crossing_faults && n.crossing_faults > 0,
        format!(
            "{}/{} rejected, {} of them because no tile carries the edge",
            n.crossing_rejected, n.crossing_faults, n.crossing_edge_absent
        ),
    );
    r
}

/// The three test machines with their inputs.
pub fn machines() -> Vec<(&'static str, TMachine, &'static str)> {
    vec![
        ("halt", halting_machine(), ""),
        ("unary incrementer", unary_incrementer(), "1111111111111111111"),
        ("zigzag", zigzag_machine(), ""),
    ]
}

pub fn embedding_suite(steps: usize) -> Report {
    let mut r = Report::default();
    let gens = 6;
    let Some((s, g)) = single_axis(gens) else {
        r.push("scene", false, "lift failed");
        return r;
    };
    let Some(k) = s
        .trilaterals
        .iter()
        .position(|t| t.colour == Colour::Red && t.kind == TriKind::Triangle && t.generation == 5)
    else {
        r.push("scene", false, "no red triangle of generation 5");
        return r;
    };
    let area = match extract_area(&s, &g, k) {
        Ok(a) => a,
        Err(e) => {
            r.push("computing area", false, e.to_string());
            return r;
        }
    };
    r.push("area verticals are well formed", area.validate().is_ok(), format!("{} free rows", area.rows.len()));
    for (name, tm, input) in machines() {
        let input = tm.word(input).unwrap_or_default();
        let run = run_embedded(&area, &tm, &input, steps);
        let got = extract_configs(&run, &input);
        let want = simulate(&tm, &input, steps);
        let long_enough = run.halted || run.steps >= steps;
        r.push(
            &format!("{name} matches direct simulation"),
            got == want && long_enough && broken_verticals(&run).is_empty(),
            format!(
                "{} steps, halted {}, {} turns, {} border descents, exhausted {}",
                run.steps, run.halted, run.turns, run.border_hits, run.exhausted
            ),
        );
    }
    r
}

pub fn activation_suite(radius: u32) -> Report {
    let mut r = Report::default();
    let (mut level0, mut wrong, mut forest, mut scent, mut tall, mut dense) = (0, 0, true, 0, 0, 0);
    let mut green0 = 0;
    for (p, labs) in all_labelings(radius) {
        for lab in &labs {
            let Ok(iso) = compute_isoclines(&p, lab) else { continue };
            for cfg in [ActivationConfig::default(), ActivationConfig { green_on_fifteen_only: true }] {
                let Ok(a) = activate_seeds(&p, lab, &iso, cfg) else { continue };
                forest &= a.is_forest();
                for s in &a.seeds {
                    level0 += (s.active == Some(Activation::LevelZero)) as usize;
                    scent += matches!(s.active, Some(Activation::Scent(_))) as usize;
                    wrong += ((s.level == 0) != (s.active == Some(Activation::LevelZero))) as usize;
                    if cfg.green_on_fifteen_only {
                        green0 += s.green_rings.iter().filter(|&&k| (k + crate::isocline::PERIOD - iso.anchor_ring % crate::isocline::PERIOD) % crate::isocline::PERIOD != 15).count();
                    }
                }
                let (t, d) = a.density();
                tall += t;
                dense += d;
            }
        }
    }
    r.push("level-0 seeds and only they are active by level", wrong == 0 && level0 > 0, format!("{level0} level-0, {scent} by scent"));
    r.push("activation parents form a forest", forest, "");
    r.push("level-15-only green never fires elsewhere", green0 == 0, format!("{green0} stray triggers"));
    r.push(
        "trees spanning a period hold an active seed",
        dense == tall,
        if tall == 0 { "no tree spans 20 levels at this radius".to_string() } else { format!("{dense}/{tall}") },
    );
    r
}

pub fn computing_suite(radius: u32) -> Report {
    let mut r = embedding_suite(20);
    r.extend(activation_suite(radius.min(8)));
    r
}

/// Distances measured below the patch, against the published values.
pub fn tables_suite(radius: u32, depth: u32) -> (Report, String) {
    let mut r = Report::default();
    let mut text = String::new();
    let all = all_labelings(radius);
    let Some((p, labs)) = all.first() else {
        r.push("patch", false, "cannot build");
        return (r, text);
    };
    let mut fifteen = BTreeSet::new();
    let mut zero = BTreeSet::new();
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut siblings: Option<usize> = None;
    for lab in labs {
        let Ok(iso) = compute_isoclines(p, lab) else { continue };
        let t = reproduce_distance_tables(p, lab, &iso, &SplitTable::standard(), depth, 4000);
        fifteen.extend(t.fifteen);
        zero.extend(t.zero);
        for (k, v) in t.pairs {
            *pairs.entry(k).or_insert(0) += v;
        }
        siblings = match (siblings, t.siblings) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    let _ = writeln!(text, "15: {}", fifteen.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    let _ = writeln!(text, "0: {}", zero.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    let _ = writeln!(text, "pairs: {}", pairs.iter().map(|((a, b), n)| format!("{a}->{b} x{n}")).collect::<Vec<_>>().join(", "));
    let _ = writeln!(text, "siblings: {}", siblings.map_or("none".to_string(), |d| d.to_string()));
    let want_pairs: BTreeSet<(usize, usize)> = [(2, 36), (36, 269), (269, 2)].into_iter().collect();
    let got_pairs: BTreeSet<(usize, usize)> = pairs.keys().copied().collect();
    r.push("level-15 row is 2, 36, 269", fifteen == [2, 36, 269].into_iter().collect(), format!("{fifteen:?}"));
    r.push("level-0 row is 36, 269, 2", got_pairs == want_pairs, format!("{got_pairs:?}"));
    r.push("sibling seeds are 26 apart", siblings == Some(26), format!("{siblings:?}"));
    (r, text)
}

/// Text dumps of one instance of every stage, built from `cfg`.
pub fn dumps(cfg: SuiteConfig) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    let radius = cfg.radius.min(6);
    if let Ok(p) = build_patch(radius) {
        out.push(("patch", p.dump()));
    }
    let len = 1usize << (cfg.gens + 3);
    let phases: Vec<bool> = (0..cfg.gens).map(|i| i % 2 == 1).collect();
    if let Ok(m) = phase_oracle(len, &phases).and_then(|o| gen0(len)?.run(&o)) {
        out.push(("brackets", m.dump()));
        if let Ok(s) = lift_threads(&m, &[None, Some(len / 4), None]) {
            if let Ok(a) = crate::antenna::render_with_antennas(&s) {
                out.push(("antennas", a.grid.dump()));
            }
        }
    }
    for (_, labs) in all_labelings(radius) {
        out.extend(labs.iter().map(|lab| ("mantilla", lab.dump())));
    }
    out.push(("tables", tables_suite(radius, 25).1));
    if let Some((s, g)) = single_axis(cfg.gens + 2) {
        out.push(("grid", g.dump()));
        if let Some(k) = s.triangles().find(|(_, t)| t.colour == Colour::Red && t.generation >= 3).map(|(k, _)| k) {
            if let Ok(area) = extract_area(&s, &g, k) {
                let tm = zigzag_machine();
                let run = run_embedded(&area, &tm, &[], 20);
                out.push(("embedding", crate::computing::dump_trace(&area, &run, &tm, &[])));
            }
        }
    }
    out
}

/// Two independent runs give byte-identical dumps and reports.
pub fn determinism_suite(cfg: SuiteConfig) -> Report {
    let mut r = Report::default();
    let (a, b) = (dumps(cfg), dumps(cfg));
    let differ: Vec<&str> = a.iter().zip(&b).filter(|(x, y)| x != y).map(|(x, _)| x.0).collect();
    r.push(
        "dumps are byte-identical",
        a.len() == b.len() && differ.is_empty() && !a.is_empty(),
        format!("{} dumps, {} bytes, differing {differ:?}", a.len(), a.iter().map(|d| d.1.len()).sum::<usize>()),
    );
    let suites = ["heptagrid", "mantilla", "trilateral", "computing"];
    let small = SuiteConfig { radius: cfg.radius.min(6), gens: cfg.gens.min(3), ..cfg };
    let same = suites.iter().filter(|n| {
        let x = run_suite(n, small).map(|r| r.render());
        x.is_some() && x == run_suite(n, small).map(|r| r.render())
    });
    let same = same.count();
    r.push("reports are byte-identical", same == suites.len(), format!("{same}/{} suites", suites.len()));
    r
}

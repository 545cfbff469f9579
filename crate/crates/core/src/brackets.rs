//! Abstract brackets: the one-dimensional R/M/B/M model, its generations,
//! visibility and semi-infinite cuts.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("window length {0} is below 4")]
    TooShort(usize),
    #[error("position {0} is not an eligible mid-point")]
    NotEligible(usize),
    #[error("choice at {0} contradicts the labelling forced by an earlier choice")]
    Inconsistent(usize),
    #[error("position {0} is outside the window")]
    OutOfWindow(usize),
    #[error("oracle syntax: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    R,
    M,
    B,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::R => "R",
            Label::M => "M",
            Label::B => "B",
        })
    }
}

impl FromStr for Label {
    type Err = BracketError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" => Ok(Label::R),
            "M" => Ok(Label::M),
            "B" => Ok(Label::B),
            _ => Err(BracketError::Parse(format!("unknown label `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    Blue,
    Red,
}

impl Colour {
    pub fn of_generation(n: u32) -> Colour {
        if n.is_multiple_of(2) {
            Colour::Blue
        } else {
            Colour::Red
        }
    }

    pub fn opposite(self) -> Colour {
        match self {
            Colour::Blue => Colour::Red,
            Colour::Red => Colour::Blue,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub position: usize,
    pub label: Label,
    pub generation: Option<u32>,
}

impl Letter {
    pub fn colour(&self) -> Option<Colour> {
        self.generation.map(Colour::of_generation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntervalKind {
    Active,
    Silent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub generation: u32,
    pub kind: IntervalKind,
    pub lo: usize,
    pub hi: usize,
    /// One end lies outside the window; `lo` or `hi` is then clamped.
    pub partial: bool,
}

impl Interval {
    pub fn colour(&self) -> Colour {
        Colour::of_generation(self.generation)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn strictly_contains(&self, x: usize) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn mid(&self) -> usize {
        (self.lo + self.hi) / 2
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Choice {
    pub at: usize,
    pub label: Label,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Infinite,
    Semi(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketModel {
    len: usize,
    start: usize,
    labels: Vec<Label>,
    generation: Vec<Option<u32>>,
    /// Intervals per generation, sorted by position.
    intervals: Vec<Vec<Interval>>,
    mode: Mode,
}

pub fn gen0(len: usize) -> Result<BracketModel, BracketError> {
    if len < 4 {
        return Err(BracketError::TooShort(len));
    }
    const PATTERN: [Label; 4] = [Label::R, Label::M, Label::B, Label::M];
    let labels: Vec<Label> = (0..len).map(|p| PATTERN[p % 4]).collect();
    let generation = labels.iter().map(|l| (*l != Label::M).then_some(0)).collect();
    let mut m = BracketModel { len, start: 0, labels, generation, intervals: Vec::new(), mode: Mode::Infinite };
    m.intervals.push(m.intervals_of(0));
    Ok(m)
}

impl BracketModel {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of completed generations (generation 0 included).
    pub fn generations(&self) -> u32 {
        self.intervals.len() as u32
    }

    /// Positions kept in the model (all of the window, or the right part after a cut).
    pub fn positions(&self) -> std::ops::Range<usize> {
        self.start..self.len
    }

    pub fn letter(&self, p: usize) -> Letter {
        Letter { position: p, label: self.labels[p], generation: self.generation[p] }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.positions().map(|p| self.letter(p))
    }

    pub fn intervals(&self, n: u32) -> &[Interval] {
        self.intervals.get(n as usize).map_or(&[], Vec::as_slice)
    }

    pub fn all_intervals(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().flatten()
    }

    pub fn active(&self, n: u32) -> impl Iterator<Item = &Interval> {
        self.intervals(n).iter().filter(|i| i.kind == IntervalKind::Active)
    }

    fn intervals_of(&self, n: u32) -> Vec<Interval> {
        let pts: Vec<usize> = self.positions().filter(|&p| self.generation[p] == Some(n)).collect();
        let mut out = Vec::new();
        let kind_from = |l: Label| if l == Label::R { IntervalKind::Active } else { IntervalKind::Silent };
        if let Some(&first) = pts.first() {
            if first > self.start {
                // the interval ending at the first letter starts outside the window
                let kind = kind_from(if self.labels[first] == Label::B { Label::R } else { Label::B });
                out.push(Interval { generation: n, kind, lo: self.start, hi: first, partial: true });
            }
        }
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let kind = match (self.labels[a], self.labels[b]) {
                (Label::R, Label::B) => IntervalKind::Active,
                (Label::B, Label::R) => IntervalKind::Silent,
                _ => continue,
            };
            out.push(Interval { generation: n, kind, lo: a, hi: b, partial: false });
        }
        if let Some(&last) = pts.last() {
            if last + 1 < self.len {
                let kind = kind_from(self.labels[last]);
                out.push(Interval { generation: n, kind, lo: last, hi: self.len - 1, partial: true });
            }
        }
        out
    }

    /// Mid-points of complete active intervals of the last generation that are
    /// still labelled M.
    pub fn eligible(&self) -> Vec<usize> {
        let n = self.generations() - 1;
        self.active(n)
            .filter(|i| !i.partial && i.len() % 2 == 0)
            .map(Interval::mid)
            .filter(|&m| self.labels[m] == Label::M)
            .collect()
    }

    /// Builds the next generation. The first choice fixes the phase of the
    /// periodic R, M, B, M labelling over the points still labelled M; any
    /// further choice must agree with it. With no choice the generation is
    /// left empty.
    pub fn step(&self, choices: &[Choice]) -> Result<BracketModel, BracketError> {
        let mut next = self.clone();
        let n = self.generations();
        let Some(first) = choices.first() else {
            next.intervals.push(Vec::new());
            return Ok(next);
        };
        let eligible = self.eligible();
        for c in choices {
            if c.at >= self.len {
                return Err(BracketError::OutOfWindow(c.at));
            }
            if c.label == Label::M || eligible.binary_search(&c.at).is_err() {
                return Err(BracketError::NotEligible(c.at));
            }
        }
        let candidates: Vec<usize> = self.positions().filter(|&p| self.labels[p] == Label::M).collect();
        let anchor = candidates.binary_search(&first.at).expect("eligible points are candidates");
        let pattern = match first.label {
            Label::R => [Label::R, Label::M, Label::B, Label::M],
            _ => [Label::B, Label::M, Label::R, Label::M],
        };
        for (j, &p) in candidates.iter().enumerate() {
            let l = pattern[(j + 4 - anchor % 4) % 4];
            next.labels[p] = l;
            if l != Label::M {
                next.generation[p] = Some(n);
            }
        }
        for c in &choices[1..] {
            if next.labels[c.at] != c.label {
                return Err(BracketError::Inconsistent(c.at));
            }
        }
        next.intervals.push(next.intervals_of(n));
        Ok(next)
    }

    /// Runs one step per choice; `None` leaves that generation empty.
    pub fn run(&self, oracle: &[Option<Choice>]) -> Result<BracketModel, BracketError> {
        let mut m = self.clone();
        for c in oracle {
            m = m.step(c.as_slice())?;
        }
        Ok(m)
    }

    /// Whether the letter at `x` is hidden from intervals of generation `k`:
    /// it lies strictly inside an older active interval of the opposite colour.
    pub fn hidden_for(&self, x: usize, k: u32) -> bool {
        let Some(g) = self.generation[x] else { return false };
        let colour = Colour::of_generation(g);
        (0..k.min(self.generations())).filter(|m| Colour::of_generation(*m) != colour).any(|m| {
            let ints = self.intervals(m);
            let i = ints.partition_point(|iv| iv.hi <= x);
            ints.get(i).is_some_and(|iv| iv.kind == IntervalKind::Active && iv.strictly_contains(x))
        })
    }

    /// R/B letters of any generation inside `interval` that it can see.
    pub fn visible_letters(&self, interval: &Interval) -> Vec<Letter> {
        (interval.lo..=interval.hi)
            .filter(|&x| self.generation[x].is_some() && !self.hidden_for(x, interval.generation))
            .map(|x| self.letter(x))
            .collect()
    }

    /// Keeps the part right of `position` and drops every active interval
    /// containing it.
    pub fn cut_semi_infinite(&self, position: usize) -> Result<BracketModel, BracketError> {
        if position < self.start || position >= self.len {
            return Err(BracketError::OutOfWindow(position));
        }
        let mut m = self.clone();
        m.start = position;
        m.mode = Mode::Semi(position);
        for ints in &mut m.intervals {
            ints.retain(|iv| !(iv.kind == IntervalKind::Active && iv.contains(position)) && iv.hi >= position);
            for iv in ints.iter_mut() {
                if iv.lo < position {
                    iv.lo = position;
                    iv.partial = true;
                }
            }
        }
        Ok(m)
    }

    /// Number of retained active intervals containing `x`.
    pub fn active_depth(&self, x: usize) -> usize {
        self.all_intervals().filter(|iv| iv.kind == IntervalKind::Active && iv.contains(x)).count()
    }

    pub fn dump(&self) -> String {
        let mode = match self.mode {
            Mode::Infinite => "inf".to_string(),
            Mode::Semi(p) => format!("semi:{p}"),
        };
        let mut out = format!("brackets v1 L={} mode={}\n", self.len, mode);
        for l in self.letters() {
            let g = l.generation.map_or_else(|| "_".to_string(), |g| g.to_string());
            let _ = writeln!(out, "{} {} gen={}", l.position, l.label, g);
        }
        out
    }
}

/// Reads an oracle file: one `at=<pos> label=<R|B>` line per generation, or
/// `none` to leave a generation empty.
pub fn parse_oracle(text: &str) -> Result<Vec<Option<Choice>>, BracketError> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if line == "none" {
            out.push(None);
            continue;
        }
        let mut at = None;
        let mut label = None;
        for field in line.split_whitespace() {
            if let Some(v) = field.strip_prefix("at=") {
                at = v.parse::<usize>().ok();
            } else if let Some(v) = field.strip_prefix("label=") {
                label = Some(v.parse::<Label>()?);
            }
        }
        match (at, label) {
            (Some(at), Some(label)) if label != Label::M => out.push(Some(Choice { at, label })),
            _ => return Err(BracketError::Parse(format!("bad choice `{line}`"))),
        }
    }
    Ok(out)
}

pub fn format_oracle(oracle: &[Option<Choice>]) -> String {
    let mut out = String::new();
    for c in oracle {
        match c {
            Some(c) => {
                let _ = writeln!(out, "at={} label={}", c.at, c.label);
            }
            None => out.push_str("none\n"),
        }
    }
    out
}

/// The oracle that labels the first eligible point of every generation with
/// `R` when the corresponding phase bit is clear, `B` otherwise.
pub fn phase_oracle(len: usize, phases: &[bool]) -> Result<Vec<Option<Choice>>, BracketError> {
    let mut m = gen0(len)?;
    let mut oracle = Vec::new();
    for &bit in phases {
        let Some(&at) = m.eligible().first() else { break };
        let c = Choice { at, label: if bit { Label::B } else { Label::R } };
        m = m.step(&[c])?;
        oracle.push(Some(c));
    }
    Ok(oracle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(m: &BracketModel) -> String {
        m.letters().map(|l| l.label.to_string()).collect()
    }

    #[test]
    fn gen0_pattern() {
        let m = gen0(8).unwrap();
        assert_eq!(labels(&m), "RMBMRMBM");
        let act: Vec<(usize, usize)> = m.active(0).filter(|i| !i.partial).map(|i| (i.lo, i.hi)).collect();
        assert_eq!(act, vec![(0, 2), (4, 6)]);
        let sil: Vec<(usize, usize)> = m
            .intervals(0)
            .iter()
            .filter(|i| i.kind == IntervalKind::Silent && !i.partial)
            .map(|i| (i.lo, i.hi))
            .collect();
        assert_eq!(sil, vec![(2, 4)]);
        assert!(gen0(3).is_err());
    }

    #[test]
    fn empty_step_keeps_letters() {
        let m = gen0(16).unwrap();
        let n = m.step(&[]).unwrap();
        assert_eq!(n.generations(), 2);
        assert_eq!(labels(&n), labels(&m));
        assert!(n.intervals(1).is_empty());
    }

    #[test]
    fn first_generation() {
        let m = gen0(32).unwrap();
        assert_eq!(m.eligible(), vec![1, 5, 9, 13, 17, 21, 25, 29]);
        let n = m.step(&[Choice { at: 1, label: Label::R }]).unwrap();
        let act: Vec<(usize, usize)> = n.active(1).filter(|i| !i.partial).map(|i| (i.lo, i.hi)).collect();
        assert_eq!(act, vec![(1, 5), (9, 13), (17, 21), (25, 29)]);
        assert!(act.iter().all(|(a, b)| b - a == 4));
        assert_eq!(m.step(&[Choice { at: 3, label: Label::R }]), Err(BracketError::NotEligible(3)));
        assert_eq!(
            m.step(&[Choice { at: 1, label: Label::R }, Choice { at: 5, label: Label::R }]),
            Err(BracketError::Inconsistent(5))
        );
    }

    #[test]
    fn visibility_in_small_generations() {
        let oracle = phase_oracle(256, &[false, true, false]).unwrap();
        let m = gen0(256).unwrap().run(&oracle).unwrap();
        for iv in m.active(1).filter(|i| !i.partial) {
            let blue = m.visible_letters(iv).iter().filter(|l| l.colour() == Some(Colour::Blue)).count();
            assert_eq!(blue, 3);
        }
        for iv in m.active(2).filter(|i| !i.partial) {
            let red: Vec<usize> = m
                .visible_letters(iv)
                .iter()
                .filter(|l| l.colour() == Some(Colour::Red))
                .map(|l| l.position)
                .collect();
            assert_eq!(red, vec![iv.mid()]);
        }
        for iv in m.active(0).filter(|i| !i.partial) {
            assert!(m.visible_letters(iv).iter().all(|l| l.generation >= Some(0)));
        }
    }

    #[test]
    fn cut_drops_containing_actives() {
        let m = gen0(64).unwrap().run(&phase_oracle(64, &[false, false]).unwrap()).unwrap();
        let c = m.cut_semi_infinite(8).unwrap();
        assert!(c.active(0).all(|i| i.lo > 8 || !i.contains(8)));
        assert!(c.all_intervals().all(|i| !(i.kind == IntervalKind::Active && i.contains(8))));
        let d = m.cut_semi_infinite(10).unwrap();
        let before = m.all_intervals().filter(|i| i.kind == IntervalKind::Active && i.lo >= 10).count();
        assert_eq!(d.all_intervals().filter(|i| i.kind == IntervalKind::Active).count(), before);
        assert_eq!(d.mode(), Mode::Semi(10));
        assert!(m.cut_semi_infinite(64).is_err());
    }

    #[test]
    fn oracle_text_round_trip() {
        let o = vec![Some(Choice { at: 1, label: Label::R }), None, Some(Choice { at: 7, label: Label::B })];
        assert_eq!(parse_oracle(&format_oracle(&o)).unwrap(), o);
        assert!(parse_oracle("at=3 label=M").is_err());
    }

    #[test]
    fn dump_header() {
        let m = gen0(8).unwrap();
        let d = m.dump();
        assert!(d.starts_with("brackets v1 L=8 mode=inf\n0 R gen=0\n1 M gen=_\n"));
    }
}

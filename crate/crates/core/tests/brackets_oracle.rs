//! The bracket recursion against a closed-form reference.

use hyperdomino::brackets::{gen0, BracketModel, Choice, Colour, IntervalKind, Label};
use proptest::prelude::*;

/// Reference labelling: generation-n letters sit on one residue class
/// modulo 2^(n+1) and alternate R, B. The class of generation n+1 is the one
/// of the mid-points of the generation-n active intervals, which depends on
/// the phase chosen for generation n.
struct Reference {
    len: usize,
    phases: Vec<Option<(usize, Label)>>,
}

impl Reference {
    /// (offset, step, r_parity) of generation n: letters at offset + i * step,
    /// labelled R when i has parity r_parity.
    fn class(&self, n: usize) -> Option<(usize, usize, usize)> {
        let (mut off, mut parity) = (0usize, 0usize);
        for k in 0..n {
            let step = 1usize << (k + 1);
            // first active interval starts at the first R letter
            let first_r = off + parity * step;
            let next_step = step * 2;
            let new_off = (first_r + step / 2) % next_step;
            let (c, l) = self.phases[k]?;
            let ic = (c - new_off) / next_step;
            parity = if l == Label::R { ic % 2 } else { (ic + 1) % 2 };
            off = new_off;
        }
        Some((off, 1 << (n + 1), parity))
    }

    fn label(&self, p: usize) -> (Label, Option<u32>) {
        for n in 0..=self.phases.len() {
            let Some((off, step, parity)) = self.class(n) else { break };
            if p % step == off % step && p >= off {
                let i = (p - off) / step;
                let l = if i % 2 == parity { Label::R } else { Label::B };
                return (l, Some(n as u32));
            }
        }
        (Label::M, None)
    }

    /// Positions eligible for generation n+1: mid-points of complete
    /// generation-n active intervals inside the window.
    fn eligible(&self, n: usize) -> Vec<usize> {
        let Some((off, step, _)) = self.class(n) else { return Vec::new() };
        let mut out = Vec::new();
        let mut a = off;
        while a + step < self.len {
            if self.label(a).0 == Label::R && self.label(a + step).0 == Label::B {
                out.push(a + step / 2);
            }
            a += step;
        }
        out
    }
}

fn dump_of(r: &Reference) -> String {
    let mut out = format!("brackets v1 L={} mode=inf\n", r.len);
    for p in 0..r.len {
        let (l, g) = r.label(p);
        let g = g.map_or_else(|| "_".to_string(), |g| g.to_string());
        out.push_str(&format!("{p} {l} gen={g}\n"));
    }
    out
}

fn run_random(len: usize, picks: &[(usize, bool, bool)]) -> (BracketModel, Reference) {
    let mut model = gen0(len).unwrap();
    let mut reference = Reference { len, phases: Vec::new() };
    for (n, &(k, blue, skip)) in picks.iter().enumerate() {
        let eligible = reference.eligible(n);
        assert_eq!(model.eligible(), eligible, "eligible points differ at generation {}", n + 1);
        if eligible.is_empty() || skip {
            model = model.step(&[]).unwrap();
            reference.phases.push(None);
            break;
        }
        let at = eligible[k % eligible.len()];
        let label = if blue { Label::B } else { Label::R };
        model = model.step(&[Choice { at, label }]).unwrap();
        reference.phases.push(Some((at, label)));
    }
    (model, reference)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn step_matches_reference(
        len in 8usize..400,
        picks in prop::collection::vec((0usize..64, any::<bool>(), prop::bool::weighted(0.05)), 0..7),
    ) {
        let (model, reference) = run_random(len, &picks);
        prop_assert_eq!(model.dump(), dump_of(&reference));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn structural_laws(phases in prop::collection::vec(any::<bool>(), 5), len in 1024usize..1100) {
        let oracle = hyperdomino::brackets::phase_oracle(len, &phases).unwrap();
        let m = gen0(len).unwrap().run(&oracle).unwrap();
        for n in 0..m.generations() {
            let ints: Vec<_> = m.intervals(n).iter().filter(|i| !i.partial).collect();
            for w in ints.windows(2) {
                // consecutive intervals share an endpoint and alternate kind
                prop_assert_eq!(w[0].hi, w[1].lo);
                prop_assert_ne!(w[0].kind, w[1].kind);
            }
            for iv in &ints {
                prop_assert_eq!(iv.len(), 1usize << (n + 1));
                prop_assert_eq!(iv.colour(), Colour::of_generation(n));
            }
        }
        // same-colour active intervals are nested or disjoint
        let acts: Vec<_> = m.all_intervals().filter(|i| i.kind == IntervalKind::Active && !i.partial).collect();
        for a in &acts {
            for b in &acts {
                if a.colour() == b.colour() && a != b {
                    let disjoint = a.hi < b.lo || b.hi < a.lo;
                    let nested = (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi);
                    prop_assert!(disjoint || nested, "{:?} {:?}", a, b);
                }
            }
        }
    }
}

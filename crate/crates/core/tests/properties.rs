//! Randomised invariants across the modules.

use std::collections::BTreeMap;

use proptest::prelude::*;

use hyperdomino::antenna::{join_tiles, render_with_antennas};
use hyperdomino::brackets::{gen0, phase_oracle, Colour};
use hyperdomino::computing::{extract_area, extract_configs, run_embedded, simulate, Move, TMachine};
use hyperdomino::heptagrid::{build_patch, ring_sizes};
use hyperdomino::isocline::{compute_isoclines, PERIOD};
use hyperdomino::mantilla::{
    area_relation, find_seeds, flower_violations, generate_mantilla, is_seed, sector_at, AreaRelation, FlowerKind,
    SplitTable,
};
use hyperdomino::trilateral::{
    bad_towers, derive_tileset, lift, lift_threads, render_grid, same_colour_overlaps, TrilateralScene,
};
use hyperdomino::wangkit::match_tiles;

fn scene(phases: &[bool]) -> TrilateralScene {
    let len = 8usize << phases.len();
    let m = gen0(len).unwrap().run(&phase_oracle(len, phases).unwrap()).unwrap();
    lift(&m, len, len / 2 + 8).unwrap()
}

fn kind() -> impl Strategy<Value = FlowerKind> {
    prop::sample::select(FlowerKind::ALL.to_vec())
}

fn machine() -> impl Strategy<Value = TMachine> {
    let entry = (any::<bool>(), 0usize..3, 0u8..2, any::<bool>());
    prop::collection::vec(entry, 6).prop_map(|raw| {
        let mut table = BTreeMap::new();
        for (i, (present, q, s, right)) in raw.into_iter().enumerate() {
            if present {
                let mv = if right { Move::Right } else { Move::Left };
                table.insert((i / 2, (i % 2) as u8), (q, s, mv));
            }
        }
        TMachine { states: 3, alphabet: vec!['_', '1'], table }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn patches_are_consistent(radius in 0u32..7) {
        let p = build_patch(radius).unwrap();
        prop_assert!(p.check().is_ok());
        let sizes: Vec<usize> = (0..=radius).map(|k| p.ring(k).len()).collect();
        prop_assert_eq!(sizes, ring_sizes(radius));
        for t in p.tiles() {
            if let Some(f) = p.father(t) {
                prop_assert_eq!(p.ring_of(f) + 1, p.ring_of(t));
                prop_assert!(p.sons(f).contains(&t));
            }
        }
    }

    #[test]
    fn mantilla_areas_nest(radius in 4u32..8, root in kind(), petal in 0usize..4) {
        let p = build_patch(radius).unwrap();
        prop_assume!(petal < SplitTable::standard().petals.len());
        let lab = generate_mantilla(&p, root, &[petal]).unwrap();
        prop_assert!(flower_violations(&p, &lab).is_empty());
        let seeds = find_seeds(&p, &lab);
        for t in p.tiles() {
            prop_assert_eq!(is_seed(&p, &lab, t), seeds.binary_search(&t).is_ok());
        }
        let trees: Vec<_> = seeds.iter().map(|&s| sector_at(&p, s).unwrap()).collect();
        for (i, a) in trees.iter().enumerate() {
            for b in &trees[i + 1..] {
                prop_assert_ne!(area_relation(a, b), AreaRelation::Overlap);
            }
        }
    }

    #[test]
    fn levels_step_by_one(radius in 4u32..8, root in kind()) {
        let p = build_patch(radius).unwrap();
        let lab = generate_mantilla(&p, root, &[0]).unwrap();
        let iso = compute_isoclines(&p, &lab).unwrap();
        for t in p.tiles() {
            prop_assert!(iso.level_of(t) < PERIOD);
            for u in p.neighbours(t).iter().flatten() {
                let (a, b) = (iso.level_of(t), iso.level_of(*u));
                let d = (a + PERIOD - b) % PERIOD;
                prop_assert!(d <= 1 || d == PERIOD - 1, "levels {a} and {b} on adjacent tiles");
            }
        }
    }

    #[test]
    fn triangles_nest_and_grids_match(phases in prop::collection::vec(any::<bool>(), 1..5)) {
        let s = scene(&phases);
        prop_assert!(same_colour_overlaps(&s).is_empty());
        prop_assert!(bad_towers(&s).is_empty());
        let g = render_grid(&s).unwrap();
        let set = derive_tileset([&g]);
        let (region, a) = g.assignment(&set);
        prop_assert_eq!(match_tiles(&region, &a, set.tiles()).unwrap().len(), 0);
    }

    #[test]
    fn gaps_have_one_join(phases in prop::collection::vec(any::<bool>(), 2..4), cut in 1usize..40) {
        let len = 8usize << phases.len();
        let m = gen0(len).unwrap().run(&phase_oracle(len, &phases).unwrap()).unwrap();
        let s = lift_threads(&m, &[None, Some(cut % (len / 2)), None]).unwrap();
        let a = render_with_antennas(&s).unwrap();
        for gap in &a.gaps {
            prop_assert!(gap.c <= gap.d);
            prop_assert!(gap.is_clean(), "{:?}", gap.violations);
            prop_assert_eq!(join_tiles(&a.grid, gap.row, gap.a, gap.b).len(), 1);
        }
    }

    #[test]
    fn machine_text_round_trip(tm in machine()) {
        prop_assert_eq!(TMachine::parse(&tm.to_text()).unwrap(), tm);
    }

    #[test]
    fn embedded_runs_follow_the_simulation(tm in machine(), ones in 0usize..5) {
        let s = scene(&[false; 6]);
        let g = render_grid(&s).unwrap();
        let (k, _) = s
            .triangles()
            .find(|(_, t)| t.colour == Colour::Red && t.generation == 5)
            .unwrap();
        let area = extract_area(&s, &g, k).unwrap();
        let input = vec![1u8; ones];
        let run = run_embedded(&area, &tm, &input, 20);
        let got = extract_configs(&run, &input);
        let want = simulate(&tm, &input, 20);
        prop_assert!(!got.is_empty());
        prop_assert_eq!(&got[..], &want[..got.len()]);
        if !run.exhausted {
            prop_assert_eq!(got.len(), want.len());
        }
    }
}

//! `complete` against a naive product-space enumerator.

use hyperdomino::wangkit::{complete, match_tiles, Bound, Region, TileSet};
use proptest::prelude::*;

fn naive(region: &Region, partial: &[Option<usize>], set: &TileSet) -> Vec<Vec<usize>> {
    let n = region.len();
    let k = set.len();
    let mut out = Vec::new();
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut a = vec![0; n];
        // most significant digit is site 0, so codes enumerate in lexicographic order
        for s in (0..n).rev() {
            a[s] = c % k;
            c /= k;
        }
        if partial.iter().zip(&a).any(|(p, x)| p.is_some_and(|p| p != *x)) {
            continue;
        }
        let assign: Vec<Option<usize>> = a.iter().map(|&x| Some(x)).collect();
        if match_tiles(region, &assign, set).unwrap().is_empty() {
            out.push(a);
        }
    }
    out
}

fn tileset(raw: &[[u8; 4]]) -> TileSet {
    let mut set = TileSet::new(4);
    for (i, t) in raw.iter().enumerate() {
        let names: Vec<String> = t.iter().map(|c| format!("c{c}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        set.add(&format!("t{i}"), &refs);
    }
    set
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn complete_equals_naive(
        raw in prop::collection::vec(prop::array::uniform4(0u8..3), 1..=6),
        rows in 1usize..=2,
        cols in 1usize..=3,
        pins in prop::collection::vec(prop::option::weighted(0.2, 0usize..6), 6),
    ) {
        let set = tileset(&raw);
        let region = Region::grid(rows, cols);
        let partial: Vec<Option<usize>> = pins[..region.len()]
            .iter()
            .map(|p| p.map(|x| x % set.len()))
            .collect();
        let fast = complete(&region, &partial, &set, Bound::completions(1_000_000)).unwrap();
        prop_assert_eq!(fast, naive(&region, &partial, &set));
    }

    #[test]
    fn conflict_count_is_order_free(
        raw in prop::collection::vec(prop::array::uniform4(0u8..2), 1..=4),
        picks in prop::collection::vec(0usize..4, 6),
    ) {
        let set = tileset(&raw);
        let region = Region::grid(2, 3);
        let a: Vec<Option<usize>> = picks.iter().map(|p| Some(p % set.len())).collect();
        let n = match_tiles(&region, &a, &set).unwrap().len();
        // transpose the assignment onto a 3x2 grid: same edges, different traversal
        let t_region = Region::grid(3, 2);
        let mut t_set = TileSet::new(4);
        for i in 0..set.len() {
            let e = set.tile(i);
            let names = [e[3], e[2], e[1], e[0]].map(|c| set.color_name(c).to_string());
            let cols: Vec<u32> = names.iter().map(|c| t_set.color(c)).collect();
            t_set.add_colors(&format!("t{i}"), cols);
        }
        let mut ta = vec![None; 6];
        for r in 0..2 {
            for c in 0..3 {
                ta[c * 2 + r] = a[r * 3 + c];
            }
        }
        // tiles may have been merged by the transposition only if they were equal before
        if t_set.len() == set.len() {
            prop_assert_eq!(match_tiles(&t_region, &ta, &t_set).unwrap().len(), n);
        }
    }
}

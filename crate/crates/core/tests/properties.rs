use congestion_core::load::brute_force_load;
use congestion_core::remetrize::{apply_weights, distance_distortion, multipliers, WeightScheme};
use congestion_core::{geodesic_load, Graph};
use proptest::prelude::*;

/// Connected graph: a random tree (parent of v drawn below v) plus chords.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            let chords = proptest::collection::vec((0..n, 0..n), 0..2 * n);
            (Just(n), parents, chords)
        })
        .prop_map(|(n, parents, chords)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            for (u, v) in chords {
                let e = (u.min(v), u.max(v));
                if u != v && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            Graph::unit(n, &edges, "prop").unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_oracle(g in connected_graph(10)) {
        let fast = geodesic_load(&g, false).unwrap();
        let slow = brute_force_load(&g).unwrap();
        for (a, b) in fast.load.iter().zip(&slow.load) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn leaves_carry_nothing(g in connected_graph(30)) {
        let lp = geodesic_load(&g, false).unwrap();
        for v in 0..g.node_count() {
            prop_assert!(lp.load[v] >= 0.0);
            if g.degree(v) == 1 {
                prop_assert_eq!(lp.load[v], 0.0);
            }
        }
        prop_assert_eq!(lp.max_load, lp.load[lp.argmax]);
    }

    #[test]
    fn json_round_trip(g in connected_graph(20)) {
        let text = g.to_json();
        prop_assert_eq!(Graph::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn bounded_weights_sandwich_distances(g in connected_graph(25), seed in any::<u64>()) {
        let scheme = WeightScheme::BoundedRandom { lo: 0.5, hi: 2.0, seed };
        prop_assert!(multipliers(&g, &scheme).unwrap().iter().all(|w| (0.5..=2.0).contains(w)));
        let h = apply_weights(&g, &scheme).unwrap();
        let (lo, hi) = distance_distortion(&g, &h, 50, seed).unwrap();
        prop_assert!(0.5 <= lo && hi <= 2.0);
    }
}

use congestion_core::load::brute_force_load;
use congestion_core::paths::{bfs_sssp, dijkstra_sssp};
use congestion_core::seed::rng;
use congestion_core::{geodesic_load, Graph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random spanning tree plus extra chords; always connected.
fn random_connected(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    let n = r.gen_range(2..=max_n);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((r.gen_range(0..v), v));
    }
    let extra = r.gen_range(0..=n * (n - 1) / 2 - (n - 1));
    for _ in 0..extra {
        let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
        let e = (u.min(v), u.max(v));
        if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
            edges.push(e);
        }
    }
    Graph::unit(n, &edges, "random").unwrap()
}

fn named() -> Vec<Graph> {
    let path = |n: usize| (0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let cycle = |n: usize| (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>();
    let complete = |n: usize| {
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect::<Vec<_>>()
    };
    let mut out = vec![Graph::unit(1, &[], "k1").unwrap()];
    for n in 2..=12 {
        out.push(Graph::unit(n, &path(n), "path").unwrap());
        out.push(Graph::unit(n, &complete(n), "complete").unwrap());
        out.push(Graph::unit(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>(), "star").unwrap());
        if n >= 3 {
            out.push(Graph::unit(n, &cycle(n), "cycle").unwrap());
        }
    }
    // Petersen
    let mut pet: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    pet.extend((0..5).map(|i| (i, i + 5)));
    pet.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    out.push(Graph::unit(10, &pet, "petersen").unwrap());
    // 3-cube
    let cube: Vec<_> = (0..8usize)
        .flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))))
        .filter(|(u, v)| u < v)
        .collect();
    out.push(Graph::unit(8, &cube, "cube").unwrap());
    // K_{3,4}
    let kb: Vec<_> = (0..3).flat_map(|u| (3..7).map(move |v| (u, v))).collect();
    out.push(Graph::unit(7, &kb, "k34").unwrap());
    out
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len());
    for (v, (x, y)) in a.iter().zip(b).enumerate() {
        assert!((x - y).abs() <= tol, "node {v}: {x} vs {y}");
    }
}

#[test]
fn engine_matches_enumeration_on_random_graphs() {
    for seed in 0..200 {
        let g = random_connected(seed, 12);
        let fast = geodesic_load(&g, false).unwrap();
        let slow = brute_force_load(&g).unwrap();
        assert_close(&fast.load, &slow.load, 1e-9);
    }
}

#[test]
fn engine_matches_enumeration_on_named_graphs() {
    for g in named() {
        let fast = geodesic_load(&g, false).unwrap();
        let slow = brute_force_load(&g).unwrap();
        assert_close(&fast.load, &slow.load, 1e-9);
    }
}

/// Weighted oracle: Floyd-Warshall distances and explicit enumeration of
/// every tight path, with exact comparisons because lengths are small
/// integers.
fn weighted_enumeration(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = e.length;
        d[e.v][e.u] = e.length;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut load = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let mut through = vec![0u64; n];
            let mut count = 0u64;
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let u = *path.last().unwrap();
                if u == t {
                    count += 1;
                    for &v in &path[1..path.len() - 1] {
                        through[v] += 1;
                    }
                    continue;
                }
                for e in g.edges() {
                    let w = match (e.u == u, e.v == u) {
                        (true, _) => e.v,
                        (_, true) => e.u,
                        _ => continue,
                    };
                    if d[s][u] + e.length == d[s][w] && d[s][w] + d[w][t] == d[s][t] {
                        let mut next = path.clone();
                        next.push(w);
                        stack.push(next);
                    }
                }
            }
            for v in 0..n {
                load[v] += through[v] as f64 / count as f64;
            }
        }
    }
    load
}

#[test]
fn weighted_engine_matches_enumeration() {
    for seed in 0..100 {
        let g = random_connected(1000 + seed, 10);
        let mut r = rng(seed);
        let lengths: Vec<f64> = (0..g.edge_count())
            .map(|_| r.gen_range(1..=3) as f64)
            .collect();
        let g = g.with_lengths(&lengths).unwrap();
        let fast = geodesic_load(&g, true).unwrap();
        assert_close(&fast.load, &weighted_enumeration(&g), 1e-9);
    }
}

#[test]
fn dijkstra_on_unit_lengths_equals_bfs() {
    for seed in 0..50 {
        let g = random_connected(5000 + seed, 40);
        for s in [0, g.node_count() / 2, g.node_count() - 1] {
            let a = bfs_sssp(&g, s).unwrap();
            let b = dijkstra_sssp(&g, s).unwrap();
            assert_eq!(a.dist, b.dist);
            assert_eq!(a.sigma, b.sigma);
            let sorted = |p: &Vec<Vec<usize>>| {
                p.iter()
                    .map(|x| {
                        let mut x = x.clone();
                        x.sort_unstable();
                        x
                    })
                    .collect::<Vec<_>>()
            };
            assert_eq!(sorted(&a.preds), sorted(&b.preds));
        }
    }
}

#[test]
fn mass_conservation() {
    for seed in 0..50 {
        let g = random_connected(9000 + seed, 60);
        let n = g.node_count();
        let lp = geodesic_load(&g, false).unwrap();
        let hops: f64 = (0..n)
            .flat_map(|s| {
                let d = g.hop_distances(s);
                (s + 1..n).map(move |t| d[t] as f64)
            })
            .sum();
        let pairs = (n * (n - 1) / 2) as f64;
        let total: f64 = lp.load.iter().sum();
        assert!((total + pairs - hops).abs() <= 1e-9 * (n * n) as f64);
    }
}

#[test]
fn relabeling_permutes_loads() {
    for seed in 0..30 {
        let g = random_connected(7000 + seed, 30);
        let n = g.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng(seed));
        let edges: Vec<_> = g.edges().iter().map(|e| (perm[e.u], perm[e.v])).collect();
        let h = Graph::unit(n, &edges, "relabeled").unwrap();
        let a = geodesic_load(&g, false).unwrap();
        let b = geodesic_load(&h, false).unwrap();
        for v in 0..n {
            assert!((a.load[v] - b.load[perm[v]]).abs() <= 1e-9);
        }
    }
}

#[test]
fn thread_count_does_not_change_loads() {
    let g = congestion_core::generators::gen_hpq(3, 7, 4).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| geodesic_load(&g, false).unwrap().load)
    };
    let one = run(1);
    for t in [2, 3, 8] {
        assert_eq!(one, run(t), "{t} threads");
    }
}

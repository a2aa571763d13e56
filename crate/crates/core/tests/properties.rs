use proptest::prelude::*;

use hamlab::dfs::{check_epochs, check_query_accounting, check_trace, online_dfs, run_dfs};
use hamlab::expander::{
    audit_properties_with, is_expander, sparse_backbone, AuditConfig, BackboneConfig, Certainty, ExpanderMode,
    ExpanderQuery, Witness,
};
use hamlab::ham::{exact_hamiltonian, exact_longest_path, rotation_extension_search};
use hamlab::harness::{hitting_time, hitting_time_bisect, MonotoneProperty};
use hamlab::models::{bernoulli_stream, gnm, gnp, random_process, FixedBits};
use hamlab::posa::{elementary_rotation, endpoint_closure, rotation_closure};
use hamlab::{Graph, Path};

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn brute_longest(g: &Graph) -> usize {
    fn go(g: &Graph, v: usize, seen: &mut Vec<bool>, depth: usize, best: &mut usize) {
        *best = (*best).max(depth);
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                go(g, u, seen, depth + 1, best);
                seen[u] = false;
            }
        }
    }
    let mut best = 0;
    for v in 0..g.n() {
        let mut seen = vec![false; g.n()];
        seen[v] = true;
        go(g, v, &mut seen, 0, &mut best);
    }
    best
}

fn brute_expands(g: &Graph, k: usize, alpha: f64) -> bool {
    let n = g.n();
    (1u32..1 << n).all(|mask| {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        set.len() > k || g.external_neighborhood(&set).unwrap().len() as f64 >= alpha * set.len() as f64
    })
}

fn greedy_path(g: &Graph) -> Option<Path> {
    let start = (0..g.n()).max_by_key(|&v| g.degree(v))?;
    let mut seen = vec![false; g.n()];
    let mut path = vec![start];
    seen[start] = true;
    while let Some(&u) = g.neighbors(*path.last().unwrap()).iter().find(|&&u| !seen[u]) {
        seen[u] = true;
        path.push(u);
    }
    Path::new(g, path).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_simple_and_reproducible(n in 0usize..60, p in 0.0f64..=1.0, seed: u64) {
        let g = gnp(n, p, seed).unwrap();
        prop_assert_eq!(&g, &gnp(n, p, seed).unwrap());
        prop_assert!(g.edges().all(|(u, v)| u < v && v < n));
        let m = g.edge_count();
        let h = gnm(n, m, seed).unwrap();
        prop_assert_eq!(h.edge_count(), m);
        prop_assert_eq!(&h, &gnm(n, m, seed).unwrap());
        let degree_sum: usize = h.degrees().iter().sum();
        prop_assert_eq!(degree_sum, 2 * m);
    }

    #[test]
    fn process_snapshots_are_nested(n in 2usize..30, seed: u64, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let proc_ = random_process(n, seed).unwrap();
        let (lo, hi) = ((a.min(b) * proc_.len() as f64) as usize, (a.max(b) * proc_.len() as f64) as usize);
        let (small, big) = (proc_.snapshot(lo).unwrap(), proc_.snapshot(hi).unwrap());
        prop_assert_eq!(small.edge_count(), lo);
        prop_assert!(small.is_subgraph_of(&big));
    }

    #[test]
    fn dfs_traces_satisfy_invariants(g in small_graph(14), shift in 0usize..14) {
        let n = g.n();
        let order: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let trace = run_dfs(&g, &order).unwrap();
        prop_assert!(check_trace(&g, &trace).is_ok());
        prop_assert!(check_query_accounting(&trace).is_ok());
        prop_assert!(check_epochs(&trace, &g.connected_components()).is_ok());
        prop_assert!(trace.max_u_path.is_valid_in(&g));
    }

    #[test]
    fn online_dfs_matches_offline_on_its_graph(n in 1usize..25, p in 0.0f64..0.6, seed: u64) {
        let mut bits = bernoulli_stream(p, seed).unwrap();
        let (g, trace) = online_dfs(n, &mut bits).unwrap();
        prop_assert!(check_trace(&g, &trace).is_ok());
        prop_assert!(check_query_accounting(&trace).is_ok());
        let (g0, _) = online_dfs(n, &mut FixedBits::zeros(n * n)).unwrap();
        prop_assert_eq!(g0.edge_count(), 0);
    }

    #[test]
    fn rotations_keep_the_vertex_set(g in small_graph(10), pick: usize) {
        if let Some(path) = greedy_path(&g) {
            let h = path.len();
            let pivots: Vec<usize> = (0..h.saturating_sub(1)).filter(|&i| g.has_edge(path.vertices()[i], path.vertices()[h])).collect();
            if !pivots.is_empty() {
                let i = pivots[pick % pivots.len()];
                let q = elementary_rotation(&g, &path, i).unwrap();
                prop_assert!(q.is_valid_in(&g));
                prop_assert_eq!(q.start(), path.start());
                let (mut a, mut b) = (path.vertices().to_vec(), q.vertices().to_vec());
                a.sort_unstable();
                b.sort_unstable();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn exact_closure_contains_endpoint_closure(g in small_graph(10)) {
        if let Some(path) = greedy_path(&g) {
            let exact = rotation_closure(&g, &path).unwrap();
            let approx = endpoint_closure(&g, &path).unwrap();
            prop_assert!(approx.ends.iter().all(|v| exact.contains(*v)));
            for &v in &exact.ends {
                let w = exact.witness(v).unwrap();
                prop_assert!(w.is_valid_in(&g));
                prop_assert_eq!(w.end(), Some(v));
                prop_assert_eq!(w.start(), path.start());
            }
        }
    }

    #[test]
    fn exact_solvers_match_brute_force(g in small_graph(8)) {
        prop_assert_eq!(exact_longest_path(&g).unwrap(), brute_longest(&g));
        let ham = exact_hamiltonian(&g).unwrap();
        if let Some(c) = ham.cycle() {
            prop_assert!(c.is_hamilton_cycle_of(&g));
        }
        let heuristic = rotation_extension_search(&g, None, 1);
        if let Some(c) = heuristic.cycle() {
            prop_assert!(c.is_hamilton_cycle_of(&g));
            prop_assert!(ham.is_hamiltonian());
        }
    }

    #[test]
    fn exact_expander_mode_matches_brute_force(g in small_graph(9), k in 1usize..5, alpha in 0.5f64..2.5) {
        let q = ExpanderQuery::new(k, alpha).unwrap();
        let v = is_expander(&g, q, ExpanderMode::Exact).unwrap();
        prop_assert_eq!(v.expands, brute_expands(&g, k, alpha));
        prop_assert_ne!(v.certainty, Certainty::Evidence);
        if let Some(w) = &v.witness {
            prop_assert!(!w.is_empty() && w.len() <= k);
            prop_assert!((g.external_neighborhood(w).unwrap().len() as f64) < alpha * w.len() as f64);
        }
        let s = is_expander(&g, q, ExpanderMode::Sampled { trials: 20, seed: 3 }).unwrap();
        if !s.expands {
            prop_assert!(!v.expands);
        }
    }

    #[test]
    fn audit_witnesses_revalidate(n in 20usize..60, c in 1.0f64..6.0, seed: u64) {
        let g = gnp(n, (c / n as f64).min(1.0), seed).unwrap();
        let report = audit_properties_with(&g, 3, None, &AuditConfig { seed, ..AuditConfig::default() }).unwrap();
        for prop in &report.properties {
            match &prop.witness {
                Some(Witness::Vertex { vertex, degree }) => prop_assert_eq!(g.degree(*vertex), *degree),
                Some(Witness::Set { vertices, edges }) => prop_assert_eq!(g.edges_within(vertices).unwrap(), *edges),
                Some(Witness::Path { vertices }) => {
                    prop_assert!(vertices.windows(2).all(|w| g.has_edge(w[0], w[1])));
                }
                Some(Witness::Pair { u, w, edges }) => prop_assert_eq!(g.edges_between(u, w).unwrap(), *edges),
                None => {}
            }
        }
    }

    #[test]
    fn backbone_is_a_sparse_subgraph(n in 1usize..80, c in 0.5f64..20.0, d0 in 1usize..6, seed: u64) {
        let g = gnp(n, (c / n as f64).min(1.0), seed).unwrap();
        let b = sparse_backbone(&g, BackboneConfig { d0, seed }).unwrap();
        prop_assert!(b.is_subgraph_of(&g));
        prop_assert!(b.edge_count() <= d0 * n);
        for v in 0..n {
            prop_assert!(b.degree(v) >= g.degree(v).min(d0));
        }
        prop_assert_eq!(&b, &sparse_backbone(&g, BackboneConfig { d0, seed }).unwrap());
    }

    #[test]
    fn hitting_time_scan_matches_bisection(n in 2usize..40, seed: u64, d in 1usize..3) {
        let proc_ = random_process(n, seed).unwrap();
        for prop in [MonotoneProperty::MinDegree(d), MonotoneProperty::Connected] {
            let scan = hitting_time(&proc_, prop);
            let bisect = hitting_time_bisect(&proc_, prop);
            prop_assert_eq!(scan.is_ok(), bisect.is_ok());
            if let (Ok(a), Ok(b)) = (scan, bisect) {
                prop_assert_eq!(a, b);
                prop_assert!(prop.holds(&proc_.snapshot(a).unwrap()).unwrap());
                prop_assert!(a == 0 || !prop.holds(&proc_.snapshot(a - 1).unwrap()).unwrap());
            }
        }
    }
}

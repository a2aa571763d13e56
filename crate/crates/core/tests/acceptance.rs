//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary so the lines appear in `cargo test` output without `--nocapture`.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use hamlab::dfs::{check_epochs, check_query_accounting, check_trace, online_dfs, run_dfs, run_dfs_identity};
use hamlab::expander::{is_expander, sparse_backbone, BackboneConfig, ExpanderMode, ExpanderQuery};
use hamlab::graph::named::petersen;
use hamlab::ham::{augment_with_boosters, exact_hamiltonian, exact_longest_path_witness, rotation_extension_search};
use hamlab::harness::{
    binomial_estimates_hold, hamiltonicity_hitting_times, hitting_time, run_experiment, tail_bound, tail_frequency,
    ExperimentConfig, ExperimentName, MonotoneProperty, TailBound,
};
use hamlab::models::{bernoulli_stream, gnm, gnp, multi_exposure, random_process};
use hamlab::posa::{exact_boosters, posa_check, rotation_closure};
use hamlab::rng::derive_seed;
use hamlab::Graph;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

// ---------------------------------------------------------------------------
// Independent oracles.

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect()
}

/// `reach[mask]` = set of end vertices of paths covering exactly `mask`
/// (any start). Returns (longest path in edges, hamiltonian).
fn dp_oracle(adj: &[u32]) -> (usize, bool) {
    let n = adj.len();
    if n == 0 {
        return (0, false);
    }
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    let mut best = 0;
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize - 1);
        for v in 0..n {
            if ends >> v & 1 == 1 {
                let mut ext = adj[v] & !(mask as u32);
                while ext != 0 {
                    let u = ext.trailing_zeros() as usize;
                    reach[mask | 1 << u] |= 1 << u;
                    ext &= ext - 1;
                }
            }
        }
    }
    if n < 3 {
        return (best, false);
    }
    // Hamilton cycle: paths from 0 through everything ending next to 0.
    let mut from0 = vec![0u32; 1 << n];
    from0[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || from0[mask] == 0 {
            continue;
        }
        for v in 0..n {
            if from0[mask] >> v & 1 == 1 {
                let mut ext = adj[v] & !(mask as u32);
                while ext != 0 {
                    let u = ext.trailing_zeros() as usize;
                    from0[mask | 1 << u] |= 1 << u;
                    ext &= ext - 1;
                }
            }
        }
    }
    (best, from0[full] & adj[0] != 0)
}

fn valid_hamilton_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    cycle.len() == n
        && n >= 3
        && cycle.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
        && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Endpoints reachable by any sequence of elementary rotations with the
/// start fixed, found by enumerating every reachable path.
fn rotation_endpoints_bruteforce(g: &Graph, start: &[usize]) -> Vec<usize> {
    let h = start.len() - 1;
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.to_vec()]);
    let mut stack = vec![start.to_vec()];
    let mut ends = HashSet::from([start[h]]);
    while let Some(p) = stack.pop() {
        for i in 0..h.saturating_sub(1) {
            if g.has_edge(p[i], p[h]) {
                let mut q = p[..=i].to_vec();
                q.extend(p[i + 1..].iter().rev());
                if seen.insert(q.clone()) {
                    ends.insert(q[h]);
                    stack.push(q);
                }
            }
        }
    }
    let mut out: Vec<usize> = ends.into_iter().collect();
    out.sort_unstable();
    out
}

/// Largest `k` (up to `n`) with every set of size `<= k` expanding by 2.
fn max_expansion_k(adj: &[u32]) -> usize {
    let n = adj.len();
    let mut worst_ok = vec![true; n + 1];
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        let mut nb = 0u32;
        for v in 0..n {
            if mask >> v & 1 == 1 {
                nb |= adj[v];
            }
        }
        if ((nb & !mask).count_ones() as usize) < 2 * size {
            worst_ok[size] = false;
        }
    }
    (1..=n).take_while(|&s| worst_ok[s]).last().unwrap_or(0)
}

fn degree_scan_tau2(order: &[(usize, usize)], n: usize) -> usize {
    let mut deg = vec![0; n];
    for (i, &(u, v)) in order.iter().enumerate() {
        deg[u] += 1;
        deg[v] += 1;
        if deg.iter().all(|&d| d >= 2) {
            return i + 1;
        }
    }
    usize::MAX
}

/// Upper quantile of chi-square via Wilson-Hilferty, `z` standard normal.
fn chi2_critical(df: f64, z: f64) -> f64 {
    let a = 2.0 / (9.0 * df);
    df * (1.0 - a + z * a.sqrt()).powi(3)
}

/// Chi-square statistic of observed counts against expected counts, bins
/// with small expectation merged into their neighbour. Returns (stat, df).
fn chi2(observed: &[f64], expected: &[f64]) -> (f64, f64) {
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    let mut bins = Vec::new();
    for (o, e) in observed.iter().zip(expected) {
        o_acc += o;
        e_acc += e;
        if e_acc >= 10.0 {
            bins.push((o_acc, e_acc));
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if let Some(last) = bins.last_mut() {
        last.0 += o_acc;
        last.1 += e_acc;
    }
    let stat = bins.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    (stat, bins.len() as f64 - 1.0)
}

/// Two-sample chi-square on histograms.
fn chi2_two_sample(a: &BTreeMap<usize, f64>, b: &BTreeMap<usize, f64>) -> (f64, f64) {
    let keys: Vec<usize> = a.keys().chain(b.keys()).copied().collect::<HashSet<_>>().into_iter().collect();
    let (na, nb): (f64, f64) = (a.values().sum(), b.values().sum());
    let mut stat = 0.0;
    let mut df: f64 = -1.0;
    let (mut ra, mut rb) = (0.0, 0.0);
    let mut sorted = keys;
    sorted.sort_unstable();
    for k in sorted {
        ra += a.get(&k).copied().unwrap_or(0.0);
        rb += b.get(&k).copied().unwrap_or(0.0);
        if ra + rb >= 20.0 {
            let ka = (na / nb).sqrt();
            stat += (rb * ka - ra / ka).powi(2) / (ra + rb);
            df += 1.0;
            ra = 0.0;
            rb = 0.0;
        }
    }
    (stat, df.max(1.0))
}

fn binom_pascal(limit: usize) -> Vec<Vec<num_bigint::BigUint>> {
    let mut rows = vec![vec![num_bigint::BigUint::from(1u32)]];
    for n in 1..=limit {
        let prev = &rows[n - 1];
        let mut row = vec![num_bigint::BigUint::from(1u32); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

// ---------------------------------------------------------------------------
// Criteria.

fn golden_trace() -> Outcome {
    let edges = [(1, 3), (3, 8), (8, 1), (2, 4), (4, 7), (7, 2), (4, 6), (6, 5), (2, 6)];
    let g = Graph::from_edges(8, edges.iter().map(|&(u, v)| (u - 1, v - 1))).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let trace = run_dfs_identity(&g).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    // (S, U bottom first, T), 1-indexed, after steps 0..=16.
    let table: [(&[usize], &[usize], &[usize]); 17] = [
        (&[], &[], &[1, 2, 3, 4, 5, 6, 7, 8]),
        (&[], &[1], &[2, 3, 4, 5, 6, 7, 8]),
        (&[], &[1, 3], &[2, 4, 5, 6, 7, 8]),
        (&[], &[1, 3, 8], &[2, 4, 5, 6, 7]),
        (&[8], &[1, 3], &[2, 4, 5, 6, 7]),
        (&[3, 8], &[1], &[2, 4, 5, 6, 7]),
        (&[1, 3, 8], &[], &[2, 4, 5, 6, 7]),
        (&[1, 3, 8], &[2], &[4, 5, 6, 7]),
        (&[1, 3, 8], &[2, 4], &[5, 6, 7]),
        (&[1, 3, 8], &[2, 4, 6], &[5, 7]),
        (&[1, 3, 8], &[2, 4, 6, 5], &[7]),
        (&[1, 3, 5, 8], &[2, 4, 6], &[7]),
        (&[1, 3, 5, 6, 8], &[2, 4], &[7]),
        (&[1, 3, 5, 6, 8], &[2, 4, 7], &[]),
        (&[1, 3, 5, 6, 7, 8], &[2, 4], &[]),
        (&[1, 3, 4, 5, 6, 7, 8], &[2], &[]),
        (&[1, 2, 3, 4, 5, 6, 7, 8], &[], &[]),
    ];
    let states = trace.states();
    ensure(states.len() == 17, || format!("{} states", states.len()))?;
    let dec = |vs: &[usize]| vs.iter().map(|v| v - 1).collect::<Vec<_>>();
    for (step, (s, u, t)) in table.iter().enumerate() {
        let got = &states[step];
        ensure(got.s == dec(s) && got.u == dec(u) && got.t == dec(t), || format!("step {step} differs: {got:?}"))?;
    }
    let epochs: Vec<_> = trace.epochs.iter().map(|e| (e.start_step, e.end_step)).collect();
    ensure(epochs == [(1, 6), (7, 16)], || format!("epochs {epochs:?}"))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("16 rows and epochs 1-6, 7-16 reproduced in {elapsed:.2?}"))
}

fn dfs_invariants() -> Outcome {
    let offline: Result<usize, String> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(11, i));
            let n = rng.random_range(1..=200usize);
            let c = [0.5, 1.0, 2.0, 5.0, 20.0, 0.3 * n as f64][i as usize % 6];
            let p = (c / n as f64).min(1.0);
            let g = gnp(n, p, rng.random()).map_err(|e| e.to_string())?;
            let trace = if i % 2 == 0 {
                run_dfs_identity(&g)
            } else {
                let mut order: Vec<usize> = (0..n).collect();
                for j in (1..n).rev() {
                    order.swap(j, rng.random_range(0..=j));
                }
                run_dfs(&g, &order)
            }
            .map_err(|e| e.to_string())?;
            check_trace(&g, &trace).map_err(|v| format!("graph {i}: {v}"))?;
            check_query_accounting(&trace).map_err(|v| format!("graph {i}: {v}"))?;
            check_epochs(&trace, &g.connected_components()).map_err(|v| format!("graph {i}: {v}"))?;
            Ok(trace.steps())
        })
        .sum();
    let steps = offline?;
    let online: Result<usize, String> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(12, i));
            let n = rng.random_range(2..=200usize);
            let p = (rng.random_range(0.3..4.0) / n as f64).min(1.0);
            let mut bits = bernoulli_stream(p, rng.random()).map_err(|e| e.to_string())?;
            let (g, trace) = online_dfs(n, &mut bits).map_err(|e| e.to_string())?;
            check_trace(&g, &trace).map_err(|v| format!("stream {i}: {v}"))?;
            check_query_accounting(&trace).map_err(|v| format!("stream {i}: {v}"))?;
            Ok(trace.steps())
        })
        .sum();
    Ok(format!("0 violations over {steps} offline steps and {} online steps", online?))
}

fn posa_sweep() -> Outcome {
    let started = Instant::now();
    let results: Result<Vec<(bool, bool)>, String> = (0..2400u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(13, i));
            let n = rng.random_range(4..=12usize);
            let p = rng.random_range(0.15..0.7);
            let g = gnp(n, p, rng.random()).map_err(|e| e.to_string())?;
            let path = exact_longest_path_witness(&g).map_err(|e| e.to_string())?;
            let (longest, _) = dp_oracle(&masks(&g));
            ensure(path.is_valid_in(&g) && path.len() == longest, || format!("graph {i}: witness is not a longest path"))?;
            if path.vertex_count() < 3 {
                return Ok((false, false));
            }
            let report = posa_check(&g, &path).map_err(|e| e.to_string())?;
            ensure(report.holds, || format!("graph {i}: N(R) = {:?} not inside {:?}", report.neighborhood, report.allowed))?;
            let mut compared = false;
            if n <= 10 {
                let closure = rotation_closure(&g, &path).map_err(|e| e.to_string())?;
                let brute = rotation_endpoints_bruteforce(&g, path.vertices());
                ensure(closure.ends == brute, || format!("graph {i}: closure {:?} vs enumeration {brute:?}", closure.ends))?;
                compared = true;
            }
            Ok((true, compared))
        })
        .collect();
    let results = results?;
    let checked = results.iter().filter(|r| r.0).count();
    let compared = results.iter().filter(|r| r.1).count();
    ensure(checked >= 2000, || format!("only {checked} graphs had a path on 3+ vertices"))?;
    within(started.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{checked} graphs, containment 100%, {compared} closures equal to full enumeration, {:.2?}", started.elapsed()))
}

/// A graph with an independent set of more than half the vertices is not
/// Hamiltonian; dense edges to the other side make it expand.
fn planted_non_hamiltonian(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(7..=12usize);
    let big = n / 2 + 1;
    let q = rng.random_range(0.55..1.0);
    let r = rng.random_range(0.0..1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (ui, vi) = (u < big, v < big);
            let prob = match (ui, vi) {
                (true, true) => 0.0,
                (false, false) => r,
                _ => q,
            };
            if rng.random_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

fn booster_bound() -> Outcome {
    let candidates: Vec<Graph> = (0..6000u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(14, i));
            if i % 5 == 4 {
                let n = rng.random_range(6..=12usize);
                gnp(n, rng.random_range(0.25..0.6), rng.random()).expect("valid")
            } else {
                planted_non_hamiltonian(&mut rng)
            }
        })
        .chain(rayon::iter::once(petersen()))
        .collect();
    let outcome: Result<Vec<Option<(usize, usize)>>, String> = candidates
        .par_iter()
        .map(|g| {
            let adj = masks(g);
            let (_, ham) = dp_oracle(&adj);
            if ham || !g.is_connected() {
                return Ok(None);
            }
            let k = max_expansion_k(&adj);
            if k < 2 {
                return Ok(None);
            }
            let lib = is_expander(g, ExpanderQuery::new(k, 2.0).unwrap(), ExpanderMode::Exact).map_err(|e| e.to_string())?;
            let beyond = k < g.n() && is_expander(g, ExpanderQuery::new(k + 1, 2.0).unwrap(), ExpanderMode::Exact).map_err(|e| e.to_string())?.expands;
            ensure(lib.expands && !beyond, || format!("exact expander check disagrees at k = {k}"))?;
            ensure(!exact_hamiltonian(g).map_err(|e| e.to_string())?.is_hamiltonian(), || "Hamiltonicity oracles disagree".into())?;
            let (longest, _) = dp_oracle(&adj);
            let mut count = 0;
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if adj[u] >> v & 1 == 0 {
                        let mut plus = adj.clone();
                        plus[u] |= 1 << v;
                        plus[v] |= 1 << u;
                        let (l2, h2) = dp_oracle(&plus);
                        count += (h2 || l2 > longest) as usize;
                    }
                }
            }
            ensure(exact_boosters(g).map_err(|e| e.to_string())?.len() == count, || "booster counts disagree".into())?;
            let need = ((k + 1) * (k + 1)).div_ceil(2);
            ensure(count >= need, || format!("n = {}, k = {k}: {count} boosters < {need}", g.n()))?;
            Ok(Some((k, count)))
        })
        .collect();
    let instances: Vec<(usize, usize)> = outcome?.into_iter().flatten().collect();
    ensure(instances.len() >= 200, || format!("only {} instances", instances.len()))?;
    let max_k = instances.iter().map(|i| i.0).max().unwrap_or(0);
    Ok(format!("{} instances (k up to {max_k}), bound met in 100%", instances.len()))
}

fn supercritical_paths() -> Outcome {
    let started = Instant::now();
    let cfg = ExperimentConfig::new(ExperimentName::Supercritical);
    ensure(cfg.n == 100_000 && cfg.epsilon == 0.2 && cfg.trials == 20, || "unexpected defaults".into())?;
    let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let eps = 0.2f64;
    let long = out.records.iter().filter(|r| r.statistic == "max_u_path_vertices" && r.value >= eps * eps * 1e5 / 5.0).count();
    let bound = 7.0 / (eps * eps) * (1e5f64).ln();
    let small = out.records.iter().filter(|r| r.statistic == "largest_component" && r.value <= bound).count();
    ensure(long >= 19 && small >= 19, || format!("long paths {long}/20, small components {small}/20"))?;
    within(started.elapsed(), Duration::from_secs(300))?;
    Ok(format!("path >= 800 in {long}/20, components <= {bound:.0} in {small}/20, {:.2?}", started.elapsed()))
}

fn nearly_spanning() -> Outcome {
    let started = Instant::now();
    let mut cfg = ExperimentConfig::new(ExperimentName::NearlySpanning);
    cfg.directed = Some(5);
    ensure(cfg.n == 20_000 && cfg.epsilon == 0.1 && cfg.trials == 10, || "unexpected defaults".into())?;
    let c = 5.0 * 10f64.ln() / 0.1;
    let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
    ensure(out.records.iter().all(|r| (r.p.unwrap() - c / 20_000.0).abs() < 1e-12), || "wrong edge probability".into())?;
    let count = |variant: &str| out.records.iter().filter(|r| r.variant == variant && r.value >= 18_000.0).count();
    let (u, d) = (count("undirected"), count("directed"));
    ensure(u == 10 && d == 5, || format!("undirected {u}/10, directed {d}/5"))?;
    within(started.elapsed(), Duration::from_secs(300))?;
    Ok(format!("undirected {u}/10, directed {d}/5 reach 0.9n, {:.2?}", started.elapsed()))
}

fn hitting_time_certified() -> Outcome {
    let started = Instant::now();
    let n = 1000;
    let (m1, m2) = (n as f64 * (n as f64).ln() / 2.0, n as f64 * (n as f64).ln());
    let rows: Result<Vec<(bool, bool, bool)>, String> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let process = random_process(n, derive_seed(17, i)).map_err(|e| e.to_string())?;
            let tau2 = degree_scan_tau2(process.order(), n);
            ensure(hitting_time(&process, MonotoneProperty::MinDegree(2)).unwrap() == tau2, || "tau2 mismatch".into())?;
            let h = hamiltonicity_hitting_times(&process, derive_seed(18, i)).map_err(|e| e.to_string())?;
            ensure(h.tau_min_degree_2 == tau2, || "tau2 mismatch".into())?;
            let snapshot = process.snapshot(tau2).map_err(|e| e.to_string())?;
            let r = rotation_extension_search(&snapshot, None, derive_seed(18, i));
            let certified = r.cycle().is_some_and(|c| valid_hamilton_cycle(&snapshot, c.vertices()));
            ensure(certified == h.certified_equal, || "certificate mismatch".into())?;
            let window = (m1..=m2).contains(&(tau2 as f64));
            Ok((certified, h.tau_hamiltonian_upper >= tau2, window))
        })
        .collect();
    let rows = rows?;
    let certified = rows.iter().filter(|r| r.0).count();
    let ordered = rows.iter().filter(|r| r.1).count();
    let window = rows.iter().filter(|r| r.2).count();
    ensure(certified >= 95 && ordered == 100 && window >= 95, || {
        format!("certified {certified}/100, upper >= tau2 {ordered}/100, window {window}/100")
    })?;
    within(started.elapsed(), Duration::from_secs(600))?;
    Ok(format!("certified {certified}/100, upper >= tau2 {ordered}/100, tau2 in window {window}/100, {:.2?}", started.elapsed()))
}

fn backbone_pipeline() -> Outcome {
    let started = Instant::now();
    let (n, d0) = (1000, 4);
    let rows: Result<Vec<(bool, usize)>, String> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let process = random_process(n, derive_seed(19, i)).map_err(|e| e.to_string())?;
            let snapshot = process.snapshot(degree_scan_tau2(process.order(), n)).map_err(|e| e.to_string())?;
            let backbone = sparse_backbone(&snapshot, BackboneConfig { d0, seed: derive_seed(20, i) }).map_err(|e| e.to_string())?;
            ensure(backbone.edge_count() <= d0 * n, || format!("{} backbone edges", backbone.edge_count()))?;
            ensure(backbone.edges().all(|(u, v)| snapshot.has_edge(u, v)), || "backbone edge outside snapshot".into())?;
            let r = augment_with_boosters(&backbone, &snapshot, derive_seed(21, i)).map_err(|e| e.to_string())?;
            ensure(r.added_edges.iter().all(|&(u, v)| snapshot.has_edge(u, v)), || "booster outside snapshot".into())?;
            let ok = r.cycle().is_some_and(|c| valid_hamilton_cycle(&snapshot, c.vertices())) && r.stats.boosters_added <= n;
            Ok((ok, r.stats.boosters_added))
        })
        .collect();
    let rows = rows?;
    let ok = rows.iter().filter(|r| r.0).count();
    let boosters = rows.iter().map(|r| r.1).max().unwrap_or(0);
    ensure(ok >= 45, || format!("{ok}/50 Hamiltonian"))?;
    within(started.elapsed(), Duration::from_secs(900))?;
    Ok(format!("{ok}/50 validated cycles, at most {boosters} boosters, {:.2?}", started.elapsed()))
}

fn min_degree_thresholds() -> Outcome {
    let started = Instant::now();
    let cfg = ExperimentConfig::new(ExperimentName::MinDegree);
    ensure(cfg.n == 10_000 && cfg.trials == 100 && cfg.offsets == [-4.0, 4.0], || "unexpected defaults".into())?;
    let out = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let count = |variant: &str, f: &dyn Fn(f64) -> bool| out.records.iter().filter(|r| r.variant == variant && f(r.value)).count();
    let hi = |d: f64| d >= 2.0;
    let lo = |d: f64| d <= 1.0;
    let got = [count("gnp/omega=4", &hi), count("gnm/omega=4", &hi), count("gnp/omega=-4", &lo), count("gnm/omega=-4", &lo)];
    ensure(got.iter().all(|&c| c >= 90), || format!("counts {got:?}"))?;
    within(started.elapsed(), Duration::from_secs(300))?;
    Ok(format!("delta>=2 at +4: gnp {}, gnm {}; delta<=1 at -4: gnp {}, gnm {} (of 100), {:.2?}", got[0], got[1], got[2], got[3], started.elapsed()))
}

fn bounds_suite() -> Outcome {
    let started = Instant::now();
    let pascal = binom_pascal(60);
    let mut triples = 0;
    for n in 1..=60u64 {
        for k in 1..=n {
            let c = &pascal[n as usize][k as usize];
            // Lower side of the first estimate, from the table.
            ensure(num_bigint::BigUint::from(n).pow(k as u32) <= c * num_bigint::BigUint::from(k).pow(k as u32), || format!("lower ({n},{k})"))?;
            // Upper side checked in floating point with a margin.
            ensure(c.bits() as f64 - 1.0 <= k as f64 * (std::f64::consts::E * n as f64 / k as f64).log2() + 1e-9, || format!("upper ({n},{k})"))?;
            for x in 1..=k {
                triples += 1;
                let lib = binomial_estimates_hold(n, k, x).map_err(|e| e.to_string())?;
                let ratio2 = pascal[(n - x) as usize][(k - x) as usize].to_string().parse::<f64>().unwrap() / c.to_string().parse::<f64>().unwrap();
                let top3 = if k <= n - x { pascal[(n - x) as usize][k as usize].to_string().parse::<f64>().unwrap() } else { 0.0 };
                let ratio3 = top3 / c.to_string().parse::<f64>().unwrap();
                ensure(lib == [true; 3], || format!("estimates fail at ({n},{k},{x}): {lib:?}"))?;
                ensure(ratio2 <= (k as f64 / n as f64).powi(x as i32) * (1.0 + 1e-9), || format!("second estimate at ({n},{k},{x})"))?;
                ensure(ratio3 <= (-((k * x) as f64) / n as f64).exp() * (1.0 + 1e-9), || format!("third estimate at ({n},{k},{x})"))?;
            }
        }
    }
    let grid: Vec<(u64, f64, f64)> = [50u64, 200, 1000, 10_000]
        .iter()
        .zip([0.5, 0.3, 0.2, 0.1])
        .flat_map(|(&n, a)| [0.02, 0.1, 0.3].into_iter().map(move |p| (n, p, a)))
        .collect();
    let samples = 1_000_000u64;
    let rows: Result<Vec<String>, String> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(n, p, a))| {
            let mean = n as f64 * p;
            let k = (std::f64::consts::E * std::f64::consts::E * mean).ceil() as u64;
            let bounds = [
                tail_bound(TailBound::ChernoffLower { n, p, a }).unwrap(),
                tail_bound(TailBound::ChernoffUpper { n, p, a }).unwrap(),
                tail_bound(TailBound::Trivial { n, p, k }).unwrap(),
                tail_bound(TailBound::Chebyshev { a: 2.0 }).unwrap(),
            ];
            let dist = Binomial::new(n, p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(22, i as u64));
            let sd = (mean * (1.0 - p)).sqrt();
            let mut hits = [0u64; 4];
            for _ in 0..samples {
                let x = dist.sample(&mut rng) as f64;
                hits[0] += (x < (1.0 - a) * mean) as u64;
                hits[1] += (x > (1.0 + a) * mean) as u64;
                hits[2] += (x >= k as f64) as u64;
                hits[3] += ((x - mean).abs() >= 2.0 * sd) as u64;
            }
            for j in 0..4 {
                let freq = hits[j] as f64 / samples as f64;
                ensure(freq <= bounds[j], || format!("({n},{p},{a}) bound {j}: frequency {freq} > {}", bounds[j]))?;
            }
            Ok(format!("{n}/{p}"))
        })
        .collect();
    let rows = rows?;
    let example = tail_bound(TailBound::ChernoffUpper { n: 10_000, p: 0.1, a: 0.2 }).unwrap();
    let freq = tail_frequency(TailBound::ChernoffUpper { n: 10_000, p: 0.1, a: 0.2 }, samples, 23).map_err(|e| e.to_string())?;
    ensure(freq <= example, || format!("Bin(10^4, 0.1) upper tail {freq} > {example}"))?;
    within(started.elapsed(), Duration::from_secs(180))?;
    Ok(format!("{triples} triples exact, {} grid points x 10^6 samples under all bounds, {:.2?}", rows.len(), started.elapsed()))
}

fn distributions() -> Outcome {
    let z = 3.719; // upper 1e-4 normal quantile
    // Union of independent exposures against the combined probability.
    let probs = [0.1, 0.25, 0.05];
    let q = 1.0 - probs.iter().map(|p| 1.0 - p).product::<f64>();
    let (n, trials) = (12usize, 5000u64);
    let mut counts = vec![vec![0u64; n]; n];
    for t in 0..trials {
        let g = multi_exposure(n, &probs, derive_seed(24, t)).map_err(|e| e.to_string())?;
        for (u, v) in g.edges() {
            counts[u][v] += 1;
        }
    }
    let sd = (trials as f64 * q * (1.0 - q)).sqrt();
    for u in 0..n {
        for v in u + 1..n {
            let dev = (counts[u][v] as f64 - trials as f64 * q).abs();
            ensure(dev <= 5.0 * sd, || format!("pair ({u},{v}) off by {dev:.1} (sd {sd:.1})"))?;
        }
    }
    // Process snapshots against G(n, m) at n = 8, m = 10.
    let (n, m, trials) = (8usize, 10usize, 20_000u64);
    let pairs = n * (n - 1) / 2;
    let mut deg0 = [vec![0f64; n], vec![0f64; n]];
    let mut tri = [BTreeMap::new(), BTreeMap::new()];
    let mut pair_counts = [vec![0f64; pairs], vec![0f64; pairs]];
    for t in 0..trials {
        let graphs = [
            random_process(n, derive_seed(25, t)).and_then(|p| p.snapshot(m)).map_err(|e| e.to_string())?,
            gnm(n, m, derive_seed(26, t)).map_err(|e| e.to_string())?,
        ];
        for (s, g) in graphs.iter().enumerate() {
            deg0[s][g.degree(0)] += 1.0;
            let triangles = g.edges().map(|(u, v)| g.neighbors(u).iter().filter(|&&w| w > v && g.has_edge(v, w)).count()).sum::<usize>();
            *tri[s].entry(triangles).or_insert(0.0) += 1.0;
            for (u, v) in g.edges() {
                pair_counts[s][v * (v - 1) / 2 + u] += 1.0;
            }
        }
    }
    let choose = |a: usize, b: usize| -> f64 { if b > a { 0.0 } else { (0..b).map(|i| (a - i) as f64 / (i + 1) as f64).product() } };
    let expected: Vec<f64> = (0..n).map(|d| trials as f64 * choose(n - 1, d) * choose(pairs - (n - 1), m - d) / choose(pairs, m)).collect();
    let mut notes = Vec::new();
    for (s, name) in ["snapshot", "gnm"].iter().enumerate() {
        let (stat, df) = chi2(&deg0[s], &expected);
        ensure(stat <= chi2_critical(df, z), || format!("{name} degree of vertex 0: chi2 {stat:.1} on {df} df"))?;
        let share = trials as f64 * m as f64 / pairs as f64;
        let sd = (trials as f64 * (m as f64 / pairs as f64) * (1.0 - m as f64 / pairs as f64)).sqrt();
        ensure(pair_counts[s].iter().all(|&c| (c - share).abs() <= 5.0 * sd), || format!("{name} pair marginals"))?;
        notes.push(format!("{name} chi2 {stat:.1}/{df}"));
    }
    let (stat, df) = chi2_two_sample(&tri[0], &tri[1]);
    ensure(stat <= chi2_critical(df, z), || format!("triangle histograms differ: chi2 {stat:.1} on {df} df"))?;
    // Online DFS graphs against G(n, p) at n = 100, p = 0.05.
    let (n, p, seeds) = (100usize, 0.05, 500u64);
    let sizes: Result<Vec<(f64, f64)>, String> = (0..seeds)
        .into_par_iter()
        .map(|s| {
            let mut bits = bernoulli_stream(p, derive_seed(27, s)).map_err(|e| e.to_string())?;
            let (g, _) = online_dfs(n, &mut bits).map_err(|e| e.to_string())?;
            let h = gnp(n, p, derive_seed(28, s)).map_err(|e| e.to_string())?;
            Ok((g.edge_count() as f64, h.edge_count() as f64))
        })
        .collect();
    let sizes = sizes?;
    let big_n = (n * (n - 1) / 2) as f64;
    let (mu, var) = (big_n * p, big_n * p * (1.0 - p));
    let se = (var / seeds as f64).sqrt();
    let mean = |f: &dyn Fn(&(f64, f64)) -> f64| sizes.iter().map(f).sum::<f64>() / seeds as f64;
    let (ma, mb) = (mean(&|x| x.0), mean(&|x| x.1));
    ensure((ma - mu).abs() <= 5.0 * se && (mb - mu).abs() <= 5.0 * se, || format!("edge-count means {ma:.1}, {mb:.1} vs {mu}"))?;
    let va = sizes.iter().map(|x| (x.0 - ma).powi(2)).sum::<f64>() / (seeds as f64 - 1.0);
    ensure((va / var - 1.0).abs() <= 5.0 * (2.0 / seeds as f64).sqrt(), || format!("online edge-count variance {va:.1} vs {var:.1}"))?;
    let mut a: Vec<f64> = sizes.iter().map(|x| x.0).collect();
    let mut b: Vec<f64> = sizes.iter().map(|x| x.1).collect();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let ks = a
        .iter()
        .chain(&b)
        .map(|&x| {
            let fa = a.partition_point(|&y| y <= x) as f64 / seeds as f64;
            let fb = b.partition_point(|&y| y <= x) as f64 / seeds as f64;
            (fa - fb).abs()
        })
        .fold(0.0, f64::max);
    let ks_crit = 1.95 * (2.0 / seeds as f64).sqrt();
    ensure(ks <= ks_crit, || format!("KS distance {ks:.3} > {ks_crit:.3}"))?;
    Ok(format!("marginals within 5 sd; {}; triangles chi2 {stat:.1}/{df}; online mean {ma:.1} vs {mu}, KS {ks:.3}", notes.join(", ")))
}

fn determinism() -> Outcome {
    let mut checked = Vec::new();
    for name in ExperimentName::ALL {
        let mut cfg = ExperimentConfig::new(name);
        (cfg.n, cfg.trials) = match name {
            ExperimentName::HittingTime | ExperimentName::BackbonePipeline => (300, 8),
            ExperimentName::StreamLemma => (2000, 8),
            _ => (3000, 8),
        };
        cfg.seed = 0xACCE;
        let mut outputs = Vec::new();
        for workers in [1, 3, 8, 1] {
            cfg.workers = workers;
            outputs.push(run_experiment(&cfg).map_err(|e| e.to_string())?.csv().map_err(|e| e.to_string())?);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{name}: CSV differs across worker counts"))?;
        checked.push(format!("{name} ({} B)", outputs[0].len()));
    }
    Ok(format!("identical CSV for workers 1, 3, 8 and a rerun: {}", checked.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("golden DFS trace", golden_trace),
        ("DFS invariants", dfs_invariants),
        ("rotation closure sweep", posa_sweep),
        ("booster bound", booster_bound),
        ("supercritical paths", supercritical_paths),
        ("nearly spanning paths", nearly_spanning),
        ("hitting time of Hamiltonicity", hitting_time_certified),
        ("backbone pipeline", backbone_pipeline),
        ("min-degree thresholds", min_degree_thresholds),
        ("bounds suite", bounds_suite),
        ("distribution equivalences", distributions),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        match run() {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

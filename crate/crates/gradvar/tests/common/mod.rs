//! Test-side oracles and instance generators.
//!
//! Everything here is deliberately independent of the library's solver and
//! envelope code paths: distances come from a local BFS, and extensions are
//! enumerated by direct per-edge constraint propagation.
#![allow(dead_code)] // both test binaries include this module; neither uses all of it

use std::collections::{BTreeMap, VecDeque};

use gradvar::domain::{BoundaryData, GridDomain, GridGraph};
use gradvar::GraphDomain;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Plain BFS distance map, kept separate from the library's internals.
pub fn bfs(graph: &GraphDomain, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; graph.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &u in graph.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Enumerates every integer-valued extension of `anchors` over the part of
/// `graph` reachable from them, subject to `|g(u) - g(v)| <= 1` on each
/// edge. Calls `visit` once per complete extension (entries stay `None` on
/// unreachable vertices) and returns the number of extensions.
///
/// Vertices are processed in breadth-first order from the anchors, so every
/// free vertex sees at least one already-assigned neighbor and candidate
/// windows stay finite.
pub fn enumerate_gvf_extensions(
    graph: &GraphDomain,
    anchors: &BTreeMap<usize, i64>,
    mut visit: impl FnMut(&[Option<i64>]),
) -> u64 {
    assert!(!anchors.is_empty(), "enumeration needs at least one anchor");
    let n = graph.vertex_count();

    // breadth-first order over the anchored part
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = anchors.keys().copied().collect();
    for &a in anchors.keys() {
        seen[a] = true;
    }
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in graph.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }

    let mut values: Vec<Option<i64>> = vec![None; n];
    let mut count = 0u64;
    fn descend(
        graph: &GraphDomain,
        anchors: &BTreeMap<usize, i64>,
        order: &[usize],
        depth: usize,
        values: &mut Vec<Option<i64>>,
        count: &mut u64,
        visit: &mut impl FnMut(&[Option<i64>]),
    ) {
        if depth == order.len() {
            *count += 1;
            visit(values);
            return;
        }
        let v = order[depth];
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for &u in graph.neighbors(v) {
            if let Some(x) = values[u] {
                lo = lo.max(x - 1);
                hi = hi.min(x + 1);
            }
        }
        if let Some(&pinned) = anchors.get(&v) {
            if pinned >= lo && pinned <= hi {
                values[v] = Some(pinned);
                descend(graph, anchors, order, depth + 1, values, count, visit);
                values[v] = None;
            }
            return;
        }
        assert!(
            lo > i64::MIN && hi < i64::MAX,
            "free vertex {v} reached before any neighbor"
        );
        for x in lo..=hi {
            values[v] = Some(x);
            descend(graph, anchors, order, depth + 1, values, count, visit);
        }
        values[v] = None;
    }
    descend(
        graph,
        anchors,
        &order,
        0,
        &mut values,
        &mut count,
        &mut visit,
    );
    count
}

/// Random masked grid whose mask keeps at least one inside cell.
pub fn random_masked_grid(rng: &mut ChaCha8Rng, max_dim: usize) -> GridDomain {
    loop {
        let width = rng.random_range(1..=max_dim);
        let height = rng.random_range(1..=max_dim);
        let keep_all = rng.random_bool(0.4);
        let mask: Vec<bool> = (0..width * height)
            .map(|_| keep_all || rng.random_bool(0.75))
            .collect();
        if mask.iter().any(|&m| m) {
            return GridDomain::new(width, height, Some(mask)).unwrap();
        }
    }
}

/// Random feasible boundary data at level step 1 with every component
/// anchored: values come from `min over sources of (offset + d(v, source))`,
/// which is 1-Lipschitz in the graph metric, and each component gets at
/// least one anchor.
pub fn feasible_boundary(rng: &mut ChaCha8Rng, graph: &GraphDomain) -> BoundaryData {
    let n = graph.vertex_count();
    let source_count = rng.random_range(1..=3.min(n));
    let cones: Vec<(Vec<Option<usize>>, i64)> = (0..source_count)
        .map(|_| {
            let s = rng.random_range(0..n);
            let offset = rng.random_range(-3..=3);
            (bfs(graph, s), offset)
        })
        .collect();
    // per-component fallback cone so every vertex has a finite value
    let components = gradvar::connected_components(graph);
    let mut fallback: Vec<Option<Vec<Option<usize>>>> = vec![None; components.count()];
    let value_at = |v: usize, fallback: &mut Vec<Option<Vec<Option<usize>>>>| -> i64 {
        let best = cones
            .iter()
            .filter_map(|(dist, offset)| dist[v].map(|d| offset + d as i64))
            .min();
        match best {
            Some(x) => x,
            None => {
                let c = components.component_of(v);
                let dist = fallback[c].get_or_insert_with(|| bfs(graph, v));
                dist[v].map(|d| d as i64).unwrap_or(0)
            }
        }
    };

    let mut anchors = BTreeMap::new();
    // one guaranteed anchor per component: its smallest vertex
    for members in components.members() {
        let v = members[0];
        let x = value_at(v, &mut fallback);
        anchors.insert(v, x);
    }
    //  plus a random sprinkle elsewhere
    let extra = rng.random_range(0..=(n / 2).max(1));
    for _ in 0..extra {
        let v = rng.random_range(0..n);
        let x = value_at(v, &mut fallback);
        anchors.insert(v, x);
    }
    BoundaryData::from_pairs(anchors.into_iter().map(|(v, x)| (v, x as f64)))
}

/// Random connected-or-not sparse graph for metric-axiom style checks.
pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> GraphDomain {
    let n = rng.random_range(1..=max_vertices);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.25) {
                edges.push((u, v));
            }
        }
    }
    GraphDomain::from_edges(n, &edges).unwrap()
}

/// Grid + induced graph with the perimeter (degree < 4) anchored by the
/// supplied value function.
pub fn perimeter_boundary(gg: &GridGraph, value: impl Fn(usize) -> f64) -> BoundaryData {
    BoundaryData::from_pairs(
        (0..gg.graph.vertex_count())
            .filter(|&v| gg.graph.degree(v) < 4)
            .map(|v| (v, value(v))),
    )
}

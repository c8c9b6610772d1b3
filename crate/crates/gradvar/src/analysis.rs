//! Geodesic slopes and gradient proxies on discrete fields.
//!
//! The average slope between two vertices is the value difference divided
//! by the geodesic (shortest-path) length; the geodesic maximizes the
//! per-length change over all connecting paths because the numerator is
//! path-independent. The discrete stand-in for `max |grad|` is the largest
//! adjacent difference per unit edge, which is exactly the quantity the
//! gradual-variation condition bounds. Dividing it by the largest boundary
//! pair slope gives the semi-preserving ratio.

use std::collections::VecDeque;

use crate::domain::{bfs_distances, GraphDomain};
use crate::error::{Error, Result};
use crate::gvf::ScalarField;

/// A walk `v0..vk` whose consecutive vertices are adjacent in its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRecord {
    vertices: Vec<usize>,
}

impl PathRecord {
    pub fn new(domain: &GraphDomain, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPath);
        }
        for &v in &vertices {
            domain.check_vertex(v)?;
        }
        for pair in vertices.windows(2) {
            if !domain.are_adjacent(pair[0], pair[1]) {
                return Err(Error::NotAdjacent {
                    u: pair[0],
                    v: pair[1],
                });
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Edge count of the walk.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

/// Average slope between a vertex pair along a geodesic.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeResult {
    pub pair: (usize, usize),
    pub geodesic_length: usize,
    /// `(f(q) - f(p)) / geodesic_length`, signed.
    pub average_slope: f64,
    pub witness_path: PathRecord,
}

/// Max adjacent difference over the whole domain divided by the max
/// boundary pair slope. `ratio` is absent when the denominator vanishes
/// (constant boundary values), which avoids inventing a 0/0 convention.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiPreservingResult {
    pub numerator: f64,
    pub witness_edge: Option<(usize, usize)>,
    pub denominator: f64,
    pub witness_pair: (usize, usize),
    pub ratio: Option<f64>,
}

impl SemiPreservingResult {
    /// Whether the measured ratio stays strictly under `c`; `None` when
    /// degenerate.
    pub fn within_factor(&self, c: f64) -> Option<bool> {
        self.ratio.map(|r| r < c)
    }
}

/// Shortest edge-count distance between two vertices, `None` across
/// components.
pub fn geodesic_distance(domain: &GraphDomain, p: usize, q: usize) -> Result<Option<usize>> {
    domain.check_vertex(p)?;
    domain.check_vertex(q)?;
    Ok(bfs_distances(domain, p)[q])
}

/// A witness shortest path from `p` to `q`, or `None` across components.
/// Ties resolve toward smaller vertex indices, so the witness is
/// deterministic.
pub fn geodesic_path(domain: &GraphDomain, p: usize, q: usize) -> Result<Option<PathRecord>> {
    domain.check_vertex(p)?;
    domain.check_vertex(q)?;
    let n = domain.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    dist[p] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(p);
    while let Some(v) = queue.pop_front() {
        if v == q {
            break;
        }
        for &u in domain.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    if dist[q] == usize::MAX {
        return Ok(None);
    }
    let mut vertices = vec![q];
    let mut v = q;
    while v != p {
        v = parent[v];
        vertices.push(v);
    }
    vertices.reverse();
    Ok(Some(PathRecord::new(domain, vertices)?))
}

/// Signed average slope `(f(q) - f(p)) / d(p, q)` along a geodesic.
pub fn average_slope(
    field: &ScalarField,
    domain: &GraphDomain,
    p: usize,
    q: usize,
) -> Result<SlopeResult> {
    field.check_covers(domain)?;
    if p == q {
        return Err(Error::SamePair(p));
    }
    let Some(witness_path) = geodesic_path(domain, p, q)? else {
        return Err(Error::Unreachable { p, q });
    };
    let geodesic_length = witness_path.length();
    Ok(SlopeResult {
        pair: (p, q),
        geodesic_length,
        average_slope: (field.value(q) - field.value(p)) / geodesic_length as f64,
        witness_path,
    })
}

/// Largest absolute average slope over all same-component pairs drawn from
/// `boundary_set`. Ties break toward the lexicographically first pair.
pub fn max_boundary_slope(
    field: &ScalarField,
    domain: &GraphDomain,
    boundary_set: &[usize],
) -> Result<SlopeResult> {
    field.check_covers(domain)?;
    let mut set: Vec<usize> = boundary_set.to_vec();
    set.sort_unstable();
    set.dedup();
    for &v in &set {
        domain.check_vertex(v)?;
    }
    if set.len() < 2 {
        return Err(Error::TooFewBoundaryVertices(set.len()));
    }
    let mut best: Option<(f64, usize, usize, usize)> = None; // |slope|, p, q, d
    for (i, &p) in set.iter().enumerate() {
        let dist = bfs_distances(domain, p);
        for &q in &set[i + 1..] {
            let Some(d) = dist[q] else { continue };
            let magnitude = ((field.value(q) - field.value(p)) / d as f64).abs();
            if best.is_none_or(|(b, ..)| magnitude > b) {
                best = Some((magnitude, p, q, d));
            }
        }
    }
    let Some((_, p, q, _)) = best else {
        return Err(Error::NoReachablePair);
    };
    average_slope(field, domain, p, q)
}

/// Largest `|f(u) - f(v)|` over the edges of the domain, with a witness
/// edge; `(0, None)` on edgeless domains.
pub fn max_adjacent_difference(
    field: &ScalarField,
    domain: &GraphDomain,
) -> Result<(f64, Option<(usize, usize)>)> {
    field.check_covers(domain)?;
    let mut max = 0.0_f64;
    let mut witness = None;
    for (u, v) in domain.edges() {
        let difference = (field.value(u) - field.value(v)).abs();
        if witness.is_none() || difference > max {
            max = difference;
            witness = Some((u, v));
        }
    }
    Ok((if witness.is_some() { max } else { 0.0 }, witness))
}

/// Discrete gradient theorem along a walk: returns the endpoint difference
/// `f(v_k) - f(v_0)` and the telescoping sum of per-edge differences. The
/// two agree exactly for integer-valued fields and to roundoff otherwise.
pub fn telescoping_check(field: &ScalarField, path: &PathRecord) -> Result<(f64, f64)> {
    for &v in path.vertices() {
        if v >= field.len() {
            return Err(Error::FieldSizeMismatch {
                got: field.len(),
                expected: v + 1,
            });
        }
    }
    let (start, end) = path.endpoints();
    let endpoint_difference = field.value(end) - field.value(start);
    let edge_sum = path
        .vertices()
        .windows(2)
        .map(|pair| field.value(pair[1]) - field.value(pair[0]))
        .sum();
    Ok((endpoint_difference, edge_sum))
}

/// Semi-preserving ratio of `field` over `domain` relative to
/// `boundary_set`: max adjacent difference divided by max boundary pair
/// slope.
pub fn semi_preserving_ratio(
    field: &ScalarField,
    domain: &GraphDomain,
    boundary_set: &[usize],
) -> Result<SemiPreservingResult> {
    let (numerator, witness_edge) = max_adjacent_difference(field, domain)?;
    let slope = max_boundary_slope(field, domain, boundary_set)?;
    let denominator = slope.average_slope.abs();
    Ok(SemiPreservingResult {
        numerator,
        witness_edge,
        denominator,
        witness_pair: slope.pair,
        ratio: (denominator > 0.0).then(|| numerator / denominator),
    })
}

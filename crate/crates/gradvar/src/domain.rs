//! Grid and graph domains.
//!
//! A [`GraphDomain`] is an undirected graph on dense vertex indices
//! `0..n`; all distances in this crate are shortest-path edge counts on
//! it. A [`GridDomain`] is a rectangular cell array with an inside/outside
//! mask whose inside cells induce a 4-adjacency graph. Both are immutable
//! after construction, so sharing across threads is free.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Undirected graph with a symmetric, canonical adjacency structure.
///
/// Neighbor lists are strictly increasing and contain no self-loops;
/// duplicate input edges are collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDomain {
    adjacency: Vec<Vec<usize>>,
}

impl GraphDomain {
    /// Builds a graph on `vertex_count` vertices from an edge list.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Neighbors of `v` in strictly increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.adjacency.len()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.contains(u) && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }
}

/// Rectangular grid with an inside/outside mask.
///
/// Cells are addressed row-major: cell `(row, col)` has index
/// `row * width + col`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDomain {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl GridDomain {
    /// Builds a grid; `mask` entries are `true` for inside cells.
    /// A missing mask means all cells are inside.
    pub fn new(width: usize, height: usize, mask: Option<Vec<bool>>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroGridDimension { width, height });
        }
        let cells = width * height;
        let mask = match mask {
            Some(m) if m.len() != cells => {
                return Err(Error::MaskSizeMismatch {
                    got: m.len(),
                    expected: cells,
                })
            }
            Some(m) => m,
            None => vec![true; cells],
        };
        if !mask.iter().any(|&inside| inside) {
            return Err(Error::NoInsideCells);
        }
        Ok(Self {
            width,
            height,
            mask,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_inside(&self, row: usize, col: usize) -> bool {
        row < self.height && col < self.width && self.mask[row * self.width + col]
    }

    pub fn inside_count(&self) -> usize {
        self.mask.iter().filter(|&&inside| inside).count()
    }

    /// Induced 4-adjacency graph over inside cells, with the cell/vertex
    /// index maps. Vertices number inside cells in row-major order.
    pub fn to_graph(&self) -> GridGraph {
        let mut cell_to_vertex = vec![None; self.mask.len()];
        let mut vertex_to_cell = Vec::with_capacity(self.inside_count());
        for (cell, &inside) in self.mask.iter().enumerate() {
            if inside {
                cell_to_vertex[cell] = Some(vertex_to_cell.len());
                vertex_to_cell.push(cell);
            }
        }
        let mut edges = Vec::new();
        for row in 0..self.height {
            for col in 0..self.width {
                if !self.is_inside(row, col) {
                    continue;
                }
                let v = cell_to_vertex[row * self.width + col].unwrap();
                // right and down neighbors; the symmetric pairs come for free
                if col + 1 < self.width && self.is_inside(row, col + 1) {
                    edges.push((v, cell_to_vertex[row * self.width + col + 1].unwrap()));
                }
                if row + 1 < self.height && self.is_inside(row + 1, col) {
                    edges.push((v, cell_to_vertex[(row + 1) * self.width + col].unwrap()));
                }
            }
        }
        let graph = GraphDomain::from_edges(vertex_to_cell.len(), &edges)
            .expect("induced grid edges are always valid");
        GridGraph {
            graph,
            width: self.width,
            cell_to_vertex,
            vertex_to_cell,
        }
    }
}

/// A [`GridDomain`]'s induced graph together with the cell/vertex bijection.
#[derive(Debug, Clone)]
pub struct GridGraph {
    pub graph: GraphDomain,
    width: usize,
    cell_to_vertex: Vec<Option<usize>>,
    vertex_to_cell: Vec<usize>,
}

impl GridGraph {
    /// Vertex index of the inside cell at `(row, col)`, if any.
    pub fn vertex_at(&self, row: usize, col: usize) -> Option<usize> {
        self.cell_to_vertex.get(row * self.width + col).copied()?
    }

    /// `(row, col)` of a vertex.
    pub fn cell_of(&self, v: usize) -> (usize, usize) {
        let cell = self.vertex_to_cell[v];
        (cell / self.width, cell % self.width)
    }
}

/// Fixed values on a subset of vertices: Dirichlet data or extension anchors.
///
/// Entries are keyed by vertex index and kept sorted, so iteration order is
/// deterministic.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundaryData {
    entries: BTreeMap<usize, f64>,
}

impl BoundaryData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, f64)>>(pairs: I) -> Self {
        Self {
            entries: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, vertex: usize, value: f64) {
        self.entries.insert(vertex, value);
    }

    pub fn get(&self, vertex: usize) -> Option<f64> {
        self.entries.get(&vertex).copied()
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.entries.contains_key(&vertex)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(vertex, value)` pairs in increasing vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&v, &x)| (v, x))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Checks that every keyed vertex exists in `domain` and that the data
    /// is non-empty.
    pub fn validate_for(&self, domain: &GraphDomain) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyBoundary);
        }
        for v in self.vertices() {
            domain.check_vertex(v)?;
        }
        Ok(())
    }
}

/// Partition of the vertices into BFS-reachability classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    membership: Vec<usize>,
    count: usize,
}

impl Components {
    pub fn count(&self) -> usize {
        self.count
    }

    /// Component id of a vertex; ids are dense and ordered by smallest member.
    pub fn component_of(&self, v: usize) -> usize {
        self.membership[v]
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.membership[u] == self.membership[v]
    }

    /// Members of each component, each list in increasing vertex order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.membership.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Connected components of `domain` by breadth-first search.
pub fn connected_components(domain: &GraphDomain) -> Components {
    let n = domain.vertex_count();
    let mut membership = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if membership[start] != usize::MAX {
            continue;
        }
        membership[start] = count;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &u in domain.neighbors(v) {
                if membership[u] == usize::MAX {
                    membership[u] = count;
                    queue.push_back(u);
                }
            }
        }
        count += 1;
    }
    Components { membership, count }
}

/// Shortest-path edge counts from `source`; `None` marks unreachable vertices.
pub(crate) fn bfs_distances(domain: &GraphDomain, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; domain.vertex_count()];
    dist[source] = Some(0);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &u in domain.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_grid_3x3() {
        let grid = GridDomain::new(3, 3, None).unwrap();
        assert_eq!(grid.inside_count(), 9);
        let gg = grid.to_graph();
        assert_eq!(gg.graph.vertex_count(), 9);
        // interior cell has degree 4, corners 2, edges 3
        assert_eq!(gg.graph.degree(4), 4);
        assert_eq!(gg.graph.degree(0), 2);
        assert_eq!(gg.graph.degree(1), 3);
    }

    #[test]
    fn single_cell_grid() {
        let grid = GridDomain::new(1, 1, None).unwrap();
        let gg = grid.to_graph();
        assert_eq!(gg.graph.vertex_count(), 1);
        assert_eq!(gg.graph.edge_count(), 0);
    }

    #[test]
    fn l_shape_mask() {
        // 2x2 with the bottom-right cell removed: 3 vertices, 2 edges.
        let grid = GridDomain::new(2, 2, Some(vec![true, true, true, false])).unwrap();
        let gg = grid.to_graph();
        assert_eq!(gg.graph.vertex_count(), 3);
        assert_eq!(gg.graph.edge_count(), 2);
        let edges: Vec<_> = gg.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn grid_construction_errors() {
        assert!(matches!(
            GridDomain::new(0, 3, None),
            Err(Error::ZeroGridDimension { .. })
        ));
        assert!(matches!(
            GridDomain::new(2, 2, Some(vec![true; 3])),
            Err(Error::MaskSizeMismatch { got: 3, expected: 4 })
        ));
        assert!(matches!(
            GridDomain::new(2, 2, Some(vec![false; 4])),
            Err(Error::NoInsideCells)
        ));
    }

    #[test]
    fn path_graph_from_3x1() {
        let gg = GridDomain::new(3, 1, None).unwrap().to_graph();
        let edges: Vec<_> = gg.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn four_cycle_from_2x2() {
        let gg = GridDomain::new(2, 2, None).unwrap().to_graph();
        let edges: Vec<_> = gg.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        for v in 0..4 {
            assert_eq!(gg.graph.degree(v), 2);
        }
    }

    #[test]
    fn cross_mask_is_star() {
        // 5-point cross in a 3x3 grid: center + 4 direct neighbors.
        let mask = vec![false, true, false, true, true, true, false, true, false];
        let gg = GridDomain::new(3, 3, Some(mask)).unwrap().to_graph();
        assert_eq!(gg.graph.vertex_count(), 5);
        assert_eq!(gg.graph.edge_count(), 4);
        // vertex 2 is the center cell (1,1); all edges meet there
        assert_eq!(gg.graph.degree(2), 4);
        assert_eq!(gg.vertex_at(1, 1), Some(2));
        for v in [0, 1, 3, 4] {
            assert_eq!(gg.graph.degree(v), 1);
        }
    }

    #[test]
    fn cell_vertex_round_trip() {
        let mask = vec![true, false, true, true, true, false];
        let grid = GridDomain::new(3, 2, Some(mask)).unwrap();
        let gg = grid.to_graph();
        for v in 0..gg.graph.vertex_count() {
            let (r, c) = gg.cell_of(v);
            assert_eq!(gg.vertex_at(r, c), Some(v));
        }
        assert_eq!(gg.vertex_at(0, 1), None);
    }

    #[test]
    fn graph_construction_errors_and_dedup() {
        assert!(matches!(
            GraphDomain::from_edges(3, &[(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            GraphDomain::from_edges(3, &[(0, 5)]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
        let g = GraphDomain::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn components_star_and_isolates() {
        let star = GraphDomain::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let comps = connected_components(&star);
        assert_eq!(comps.count(), 1);
        assert_eq!(comps.members(), vec![vec![0, 1, 2, 3, 4]]);

        let isolated = GraphDomain::from_edges(3, &[]).unwrap();
        let comps = connected_components(&isolated);
        assert_eq!(comps.count(), 3);
        assert_eq!(comps.members(), vec![vec![0], vec![1], vec![2]]);

        let two_paths = GraphDomain::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let comps = connected_components(&two_paths);
        assert_eq!(comps.count(), 2);
        assert!(comps.same_component(0, 2));
        assert!(!comps.same_component(0, 1));
    }

    #[test]
    fn components_cover_every_vertex_once() {
        let g = GraphDomain::from_edges(7, &[(0, 1), (2, 3), (3, 4), (5, 6)]).unwrap();
        let comps = connected_components(&g);
        let total: usize = comps.members().iter().map(Vec::len).sum();
        assert_eq!(total, 7);
    }

    #[test]
    fn grid_degrees_capped_at_four() {
        let grid = GridDomain::new(7, 5, None).unwrap();
        let gg = grid.to_graph();
        assert!((0..gg.graph.vertex_count()).all(|v| gg.graph.degree(v) <= 4));
    }

    #[test]
    fn boundary_validation() {
        let g = GraphDomain::from_edges(3, &[(0, 1)]).unwrap();
        let empty = BoundaryData::new();
        assert!(matches!(empty.validate_for(&g), Err(Error::EmptyBoundary)));
        let bad = BoundaryData::from_pairs([(7, 1.0)]);
        assert!(matches!(
            bad.validate_for(&g),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
        let ok = BoundaryData::from_pairs([(0, 1.0), (2, -1.0)]);
        assert!(ok.validate_for(&g).is_ok());
    }
}

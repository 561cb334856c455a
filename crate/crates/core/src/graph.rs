//! Simple undirected graphs with cached all-pairs distances and the local
//! structures (spheres, edge neighbourhoods, local graphs) built on them.

use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const UNREACHABLE: u32 = u32::MAX;

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are sorted and duplicate-free. All-pairs distances are
/// computed on first use and cached.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    distances: OnceLock<Vec<u32>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edge_count = 0;
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge(a, b));
            }
            edge_count += list.len();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_count / 2,
            distances: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Index of edge `(u, v)` in [`Graph::edges`] order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = (u.min(v), u.max(v));
        if !self.has_edge(u, v) {
            return None;
        }
        let before: usize = (0..u)
            .map(|w| self.adjacency[w].iter().filter(|&&z| z > w).count())
            .sum();
        let within = self.adjacency[u].iter().filter(|&&z| z > u && z < v).count();
        Some(before + within)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    pub fn check_edge(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(u, v))
        }
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        self.bfs_raw(source)
            .into_iter()
            .map(|d| (d != UNREACHABLE).then_some(d as usize))
            .collect()
    }

    fn bfs_raw(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn all_distances(&self) -> &[u32] {
        self.distances.get_or_init(|| {
            (0..self.vertex_count())
                .flat_map(|s| self.bfs_raw(s))
                .collect()
        })
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.all_distances()[u * self.vertex_count() + v];
        (d != UNREACHABLE).then_some(d as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs_raw(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn eccentricity(&self, v: usize) -> Option<usize> {
        let n = self.vertex_count();
        let row = &self.all_distances()[v * n..(v + 1) * n];
        if row.contains(&UNREACHABLE) {
            None
        } else {
            row.iter().max().map(|&d| d as usize)
        }
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn require_regular(&self) -> Result<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        match self.adjacency.iter().position(|l| l.len() != d) {
            None => Ok(d),
            Some(vertex) => Err(Error::NotRegular {
                vertex,
                degree: self.degree(vertex),
                expected: d,
            }),
        }
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Proper 2-colouring of every component, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &v in &self.adjacency[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced on `vertices` (in the given order, which must be
    /// duplicate-free).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adjacency[v]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && index[w] > i).then_some((i, index[w])))
        });
        Graph::new(vertices.len(), edges.collect::<Vec<_>>()).expect("induced subgraph of a simple graph")
    }

    pub fn spheres(&self, center: usize) -> SphereDecomposition {
        let n = self.vertex_count();
        let row = &self.all_distances()[center * n..(center + 1) * n];
        let depth = row
            .iter()
            .filter(|&&d| d != UNREACHABLE)
            .max()
            .copied()
            .unwrap_or(0) as usize;
        let mut spheres = vec![Vec::new(); depth + 1];
        for (v, &d) in row.iter().enumerate() {
            if d != UNREACHABLE {
                spheres[d as usize].push(v);
            }
        }
        SphereDecomposition { center, spheres }
    }

    pub fn local_edge_structure(&self, x: usize, y: usize) -> Result<LocalEdgeStructure> {
        self.check_edge(x, y)?;
        let delta_xy: Vec<usize> = self.adjacency[x]
            .iter()
            .copied()
            .filter(|&w| self.has_edge(y, w))
            .collect();
        let exclusive = |a: usize, b: usize| -> Vec<usize> {
            self.adjacency[a]
                .iter()
                .copied()
                .filter(|&w| w != b && !self.has_edge(b, w))
                .collect()
        };
        Ok(LocalEdgeStructure {
            x,
            y,
            n_x: exclusive(x, y),
            n_y: exclusive(y, x),
            delta_xy,
        })
    }

    /// Graph induced on the neighbourhood of `x`.
    pub fn local_graph(&self, x: usize) -> LocalGraph {
        let vertices = self.adjacency[x].clone();
        LocalGraph {
            graph: self.induced_subgraph(&vertices),
            vertices,
        }
    }
}

/// Distance spheres `S_0(x), S_1(x), ...` around a center, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereDecomposition {
    pub center: usize,
    pub spheres: Vec<Vec<usize>>,
}

impl SphereDecomposition {
    pub fn sphere(&self, i: usize) -> &[usize] {
        self.spheres.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }
}

/// Neighbourhood split of an edge `xy`: common neighbours and the two
/// exclusive neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalEdgeStructure {
    pub x: usize,
    pub y: usize,
    pub delta_xy: Vec<usize>,
    pub n_x: Vec<usize>,
    pub n_y: Vec<usize>,
}

/// Local graph at a vertex with the map from local to global indices.
#[derive(Debug, Clone)]
pub struct LocalGraph {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family};

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_distances() {
        assert_eq!(path3().bfs_distances(0), vec![Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn complete_distances() {
        let k4 = generate(&Family::Complete(4)).unwrap();
        assert_eq!(k4.bfs_distances(2), vec![Some(1), Some(1), Some(0), Some(1)]);
    }

    #[test]
    fn hypercube_distances_are_hamming_weights() {
        let q3 = generate(&Family::Hypercube(3)).unwrap();
        let expected: Vec<_> = (0..8u32).map(|v| Some(v.count_ones() as usize)).collect();
        assert_eq!(q3.bfs_distances(0), expected);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]).unwrap_err(), Error::SelfLoop(0));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            Error::DuplicateEdge(0, 1)
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 2, n: 2 }
        ));
    }

    #[test]
    fn unreachable_is_none() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(g.bfs_distances(0)[2], None);
        assert!(!g.is_connected());
        assert_eq!(g.distance(0, 2), None);
    }

    #[test]
    fn edge_index_matches_enumeration() {
        let g = generate(&Family::Petersen).unwrap();
        for (i, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(0, 2), None);
    }

    #[test]
    fn local_edge_structure_cases() {
        let k4 = generate(&Family::Complete(4)).unwrap();
        let s = k4.local_edge_structure(0, 1).unwrap();
        assert_eq!(s.delta_xy.len(), 2);
        assert!(s.n_x.is_empty() && s.n_y.is_empty());

        let q3 = generate(&Family::Hypercube(3)).unwrap();
        for (x, y) in q3.edges() {
            let s = q3.local_edge_structure(x, y).unwrap();
            assert_eq!((s.delta_xy.len(), s.n_x.len(), s.n_y.len()), (0, 2, 2));
        }

        let sh = generate(&Family::Shrikhande).unwrap();
        for (x, y) in sh.edges() {
            let s = sh.local_edge_structure(x, y).unwrap();
            assert_eq!((s.delta_xy.len(), s.n_x.len(), s.n_y.len()), (2, 3, 3));
        }

        assert_eq!(path3().local_edge_structure(0, 2).unwrap_err(), Error::NotAnEdge(0, 2));
    }

    #[test]
    fn local_edge_structure_partitions_neighbourhoods() {
        let g = generate(&Family::Johnson(6, 3)).unwrap();
        for (x, y) in g.edges() {
            let s = g.local_edge_structure(x, y).unwrap();
            let mut union: Vec<usize> = s
                .delta_xy
                .iter()
                .chain(&s.n_x)
                .chain(&s.n_y)
                .copied()
                .chain([x, y])
                .collect();
            let len = union.len();
            union.sort_unstable();
            union.dedup();
            assert_eq!(union.len(), len, "sets overlap");
            let mut cover: Vec<usize> = g.neighbors(x).iter().chain(g.neighbors(y)).copied().collect();
            cover.sort_unstable();
            cover.dedup();
            assert_eq!(union, cover);
        }
    }

    #[test]
    fn icosahedron_is_locally_pentagon() {
        let g = generate(&Family::Icosahedron).unwrap();
        for x in 0..g.vertex_count() {
            let local = g.local_graph(x);
            assert_eq!(local.graph.vertex_count(), 5);
            assert_eq!(local.graph.regular_degree(), Some(2));
            assert!(local.graph.is_connected());
        }
    }

    #[test]
    fn hypercube_local_graph_is_empty() {
        let g = generate(&Family::Hypercube(4)).unwrap();
        let local = g.local_graph(5);
        assert_eq!(local.graph.vertex_count(), 4);
        assert_eq!(local.graph.edge_count(), 0);
    }

    #[test]
    fn rook_local_graph_is_two_triangles() {
        let g = generate(&Family::Rook(4)).unwrap();
        for x in 0..g.vertex_count() {
            let local = g.local_graph(x).graph;
            assert_eq!(local.vertex_count(), 6);
            assert_eq!(local.edge_count(), 6);
            assert_eq!(local.regular_degree(), Some(2));
            assert!(!local.is_connected());
            // two components of size three
            let reach = local.bfs_distances(0).iter().filter(|d| d.is_some()).count();
            assert_eq!(reach, 3);
        }
    }

    #[test]
    fn spheres_partition_and_edges_do_not_skip() {
        for fam in [Family::Petersen, Family::Hypercube(4), Family::Johnson(6, 2), Family::Cycle(7)] {
            let g = generate(&fam).unwrap();
            for x in 0..g.vertex_count() {
                let s = g.spheres(x);
                assert_eq!(s.sizes().iter().sum::<usize>(), g.vertex_count());
                let level = g.bfs_distances(x);
                for (u, v) in g.edges() {
                    assert!(level[u].unwrap().abs_diff(level[v].unwrap()) <= 1);
                }
            }
        }
    }
}

//! Planar surface-code lattice: qubits on edges, Z checks on interior
//! vertices, X checks on plaquettes.
//!
//! Coordinates: vertices at integer (row, col) with rows 0..=d and columns
//! 0..d. Rows 0 and d are rough boundaries (anyons terminate there); those
//! vertices carry no checks. Vertical edges connect row-adjacent vertices
//! (d·d of them), horizontal edges connect column-adjacent interior vertices
//! ((d−1)² of them), so n = d² + (d−1)². Interior vertex checks and
//! plaquettes each number d(d−1), leaving exactly one logical qubit.

use crate::error::{Error, Result};
use std::collections::VecDeque;

pub const MIN_DISTANCE: usize = 3;
pub const MAX_DISTANCE: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    InteriorCheck,
    RoughTop,
    RoughBottom,
}

#[derive(Clone, Debug)]
pub struct SurfaceLattice {
    d: usize,
    /// edge → (vertex, vertex) endpoints.
    edge_ends: Vec<(usize, usize)>,
    /// vertex → (row, col, class).
    vertices: Vec<(usize, usize, VertexClass)>,
    /// vertex → incident edge indices.
    vertex_edges: Vec<Vec<usize>>,
    /// plaquette → bounding edge indices (3 on boundary bands, 4 inside).
    plaquettes: Vec<Vec<usize>>,
    /// Vertical edges of each horizontal band r ∈ 0..d (the dual cuts).
    band_edges: Vec<Vec<usize>>,
}

impl SurfaceLattice {
    pub fn build(d: usize) -> Result<Self> {
        if d % 2 == 0 || d < MIN_DISTANCE || d > MAX_DISTANCE {
            return Err(Error::InvalidDistance(d));
        }
        let cols = d;
        let vid = |r: usize, c: usize| r * cols + c;
        let mut vertices = Vec::with_capacity((d + 1) * cols);
        for r in 0..=d {
            for c in 0..cols {
                let class = if r == 0 {
                    VertexClass::RoughTop
                } else if r == d {
                    VertexClass::RoughBottom
                } else {
                    VertexClass::InteriorCheck
                };
                vertices.push((r, c, class));
            }
        }
        let mut edge_ends = Vec::with_capacity(d * d + (d - 1) * (d - 1));
        let mut band_edges = vec![Vec::with_capacity(d); d];
        // Vertical edges first: id r*d + c for band r, column c.
        for r in 0..d {
            for c in 0..cols {
                band_edges[r].push(edge_ends.len());
                edge_ends.push((vid(r, c), vid(r + 1, c)));
            }
        }
        // Horizontal edges between interior vertices.
        let mut hedge = vec![vec![usize::MAX; cols.saturating_sub(1)]; d + 1];
        for r in 1..d {
            for c in 0..cols - 1 {
                hedge[r][c] = edge_ends.len();
                edge_ends.push((vid(r, c), vid(r, c + 1)));
            }
        }
        let mut vertex_edges = vec![Vec::new(); vertices.len()];
        for (e, &(a, b)) in edge_ends.iter().enumerate() {
            vertex_edges[a].push(e);
            vertex_edges[b].push(e);
        }
        // Plaquettes: band r ∈ 0..d, column pair (c, c+1).
        let vedge = |r: usize, c: usize| r * cols + c;
        let mut plaquettes = Vec::with_capacity(d * (cols - 1));
        for r in 0..d {
            for c in 0..cols - 1 {
                let mut face = vec![vedge(r, c), vedge(r, c + 1)];
                if r >= 1 {
                    face.push(hedge[r][c]);
                }
                if r + 1 <= d - 1 {
                    face.push(hedge[r + 1][c]);
                }
                face.sort_unstable();
                plaquettes.push(face);
            }
        }
        let lat = SurfaceLattice {
            d,
            edge_ends,
            vertices,
            vertex_edges,
            plaquettes,
            band_edges,
        };
        lat.assert_counts();
        Ok(lat)
    }

    fn assert_counts(&self) {
        let d = self.d;
        assert_eq!(self.n_edges(), d * d + (d - 1) * (d - 1));
        assert_eq!(self.interior_vertices().count(), d * (d - 1));
        assert_eq!(self.plaquettes.len(), d * (d - 1));
        // One logical qubit: n − (vertex checks) − (plaquette checks) = 1.
        assert_eq!(self.n_edges() - 2 * d * (d - 1), 1);
        // Minimal top-to-bottom path length is exactly d.
        assert_eq!(self.min_top_bottom_path_len(), d);
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_edges(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        self.edge_ends[e]
    }

    pub fn vertex_class(&self, v: usize) -> VertexClass {
        self.vertices[v].2
    }

    pub fn vertex_coords(&self, v: usize) -> (usize, usize) {
        (self.vertices[v].0, self.vertices[v].1)
    }

    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].2 == VertexClass::InteriorCheck)
    }

    pub fn is_rough(&self, v: usize) -> bool {
        self.vertices[v].2 != VertexClass::InteriorCheck
    }

    pub fn plaquettes(&self) -> &[Vec<usize>] {
        &self.plaquettes
    }

    /// Vertical edges crossing the horizontal dual cut of band `r` (0..d).
    pub fn band_edges(&self, r: usize) -> &[usize] {
        &self.band_edges[r]
    }

    /// The 4 (or 3, next to a boundary) edges of a vertex's star: the support
    /// of the X-check A_v when `v` is an interior vertex.
    pub fn vertex_star(&self, v: usize) -> &[usize] {
        self.incident_edges(v)
    }

    /// Z̄: the column-0 vertical path from top to bottom, weight d.
    /// X̄: the vertical edges of the middle band (a minimal dual cut), weight d.
    pub fn logical_operators(&self) -> (Vec<usize>, Vec<usize>) {
        let zbar: Vec<usize> = (0..self.d).map(|r| self.band_edges[r][0]).collect();
        let xbar = self.band_edges[self.d / 2].clone();
        (zbar, xbar)
    }

    /// BFS hop distances from `start` to every vertex, along lattice edges.
    pub fn bfs_distances(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        dist[start] = 0;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            for &e in &self.vertex_edges[v] {
                let (a, b) = self.edge_ends[e];
                let w = if a == v { b } else { a };
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Multi-source BFS from every rough-boundary vertex.
    pub fn boundary_distances(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        let mut q = VecDeque::new();
        for v in 0..self.vertices.len() {
            if self.is_rough(v) {
                dist[v] = 0;
                q.push_back(v);
            }
        }
        while let Some(v) = q.pop_front() {
            for &e in &self.vertex_edges[v] {
                let (a, b) = self.edge_ends[e];
                let w = if a == v { b } else { a };
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    fn min_top_bottom_path_len(&self) -> usize {
        let top: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| self.vertices[v].2 == VertexClass::RoughTop)
            .collect();
        let mut best = usize::MAX;
        for &t in &top {
            let dist = self.bfs_distances(t);
            for v in 0..self.vertices.len() {
                if self.vertices[v].2 == VertexClass::RoughBottom {
                    best = best.min(dist[v]);
                }
            }
        }
        best
    }

    /// The dual lattice (isomorphic: the transpose) together with the edge map
    /// `map[dual_edge] = primal_edge`. Dual vertices are primal faces; dual
    /// rough boundaries are the primal smooth (left/right) sides.
    pub fn dual(&self) -> (SurfaceLattice, Vec<usize>) {
        let d = self.d;
        let dual = SurfaceLattice::build(d).expect("same valid distance");
        let cols = d;
        let primal_v = |r: usize, c: usize| r * cols + c;
        let mut map = vec![usize::MAX; self.n_edges()];
        // Dual vertical edge (band r', col c') ↔ primal vertical (band c', col r').
        for rp in 0..d {
            for cp in 0..cols {
                map[rp * cols + cp] = primal_v(cp, rp);
            }
        }
        // Dual horizontal edge at interior row r', cols (c', c'+1) ↔ primal
        // horizontal at interior row c'+1, cols (r'−1, r').
        let hbase = d * d;
        let hid = |r: usize, c: usize| hbase + (r - 1) * (cols - 1) + c;
        for rp in 1..d {
            for cp in 0..cols - 1 {
                map[hid(rp, cp)] = hid(cp + 1, rp - 1);
            }
        }
        (dual, map)
    }
}

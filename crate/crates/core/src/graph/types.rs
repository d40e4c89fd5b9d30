use crate::error::{Error, Result};
use std::collections::{HashSet, VecDeque};

/// An undirected weighted edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// A simple undirected graph with positive edge weights; vertices are `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Validates and normalizes endpoint order; edge order is kept.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("edge ({a},{b}) outside {n} vertices")));
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at {a}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidInput(format!("edge ({a},{b}) has non-positive weight {w}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(Error::InvalidInput(format!("duplicate edge ({a},{b})")));
            }
            out.push(Edge { u, v, weight: w });
        }
        Ok(WeightedGraph { n, edges: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    /// `sqrt(Σ w_e²)`.
    pub fn norm(&self) -> f64 {
        self.edges.iter().map(|e| e.weight * e.weight).sum::<f64>().sqrt()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }
}

/// A rooted spanning tree of its vertex set.
#[derive(Clone, Debug)]
pub struct TreeGraph {
    graph: WeightedGraph,
    root: usize,
    parent: Vec<Option<usize>>,
    parent_weight: Vec<f64>,
    children: Vec<Vec<usize>>,
    height: Vec<usize>,
    bfs: Vec<usize>,
}

impl TreeGraph {
    /// Checks that `g` is a connected acyclic graph and roots it at `root`.
    pub fn new(g: WeightedGraph, root: usize) -> Result<Self> {
        let n = g.num_vertices();
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        if root >= n {
            return Err(Error::NotATree(format!("root {root} outside {n} vertices")));
        }
        if g.num_edges() + 1 != n {
            return Err(Error::NotATree(format!("{} edges for {n} vertices", g.num_edges())));
        }
        let adj = g.adjacency();
        let mut parent = vec![None; n];
        let mut parent_weight = vec![0.0; n];
        let mut children = vec![Vec::new(); n];
        let mut height = vec![0; n];
        let mut seen = vec![false; n];
        let mut bfs = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            bfs.push(v);
            for &(u, w) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    parent_weight[u] = w;
                    children[v].push(u);
                    height[u] = height[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        if bfs.len() != n {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        Ok(TreeGraph { graph: g, root, parent, parent_weight, children, height, bfs })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Weight of the edge to the parent (zero for the root).
    pub fn parent_weight(&self, v: usize) -> f64 {
        self.parent_weight[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Distance from the root.
    pub fn height(&self, v: usize) -> usize {
        self.height[v]
    }

    pub fn max_height(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }
}

/// An `rows x cols` grid graph with a positive weight on every grid edge.
/// Vertex `(i, j)` (0-based row, column) is index `i * cols + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridGraph {
    rows: usize,
    cols: usize,
    horizontal: Vec<f64>,
    vertical: Vec<f64>,
}

impl GridGraph {
    /// `horizontal[i * (cols - 1) + j]` joins `(i, j)` and `(i, j + 1)`;
    /// `vertical[i * cols + j]` joins `(i, j)` and `(i + 1, j)`.
    pub fn new(rows: usize, cols: usize, horizontal: Vec<f64>, vertical: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidGrid(format!("{rows}x{cols} grid")));
        }
        if rows * cols < 2 {
            return Err(Error::EmptyGraph);
        }
        if horizontal.len() != rows * (cols - 1) || vertical.len() != (rows - 1) * cols {
            return Err(Error::InvalidGrid("wrong number of edge weights".into()));
        }
        if horizontal.iter().chain(&vertical).any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidGrid("weights must be positive".into()));
        }
        Ok(GridGraph { rows, cols, horizontal, vertical })
    }

    /// Grid with every weight produced by `f(is_horizontal, i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(bool, usize, usize) -> f64) -> Result<Self> {
        let mut h = Vec::new();
        for i in 0..rows {
            for j in 0..cols.saturating_sub(1) {
                h.push(f(true, i, j));
            }
        }
        let mut v = Vec::new();
        for i in 0..rows.saturating_sub(1) {
            for j in 0..cols {
                v.push(f(false, i, j));
            }
        }
        Self::new(rows, cols, h, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vertex(&self, i: usize, j: usize) -> usize {
        i * self.cols + j
    }

    pub fn horizontal(&self, i: usize, j: usize) -> f64 {
        self.horizontal[i * (self.cols - 1) + j]
    }

    pub fn vertical(&self, i: usize, j: usize) -> f64 {
        self.vertical[i * self.cols + j]
    }

    pub fn to_graph(&self) -> WeightedGraph {
        let mut edges = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j + 1 < self.cols {
                    edges.push((self.vertex(i, j), self.vertex(i, j + 1), self.horizontal(i, j)));
                }
                if i + 1 < self.rows {
                    edges.push((self.vertex(i, j), self.vertex(i + 1, j), self.vertical(i, j)));
                }
            }
        }
        WeightedGraph::new(self.rows * self.cols, edges).expect("grid edges are valid")
    }
}

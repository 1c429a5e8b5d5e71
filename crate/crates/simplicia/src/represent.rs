//! Graph representations of a triangulation (1-skeleton, dual graph, Hasse
//! diagram, incidence graph) and the node feature encodings attached to them.
//!
//! Node order is canonical everywhere: ascending source-simplex dimension,
//! then lexicographic vertex list. Feature rows follow that order, so a graph
//! plus its feature matrix serializes reproducibly.

use serde::Serialize;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Skeleton,
    Dual,
    Hasse,
    Incidence,
}

/// What a node stands for; combined with the source dimension this seeds the
/// Weisfeiler-Leman colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeRole {
    /// A vertex of the triangulation (skeleton nodes, incidence left side).
    Vertex,
    /// A face of dimension >= 1 (dual nodes, incidence right side).
    Face,
    /// Any simplex (Hasse diagram nodes).
    Simplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    /// The simplex this node stands for.
    pub source: Vec<u32>,
    pub role: NodeRole,
    pub dimension: usize,
}

/// A labeled graph standing for a triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationGraph {
    pub kind: GraphKind,
    pub nodes: Vec<GraphNode>,
    /// Node-index pairs; `(a, b)` with `a < b` when undirected, `(from, to)`
    /// when directed. Sorted, no duplicates, no self-loops.
    pub edges: Vec<(usize, usize)>,
    pub directed: bool,
}

impl RepresentationGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Symmetric adjacency lists (direction ignored).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Total degree per node (in + out when directed).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.nodes.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

fn finish_edges(mut edges: Vec<(usize, usize)>, directed: bool) -> Vec<(usize, usize)> {
    if !directed {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// The 1-skeleton: vertices and edges of the triangulation.
pub fn skeleton_graph(t: &SimplicialComplex) -> RepresentationGraph {
    let nodes: Vec<GraphNode> = t
        .faces_of_dim(0)
        .map(|s| GraphNode {
            source: s.vertices().to_vec(),
            role: NodeRole::Vertex,
            dimension: 0,
        })
        .collect();
    let index = |v: u32| -> usize {
        t.faces_of_dim(0)
            .position(|s| s.vertices()[0] == v)
            .expect("edge endpoint is a vertex")
    };
    let edges = t
        .faces_of_dim(1)
        .map(|e| (index(e.vertices()[0]), index(e.vertices()[1])))
        .collect();
    RepresentationGraph {
        kind: GraphKind::Skeleton,
        nodes,
        edges: finish_edges(edges, false),
        directed: false,
    }
}

/// The dual graph: one node per maximal face, an edge per shared
/// codimension-1 face. (d+1)-regular on closed manifolds.
pub fn dual_graph(t: &SimplicialComplex) -> Result<RepresentationGraph> {
    t.require_manifold()?;
    let d = t.dimension().expect("manifold is nonempty");
    let facets: Vec<&Simplex> = t.faces_of_dim(d).collect();
    let nodes: Vec<GraphNode> = facets
        .iter()
        .map(|s| GraphNode {
            source: s.vertices().to_vec(),
            role: NodeRole::Face,
            dimension: d,
        })
        .collect();
    let mut by_ridge: std::collections::HashMap<Simplex, Vec<usize>> =
        std::collections::HashMap::new();
    for (i, facet) in facets.iter().enumerate() {
        for ridge in facet.boundary() {
            by_ridge.entry(ridge).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    for cofacets in by_ridge.values() {
        for (i, &a) in cofacets.iter().enumerate() {
            for &b in &cofacets[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    Ok(RepresentationGraph {
        kind: GraphKind::Dual,
        nodes,
        edges: finish_edges(edges, false),
        directed: false,
    })
}

/// The Hasse diagram: one node per simplex, an edge from each simplex to its
/// codimension-1 faces. Exported undirected by default (the random-walk
/// encoder needs symmetric walks); `directed` keeps the top-down orientation.
pub fn hasse_diagram(t: &SimplicialComplex, directed: bool) -> RepresentationGraph {
    let nodes: Vec<GraphNode> = t
        .all_faces()
        .map(|s| GraphNode {
            source: s.vertices().to_vec(),
            role: NodeRole::Simplex,
            dimension: s.dimension(),
        })
        .collect();
    let index: std::collections::HashMap<&Simplex, usize> =
        t.all_faces().enumerate().map(|(i, s)| (s, i)).collect();
    let mut edges = Vec::new();
    for face in t.all_faces() {
        if face.dimension() == 0 {
            continue;
        }
        let from = index[face];
        for sub in face.boundary() {
            edges.push((from, index[&sub]));
        }
    }
    RepresentationGraph {
        kind: GraphKind::Hasse,
        nodes,
        edges: finish_edges(edges, directed),
        directed,
    }
}

/// Node features, one row per graph node in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureMatrix {
    pub encoding: EncodingKind,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub data: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingKind {
    /// Uniform random features in `[0,1]^k`.
    R,
    /// Node degree, one column.
    D,
    /// Random-walk return probabilities over `steps` steps.
    Rwpe,
    /// Moment curve embedding of the canonical node index.
    Mc,
}

impl FeatureMatrix {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// I.i.d. uniform `[0,1]` features of width `k`; deterministic per seed.
pub fn encode_random(g: &RepresentationGraph, k: usize, seed: u64) -> Result<FeatureMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "random encoding width must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.node_count();
    let data = (0..n * k).map(|_| rng.random::<f64>()).collect();
    Ok(FeatureMatrix {
        encoding: EncodingKind::R,
        rows: n,
        cols: k,
        data,
    })
}

/// Single-column total node degree.
pub fn encode_degree(g: &RepresentationGraph) -> FeatureMatrix {
    let degrees = g.degrees();
    FeatureMatrix {
        encoding: EncodingKind::D,
        rows: g.node_count(),
        cols: 1,
        data: degrees.into_iter().map(|d| d as f64).collect(),
    }
}

/// Random-walk positional encoding: row i holds the diagonal entries of
/// `P^1 .. P^steps` at node i, where `P = D^{-1} A` is the row-stochastic
/// walk matrix of the (symmetrized) graph.
pub fn encode_rwpe(g: &RepresentationGraph, steps: usize) -> Result<FeatureMatrix> {
    if steps == 0 {
        return Err(Error::InvalidParameter(
            "random walk needs at least one step".into(),
        ));
    }
    let n = g.node_count();
    let adj = g.adjacency();
    if let Some(node) = adj.iter().position(Vec::is_empty) {
        return Err(Error::IsolatedNode { node });
    }

    // Dense row-stochastic walk matrix.
    let mut walk = vec![0.0f64; n * n];
    for (i, neighbors) in adj.iter().enumerate() {
        let p = 1.0 / neighbors.len() as f64;
        for &j in neighbors {
            walk[i * n + j] = p;
        }
    }

    let mut data = vec![0.0f64; n * steps];
    let mut power = walk.clone();
    for step in 0..steps {
        for i in 0..n {
            data[i * steps + step] = power[i * n + i];
        }
        if step + 1 < steps {
            power = mat_mul(&power, &walk, n);
        }
    }
    Ok(FeatureMatrix {
        encoding: EncodingKind::Rwpe,
        rows: n,
        cols: steps,
        data,
    })
}

fn mat_mul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0f64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Moment curve embedding: node with canonical index i gets
/// `t = i / (n-1)` and features `[t^1, ..., t^(2d+1)]`.
pub fn encode_moment_curve(
    g: &RepresentationGraph,
    manifold_dim: usize,
) -> Result<FeatureMatrix> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "moment curve embedding needs at least two nodes".into(),
        ));
    }
    if manifold_dim != 2 && manifold_dim != 3 {
        return Err(Error::InvalidParameter(format!(
            "manifold dimension must be 2 or 3, got {manifold_dim}"
        )));
    }
    let width = 2 * manifold_dim + 1;
    let mut data = Vec::with_capacity(n * width);
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64;
        let mut acc = 1.0;
        for _ in 0..width {
            acc *= t;
            data.push(acc);
        }
    }
    Ok(FeatureMatrix {
        encoding: EncodingKind::Mc,
        rows: n,
        cols: width,
        data,
    })
}

//! Finite simple graphs and the constructions used throughout the crate:
//! named families, gluing, subdivision, generalized theta graphs.

mod canon;
mod io;

pub use canon::{canonical_form, canonical_graph, enumerate_classes, CANONICAL_VERTEX_CAP};
pub use io::{
    parse_graph, parse_graph_compact, parse_graph_json, parse_graph_text, to_compact, to_json,
    to_text, GraphJson,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Spanning-subgraph enumeration refuses graphs with more edges than this.
pub const SPANNING_EDGE_CAP: usize = 20;

/// A finite simple undirected graph with vertices `0..vertex_count`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted, so structurally equal graphs
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
        }
        Ok(Self {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..self.vertex_count).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("not a permutation of the vertex set".into()));
        }
        Graph::new(
            self.vertex_count,
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
        )
    }

    /// Spanning subgraph keeping edge `i` iff bit `i` of `mask` is set.
    pub fn spanning_subgraph(&self, mask: u64) -> Self {
        Self {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        }
    }

    /// Disjoint union, `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self {
            vertex_count: shift + other.vertex_count,
            edges,
        }
    }
}

/// Complete graph `K_k`.
pub fn clique(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("clique needs at least one vertex".into()));
    }
    Graph::new(k, (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))))
}

/// Cycle `0-1-…-(k-1)-0`.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("cycle length must be at least 3, got {k}")));
    }
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k)))
}

/// Path with `length` edges on vertices `0..=length`.
pub fn path(length: usize) -> Graph {
    Graph::new(length + 1, (0..length).map(|i| (i, i + 1))).expect("path is simple")
}

/// Wheel: hub `0` joined to the rim cycle `1-2-…-k-1`.
pub fn wheel(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("wheel rim must have at least 3 vertices, got {k}")));
    }
    let rim = (0..k).map(|i| (1 + i, 1 + (i + 1) % k));
    let spokes = (1..=k).map(|i| (0, i));
    Graph::new(k + 1, rim.chain(spokes))
}

/// Star with centre `0` and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
}

/// Generalized theta graph: hubs `0` and `1` joined by internally disjoint paths, the
/// `i`-th with `internal[i]` internal vertices (a zero entry is the edge `{0, 1}`).
/// Internal vertices are numbered path by path from `2`.
pub fn theta(internal: &[usize]) -> Result<Graph> {
    if internal.is_empty() {
        return Err(Error::InvalidArgument("theta graph needs at least one path".into()));
    }
    if internal.iter().filter(|&&s| s == 0).count() > 1 {
        return Err(Error::InvalidArgument(
            "theta graph with two zero-length paths would have a double edge".into(),
        ));
    }
    let total: usize = internal.iter().sum();
    let mut edges = Vec::new();
    let mut next = 2;
    for &s in internal {
        let mut prev = 0;
        for _ in 0..s {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(2 + total, edges)
}

/// Replaces every edge by a path of length `ell + 1`. Original vertices keep their
/// labels; new vertices are appended edge by edge, in path order from the smaller endpoint.
pub fn subdivide(graph: &Graph, ell: usize) -> Result<Graph> {
    if ell == 0 {
        return Err(Error::InvalidArgument("subdivision length must be at least 1".into()));
    }
    let mut next = graph.vertex_count();
    let mut edges = Vec::with_capacity((ell + 1) * graph.edge_count());
    for &(u, v) in graph.edges() {
        let mut prev = u;
        for _ in 0..ell {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(next, edges)
}

/// Independent set `I` and root `a` for [`glue`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueSpec {
    pub independent_set: Vec<usize>,
    pub root: usize,
}

impl GlueSpec {
    pub fn new(independent_set: Vec<usize>, root: usize) -> Self {
        Self {
            independent_set,
            root,
        }
    }

    pub fn validate(&self, host: &Graph) -> Result<()> {
        let n = host.vertex_count();
        let bad = |msg: String| Err(Error::InvalidGlue(msg));
        if self.root >= n {
            return bad(format!("root {} out of range", self.root));
        }
        let mut seen = BTreeSet::new();
        for &v in &self.independent_set {
            if v >= n {
                return bad(format!("vertex {v} out of range"));
            }
            if !seen.insert(v) {
                return bad(format!("vertex {v} repeated in the independent set"));
            }
        }
        if seen.contains(&self.root) {
            return bad(format!("root {} lies in the independent set", self.root));
        }
        for &(u, v) in host.edges() {
            if seen.contains(&u) && seen.contains(&v) {
                return bad(format!("edge ({u}, {v}) inside the independent set"));
            }
        }
        Ok(())
    }
}

/// `v(H₂)` copies of `H₁` sharing the independent set, with `H₂` placed on the copies
/// of the root.
///
/// Labels: the shared set first (in the order given), then the copies in order, each
/// copy listing the remaining `H₁` vertices in increasing index.
pub fn glue(h1: &Graph, spec: &GlueSpec, h2: &Graph) -> Result<Graph> {
    spec.validate(h1)?;
    if h2.vertex_count() == 0 {
        return Err(Error::InvalidGlue("the placed graph must have a vertex".into()));
    }
    let shared = spec.independent_set.len();
    let private: Vec<usize> = (0..h1.vertex_count())
        .filter(|v| !spec.independent_set.contains(v))
        .collect();
    let per_copy = private.len();
    let image = |copy: usize, v: usize| -> usize {
        match spec.independent_set.iter().position(|&x| x == v) {
            Some(k) => k,
            None => shared + copy * per_copy + private.binary_search(&v).expect("private vertex"),
        }
    };
    let copies = h2.vertex_count();
    let mut edges = Vec::with_capacity(copies * h1.edge_count() + h2.edge_count());
    for copy in 0..copies {
        edges.extend(h1.edges().iter().map(|&(u, v)| (image(copy, u), image(copy, v))));
    }
    edges.extend(
        h2.edges()
            .iter()
            .map(|&(x, y)| (image(x, spec.root), image(y, spec.root))),
    );
    Graph::new(shared + copies * per_copy, edges)
}

/// The 6-vertex, 8-edge graph: the cycle `0-1-2-3-4-5-0` with chords `{0,4}` and `{1,3}`.
pub fn h0() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 4), (1, 3)])
        .expect("h0 is simple")
}

/// All `2^e(H)` spanning subgraphs, ordered by edge mask.
pub fn spanning_subgraphs(graph: &Graph) -> Result<impl Iterator<Item = Graph> + '_> {
    let e = graph.edge_count();
    if e > SPANNING_EDGE_CAP {
        return Err(Error::CapExceeded {
            what: "edge count for spanning-subgraph enumeration",
            cap: SPANNING_EDGE_CAP as u64,
            got: e as u64,
        });
    }
    Ok((0..(1u64 << e)).map(move |mask| graph.spanning_subgraph(mask)))
}

pub fn has_degree_one_vertex(graph: &Graph) -> bool {
    graph.degrees().contains(&1)
}

/// Whether `graph` is a generalized theta graph: two hubs joined by internally disjoint
/// paths, every other vertex of degree 2. Cycles count, with any two vertices as hubs.
pub fn is_theta(graph: &Graph) -> bool {
    if graph.vertex_count() < 3 || !graph.is_connected() {
        return false;
    }
    let deg = graph.degrees();
    let hubs: Vec<usize> = (0..deg.len()).filter(|&v| deg[v] != 2).collect();
    let (a, b) = match hubs.as_slice() {
        [] => return true,
        &[a, b] if deg[a] == deg[b] && deg[a] >= 3 => (a, b),
        _ => return false,
    };
    // every path leaving `a` must end at `b`
    let nbrs = graph.neighbors();
    for &start in &nbrs[a] {
        let (mut prev, mut cur) = (a, start);
        while cur != b {
            if cur == a {
                return false;
            }
            let next = nbrs[cur].iter().copied().find(|&x| x != prev);
            match next {
                Some(x) => (prev, cur) = (cur, x),
                None => return false,
            }
        }
    }
    true
}

/// Strips isolated vertices, keeping the relative order of the rest.
pub fn without_isolated(graph: &Graph) -> Graph {
    let deg = graph.degrees();
    let mut relabel = vec![usize::MAX; graph.vertex_count()];
    let mut next = 0;
    for (v, &d) in deg.iter().enumerate() {
        if d > 0 {
            relabel[v] = next;
            next += 1;
        }
    }
    Graph::new(next, graph.edges().iter().map(|&(u, v)| (relabel[u], relabel[v])))
        .expect("relabeling preserves simplicity")
}

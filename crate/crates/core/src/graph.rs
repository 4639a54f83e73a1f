//! Labeled simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bitset row per vertex. `G - v` in this
//! crate always means *edge isolation*: every edge at `v` is removed and `v`
//! stays in the graph as an isolated vertex, so the vertex count never changes.

use std::fmt;

use crate::error::GraphError;

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

/// Vertex index in `0..n`.
pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

/// Label-aligned degrees, `degrees[i] = d_i(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

/// Number of unordered vertex pairs, `n(n-1)/2`.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edge set is the bitmask `mask` over the pairs in graph6
    /// order `(0,1), (0,2), (1,2), (0,3), ...`.
    ///
    /// Bits at or above `pair_count(n)` are ignored.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if k < 64 && (mask >> k) & 1 == 1 {
                    g.set(i, j);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    #[inline]
    fn set(&mut self, u: Vertex, v: Vertex) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set(u, v);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count `m(G)`.
    pub fn m(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// The `n` adjacency rows.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> DegreeSequence {
        DegreeSequence(self.rows().iter().map(|r| r.count_ones() as usize).collect())
    }

    pub fn is_regular(&self) -> bool {
        self.degrees().is_regular()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.rows().iter().any(|&r| r == 0)
    }

    /// Edges as `(i, j)` with `i < j`, in graph6 pair order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m());
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let full = row_mask(self.n);
        let mut adj = [0; MAX_VERTICES];
        for (v, (dst, src)) in adj.iter_mut().zip(self.rows()).enumerate() {
            *dst = !src & full & !(1u64 << v);
        }
        Graph { n: self.n, adj }
    }

    /// `G - v`: removes every edge incident to `v`, keeping `v` as an isolated vertex.
    pub fn isolate_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        let keep = !(1u64 << v);
        for row in g.adj[..g.n].iter_mut() {
            *row &= keep;
        }
        g.adj[v] = 0;
        Ok(g)
    }

    /// Lowest-indexed vertex of maximum degree.
    pub fn max_degree_vertex(&self) -> Vertex {
        let mut best = 0;
        for v in 1..self.n {
            if self.degree(v) > self.degree(best) {
                best = v;
            }
        }
        best
    }

    /// Number of connected components (isolated vertices count as components).
    pub fn component_count(&self) -> usize {
        let mut unseen = row_mask(self.n);
        let mut count = 0;
        while unseen != 0 {
            let start = unseen.trailing_zeros() as usize;
            let mut reached = 1u64 << start;
            let mut frontier = reached;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !reached;
                reached |= fresh;
                frontier |= fresh;
            }
            unseen &= !reached;
            count += 1;
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation);
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || (seen >> p) & 1 == 1 {
                return Err(GraphError::BadPermutation);
            }
            seen |= 1 << p;
        }
        let mut g = Graph::empty(self.n)?;
        for (i, j) in self.edges() {
            g.set(perm[i], perm[j]);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Every labeled graph on `n` vertices, in ascending edge-mask order.
///
/// Supported for `1 <= n <= 7` (at most 2^21 graphs).
pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs, GraphError> {
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(GraphError::EnumerationRange(n));
    }
    Ok(LabeledGraphs {
        n,
        next: 0,
        end: 1u64 << pair_count(n),
    })
}

pub const MAX_ENUMERATION_N: usize = 7;

/// Count of labeled graphs on `n` vertices.
pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << pair_count(n)
}

#[derive(Clone, Debug)]
pub struct LabeledGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = Graph::from_edge_mask(self.n, self.next).expect("n validated");
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

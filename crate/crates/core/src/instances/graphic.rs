use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub id: String,
    pub u: usize,
    pub v: usize,
}

/// Undirected multigraph on vertices `0..vertices`. Self-loops and parallel
/// edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDescription {
    pub vertices: usize,
    pub edges: Vec<GraphEdge>,
}

impl GraphDescription {
    pub fn new<'a, I>(vertices: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, usize, usize)>,
    {
        GraphDescription {
            vertices,
            edges: edges
                .into_iter()
                .map(|(id, u, v)| GraphEdge { id: id.to_string(), u, v })
                .collect(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn root(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn unite(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Cycle matroid of a graph: independent sets are the forests.
pub fn graphic(g: &GraphDescription) -> Result<Matroid> {
    if g.vertices == 0 {
        return Err(Error::Construction("a graph needs at least one vertex".into()));
    }
    for edge in &g.edges {
        if edge.u >= g.vertices || edge.v >= g.vertices {
            return Err(Error::Construction(format!(
                "edge `{}` has endpoint outside 0..{}",
                edge.id, g.vertices
            )));
        }
    }
    let endpoints: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.u, e.v)).collect();
    let vertices = g.vertices;
    let acyclic = move |set: &ElementSet| {
        let mut uf = UnionFind::new(vertices);
        set.iter().all(|e| {
            let (u, v) = endpoints[e.index()];
            uf.unite(u, v)
        })
    };
    Matroid::new(g.edges.iter().map(|e| e.id.clone()).collect(), acyclic)
}
